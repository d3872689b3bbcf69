#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "howmany/pool.hpp"

namespace howmany {

/// Header plus rows of raw fields. Fields are comma separated and trimmed;
/// quoting is not supported. Blank lines are skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Position of a header column, or throws Error(kInvalidInput).
  std::size_t column(std::string_view name) const;
};

/// Throws Error(kInvalidInput) on an empty document or a row whose width
/// differs from the header.
CsvTable parse_csv(std::string_view text);

/// Whole-field numeric parses; anything else is Error(kInvalidInput).
double parse_real(std::string_view field);
long long parse_integer(std::string_view field);

/// Reads `imputation,estimate,variance` rows (header exact, no extra
/// columns). Rows may come in any order but their indices must be exactly
/// 1..M; results are returned in index order.
std::vector<ImputationResult> parse_imputation_csv(std::string_view text);
std::vector<ImputationResult> read_imputation_csv(const std::filesystem::path& path);

std::string write_imputation_csv(std::span<const ImputationResult> results);

/// Whole file as a string; Error(kInvalidInput) if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace howmany
