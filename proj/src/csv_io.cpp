#include "howmany/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "howmany/error.hpp"
#include "howmany/report.hpp"

namespace howmany {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw Error(ErrorKind::kInvalidInput, "missing column '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw Error(ErrorKind::kInvalidInput, "line " + std::to_string(line_no) + " has " +
                                                std::to_string(fields.size()) + " fields, expected " +
                                                std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (!have_header) throw Error(ErrorKind::kInvalidInput, "empty CSV document");
  return table;
}

double parse_real(std::string_view field) {
  double value = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last) {
    throw Error(ErrorKind::kInvalidInput, "not a number: '" + std::string(field) + "'");
  }
  return value;
}

long long parse_integer(std::string_view field) {
  long long value = 0;
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), last, value);
  if (field.empty() || ec != std::errc() || ptr != last) {
    throw Error(ErrorKind::kInvalidInput, "not an integer: '" + std::string(field) + "'");
  }
  return value;
}

std::vector<ImputationResult> parse_imputation_csv(std::string_view text) {
  const CsvTable table = parse_csv(text);
  const std::vector<std::string> expected{"imputation", "estimate", "variance"};
  if (table.header != expected) {
    throw Error(ErrorKind::kInvalidInput, "header must be exactly 'imputation,estimate,variance'");
  }
  const auto m = table.rows.size();
  std::vector<ImputationResult> results(m);
  std::vector<bool> seen(m, false);
  for (const auto& row : table.rows) {
    const long long index = parse_integer(row[0]);
    if (index < 1 || static_cast<std::size_t>(index) > m) {
      throw Error(ErrorKind::kInvalidInput, "imputation index " + row[0] + " is outside 1.." +
                                                std::to_string(m));
    }
    const auto slot = static_cast<std::size_t>(index - 1);
    if (seen[slot]) {
      throw Error(ErrorKind::kInvalidInput, "duplicate imputation index " + row[0]);
    }
    seen[slot] = true;
    results[slot] = {parse_real(row[1]), parse_real(row[2])};
  }
  return results;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidInput, "cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<ImputationResult> read_imputation_csv(const std::filesystem::path& path) {
  return parse_imputation_csv(read_text_file(path));
}

std::string write_imputation_csv(std::span<const ImputationResult> results) {
  std::string out = "imputation,estimate,variance\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    out += std::to_string(i + 1) + ',' + format_number(results[i].estimate) + ',' +
           format_number(results[i].within_variance) + '\n';
  }
  return out;
}

}  // namespace howmany
