#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "howmany/fmi.hpp"
#include "howmany/montecarlo.hpp"
#include "howmany/planner.hpp"
#include "howmany/pool.hpp"

namespace howmany {

/// Machine format: 17 significant digits ("%.17g").
std::string format_number(double x);
/// Human format: 4 significant digits.
std::string format_text(double x);

/// Compact, insertion-ordered JSON object. Non-finite numbers become null.
class JsonObject {
 public:
  JsonObject& add(std::string_view key, double value);
  JsonObject& add(std::string_view key, int value);
  JsonObject& add(std::string_view key, long long value);
  JsonObject& add(std::string_view key, unsigned long long value);
  JsonObject& add(std::string_view key, bool value);
  JsonObject& add(std::string_view key, const char* value);
  JsonObject& add(std::string_view key, std::string_view value);
  JsonObject& add(std::string_view key, const JsonObject& value);

  std::string str() const;

 private:
  JsonObject& raw(std::string_view key, std::string value);
  std::vector<std::pair<std::string, std::string>> members_;
};

std::string_view to_string(TargetKind kind) noexcept;

JsonObject pooled_json(const PooledAnalysis& pooled);
std::string pooled_text(const PooledAnalysis& pooled);

JsonObject plan_json(const PooledAnalysis& pilot, const Recommendation& rec);
std::string plan_text(const PooledAnalysis& pilot, const Recommendation& rec);

/// `gamma,m,lower,upper`.
std::string table1_csv(std::span<const GammaInterval> rows);
/// Rounded to two decimals in the reference table's layout.
std::string table1_text(std::span<const GammaInterval> rows);

JsonObject field_json(const FieldSummary& field);
JsonObject two_stage_summary_json(const TwoStageSummary& summary);
/// One row per replication.
std::string two_stage_records_csv(std::span<const TwoStageRecord> records);

JsonObject cv_check_json(const CvCheck& check);
std::string pools_csv(std::span<const PooledAnalysis> pools);

std::string df_reliability_csv(const DfReliability& result);

/// `gamma,m_quadratic,m_linear,m_simulated`; m_simulated is empty when not run.
std::string curve_csv(std::span<const CurveRow> rows);
/// `cv,df`.
std::string df_cv_csv(std::span<const DfCvPoint> points);

}  // namespace howmany
