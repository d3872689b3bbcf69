#include "howmany/report.hpp"

#include <cmath>
#include <cstdio>

namespace howmany {
namespace {

std::string printf_number(const char* format, double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, x);
  return buffer;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out + '"';
}

std::string csv_bool(bool b) { return b ? "1" : "0"; }

}  // namespace

std::string format_number(double x) { return printf_number("%.17g", x); }

std::string format_text(double x) { return printf_number("%.4g", x); }

JsonObject& JsonObject::raw(std::string_view key, std::string value) {
  members_.emplace_back(std::string(key), std::move(value));
  return *this;
}

JsonObject& JsonObject::add(std::string_view key, double value) {
  return raw(key, std::isfinite(value) ? format_number(value) : "null");
}
JsonObject& JsonObject::add(std::string_view key, int value) {
  return raw(key, std::to_string(value));
}
JsonObject& JsonObject::add(std::string_view key, long long value) {
  return raw(key, std::to_string(value));
}
JsonObject& JsonObject::add(std::string_view key, unsigned long long value) {
  return raw(key, std::to_string(value));
}
JsonObject& JsonObject::add(std::string_view key, bool value) {
  return raw(key, value ? "true" : "false");
}
JsonObject& JsonObject::add(std::string_view key, const char* value) {
  return raw(key, quote(value));
}
JsonObject& JsonObject::add(std::string_view key, std::string_view value) {
  return raw(key, quote(value));
}
JsonObject& JsonObject::add(std::string_view key, const JsonObject& value) {
  return raw(key, value.str());
}

std::string JsonObject::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i > 0) out += ',';
    out += quote(members_[i].first) + ':' + members_[i].second;
  }
  return out + '}';
}

std::string_view to_string(TargetKind kind) noexcept {
  switch (kind) {
    case TargetKind::kSdOfSe: return "sd_of_se";
    case TargetKind::kCvOfSe: return "cv_of_se";
    case TargetKind::kCvOfVariance: return "cv_of_variance";
    case TargetKind::kDf: return "df";
  }
  return "unknown";
}

JsonObject pooled_json(const PooledAnalysis& p) {
  JsonObject j;
  j.add("m", p.m)
      .add("theta", p.theta)
      .add("w_bar", p.w_bar)
      .add("b", p.b)
      .add("v_total", p.v_total)
      .add("se", p.se)
      .add("gamma_hat", p.gamma_hat)
      .add("gamma_raw", p.gamma_raw)
      .add("df_hat", p.df_hat)
      .add("level", p.gamma_interval.level)
      .add("gamma_lower", p.gamma_interval.lower)
      .add("gamma_upper", p.gamma_interval.upper)
      .add("theta_lower", p.theta_interval.lower)
      .add("theta_upper", p.theta_interval.upper);
  return j;
}

std::string pooled_text(const PooledAnalysis& p) {
  std::string out;
  out += "imputations      " + std::to_string(p.m) + '\n';
  out += "estimate         " + format_text(p.theta) + '\n';
  out += "SE               " + format_text(p.se) + '\n';
  out += "within var       " + format_text(p.w_bar) + '\n';
  out += "between var      " + format_text(p.b) + '\n';
  out += "total var        " + format_text(p.v_total) + '\n';
  out += "df               " + format_text(p.df_hat) + '\n';
  out += "missing info     " + format_text(p.gamma_hat) + " (" + format_text(p.gamma_interval.lower) +
         ", " + format_text(p.gamma_interval.upper) + ")\n";
  out += "estimate CI      (" + format_text(p.theta_interval.lower) + ", " +
         format_text(p.theta_interval.upper) + ")\n";
  return out;
}

JsonObject plan_json(const PooledAnalysis& pilot, const Recommendation& rec) {
  JsonObject j;
  j.add("m_required", rec.m_required)
      .add("gamma_point", rec.gamma_point)
      .add("gamma_upper", rec.gamma_used)
      .add("cv_target", rec.cv_target)
      .add("df_implied", rec.df_implied)
      .add("pilot_m", rec.pilot_m)
      .add("pilot_sufficient", rec.pilot_sufficient)
      .add("pilot_estimate", pilot.theta)
      .add("pilot_se", pilot.se);
  return j;
}

std::string plan_text(const PooledAnalysis& pilot, const Recommendation& rec) {
  std::string out;
  out += "pilot imputations   " + std::to_string(rec.pilot_m) + '\n';
  out += "pilot estimate      " + format_text(pilot.theta) + " (SE " + format_text(pilot.se) + ")\n";
  out += "missing info        " + format_text(rec.gamma_point) + ", upper bound " +
         format_text(rec.gamma_used) + '\n';
  out += "target CV of SE     " + format_text(rec.cv_target) + " (df " +
         format_text(rec.df_implied) + ")\n";
  out += "required imputations " + std::to_string(rec.m_required) + '\n';
  out += std::string(rec.pilot_sufficient ? "pilot is sufficient" : "run a final analysis") + '\n';
  return out;
}

std::string table1_csv(std::span<const GammaInterval> rows) {
  std::string out = "gamma,m,lower,upper\n";
  for (const auto& r : rows) {
    out += format_number(r.point) + ',' + std::to_string(r.m) + ',' + format_number(r.lower) + ',' +
           format_number(r.upper) + '\n';
  }
  return out;
}

std::string table1_text(std::span<const GammaInterval> rows) {
  std::string out = "gamma     M   CI\n";
  for (const auto& r : rows) {
    out += printf_number("%-6.2f", round_half_away(r.point, 2)) + printf_number("%4.0f", r.m) +
           "   (" + printf_number("%.2f", round_half_away(r.lower, 2)) + ", " +
           printf_number("%.2f", round_half_away(r.upper, 2)) + ")\n";
  }
  return out;
}

JsonObject field_json(const FieldSummary& f) {
  JsonObject j;
  j.add("mean", f.mean).add("sd", f.sd).add("min", f.min).add("max", f.max);
  return j;
}

JsonObject two_stage_summary_json(const TwoStageSummary& s) {
  JsonObject j;
  j.add("reps", s.reps)
      .add("final_m", field_json(s.final_m))
      .add("final_estimate", field_json(s.final_estimate))
      .add("final_se", field_json(s.final_se))
      .add("final_df", field_json(s.final_df))
      .add("final_gamma", field_json(s.final_gamma))
      .add("recommended_m", field_json(s.recommended_m))
      .add("achieved_sd_of_se", s.achieved_sd_of_se);
  return j;
}

std::string two_stage_records_csv(std::span<const TwoStageRecord> records) {
  std::string out =
      "rep,pilot_m,pilot_estimate,pilot_se,pilot_df,pilot_gamma,pilot_gamma_upper,m_required,"
      "pilot_sufficient,final_m,final_estimate,final_se,final_df,final_gamma\n";
  for (const auto& r : records) {
    out += std::to_string(r.rep_index) + ',' + std::to_string(r.pilot.m) + ',' +
           format_number(r.pilot.theta) + ',' + format_number(r.pilot.se) + ',' +
           format_number(r.pilot.df_hat) + ',' + format_number(r.pilot.gamma_hat) + ',' +
           format_number(r.recommendation.gamma_used) + ',' +
           std::to_string(r.recommendation.m_required) + ',' +
           csv_bool(r.recommendation.pilot_sufficient) + ',' + std::to_string(r.final.m) + ',' +
           format_number(r.final.theta) + ',' + format_number(r.final.se) + ',' +
           format_number(r.final.df_hat) + ',' + format_number(r.final.gamma_hat) + '\n';
  }
  return out;
}

JsonObject cv_check_json(const CvCheck& c) {
  JsonObject j;
  j.add("m", c.m)
      .add("reps", c.reps)
      .add("cv_v", c.cv_v)
      .add("cv_se", c.cv_se)
      .add("mean_gamma_hat", c.mean_gamma_hat)
      .add("predicted_cv_v", c.predicted_cv_v);
  return j;
}

std::string pools_csv(std::span<const PooledAnalysis> pools) {
  std::string out = "rep,m,theta,v_total,se,gamma_hat,df_hat\n";
  for (std::size_t r = 0; r < pools.size(); ++r) {
    const auto& p = pools[r];
    out += std::to_string(r) + ',' + std::to_string(p.m) + ',' + format_number(p.theta) + ',' +
           format_number(p.v_total) + ',' + format_number(p.se) + ',' +
           format_number(p.gamma_hat) + ',' + format_number(p.df_hat) + '\n';
  }
  return out;
}

std::string df_reliability_csv(const DfReliability& result) {
  std::string out = "rep,gamma_hat,df_hat,exceeds\n";
  for (std::size_t r = 0; r < result.df_hats.size(); ++r) {
    out += std::to_string(r) + ',' + format_number(result.gamma_hats[r]) + ',' +
           format_number(result.df_hats[r]) + ',' +
           csv_bool(result.df_hats[r] > result.threshold) + '\n';
  }
  return out;
}

std::string curve_csv(std::span<const CurveRow> rows) {
  std::string out = "gamma,m_quadratic,m_linear,m_simulated\n";
  for (const auto& r : rows) {
    out += format_number(r.gamma) + ',' + std::to_string(r.m_quadratic) + ',' +
           std::to_string(r.m_linear) + ',' +
           (r.m_simulated ? std::to_string(*r.m_simulated) : std::string()) + '\n';
  }
  return out;
}

std::string df_cv_csv(std::span<const DfCvPoint> points) {
  std::string out = "cv,df\n";
  for (const auto& p : points) out += format_number(p.cv) + ',' + format_number(p.df) + '\n';
  return out;
}

}  // namespace howmany
