#include "howmany/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "howmany/calibration.hpp"
#include "howmany/csv_io.hpp"
#include "howmany/error.hpp"
#include "howmany/montecarlo.hpp"
#include "howmany/planner.hpp"
#include "howmany/report.hpp"

namespace howmany {
namespace {

struct TargetFlags {
  std::optional<double> sd;
  std::optional<double> cv;
  std::optional<double> vcv;
  std::optional<double> df;

  std::optional<ReplicabilityTarget> resolve() const {
    if (sd) return ReplicabilityTarget::sd_of_se(*sd);
    if (cv) return ReplicabilityTarget::cv_of_se(*cv);
    if (vcv) return ReplicabilityTarget::cv_of_variance(*vcv);
    if (df) return ReplicabilityTarget::df(*df);
    return std::nullopt;
  }
};

CLI::App* add_target_group(CLI::App* cmd, TargetFlags& flags, bool with_vcv) {
  auto* group = cmd->add_option_group("target", "Replicability goal (pick one)");
  group->add_option("--target-sd", flags.sd, "SD of the pooled SE across re-imputations");
  group->add_option("--target-cv", flags.cv, "CV of the pooled SE");
  if (with_vcv) group->add_option("--target-vcv", flags.vcv, "CV of the pooled variance");
  group->add_option("--target-df", flags.df, "Degrees of freedom of the pooled SE");
  return group;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::kInvalidInput, "cannot write '" + path + "'");
  file << contents;
  if (!file) throw Error(ErrorKind::kInvalidInput, "failed writing '" + path + "'");
}

double target_sd_equivalent(const ReplicabilityTarget& target, double reference_se) {
  switch (target.kind) {
    case TargetKind::kSdOfSe: return target.value;
    case TargetKind::kCvOfSe: return target.value * reference_se;
    case TargetKind::kCvOfVariance: return 0.5 * target.value * reference_se;
    case TargetKind::kDf: return df_to_cv(target.value) * reference_se;
  }
  return 0.0;
}

struct PoolArgs {
  std::string in;
  double level = 0.95;
  std::string format = "json";
};

struct PlanArgs {
  std::string pilot;
  TargetFlags target;
  double level = 0.95;
  int max_m = kDefaultMaxImputations;
  std::string format = "json";
};

struct Table1Args {
  double level = 0.95;
  std::vector<double> gammas{std::begin(kTable1Gammas), std::end(kTable1Gammas)};
  std::vector<int> ms{std::begin(kTable1Ms), std::end(kTable1Ms)};
  std::string format = "csv";
};

struct SimulateArgs {
  std::string experiment;
  ExperimentConfig config;
  TargetFlags target;
  std::optional<double> calibrate_gamma;
  std::string out;
  int m = 20;
  double threshold = 100.0;
  std::vector<double> gammas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  double curve_cv = 0.05;
  bool simulate_m = false;
  bool figure2 = false;
  int search_reps = 400;
  int search_max = 1000;
  int reference_m = 200;
};

void run_pool(const PoolArgs& args, std::ostream& out) {
  const auto results = read_imputation_csv(args.in);
  const PooledAnalysis pooled = pool(results, args.level);
  if (args.format == "text") {
    out << pooled_text(pooled);
  } else {
    out << pooled_json(pooled).str() << '\n';
  }
}

void run_plan(const PlanArgs& args, std::ostream& out, std::ostream& err) {
  const auto results = read_imputation_csv(args.pilot);
  const PooledAnalysis pilot = pool(results, args.level);
  const Recommendation rec =
      recommend(pilot, *args.target.resolve(), PlanOptions{args.level, args.max_m});
  if (rec.capped) {
    err << "warning: recommendation capped at " << args.max_m << " imputations\n";
  }
  if (args.format == "text") {
    out << plan_text(pilot, rec);
  } else {
    out << plan_json(pilot, rec).str() << '\n';
  }
}

void run_table1(const Table1Args& args, std::ostream& out) {
  const auto rows = table1(args.gammas, args.ms, args.level);
  if (args.format == "text") {
    out << table1_text(rows);
  } else if (args.format == "json") {
    std::string json = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      JsonObject row;
      row.add("gamma", rows[i].point)
          .add("m", rows[i].m)
          .add("lower", rows[i].lower)
          .add("upper", rows[i].upper);
      json += (i > 0 ? "," : "") + row.str();
    }
    out << json << "]\n";
  } else {
    out << table1_csv(rows);
  }
}

JsonObject config_json(const std::string& experiment, const ExperimentConfig& c) {
  JsonObject j;
  j.add("experiment", experiment)
      .add("n", c.n)
      .add("rho", c.rho)
      .add("missing", c.missing_fraction)
      .add("pilot_m", c.pilot_m)
      .add("level", c.level)
      .add("reps", c.reps)
      .add("seed", static_cast<unsigned long long>(c.seed));
  return j;
}

void run_simulate(SimulateArgs args, std::ostream& out) {
  ExperimentConfig& config = args.config;
  if (auto target = args.target.resolve()) config.target = *target;
  if (args.calibrate_gamma) {
    GammaCalibrator calibrator(GammaCalibrator::Options{.threads = config.threads});
    config.rho =
        calibrator.rho_for(*args.calibrate_gamma, config.n, config.missing_fraction, config.seed);
  }

  if (args.experiment == "curve") {
    std::string csv;
    if (args.figure2) {
      std::vector<double> cvs;
      for (int i = 1; i <= 40; ++i) cvs.push_back(0.005 * i);
      csv = df_cv_csv(df_cv_curve(cvs));
    } else if (args.simulate_m) {
      CurveSimulation sim;
      sim.n = config.n;
      sim.reference_m = args.reference_m;
      sim.seed = config.seed;
      sim.search.reps = args.search_reps;
      sim.search.m_hi = args.search_max;
      sim.search.threads = config.threads;
      csv = curve_csv(curve_data(args.gammas, args.curve_cv, sim));
    } else {
      csv = curve_csv(curve_data(args.gammas, args.curve_cv));
    }
    if (args.out.empty()) {
      out << csv;
    } else {
      write_file(args.out, csv);
    }
    return;
  }

  config.validate();
  const IncompleteBivariate data = experiment_dataset(config);
  JsonObject summary = config_json(args.experiment, config);
  std::string records;

  if (args.experiment == "two-stage") {
    RandomStream ref_rng = make_stream(config.seed, kReferenceStream);
    const PooledAnalysis reference = reference_pool(data, args.reference_m, ref_rng);
    const auto reps = run_two_stage_reps(data, config);
    const double target_sd = target_sd_equivalent(config.target, reference.se);
    summary.add("target_kind", to_string(config.target.kind))
        .add("target_value", config.target.value)
        .add("reference_m", args.reference_m)
        .add("reference_se", reference.se)
        .add("reference_gamma", reference.gamma_hat)
        .add("target_sd_equivalent", target_sd)
        .add("summary", two_stage_summary_json(summarize_two_stage(reps)));
    records = two_stage_records_csv(reps);
  } else if (args.experiment == "cv-check") {
    RandomStream rng = make_stream(config.seed, kReferenceStream);
    const auto pools = repeated_pools(data, args.m, config.reps, rng(), config.threads);
    summary.add("result", cv_check_json(summarize_cv(pools)));
    records = pools_csv(pools);
  } else {
    const DfReliability result = df_reliability(config, args.threshold, config.reps);
    summary.add("threshold", args.threshold).add("fraction", result.fraction);
    records = df_reliability_csv(result);
  }

  if (!args.out.empty()) write_file(args.out, records);
  out << summary.str() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pool multiply imputed estimates and plan how many imputations to use", "howmany"};
  app.set_version_flag("--version", std::string("howmany ") + kVersion);
  app.require_subcommand(1);

  PoolArgs pool_args;
  auto* pool_cmd = app.add_subcommand("pool", "Combine per-imputation estimates");
  pool_cmd->add_option("--in", pool_args.in, "CSV with imputation,estimate,variance")
      ->required()
      ->check(CLI::ExistingFile);
  pool_cmd->add_option("--level", pool_args.level, "Confidence level")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  pool_cmd->add_option("--format", pool_args.format)
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  PlanArgs plan_args;
  auto* plan_cmd = app.add_subcommand("plan", "Recommend M from a pilot analysis");
  plan_cmd->add_option("--pilot", plan_args.pilot, "Pilot CSV with imputation,estimate,variance")
      ->required()
      ->check(CLI::ExistingFile);
  add_target_group(plan_cmd, plan_args.target, true)->require_option(1);
  plan_cmd->add_option("--level", plan_args.level)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  plan_cmd->add_option("--max-m", plan_args.max_m)->check(CLI::Range(2, 100000000))->capture_default_str();
  plan_cmd->add_option("--format", plan_args.format)
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  Table1Args table_args;
  auto* table_cmd = app.add_subcommand("table1", "Confidence intervals for gamma over a grid");
  table_cmd->add_option("--level", table_args.level)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  table_cmd->add_option("--gammas", table_args.gammas)->delimiter(',');
  table_cmd->add_option("--ms", table_args.ms)->delimiter(',');
  table_cmd->add_option("--format", table_args.format)
      ->check(CLI::IsMember({"csv", "text", "json"}))
      ->capture_default_str();

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo checks on synthetic data");
  sim_cmd->add_option("--experiment", sim.experiment)
      ->required()
      ->check(CLI::IsMember({"two-stage", "cv-check", "curve", "df-reliability"}));
  sim_cmd->add_option("--n", sim.config.n)->capture_default_str();
  sim_cmd->add_option("--rho", sim.config.rho)->capture_default_str();
  sim_cmd->add_option("--missing", sim.config.missing_fraction)->capture_default_str();
  sim_cmd->add_option("--calibrate-gamma", sim.calibrate_gamma,
                      "Choose rho so the mean gamma_hat is near this value");
  sim_cmd->add_option("--pilot-m", sim.config.pilot_m)->capture_default_str();
  add_target_group(sim_cmd, sim.target, false)->require_option(0, 1);
  sim_cmd->add_option("--level", sim.config.level)->capture_default_str();
  sim_cmd->add_option("--reps", sim.config.reps)->capture_default_str();
  sim_cmd->add_option("--seed", sim.config.seed)->capture_default_str();
  sim_cmd->add_option("--max-m", sim.config.m_max)->capture_default_str();
  sim_cmd->add_option("--threads", sim.config.threads, "0 = all cores")->capture_default_str();
  sim_cmd->add_option("--out", sim.out, "Per-replication CSV (curve: the curve CSV)");
  sim_cmd->add_option("--m", sim.m, "Imputations per pooling (cv-check)")->capture_default_str();
  sim_cmd->add_option("--threshold", sim.threshold, "df threshold (df-reliability)")
      ->capture_default_str();
  sim_cmd->add_option("--gammas", sim.gammas, "Gamma grid (curve)")->delimiter(',');
  sim_cmd->add_option("--cv", sim.curve_cv, "CV of SE target (curve)")->capture_default_str();
  sim_cmd->add_flag("--simulate-m", sim.simulate_m, "Add the simulated required M (curve)");
  sim_cmd->add_flag("--figure2", sim.figure2, "Emit the df-vs-CV curve instead (curve)");
  sim_cmd->add_option("--search-reps", sim.search_reps)->capture_default_str();
  sim_cmd->add_option("--search-max", sim.search_max)->capture_default_str();
  sim_cmd->add_option("--reference-m", sim.reference_m)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*pool_cmd) {
      run_pool(pool_args, out);
    } else if (*plan_cmd) {
      run_plan(plan_args, out, err);
    } else if (*table_cmd) {
      run_table1(table_args, out);
    } else if (*sim_cmd) {
      run_simulate(sim, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace howmany
