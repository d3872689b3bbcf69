#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "howmany/cli.hpp"
#include "howmany/csv_io.hpp"

using namespace howmany;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"howmany"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const fs::path path = fs::temp_directory_path() / ("howmany_test_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("pool") {
    const auto path = temp_file("pool.csv", "imputation,estimate,variance\n1,0,1\n2,2,1\n");
    const auto r = run({"pool", "--in", path});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["theta"] == 1.0);
    CHECK(j["se"] == 2.0);
    CHECK(j["gamma_hat"] == 0.75);
    CHECK(run({"pool", "--in", path, "--format", "text"}).code == 0);
  }

  TEST_CASE("table1") {
    const auto r = run({"table1"});
    REQUIRE(r.code == 0);
    const auto t = parse_csv(r.out);
    CHECK(t.header == std::vector<std::string>{"gamma", "m", "lower", "upper"});
    CHECK(t.rows.size() == 20);
    const auto j = nlohmann::json::parse(run({"table1", "--format", "json"}).out);
    CHECK(j.size() == 20);
  }

  TEST_CASE("plan on a pilot with gamma .39 and SE .023") {
    const double b = 0.000171925;
    const double w = 0.00032269;
    const double d = std::sqrt(b / 2.5);
    std::string csv = "imputation,estimate,variance\n";
    for (int k = 0; k < 5; ++k) {
      char line[128];
      std::snprintf(line, sizeof line, "%d,%.17g,%.17g\n", k + 1, 16.642 + (k - 2) * d, w);
      csv += line;
    }
    const auto path = temp_file("pilot.csv", csv);
    const auto r = run({"plan", "--pilot", path, "--target-sd", "0.001"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["pilot_se"].get<double>() == doctest::Approx(0.023).epsilon(0.002));
    CHECK(j["gamma_point"].get<double>() == doctest::Approx(0.39).epsilon(0.002));
    const int m = j["m_required"];
    CHECK(m >= 124);
    CHECK(m <= 128);

    const auto capped = run({"plan", "--pilot", path, "--target-sd", "0.00001", "--max-m", "50"});
    CHECK(capped.code == 0);
    CHECK(capped.err.find("warning:") == 0);
  }

  TEST_CASE("usage errors exit 2") {
    const auto path = temp_file("pool2.csv", "imputation,estimate,variance\n1,0,1\n2,2,1\n");
    CHECK(run({}).code == 2);
    CHECK(run({"plan", "--pilot", path}).code == 2);
    CHECK(run({"plan", "--pilot", path, "--target-cv", ".1", "--target-df", "10"}).code == 2);
    CHECK(run({"pool", "--in", "/nonexistent.csv"}).code == 2);
    CHECK(run({"table1", "--format", "xml"}).code == 2);
    CHECK(run({"--version"}).code == 0);
  }

  TEST_CASE("runtime errors exit 1") {
    const auto path = temp_file("one.csv", "imputation,estimate,variance\n1,0,1\n");
    const auto r = run({"pool", "--in", path});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("error: insufficient imputations", 0) == 0);
    const auto bad = temp_file("bad.csv", "imputation,estimate,variance\n1,0,1\n2,x,1\n");
    CHECK(run({"pool", "--in", bad}).code == 1);
  }

  TEST_CASE("simulate is identical across thread counts") {
    const auto out1 = (fs::temp_directory_path() / "howmany_test_reps1.csv").string();
    const auto out4 = (fs::temp_directory_path() / "howmany_test_reps4.csv").string();
    const auto a = run({"simulate", "--experiment", "two-stage", "--n", "300", "--rho", "0.5",
                        "--reps", "10", "--target-cv", "0.1", "--reference-m", "30",
                        "--threads", "1", "--out", out1});
    const auto b = run({"simulate", "--experiment", "two-stage", "--n", "300", "--rho", "0.5",
                        "--reps", "10", "--target-cv", "0.1", "--reference-m", "30",
                        "--threads", "4", "--out", out4});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);
    const auto csv1 = read_text_file(out1);
    CHECK(csv1 == read_text_file(out4));
    const auto table = parse_csv(csv1);
    CHECK(table.rows.size() == 10);
    CHECK(table.column("final_se") == 11);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["summary"]["reps"] == 10);
  }

  TEST_CASE("simulate curve and df reliability") {
    const auto curve = run({"simulate", "--experiment", "curve", "--gammas", "0.1,0.5,0.9"});
    REQUIRE(curve.code == 0);
    const auto t = parse_csv(curve.out);
    CHECK(t.rows.size() == 3);
    CHECK(t.rows[1][1] == "51");

    const auto dfr = run({"simulate", "--experiment", "df-reliability", "--n", "300", "--rho",
                          "0.5", "--reps", "100", "--threshold", "0"});
    REQUIRE(dfr.code == 0);
    CHECK(nlohmann::json::parse(dfr.out)["fraction"] == 1.0);

    CHECK(run({"simulate", "--experiment", "cv-check", "--n", "300", "--m", "3"}).code == 0);
    CHECK(run({"simulate", "--experiment", "two-stage", "--rho", "1.5"}).code == 1);
  }
}
