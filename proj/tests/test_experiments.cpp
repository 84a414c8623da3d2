#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "dgwave/acceptance.hpp"
#include "dgwave/experiments.hpp"

using namespace dgwave;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("dgwave_test_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("claim helpers") {
  CHECK(claim_abs("x", 1.0, 1.05, 0.1).pass);
  CHECK_FALSE(claim_abs("x", 1.0, 1.2, 0.1).pass);
  CHECK(claim_rel("x", 100.0, 101.0, 0.02).pass);
  CHECK_FALSE(claim_rel("x", 100.0, 103.0, 0.02).pass);
  CHECK(claim_below("x", 1.0, 0.5).pass);
  CHECK_FALSE(claim_below("x", 1.0, 1.0).pass);
  CHECK(claim_above("x", 1.0, 2.0).pass);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(claim_abs("x", 0.0, nan, 1e9).pass);
  CHECK_FALSE(claim_below("x", 1.0, nan).pass);
  CHECK_FALSE(claim_above("x", 1.0, std::numeric_limits<double>::infinity()).pass);
}

TEST_CASE("report csv and overall verdict") {
  VerificationReport r;
  r.add(claim_abs("first, with comma", 1.0, 1.0, 0.0));
  CHECK(r.passed());
  VerificationReport other;
  other.add(claim_abs("second", 1.0, 2.0, 0.5));
  r.merge(other);
  CHECK_FALSE(r.passed());
  const auto dir = scratch("report");
  fs::create_directories(dir);
  r.write_csv((dir / "report.csv").string());
  const auto rows = lines(dir / "report.csv");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "claim,paper_value,computed,tol,pass");
  CHECK(rows[1].rfind("first; with comma,", 0) == 0);
  CHECK(rows[1].substr(rows[1].size() - 4) == "true");
  CHECK(rows[2].substr(rows[2].size() - 5) == "false");
  fs::remove_all(dir);
}

TEST_CASE("validate rejects bad input") {
  ExperimentSpec s;
  s.id = "fig9";
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
  s.id = "fig1";
  CHECK_NOTHROW(validate(s));
  s.degree = -1;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
  s.degree.reset();
  s.cells = 1;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
  s.cells.reset();
  s.cfl = 0.0;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
  s.cfl.reset();
  s.perturb = 0.5;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
  s.perturb = 0.1;
  s.id = "table2-partial";
  s.degree = 5;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
  CHECK(experiment_ids().size() == 9);
}

TEST_CASE("default_cfl") {
  CHECK(default_cfl(1.0) == 0.05);
  CHECK(default_cfl(100.0) == 0.05);
  CHECK(default_cfl(1500.0) == 0.025);
}

TEST_CASE("table2-partial writes its table and passes") {
  ExperimentSpec s;
  s.id = "table2-partial";
  s.outdir = scratch("t2").string();
  const auto r = run_experiment(s);
  CHECK(r.passed());
  CHECK(fs::exists(fs::path(s.outdir) / "table2-partial" / "table2.csv"));
  const auto rows = lines(fs::path(s.outdir) / "table2-partial" / "report.csv");
  CHECK(rows.size() == r.claims().size() + 1);
  fs::remove_all(s.outdir);
}

TEST_CASE("fig5 runs are deterministic for a fixed seed") {
  ExperimentSpec s;
  s.id = "fig5";
  s.seed = 3;
  s.outdir = scratch("fig5a").string();
  const auto a = run_experiment(s);
  CHECK(a.passed());
  ExperimentSpec t = s;
  t.outdir = scratch("fig5b").string();
  run_experiment(t);
  const auto dir_a = fs::path(s.outdir) / "fig5";
  const auto dir_b = fs::path(t.outdir) / "fig5";
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(dir_a)) {
    const auto name = entry.path().filename();
    CHECK(slurp(entry.path()) == slurp(dir_b / name));
    ++compared;
  }
  CHECK(compared >= 3);
  CHECK(fs::exists(dir_a / "mesh_perturbed.csv"));
  fs::remove_all(s.outdir);
  fs::remove_all(t.outdir);
}

TEST_CASE("scheme override restricts the panel runs") {
  ExperimentSpec s;
  s.id = "fig1";
  s.scheme = Method::C;
  s.outdir = scratch("fig1").string();
  run_experiment(s);
  const auto dir = fs::path(s.outdir) / "fig1";
  CHECK(fs::exists(dir / "snapshot_C.csv"));
  CHECK_FALSE(fs::exists(dir / "snapshot_U.csv"));
  CHECK(lines(dir / "snapshot_C.csv").front() == "x,u_h,phi_h");
  CHECK(lines(dir / "trajectory_C.csv").front() == "t,E_u,E_phi");
  CHECK(lines(dir / "mesh.csv").front() == "j,x_left,h_j");
  fs::remove_all(s.outdir);
}

TEST_CASE("a blown-up run becomes a failed claim") {
  ExperimentSpec s;
  s.id = "fig1";
  s.scheme = Method::U;
  s.cfl = 40.0;
  s.tfinal = 30.0;
  s.outdir = scratch("blowup").string();
  const auto r = run_experiment(s);
  CHECK_FALSE(r.passed());
  CHECK(fs::exists(fs::path(s.outdir) / "fig1" / "report.csv"));
  fs::remove_all(s.outdir);
}

TEST_CASE("criterion titles and bounds") {
  for (int k = 1; k <= kCriterionCount; ++k) CHECK_FALSE(criterion_title(k).empty());
  CHECK_THROWS_AS(evaluate_criterion(0), std::out_of_range);
  CHECK_THROWS_AS(criterion_title(kCriterionCount + 1), std::out_of_range);
}
