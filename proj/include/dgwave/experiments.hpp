#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dgwave/mesh.hpp"
#include "dgwave/scheme.hpp"
#include "dgwave/time_march.hpp"

namespace dgwave {

/// One checked statement: the reference value, what we computed, the
/// tolerance and the verdict. Non-finite computed values always fail.
struct Claim {
  std::string claim;
  double paper_value = 0.0;
  double computed = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// |computed - reference| <= tol
Claim claim_abs(std::string name, double reference, double computed, double tol);
/// |computed - reference| <= tol |reference|
Claim claim_rel(std::string name, double reference, double computed, double tol);
/// computed < bound
Claim claim_below(std::string name, double bound, double computed);
/// computed > bound
Claim claim_above(std::string name, double bound, double computed);

class VerificationReport {
 public:
  void add(Claim claim) { claims_.push_back(std::move(claim)); }
  void merge(const VerificationReport& other);
  const std::vector<Claim>& claims() const { return claims_; }
  bool passed() const;
  /// CSV claim,paper_value,computed,tol,pass.
  void write_csv(const std::string& path) const;

 private:
  std::vector<Claim> claims_;
};

/// Command-line overrides; unset fields take the experiment's defaults.
struct ExperimentSpec {
  std::string id;
  std::optional<Method> scheme;
  std::optional<int> degree;
  std::optional<int> cells;
  std::optional<double> tfinal;
  std::optional<double> cfl;
  std::optional<double> alpha;  // replaces the coupling of A / A*
  double perturb = 0.1;         // node perturbation for the non-uniform runs
  std::uint64_t seed = 1;
  std::string outdir = "results";
};

/// fig1 ... fig6, table1, table2-partial, regimes.
const std::vector<std::string>& experiment_ids();

/// Throws std::invalid_argument for an unknown id or out-of-range overrides.
void validate(const ExperimentSpec& spec);

/// Step-size default: 0.05, halved for runs longer than 100 time units so the
/// RK4 energy drift stays below 1e-7.
double default_cfl(double final_time);

/// The benchmark every simulation experiment uses: u0 = sin(2 pi x), phi0 = 0,
/// advanced to final_time and compared with sin(2 pi (x - t)).
struct SineWaveRun {
  DGState state;
  Trajectory trajectory;
  ErrorMeasure error;
};

SineWaveRun run_sine_wave(const PeriodicMesh1D& mesh, const SchemeConfig& config, double final_time, double cfl,
                          double output_interval = 0.0);

/// Writes the experiment's CSV files and report.csv under
/// <outdir>/<id>/ and returns the report. A solver failure becomes a failed
/// claim carrying the diagnostic in its name.
VerificationReport run_experiment(const ExperimentSpec& spec);

}  // namespace dgwave
