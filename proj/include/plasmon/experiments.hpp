#pragma once

#include "plasmon/config.hpp"
#include "plasmon/inversion.hpp"
#include "plasmon/laplace_approx.hpp"
#include "plasmon/sensitivity.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace plasmon {

inline constexpr const char *kVersion = "0.1.0";

/// Runs body(0..count-1) on up to `workers` threads. The first exception
/// thrown by any task is rethrown after all threads join.
void parallel_for(int count, int workers, const std::function<void(int)> &body);

/// Named normal perturbations: "x1+x2", "x1", "x2", "one".
BoundaryFunction named_perturbation(const std::string &name);

struct SSFRow {
  double zeta = 0.0;
  double sqrt_perimeter = 0.0;   // |dB|^(1/2)
  double max_curvature = 0.0;    // ||tau||_C
  double norm = 0.0;             // ||SSF||_{L2(circle)}
  double error_estimate = 0.0;
};

/// SSF norms of zeta * base under the perturbation `spec.h`, one row per zeta.
/// Perimeter and curvature are measured on a 2*geometry_n grid.
std::vector<SSFRow> ssf_scan(const StarlikeShape &base, const ForwardSetup &setup,
                             const SSFSpec &spec, int geometry_n, int workers = 1);

/// One synthetic reconstruction with Laplace sampling.
struct CaseResult {
  cplx lambda = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  ReconstructionResult recon;
  Eigen::VectorXd la_mean;     // sample mean, equals q_map when delta = 0
  double e_map = 0.0;
  double e_la = 0.0;
  RadiusBand band;             // empty when delta = 0
  double band_coverage = 0.0;  // fraction of band angles with the truth inside
};

/// Synthesizes data for `truth` on cfg.synthetic_n, adds noise of level
/// cfg.inversion.delta with `seed`, reconstructs on cfg.n and samples the
/// Laplace posterior.
CaseResult run_case(const ExperimentConfig &cfg, const StarlikeShape &truth, std::uint64_t seed);

struct SVDRow {
  cplx lambda = 0.0;
  SVDReport svd;
};

/// Singular values of the Jacobian at `coeffs` for each spectral parameter.
std::vector<SVDRow> svd_table(const Eigen::VectorXd &coeffs, const ExperimentConfig &cfg,
                              const std::vector<cplx> &lambdas, int workers = 1);

/// Coefficients of the shape as seen by an order-m inversion: the stored
/// coefficients of a matching trig series, else the order-m projection.
Eigen::VectorXd trig_coefficients(const StarlikeShape &shape, int m);

/// Settings of the four reproduced tables layered over `base`. Shape,
/// material and hyperparameters are fixed by the table; grids, m, sampling
/// and seeds come from `base`.
ExperimentConfig table_preset(int table, const ExperimentConfig &base);
std::vector<cplx> table2_lambdas();
std::vector<double> table2_deltas();
std::vector<cplx> table3_lambdas();

nlohmann::json config_json(const ExperimentConfig &cfg);

struct RunOptions {
  std::filesystem::path out_dir = "out";
  int workers = 1;
  bool oracle = false;
};

/// Executes a CLI verb, writing CSV files and manifest.json into
/// opts.out_dir and progress lines to `log`. Throws ConfigError for bad verb
/// arguments and NumericalError for numerical failures.
void run_verb(const std::string &verb, const std::vector<std::string> &args,
              const ExperimentConfig &cfg, const RunOptions &opts, std::ostream &log);

/// Verbs accepted by run_verb.
const std::vector<std::string> &verb_names();

}  // namespace plasmon
