#pragma once

#include "plasmon/forward_solver.hpp"
#include "plasmon/geometry.hpp"
#include "plasmon/inversion.hpp"
#include "plasmon/materials.hpp"
#include "plasmon/sensitivity.hpp"

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace plasmon {

/// Inclusion shape as written in a config file.
struct ShapeSpec {
  std::string kind = "disk";  // disk | peanut | peach | ellipse | trig_series
  double radius = 0.8;        // disk
  double a = 1.0;             // ellipse semi-axes
  double b = 0.5;
  Eigen::VectorXd coefficients;  // trig_series
  /// When > 0 the curve is replaced by its trigonometric projection of this order.
  int project_order = 0;

  StarlikeShape build() const;
};

enum class MaterialForm { mu_c, lambda, drude };

struct DrudeSpec {
  DrudeParams params;
  bool has_target = false;     // solve for omega with Re lambda(omega) = target
  double target_lambda = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct ScanSpec {
  std::vector<double> imag_values{1e-1, 1e-2, 1e-3, 1e-4};
  double omega_min = 0.5;
  double omega_max = 1.5;
  int count = 201;
  Vec2 point{1.5, 0.0};
};

struct SSFSpec {
  SSFOptions options;
  std::string h = "x1+x2";  // x1+x2 | one | x1 | x2
  std::vector<double> zetas{0.5, 2.0 / 3.0, 1.0, 1.1, 1.2};
};

struct SamplingSpec {
  int count = 10000;
  double level = 0.95;
  int angles = 256;
};

/// Fully resolved experiment settings. Defaults reproduce the common setup of
/// the numerical section: mu_m = eps_m = 1, eps_c = 2, omega = 0.01,
/// incidence angle pi/3, measurement circle of radius 1.5.
struct ExperimentConfig {
  ShapeSpec shape;
  MaterialConfig material;       // mu_c always resolved
  MaterialForm material_form = MaterialForm::mu_c;
  cplx lambda = 0.0;             // resolved spectral parameter
  DrudeSpec drude;
  IncidentWave incident{std::numbers::pi / 3.0, 1.0};
  ObservationCircle circle;
  int n = 25;                    // inversion / forward grid, 2n nodes
  int synthetic_n = 32;          // grid used to synthesize data
  int np_n = 100;                // NP spectrum grid
  InversionConfig inversion;
  SamplingSpec sampling;
  SSFSpec ssf;
  ScanSpec scan;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> seeds{1};
  std::string out_dir = "out";

  ForwardSetup forward_setup() const;
  ForwardSetup synthetic_setup() const;
};

ExperimentConfig default_config();

/// Parses YAML text, applies `key.path=value` overrides, and validates.
/// Throws ConfigError carrying the offending line (0 for overrides).
ExperimentConfig parse_config(const std::string &text,
                              const std::vector<std::string> &overrides = {});

/// Reads `path` (empty: defaults only) and calls parse_config.
ExperimentConfig load_config(const std::string &path,
                             const std::vector<std::string> &overrides = {});

/// Parses "a+bi", "a-bi", "bi" or a plain real number.
cplx parse_complex(const std::string &text);

}  // namespace plasmon
