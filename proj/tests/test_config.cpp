#include "plasmon/config.hpp"
#include "plasmon/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace plasmon;

namespace {

int error_line(const std::string &text, const std::vector<std::string> &overrides = {}) {
  try {
    parse_config(text, overrides);
  } catch (const ConfigError &e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("defaults describe the common numerical setup") {
  const auto cfg = parse_config("");
  CHECK(cfg.material.eps_m == 1.0);
  CHECK(cfg.material.mu_m == 1.0);
  CHECK(cfg.material.eps_c == 2.0);
  CHECK(cfg.material.omega == 0.01);
  CHECK(cfg.material.mu_c == cplx(5.0));
  CHECK(std::abs(cfg.lambda - cplx(-0.75)) < 1e-15);
  CHECK(cfg.incident.angle == doctest::Approx(std::numbers::pi / 3));
  CHECK(cfg.circle.radius == 1.5);
  CHECK(cfg.circle.count == 50);
  CHECK(cfg.n == 25);
  CHECK(cfg.inversion.m == 3);
  CHECK(cfg.sampling.count == 10000);
  CHECK(cfg.forward_setup().n == 25);
  CHECK(cfg.synthetic_setup().n == cfg.synthetic_n);
}

TEST_CASE("full document") {
  const std::string text = R"(
shape:
  kind: peanut
  project_order: 3
material:
  lambda: 0.0393+1e-3i
inversion:
  alpha0: 1000
  eta0: 1000
  delta: 0.001
  q0: [1, 0, 0, 0, 0, 0, 0]
run:
  seeds: [1, 2, 3]
  out: results
)";
  const auto cfg = parse_config(text);
  CHECK(cfg.shape.kind == "peanut");
  CHECK(cfg.shape.build().kind() == CurveKind::trig_series);
  CHECK(cfg.shape.build().trig_order() == 3);
  CHECK(cfg.material_form == MaterialForm::lambda);
  CHECK(std::abs(lambda_of_mu(1.0, cfg.material.mu_c) - cplx(0.0393, 1e-3)) < 1e-14);
  CHECK(cfg.inversion.alpha0 == 1000.0);
  CHECK(cfg.inversion.q0.size() == 7);
  CHECK(cfg.seeds.size() == 3);
  CHECK(cfg.out_dir == "results");
}

TEST_CASE("complex numbers in both notations") {
  CHECK(parse_complex("-1+0.004i") == cplx(-1.0, 0.004));
  CHECK(parse_complex("0.1856-1e-4i") == cplx(0.1856, -1e-4));
  CHECK(parse_complex("2.5") == cplx(2.5, 0.0));
  CHECK(parse_complex("-3j") == cplx(0.0, -3.0));
  CHECK(parse_complex("1+i") == cplx(1.0, 1.0));
  CHECK_THROWS_AS(parse_complex("1+2"), ConfigError);
  CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
  const auto cfg = parse_config("material:\n  mu_c: [-0.4508, 0.1058]\n");
  CHECK(cfg.material.mu_c == cplx(-0.4508, 0.1058));
}

TEST_CASE("errors carry the offending line") {
  CHECK(error_line("shape:\n  kind: disk\n  radios: 0.8\n") == 3);
  CHECK(error_line("grid:\n  n: ten\n") == 2);
  CHECK(error_line("material:\n  mu_c: 5\n  lambda: 0.1\n") == 2);
  CHECK(error_line("shape:\n  kind: blob\n") == 2);
  CHECK(error_line("bogus: 1\n") == 1);
  CHECK(error_line("shape: [1, 2\n") > 0);
  CHECK(error_line("material:\n  mu_c: 2-0.5i\n") == 0);  // violates Im mu_c >= 0
  CHECK(error_line("", {"grid.n=abc"}) == 0);
  CHECK_THROWS_AS(parse_config("", {"nonsense"}), ConfigError);
}

TEST_CASE("overrides apply on top of the file") {
  const auto cfg = parse_config("grid:\n  n: 30\n", {"grid.n=40", "material.mu_c=-1+0.004i",
                                                     "inversion.delta=0.005"});
  CHECK(cfg.n == 40);
  CHECK(cfg.material.mu_c == cplx(-1.0, 0.004));
  CHECK(cfg.inversion.delta == 0.005);
}

TEST_CASE("Drude material with a resonance target") {
  const std::string text = R"(
material:
  drude:
    mu0: 1
    filling: 0.3
    omega0: 1
    tau: 50
    target_lambda: -0.2
    bracket: [1.01, 1.5]
)";
  const auto cfg = parse_config(text);
  CHECK(cfg.material_form == MaterialForm::drude);
  CHECK(std::abs(cfg.lambda.real() + 0.2) < 1e-8);
  CHECK(cfg.material.omega > 1.01);
  CHECK(cfg.material.omega < 1.5);
}

TEST_CASE("missing files are config errors") {
  CHECK_THROWS_AS(load_config("/nonexistent/plasmon.yaml"), ConfigError);
  CHECK(load_config("").n == 25);
}
