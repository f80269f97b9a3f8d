#include "plasmon/errors.hpp"
#include "plasmon/laplace_approx.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace plasmon;

namespace {

PosteriorGaussian example_gaussian() {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd g(20, 5);
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) g(i, j) = nd(rng) * (j + 1);
  Eigen::VectorXd mean(5);
  mean << 0.8, 0.1, -0.05, 0.02, 0.0;
  return build_gaussian(mean, g, 0.5, 0.3);
}

double cov_error(const SampleSet &s, const Eigen::MatrixXd &c) {
  return (s.sample_covariance() - c).norm() / c.norm();
}

}  // namespace

TEST_CASE("posterior covariance in closed form") {
  const Eigen::VectorXd mean = Eigen::VectorXd::Constant(3, 0.5);
  const auto zero = build_gaussian(mean, Eigen::MatrixXd::Zero(4, 3), 0.2, 0.1);
  CHECK((zero.covariance - (0.01 / 0.2) * Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-15);

  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(5, 3);
  g(0, 0) = 1.0;
  g(1, 1) = 3.0;
  g(2, 2) = 0.1;
  const auto diag = build_gaussian(mean, g, 0.2, 0.1);
  for (int i = 0; i < 3; ++i)
    CHECK(diag.covariance(i, i) == doctest::Approx(0.01 / (0.2 + g(i, i) * g(i, i))).epsilon(1e-14));
  CHECK(std::abs(diag.covariance(0, 1)) < 1e-18);

  const auto pg = example_gaussian();
  CHECK((pg.covariance - pg.covariance.transpose()).norm() < 1e-12);
  CHECK((pg.chol_lower * pg.chol_lower.transpose() - pg.covariance).norm() < 1e-10 * pg.covariance.norm());
  CHECK(pg.chol_lower.isLowerTriangular());
  for (int i = 0; i < 5; ++i) CHECK(pg.chol_lower(i, i) > 0.0);
  CHECK_THROWS_AS(build_gaussian(mean, g, 0.0, 0.1), NumericalError);
}

TEST_CASE("samples reproduce the posterior moments") {
  const auto pg = example_gaussian();
  const auto s = sample(pg, 10000, 17);
  REQUIRE(s.count() == 10000);
  CHECK(cov_error(s, pg.covariance) < 0.05);
  const Eigen::VectorXd se = (pg.covariance.diagonal() / 10000.0).cwiseSqrt();
  for (int i = 0; i < 5; ++i) CHECK(std::abs(s.sample_mean[i] - pg.mean[i]) < 3.0 * se[i]);
  CHECK((s.sample_covariance_diagonal() - s.sample_covariance().diagonal()).norm() < 1e-15);
}

TEST_CASE("covariance error decays like N^(-1/2)") {
  const auto pg = example_gaussian();
  double small = 0.0, large = 0.0;
  const int reps = 16;
  for (int r = 0; r < reps; ++r) {
    small += cov_error(sample(pg, 2500, 100 + r), pg.covariance);
    large += cov_error(sample(pg, 10000, 200 + r), pg.covariance);
  }
  const double ratio = small / large;
  CAPTURE(ratio);
  CHECK(ratio >= 1.4);
  CHECK(ratio <= 2.8);
}

TEST_CASE("sampling is reproducible and independent of the worker count") {
  const auto pg = example_gaussian();
  const auto a = sample(pg, 3000, 5, 1);
  const auto b = sample(pg, 3000, 5, 4);
  CHECK((a.samples - b.samples).norm() == 0.0);
  CHECK((sample(pg, 3000, 6).samples - a.samples).norm() > 0.0);
  CHECK_THROWS_AS(sample(pg, 1, 5), NumericalError);
}

TEST_CASE("radius bands") {
  const auto pg = example_gaussian();
  const auto s = sample(pg, 4000, 8);
  const auto b95 = radius_band(s, 0.95, 128);
  const auto b90 = radius_band(s, 0.90, 128);
  REQUIRE(b95.angles.size() == 128);
  for (size_t i = 0; i < b95.angles.size(); ++i) {
    CHECK(b95.lower[i] <= b90.lower[i]);
    CHECK(b90.upper[i] <= b95.upper[i]);
    CHECK(b90.lower[i] <= b90.mean[i]);
    CHECK(b90.mean[i] <= b90.upper[i]);
  }
  CHECK(b95.level == 0.95);
}
