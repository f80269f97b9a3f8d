#include "plasmon/laplace_approx.hpp"

#include "plasmon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace plasmon {

PosteriorGaussian build_gaussian(const Eigen::VectorXd &q_map, const Eigen::MatrixXd &g,
                                 double mu_reg, double delta) {
  if (!(delta > 0.0) || !(mu_reg > 0.0))
    throw NumericalError(ErrorKind::InvalidArgument, "Laplace approximation needs delta, mu > 0");
  const Eigen::Index dim = q_map.size();
  const double inv_var = 1.0 / (delta * delta);
  Eigen::MatrixXd precision = inv_var * (g.transpose() * g);
  precision.diagonal().array() += mu_reg * inv_var;

  Eigen::LLT<Eigen::MatrixXd> prec_llt(precision);
  if (prec_llt.info() != Eigen::Success)
    throw NumericalError(ErrorKind::NotPositiveDefinite, "posterior precision");
  PosteriorGaussian pg;
  pg.mean = q_map;
  pg.covariance = prec_llt.solve(Eigen::MatrixXd::Identity(dim, dim));
  pg.covariance = 0.5 * (pg.covariance + pg.covariance.transpose()).eval();

  Eigen::LLT<Eigen::MatrixXd> cov_llt(pg.covariance);
  if (cov_llt.info() != Eigen::Success)
    throw NumericalError(ErrorKind::NotPositiveDefinite, "posterior covariance");
  pg.chol_lower = cov_llt.matrixL();
  return pg;
}

Eigen::MatrixXd SampleSet::sample_covariance() const {
  const Eigen::MatrixXd centered = samples.colwise() - sample_mean;
  return centered * centered.transpose() / static_cast<double>(count() - 1);
}

Eigen::VectorXd SampleSet::sample_covariance_diagonal() const {
  return sample_covariance().diagonal();
}

SampleSet sample(const PosteriorGaussian &pg, int count, std::uint64_t seed, int workers) {
  if (count < 2) throw NumericalError(ErrorKind::InvalidArgument, "need at least 2 samples");
  const Eigen::Index dim = pg.mean.size();
  SampleSet set;
  set.samples.resize(dim, count);
  const int chunks = (count + kSampleChunk - 1) / kSampleChunk;

  auto fill_chunk = [&](int c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int begin = c * kSampleChunk;
    const int end = std::min(count, begin + kSampleChunk);
    Eigen::VectorXd b(dim);
    for (int j = begin; j < end; ++j) {
      for (Eigen::Index i = 0; i < dim; ++i) b[i] = normal(rng);
      set.samples.col(j) = pg.mean + pg.chol_lower * b;
    }
  };

  workers = std::clamp(workers, 1, chunks);
  if (workers == 1) {
    for (int c = 0; c < chunks; ++c) fill_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int c = w; c < chunks; c += workers) fill_chunk(c);
      });
    for (auto &t : pool) t.join();
  }
  set.sample_mean = set.samples.rowwise().mean();
  return set;
}

namespace {

double quantile_sorted(const std::vector<double> &v, double p) {
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

}  // namespace

RadiusBand radius_band(const SampleSet &set, double level, int samples) {
  RadiusBand band;
  band.level = level;
  band.angles.resize(samples);
  band.mean.resize(samples);
  band.lower.resize(samples);
  band.upper.resize(samples);
  const Eigen::Index dim = set.samples.rows();
  const int m = static_cast<int>(dim - 1) / 2;
  std::vector<double> radii(set.count());
  const double tail = 0.5 * (1.0 - level);
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * std::numbers::pi * i / samples;
    Eigen::VectorXd basis(dim);
    basis[0] = 1.0;
    for (int k = 1; k <= m; ++k) {
      basis[k] = std::cos(k * t);
      basis[m + k] = std::sin(k * t);
    }
    const Eigen::VectorXd r = set.samples.transpose() * basis;
    std::copy(r.data(), r.data() + r.size(), radii.begin());
    std::sort(radii.begin(), radii.end());
    band.angles[i] = t;
    band.mean[i] = set.sample_mean.dot(basis);
    band.lower[i] = quantile_sorted(radii, tail);
    band.upper[i] = quantile_sorted(radii, 1.0 - tail);
  }
  return band;
}

}  // namespace plasmon
