#pragma once

#include "plasmon/geometry.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace plasmon {

/// N(q_MAP, C_MAP) with C_MAP = ((mu/delta^2) I + G^T G / delta^2)^{-1} = L L^T.
struct PosteriorGaussian {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  Eigen::MatrixXd chol_lower;
};

/// `mu_reg` is the Tikhonov weight, eta * delta^2 for the hierarchical eta.
PosteriorGaussian build_gaussian(const Eigen::VectorXd &q_map, const Eigen::MatrixXd &g,
                                 double mu_reg, double delta);

struct SampleSet {
  Eigen::MatrixXd samples;      // (2m+1) x N_e, one coefficient vector per column
  Eigen::VectorXd sample_mean;

  int count() const { return static_cast<int>(samples.cols()); }
  Eigen::VectorXd sample_covariance_diagonal() const;
  Eigen::MatrixXd sample_covariance() const;
};

inline constexpr int kSampleChunk = 1024;

/// q^j = mean + L B^j, B^j ~ N(0, I). Chunk c of kSampleChunk samples draws
/// from its own generator seeded by (seed, c), so the result does not depend
/// on `workers`.
SampleSet sample(const PosteriorGaussian &pg, int count, std::uint64_t seed, int workers = 1);

/// Pointwise radius quantiles of the sampled curves.
struct RadiusBand {
  std::vector<double> angles;
  std::vector<double> mean;   // radius of the sample-mean coefficients
  std::vector<double> lower;
  std::vector<double> upper;
  double level = 0.95;
};

/// Central band at coverage `level` on `samples` equispaced angles
/// (linear-interpolated empirical quantiles).
RadiusBand radius_band(const SampleSet &set, double level = 0.95, int samples = 256);

}  // namespace plasmon
