#include "plasmon/np_spectrum.hpp"

#include "plasmon/errors.hpp"
#include "plasmon/layer_potentials.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace plasmon {

NPDiscretization assemble(const BoundaryGrid &grid) {
  NPDiscretization d;
  d.grid = grid;
  LaplaceLayers layers = assemble_laplace_layers(grid);
  d.single = std::move(layers.single);
  d.kstar = std::move(layers.adjoint);
  d.weights.resize(grid.size());
  for (int j = 0; j < grid.size(); ++j) d.weights[j] = grid.speed[j] * grid.step();
  return d;
}

Eigen::VectorXd equilibrium_density(const NPDiscretization &d) {
  const int count = d.grid.size();
  Eigen::MatrixXd a(count + 1, count);
  a.topRows(count) = 0.5 * Eigen::MatrixXd::Identity(count, count) - d.kstar;
  a.row(count) = d.weights.transpose();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(count + 1);
  rhs[count] = 1.0;
  return a.colPivHouseholderQr().solve(rhs);
}

Eigen::MatrixXd modified_single_layer(const NPDiscretization &d, const Eigen::VectorXd &phi0) {
  const int count = d.grid.size();
  // psi = (psi - <psi,1> phi0) + <psi,1> phi0
  const Eigen::MatrixXd project =
      Eigen::MatrixXd::Identity(count, count) - phi0 * d.weights.transpose();
  return d.single * project - Eigen::VectorXd::Ones(count) * d.weights.transpose();
}

NPSpectrum spectrum(const NPDiscretization &d, int count) {
  const int size = d.grid.size();
  NPSpectrum out;

  const Eigen::VectorXd phi0 = equilibrium_density(d);
  out.top.value = 0.5;
  out.top.density = phi0;

  // Gram matrix of the H* inner product and the matrix of K* in that product.
  const Eigen::MatrixXd w = d.weights.asDiagonal();
  Eigen::MatrixXd gram = -w * modified_single_layer(d, phi0);
  gram = 0.5 * (gram + gram.transpose()).eval();
  Eigen::MatrixXd op = gram * d.kstar;
  op = 0.5 * (op + op.transpose()).eval();

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(op, gram);
  if (solver.info() != Eigen::Success)
    throw NumericalError(ErrorKind::EigSolverFailure,
                         "generalized symmetric eigensolve failed (H* Gram matrix not definite)");

  Eigen::EigenSolver<Eigen::MatrixXd> plain(d.kstar, false);
  if (plain.info() == Eigen::Success)
    out.max_imag_part = plain.eigenvalues().imag().cwiseAbs().maxCoeff();

  std::vector<NPEigenpair> pairs;
  pairs.reserve(size);
  for (int i = 0; i < size; ++i)
    pairs.push_back({solver.eigenvalues()[i], solver.eigenvectors().col(i)});
  std::sort(pairs.begin(), pairs.end(), [](const NPEigenpair &a, const NPEigenpair &b) {
    return std::abs(a.value) > std::abs(b.value);
  });

  // The eigenvalue closest to 1/2 is the equilibrium mode.
  auto top = std::min_element(pairs.begin(), pairs.end(), [](const auto &a, const auto &b) {
    return std::abs(a.value - 0.5) < std::abs(b.value - 0.5);
  });
  out.top.value = top->value;
  pairs.erase(top);

  for (auto &p : pairs) {
    if (std::abs(p.value) < kZeroClusterThreshold)
      out.zero_cluster.push_back(p.value);
    else if (count <= 0 || static_cast<int>(out.candidates.size()) < count)
      out.candidates.push_back(std::move(p));
  }
  return out;
}

}  // namespace plasmon
