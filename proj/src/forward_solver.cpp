#include "plasmon/forward_solver.hpp"

#include "plasmon/errors.hpp"
#include "plasmon/layer_potentials.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace plasmon {

namespace {
const cplx kI(0.0, 1.0);
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

Vec2 IncidentWave::direction() const { return Vec2(std::cos(angle), std::sin(angle)); }

cplx IncidentWave::value(double k_m, const Vec2 &x) const {
  return amplitude * std::exp(kI * k_m * direction().dot(x));
}

cplx IncidentWave::normal_derivative(double k_m, const Vec2 &x, const Vec2 &nu) const {
  return kI * k_m * direction().dot(nu) * value(k_m, x);
}

std::vector<double> ObservationCircle::angles() const {
  std::vector<double> a(count);
  for (int i = 0; i < count; ++i) a[i] = kTwoPi * i / count;
  return a;
}

std::vector<Vec2> ObservationCircle::points() const {
  std::vector<Vec2> p(count);
  for (int i = 0; i < count; ++i) {
    const double t = kTwoPi * i / count;
    p[i] = Vec2(radius * std::cos(t), radius * std::sin(t));
  }
  return p;
}

double ObservationCircle::weight() const { return kTwoPi * radius / count; }

DensityPair solve_densities(const BoundaryGrid &grid, const MaterialConfig &mat,
                            const IncidentWave &inc) {
  mat.validate();
  const int count = grid.size();
  const double km = mat.k_m();
  const cplx kc = mat.k_c();
  const HelmholtzLayers outer = assemble_helmholtz_layers(grid, cplx(km));
  const HelmholtzLayers inner = assemble_helmholtz_layers(grid, kc);

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(count, count);
  Eigen::MatrixXcd a(2 * count, 2 * count);
  a.topLeftCorner(count, count) = outer.single;
  a.topRightCorner(count, count) = -inner.single;
  a.bottomLeftCorner(count, count) = (0.5 * id + outer.adjoint) / mat.mu_m;
  a.bottomRightCorner(count, count) = (0.5 * id - inner.adjoint) / mat.mu_c;

  Eigen::VectorXcd b(2 * count);
  for (int j = 0; j < count; ++j) {
    b[j] = -inc.value(km, grid.x[j]);
    b[count + j] = -inc.normal_derivative(km, grid.x[j], grid.normal[j]) / mat.mu_m;
  }

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const double rcond = lu.rcond();
  DensityPair out;
  out.condition_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(out.condition_estimate <= kSingularConditionLimit)) {
    std::ostringstream os;
    os << "transmission system condition estimate " << out.condition_estimate;
    throw NumericalError(ErrorKind::SingularSystem, os.str());
  }
  const Eigen::VectorXcd x = lu.solve(b);
  out.residual = (a * x - b).norm() / b.norm();
  out.psi = x.head(count);
  out.phi = x.tail(count);
  return out;
}

Eigen::VectorXcd scattered_field(const DensityPair &densities, const BoundaryGrid &grid,
                                 const StarlikeShape &shape, const MaterialConfig &mat,
                                 const std::vector<Vec2> &points) {
  for (const Vec2 &p : points) {
    const double r = p.norm();
    if (r <= shape.radius(std::atan2(p.y(), p.x()))) {
      std::ostringstream os;
      os << "point (" << p.x() << ", " << p.y() << ") is not outside " << shape.describe();
      throw NumericalError(ErrorKind::PointInsideInclusion, os.str());
    }
  }
  return single_layer_potential(grid, cplx(mat.k_m()), densities.psi, points);
}

Eigen::VectorXcd interior_field(const DensityPair &densities, const BoundaryGrid &grid,
                                const MaterialConfig &mat, const std::vector<Vec2> &points) {
  return single_layer_potential(grid, mat.k_c(), densities.phi, points);
}

Eigen::VectorXcd measure(const StarlikeShape &shape, int n, const MaterialConfig &mat,
                         const IncidentWave &inc, const ObservationCircle &circle) {
  const BoundaryGrid grid = discretize(shape, n);
  const DensityPair dens = solve_densities(grid, mat, inc);
  return scattered_field(dens, grid, shape, mat, circle.points());
}

NearFieldData add_noise(const NearFieldData &data, double delta, std::uint64_t seed) {
  if (delta < 0.0) throw NumericalError(ErrorKind::InvalidArgument, "noise level must be >= 0");
  NearFieldData out = data;
  out.noise_level = delta;
  out.seed = seed;
  if (delta == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::Index count = data.values.size();
  Eigen::VectorXcd xi(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    xi[i] = cplx(re, im);
  }
  out.values = data.values + delta * xi / xi.norm();
  return out;
}

Eigen::VectorXd stack_complex(const Eigen::VectorXcd &v) {
  Eigen::VectorXd out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

}  // namespace plasmon
