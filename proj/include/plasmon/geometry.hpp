#pragma once

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

namespace plasmon {

using Vec2 = Eigen::Vector2d;

/// Polar radius and its first two parameter derivatives at one angle.
struct RadialValue {
  double q = 0.0;
  double dq = 0.0;
  double ddq = 0.0;
};

enum class CurveKind { disk, peanut, peach, ellipse, trig_series };

/// A boundary curve that is starlike with respect to the origin,
/// x(t) = q(t) (cos t, sin t), t in [0, 2pi).
///
/// Closed-form curves carry a uniform scale factor; trigonometric series are
/// stored as q = (a_0, ..., a_m, b_1, ..., b_m) for
/// q(t) = sum_k a_k cos(kt) + sum_k b_k sin(kt).
class StarlikeShape {
 public:
  static StarlikeShape disk(double r0);
  /// sqrt(cos^2 t + 0.26 sin^2(t + 0.5))
  static StarlikeShape peanut();
  /// 18/25 - sin(t)/5 - 3/35 cos(3t)
  static StarlikeShape peach();
  /// Centered ellipse with semi-axes a (along x) and b (along y).
  static StarlikeShape ellipse(double a, double b);
  static StarlikeShape trig_series(Eigen::VectorXd coeffs);

  CurveKind kind() const { return kind_; }
  RadialValue evaluate(double t) const;
  double radius(double t) const { return evaluate(t).q; }

  /// Truncation order m of a trigonometric series (0 for closed forms).
  int trig_order() const;
  const Eigen::VectorXd &coefficients() const { return coeffs_; }
  double scale() const { return scale_; }

  /// Human-readable description, e.g. "disk(r0=0.8)".
  std::string describe() const;

  /// Minimum radius over `samples` equispaced angles.
  double min_radius(int samples = 256) const;
  /// Maximum radius over `samples` equispaced angles.
  double max_radius(int samples = 256) const;

 private:
  friend StarlikeShape scale(const StarlikeShape &shape, double zeta);

  CurveKind kind_ = CurveKind::disk;
  double p0_ = 1.0;
  double p1_ = 1.0;
  double scale_ = 1.0;
  Eigen::VectorXd coeffs_;
};

/// Equispaced parameter grid on a starlike boundary (2n nodes t_j = pi j / n).
struct BoundaryGrid {
  std::vector<double> t;
  std::vector<Vec2> x;
  std::vector<Vec2> normal;      // outward unit normals
  std::vector<double> curvature; // signed, positive for convex CCW curves
  std::vector<double> speed;     // |x'(t_j)|

  int size() const { return static_cast<int>(t.size()); }
  /// Half the node count, i.e. the n in "2n nodes".
  int half_size() const { return size() / 2; }
  double step() const;
  double perimeter() const;
  double max_abs_curvature() const;
};

struct BoundaryPoint {
  double t = 0.0;
  Vec2 x = Vec2::Zero();
  Vec2 normal = Vec2::Zero();
};

using BoundaryFunction = std::function<double(const BoundaryPoint &)>;

BoundaryPoint boundary_point(const StarlikeShape &shape, double t);

/// Samples the curve on 2n nodes. Throws NonPositiveRadius when the radius
/// is not positive at some node.
BoundaryGrid discretize(const StarlikeShape &shape, int n);

/// Uniform dilation about the origin by zeta > 0.
StarlikeShape scale(const StarlikeShape &shape, double zeta);

/// Normal perturbation x + eps h(x) nu(x), resampled along rays from the
/// origin and refit as a trigonometric series of order `fit_order`.
StarlikeShape perturb(const StarlikeShape &shape, const BoundaryFunction &h, double eps,
                      int fit_order = 64);

/// L2 projection of a periodic function onto trigonometric polynomials of
/// order m, computed with a (2m+1)-exact discrete Fourier sum on 4m+4 nodes.
Eigen::VectorXd fit_trig_series(const std::function<double(double)> &f, int m);

RadialValue eval_trig_series(const Eigen::VectorXd &coeffs, double t);

}  // namespace plasmon
