#include "plasmon/geometry.hpp"

#include "plasmon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace plasmon {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a + std::numbers::pi, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a - std::numbers::pi;
}

}  // namespace

StarlikeShape StarlikeShape::disk(double r0) {
  if (!(r0 > 0.0))
    throw NumericalError(ErrorKind::NonPositiveRadius, "disk radius must be positive");
  StarlikeShape s;
  s.kind_ = CurveKind::disk;
  s.p0_ = r0;
  return s;
}

StarlikeShape StarlikeShape::peanut() {
  StarlikeShape s;
  s.kind_ = CurveKind::peanut;
  return s;
}

StarlikeShape StarlikeShape::peach() {
  StarlikeShape s;
  s.kind_ = CurveKind::peach;
  return s;
}

StarlikeShape StarlikeShape::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw NumericalError(ErrorKind::NonPositiveRadius, "ellipse semi-axes must be positive");
  StarlikeShape s;
  s.kind_ = CurveKind::ellipse;
  s.p0_ = a;
  s.p1_ = b;
  return s;
}

StarlikeShape StarlikeShape::trig_series(Eigen::VectorXd coeffs) {
  if (coeffs.size() < 1 || coeffs.size() % 2 == 0)
    throw NumericalError(ErrorKind::InvalidArgument,
                         "trigonometric series needs 2m+1 coefficients");
  StarlikeShape s;
  s.kind_ = CurveKind::trig_series;
  s.coeffs_ = std::move(coeffs);
  return s;
}

int StarlikeShape::trig_order() const {
  return kind_ == CurveKind::trig_series ? static_cast<int>(coeffs_.size() - 1) / 2 : 0;
}

RadialValue eval_trig_series(const Eigen::VectorXd &coeffs, double t) {
  const int m = static_cast<int>(coeffs.size() - 1) / 2;
  RadialValue r{coeffs[0], 0.0, 0.0};
  for (int k = 1; k <= m; ++k) {
    const double a = coeffs[k];
    const double b = coeffs[m + k];
    const double c = std::cos(k * t);
    const double s = std::sin(k * t);
    const double kk = static_cast<double>(k);
    r.q += a * c + b * s;
    r.dq += kk * (-a * s + b * c);
    r.ddq += -kk * kk * (a * c + b * s);
  }
  return r;
}

RadialValue StarlikeShape::evaluate(double t) const {
  RadialValue r;
  switch (kind_) {
    case CurveKind::disk:
      r = {p0_, 0.0, 0.0};
      break;
    case CurveKind::peanut: {
      const double c = std::cos(t);
      const double s5 = std::sin(t + 0.5);
      const double f = c * c + 0.26 * s5 * s5;
      const double df = -std::sin(2.0 * t) + 0.26 * std::sin(2.0 * t + 1.0);
      const double ddf = -2.0 * std::cos(2.0 * t) + 0.52 * std::cos(2.0 * t + 1.0);
      const double q = std::sqrt(f);
      r = {q, df / (2.0 * q), ddf / (2.0 * q) - df * df / (4.0 * q * q * q)};
      break;
    }
    case CurveKind::peach:
      r = {18.0 / 25.0 - std::sin(t) / 5.0 - 3.0 / 35.0 * std::cos(3.0 * t),
           -std::cos(t) / 5.0 + 9.0 / 35.0 * std::sin(3.0 * t),
           std::sin(t) / 5.0 + 27.0 / 35.0 * std::cos(3.0 * t)};
      break;
    case CurveKind::ellipse: {
      const double a = p0_, b = p1_;
      const double g = 0.5 * (a * a + b * b) + 0.5 * (b * b - a * a) * std::cos(2.0 * t);
      const double dg = -(b * b - a * a) * std::sin(2.0 * t);
      const double ddg = -2.0 * (b * b - a * a) * std::cos(2.0 * t);
      const double ab = a * b;
      r = {ab / std::sqrt(g), -0.5 * ab * dg * std::pow(g, -1.5),
           ab * (0.75 * dg * dg * std::pow(g, -2.5) - 0.5 * ddg * std::pow(g, -1.5))};
      break;
    }
    case CurveKind::trig_series:
      return eval_trig_series(coeffs_, t);
  }
  r.q *= scale_;
  r.dq *= scale_;
  r.ddq *= scale_;
  return r;
}

std::string StarlikeShape::describe() const {
  std::ostringstream os;
  os.precision(12);
  switch (kind_) {
    case CurveKind::disk: os << "disk(r0=" << p0_ * scale_ << ")"; return os.str();
    case CurveKind::peanut: os << "peanut"; break;
    case CurveKind::peach: os << "peach"; break;
    case CurveKind::ellipse: os << "ellipse(a=" << p0_ << ",b=" << p1_ << ")"; break;
    case CurveKind::trig_series:
      os << "trig_series(m=" << trig_order() << ")";
      return os.str();
  }
  if (scale_ != 1.0) os << "*" << scale_;
  return os.str();
}

double StarlikeShape::min_radius(int samples) const {
  double r = radius(0.0);
  for (int j = 1; j < samples; ++j) r = std::min(r, radius(kTwoPi * j / samples));
  return r;
}

double StarlikeShape::max_radius(int samples) const {
  double r = radius(0.0);
  for (int j = 1; j < samples; ++j) r = std::max(r, radius(kTwoPi * j / samples));
  return r;
}

BoundaryPoint boundary_point(const StarlikeShape &shape, double t) {
  const RadialValue r = shape.evaluate(t);
  const double c = std::cos(t), s = std::sin(t);
  const Vec2 dx(r.dq * c - r.q * s, r.dq * s + r.q * c);
  BoundaryPoint p;
  p.t = t;
  p.x = Vec2(r.q * c, r.q * s);
  p.normal = Vec2(dx.y(), -dx.x()) / dx.norm();
  return p;
}

double BoundaryGrid::step() const { return kTwoPi / size(); }

double BoundaryGrid::perimeter() const {
  double sum = 0.0;
  for (double w : speed) sum += w;
  return sum * step();
}

double BoundaryGrid::max_abs_curvature() const {
  double m = 0.0;
  for (double k : curvature) m = std::max(m, std::abs(k));
  return m;
}

BoundaryGrid discretize(const StarlikeShape &shape, int n) {
  if (n < 8) throw NumericalError(ErrorKind::InvalidArgument, "discretize needs n >= 8");
  const int count = 2 * n;
  BoundaryGrid g;
  g.t.resize(count);
  g.x.resize(count);
  g.normal.resize(count);
  g.curvature.resize(count);
  g.speed.resize(count);
  for (int j = 0; j < count; ++j) {
    const double t = kTwoPi * j / count;
    const RadialValue r = shape.evaluate(t);
    if (!(r.q > 0.0)) {
      std::ostringstream os;
      os << shape.describe() << " has radius " << r.q << " at t=" << t;
      throw NumericalError(ErrorKind::NonPositiveRadius, os.str());
    }
    const double c = std::cos(t), s = std::sin(t);
    const Vec2 dx(r.dq * c - r.q * s, r.dq * s + r.q * c);
    const double speed2 = r.q * r.q + r.dq * r.dq;
    const double speed = std::sqrt(speed2);
    g.t[j] = t;
    g.x[j] = Vec2(r.q * c, r.q * s);
    g.normal[j] = Vec2(dx.y(), -dx.x()) / speed;
    g.curvature[j] = (r.q * r.q + 2.0 * r.dq * r.dq - r.q * r.ddq) / (speed2 * speed);
    g.speed[j] = speed;
  }
  return g;
}

StarlikeShape scale(const StarlikeShape &shape, double zeta) {
  if (!(zeta > 0.0))
    throw NumericalError(ErrorKind::InvalidArgument, "scale factor must be positive");
  StarlikeShape out = shape;
  if (out.kind_ == CurveKind::trig_series)
    out.coeffs_ *= zeta;
  else
    out.scale_ *= zeta;
  return out;
}

Eigen::VectorXd fit_trig_series(const std::function<double(double)> &f, int m) {
  const int count = 4 * m + 4;
  Eigen::VectorXd samples(count);
  for (int k = 0; k < count; ++k) samples[k] = f(kTwoPi * k / count);
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(2 * m + 1);
  coeffs[0] = samples.mean();
  for (int j = 1; j <= m; ++j) {
    double a = 0.0, b = 0.0;
    for (int k = 0; k < count; ++k) {
      const double th = kTwoPi * static_cast<double>((static_cast<long>(j) * k) % count) / count;
      a += samples[k] * std::cos(th);
      b += samples[k] * std::sin(th);
    }
    coeffs[j] = 2.0 * a / count;
    coeffs[m + j] = 2.0 * b / count;
  }
  return coeffs;
}

StarlikeShape perturb(const StarlikeShape &shape, const BoundaryFunction &h, double eps,
                      int fit_order) {
  if (eps == 0.0) return shape;
  auto displaced = [&](double t) {
    const BoundaryPoint p = boundary_point(shape, t);
    return Vec2(p.x + eps * h(p) * p.normal);
  };
  // Ray resampling: find t with arg(x~(t)) = theta. arg x(t) = t exactly, so
  // the fixed-point map below contracts at rate O(eps).
  auto ray_radius = [&](double theta) {
    double t = theta;
    Vec2 p = displaced(t);
    for (int it = 0; it < 100; ++it) {
      const double d = wrap_angle(std::atan2(p.y(), p.x()) - theta);
      t -= d;
      p = displaced(t);
      if (std::abs(d) < 1e-16) break;
    }
    if (p.dot(Vec2(std::cos(theta), std::sin(theta))) <= 0.0)
      throw NumericalError(ErrorKind::NonPositiveRadius, "perturbed curve crosses the origin");
    return p.norm();
  };
  StarlikeShape out = StarlikeShape::trig_series(fit_trig_series(ray_radius, fit_order));
  if (!(out.min_radius(4 * fit_order + 4) > 0.0))
    throw NumericalError(ErrorKind::NonPositiveRadius, "perturbed radius not positive");
  return out;
}

}  // namespace plasmon
