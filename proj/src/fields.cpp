#include "aclab/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace aclab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

StreamVelocity StreamVelocity::zero() {
  StreamVelocity v;
  v.kind_ = Kind::zero;
  return v;
}

StreamVelocity StreamVelocity::single_vortex(double amplitude) {
  StreamVelocity v;
  v.kind_ = Kind::single_vortex;
  v.amplitude_ = amplitude;
  return v;
}

StreamVelocity StreamVelocity::double_vortex(double amplitude) {
  StreamVelocity v;
  v.kind_ = Kind::double_vortex;
  v.amplitude_ = amplitude;
  return v;
}

StreamVelocity StreamVelocity::custom(std::function<Vec2(Vec2, double)> v,
                                      std::function<Mat2(Vec2, double)> grad_v,
                                      double max_speed, bool autonomous) {
  StreamVelocity s;
  s.kind_ = Kind::custom;
  s.custom_v_ = std::move(v);
  s.custom_grad_ = std::move(grad_v);
  s.custom_max_speed_ = max_speed;
  s.autonomous_ = autonomous;
  return s;
}

Vec2 StreamVelocity::at(Vec2 p, double t) const {
  switch (kind_) {
    case Kind::zero:
      return {0.0, 0.0};
    case Kind::single_vortex: {
      const double sx = std::sin(kPi * p.x), sy = std::sin(kPi * p.y);
      const double s2x = std::sin(2.0 * kPi * p.x), s2y = std::sin(2.0 * kPi * p.y);
      return {-amplitude_ * kPi * sx * sx * s2y, amplitude_ * kPi * s2x * sy * sy};
    }
    case Kind::double_vortex: {
      const double sy = std::sin(kPi * p.y);
      const double s2x = std::sin(2.0 * kPi * p.x), s2y = std::sin(2.0 * kPi * p.y);
      const double c2x = std::cos(2.0 * kPi * p.x);
      return {-amplitude_ * kPi * s2x * s2y, 2.0 * amplitude_ * kPi * c2x * sy * sy};
    }
    case Kind::custom:
      return custom_v_(p, t);
  }
  return {0.0, 0.0};
}

Mat2 StreamVelocity::grad_at(Vec2 p, double t) const {
  switch (kind_) {
    case Kind::zero:
      return {};
    case Kind::single_vortex: {
      const double sx = std::sin(kPi * p.x), sy = std::sin(kPi * p.y);
      const double s2x = std::sin(2.0 * kPi * p.x), s2y = std::sin(2.0 * kPi * p.y);
      const double c2x = std::cos(2.0 * kPi * p.x), c2y = std::cos(2.0 * kPi * p.y);
      const double q = amplitude_ * kPi * kPi * s2x * s2y; // shared so trace is exactly 0
      Mat2 g;
      g.a11 = -q;
      g.a12 = -2.0 * amplitude_ * kPi * kPi * sx * sx * c2y;
      g.a21 = 2.0 * amplitude_ * kPi * kPi * c2x * sy * sy;
      g.a22 = q;
      return g;
    }
    case Kind::double_vortex: {
      const double sy = std::sin(kPi * p.y);
      const double s2x = std::sin(2.0 * kPi * p.x), s2y = std::sin(2.0 * kPi * p.y);
      const double c2x = std::cos(2.0 * kPi * p.x), c2y = std::cos(2.0 * kPi * p.y);
      const double q = 2.0 * amplitude_ * kPi * kPi * c2x * s2y;
      Mat2 g;
      g.a11 = -q;
      g.a12 = -2.0 * amplitude_ * kPi * kPi * s2x * c2y;
      g.a21 = -4.0 * amplitude_ * kPi * kPi * s2x * sy * sy;
      g.a22 = q;
      return g;
    }
    case Kind::custom:
      return custom_grad_(p, t);
  }
  return {};
}

double StreamVelocity::psi(Vec2 p, double) const {
  const double sx = std::sin(kPi * p.x), sy = std::sin(kPi * p.y);
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::single_vortex:
      return amplitude_ * sx * sx * sy * sy;
    case Kind::double_vortex:
      return amplitude_ * std::sin(2.0 * kPi * p.x) * sy * sy;
    case Kind::custom:
      throw std::logic_error("psi unavailable for custom velocity");
  }
  return 0.0;
}

double StreamVelocity::max_speed() const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::single_vortex:
      return std::abs(amplitude_) * kPi;
    case Kind::double_vortex:
      return 2.0 * std::abs(amplitude_) * kPi;
    case Kind::custom:
      return custom_max_speed_;
  }
  return 0.0;
}

StreamVelocity::Kind StreamVelocity::kind_from_string(const std::string& s) {
  if (s == "zero") return Kind::zero;
  if (s == "single_vortex") return Kind::single_vortex;
  if (s == "double_vortex") return Kind::double_vortex;
  throw std::invalid_argument("unknown velocity kind: " + s);
}

namespace {
inline double bump(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  const double w = 1.0 - u * u;
  return w * w * w * w;
}
inline double bump_d(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  const double w = 1.0 - u * u;
  return -8.0 * u * w * w * w;
}
inline double bump_dd(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  const double w = 1.0 - u * u;
  return w * w * (56.0 * u * u - 8.0);
}
} // namespace

Vec2 TestField::at(Vec2 p) const {
  const double u = (p.x - center.x) / halfwidth.x;
  const double w = (p.y - center.y) / halfwidth.y;
  if (std::abs(u) >= 1.0 || std::abs(w) >= 1.0) return {0.0, 0.0};
  return {-amplitude * bump(u) * bump_d(w) / halfwidth.y,
          amplitude * bump_d(u) * bump(w) / halfwidth.x};
}

Mat2 TestField::grad_at(Vec2 p) const {
  const double u = (p.x - center.x) / halfwidth.x;
  const double w = (p.y - center.y) / halfwidth.y;
  if (std::abs(u) >= 1.0 || std::abs(w) >= 1.0) return {};
  Mat2 g;
  const double cross = amplitude * bump_d(u) * bump_d(w) / (halfwidth.x * halfwidth.y);
  g.a11 = -cross;
  g.a12 = -amplitude * bump(u) * bump_dd(w) / (halfwidth.y * halfwidth.y);
  g.a21 = amplitude * bump_dd(u) * bump(w) / (halfwidth.x * halfwidth.x);
  g.a22 = cross;
  return g;
}

double TestField::psi(Vec2 p) const {
  const double u = (p.x - center.x) / halfwidth.x;
  const double w = (p.y - center.y) / halfwidth.y;
  return amplitude * bump(u) * bump(w);
}

bool TestField::clearance_ok(const Grid& g, int cells) const {
  const double margin = cells * g.h;
  return center.x - halfwidth.x >= margin && center.x + halfwidth.x <= 1.0 - margin &&
         center.y - halfwidth.y >= margin && center.y + halfwidth.y <= 1.0 - margin;
}

} // namespace aclab
