#pragma once

#include "aclab/grid.hpp"
#include "aclab/vec.hpp"

#include <functional>
#include <string>

namespace aclab {

/// Divergence-free velocity v = (-d_y psi, d_x psi) from a stream function
/// that is constant on the boundary of the unit box, so v.n = 0 on it.
/// Built-ins are time independent; a custom field may carry explicit time
/// dependence (then autonomous() is false and flow maps cannot be advanced
/// incrementally).
class StreamVelocity {
public:
  enum class Kind { zero, single_vortex, double_vortex, custom };

  StreamVelocity() = default; // zero field
  static StreamVelocity zero();
  // psi = A sin^2(pi x) sin^2(pi y): one cell, clockwise for A > 0
  static StreamVelocity single_vortex(double amplitude);
  // psi = A sin(2 pi x) sin^2(pi y): counter-rotating pair
  static StreamVelocity double_vortex(double amplitude);
  static StreamVelocity custom(std::function<Vec2(Vec2, double)> v,
                               std::function<Mat2(Vec2, double)> grad_v,
                               double max_speed, bool autonomous);

  Kind kind() const { return kind_; }
  double amplitude() const { return amplitude_; }
  bool autonomous() const { return autonomous_; }

  Vec2 at(Vec2 p, double t) const;
  Mat2 grad_at(Vec2 p, double t) const; // (i,j) entry = d v_i / d x_j
  double psi(Vec2 p, double t) const;   // built-ins only
  double max_speed() const;

  static Kind kind_from_string(const std::string& s);

private:
  Kind kind_ = Kind::zero;
  double amplitude_ = 0.0;
  bool autonomous_ = true;
  std::function<Vec2(Vec2, double)> custom_v_;
  std::function<Mat2(Vec2, double)> custom_grad_;
  double custom_max_speed_ = 0.0;
};

/// Divergence-free test field phi = (-d_y psi, d_x psi) with
/// psi = A b(u) b(w), b(u) = (1-u^2)^4, u,w box coordinates; phi vanishes
/// identically outside the support box.
struct TestField {
  Vec2 center{0.5, 0.5};
  Vec2 halfwidth{0.2, 0.2};
  double amplitude = 1.0;

  Vec2 at(Vec2 p) const;
  Mat2 grad_at(Vec2 p) const;
  double psi(Vec2 p) const;

  // support box stays at least `cells` grid cells away from the boundary
  bool clearance_ok(const Grid& g, int cells) const;
};

} // namespace aclab
