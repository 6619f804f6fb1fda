#pragma once

#include "aclab/vec.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace aclab {

/// Uniform node-centered grid on the closed unit box [0,1]^2.
struct Grid {
  int n = 0;     // nodes per side, >= 33 for solver use
  double h = 0;  // spacing 1/(n-1)

  Grid() = default;
  explicit Grid(int n_) : n(n_), h(1.0 / (n_ - 1)) {}

  double x(int i) const { return static_cast<double>(i) / (n - 1); }
  Vec2 node(int i, int j) const { return {x(i), x(j)}; }
  bool operator==(const Grid& o) const { return n == o.n; }
};

/// Grid-sampled scalar (order parameter, level set).  Row-major, x fastest.
class ScalarField {
public:
  ScalarField() = default;
  ScalarField(Grid g, double fill = 0.0) : grid_(g), v_(static_cast<std::size_t>(g.n) * g.n, fill) {}

  const Grid& grid() const { return grid_; }
  int n() const { return grid_.n; }
  double& at(int i, int j) { return v_[static_cast<std::size_t>(j) * grid_.n + i]; }
  double at(int i, int j) const { return v_[static_cast<std::size_t>(j) * grid_.n + i]; }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::size_t size() const { return v_.size(); }

  // bicubic (tensor 4-point Lagrange) interpolation; clamped stencil at edges
  double interp(Vec2 p) const;
  Vec2 interp_grad(Vec2 p) const;

  // centered differences at interior nodes, one-sided on the boundary
  Vec2 grad_at(int i, int j) const;
  double laplacian_at(int i, int j) const; // 5-point, interior only

  double min() const;
  double max() const;

  // composite trapezoid over the box
  double integral() const;
  double l2_norm() const; // sqrt(int f^2)

  void write_snapshot(std::ostream& os, double time) const;
  static ScalarField read_snapshot(std::istream& is, double* time = nullptr);

private:
  Grid grid_;
  std::vector<double> v_;
};

/// Snapshot file naming used by the CLI: c_eps<val>_theta<val>_t<index>.dat
std::string snapshot_filename(double eps, double theta, int index);

} // namespace aclab
