#include "aclab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace aclab {

namespace {

// 4-point Lagrange weights on nodes {-1,0,1,2} at parameter t in [0,1]
inline void lagrange4(double t, double w[4]) {
  w[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
  w[1] = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  w[2] = -(t + 1.0) * t * (t - 2.0) / 2.0;
  w[3] = (t + 1.0) * t * (t - 1.0) / 6.0;
}

inline void lagrange4_deriv(double t, double w[4]) {
  w[0] = -(3.0 * t * t - 6.0 * t + 2.0) / 6.0;
  w[1] = (3.0 * t * t - 4.0 * t - 1.0) / 2.0;
  w[2] = -(3.0 * t * t - 2.0 * t - 2.0) / 2.0;
  w[3] = (3.0 * t * t - 1.0) / 6.0;
}

inline int clampi(int i, int lo, int hi) { return i < lo ? lo : (i > hi ? hi : i); }

} // namespace

double ScalarField::interp(Vec2 p) const {
  const int n = grid_.n;
  const double u = p.x * (n - 1), w = p.y * (n - 1);
  int i = clampi(static_cast<int>(std::floor(u)), 0, n - 2);
  int j = clampi(static_cast<int>(std::floor(w)), 0, n - 2);
  const double tx = u - i, ty = w - j;
  double wx[4], wy[4];
  lagrange4(tx, wx);
  lagrange4(ty, wy);
  double s = 0.0;
  for (int b = 0; b < 4; ++b) {
    const int jj = clampi(j - 1 + b, 0, n - 1);
    double row = 0.0;
    for (int a = 0; a < 4; ++a)
      row += wx[a] * at(clampi(i - 1 + a, 0, n - 1), jj);
    s += wy[b] * row;
  }
  return s;
}

Vec2 ScalarField::interp_grad(Vec2 p) const {
  const int n = grid_.n;
  const double u = p.x * (n - 1), w = p.y * (n - 1);
  int i = clampi(static_cast<int>(std::floor(u)), 0, n - 2);
  int j = clampi(static_cast<int>(std::floor(w)), 0, n - 2);
  const double tx = u - i, ty = w - j;
  double wx[4], wy[4], dx[4], dy[4];
  lagrange4(tx, wx);
  lagrange4(ty, wy);
  lagrange4_deriv(tx, dx);
  lagrange4_deriv(ty, dy);
  double gx = 0.0, gy = 0.0;
  for (int b = 0; b < 4; ++b) {
    const int jj = clampi(j - 1 + b, 0, n - 1);
    double row = 0.0, drow = 0.0;
    for (int a = 0; a < 4; ++a) {
      const double val = at(clampi(i - 1 + a, 0, n - 1), jj);
      row += wx[a] * val;
      drow += dx[a] * val;
    }
    gx += wy[b] * drow;
    gy += dy[b] * row;
  }
  const double scale = 1.0 / grid_.h;
  return {gx * scale, gy * scale};
}

Vec2 ScalarField::grad_at(int i, int j) const {
  const int n = grid_.n;
  const double inv2h = 0.5 / grid_.h;
  double gx, gy;
  if (i == 0) gx = (at(1, j) - at(0, j)) / grid_.h;
  else if (i == n - 1) gx = (at(n - 1, j) - at(n - 2, j)) / grid_.h;
  else gx = (at(i + 1, j) - at(i - 1, j)) * inv2h;
  if (j == 0) gy = (at(i, 1) - at(i, 0)) / grid_.h;
  else if (j == n - 1) gy = (at(i, n - 1) - at(i, n - 2)) / grid_.h;
  else gy = (at(i, j + 1) - at(i, j - 1)) * inv2h;
  return {gx, gy};
}

double ScalarField::laplacian_at(int i, int j) const {
  return (at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1) - 4.0 * at(i, j)) /
         (grid_.h * grid_.h);
}

double ScalarField::min() const { return *std::min_element(v_.begin(), v_.end()); }
double ScalarField::max() const { return *std::max_element(v_.begin(), v_.end()); }

double ScalarField::integral() const {
  const int n = grid_.n;
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    double row = 0.0;
    for (int i = 0; i < n; ++i) {
      const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      row += wi * at(i, j);
    }
    s += wj * row;
  }
  return s * grid_.h * grid_.h;
}

double ScalarField::l2_norm() const {
  const int n = grid_.n;
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    double row = 0.0;
    for (int i = 0; i < n; ++i) {
      const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      row += wi * at(i, j) * at(i, j);
    }
    s += wj * row;
  }
  return std::sqrt(s * grid_.h * grid_.h);
}

void ScalarField::write_snapshot(std::ostream& os, double time) const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%d %.17g %.17g\n", grid_.n, grid_.h, time);
  os << buf;
  for (int j = 0; j < grid_.n; ++j) {
    for (int i = 0; i < grid_.n; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", at(i, j));
      os << buf << (i + 1 == grid_.n ? '\n' : ' ');
    }
  }
}

ScalarField ScalarField::read_snapshot(std::istream& is, double* time) {
  int n = 0;
  double h = 0, t = 0;
  if (!(is >> n >> h >> t) || n < 2)
    throw std::runtime_error("snapshot: bad header");
  ScalarField f{Grid{n}};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (!(is >> f.at(i, j)))
        throw std::runtime_error("snapshot: truncated data");
  if (time) *time = t;
  return f;
}

std::string snapshot_filename(double eps, double theta, int index) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "c_eps%g_theta%g_t%d.dat", eps, theta, index);
  return buf;
}

} // namespace aclab
