#include "aclab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aclab {

double discrete_heps(const ScalarField& c, const TestField& phi, double eps) {
  const Grid& g = c.grid();
  if (!phi.clearance_ok(g, 2))
    throw std::invalid_argument("discrete_heps: test field support too close to the boundary");
  const int n = g.n;
  // restrict to the support box, padded one cell for safety
  const int i0 = std::max(1, static_cast<int>((phi.center.x - phi.halfwidth.x) * (n - 1)) - 1);
  const int i1 = std::min(n - 2, static_cast<int>((phi.center.x + phi.halfwidth.x) * (n - 1)) + 2);
  const int j0 = std::max(1, static_cast<int>((phi.center.y - phi.halfwidth.y) * (n - 1)) - 1);
  const int j1 = std::min(n - 2, static_cast<int>((phi.center.y + phi.halfwidth.y) * (n - 1)) + 2);
  const double inv2h = 0.5 / g.h;
  double acc = 0.0;
  for (int j = j0; j <= j1; ++j) {
    double row = 0.0;
    for (int i = i0; i <= i1; ++i) {
      const Mat2 G = phi.grad_at(g.node(i, j));
      if (G.a11 == 0.0 && G.a12 == 0.0 && G.a21 == 0.0 && G.a22 == 0.0) continue;
      const double cx = (c.at(i + 1, j) - c.at(i - 1, j)) * inv2h;
      const double cy = (c.at(i, j + 1) - c.at(i, j - 1)) * inv2h;
      row += cx * cx * G.a11 + cx * cy * (G.a12 + G.a21) + cy * cy * G.a22;
    }
    acc += row;
  }
  return eps * acc * g.h * g.h;
}

double limit_functional(const Interface& iface, const TestField& phi, double sigma,
                        const std::vector<double>* stretch) {
  const auto& v = iface.vertices();
  const std::size_t n = v.size();
  if (stretch && stretch->size() != n)
    throw std::invalid_argument("limit_functional: stretch size mismatch");
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2& a = v[k];
    const Vec2& b = v[(k + 1) % n];
    const Vec2 seg = b - a;
    const double len = seg.norm();
    if (len == 0.0) continue;
    const Vec2 nrm = seg.perp_right() * (1.0 / len);
    const Mat2 G = phi.grad_at((a + b) * 0.5);
    const double nGn = nrm.x * nrm.x * G.a11 + nrm.x * nrm.y * (G.a12 + G.a21) +
                       nrm.y * nrm.y * G.a22;
    const double s = stretch ? 0.5 * ((*stretch)[k] + (*stretch)[(k + 1) % n]) : 1.0;
    acc += s * nGn * len;
  }
  return 2.0 * sigma * acc;
}

double limit_functional_curvature_form(const Interface& iface, const TestField& phi,
                                       double sigma) {
  const auto& v = iface.vertices();
  const auto& nrm = iface.normals();
  const auto& kap = iface.curvatures();
  const std::size_t n = v.size();
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double l_prev = (v[k] - v[(k + n - 1) % n]).norm();
    const double l_next = (v[(k + 1) % n] - v[k]).norm();
    acc += kap[k] * nrm[k].dot(phi.at(v[k])) * 0.5 * (l_prev + l_next);
  }
  return 2.0 * sigma * acc;
}

double time_integrated(const std::vector<double>& times, const std::vector<double>& values) {
  if (times.size() != values.size())
    throw std::invalid_argument("time_integrated: size mismatch");
  if (times.size() < 3)
    throw std::invalid_argument("time_integrated: need at least 3 snapshots");
  double acc = 0.0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double dt = times[k] - times[k - 1];
    if (dt <= 0.0) throw std::invalid_argument("time_integrated: times must increase");
    acc += 0.5 * dt * (values[k] + values[k - 1]);
  }
  return acc;
}

std::size_t ProfileFit::n_ok() const {
  std::size_t c = 0;
  for (char v : ok) c += (v != 0);
  return c;
}

namespace {

struct FitWork {
  std::vector<double> r;   // sample offsets
  std::vector<double> val; // sampled field values
};

double fit_sse(const FitWork& w, const ProfileTable& prof, double eps, double s, double b) {
  double sse = 0.0;
  for (std::size_t k = 0; k < w.r.size(); ++k) {
    const double m = prof.theta(s * (w.r[k] - eps * b) / eps);
    const double d = m - w.val[k];
    sse += d * d;
  }
  return sse;
}

} // namespace

ProfileFit profile_fit(const ScalarField& c, const Interface& iface, const ProfileTable& profile,
                       double eps) {
  const auto& verts = iface.vertices();
  const auto& normals = iface.normals();
  const std::size_t n = verts.size();
  ProfileFit out;
  out.stretch.assign(n, 1.0);
  out.shift.assign(n, 0.0);
  out.residual.assign(n, 0.0);
  out.ok.assign(n, 0);

  constexpr int kSamples = 25;
  constexpr double kSpan = 3.0; // half-length in units of eps
  FitWork w;
  w.r.resize(kSamples);
  w.val.resize(kSamples);

  // search grids
  std::vector<double> s_grid, b_grid;
  for (int k = 0; k < 28; ++k)
    s_grid.push_back(0.3 * std::pow(10.0, k / 27.0)); // 0.3 .. 3.0 geometric
  for (int k = 0; k < 33; ++k)
    b_grid.push_back(-2.0 + 4.0 * k / 32.0);

  for (std::size_t i = 0; i < n; ++i) {
    bool usable = true;
    for (int k = 0; k < kSamples; ++k) {
      const double r = kSpan * eps * (2.0 * k / (kSamples - 1) - 1.0);
      const Vec2 p = verts[i] + normals[i] * r;
      if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0) {
        usable = false;
        break;
      }
      w.r[k] = r;
      w.val[k] = c.interp(p);
    }
    if (!usable) continue;

    double best_s = 1.0, best_b = 0.0, best = 1e300;
    for (double s : s_grid)
      for (double b : b_grid) {
        const double sse = fit_sse(w, profile, eps, s, b);
        if (sse < best) {
          best = sse;
          best_s = s;
          best_b = b;
        }
      }

    // Gauss-Newton polish with step halving
    double s = best_s, b = best_b, sse = best;
    bool diverged = false;
    for (int it = 0; it < 40; ++it) {
      double jss = 0, jsb = 0, jbb = 0, gs = 0, gb = 0;
      for (int k = 0; k < kSamples; ++k) {
        const double z = s * (w.r[k] - eps * b) / eps;
        const double m = profile.theta(z);
        const double dp = profile.theta_prime(z);
        const double ds = dp * (w.r[k] - eps * b) / eps;
        const double db = -dp * s;
        const double rres = m - w.val[k];
        jss += ds * ds;
        jsb += ds * db;
        jbb += db * db;
        gs += ds * rres;
        gb += db * rres;
      }
      const double det = jss * jbb - jsb * jsb;
      if (std::abs(det) < 1e-30) break;
      double step_s = (jbb * gs - jsb * gb) / det;
      double step_b = (jss * gb - jsb * gs) / det;
      double scale = 1.0;
      double new_sse = 0.0;
      for (int half = 0; half < 8; ++half) {
        new_sse = fit_sse(w, profile, eps, s - scale * step_s, b - scale * step_b);
        if (new_sse <= sse) break;
        scale *= 0.5;
      }
      if (new_sse > sse) break;
      s -= scale * step_s;
      b -= scale * step_b;
      if (!std::isfinite(s) || !std::isfinite(b) || s < 0.25 || s > 3.3 || std::abs(b) > 2.2) {
        diverged = true;
        break;
      }
      const double impr = sse - new_sse;
      sse = new_sse;
      if (impr < 1e-16 * (1.0 + sse)) break;
    }
    if (diverged) continue;
    out.stretch[i] = s;
    out.shift[i] = b;
    out.residual[i] = std::sqrt(sse / kSamples);
    out.ok[i] = 1;
  }
  return out;
}

} // namespace aclab
