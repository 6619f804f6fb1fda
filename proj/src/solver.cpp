#include "aclab/solver.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace aclab {

double RunParams::m_eps() const { return m0 * std::pow(eps, theta); }

void RunParams::validate(const Grid& g) const {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("run: eps must be in (0,1]");
  if (theta < 0.0) throw std::invalid_argument("run: theta must be >= 0");
  if (!(m0 > 0.0)) throw std::invalid_argument("run: m0 must be positive");
  if (!(delta > 0.0)) throw std::invalid_argument("run: delta must be positive");
  if (T < 0.0) throw std::invalid_argument("run: T must be >= 0");
  if (g.n < 33) throw std::invalid_argument("run: grid too coarse (n >= 33)");
  if (g.h > eps / 4.0 * (1.0 + 1e-12))
    throw std::invalid_argument("run: interface underresolved, need h <= eps/4");
}

double stability_dt(const RunParams& p, const Grid& g, double vmax, double Lf) {
  const double m = p.m_eps();
  double dt = g.h * g.h / (4.0 * m);
  dt = std::min(dt, p.eps * p.eps / (m * Lf));
  if (vmax > 0.0) dt = std::min(dt, g.h / vmax);
  return 0.4 * dt;
}

double phase_from_level(double e, double eps, double delta, const ProfileTable& profile,
                        const Cutoff& cutoff) {
  const double z = cutoff(e / delta);
  const double ind = e >= 0.0 ? 1.0 : -1.0;
  if (z == 0.0) return ind;
  return z * profile.theta(e / eps) + (1.0 - z) * ind;
}

ScalarField initial_condition(const RunParams& p, const ScalarField& d0,
                              const ProfileTable& profile, const Cutoff& cutoff) {
  // the profile should be ~ +-1 where the cutoff plateau ends
  if (1.0 - profile.theta(p.delta / (2.0 * p.eps)) > 1e-3)
    std::fprintf(stderr,
                 "warning: eps/delta = %.3g leaves the interface wider than the cutoff plateau\n",
                 p.eps / p.delta);
  ScalarField c{d0.grid()};
  const int n = d0.grid().n;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      c.at(i, j) = phase_from_level(d0.at(i, j), p.eps, p.delta, profile, cutoff);
  return c;
}

namespace {

// semi-discrete right-hand side and the RK2 update machinery
class Stepper {
public:
  Stepper(const RunParams& p, const Grid& g, const StreamVelocity& v, const DoubleWell& well,
          const SolverOptions& opt)
      : p_(p), g_(g), vel_(&v), well_(&well), opt_(opt), m_(p.m_eps()) {
    if (opt.advect_order != 2 && opt.advect_order != 4)
      throw std::invalid_argument("solver: advect_order must be 2 or 4");
    if (v.autonomous()) cache_velocity(0.0);
  }

  void rhs(const ScalarField& c, double t, ScalarField& out) {
    if (!vel_->autonomous()) cache_velocity(t);
    const int n = g_.n;
    const double h = g_.h;
    const double inv2h = 0.5 / h, inv12h = 1.0 / (12.0 * h), invh2 = 1.0 / (h * h);
    const double m = m_, ie2 = 1.0 / (p_.eps * p_.eps);
    const bool quartic = well_->is_quartic();
    const int ord = opt_.advect_order;
    const double* cd = c.data();
    const double* v1 = v1_.data();
    const double* v2 = v2_.data();
    double* od = out.data();

    for (int j = 1; j + 1 < n; ++j) {
      const std::size_t row = static_cast<std::size_t>(j) * n;
      for (int i = 1; i + 1 < n; ++i) {
        const std::size_t k = row + i;
        const double cc = cd[k];
        double cx, cy;
        if (ord == 4 && i >= 2 && i + 2 < n)
          cx = (8.0 * (cd[k + 1] - cd[k - 1]) - (cd[k + 2] - cd[k - 2])) * inv12h;
        else
          cx = (cd[k + 1] - cd[k - 1]) * inv2h;
        if (ord == 4 && j >= 2 && j + 2 < n)
          cy = (8.0 * (cd[k + n] - cd[k - n]) - (cd[k + 2 * n] - cd[k - 2 * n])) * inv12h;
        else
          cy = (cd[k + n] - cd[k - n]) * inv2h;
        const double lap = (cd[k + 1] + cd[k - 1] + cd[k + n] + cd[k - n] - 4.0 * cc) * invh2;
        const double f = quartic ? 4.0 * cc * (cc * cc - 1.0) : well_->f(cc);
        od[k] = -(v1[k] * cx + v2[k] * cy) + m * (lap - f * ie2);
      }
    }
  }

  void apply_bc(ScalarField& c) const {
    const int n = g_.n;
    for (int i = 0; i < n; ++i) {
      c.at(i, 0) = opt_.boundary_value;
      c.at(i, n - 1) = opt_.boundary_value;
      c.at(0, i) = opt_.boundary_value;
      c.at(n - 1, i) = opt_.boundary_value;
    }
  }

  // scaled 8th-difference low-pass; no-op within 4 cells of the boundary
  void filter(ScalarField& c, ScalarField& tmp) const {
    if (opt_.filter_gamma <= 0.0) return;
    const int n = g_.n;
    const double gscale = opt_.filter_gamma / 256.0;
    static const double w[4] = {70.0, -56.0, 28.0, -8.0}; // center and offsets 1..3; +-4 weight 1
    double* td = tmp.data();
    const double* cd = c.data();
    for (int j = 4; j + 4 < n; ++j) {
      const std::size_t k0 = static_cast<std::size_t>(j) * n;
      for (int i = 4; i + 4 < n; ++i) {
        const std::size_t k = k0 + i;
        double dx = w[0] * cd[k], dy = w[0] * cd[k];
        for (int a = 1; a <= 3; ++a) {
          dx += w[a] * (cd[k + a] + cd[k - a]);
          dy += w[a] * (cd[k + static_cast<std::size_t>(a) * n] + cd[k - static_cast<std::size_t>(a) * n]);
        }
        dx += cd[k + 4] + cd[k - 4];
        dy += cd[k + static_cast<std::size_t>(4) * n] + cd[k - static_cast<std::size_t>(4) * n];
        td[k] = cd[k] - gscale * (dx + dy);
      }
    }
    for (int j = 4; j + 4 < n; ++j)
      for (int i = 4; i + 4 < n; ++i)
        c.at(i, j) = tmp.at(i, j);
  }

  void check(const ScalarField& c, double t, double* slack) const {
    double lo = 1e300, hi = -1e300;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double v = c.data()[k];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "solver: non-finite field at t = %.6g", t);
      throw std::runtime_error(buf);
    }
    const double s = std::max(hi - 1.0, -1.0 - lo);
    if (s > opt_.max_slack_abort) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "solver: max-principle violation %.3e (limit %.1e) at t = %.6g", s,
                    opt_.max_slack_abort, t);
      throw std::runtime_error(buf);
    }
    if (slack && s > *slack) *slack = s;
  }

private:
  void cache_velocity(double t) {
    const int n = g_.n;
    v1_.assign(static_cast<std::size_t>(n) * n, 0.0);
    v2_.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const Vec2 u = vel_->at(g_.node(i, j), t);
        v1_[static_cast<std::size_t>(j) * n + i] = u.x;
        v2_[static_cast<std::size_t>(j) * n + i] = u.y;
      }
  }

  RunParams p_;
  Grid g_;
  const StreamVelocity* vel_;
  const DoubleWell* well_;
  SolverOptions opt_;
  double m_;
  std::vector<double> v1_, v2_;
};

void rk2_advance(Stepper& st, ScalarField& c, double t, double dt, ScalarField& k,
                 ScalarField& mid, ScalarField& tmp) {
  st.rhs(c, t, k);
  const std::size_t sz = c.size();
  for (std::size_t q = 0; q < sz; ++q) mid.data()[q] = c.data()[q] + 0.5 * dt * k.data()[q];
  st.apply_bc(mid);
  st.rhs(mid, t + 0.5 * dt, k);
  for (std::size_t q = 0; q < sz; ++q) c.data()[q] += dt * k.data()[q];
  st.apply_bc(c);
  st.filter(c, tmp);
}

} // namespace

ScalarField step(const ScalarField& c, const RunParams& p, const StreamVelocity& v, double t,
                 const DoubleWell& well, const SolverOptions& opt) {
  p.validate(c.grid());
  const double dt = p.dt > 0.0 ? p.dt : stability_dt(p, c.grid(), v.max_speed(), well.lipschitz_f());
  const double dt_max = stability_dt(p, c.grid(), v.max_speed(), well.lipschitz_f());
  if (dt > dt_max * (1.0 + 1e-9))
    throw std::invalid_argument("step: dt exceeds the stability bound");
  Stepper st(p, c.grid(), v, well, opt);
  ScalarField out = c, k{c.grid()}, mid{c.grid()}, tmp{c.grid()};
  rk2_advance(st, out, t, dt, k, mid, tmp);
  double slack = 0.0;
  st.check(out, t + dt, &slack);
  return out;
}

Trajectory simulate(const RunParams& p, const StreamVelocity& v, const ScalarField& c0,
                    const DoubleWell& well, const SolverOptions& opt) {
  const Grid g = c0.grid();
  p.validate(g);

  Trajectory traj;
  traj.params = p;
  traj.grid = g;

  const double dt_max = stability_dt(p, g, v.max_speed(), well.lipschitz_f());
  double dt = p.dt > 0.0 ? p.dt : dt_max;
  if (dt > dt_max * (1.0 + 1e-9))
    throw std::invalid_argument("simulate: dt exceeds the stability bound");

  int nsteps = p.T > 0.0 ? static_cast<int>(std::ceil(p.T / dt - 1e-12)) : 0;
  if (nsteps > 0) dt = p.T / nsteps;
  traj.dt = dt;
  traj.steps = nsteps;
  const int every = p.snapshot_every > 0 ? p.snapshot_every : std::max(1, nsteps / 20);

  Stepper st(p, g, v, well, opt);
  ScalarField c = c0;
  {
    // boundary data must agree with the initial state
    const int n = g.n;
    for (int i = 0; i < n; ++i)
      if (std::abs(c.at(i, 0) - opt.boundary_value) > 1e-12 ||
          std::abs(c.at(i, n - 1) - opt.boundary_value) > 1e-12 ||
          std::abs(c.at(0, i) - opt.boundary_value) > 1e-12 ||
          std::abs(c.at(n - 1, i) - opt.boundary_value) > 1e-12)
        throw std::invalid_argument("simulate: initial state disagrees with the boundary value");
  }

  auto snapshot = [&](double t) {
    traj.times.push_back(t);
    traj.fields.push_back(c);
    traj.mass.push_back(c.integral());
    traj.energy.push_back(phase_energy(c, p.eps, well));
  };

  st.check(c, 0.0, &traj.max_slack);
  snapshot(0.0);
  ScalarField k{g}, mid{g}, tmp{g};
  for (int s = 1; s <= nsteps; ++s) {
    const double t = dt * (s - 1);
    rk2_advance(st, c, t, dt, k, mid, tmp);
    st.check(c, t + dt, &traj.max_slack);
    if (s == nsteps || s % every == 0) snapshot(s == nsteps ? p.T : dt * s);
  }
  return traj;
}

double phase_energy(const ScalarField& c, double eps, const DoubleWell& well) {
  const int n = c.n();
  const double h = c.grid().h;
  double grad = 0.0, pot = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double cc = c.at(i, j);
      if (i + 1 < n) {
        const double d = c.at(i + 1, j) - cc;
        grad += d * d;
      }
      if (j + 1 < n) {
        const double d = c.at(i, j + 1) - cc;
        grad += d * d;
      }
      pot += well.F(cc);
    }
  return 0.5 * eps * grad + h * h * pot / eps;
}

} // namespace aclab
