#include "aclab/approx.hpp"

#include <cmath>
#include <stdexcept>

namespace aclab {

ApproxSolution::ApproxSolution(RunParams params, const StreamVelocity& v,
                               std::shared_ptr<const InitialDistance> d0,
                               const ProfileTable& profile, Cutoff cutoff, double flow_step)
    : params_(params), vel_(&v), d0_(std::move(d0)), profile_(&profile), cutoff_(cutoff),
      flow_step_(flow_step) {
  if (!d0_) throw std::invalid_argument("approx: missing initial distance");
}

double ApproxSolution::level_at(Vec2 x, double t) const {
  FlowMap map(*vel_, 0.0, t, flow_step_);
  return d0_->value(map.backward(x));
}

double ApproxSolution::at(Vec2 x, double t) const { return from_level(level_at(x, t)); }

ScalarField ApproxSolution::level_field(const Grid& g, double t) const {
  ApproxSnapshots snap(*this, g);
  ScalarField e{g};
  snap.at_time(t, &e, nullptr);
  return e;
}

ScalarField ApproxSolution::field(const Grid& g, double t) const {
  ApproxSnapshots snap(*this, g);
  ScalarField c{g};
  snap.at_time(t, nullptr, &c);
  return c;
}

// ---------------------------------------------------------------------------

namespace {

// one incremental backward-advection stage for a point set (autonomous field)
void advance_backward(std::vector<Vec2>& pts, const StreamVelocity& v, double duration,
                      double step) {
  if (duration <= 0.0) return;
  const int nsteps = std::max(1, static_cast<int>(std::ceil(duration / step)));
  const double dt = duration / nsteps;
  for (Vec2& p : pts) {
    Vec2 x = p;
    for (int k = 0; k < nsteps; ++k) {
      const Vec2 k1 = v.at(x, 0.0) * -1.0;
      const Vec2 k2 = v.at(x + k1 * (0.5 * dt), 0.0) * -1.0;
      const Vec2 k3 = v.at(x + k2 * (0.5 * dt), 0.0) * -1.0;
      const Vec2 k4 = v.at(x + k3 * dt, 0.0) * -1.0;
      x += (k1 + (k2 + k3) * 2.0 + k4) * (dt / 6.0);
      x.x = std::clamp(x.x, 0.0, 1.0);
      x.y = std::clamp(x.y, 0.0, 1.0);
    }
    p = x;
  }
}

} // namespace

ApproxSnapshots::ApproxSnapshots(const ApproxSolution& a, const Grid& g) : a_(&a), g_(g) {
  pts_.resize(static_cast<std::size_t>(g.n) * g.n);
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i)
      pts_[static_cast<std::size_t>(j) * g.n + i] = g.node(i, j);
}

void ApproxSnapshots::at_time(double t, ScalarField* e_out, ScalarField* c_out) {
  if (t < t_cur_ - 1e-15) throw std::logic_error("ApproxSnapshots: times must not decrease");
  const StreamVelocity& v = a_->velocity();
  if (v.autonomous()) {
    advance_backward(pts_, v, t - t_cur_, a_->flow_step());
  } else {
    // no incremental composition for time-dependent fields: restart
    for (int j = 0; j < g_.n; ++j)
      for (int i = 0; i < g_.n; ++i)
        pts_[static_cast<std::size_t>(j) * g_.n + i] = g_.node(i, j);
    FlowMap map(v, 0.0, t, a_->flow_step());
    for (Vec2& p : pts_) p = map.backward(p);
  }
  t_cur_ = t;

  const InitialDistance& d0 = a_->d0();
  for (int j = 0; j < g_.n; ++j)
    for (int i = 0; i < g_.n; ++i) {
      const double e = d0.value(pts_[static_cast<std::size_t>(j) * g_.n + i]);
      if (e_out) e_out->at(i, j) = e;
      if (c_out) c_out->at(i, j) = a_->from_level(e);
    }
}

// ---------------------------------------------------------------------------

ApproxNorms approx_norms_from_fields(const ScalarField& e, const ScalarField& cA, double eps,
                                     const DoubleWell& well) {
  const Grid& g = cA.grid();
  const int n = g.n;
  const double h = g.h;
  ApproxNorms out;
  double grad = 0, lap = 0, fr = 0, ind = 0;
  for (int j = 0; j < n; ++j) {
    const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    double grow = 0, lrow = 0, frow = 0, irow = 0;
    for (int i = 0; i < n; ++i) {
      const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      const double w = wi * wj;
      const double c = cA.at(i, j);
      const double fv = well.f(c);
      const double dv = c - (e.at(i, j) >= 0.0 ? 1.0 : -1.0);
      frow += w * fv * fv;
      irow += w * dv * dv;
      if (i > 0 && i + 1 < n && j > 0 && j + 1 < n) {
        const Vec2 gr = cA.grad_at(i, j);
        const double lp = cA.laplacian_at(i, j);
        grow += w * gr.norm2();
        lrow += w * lp * lp;
      }
    }
    grad += grow;
    lap += lrow;
    fr += frow;
    ind += irow;
  }
  const double cell = h * h;
  out.grad_l2 = std::sqrt(grad * cell);
  out.lap_l2 = std::sqrt(lap * cell);
  out.f_l2 = std::sqrt(fr * cell);
  out.indicator_l2 = std::sqrt(ind * cell);
  return out;
}

ApproxNorms approx_norms(const ApproxSolution& a, double t, const Grid& g,
                         const DoubleWell& well) {
  if (g.h > a.params().eps / 8.0 * (1.0 + 1e-12))
    throw std::invalid_argument("approx_norms: need h <= eps/8 to resolve lap(c_A)");
  ApproxSnapshots snap(a, g);
  ScalarField e{g}, cA{g};
  snap.at_time(t, &e, &cA);
  return approx_norms_from_fields(e, cA, a.params().eps, well);
}

DifferenceNorms difference_norms(const Trajectory& traj, const ApproxSolution& a) {
  if (traj.fields.empty()) throw std::invalid_argument("difference_norms: empty trajectory");
  const Grid g = traj.grid;
  ApproxSnapshots snap(a, g);
  ScalarField e{g}, cA{g};
  DifferenceNorms out;
  double prev_gradsq = 0.0, prev_indsq = 0.0, prev_t = 0.0;
  const int n = g.n;
  const double cell = g.h * g.h;

  for (std::size_t k = 0; k < traj.fields.size(); ++k) {
    const double t = traj.times[k];
    snap.at_time(t, &e, &cA);
    const ScalarField& c = traj.fields[k];

    double usq = 0.0, gradsq = 0.0, indsq = 0.0;
    for (int j = 0; j < n; ++j) {
      const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      double urow = 0, grow = 0, irow = 0;
      for (int i = 0; i < n; ++i) {
        const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        const double w = wi * wj;
        const double u = c.at(i, j) - cA.at(i, j);
        const double dv = c.at(i, j) - (e.at(i, j) >= 0.0 ? 1.0 : -1.0);
        urow += w * u * u;
        irow += w * dv * dv;
        if (i > 0 && i + 1 < n && j > 0 && j + 1 < n) {
          const double ux = (c.at(i + 1, j) - c.at(i - 1, j) - cA.at(i + 1, j) + cA.at(i - 1, j)) /
                            (2.0 * g.h);
          const double uy = (c.at(i, j + 1) - c.at(i, j - 1) - cA.at(i, j + 1) + cA.at(i, j - 1)) /
                            (2.0 * g.h);
          grow += w * (ux * ux + uy * uy);
        }
      }
      usq += urow;
      gradsq += grow;
      indsq += irow;
    }
    usq *= cell;
    gradsq *= cell;
    indsq *= cell;
    out.sup_l2 = std::max(out.sup_l2, std::sqrt(usq));
    if (k > 0) {
      const double dt = t - prev_t;
      out.grad_l2_spacetime += 0.5 * dt * (prev_gradsq + gradsq);
      out.indicator_sq_spacetime += 0.5 * dt * (prev_indsq + indsq);
    }
    prev_gradsq = gradsq;
    prev_indsq = indsq;
    prev_t = t;
  }
  out.grad_l2_spacetime = std::sqrt(out.grad_l2_spacetime);
  return out;
}

} // namespace aclab
