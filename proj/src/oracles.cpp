#include "aclab/oracles.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace aclab {

Interface transport_oracle(const Interface& iface0, const StreamVelocity& v, double t,
                           double flow_step) {
  FlowMap map(v, 0.0, t, flow_step);
  std::vector<Vec2> verts = iface0.vertices();
  for (Vec2& p : verts) p = map.forward(p);
  double L = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i)
    L += (verts[(i + 1) % verts.size()] - verts[i]).norm();
  return Interface(polyline_resample(verts, L / static_cast<double>(verts.size())));
}

Interface mcf_oracle(const Interface& iface0, const StreamVelocity& v, double m0, double t_end,
                     double dt) {
  if (iface0.size() < 64)
    throw std::invalid_argument("mcf_oracle: needs at least 64 vertices to resolve curvature");
  std::vector<Vec2> verts = iface0.vertices();
  const std::size_t nv = verts.size();

  double min_sp = 1e300;
  for (std::size_t i = 0; i < nv; ++i)
    min_sp = std::min(min_sp, (verts[(i + 1) % nv] - verts[i]).norm());
  if (m0 > 0.0 && dt > min_sp * min_sp / (4.0 * m0) * (1.0 + 1e-12))
    throw std::invalid_argument("mcf_oracle: dt above the front-tracking stability bound");

  const int nsteps = t_end > 0.0 ? static_cast<int>(std::ceil(t_end / dt - 1e-12)) : 0;
  const double dt_a = nsteps > 0 ? t_end / nsteps : 0.0;

  for (int s = 0; s < nsteps; ++s) {
    const double t = dt_a * s;
    const auto normals = polyline_normals(verts);
    const auto kap = interface_curvature(verts, normals);
    for (std::size_t i = 0; i < nv; ++i) {
      const double vn = normals[i].dot(v.at(verts[i], t)) + m0 * kap[i];
      verts[i] += normals[i] * (vn * dt_a);
    }
    double L = 0.0;
    for (std::size_t i = 0; i < nv; ++i) L += (verts[(i + 1) % nv] - verts[i]).norm();
    verts = polyline_resample(verts, L / static_cast<double>(nv));
    if ((s % 16 == 15 || s + 1 == nsteps) && polyline_self_intersects(verts)) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "mcf_oracle: interface self-intersects at t = %.6g",
                    t + dt_a);
      throw std::runtime_error(buf);
    }
  }
  return Interface(std::move(verts));
}

double shrinking_circle_radius(double R0, double m0, double t) {
  const double r2 = R0 * R0 - 2.0 * m0 * t;
  if (r2 <= 0.0) throw std::invalid_argument("shrinking_circle_radius: past extinction time");
  return std::sqrt(r2);
}

} // namespace aclab
