#pragma once

#include "aclab/geometry.hpp"

namespace aclab {

/// Advects the interface vertices with the flow map and resamples uniformly.
/// For divergence-free velocities this evolves by normal speed n.v and
/// preserves the enclosed area.
Interface transport_oracle(const Interface& iface0, const StreamVelocity& v, double t,
                           double flow_step = 1e-3);

/// Front tracking for V = n.v + m0 kappa (kappa signed so circles shrink):
/// forward Euler on the vertices with uniform-arclength resampling each step.
/// Requires >= 64 vertices and dt <= min_spacing^2 / (4 m0); throws on
/// self-intersection with the failure time (topology change unsupported).
Interface mcf_oracle(const Interface& iface0, const StreamVelocity& v, double m0, double t_end,
                     double dt);

/// radius at time t of a circle shrinking by V = m0 H from R0 (v = 0);
/// throws past the extinction time R0^2/(2 m0)
double shrinking_circle_radius(double R0, double m0, double t);

} // namespace aclab
