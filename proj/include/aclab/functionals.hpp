#pragma once

#include "aclab/fields.hpp"
#include "aclab/geometry.hpp"
#include "aclab/profile.hpp"

#include <vector>

namespace aclab {

/// <H_eps, phi> = eps int grad c (x) grad c : grad phi dx, with centered
/// differences for grad c and the analytic grad phi.  Requires the support of
/// phi to keep a 2-cell clearance from the boundary.
double discrete_heps(const ScalarField& c, const TestField& phi, double eps);

/// 2 sigma int_Gamma s(x) n (x) n : grad phi dH over the polyline, midpoint
/// rule per segment; stretch == nullptr gives the sharp-interface functional
/// (s == 1), per-vertex stretch values give the transported-layer limit.
double limit_functional(const Interface& iface, const TestField& phi, double sigma,
                        const std::vector<double>* stretch = nullptr);

/// same object written through the curvature: 2 sigma int kappa n . phi dH
/// (equals the n(x)n form for divergence-free phi under this sign convention)
double limit_functional_curvature_form(const Interface& iface, const TestField& phi,
                                       double sigma);

/// trapezoid in time over snapshot values; needs >= 3 snapshots
double time_integrated(const std::vector<double>& times, const std::vector<double>& values);

struct ProfileFit {
  std::vector<double> stretch;  // fitted s per vertex
  std::vector<double> shift;    // fitted b per vertex (in units of eps)
  std::vector<double> residual; // rms misfit per vertex
  std::vector<char> ok;         // 0 = fit skipped/diverged
  std::size_t n_ok() const;
};

/// least-squares fit of c along each vertex normal to theta0(s (r - eps b)/eps),
/// r the signed offset along the outward normal, samples on |r| <= 3 eps.
/// Grid search over s in [0.3,3], b in [-2,2], then Gauss-Newton polish.
ProfileFit profile_fit(const ScalarField& c, const Interface& iface,
                       const ProfileTable& profile, double eps);

} // namespace aclab
