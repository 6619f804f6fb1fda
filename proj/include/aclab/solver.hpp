#pragma once

#include "aclab/dwell.hpp"
#include "aclab/fields.hpp"
#include "aclab/grid.hpp"
#include "aclab/profile.hpp"

#include <vector>

namespace aclab {

/// Scheme knobs.  Defaults give the plain RK2 / central-2 / 5-point scheme.
/// For mobility exponents theta > 2 the equation is essentially pure
/// transport of an eps-wide layer; there central-2 advection disperses badly
/// (order-one overshoot over T=0.5 at eps/h <= 16), so production configs for
/// those runs select 4th-order central advection plus a scaled 8th-difference
/// low-pass filter, which keeps the layer intact and overshoot near roundoff.
struct SolverOptions {
  int advect_order = 2;        // 2 or 4
  double filter_gamma = 0.0;   // per-step 8th-difference filter strength, 0 = off
  double boundary_value = 1.0; // Dirichlet value on the boundary ring
  double max_slack_abort = 1e-6;
};

struct RunParams {
  double eps = 0.04;
  double theta = 0.0;
  double m0 = 1.0;
  double delta = 0.1;   // cutoff tube half-width
  double dt = 0.0;      // 0: use stability_dt
  double T = 0.1;
  int snapshot_every = 0; // in steps; 0: ~20 snapshots

  double m_eps() const;
  void validate(const Grid& g) const; // n >= 33, h <= eps/4, positivity
};

/// dt = 0.4 min( h^2/(4 m_eps), eps^2/(m_eps Lf), h/vmax ); vmax = 0 drops
/// the advection bound.
double stability_dt(const RunParams& p, const Grid& g, double vmax, double Lf);

/// c = zeta(d0/delta) theta0(d0/eps) + (1 - zeta(d0/delta)) sign(d0),
/// the sharp indicator smoothed by the optimal profile inside the tube.
/// Warns on stderr when eps/delta is too large for the cutoff plateau.
ScalarField initial_condition(const RunParams& p, const ScalarField& d0,
                              const ProfileTable& profile, const Cutoff& cutoff);

/// shared by initial_condition and the analytic approximation
double phase_from_level(double e, double eps, double delta, const ProfileTable& profile,
                        const Cutoff& cutoff);

/// one explicit midpoint-RK2 step; Dirichlet boundary applied after each stage
ScalarField step(const ScalarField& c, const RunParams& p, const StreamVelocity& v, double t,
                 const DoubleWell& well, const SolverOptions& opt = {});

struct Trajectory {
  RunParams params;
  Grid grid;
  std::vector<double> times;
  std::vector<ScalarField> fields;
  std::vector<double> mass;      // int c dx per snapshot
  std::vector<double> energy;    // int eps |grad c|^2 / 2 + F(c)/eps per snapshot
  double max_slack = 0.0;        // worst max-principle excursion over the run
  double dt = 0.0;
  int steps = 0;
};

/// advances to T, keeping snapshots every snapshot_every steps plus t=0 and
/// t=T; aborts on NaN or max-principle violation beyond opt.max_slack_abort.
Trajectory simulate(const RunParams& p, const StreamVelocity& v, const ScalarField& c0,
                    const DoubleWell& well, const SolverOptions& opt = {});

/// discrete Lyapunov functional of the v=0 flow (edge gradient energy)
double phase_energy(const ScalarField& c, double eps, const DoubleWell& well);

} // namespace aclab
