#include "aclab/geometry.hpp"
#include "aclab/solver.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace aclab;

namespace {

const DoubleWell& well() {
  static const DoubleWell w = DoubleWell::quartic();
  return w;
}
const ProfileTable& profile() {
  static const ProfileTable p = build_profile(well());
  return p;
}

ScalarField circle_ic(const RunParams& p, const Grid& g, Vec2 center = {0.5, 0.5},
                      double radius = 0.25) {
  return initial_condition(p, signed_distance_circle(center, radius, g), profile(), Cutoff{});
}

} // namespace

TEST_SUITE("solver") {

TEST_CASE("stability bound picks the binding constraint") {
  RunParams p;
  p.eps = 0.04;
  p.theta = 3.0;
  p.m0 = 1.0;
  const Grid g{101}; // h = 0.01
  // advection limited: m_eps = 6.4e-5 makes the parabolic bounds much larger
  CHECK(stability_dt(p, g, 1.0, 8.0) == doctest::Approx(0.004));
  // no velocity: reaction/diffusion limited
  p.theta = 0.0;
  CHECK(stability_dt(p, g, 0.0, 8.0) ==
        doctest::Approx(0.4 * std::min(0.01 * 0.01 / 4.0, 0.04 * 0.04 / 8.0)));
  // vmax = 0 must not produce a zero dt
  CHECK(stability_dt(p, g, 0.0, 8.0) > 0.0);
}

TEST_CASE("initial condition hits the profile pointwise") {
  RunParams p;
  p.eps = 0.02;
  p.delta = 0.1;
  const Grid g{201};
  const ScalarField d0 = signed_distance_circle({0.5, 0.5}, 0.25, g);
  const ScalarField c = initial_condition(p, d0, profile(), Cutoff{});
  // contour node values: d0 = 0 at (0.75, 0.5) = node (150,100)
  CHECK(c.at(150, 100) == doctest::Approx(0.0).epsilon(1e-12));
  // far field: d0 = 2 delta and beyond gives exactly +1
  CHECK(c.at(200, 100) == 1.0);
  CHECK(c.at(0, 0) == 1.0);
  // inside the cutoff plateau the value is the pure profile
  const double val = phase_from_level(p.eps, p.eps, p.delta, profile(), Cutoff{});
  CHECK(val == doctest::Approx(std::tanh(std::sqrt(2.0))).epsilon(1e-8));
  for (std::size_t k = 0; k < c.size(); ++k) {
    CHECK(c.data()[k] <= 1.0);
    CHECK(c.data()[k] >= -1.0);
  }
}

TEST_CASE("constant pure phase is a fixed point of the step") {
  RunParams p;
  p.eps = 0.1;
  p.theta = 0.0;
  p.T = 1.0;
  const Grid g{65};
  ScalarField c{g, 1.0};
  const ScalarField next = step(c, p, StreamVelocity::single_vortex(1.0), 0.0, well());
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(next.data()[k] == 1.0);
}

TEST_CASE("unstable zero state stays zero away from the boundary for one step") {
  RunParams p;
  p.eps = 0.1;
  p.theta = 0.0;
  const Grid g{65};
  ScalarField c{g, 0.0};
  SolverOptions opt;
  opt.max_slack_abort = 2.0; // the +-1 boundary ring is applied by the step
  const ScalarField next = step(c, p, StreamVelocity::zero(), 0.0, well(), opt);
  for (int j = 3; j < g.n - 3; ++j)
    for (int i = 3; i < g.n - 3; ++i)
      CHECK(next.at(i, j) == 0.0);
}

TEST_CASE("planar layer equilibrium: stencil residual bounds the drift") {
  // two parallel layers of a slab, so the whole boundary sits in the +1 phase
  RunParams p;
  p.eps = 0.05;
  p.theta = 0.0;
  p.m0 = 1.0;
  p.delta = 0.22;
  p.T = 0.02;
  const Grid g{81}; // h = eps/4
  ScalarField c0{g};
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i)
      c0.at(i, j) =
          phase_from_level(std::abs(g.x(i) - 0.5) - 0.2, p.eps, p.delta, profile(), Cutoff{});

  // independent oracle: the semi-discrete right-hand side on the initial table
  double R0 = 0.0;
  for (int j = 1; j < g.n - 1; ++j)
    for (int i = 1; i < g.n - 1; ++i)
      R0 = std::max(R0, std::abs(p.m_eps() * (c0.laplacian_at(i, j) -
                                              well().f(c0.at(i, j)) / (p.eps * p.eps))));
  const double tau = p.eps * p.eps / (p.m_eps() * well().f_prime(1.0));

  // the slab meets the top/bottom boundary in the negative phase, so march
  // with step() and measure away from the Dirichlet ring
  p.dt = stability_dt(p, g, 0.0, well().lipschitz_f());
  const int nsteps = static_cast<int>(std::ceil(p.T / p.dt));
  SolverOptions opt;
  opt.max_slack_abort = 1e-3;
  ScalarField c = c0;
  for (int s = 0; s < nsteps; ++s) c = step(c, p, StreamVelocity::zero(), s * p.dt, well(), opt);
  double drift = 0.0;
  for (int j = 12; j < g.n - 12; ++j)
    for (int i = 0; i < g.n; ++i)
      drift = std::max(drift, std::abs(c.at(i, j) - c0.at(i, j)));
  CHECK(drift <= 4.0 * R0 * tau);
  CHECK(drift > 0.0); // the discrete equilibrium differs from the continuum one
}

TEST_CASE("simulate with T = 0 returns the initial snapshot") {
  RunParams p;
  p.eps = 0.1;
  p.theta = 0.0;
  p.T = 0.0;
  const Grid g{65};
  const ScalarField c0 = circle_ic(p, g);
  const Trajectory traj = simulate(p, StreamVelocity::zero(), c0, well());
  REQUIRE(traj.fields.size() == 1);
  CHECK(traj.times[0] == 0.0);
  for (std::size_t k = 0; k < c0.size(); ++k)
    CHECK(traj.fields[0].data()[k] == c0.data()[k]);
}

TEST_CASE("near-transport mobility scaling moves the contour only by O(m_eps)") {
  RunParams p;
  p.eps = 0.05;
  p.theta = 1.0;
  p.m0 = 1.0;
  p.delta = 0.16;
  p.T = 0.02;
  const Grid g{81};
  const Trajectory traj = simulate(p, StreamVelocity::zero(), circle_ic(p, g), well());
  double r = 0.0;
  fit_circle(extract_zero_contour(traj.fields.back()).vertices(), nullptr, &r);
  CHECK(std::abs(r - 0.25) <= 0.15 * p.m_eps());
}

TEST_CASE("contour tracks the transported interface for strongly scaled mobility") {
  RunParams p;
  p.eps = 0.05;
  p.theta = 3.0;
  p.m0 = 1.0;
  p.delta = 0.2; // layer must sit well inside the cutoff plateau
  p.T = 0.25;
  const Grid g{161};
  SolverOptions opt;
  opt.advect_order = 4;
  opt.filter_gamma = 0.5;
  opt.max_slack_abort = 5e-3;
  p.dt = 0.625 * stability_dt(p, g, StreamVelocity::single_vortex(1.0).max_speed(),
                              well().lipschitz_f());
  const StreamVelocity v = StreamVelocity::single_vortex(1.0);
  const ScalarField d0 = signed_distance_circle({0.5, 0.5}, 0.25, g);
  const Trajectory traj = simulate(p, v, initial_condition(p, d0, profile(), Cutoff{}), well(), opt);

  const LevelSetField ls = transported_level_set(d0, FlowMap(v, 0.0, p.T, 1e-3), g);
  const Interface solver_contour = extract_zero_contour(traj.fields.back());
  const Interface transported = extract_zero_contour(ls.e);
  CHECK(hausdorff_distance(solver_contour, transported) <= 2.0 * p.eps);
}

TEST_CASE("max principle and boundary values hold along a stirred run") {
  RunParams p;
  p.eps = 0.04;
  p.theta = 1.0;
  p.m0 = 1.0;
  p.delta = 0.2;
  p.T = 0.1;
  const Grid g{101};
  const Trajectory traj =
      simulate(p, StreamVelocity::single_vortex(1.0), circle_ic(p, g), well());
  CHECK(traj.max_slack <= 1e-6);
  for (const ScalarField& f : traj.fields)
    for (int i = 0; i < g.n; ++i) {
      CHECK(f.at(i, 0) == 1.0);
      CHECK(f.at(i, g.n - 1) == 1.0);
      CHECK(f.at(0, i) == 1.0);
      CHECK(f.at(g.n - 1, i) == 1.0);
    }
}

TEST_CASE("energy decays without advection") {
  RunParams p;
  p.eps = 0.1;
  p.theta = 0.0;
  p.m0 = 1.0;
  p.T = 0.05;
  const Grid g{65};
  const Trajectory traj = simulate(p, StreamVelocity::zero(), circle_ic(p, g), well());
  REQUIRE(traj.energy.size() >= 3);
  for (std::size_t k = 1; k < traj.energy.size(); ++k)
    CHECK(traj.energy[k] <= traj.energy[k - 1] + 1e-8 * std::abs(traj.energy[0]));
}

TEST_CASE("snapshot format round trips bitwise") {
  RunParams p;
  p.eps = 0.1;
  const Grid g{41};
  ScalarField f{g};
  for (std::size_t k = 0; k < f.size(); ++k)
    f.data()[k] = std::sin(0.1 * static_cast<double>(k)) / 3.0;
  std::stringstream ss;
  f.write_snapshot(ss, 0.125);
  double t = 0.0;
  const ScalarField back = ScalarField::read_snapshot(ss, &t);
  CHECK(t == 0.125);
  REQUIRE(back.n() == f.n());
  for (std::size_t k = 0; k < f.size(); ++k) CHECK(back.data()[k] == f.data()[k]);
  CHECK(snapshot_filename(0.04, 3.0, 7) == "c_eps0.04_theta3_t7.dat");
}

TEST_CASE("simulate rejects inconsistent setups") {
  RunParams p;
  p.eps = 0.1;
  p.T = 0.01;
  const Grid g{65};
  const ScalarField c0 = circle_ic(p, g);
  p.dt = 1.0; // far above the stability bound
  CHECK_THROWS(simulate(p, StreamVelocity::zero(), c0, well()));
  p.dt = 0.0;
  CHECK_THROWS(simulate(p, StreamVelocity::zero(), ScalarField{g, 0.0}, well()));
  RunParams coarse = p;
  coarse.eps = 0.01; // h > eps/4 on this grid
  CHECK_THROWS(simulate(coarse, StreamVelocity::zero(), c0, well()));
}

} // TEST_SUITE
