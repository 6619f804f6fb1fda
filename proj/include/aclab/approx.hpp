#pragma once

#include "aclab/geometry.hpp"
#include "aclab/profile.hpp"
#include "aclab/solver.hpp"

#include <memory>

namespace aclab {

/// Signed distance to the initial interface, either analytic (circle) or a
/// sampled field with bicubic evaluation.
class InitialDistance {
public:
  virtual ~InitialDistance() = default;
  virtual double value(Vec2 p) const = 0;
  virtual Vec2 gradient(Vec2 p) const = 0;
};

class CircleDistance final : public InitialDistance {
public:
  CircleDistance(Vec2 center, double radius) : c_(center), r_(radius) {}
  double value(Vec2 p) const override { return (p - c_).norm() - r_; }
  Vec2 gradient(Vec2 p) const override { return (p - c_).normalized(); }

private:
  Vec2 c_;
  double r_;
};

class FieldDistance final : public InitialDistance {
public:
  explicit FieldDistance(ScalarField d0) : f_(std::move(d0)) {}
  double value(Vec2 p) const override { return f_.interp(p); }
  Vec2 gradient(Vec2 p) const override { return f_.interp_grad(p); }
  const ScalarField& field() const { return f_; }

private:
  ScalarField f_;
};

/// Exact transported ansatz: +-1 outside the advected delta-tube, the optimal
/// profile of the transported level set e = d0(X_t^{-1}) inside, glued by the
/// cutoff in the transition shells.  Agrees with initial_condition at t=0 and
/// satisfies the transport equation exactly (no time stepping).
class ApproxSolution {
public:
  ApproxSolution(RunParams params, const StreamVelocity& v,
                 std::shared_ptr<const InitialDistance> d0, const ProfileTable& profile,
                 Cutoff cutoff = {}, double flow_step = 1e-3);

  double level_at(Vec2 x, double t) const; // e(x,t)
  double at(Vec2 x, double t) const;       // c_A(x,t)

  ScalarField level_field(const Grid& g, double t) const;
  ScalarField field(const Grid& g, double t) const;

  const RunParams& params() const { return params_; }
  const ProfileTable& profile() const { return *profile_; }
  const StreamVelocity& velocity() const { return *vel_; }
  const InitialDistance& d0() const { return *d0_; }
  const Cutoff& cutoff() const { return cutoff_; }
  double flow_step() const { return flow_step_; }

  double from_level(double e) const {
    return phase_from_level(e, params_.eps, params_.delta, *profile_, cutoff_);
  }

private:
  RunParams params_;
  const StreamVelocity* vel_;
  std::shared_ptr<const InitialDistance> d0_;
  const ProfileTable* profile_;
  Cutoff cutoff_;
  double flow_step_;
};

/// Streams e and c_A over grid nodes at increasing times; for autonomous
/// velocities the backward characteristics advance incrementally, so a full
/// snapshot sequence costs one pass of T/flow_step RK4 substeps per node.
class ApproxSnapshots {
public:
  ApproxSnapshots(const ApproxSolution& a, const Grid& g);
  // t must not decrease between calls
  void at_time(double t, ScalarField* e_out, ScalarField* c_out);

private:
  const ApproxSolution* a_;
  Grid g_;
  std::vector<Vec2> pts_;
  double t_cur_ = 0.0;
};

struct ApproxNorms {
  double grad_l2 = 0;      // ||grad c_A||_L2
  double lap_l2 = 0;       // ||lap c_A||_L2
  double f_l2 = 0;         // ||f(c_A)||_L2
  double indicator_l2 = 0; // ||c_A - sign(e)||_L2
};

/// centered-difference norms on a grid with h <= eps/8 (throws otherwise)
ApproxNorms approx_norms(const ApproxSolution& a, double t, const Grid& g,
                         const DoubleWell& well);
ApproxNorms approx_norms_from_fields(const ScalarField& e, const ScalarField& cA, double eps,
                                     const DoubleWell& well);

struct DifferenceNorms {
  double sup_l2 = 0;                  // sup_t ||c - c_A||_L2
  double grad_l2_spacetime = 0;       // sqrt( int_0^T ||grad(c - c_A)||_L2^2 dt )
  double indicator_sq_spacetime = 0;  // int_0^T ||c - sign(e)||_L2^2 dt
};

DifferenceNorms difference_norms(const Trajectory& traj, const ApproxSolution& a);

} // namespace aclab
