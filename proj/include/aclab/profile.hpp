#pragma once

#include "aclab/dwell.hpp"

#include <cstddef>
#include <vector>

namespace aclab {

/// Smooth cutoff: 1 on |z|<1/2, 0 on |z|>1, quintic-smoothstep ramp between,
/// so z*zeta'(z) <= 0 everywhere and zeta is C^2.
struct Cutoff {
  double operator()(double z) const;
  double deriv(double z) const;
};

/// Tabulated heteroclinic profile of -theta'' + f(theta) = 0 with theta(0)=0,
/// theta(+-inf)=+-1, built from the first integral theta' = sqrt(2 F(theta)).
///
/// The table is stored in extended precision: the centered-difference residual
/// check amplifies per-node rounding by 1/dz^2, and a double-precision table
/// bottoms out near 6e-8 regardless of dz (storage quantization), above the
/// 1e-8 gate.  80-bit storage puts the noise floor at ~1e-10.
class ProfileTable {
public:
  double z_max() const { return static_cast<double>(z_max_); }
  std::size_t size() const { return theta_.size(); }
  double z_at(std::size_t i) const { return static_cast<double>(z0_ + dz_ * (long double)i); }
  double theta_at(std::size_t i) const { return static_cast<double>(theta_[i]); }
  double theta_prime_at(std::size_t i) const { return static_cast<double>(dtheta_[i]); }

  // cubic Hermite off the table; clamps to the end values beyond z_max
  double theta(double z) const;
  double theta_prime(double z) const;

  // 1/2 int (theta')^2 dz, composite trapezoid over the table
  double sigma() const { return sigma_; }
  // max over interior nodes of |-D2 theta + f(theta)|, D2 = centered 2nd difference
  double max_residual() const { return max_residual_; }

  friend ProfileTable build_profile(const DoubleWell& well, double z_max, std::size_t n_samples);

private:
  long double z0_ = 0, dz_ = 0, z_max_ = 0;
  std::vector<long double> theta_, dtheta_;
  double sigma_ = 0.0;
  double max_residual_ = 0.0;
};

/// Integrates the first-integral ODE with RK4 from theta(0)=0 in both
/// directions.  Throws if F < 0 inside (-1,1), if the profile fails to be
/// strictly increasing, or if the equation residual exceeds 1e-8.
ProfileTable build_profile(const DoubleWell& well, double z_max = 12.0,
                           std::size_t n_samples = 400001);

double surface_tension(const ProfileTable& p);

inline double cutoff_value(const Cutoff& c, double z) { return c(z); }

} // namespace aclab
