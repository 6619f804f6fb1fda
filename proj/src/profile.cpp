#include "aclab/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace aclab {

double Cutoff::operator()(double z) const {
  const double a = std::abs(z);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  const double s = 2.0 * a - 1.0; // ramp coordinate in (0,1)
  return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double Cutoff::deriv(double z) const {
  const double a = std::abs(z);
  if (a <= 0.5 || a >= 1.0) return 0.0;
  const double s = 2.0 * a - 1.0;
  const double r = 1.0 - s;
  const double d = -60.0 * s * s * r * r; // d zeta / d|z|
  return z >= 0 ? d : -d;
}

namespace {

long double first_integral_rhs(const DoubleWell& well, long double th) {
  if (th >= 1.0L || th <= -1.0L) return 0.0L; // +-1 are rest points
  const double Fv = well.F(static_cast<double>(th));
  if (Fv < -1e-14)
    throw std::runtime_error("build_profile: F negative inside (-1,1), no real first integral");
  return sqrtl(2.0L * (long double)std::max(Fv, 0.0));
}

long double rk4_step(const DoubleWell& well, long double th, long double h) {
  const long double k1 = first_integral_rhs(well, th);
  const long double k2 = first_integral_rhs(well, th + 0.5L * h * k1);
  const long double k3 = first_integral_rhs(well, th + 0.5L * h * k2);
  const long double k4 = first_integral_rhs(well, th + h * k3);
  return th + h / 6.0L * (k1 + 2.0L * k2 + 2.0L * k3 + k4);
}

} // namespace

ProfileTable build_profile(const DoubleWell& well, double z_max, std::size_t n_samples) {
  if (!(z_max > 0.0)) throw std::invalid_argument("build_profile: z_max must be positive");
  if (n_samples < 64) throw std::invalid_argument("build_profile: n_samples must be >= 64");
  if (n_samples % 2 == 0) ++n_samples; // keep z=0 on the grid

  ProfileTable p;
  const std::size_t n = n_samples;
  const std::size_t mid = (n - 1) / 2;
  p.z_max_ = (long double)z_max;
  p.z0_ = -(long double)z_max;
  p.dz_ = 2.0L * (long double)z_max / (long double)(n - 1);
  p.theta_.assign(n, 0.0L);
  p.dtheta_.assign(n, 0.0L);

  p.theta_[mid] = 0.0L;
  for (std::size_t i = mid; i + 1 < n; ++i)
    p.theta_[i + 1] = rk4_step(well, p.theta_[i], p.dz_);
  for (std::size_t i = mid; i > 0; --i)
    p.theta_[i - 1] = rk4_step(well, p.theta_[i], -p.dz_);
  for (std::size_t i = 0; i < n; ++i)
    p.dtheta_[i] = first_integral_rhs(well, p.theta_[i]);

  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(p.theta_[i + 1] > p.theta_[i]))
      throw std::runtime_error("build_profile: profile not strictly increasing");
  if (p.theta_.front() <= -1.0L || p.theta_.back() >= 1.0L)
    throw std::runtime_error("build_profile: profile left (-1,1)");
  if (p.dtheta_.front() > 1e-6L || p.dtheta_.back() > 1e-6L)
    throw std::runtime_error("build_profile: z_max too small, theta' tail above 1e-6 at table edge");

  long double rmax = 0.0L;
  const long double dz2 = p.dz_ * p.dz_;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const long double d2 = (p.theta_[i + 1] - 2.0L * p.theta_[i] + p.theta_[i - 1]) / dz2;
    const long double r = fabsl(-d2 + (long double)well.f(static_cast<double>(p.theta_[i])));
    if (r > rmax) rmax = r;
  }
  p.max_residual_ = static_cast<double>(rmax);
  if (p.max_residual_ > 1e-8)
    throw std::runtime_error("build_profile: equation residual above 1e-8; increase n_samples");

  long double s = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double w = (i == 0 || i == n - 1) ? 0.5L : 1.0L;
    s += w * 0.5L * p.dtheta_[i] * p.dtheta_[i];
  }
  p.sigma_ = static_cast<double>(s * p.dz_);
  return p;
}

double ProfileTable::theta(double z) const {
  const std::size_t n = theta_.size();
  if (z <= static_cast<double>(z0_)) return static_cast<double>(theta_.front());
  if (z >= static_cast<double>(z_max_)) return static_cast<double>(theta_.back());
  const double u = (z - static_cast<double>(z0_)) / static_cast<double>(dz_);
  std::size_t i = static_cast<std::size_t>(u);
  if (i > n - 2) i = n - 2;
  const double t = u - static_cast<double>(i);
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  const double dz = static_cast<double>(dz_);
  return h00 * static_cast<double>(theta_[i]) + h10 * dz * static_cast<double>(dtheta_[i]) +
         h01 * static_cast<double>(theta_[i + 1]) + h11 * dz * static_cast<double>(dtheta_[i + 1]);
}

double ProfileTable::theta_prime(double z) const {
  const std::size_t n = theta_.size();
  if (z <= static_cast<double>(z0_)) return static_cast<double>(dtheta_.front());
  if (z >= static_cast<double>(z_max_)) return static_cast<double>(dtheta_.back());
  const double u = (z - static_cast<double>(z0_)) / static_cast<double>(dz_);
  std::size_t i = static_cast<std::size_t>(u);
  if (i > n - 2) i = n - 2;
  const double t = u - static_cast<double>(i);
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  const double dz = static_cast<double>(dz_);
  // Hermite on the tabulated theta' with centered-difference slopes
  double df0, df1;
  if (i == 0) df0 = static_cast<double>(dtheta_[1] - dtheta_[0]) / dz;
  else df0 = static_cast<double>(dtheta_[i + 1] - dtheta_[i - 1]) / (2 * dz);
  if (i + 2 >= n) df1 = static_cast<double>(dtheta_[n - 1] - dtheta_[n - 2]) / dz;
  else df1 = static_cast<double>(dtheta_[i + 2] - dtheta_[i]) / (2 * dz);
  return h00 * static_cast<double>(dtheta_[i]) + h10 * dz * df0 +
         h01 * static_cast<double>(dtheta_[i + 1]) + h11 * dz * df1;
}

double surface_tension(const ProfileTable& p) { return p.sigma(); }

} // namespace aclab
