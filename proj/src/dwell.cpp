#include "aclab/dwell.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace aclab {

DoubleWell::DoubleWell(Fn F, Fn f, Fn f_prime)
    : F_(std::move(F)), f_(std::move(f)), fp_(std::move(f_prime)) {
  validate();
  const int ns = 2001;
  double lip = 0.0;
  for (int i = 0; i < ns; ++i) {
    const double c = -1.0 + 2.0 * i / (ns - 1);
    lip = std::max(lip, std::abs(fp_(c)));
  }
  lip_f_ = lip;
}

void DoubleWell::validate() const {
  if (std::abs(f_(-1.0)) > 1e-12 || std::abs(f_(1.0)) > 1e-12)
    throw std::invalid_argument("double well: f(+-1) must vanish");
  if (fp_(-1.0) <= 0.0 || fp_(1.0) <= 0.0)
    throw std::invalid_argument("double well: f'(+-1) must be positive");
  if (std::abs(F_(-1.0)) > 1e-12 || std::abs(F_(1.0)) > 1e-12)
    throw std::invalid_argument("double well: F(+-1) must vanish");

  // F >= 0 on [-1,1] and the running integral of f stays positive inside
  const int ns = 4001;
  const double h = 2.0 / (ns - 1);
  double acc = 0.0; // int_{-1}^{u} f ds, trapezoid
  double fprev = f_(-1.0);
  for (int i = 0; i < ns; ++i) {
    const double u = -1.0 + i * h;
    if (F_(u) < -1e-12)
      throw std::invalid_argument("double well: F must be nonnegative on [-1,1]");
    if (i > 0) {
      const double fu = f_(u);
      acc += 0.5 * h * (fprev + fu);
      fprev = fu;
      if (i < ns - 1 && acc <= 0.0)
        throw std::invalid_argument("double well: int_{-1}^{u} f must be positive on (-1,1)");
    }
  }
}

DoubleWell DoubleWell::quartic() {
  DoubleWell w(
      [](double c) { const double q = 1.0 - c * c; return q * q; },
      [](double c) { return 4.0 * c * (c * c - 1.0); },
      [](double c) { return 12.0 * c * c - 4.0; });
  w.quartic_ = true;
  return w;
}

} // namespace aclab
