#include "aclab/ratefit.hpp"

#include <cmath>
#include <stdexcept>

namespace aclab {

RateFit fit_rates(const std::vector<double>& eps, const std::vector<double>& values,
                  const std::string& quantity) {
  if (eps.size() != values.size()) throw std::invalid_argument("fit_rates: size mismatch");
  const std::size_t n = eps.size();
  if (n < 4) throw std::invalid_argument("fit_rates: need at least 4 points");
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(eps[i] > 0.0) || !(values[i] > 0.0))
      throw std::invalid_argument("fit_rates: values and eps must be positive");
    const double lx = std::log(eps[i]);
    const double ly = std::log(values[i]);
    sx += lx; sy += ly; sxx += lx * lx; syy += ly * ly; sxy += lx * ly;
  }
  const double N = static_cast<double>(n);
  const double den = N * sxx - sx * sx;
  if (std::abs(den) < 1e-30) throw std::invalid_argument("fit_rates: eps values coincide");

  RateFit out;
  out.quantity = quantity;
  out.slope = (N * sxy - sx * sy) / den;
  out.intercept = (sy - out.slope * sx) / N;
  const double vy = N * syy - sy * sy;
  if (vy <= 1e-24 * std::abs(syy + 1.0)) {
    out.r_squared = 1.0; // constant data: exact zero-slope fit
  } else {
    const double r = (N * sxy - sx * sy) / std::sqrt(den * vy);
    out.r_squared = r * r;
  }
  out.flagged = out.r_squared < 0.9;
  return out;
}

} // namespace aclab
