#pragma once

#include <string>
#include <vector>

namespace aclab {

/// least-squares power-law fit value ~ C eps^slope on log-log axes
struct RateFit {
  std::string quantity;
  double slope = 0.0;
  double intercept = 0.0; // log C
  double r_squared = 1.0;
  bool flagged = false; // r^2 < 0.9
};

/// needs >= 4 strictly positive (eps, value) pairs
RateFit fit_rates(const std::vector<double>& eps, const std::vector<double>& values,
                  const std::string& quantity);

} // namespace aclab
