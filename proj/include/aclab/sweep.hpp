#pragma once

#include "aclab/config.hpp"
#include "aclab/functionals.hpp"
#include "aclab/oracles.hpp"
#include "aclab/ratefit.hpp"

#include <limits>
#include <string>
#include <vector>

namespace aclab {

/// One eps ladder over a fixed scenario.
struct SweepSpec {
  std::vector<double> eps_list; // descending, distinct, >= 4 entries
  double theta = 0.0;
  RunConfig scenario; // its eps/theta are overridden per run
  std::string outputs;

  static SweepSpec from_json(const nlohmann::json& j);
  void validate() const;
};

struct SnapshotSeries {
  std::vector<double> t;
  std::vector<double> h_eps;           // <H_eps, phi> from the solver field
  std::vector<double> h_eps_a;         // same functional on the analytic ansatz
  std::vector<double> limit_stretched; // 2 sigma int |grad e| nn:grad phi dH
  std::vector<double> limit_sharp;     // 2 sigma int nn:grad phi dH
  std::vector<double> u_l2;            // ||c - c_A||_L2
  std::vector<double> hausdorff;       // solver contour vs transported interface
  std::vector<double> radius_fit;      // circle fit radius (NaN for non-circles)
};

struct RunMeasurements {
  double eps = 0.0;
  double theta = 0.0;
  bool failed = false;
  std::string error;

  SnapshotSeries series;
  DifferenceNorms diff;
  double int_h_eps = std::numeric_limits<double>::quiet_NaN();
  double int_h_eps_a = std::numeric_limits<double>::quiet_NaN();
  double int_limit_stretched = std::numeric_limits<double>::quiet_NaN();
  double int_limit_sharp = std::numeric_limits<double>::quiet_NaN();
  double max_slack = 0.0;
  double area_drift = 0.0; // relative enclosed-area change of the solver contour
  double mass_drift = 0.0;

  // norms of the analytic ansatz when the run grid resolves them (h <= eps/8)
  ApproxNorms norms_t0, norms_mid;
  double t_mid = 0.0;
  bool norms_valid = false;

  // final-time layer-shape diagnostics
  std::size_t fit_n = 0;        // vertices with a converged fit
  double fit_frac_unit = 0.0;   // fraction with |s-1| <= 0.1
  double fit_frac_match = 0.0;  // fraction with |s - stretch| <= 0.1 stretch
  double fit_s_min = 1.0, fit_s_max = 1.0;
  bool energy_monotone = true; // checked only for v = 0 runs
};

RunMeasurements measure_run(const RunConfig& cfg, const ProfileTable& profile,
                            const DoubleWell& well);

/// independent runs, worker threads, results in eps_list order; per-run
/// failures are recorded and the sweep continues
std::vector<RunMeasurements> run_sweep(const SweepSpec& spec, const ProfileTable& profile,
                                       const DoubleWell& well, int workers = 1);

void write_sweep_csv(const std::vector<RunMeasurements>& runs, const std::string& hash_hex,
                     const std::string& outdir, double theta);

/// reads a summary CSV written by write_sweep_csv and fits one column
RateFit fit_rates_from_csv(const std::string& csv_path, const std::string& quantity);

} // namespace aclab
