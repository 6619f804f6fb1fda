// Command-line driver: scenario runs, eps sweeps, and CSV emission.
#include "aclab/config.hpp"
#include "aclab/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace aclab;
using nlohmann::json;

namespace {

json load_config(const std::string& path, const std::vector<std::string>& overrides) {
  json j = path.empty() ? json::object() : load_json_file(path);
  for (const auto& kv : overrides) apply_override(j, kv);
  return j;
}

void ensure_out(const std::string& out) { std::filesystem::create_directories(out); }

int cmd_profile_check(const std::string& out) {
  const DoubleWell well = DoubleWell::quartic();
  const ProfileTable p = build_profile(well);
  std::printf("profile: residual %.3e  sigma %.9f  table %zu points, |z| <= %g\n",
              p.max_residual(), p.sigma(), p.size(), p.z_max());
  if (!out.empty()) {
    ensure_out(out);
    std::ofstream os(out + "/profile.csv");
    os << "# aclab profile table; z dimensionless\n";
    os << "z,theta0,dtheta0\n";
    char buf[96];
    const std::size_t stride = std::max<std::size_t>(1, p.size() / 4096);
    for (std::size_t i = 0; i < p.size(); i += stride) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.z_at(i), p.theta_at(i),
                    p.theta_prime_at(i));
      os << buf;
    }
    std::printf("wrote %s/profile.csv\n", out.c_str());
  }
  return 0;
}

int cmd_simulate(const json& cfg_json, const std::string& out) {
  const RunConfig cfg = RunConfig::from_json(cfg_json);
  const DoubleWell well = DoubleWell::quartic();
  const ProfileTable profile = build_profile(well);
  const RunSetup setup = make_setup(cfg, well);
  const Cutoff cutoff;
  const ScalarField c0 = initial_condition(setup.params, setup.d0, profile, cutoff);
  const Trajectory traj = simulate(setup.params, setup.velocity, c0, well, setup.solver);

  ensure_out(out);
  for (std::size_t k = 0; k < traj.fields.size(); ++k) {
    const std::string name =
        out + "/" + snapshot_filename(setup.params.eps, setup.params.theta, static_cast<int>(k));
    std::ofstream os(name);
    traj.fields[k].write_snapshot(os, traj.times[k]);
  }
  {
    std::ofstream os(out + "/series.csv");
    os << "# aclab run series; config_hash=" << config_hash_hex(cfg_json)
       << "; units: unit box, unit time\n";
    os << "t,mass,energy,max_slack\n";
    char buf[128];
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", traj.times[k], traj.mass[k],
                    traj.energy[k], traj.max_slack);
      os << buf;
    }
  }
  std::printf("simulate: %d steps, dt %.3e, %zu snapshots, max slack %.3e -> %s\n", traj.steps,
              traj.dt, traj.fields.size(), traj.max_slack, out.c_str());
  return 0;
}

int cmd_approx_norms(const json& cfg_json, const std::string& out,
                     std::vector<double> times) {
  const RunConfig cfg = RunConfig::from_json(cfg_json);
  const DoubleWell well = DoubleWell::quartic();
  const ProfileTable profile = build_profile(well);
  const RunSetup setup = make_setup(cfg, well);
  if (times.empty()) times = {0.0, setup.params.T / 2.0};

  // evaluation grid fine enough for the layer Laplacian
  const int n = std::max(setup.grid.n,
                         static_cast<int>(std::ceil(8.0 / setup.params.eps)) + 1);
  const Grid fine{n};
  ApproxSolution approx(setup.params, setup.velocity, setup.dist, profile, {}, setup.flow_step);

  ensure_out(out);
  std::ofstream os(out + "/approx_norms.csv");
  os << "# aclab approx norms; config_hash=" << config_hash_hex(cfg_json)
     << "; units: L2 over the unit box\n";
  os << "eps,theta,t,grad_l2,lap_l2,f_l2,indicator_l2\n";
  char buf[192];
  for (double t : times) {
    const ApproxNorms nn = approx_norms(approx, t, fine, well);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  setup.params.eps, setup.params.theta, t, nn.grad_l2, nn.lap_l2, nn.f_l2,
                  nn.indicator_l2);
    os << buf;
    std::printf("t=%.4g  grad %.6g  lap %.6g  f %.6g  indicator %.6g\n", t, nn.grad_l2,
                nn.lap_l2, nn.f_l2, nn.indicator_l2);
  }
  std::printf("wrote %s/approx_norms.csv\n", out.c_str());
  return 0;
}

int cmd_functional_compare(const json& cfg_json, const std::string& out) {
  const RunConfig cfg = RunConfig::from_json(cfg_json);
  const DoubleWell well = DoubleWell::quartic();
  const ProfileTable profile = build_profile(well);
  const RunMeasurements m = measure_run(cfg, profile, well);

  ensure_out(out);
  std::ofstream os(out + "/functional_compare.csv");
  os << "# aclab curvature functional comparison; config_hash=" << config_hash_hex(cfg_json)
     << "; units: unit box, unit time\n";
  os << "eps,theta,t,h_eps,h_eps_a,limit_stretched,limit_sharp,gap_stretched,gap_sharp\n";
  char buf[256];
  for (std::size_t k = 0; k < m.series.t.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  m.eps, m.theta, m.series.t[k], m.series.h_eps[k], m.series.h_eps_a[k],
                  m.series.limit_stretched[k], m.series.limit_sharp[k],
                  std::abs(m.series.h_eps[k] - m.series.limit_stretched[k]),
                  std::abs(m.series.h_eps[k] - m.series.limit_sharp[k]));
    os << buf;
  }
  std::printf("functional-compare: int<H_eps> %.6g  stretched %.6g  sharp %.6g -> %s\n",
              m.int_h_eps, m.int_limit_stretched, m.int_limit_sharp, out.c_str());
  return 0;
}

int cmd_motion_law(const json& cfg_json, const std::string& out) {
  const RunConfig cfg = RunConfig::from_json(cfg_json);
  const DoubleWell well = DoubleWell::quartic();
  const ProfileTable profile = build_profile(well);
  const RunMeasurements m = measure_run(cfg, profile, well);

  ensure_out(out);
  std::ofstream os(out + "/motion_law.csv");
  os << "# aclab motion-law comparison; config_hash=" << config_hash_hex(cfg_json)
     << "; units: unit box, unit time; oracle: transported interface\n";
  os << "t,hausdorff_to_solver_contour,radius_fit_if_circle\n";
  char buf[128];
  for (std::size_t k = 0; k < m.series.t.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", m.series.t[k], m.series.hausdorff[k],
                  m.series.radius_fit[k]);
    os << buf;
  }
  std::printf("motion-law: final hausdorff %.6g, area drift %.3g%% -> %s\n",
              m.series.hausdorff.back(), 100.0 * m.area_drift, out.c_str());
  return 0;
}

int cmd_sweep(const json& cfg_json, const std::string& out, int workers) {
  SweepSpec spec = SweepSpec::from_json(cfg_json);
  if (!out.empty()) spec.outputs = out;
  if (spec.outputs.empty()) spec.outputs = "sweep_out";
  const DoubleWell well = DoubleWell::quartic();
  const ProfileTable profile = build_profile(well);
  const auto runs = run_sweep(spec, profile, well, workers);
  write_sweep_csv(runs, config_hash_hex(cfg_json), spec.outputs, spec.theta);
  int failures = 0;
  for (const auto& r : runs) {
    if (r.failed) {
      ++failures;
      std::fprintf(stderr, "run eps=%g failed: %s\n", r.eps, r.error.c_str());
    } else {
      std::printf("eps %-8g sup|u| %.4e  int<H_eps> %.5g  stretched %.5g  sharp %.5g\n", r.eps,
                  r.diff.sup_l2, r.int_h_eps, r.int_limit_stretched, r.int_limit_sharp);
    }
  }
  std::printf("sweep: %zu runs, %d failed -> %s\n", runs.size(), failures,
              spec.outputs.c_str());
  return failures == 0 ? 0 : 1;
}

int cmd_rates(const std::string& csv, const std::string& quantity, const std::string& out) {
  const RateFit fit = fit_rates_from_csv(csv, quantity);
  std::printf("%s: slope %.4f  intercept %.4f  r^2 %.5f%s\n", fit.quantity.c_str(), fit.slope,
              fit.intercept, fit.r_squared, fit.flagged ? "  [low r^2]" : "");
  if (!out.empty()) {
    ensure_out(out);
    std::ofstream os(out + "/rates.csv", std::ios::app);
    if (os.tellp() == 0)
      os << "# aclab log-log rate fits\nquantity,slope,intercept,r_squared,flagged\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%d\n", fit.quantity.c_str(), fit.slope,
                  fit.intercept, fit.r_squared, fit.flagged ? 1 : 0);
    os << buf;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"convective phase-field laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<std::string> overrides;
  int workers = 1;
  app.add_option("--config", config_path, "JSON config path")->capture_default_str();
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--workers", workers, "worker threads for sweeps")->capture_default_str();
  app.add_option("--override", overrides, "config override key.path=value (repeatable)");

  auto* profile_check = app.add_subcommand("profile-check", "build the layer profile, print residual and sigma");
  auto* simulate_cmd = app.add_subcommand("simulate", "run one scenario, write snapshots");
  auto* approx_cmd = app.add_subcommand("approx-norms", "norms of the analytic transported ansatz");
  std::vector<double> times;
  approx_cmd->add_option("--times", times, "evaluation times (default 0 and T/2)");
  auto* functional_cmd = app.add_subcommand("functional-compare", "discrete vs limit curvature functionals");
  auto* motion_cmd = app.add_subcommand("motion-law", "solver contour vs transported interface");
  auto* sweep_cmd = app.add_subcommand("sweep", "run an eps ladder and write summary CSVs");
  auto* rates_cmd = app.add_subcommand("rates", "log-log rate fit over a sweep summary CSV");
  std::string rates_csv, rates_quantity;
  rates_cmd->add_option("--in", rates_csv, "summary CSV path")->required();
  rates_cmd->add_option("--quantity", rates_quantity, "column to fit")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (profile_check->parsed()) return cmd_profile_check(out_dir);
    const json cfg = load_config(config_path, overrides);
    if (simulate_cmd->parsed()) return cmd_simulate(cfg, out_dir.empty() ? "run_out" : out_dir);
    if (approx_cmd->parsed())
      return cmd_approx_norms(cfg, out_dir.empty() ? "run_out" : out_dir, times);
    if (functional_cmd->parsed())
      return cmd_functional_compare(cfg, out_dir.empty() ? "run_out" : out_dir);
    if (motion_cmd->parsed()) return cmd_motion_law(cfg, out_dir.empty() ? "run_out" : out_dir);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg, out_dir, workers);
    if (rates_cmd->parsed()) return cmd_rates(rates_csv, rates_quantity, out_dir);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
  return 0;
}
