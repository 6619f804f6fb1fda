#include "aclab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace aclab {

using nlohmann::json;

SweepSpec SweepSpec::from_json(const json& j) {
  SweepSpec s;
  s.eps_list = j.at("eps_list").get<std::vector<double>>();
  s.theta = j.at("theta").get<double>();
  s.scenario = RunConfig::from_json(j.value("scenario", json::object()));
  s.outputs = j.value("out", std::string{});
  return s;
}

void SweepSpec::validate() const {
  if (eps_list.size() < 4)
    throw std::invalid_argument("sweep: rate fits need at least 4 eps values");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw std::invalid_argument("sweep: eps must be positive");
    for (std::size_t k = i + 1; k < eps_list.size(); ++k)
      if (eps_list[i] == eps_list[k])
        throw std::invalid_argument("sweep: duplicate eps entries");
    if (i > 0 && eps_list[i] >= eps_list[i - 1])
      throw std::invalid_argument("sweep: eps_list must be descending");
  }
  if (theta < 0.0) throw std::invalid_argument("sweep: theta must be >= 0");
}

namespace {

struct SnapNorms {
  double u_sq = 0, grad_sq = 0, ind_sq = 0;
};

SnapNorms snapshot_norms(const ScalarField& c, const ScalarField& cA, const ScalarField& e) {
  const Grid& g = c.grid();
  const int n = g.n;
  SnapNorms out;
  for (int j = 0; j < n; ++j) {
    const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    double urow = 0, grow = 0, irow = 0;
    for (int i = 0; i < n; ++i) {
      const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      const double w = wi * wj;
      const double u = c.at(i, j) - cA.at(i, j);
      const double dv = c.at(i, j) - (e.at(i, j) >= 0.0 ? 1.0 : -1.0);
      urow += w * u * u;
      irow += w * dv * dv;
      if (i > 0 && i + 1 < n && j > 0 && j + 1 < n) {
        const double ux =
            (c.at(i + 1, j) - c.at(i - 1, j) - cA.at(i + 1, j) + cA.at(i - 1, j)) / (2.0 * g.h);
        const double uy =
            (c.at(i, j + 1) - c.at(i, j - 1) - cA.at(i, j + 1) + cA.at(i, j - 1)) / (2.0 * g.h);
        grow += w * (ux * ux + uy * uy);
      }
    }
    out.u_sq += urow;
    out.grad_sq += grow;
    out.ind_sq += irow;
  }
  const double cell = g.h * g.h;
  out.u_sq *= cell;
  out.grad_sq *= cell;
  out.ind_sq *= cell;
  return out;
}

// forward-advected interface samples carrying flow Jacobians; gives the
// transported interface and the layer stretch |J^{-T} grad d0| at once
class InterfaceCloud {
public:
  InterfaceCloud(const Interface& gamma0, const InitialDistance& dist, const StreamVelocity& v,
                 double flow_step)
      : vel_(&v), step_(flow_step) {
    pts_ = gamma0.vertices();
    jac_.assign(pts_.size(), Mat2::identity());
    g0_.resize(pts_.size());
    for (std::size_t i = 0; i < pts_.size(); ++i) g0_[i] = dist.gradient(pts_[i]);
  }

  void advance_to(double t) {
    if (t <= t_cur_ + 1e-15) return;
    FlowMap map(*vel_, t_cur_, t, step_);
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      Vec2 x;
      Mat2 J;
      map.forward_with_jacobian(pts_[i], &x, &J);
      pts_[i] = x;
      jac_[i] = J.mul(jac_[i]);
    }
    t_cur_ = t;
  }

  const std::vector<Vec2>& points() const { return pts_; }

  std::vector<double> stretch() const {
    std::vector<double> s(pts_.size());
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      const Mat2& J = jac_[i];
      const double det = J.det();
      const Mat2 inv_t{J.a22 / det, -J.a21 / det, -J.a12 / det, J.a11 / det};
      s[i] = inv_t.apply(g0_[i]).norm();
    }
    return s;
  }

  Interface resampled_interface() const {
    double L = 0.0;
    for (std::size_t i = 0; i < pts_.size(); ++i)
      L += (pts_[(i + 1) % pts_.size()] - pts_[i]).norm();
    return Interface(polyline_resample(pts_, L / static_cast<double>(pts_.size())));
  }

private:
  const StreamVelocity* vel_;
  double step_;
  double t_cur_ = 0.0;
  std::vector<Vec2> pts_;
  std::vector<Mat2> jac_;
  std::vector<Vec2> g0_;
};

// midpoint-rule n(x)n : grad phi quadrature on a raw closed polyline
double polyline_limit_quadrature(const std::vector<Vec2>& v, const std::vector<double>* stretch,
                                 const TestField& phi, double sigma) {
  const std::size_t n = v.size();
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2& a = v[k];
    const Vec2& b = v[(k + 1) % n];
    const Vec2 seg = b - a;
    const double len = seg.norm();
    if (len == 0.0) continue;
    const Vec2 nrm = seg.perp_right() * (1.0 / len);
    const Mat2 G = phi.grad_at((a + b) * 0.5);
    const double nGn =
        nrm.x * nrm.x * G.a11 + nrm.x * nrm.y * (G.a12 + G.a21) + nrm.y * nrm.y * G.a22;
    const double s = stretch ? 0.5 * ((*stretch)[k] + (*stretch)[(k + 1) % n]) : 1.0;
    acc += s * nGn * len;
  }
  return 2.0 * sigma * acc;
}

ScalarField negated(const ScalarField& f) {
  ScalarField out = f;
  for (std::size_t k = 0; k < out.size(); ++k) out.data()[k] = -out.data()[k];
  return out;
}

} // namespace

RunMeasurements measure_run(const RunConfig& cfg, const ProfileTable& profile,
                            const DoubleWell& well) {
  RunMeasurements m;
  m.eps = cfg.params.eps;
  m.theta = cfg.params.theta;

  const RunSetup setup = make_setup(cfg, well);
  const Cutoff cutoff;
  const ScalarField c0 = initial_condition(setup.params, setup.d0, profile, cutoff);
  const Trajectory traj = simulate(setup.params, setup.velocity, c0, well, setup.solver);
  m.max_slack = traj.max_slack;
  m.mass_drift = traj.mass.back() - traj.mass.front();
  if (setup.velocity.kind() == StreamVelocity::Kind::zero) {
    for (std::size_t k = 1; k < traj.energy.size(); ++k)
      if (traj.energy[k] > traj.energy[k - 1] + 1e-8 * std::abs(traj.energy[0]))
        m.energy_monotone = false;
  }

  ApproxSolution approx(setup.params, setup.velocity, setup.dist, profile, cutoff,
                        setup.flow_step);
  ApproxSnapshots snaps(approx, setup.grid);
  InterfaceCloud cloud(setup.gamma0, *setup.dist, setup.velocity, setup.flow_step);
  const double sigma = profile.sigma();
  const std::size_t nsnap = traj.fields.size();
  const std::size_t mid_index = nsnap / 2;

  ScalarField e{setup.grid}, cA{setup.grid};
  double prev_gradsq = 0, prev_indsq = 0, prev_t = 0;
  Interface contour_final = setup.gamma0; // placeholder, replaced below

  for (std::size_t k = 0; k < nsnap; ++k) {
    const double t = traj.times[k];
    const ScalarField& c = traj.fields[k];
    snaps.at_time(t, &e, &cA);
    cloud.advance_to(t);

    const SnapNorms nn = snapshot_norms(c, cA, e);
    m.diff.sup_l2 = std::max(m.diff.sup_l2, std::sqrt(nn.u_sq));
    if (k > 0) {
      const double dt = t - prev_t;
      m.diff.grad_l2_spacetime += 0.5 * dt * (prev_gradsq + nn.grad_sq);
      m.diff.indicator_sq_spacetime += 0.5 * dt * (prev_indsq + nn.ind_sq);
    }
    prev_gradsq = nn.grad_sq;
    prev_indsq = nn.ind_sq;
    prev_t = t;

    const std::vector<double> stretch = cloud.stretch();
    m.series.t.push_back(t);
    m.series.u_l2.push_back(std::sqrt(nn.u_sq));
    m.series.h_eps.push_back(discrete_heps(c, setup.phi, setup.params.eps));
    m.series.h_eps_a.push_back(discrete_heps(cA, setup.phi, setup.params.eps));
    m.series.limit_stretched.push_back(
        polyline_limit_quadrature(cloud.points(), &stretch, setup.phi, sigma));
    m.series.limit_sharp.push_back(
        polyline_limit_quadrature(cloud.points(), nullptr, setup.phi, sigma));

    const Interface oracle = cloud.resampled_interface();
    const Interface contour =
        extract_zero_contour(setup.phase_sign > 0 ? c : negated(c));
    m.series.hausdorff.push_back(hausdorff_distance(contour, oracle));
    if (cfg.circle) {
      double r = 0;
      fit_circle(contour.vertices(), nullptr, &r);
      m.series.radius_fit.push_back(r);
    } else {
      m.series.radius_fit.push_back(std::numeric_limits<double>::quiet_NaN());
    }
    if (k + 1 == nsnap) {
      contour_final = contour;
      m.area_drift = contour.area() / setup.gamma0.area() - 1.0;
    }

    const bool norms_ok = setup.grid.h <= setup.params.eps / 8.0 * (1.0 + 1e-12);
    if (norms_ok && k == 0) {
      m.norms_t0 = approx_norms_from_fields(e, cA, setup.params.eps, well);
      m.norms_valid = true;
    }
    if (norms_ok && k == mid_index) {
      m.norms_mid = approx_norms_from_fields(e, cA, setup.params.eps, well);
      m.t_mid = t;
    }
  }
  m.diff.grad_l2_spacetime = std::sqrt(m.diff.grad_l2_spacetime);

  if (nsnap >= 3) {
    m.int_h_eps = time_integrated(m.series.t, m.series.h_eps);
    m.int_h_eps_a = time_integrated(m.series.t, m.series.h_eps_a);
    m.int_limit_stretched = time_integrated(m.series.t, m.series.limit_stretched);
    m.int_limit_sharp = time_integrated(m.series.t, m.series.limit_sharp);
  }

  // layer-shape fit at the final time, against the geometric stretch
  {
    const ScalarField& cT = traj.fields.back();
    const ScalarField view = setup.phase_sign > 0 ? cT : negated(cT);
    const ProfileFit fit = profile_fit(view, contour_final, profile, setup.params.eps);
    FlowMap map(setup.velocity, 0.0, traj.times.back(), setup.flow_step);
    std::size_t n_ok = 0, n_unit = 0, n_match = 0;
    double s_min = 1e300, s_max = -1e300;
    const auto& verts = contour_final.vertices();
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (!fit.ok[i]) continue;
      ++n_ok;
      const double s = fit.stretch[i];
      s_min = std::min(s_min, s);
      s_max = std::max(s_max, s);
      if (std::abs(s - 1.0) <= 0.1) ++n_unit;
      Vec2 y;
      Mat2 B;
      map.backward_with_jacobian(verts[i], &y, &B);
      const double geom = B.apply_transpose(setup.dist->gradient(y)).norm();
      if (geom > 0 && std::abs(s - geom) <= 0.1 * geom) ++n_match;
    }
    m.fit_n = n_ok;
    if (n_ok > 0) {
      m.fit_frac_unit = static_cast<double>(n_unit) / n_ok;
      m.fit_frac_match = static_cast<double>(n_match) / n_ok;
      m.fit_s_min = s_min;
      m.fit_s_max = s_max;
    }
  }
  return m;
}

std::vector<RunMeasurements> run_sweep(const SweepSpec& spec, const ProfileTable& profile,
                                       const DoubleWell& well, int workers) {
  spec.validate();
  std::vector<RunMeasurements> out(spec.eps_list.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= spec.eps_list.size()) break;
      RunConfig cfg = spec.scenario;
      cfg.params.eps = spec.eps_list[i];
      cfg.params.theta = spec.theta;
      try {
        out[i] = measure_run(cfg, profile, well);
      } catch (const std::exception& ex) {
        out[i].eps = spec.eps_list[i];
        out[i].theta = spec.theta;
        out[i].failed = true;
        out[i].error = ex.what();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

namespace {

void append_csv_value(std::string& line, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, ",%.17g", v);
  line += buf;
}

} // namespace

void write_sweep_csv(const std::vector<RunMeasurements>& runs, const std::string& hash_hex,
                     const std::string& outdir, double theta) {
  std::filesystem::create_directories(outdir);
  char name[96];
  std::snprintf(name, sizeof name, "%s/sweep_theta%g_summary.csv", outdir.c_str(), theta);
  {
    std::ofstream os(name);
    os << "# aclab sweep summary; config_hash=" << hash_hex
       << "; units: unit box, unit time; norms are L2 over the box unless noted\n";
    os << "eps,theta,status,sup_u_l2,grad_l2_spacetime,eps_grad_sq_spacetime,"
          "indicator_sq_spacetime,int_h_eps,int_h_eps_a,int_limit_stretched,int_limit_sharp,"
          "abs_int_heps_minus_heps_a,max_slack,area_drift,mass_drift,fit_n,fit_frac_unit,"
          "fit_frac_match,fit_s_min,fit_s_max,norms0_grad,norms0_lap,norms0_f,norms0_ind,"
          "normsmid_grad,normsmid_lap,normsmid_f,normsmid_ind,t_mid\n";
    for (const auto& r : runs) {
      char head[64];
      std::snprintf(head, sizeof head, "%.17g,%.17g,%s", r.eps, r.theta,
                    r.failed ? "failed" : "ok");
      std::string line = head;
      const double gsq = r.diff.grad_l2_spacetime * r.diff.grad_l2_spacetime;
      for (double v :
           {r.diff.sup_l2, r.diff.grad_l2_spacetime, r.eps * gsq, r.diff.indicator_sq_spacetime,
            r.int_h_eps, r.int_h_eps_a, r.int_limit_stretched, r.int_limit_sharp,
            std::abs(r.int_h_eps - r.int_h_eps_a), r.max_slack, r.area_drift, r.mass_drift,
            static_cast<double>(r.fit_n), r.fit_frac_unit, r.fit_frac_match, r.fit_s_min,
            r.fit_s_max, r.norms_t0.grad_l2, r.norms_t0.lap_l2, r.norms_t0.f_l2,
            r.norms_t0.indicator_l2, r.norms_mid.grad_l2, r.norms_mid.lap_l2, r.norms_mid.f_l2,
            r.norms_mid.indicator_l2, r.t_mid})
        append_csv_value(line, v);
      os << line << "\n";
      if (r.failed) os << "# run eps=" << r.eps << " failed: " << r.error << "\n";
    }
  }
  std::snprintf(name, sizeof name, "%s/sweep_theta%g_series.csv", outdir.c_str(), theta);
  {
    std::ofstream os(name);
    os << "# aclab sweep series; config_hash=" << hash_hex
       << "; units: unit box, unit time\n";
    os << "eps,theta,t,h_eps,h_eps_a,limit_stretched,limit_sharp,gap_stretched,gap_sharp,"
          "u_l2,hausdorff,radius_fit\n";
    for (const auto& r : runs) {
      if (r.failed) continue;
      for (std::size_t k = 0; k < r.series.t.size(); ++k) {
        char head[64];
        std::snprintf(head, sizeof head, "%.17g,%.17g", r.eps, r.theta);
        std::string line = head;
        for (double v : {r.series.t[k], r.series.h_eps[k], r.series.h_eps_a[k],
                         r.series.limit_stretched[k], r.series.limit_sharp[k],
                         std::abs(r.series.h_eps[k] - r.series.limit_stretched[k]),
                         std::abs(r.series.h_eps[k] - r.series.limit_sharp[k]), r.series.u_l2[k],
                         r.series.hausdorff[k], r.series.radius_fit[k]})
          append_csv_value(line, v);
        os << line << "\n";
      }
    }
  }
}

RateFit fit_rates_from_csv(const std::string& csv_path, const std::string& quantity) {
  std::ifstream is(csv_path);
  if (!is) throw std::runtime_error("cannot open csv: " + csv_path);
  std::string line;
  std::vector<std::string> cols;
  std::vector<double> eps, vals;
  int eps_col = -1, q_col = -1;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string tok;
    if (cols.empty()) {
      while (std::getline(ss, tok, ',')) cols.push_back(tok);
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == "eps") eps_col = static_cast<int>(i);
        if (cols[i] == quantity) q_col = static_cast<int>(i);
      }
      if (eps_col < 0 || q_col < 0)
        throw std::runtime_error("csv lacks columns eps/" + quantity);
      continue;
    }
    std::vector<std::string> row;
    while (std::getline(ss, tok, ',')) row.push_back(tok);
    if (static_cast<int>(row.size()) <= std::max(eps_col, q_col)) continue;
    if (row.size() > 2 && row[2] == "failed") continue;
    eps.push_back(std::stod(row[eps_col]));
    vals.push_back(std::stod(row[q_col]));
  }
  return fit_rates(eps, vals, quantity);
}

} // namespace aclab
