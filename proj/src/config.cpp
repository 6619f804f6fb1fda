#include "aclab/config.hpp"

#include "aclab/geometry.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aclab {

using nlohmann::json;

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  c.params.eps = j.value("eps", c.params.eps);
  c.params.theta = j.value("theta", c.params.theta);
  c.params.m0 = j.value("m0", c.params.m0);
  c.params.delta = j.value("delta", c.params.delta);
  c.params.dt = j.value("dt", c.params.dt);
  c.params.T = j.value("T", c.params.T);
  c.params.snapshot_every = j.value("snapshot_every", c.params.snapshot_every);
  c.grid_n = j.value("grid_n", c.grid_n);
  c.grid_ratio = j.value("grid_ratio", c.grid_ratio);
  c.dt_scale = j.value("dt_scale", c.dt_scale);
  c.flow_step = j.value("flow_step", c.flow_step);
  c.flip_phase = j.value("flip_phase", c.flip_phase);
  c.solver.advect_order = j.value("advect_order", c.solver.advect_order);
  c.solver.filter_gamma = j.value("filter_gamma", c.solver.filter_gamma);
  c.solver.max_slack_abort = j.value("max_slack_abort", c.solver.max_slack_abort);
  c.solver.boundary_value = c.flip_phase ? -1.0 : 1.0;
  if (j.contains("velocity")) {
    c.velocity_kind = j["velocity"].value("kind", c.velocity_kind);
    c.velocity_amplitude = j["velocity"].value("amplitude", c.velocity_amplitude);
  }
  if (j.contains("testfield")) {
    const auto& t = j["testfield"];
    if (t.contains("center")) c.testfield.center = {t["center"][0], t["center"][1]};
    if (t.contains("halfwidth")) c.testfield.halfwidth = {t["halfwidth"][0], t["halfwidth"][1]};
    c.testfield.amplitude = t.value("amplitude", c.testfield.amplitude);
  }
  if (j.contains("initial_interface")) {
    const auto& ii = j["initial_interface"];
    if (ii.contains("circle")) {
      c.circle = true;
      const auto& cc = ii["circle"];
      if (cc.contains("center")) c.circle_center = {cc["center"][0], cc["center"][1]};
      c.circle_radius = cc.value("radius", c.circle_radius);
    } else if (ii.contains("polyline")) {
      c.circle = false;
      c.polyline_csv = ii["polyline"].get<std::string>();
    }
  }
  return c;
}

json RunConfig::to_json() const {
  json j;
  j["eps"] = params.eps;
  j["theta"] = params.theta;
  j["m0"] = params.m0;
  j["delta"] = params.delta;
  j["dt"] = params.dt;
  j["T"] = params.T;
  j["snapshot_every"] = params.snapshot_every;
  j["grid_n"] = grid_n;
  j["grid_ratio"] = grid_ratio;
  j["dt_scale"] = dt_scale;
  j["flow_step"] = flow_step;
  j["flip_phase"] = flip_phase;
  j["advect_order"] = solver.advect_order;
  j["filter_gamma"] = solver.filter_gamma;
  j["max_slack_abort"] = solver.max_slack_abort;
  j["velocity"] = {{"kind", velocity_kind}, {"amplitude", velocity_amplitude}};
  j["testfield"] = {{"center", {testfield.center.x, testfield.center.y}},
                    {"halfwidth", {testfield.halfwidth.x, testfield.halfwidth.y}},
                    {"amplitude", testfield.amplitude}};
  if (circle)
    j["initial_interface"] = {
        {"circle", {{"center", {circle_center.x, circle_center.y}}, {"radius", circle_radius}}}};
  else
    j["initial_interface"] = {{"polyline", polyline_csv}};
  return j;
}

namespace {

StreamVelocity make_velocity(const RunConfig& cfg) {
  switch (StreamVelocity::kind_from_string(cfg.velocity_kind)) {
    case StreamVelocity::Kind::zero: return StreamVelocity::zero();
    case StreamVelocity::Kind::single_vortex:
      return StreamVelocity::single_vortex(cfg.velocity_amplitude);
    case StreamVelocity::Kind::double_vortex:
      return StreamVelocity::double_vortex(cfg.velocity_amplitude);
    default: throw std::invalid_argument("velocity kind not constructible from config");
  }
}

class FlippedDistance final : public InitialDistance {
public:
  explicit FlippedDistance(std::shared_ptr<const InitialDistance> base) : base_(std::move(base)) {}
  double value(Vec2 p) const override { return -base_->value(p); }
  Vec2 gradient(Vec2 p) const override { return base_->gradient(p) * -1.0; }

private:
  std::shared_ptr<const InitialDistance> base_;
};

} // namespace

RunSetup make_setup(const RunConfig& cfg, const DoubleWell& well) {
  const int n = cfg.grid_n > 0
                    ? cfg.grid_n
                    : static_cast<int>(std::ceil(cfg.grid_ratio / cfg.params.eps)) + 1;
  const Grid grid{n};
  RunParams params = cfg.params;
  params.validate(grid);
  StreamVelocity velocity = make_velocity(cfg);

  ScalarField d0;
  std::shared_ptr<const InitialDistance> base;
  std::vector<Vec2> gamma0_verts;
  if (cfg.circle) {
    d0 = signed_distance_circle(cfg.circle_center, cfg.circle_radius, grid, cfg.params.delta);
    base = std::make_shared<CircleDistance>(cfg.circle_center, cfg.circle_radius);
    const int nv = std::max<int>(
        512, static_cast<int>(std::ceil(2.0 * M_PI * cfg.circle_radius / grid.h)));
    gamma0_verts = Interface::circle(cfg.circle_center, cfg.circle_radius, nv).vertices();
  } else {
    Interface iface = read_interface_csv(cfg.polyline_csv).resampled(grid.h);
    gamma0_verts = iface.vertices();
    d0 = signed_distance_polyline(iface, grid);
    base = std::make_shared<FieldDistance>(d0);
  }
  if (cfg.flip_phase) {
    for (std::size_t k = 0; k < d0.size(); ++k) d0.data()[k] = -d0.data()[k];
    base = std::make_shared<FlippedDistance>(std::move(base));
  }

  if (params.dt <= 0.0)
    params.dt =
        cfg.dt_scale * stability_dt(params, grid, velocity.max_speed(), well.lipschitz_f());

  return RunSetup{grid,
                  params,
                  std::move(velocity),
                  cfg.testfield,
                  cfg.solver,
                  cfg.flow_step,
                  cfg.flip_phase ? -1 : 1,
                  std::move(d0),
                  std::move(base),
                  Interface(std::move(gamma0_verts))};
}

std::uint64_t config_hash(const json& j) {
  const std::string dump = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash_hex(const json& j) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(j)));
  return buf;
}

void apply_override(json& j, const std::string& dotted_keyval) {
  const auto eq = dotted_keyval.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("override must look like key.path=value");
  const std::string path = dotted_keyval.substr(0, eq);
  const std::string valstr = dotted_keyval.substr(eq + 1);
  json value;
  try {
    value = json::parse(valstr);
  } catch (const json::parse_error&) {
    value = valstr; // plain string
  }
  json* cur = &j;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  if (parts.empty()) throw std::invalid_argument("override: empty key path");
  for (std::size_t k = 0; k + 1 < parts.size(); ++k) cur = &((*cur)[parts[k]]);
  (*cur)[parts.back()] = value;
}

json load_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file: " + path);
  json j;
  is >> j;
  return j;
}

Interface read_interface_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open interface file: " + path);
  std::string line;
  std::vector<Vec2> verts;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    verts.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  return Interface(std::move(verts));
}

void write_interface_csv(const std::string& path, const Interface& iface) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write interface file: " + path);
  os << "x,y\n";
  char buf[64];
  for (const Vec2& p : iface.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.y);
    os << buf;
  }
}

} // namespace aclab
