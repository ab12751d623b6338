#include "glider/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "glider/errors.hpp"

namespace glider {

namespace {

using nlohmann::json;

// Typed view of one JSON object that remembers its dotted path and rejects
// keys nobody asked for.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string key(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

  bool has(const std::string& k) const { return j_.contains(k); }

  const json& raw(const std::string& k) const {
    seen_.insert(k);
    if (!j_.contains(k)) throw ConfigError(key(k), "missing required key");
    return j_.at(k);
  }

  double number(const std::string& k) const {
    const json& v = raw(k);
    if (!v.is_number()) throw ConfigError(key(k), "expected a number");
    return v.get<double>();
  }
  double number(const std::string& k, double fallback) const { return has(k) ? number(k) : mark(k, fallback); }

  std::int64_t integer(const std::string& k) const {
    const json& v = raw(k);
    if (!v.is_number_integer()) throw ConfigError(key(k), "expected an integer");
    return v.get<std::int64_t>();
  }
  std::int64_t integer(const std::string& k, std::int64_t fallback) const {
    return has(k) ? integer(k) : mark(k, fallback);
  }

  bool boolean(const std::string& k, bool fallback) const {
    if (!has(k)) return mark(k, fallback);
    const json& v = raw(k);
    if (!v.is_boolean()) throw ConfigError(key(k), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& k, const std::string& fallback) const {
    if (!has(k)) return mark(k, fallback);
    const json& v = raw(k);
    if (!v.is_string()) throw ConfigError(key(k), "expected a string");
    return v.get<std::string>();
  }

  template <int N>
  Eigen::Matrix<double, N, 1> vec(const std::string& k) const {
    const json& v = raw(k);
    if (!v.is_array() || v.size() != N) {
      throw ConfigError(key(k), "expected an array of " + std::to_string(N) + " numbers");
    }
    Eigen::Matrix<double, N, 1> out;
    for (int i = 0; i < N; ++i) {
      if (!v[i].is_number()) throw ConfigError(key(k), "expected an array of numbers");
      out[i] = v[i].get<double>();
    }
    return out;
  }
  template <int N>
  Eigen::Matrix<double, N, 1> vec(const std::string& k, const Eigen::Matrix<double, N, 1>& fallback) const {
    return has(k) ? vec<N>(k) : mark(k, fallback);
  }

  Node child(const std::string& k) const { return Node(raw(k), key(k)); }

  // Call once every expected key was read.
  void finish() const {
    for (const auto& [k, _] : j_.items()) {
      if (!seen_.count(k)) throw ConfigError(key(k), "unknown key");
    }
  }

 private:
  template <typename T>
  T mark(const std::string& k, T value) const {
    seen_.insert(k);
    return value;
  }

  const json& j_;
  std::string path_;
  mutable std::set<std::string> seen_;
};

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", what + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Dcm mounting_from_euler_deg(const Vec3& deg) {
  return euler_to_dcm({deg.x() * kDegToRad, deg.y() * kDegToRad, deg.z() * kDegToRad}).transpose();
}

LiftingSurface parse_surface(const Node& n) {
  LiftingSurface s;
  s.name = n.string("name", "");
  if (s.name.empty()) throw ConfigError(n.key("name"), "every surface needs a non-empty name");
  s.mounting.position_body = n.vec<3>("position_m");
  s.mounting.orientation_body = mounting_from_euler_deg(n.vec<3>("mount_euler_deg", Vec3::Zero()));
  if (n.boolean("all_moving", false)) s.mounting.hinge = HingeAxis::kY;
  s.area = n.number("area_m2");
  s.chord = n.number("chord_m");
  s.aspect_ratio = n.number("aspect_ratio");
  s.cl0 = n.number("cl0", 0.0);
  s.cd0 = n.number("cd0");
  s.cm0 = n.number("cm0", 0.0);
  s.oswald = n.number("oswald", 0.75);
  s.stall_alpha = n.number("stall_alpha_deg", 15.0) * kDegToRad;
  s.deflection_sign = static_cast<int>(n.integer("deflection_sign", 0));
  n.finish();
  return s;
}

GliderModel parse_glider_node(const Node& n) {
  GliderModel g;
  g.name = n.string("name", "glider");
  g.mass.mass = n.number("mass_kg");
  const Vec3 diag = n.vec<3>("inertia_diag_kgm2");
  g.mass.inertia = diag.asDiagonal();
  g.actuator_limit = n.number("actuator_limit_deg", 20.0) * kDegToRad;

  const json& surfaces = n.raw("surfaces");
  if (!surfaces.is_array()) throw ConfigError(n.key("surfaces"), "expected an array");
  std::set<std::string> names;
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    LiftingSurface s = parse_surface(Node(surfaces[i], n.key("surfaces[" + std::to_string(i) + "]")));
    if (!names.insert(s.name).second) throw ConfigError(n.key("surfaces"), "duplicate surface name '" + s.name + "'");
    g.surfaces.push_back(std::move(s));
  }

  const Node f = n.child("fuselage");
  g.fuselage.form_factor = f.number("form_factor");
  g.fuselage.skin_friction = f.number("skin_friction");
  g.fuselage.wet_area = f.number("wet_area_m2");
  g.fuselage.ref_area = f.number("ref_area_m2");
  f.finish();
  n.finish();

  try {
    validate(g);
  } catch (const ConfigError& e) {
    throw ConfigError(n.key(e.key()), e.message());
  }
  return g;
}

PidConfig parse_pid(const Node& n, const PidConfig& defaults) {
  PidConfig p;
  p.kp = n.number("kp", defaults.kp);
  p.ki = n.number("ki", defaults.ki);
  p.kd = n.number("kd", defaults.kd);
  p.output_limit = n.number("output_limit", defaults.output_limit);
  p.integrator_limit = n.number("integrator_limit", defaults.integrator_limit);
  n.finish();
  return p;
}

}  // namespace

GliderModel parse_glider(const std::string& text) {
  const json j = parse_json(text, "glider document");
  return parse_glider_node(Node(j, ""));
}

GliderModel load_glider(const std::filesystem::path& path) {
  try {
    return parse_glider(read_file(path));
  } catch (const ConfigError& e) {
    throw ConfigError(e.key(), e.message() + " (in " + path.string() + ")");
  }
}

Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir) {
  const json j = parse_json(text, "scenario document");
  const Node root(j, "");
  Scenario sc;
  ScenarioConfig& c = sc.env;

  const json& gj = root.raw("glider");
  if (gj.is_string()) {
    const std::filesystem::path gp = base_dir / gj.get<std::string>();
    try {
      c.glider = std::make_shared<const GliderModel>(parse_glider(read_file(gp)));
    } catch (const ConfigError& e) {
      throw ConfigError(e.key().empty() ? "glider" : "glider." + e.key(), e.message() + " (in " + gp.string() + ")");
    }
  } else if (gj.is_object()) {
    c.glider = std::make_shared<const GliderModel>(parse_glider_node(Node(gj, "glider")));
  } else {
    throw ConfigError("glider", "expected a file name or an object");
  }

  c.seed = static_cast<std::uint64_t>(root.integer("seed", 0));
  c.dt = root.number("dt_s", c.dt);
  c.max_duration = root.number("max_duration_s", c.max_duration);
  c.rho = root.number("rho_kgm3", c.rho);
  c.gravity = root.number("gravity_mps2", c.gravity);
  c.actuator_scale = root.number("actuator_scale_deg", c.actuator_scale / kDegToRad) * kDegToRad;
  c.max_reset_attempts = static_cast<int>(root.integer("max_reset_attempts", c.max_reset_attempts));

  if (root.has("init")) {
    const Node n = root.child("init");
    auto& d = c.init;
    const Eigen::Vector2d range = n.vec<2>("range_m", Eigen::Vector2d(d.range_mean, d.range_half_width));
    d.range_mean = range.x();
    d.range_half_width = range.y();
    d.cone_half_width = n.number("cone_half_width_deg", d.cone_half_width / kDegToRad) * kDegToRad;
    d.altitude_ratio = n.number("altitude_ratio", d.altitude_ratio);
    d.altitude_half_width = n.number("altitude_half_width_m", d.altitude_half_width);
    d.roll = n.number("roll_deg", d.roll / kDegToRad) * kDegToRad;
    d.heading = n.number("heading_deg", d.heading / kDegToRad) * kDegToRad;
    d.target_ned = n.vec<3>("target_ned_m", d.target_ned);
    n.finish();
  }

  if (root.has("wind")) {
    const Node n = root.child("wind");
    c.wind.mean_wind_ned = n.vec<3>("mean_ned_mps", c.wind.mean_wind_ned);
    if (n.has("turbulence")) {
      const Node t = n.child("turbulence");
      c.wind.turbulence_enabled = t.boolean("enabled", true);
      c.wind.turbulence_intensity = t.vec<3>("intensity_mps", c.wind.turbulence_intensity);
      c.wind.scale_lengths = t.vec<3>("scale_lengths_m", c.wind.scale_lengths);
      t.finish();
    }
    n.finish();
  }

  if (root.has("seeker")) {
    const Node n = root.child("seeker");
    const double hfov = n.number("horizontal_fov_deg", 120.0) * kDegToRad;
    const Eigen::Vector2d res = n.vec<2>("resolution_px", Eigen::Vector2d(640.0, 480.0));
    const Vec3 mount = n.vec<3>("mount_euler_deg", Vec3::Zero());
    if (!(hfov > 0.0 && hfov < kPi)) throw ConfigError(n.key("horizontal_fov_deg"), "must be in (0, 180)");
    if (!(res.x() > 0.0 && res.y() > 0.0)) throw ConfigError(n.key("resolution_px"), "must be positive");
    c.seeker = SeekerModel::from_fov(hfov, res.x(), res.y(), mounting_from_euler_deg(mount));
    c.seeker.pixel_noise_std = n.number("pixel_noise_std_px", 0.0);
    if (n.has("vertical_fov_deg")) {
      c.seeker.fov.y() = n.number("vertical_fov_deg") * kDegToRad;
    }
    n.finish();
  }

  if (root.has("reward")) {
    const Node n = root.child("reward");
    c.weights.w1 = n.number("w1", c.weights.w1);
    c.weights.w2 = n.number("w2", c.weights.w2);
    c.weights.w3 = n.number("w3", c.weights.w3);
    c.target_lost_penalty = n.number("target_lost_penalty", c.target_lost_penalty);
    n.finish();
  }

  if (root.has("controller")) {
    const Node n = root.child("controller");
    auto& k = sc.controller;
    if (n.has("longitudinal")) k.longitudinal = parse_pid(n.child("longitudinal"), k.longitudinal);
    if (n.has("heading")) k.heading = parse_pid(n.child("heading"), k.heading);
    if (n.has("roll")) k.roll = parse_pid(n.child("roll"), k.roll);
    k.pitch_rate_gain = n.number("pitch_rate_gain", k.pitch_rate_gain);
    n.finish();
  }
  root.finish();

  validate(c);
  validate(sc.controller.longitudinal, "controller.longitudinal");
  validate(sc.controller.heading, "controller.heading");
  validate(sc.controller.roll, "controller.roll");
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  Scenario sc;
  try {
    sc = parse_scenario(read_file(path), path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(e.key(), e.message() + " (in " + path.string() + ")");
  }
  sc.source = path;
  return sc;
}

Environment make_environment(const std::filesystem::path& scenario_path) {
  return Environment(load_scenario(scenario_path).env);
}

}  // namespace glider
