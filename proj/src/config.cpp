#include "isotrack/config.hpp"

#include <fstream>
#include <sstream>

#include "isotrack/errors.hpp"
#include "isotrack/rng.hpp"

namespace isotrack {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConfigMap ConfigMap::parse(std::istream& in) {
  ConfigMap cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + " is not key = value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + " has an empty key");
    if (cfg.kv_.count(key)) throw ConfigError("duplicate config key: " + key);
    cfg.kv_[key] = value;
  }
  return cfg;
}

ConfigMap ConfigMap::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse(in);
}

bool ConfigMap::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string ConfigMap::str(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing config key: " + key);
  used_.insert(key);
  return it->second;
}

std::string ConfigMap::str_or(const std::string& key, const std::string& fallback) const {
  used_.insert(key);
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double ConfigMap::number(const std::string& key) const {
  const std::string v = str(key);
  try {
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (...) {
    throw ConfigError("config key " + key + " is not a number: " + v);
  }
}

double ConfigMap::number_or(const std::string& key, double fallback) const {
  used_.insert(key);
  return kv_.count(key) ? number(key) : fallback;
}

std::int64_t ConfigMap::integer_or(const std::string& key, std::int64_t fallback) const {
  used_.insert(key);
  if (!kv_.count(key)) return fallback;
  return static_cast<std::int64_t>(number(key));
}

bool ConfigMap::flag_or(const std::string& key, bool fallback) const {
  used_.insert(key);
  if (!kv_.count(key)) return fallback;
  const std::string v = str(key);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("config key " + key + " is not a boolean: " + v);
}

void ConfigMap::require(const std::vector<std::string>& keys) const {
  std::string missing;
  for (const std::string& k : keys)
    if (!kv_.count(k)) missing += missing.empty() ? k : ", " + k;
  if (!missing.empty()) throw ConfigError("missing config keys: " + missing);
}

void ConfigMap::reject_unknown() const {
  std::string unknown;
  for (const auto& [k, v] : kv_)
    if (!used_.count(k)) unknown += unknown.empty() ? k : ", " + k;
  if (!unknown.empty()) throw ConfigError("unknown config keys: " + unknown);
}

namespace {

PathPtr parse_path(const ConfigMap& cfg, const std::string& prefix) {
  const std::string kind = cfg.str_or(prefix + ".kind", "static");
  if (kind == "static") {
    cfg.require({prefix + ".x", prefix + ".y"});
    return std::make_shared<StaticPoint>(Vec2{cfg.number(prefix + ".x"), cfg.number(prefix + ".y")});
  }
  if (kind == "line") {
    cfg.require({prefix + ".x", prefix + ".y", prefix + ".vx", prefix + ".vy"});
    return std::make_shared<LinePath>(
        Vec2{cfg.number(prefix + ".x"), cfg.number(prefix + ".y")},
        Vec2{cfg.number(prefix + ".vx"), cfg.number(prefix + ".vy")});
  }
  if (kind == "orbit") {
    cfg.require({prefix + ".cx", prefix + ".cy", prefix + ".radius", prefix + ".rate"});
    return std::make_shared<CircleOrbit>(
        Vec2{cfg.number(prefix + ".cx"), cfg.number(prefix + ".cy")},
        cfg.number(prefix + ".radius"), cfg.number(prefix + ".rate"),
        cfg.number_or(prefix + ".phase", 0.0));
  }
  if (kind == "slalom") {
    cfg.require({prefix + ".x", prefix + ".y", prefix + ".forward", prefix + ".amplitude",
                 prefix + ".half_period"});
    return std::make_shared<SlalomPath>(
        Vec2{cfg.number(prefix + ".x"), cfg.number(prefix + ".y")},
        cfg.number(prefix + ".forward"), cfg.number(prefix + ".amplitude"),
        cfg.number(prefix + ".half_period"));
  }
  throw ConfigError("unknown path kind for " + prefix + ": " + kind);
}

ProfilePtr parse_profile(const ConfigMap& cfg) {
  const std::string kind = cfg.str("field.profile");
  if (kind == "gaussian") {
    cfg.require({"field.sigma"});
    return std::make_shared<GaussianProfile>(cfg.number("field.sigma"));
  }
  if (kind == "linear") return std::make_shared<LinearDecayProfile>();
  throw ConfigError("unknown field.profile: " + kind);
}

}  // namespace

RunSetup make_run_setup(const ConfigMap& cfg, std::optional<std::uint64_t> seed_override) {
  RunSetup setup;
  setup.seed = seed_override.value_or(
      static_cast<std::uint64_t>(cfg.integer_or("seed", 1)));
  setup.out_dir = cfg.str_or("out.dir", "out");

  cfg.require({"scenario", "robot.speed", "robot.turn_limit", "control.gain",
               "control.band", "sim.horizon", "sim.dt", "initial.x", "initial.y"});

  RobotParams robot{cfg.number("robot.speed"), cfg.number("robot.turn_limit")};
  if (!(robot.speed > 0.0)) throw ConfigError("robot.speed must be positive");
  if (robot.turn_rate_limit < 0.0) throw ConfigError("robot.turn_limit must be nonnegative");

  ControllerParams ctrl;
  ctrl.gain = cfg.number("control.gain");
  ctrl.band = cfg.number("control.band");
  if (!(ctrl.gain > 0.0) || !(ctrl.band > 0.0))
    throw ConfigError("control.gain and control.band must be positive");

  RobotState initial;
  initial.x = cfg.number("initial.x");
  initial.y = cfg.number("initial.y");
  const std::string heading = cfg.str_or("initial.heading", "0");
  if (heading == "random") {
    Rng rng(setup.seed);
    initial.theta = rng.uniform(0.0, 6.283185307179586);
  } else {
    initial.theta = cfg.number_or("initial.heading", 0.0);
  }

  setup.sim.horizon = cfg.number("sim.horizon");
  setup.sim.dt = cfg.number("sim.dt");
  const std::string mode = cfg.str_or("sim.measurement", "exact");
  if (mode == "exact") setup.sim.mode = MeasureMode::exact;
  else if (mode == "fd") setup.sim.mode = MeasureMode::finite_difference;
  else throw ConfigError("sim.measurement must be exact or fd");
  setup.sim.diagnostics = cfg.flag_or("sim.diagnostics", false);
  if (!(setup.sim.horizon > 0.0) || !(setup.sim.dt > 0.0) ||
      setup.sim.dt > setup.sim.horizon)
    throw ConfigError("sim.horizon and sim.dt must be positive with dt <= horizon");

  const std::string kind = cfg.str("scenario");
  if (kind == "escort") {
    cfg.require({"escort.range", "bounds.r_in_min", "bounds.r_in_max"});
    TargetPath target = target_path(parse_path(cfg, "target"));
    if (cfg.has("bounds.v0")) target.speed_max = cfg.number("bounds.v0");
    if (cfg.has("bounds.a0")) target.accel_max = cfg.number("bounds.a0");
    setup.scenario = build_escort(
        target, cfg.number("escort.range"), robot, ctrl, initial,
        std::make_pair(cfg.number("bounds.r_in_min"), cfg.number("bounds.r_in_max")));
  } else if (kind == "radial") {
    cfg.require({"field.profile", "field.intensity", "bounds.r_in_min", "bounds.r_in_max",
                 "bounds.c_min", "bounds.c_max", "control.level"});
    RadialSpec spec{parse_profile(cfg), cfg.number("field.intensity"),
                    parse_path(cfg, "center")};
    RadialBounds rb;
    rb.r_in_min = cfg.number("bounds.r_in_min");
    rb.r_in_max = cfg.number("bounds.r_in_max");
    rb.c_min = cfg.number("bounds.c_min");
    rb.c_max = cfg.number("bounds.c_max");
    rb.center_speed_max = cfg.number_or("bounds.v0", spec.center->max_speed());
    rb.center_accel_max = cfg.number_or("bounds.a0", spec.center->max_accel());
    setup.scenario =
        build_radial(spec, rb, cfg.number("control.level"), robot, ctrl, initial);
  } else if (kind == "advection") {
    cfg.require({"field.x0", "field.y0", "field.sigma", "field.intensity", "flow.x",
                 "flow.y", "bounds.sigma_min", "bounds.sigma_max", "bounds.c_min",
                 "bounds.flow_max", "bounds.r_in_min", "bounds.r_in_max",
                 "control.level"});
    AdvectionSpec spec;
    spec.center0 = {cfg.number("field.x0"), cfg.number("field.y0")};
    spec.sigma = cfg.number("field.sigma");
    spec.intensity = cfg.number("field.intensity");
    spec.flow = {cfg.number("flow.x"), cfg.number("flow.y")};
    AdvectionBounds ab;
    ab.sigma_min = cfg.number("bounds.sigma_min");
    ab.sigma_max = cfg.number("bounds.sigma_max");
    ab.c_min = cfg.number("bounds.c_min");
    if (cfg.has("bounds.c_max")) ab.c_max = cfg.number("bounds.c_max");
    ab.flow_max = cfg.number("bounds.flow_max");
    ab.r_in_min = cfg.number("bounds.r_in_min");
    ab.r_in_max = cfg.number("bounds.r_in_max");
    setup.scenario =
        build_advection(spec, ab, cfg.number("control.level"), robot, ctrl, initial);
  } else {
    throw ConfigError("unknown scenario kind: " + kind);
  }
  cfg.reject_unknown();
  return setup;
}

RunSetup load_run_setup(const std::string& path, std::optional<std::uint64_t> seed_override) {
  const ConfigMap cfg = ConfigMap::parse_file(path);
  return make_run_setup(cfg, seed_override);
}

}  // namespace isotrack
