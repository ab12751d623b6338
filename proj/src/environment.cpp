#include "glider/environment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "glider/errors.hpp"

namespace glider {

namespace {

constexpr std::uint64_t kTurbulenceSeedSalt = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kNoiseSeedSalt = 0xD1B54A32D192ED03ULL;

double clamp_unit(double x) {
  if (std::isnan(x)) return 0.0;
  return std::clamp(x, -1.0, 1.0);
}

}  // namespace

Action Action::clamped() const { return {clamp_unit(delta_el_n), clamp_unit(delta_ail_n)}; }

std::string_view to_string(TerminationCause cause) {
  switch (cause) {
    case TerminationCause::kNone: return "none";
    case TerminationCause::kImpact: return "impact";
    case TerminationCause::kTargetLost: return "target_lost";
    case TerminationCause::kGimbalFault: return "gimbal_fault";
    case TerminationCause::kAirflowFault: return "airflow_fault";
  }
  return "unknown";
}

Observation observe(const RigidBodyState& s, const ImagePoint& image) {
  Observation o;
  o.phi_n = clamp_unit(s.attitude.phi / kPi);
  o.theta_n = clamp_unit(s.attitude.theta / (kPi / 2));
  o.p_n = clamp_unit(s.rates_body.x() / kMaxObservedRate);
  o.q_n = clamp_unit(s.rates_body.y() / kMaxObservedRate);
  o.u_cam = clamp_unit(image.u);
  o.v_cam = clamp_unit(image.v);
  return o;
}

double reward(const ImagePoint& image, const Action& action_n, const RewardWeights& w) {
  const double camera = w.w1 * std::sqrt(image.u * image.u + image.v * image.v);
  const double actuator =
      w.w2 * action_n.delta_el_n * action_n.delta_el_n + w.w3 * action_n.delta_ail_n * action_n.delta_ail_n;
  return -(camera + actuator);
}

Vec3 ground_crossing(const Vec3& before, const Vec3& after, double ground_z) {
  const double z0 = before.z(), z1 = after.z();
  const double s = z1 > z0 ? std::clamp((ground_z - z0) / (z1 - z0), 0.0, 1.0) : 1.0;
  Vec3 p = before + s * (after - before);
  p.z() = ground_z;
  return p;
}

double discounted_return(std::span<const double> rewards, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("discount must lie in [0, 1)");
  double total = 0.0;
  double weight = 1.0;
  for (double r : rewards) {
    total += weight * r;
    weight *= gamma;
  }
  return total;
}

void validate(const ScenarioConfig& c) {
  if (!c.glider) throw ConfigError("glider", "missing glider model");
  validate(*c.glider);
  validate(c.wind);
  validate(c.seeker);
  const auto& i = c.init;
  if (!(i.range_half_width >= 0.0 && i.range_mean - i.range_half_width > 0.0)) {
    throw ConfigError("init.range_m", "range must stay positive");
  }
  if (!(i.cone_half_width >= 0.0 && i.cone_half_width < kPi)) {
    throw ConfigError("init.cone_half_width_deg", "must be in [0, 180)");
  }
  if (!(i.altitude_half_width >= 0.0 && i.altitude_ratio > 0.0 &&
        i.altitude_ratio * (i.range_mean - i.range_half_width) - i.altitude_half_width > 0.0)) {
    throw ConfigError("init.altitude_half_width_m", "altitude must stay above ground for every draw");
  }
  if (!(c.weights.w1 > 0.0)) throw ConfigError("reward.w1", "must be > 0");
  if (!(c.weights.w2 >= 0.0)) throw ConfigError("reward.w2", "must be >= 0");
  if (!(c.weights.w3 >= 0.0)) throw ConfigError("reward.w3", "must be >= 0");
  if (!(c.max_duration > 0.0)) throw ConfigError("max_duration_s", "must be > 0");
  if (!(c.dt > 0.0)) throw ConfigError("dt_s", "must be > 0");
  if (!(c.rho > 0.0)) throw ConfigError("rho_kgm3", "must be > 0");
  if (!(c.actuator_scale > 0.0)) throw ConfigError("actuator_scale_deg", "must be > 0");
  if (!(c.target_lost_penalty >= 0.0)) throw ConfigError("reward.target_lost_penalty", "must be >= 0");
  if (c.max_reset_attempts < 1) throw ConfigError("max_reset_attempts", "must be >= 1");
}

Environment::Environment(ScenarioConfig cfg) : cfg_(std::move(cfg)) {
  validate(cfg_);
  trim_ = trim_longitudinal(*cfg_.glider, cfg_.rho, cfg_.gravity);
}

ImagePoint Environment::measure(const RigidBodyState& s) {
  ImagePoint image = project(cfg_.init.target_ned, s.position_ned, s.attitude, cfg_.seeker);
  if (cfg_.seeker.pixel_noise_std > 0.0 && image.visible) {
    std::normal_distribution<double> noise(0.0, cfg_.seeker.pixel_noise_std);
    const double du = noise(noise_rng_);
    const double dv = noise(noise_rng_);
    image.u += du / (cfg_.seeker.resolution.x() / 2.0);
    image.v += dv / (cfg_.seeker.resolution.y() / 2.0);
    image.visible = std::abs(image.u) <= 1.0 && std::abs(image.v) <= 1.0;
  }
  return image;
}

StepInfo Environment::make_info(const ImagePoint& image) const {
  StepInfo info;
  info.time = time();
  info.step = steps_;
  info.state = state_;
  info.actuators = actuators_;
  info.image = image;
  info.wind_ned = wind_at(cfg_.wind, gust_ned_);
  info.horizontal_miss = (state_.position_ned - cfg_.init.target_ned).head<2>().norm();
  return info;
}

std::pair<Observation, ResetInfo> Environment::reset(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& d = cfg_.init;
  std::uniform_real_distribution<double> range_dist(d.range_mean - d.range_half_width,
                                                    d.range_mean + d.range_half_width);
  std::uniform_real_distribution<double> cone_dist(-d.cone_half_width, d.cone_half_width);

  for (int attempt = 1; attempt <= cfg_.max_reset_attempts; ++attempt) {
    const double range = range_dist(rng);
    const double cone = cone_dist(rng);
    std::uniform_real_distribution<double> alt_dist(d.altitude_ratio * range - d.altitude_half_width,
                                                    d.altitude_ratio * range + d.altitude_half_width);
    const double altitude = alt_dist(rng);
    if (!(altitude > 0.0)) continue;

    RigidBodyState s = trim_.state();
    s.attitude.phi = d.roll;
    s.attitude.psi = d.heading;
    s.position_ned = d.target_ned + Vec3(-range * std::cos(cone), -range * std::sin(cone), -altitude);
    s.position_ned.z() = -altitude;

    if (!project(d.target_ned, s.position_ned, s.attitude, cfg_.seeker).visible) continue;

    auto [obs, info] = reset_to(s, seed);
    info.range = range;
    info.cone = cone;
    info.altitude = altitude;
    info.attempts = attempt;
    return {obs, info};
  }
  std::ostringstream msg;
  msg << "target not visible at start after " << cfg_.max_reset_attempts << " draws (seed " << seed << ")";
  throw InfeasibleScenario(msg.str());
}

std::pair<Observation, ResetInfo> Environment::reset_to(const RigidBodyState& s, std::uint64_t seed) {
  state_ = s;
  actuators_ = {};
  dryden_ = DrydenState(seed ^ kTurbulenceSeedSalt);
  noise_rng_.seed(seed ^ kNoiseSeedSalt);
  gust_ned_ = Vec3::Zero();
  steps_ = 0;
  reset_ = true;
  done_ = false;

  const ImagePoint image = measure(state_);
  ResetInfo info;
  info.altitude = -s.position_ned.z();
  info.range = (s.position_ned - cfg_.init.target_ned).head<2>().norm();
  info.trim = trim_;
  info.step = make_info(image);
  return {observe(state_, image), info};
}

StepResult Environment::step(const Action& raw_action) {
  if (!reset_) throw StepAfterTermination("step() called before reset()");
  if (done_) throw StepAfterTermination("step() called after the episode ended");

  const Action action = raw_action.clamped();
  actuators_ = {action.delta_el_n * cfg_.actuator_scale, action.delta_ail_n * cfg_.actuator_scale};

  const Vec3 wind_ned = wind_at(cfg_.wind, gust_ned_);
  const GliderModel& glider = *cfg_.glider;
  auto provider = [&](const RigidBodyState& s) {
    const Vec3 wind_body = euler_to_dcm(s.attitude).m.transpose() * wind_ned;
    return total_wrench(s, actuators_, glider, wind_body, cfg_.rho);
  };

  StepResult out;
  const RigidBodyState previous = state_;
  try {
    state_ = rk4_step_with(previous, cfg_.dt, provider, glider.mass, cfg_.gravity);
  } catch (const GimbalLock&) {
    out.cause = TerminationCause::kGimbalFault;
  } catch (const DegenerateAirflow&) {
    out.cause = TerminationCause::kAirflowFault;
  }
  ++steps_;

  if (out.cause == TerminationCause::kNone) {
    const Vec3 air_body = state_.velocity_body - euler_to_dcm(state_.attitude).m.transpose() * wind_ned;
    gust_ned_ = dryden_step(dryden_, cfg_.wind, air_body.norm(), cfg_.dt);
  }

  const ImagePoint image = measure(state_);
  out.observation = observe(state_, image);
  out.info = make_info(image);

  const double ground_z = 0.0;
  if (out.cause == TerminationCause::kNone && state_.position_ned.z() >= ground_z) {
    out.cause = TerminationCause::kImpact;
    const Vec3 impact = ground_crossing(previous.position_ned, state_.position_ned, ground_z);
    out.info.impact_ned = impact;
    out.info.horizontal_miss = (impact - cfg_.init.target_ned).head<2>().norm();
  }
  if (out.cause == TerminationCause::kNone && !image.visible) {
    out.cause = TerminationCause::kTargetLost;
  }

  if (image.visible) {
    out.reward = reward(image, action, cfg_.weights);
  } else {
    // Image offset saturated at the frame corner.
    const ImagePoint corner{1.0, 1.0, true};
    out.reward = reward(corner, action, cfg_.weights);
  }
  if (out.cause == TerminationCause::kTargetLost) out.reward -= cfg_.target_lost_penalty;

  out.terminated = out.cause != TerminationCause::kNone;
  out.truncated = !out.terminated && time() >= cfg_.max_duration - 1e-9;
  done_ = out.terminated || out.truncated;
  return out;
}

}  // namespace glider
