#include "glider/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "glider/errors.hpp"

namespace glider {

std::pair<double, PidState> pid_step(const PidConfig& cfg, const PidState& state, double error, double dt) {
  PidState next = state;
  next.integrator = std::clamp(state.integrator + error * dt, -cfg.integrator_limit, cfg.integrator_limit);
  const double derivative = state.initialized ? (error - state.previous_error) / dt : 0.0;
  next.previous_error = error;
  next.initialized = true;
  const double out = cfg.kp * error + cfg.ki * next.integrator + cfg.kd * derivative;
  return {std::clamp(out, -cfg.output_limit, cfg.output_limit), next};
}

std::pair<double, double> derotate(double u_n, double v_n, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {c * u_n - s * v_n, s * u_n + c * v_n};
}

Action classic_controller_step(const Observation& obs, double dt, const ClassicControllerConfig& cfg,
                               ClassicControllerState& state) {
  const double phi = obs.phi_n * kPi;
  const auto [u_stab, v_stab] = derotate(obs.u_cam, obs.v_cam, phi);

  // Target below the boresight (v_stab > 0) needs trailing-edge-down elevons.
  auto [el, long_state] = pid_step(cfg.longitudinal, state.longitudinal, v_stab, dt);
  state.longitudinal = long_state;
  el += cfg.pitch_rate_gain * obs.q_n;

  const auto [roll_cmd, head_state] = pid_step(cfg.heading, state.heading, u_stab, dt);
  state.heading = head_state;
  const auto [ail, roll_state] = pid_step(cfg.roll, state.roll, roll_cmd - phi, dt);
  state.roll = roll_state;

  return Action{el, ail}.clamped();
}

void validate(const PidConfig& cfg, const char* key) {
  const std::string k = key;
  if (!(cfg.output_limit > 0.0)) throw ConfigError(k + ".output_limit", "must be > 0");
  if (!(cfg.integrator_limit >= 0.0)) throw ConfigError(k + ".integrator_limit", "must be >= 0");
  if (!std::isfinite(cfg.kp) || !std::isfinite(cfg.ki) || !std::isfinite(cfg.kd)) {
    throw ConfigError(k, "gains must be finite");
  }
}

}  // namespace glider
