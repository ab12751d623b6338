#pragma once

#include <utility>

#include "glider/environment.hpp"

namespace glider {

struct PidConfig {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double output_limit = 1.0;
  double integrator_limit = 1.0;  // anti-windup clamp on the accumulated error
};

struct PidState {
  double integrator = 0.0;
  double previous_error = 0.0;
  bool initialized = false;
};

/// Positional PID with a clamped integrator. The derivative term is a first
/// difference of the error and is zero on the first sample.
std::pair<double, PidState> pid_step(const PidConfig& cfg, const PidState& state, double error, double dt);

/// Rotates the camera measurement by the roll angle so that v_stab is the
/// vertical (longitudinal) error and u_stab the horizontal one.
std::pair<double, double> derotate(double u_n, double v_n, double phi);

struct ClassicControllerConfig {
  PidConfig longitudinal{5.0, 1.0, 0.1, 1.0, 1.0};  // v_stab -> elevon symmetric command
  PidConfig heading{16.0, 0.0, 0.0, 45.0 * kDegToRad, 1.0};  // u_stab -> roll command, rad
  PidConfig roll{1.0, 0.0, 0.1, 1.0, 1.0};  // roll error (rad) -> asymmetric command
  double pitch_rate_gain = 0.0;  // optional q damping on the symmetric command
};

struct ClassicControllerState {
  PidState longitudinal;
  PidState heading;
  PidState roll;
};

/// De-rotation, longitudinal PID and the heading -> roll cascade.
Action classic_controller_step(const Observation& obs, double dt, const ClassicControllerConfig& cfg,
                               ClassicControllerState& state);

class ClassicController {
 public:
  explicit ClassicController(ClassicControllerConfig cfg = {}) : cfg_(cfg) {}

  void reset() { state_ = {}; }
  Action act(const Observation& obs, double dt) { return classic_controller_step(obs, dt, cfg_, state_); }

  const ClassicControllerConfig& config() const { return cfg_; }

 private:
  ClassicControllerConfig cfg_;
  ClassicControllerState state_;
};

void validate(const PidConfig& cfg, const char* key);

}  // namespace glider
