#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string_view>

#include "glider/aerodynamics.hpp"
#include "glider/atmosphere.hpp"
#include "glider/dynamics.hpp"
#include "glider/seeker.hpp"

namespace glider {

// Normalization of the body rates in the observation.
inline constexpr double kMaxObservedRate = 2.0 * kPi;  // rad/s

struct Observation {
  double phi_n = 0.0;
  double theta_n = 0.0;
  double p_n = 0.0;
  double q_n = 0.0;
  double u_cam = 0.0;
  double v_cam = 0.0;

  std::array<double, 6> as_array() const { return {phi_n, theta_n, p_n, q_n, u_cam, v_cam}; }
  bool operator==(const Observation&) const = default;
};

struct Action {
  double delta_el_n = 0.0;
  double delta_ail_n = 0.0;

  /// Components clamped to [-1, 1]; NaN maps to 0.
  Action clamped() const;
};

struct RewardWeights {
  double w1 = 1.0;  // line-of-sight error
  double w2 = 0.1;  // symmetric deflection
  double w3 = 0.1;  // asymmetric deflection
};

// Table-I style initial-condition distribution. The target sits on the
// ground; the glider is placed `range` metres from it horizontally on a
// bearing `cone` from north, at `altitude = altitude_ratio * range +- half`.
struct InitDistribution {
  double range_mean = 150.0;          // m
  double range_half_width = 50.0;     // m
  double cone_half_width = 45.0 * kDegToRad;  // rad, mean 0
  double altitude_ratio = 0.5;
  double altitude_half_width = 20.0;  // m
  double roll = 0.0;                  // rad
  double heading = 0.0;               // rad
  Vec3 target_ned = Vec3::Zero();
};

struct ScenarioConfig {
  std::shared_ptr<const GliderModel> glider;
  InitDistribution init;
  WindConfig wind;
  SeekerModel seeker = SeekerModel::from_fov(120.0 * kDegToRad, 640.0, 480.0);
  RewardWeights weights;
  double max_duration = 60.0;          // s
  double dt = kDefaultDt;              // s
  double rho = kSeaLevelRho;           // kg/m^3
  double gravity = kGravity;           // m/s^2
  double actuator_scale = 20.0 * kDegToRad;  // rad per unit normalized command
  double target_lost_penalty = 10.0;
  int max_reset_attempts = 100;
  std::uint64_t seed = 0;
};

void validate(const ScenarioConfig& cfg);

enum class TerminationCause { kNone, kImpact, kTargetLost, kGimbalFault, kAirflowFault };

std::string_view to_string(TerminationCause cause);

struct StepInfo {
  double time = 0.0;  // s since reset
  std::int64_t step = 0;
  RigidBodyState state;
  ActuatorState actuators;  // de-normalized command, rad
  ImagePoint image;
  Vec3 wind_ned = Vec3::Zero();
  std::optional<Vec3> impact_ned;  // ground crossing, interpolated within the step
  double horizontal_miss = 0.0;    // current horizontal distance to the target, m
};

struct ResetInfo {
  double range = 0.0;     // m
  double cone = 0.0;      // rad
  double altitude = 0.0;  // m above ground
  int attempts = 0;
  TrimResult trim;
  StepInfo step;
};

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool terminated = false;
  bool truncated = false;
  TerminationCause cause = TerminationCause::kNone;
  StepInfo info;
};

/// Normalized observation of the flight state and camera measurement.
Observation observe(const RigidBodyState& state, const ImagePoint& image);

/// -(w1 * |image offset| + w2 * el^2 + w3 * ail^2) with the normalized action.
double reward(const ImagePoint& image, const Action& action_n, const RewardWeights& weights);

/// Point where the straight segment before -> after reaches z = ground_z.
Vec3 ground_crossing(const Vec3& before, const Vec3& after, double ground_z);

/// sum_i gamma^i r_i. Throws DomainError unless 0 <= gamma < 1.
double discounted_return(std::span<const double> rewards, double gamma);

// One episodic simulation instance. Not thread-safe; independent instances
// share nothing mutable and may run concurrently.
class Environment {
 public:
  explicit Environment(ScenarioConfig cfg);

  /// Throws InfeasibleScenario when no visible start is drawn within
  /// max_reset_attempts.
  std::pair<Observation, ResetInfo> reset(std::uint64_t seed);

  /// Throws StepAfterTermination when called before reset or after the
  /// episode ended.
  StepResult step(const Action& action);

  const ScenarioConfig& config() const { return cfg_; }
  const TrimResult& trim() const { return trim_; }
  const RigidBodyState& state() const { return state_; }
  double time() const { return static_cast<double>(steps_) * cfg_.dt; }
  bool done() const { return done_; }

  /// Places the glider at an explicit pose (trimmed speed, wings level
  /// unless overridden) without drawing from the distribution.
  std::pair<Observation, ResetInfo> reset_to(const RigidBodyState& state, std::uint64_t seed);

 private:
  ImagePoint measure(const RigidBodyState& s);
  StepInfo make_info(const ImagePoint& image) const;

  ScenarioConfig cfg_;
  TrimResult trim_;
  RigidBodyState state_;
  ActuatorState actuators_;
  DrydenState dryden_;
  Vec3 gust_ned_ = Vec3::Zero();
  std::mt19937_64 noise_rng_;
  std::int64_t steps_ = 0;
  bool reset_ = false;
  bool done_ = false;
};

}  // namespace glider
