#pragma once

#include <functional>

#include "glider/aerodynamics.hpp"
#include "glider/state.hpp"

namespace glider {

inline constexpr double kGravity = 9.81;     // m/s^2
inline constexpr double kDefaultDt = 0.01;   // s, 100 Hz
inline constexpr double kSeaLevelRho = 1.225;  // kg/m^3

struct StateDerivative {
  Vec3 position_dot = Vec3::Zero();
  Vec3 attitude_dot = Vec3::Zero();  // (phi, theta, psi) rates
  Vec3 velocity_dot = Vec3::Zero();
  Vec3 rates_dot = Vec3::Zero();
};

using WrenchProvider = std::function<Wrench(const RigidBodyState&)>;

/// Flat-earth 6-DOF equations of motion. Gravity acts along +z NED and is
/// rotated into the body frame with the transpose of the body->NED DCM.
StateDerivative state_derivative(const RigidBodyState& state, const Wrench& wrench,
                                 const MassProperties& mp, double gravity = kGravity);

/// One classical Runge-Kutta step. The wrench is re-evaluated at each of the
/// four stages; attitude is re-wrapped to its invariant ranges afterwards.
RigidBodyState rk4_step(const RigidBodyState& state, double dt,
                        const WrenchProvider& wrench_provider, const MassProperties& mp,
                        double gravity = kGravity);

/// Same, without type-erasing the provider.
template <typename Provider>
RigidBodyState rk4_step_with(const RigidBodyState& state, double dt, Provider&& provider,
                             const MassProperties& mp, double gravity = kGravity);

struct TrimResult {
  double airspeed = 0.0;  // m/s
  double pitch = 0.0;     // rad
  double gamma = 0.0;     // flight-path angle, rad (negative when descending)
  double alpha = 0.0;     // rad
  double force_residual = 0.0;   // N, |longitudinal force imbalance|
  double moment_residual = 0.0;  // N m, |pitch moment|
  double cm_alpha = 0.0;         // dM/dalpha per unit dynamic pressure, must be < 0

  RigidBodyState state() const;
};

/// Wings-level steady glide with zero elevon deflection in still air.
/// Throws NoTrimFound when no stable equilibrium exists inside
/// alpha in (-stall, stall), V in (3, 60) m/s.
TrimResult trim_longitudinal(const GliderModel& glider, double rho = kSeaLevelRho,
                             double gravity = kGravity);

// ---------------------------------------------------------------------------

namespace detail {

inline RigidBodyState advance(const RigidBodyState& s, const StateDerivative& d, double h) {
  RigidBodyState out;
  out.position_ned = s.position_ned + h * d.position_dot;
  out.attitude = {s.attitude.phi + h * d.attitude_dot.x(), s.attitude.theta + h * d.attitude_dot.y(),
                  s.attitude.psi + h * d.attitude_dot.z()};
  out.velocity_body = s.velocity_body + h * d.velocity_dot;
  out.rates_body = s.rates_body + h * d.rates_dot;
  return out;
}

}  // namespace detail

template <typename Provider>
RigidBodyState rk4_step_with(const RigidBodyState& s, double dt, Provider&& provider,
                             const MassProperties& mp, double gravity) {
  const StateDerivative k1 = state_derivative(s, provider(s), mp, gravity);
  const RigidBodyState s2 = detail::advance(s, k1, dt / 2);
  const StateDerivative k2 = state_derivative(s2, provider(s2), mp, gravity);
  const RigidBodyState s3 = detail::advance(s, k2, dt / 2);
  const StateDerivative k3 = state_derivative(s3, provider(s3), mp, gravity);
  const RigidBodyState s4 = detail::advance(s, k3, dt);
  const StateDerivative k4 = state_derivative(s4, provider(s4), mp, gravity);

  StateDerivative sum;
  sum.position_dot = (k1.position_dot + 2 * k2.position_dot + 2 * k3.position_dot + k4.position_dot) / 6;
  sum.attitude_dot = (k1.attitude_dot + 2 * k2.attitude_dot + 2 * k3.attitude_dot + k4.attitude_dot) / 6;
  sum.velocity_dot = (k1.velocity_dot + 2 * k2.velocity_dot + 2 * k3.velocity_dot + k4.velocity_dot) / 6;
  sum.rates_dot = (k1.rates_dot + 2 * k2.rates_dot + 2 * k3.rates_dot + k4.rates_dot) / 6;

  RigidBodyState out = detail::advance(s, sum, dt);
  out.attitude = normalize(out.attitude);
  return out;
}

}  // namespace glider
