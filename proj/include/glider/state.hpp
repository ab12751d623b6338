#pragma once

#include "glider/frames.hpp"

namespace glider {

inline constexpr double kDegToRad = kPi / 180.0;

// Flat-earth rigid-body state of the glider.
struct RigidBodyState {
  Vec3 position_ned = Vec3::Zero();  // m, z positive down
  EulerAngles attitude;
  Vec3 velocity_body = Vec3::Zero();  // m/s, (u, v, w)
  Vec3 rates_body = Vec3::Zero();     // rad/s, (p, q, r)
};

struct MassProperties {
  double mass = 0.30;  // kg
  Mat3 inertia = Eigen::Vector3d(3e-3, 6e-3, 8e-3).asDiagonal();  // kg m^2
};

// Elevon command in radians. Symmetric part pitches, asymmetric part rolls.
struct ActuatorState {
  double delta_el = 0.0;
  double delta_ail = 0.0;
};

}  // namespace glider
