#pragma once

#include <filesystem>
#include <memory>
#include <random>

#include "glider/config.hpp"

namespace glider::test {

inline std::filesystem::path config_dir() { return GLIDER_CONFIG_DIR; }
inline std::filesystem::path fixture_dir() { return GLIDER_FIXTURE_DIR; }

inline const GliderModel& default_glider() {
  static const GliderModel g = load_glider(config_dir() / "default_glider.json");
  return g;
}

inline ScenarioConfig calm_scenario() { return load_scenario(config_dir() / "calm.json").env; }

inline EulerAngles random_attitude(std::mt19937_64& rng, double margin = 1e-2) {
  std::uniform_real_distribution<double> roll(-kPi + 1e-9, kPi);
  std::uniform_real_distribution<double> pitch(-kPi / 2 + margin, kPi / 2 - margin);
  return {roll(rng), pitch(rng), roll(rng)};
}

inline Vec3 random_vec(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> d(-scale, scale);
  const double x = d(rng), y = d(rng), z = d(rng);
  return {x, y, z};
}

}  // namespace glider::test

#include "glider/dynamics.hpp"

namespace glider::test {

// Torque-driven spin-up of a tumbling body; the rates couple through the
// gyroscopic term so the solution has no closed form.
inline RigidBodyState spin_up(double dt, double duration = 1.0) {
  const MassProperties mp;
  RigidBodyState s;
  s.velocity_body = Vec3(10.0, 0.0, 0.0);
  s.rates_body = Vec3(2.0, -1.0, 0.5);
  auto torque = [](const RigidBodyState&) { return Wrench{Vec3::Zero(), Vec3(0.01, 0.02, -0.015)}; };
  const int steps = static_cast<int>(std::lround(duration / dt));
  for (int i = 0; i < steps; ++i) s = rk4_step_with(s, dt, torque, mp, 0.0);
  return s;
}

inline double state_distance(const RigidBodyState& a, const RigidBodyState& b) {
  const Mat3 da = euler_to_dcm(a.attitude).m - euler_to_dcm(b.attitude).m;
  return std::max({(a.position_ned - b.position_ned).cwiseAbs().maxCoeff(),
                   (a.velocity_body - b.velocity_body).cwiseAbs().maxCoeff(),
                   (a.rates_body - b.rates_body).cwiseAbs().maxCoeff(), da.cwiseAbs().maxCoeff()});
}

}  // namespace glider::test
