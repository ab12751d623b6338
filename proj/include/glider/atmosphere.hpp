#pragma once

#include <cstdint>
#include <random>

#include "glider/frames.hpp"

namespace glider {

struct WindConfig {
  Vec3 mean_wind_ned = Vec3::Zero();                     // m/s
  Vec3 turbulence_intensity = Vec3(1.06, 1.06, 0.7);     // sigma_u, sigma_v, sigma_w, m/s
  Vec3 scale_lengths = Vec3(200.0, 200.0, 50.0);         // L_u, L_v, L_w, m
  bool turbulence_enabled = false;
};

// Per-environment Dryden filter memory. The u channel is a first-order
// shaping filter kept at unit variance; v and w are second-order filters in
// controllable canonical form.
struct DrydenState {
  double u = 0.0;
  Eigen::Vector2d v = Eigen::Vector2d::Zero();
  Eigen::Vector2d w = Eigen::Vector2d::Zero();
  std::mt19937_64 rng;

  DrydenState() = default;
  explicit DrydenState(std::uint64_t seed) : rng(seed) {}
};

/// Advances the shaping filters by dt and returns the gust in NED. Airspeed
/// below 0.5 m/s is raised to 0.5 m/s. Zero intensity gives exactly zero.
Vec3 dryden_step(DrydenState& state, const WindConfig& cfg, double airspeed, double dt);

/// Mean wind plus gust, NED.
Vec3 wind_at(const WindConfig& cfg, const Vec3& gust_ned);

void validate(const WindConfig& cfg);

}  // namespace glider
