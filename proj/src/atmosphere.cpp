#include "glider/atmosphere.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "glider/errors.hpp"

namespace glider {

namespace {

constexpr double kMinAirspeed = 0.5;

// Second-order Dryden channel H(s) = sigma sqrt(tau) (1 + sqrt(3) tau s) / (1 + tau s)^2
// driven by unit-intensity white noise, tau = L / V. Stationary output
// variance is sigma^2.
struct SecondOrderChannel {
  Eigen::Matrix2d phi;     // exact state transition over dt
  Eigen::Matrix2d noise;   // Cholesky factor of the discrete noise covariance
  Eigen::RowVector2d out;  // output map
};

SecondOrderChannel second_order(double sigma, double tau, double dt) {
  const double lambda = -1.0 / tau;
  Eigen::Matrix2d a;
  a << 0.0, 1.0, -1.0 / (tau * tau), -2.0 / tau;
  const Eigen::Matrix2d n = a - lambda * Eigen::Matrix2d::Identity();  // nilpotent part

  SecondOrderChannel ch;
  ch.phi = std::exp(lambda * dt) * (Eigen::Matrix2d::Identity() + n * dt);

  // Q = int_0^dt e^{As} B B^T e^{A^T s} ds with e^{As} B = e^{lambda s} (s, 1 - s/tau).
  // Quadrature for short steps where P - Phi P Phi^T would cancel badly.
  static constexpr std::array<double, 5> kNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                                   0.5384693101056831, 0.9061798459386640};
  static constexpr std::array<double, 5> kWeights = {0.2369268850561891, 0.4786286704993665,
                                                     0.5688888888888889, 0.4786286704993665,
                                                     0.2369268850561891};
  Eigen::Matrix2d q = Eigen::Matrix2d::Zero();
  if (dt <= 0.1 * tau) {
    for (std::size_t i = 0; i < kNodes.size(); ++i) {
      const double s = 0.5 * dt * (kNodes[i] + 1.0);
      const Eigen::Vector2d g = std::exp(lambda * s) * Eigen::Vector2d(s, 1.0 - s / tau);
      q += (0.5 * dt * kWeights[i]) * (g * g.transpose());
    }
  } else {
    // Long steps: difference of stationary covariances.
    Eigen::Matrix2d p = Eigen::Matrix2d::Zero();
    p(0, 0) = tau * tau * tau / 4.0;
    p(1, 1) = tau / 4.0;
    q = p - ch.phi * p * ch.phi.transpose();
  }
  ch.noise = Eigen::Matrix2d::Zero();
  ch.noise(0, 0) = std::sqrt(std::max(q(0, 0), 0.0));
  if (ch.noise(0, 0) > 0.0) {
    ch.noise(1, 0) = q(1, 0) / ch.noise(0, 0);
    ch.noise(1, 1) = std::sqrt(std::max(q(1, 1) - ch.noise(1, 0) * ch.noise(1, 0), 0.0));
  } else {
    ch.noise(1, 1) = std::sqrt(std::max(q(1, 1), 0.0));
  }
  const double gain = sigma * std::sqrt(tau);
  ch.out << gain / (tau * tau), gain * std::sqrt(3.0) / tau;
  return ch;
}

}  // namespace

Vec3 dryden_step(DrydenState& st, const WindConfig& cfg, double airspeed, double dt) {
  if (!cfg.turbulence_enabled) return Vec3::Zero();
  if (!(dt > 0.0)) throw DomainError("Dryden step needs dt > 0");
  const double v = std::max(airspeed, kMinAirspeed);
  std::normal_distribution<double> normal(0.0, 1.0);

  const double a_u = std::exp(-dt * v / cfg.scale_lengths.x());
  st.u = a_u * st.u + std::sqrt(1.0 - a_u * a_u) * normal(st.rng);

  const auto vc = second_order(cfg.turbulence_intensity.y(), cfg.scale_lengths.y() / v, dt);
  Eigen::Vector2d nv;
  nv.x() = normal(st.rng);
  nv.y() = normal(st.rng);
  st.v = vc.phi * st.v + vc.noise * nv;

  const auto wc = second_order(cfg.turbulence_intensity.z(), cfg.scale_lengths.z() / v, dt);
  Eigen::Vector2d nw;
  nw.x() = normal(st.rng);
  nw.y() = normal(st.rng);
  st.w = wc.phi * st.w + wc.noise * nw;

  return Vec3(cfg.turbulence_intensity.x() * st.u, vc.out * st.v, wc.out * st.w);
}

Vec3 wind_at(const WindConfig& cfg, const Vec3& gust_ned) { return cfg.mean_wind_ned + gust_ned; }

void validate(const WindConfig& cfg) {
  if (!cfg.mean_wind_ned.allFinite()) throw ConfigError("wind.mean_ned_mps", "must be finite");
  if ((cfg.turbulence_intensity.array() < 0.0).any() || !cfg.turbulence_intensity.allFinite()) {
    throw ConfigError("wind.turbulence.intensity_mps", "must be >= 0");
  }
  if (cfg.turbulence_enabled && !((cfg.scale_lengths.array() > 0.0).all())) {
    throw ConfigError("wind.turbulence.scale_lengths_m", "must be > 0 when turbulence is enabled");
  }
}

}  // namespace glider
