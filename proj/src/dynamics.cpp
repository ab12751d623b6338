#include "glider/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "glider/errors.hpp"

namespace glider {

StateDerivative state_derivative(const RigidBodyState& s, const Wrench& wrench,
                                 const MassProperties& mp, double gravity) {
  const Dcm body_to_ned = euler_to_dcm(s.attitude);
  const Vec3& v = s.velocity_body;
  const Vec3& w = s.rates_body;

  StateDerivative d;
  d.attitude_dot = euler_rate_matrix(s.attitude) * w;
  d.position_dot = body_to_ned * v;
  const Vec3 gravity_body = body_to_ned.m.transpose() * Vec3(0.0, 0.0, gravity);
  d.velocity_dot = wrench.force_body / mp.mass + gravity_body - w.cross(v);
  d.rates_dot = mp.inertia.llt().solve(wrench.moment_body - w.cross(mp.inertia * w));
  return d;
}

RigidBodyState rk4_step(const RigidBodyState& state, double dt,
                        const WrenchProvider& wrench_provider, const MassProperties& mp,
                        double gravity) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  return rk4_step_with(state, dt, wrench_provider, mp, gravity);
}

RigidBodyState TrimResult::state() const {
  RigidBodyState s;
  s.attitude.theta = pitch;
  s.velocity_body = Vec3(airspeed * std::cos(alpha), 0.0, airspeed * std::sin(alpha));
  return s;
}

namespace {

constexpr double kReferenceSpeed = 10.0;  // m/s, aero evaluated here then scaled by V^2
constexpr double kMinTrimSpeed = 3.0;
constexpr double kMaxTrimSpeed = 60.0;

Wrench still_air_wrench(const GliderModel& g, double alpha, double speed, double rho) {
  RigidBodyState s;
  s.velocity_body = Vec3(speed * std::cos(alpha), 0.0, speed * std::sin(alpha));
  return total_wrench(s, ActuatorState{}, g, Vec3::Zero(), rho);
}

}  // namespace

TrimResult trim_longitudinal(const GliderModel& glider, double rho, double gravity) {
  double stall = std::numeric_limits<double>::infinity();
  for (const auto& s : glider.surfaces) stall = std::min(stall, s.stall_alpha);
  const double lo = -stall * (1.0 - 1e-9);
  const double hi = stall * (1.0 - 1e-9);

  auto pitch_moment = [&](double alpha) {
    return still_air_wrench(glider, alpha, kReferenceSpeed, rho).moment_body.y();
  };

  // Scan for a stable crossing (moment falls through zero as alpha grows).
  constexpr int kScan = 400;
  double a0 = lo, m0 = pitch_moment(lo);
  double bracket_lo = 0.0, bracket_hi = 0.0;
  bool found = false;
  for (int i = 1; i <= kScan; ++i) {
    const double a1 = lo + (hi - lo) * i / kScan;
    const double m1 = pitch_moment(a1);
    if (m0 >= 0.0 && m1 < 0.0) {
      bracket_lo = a0;
      bracket_hi = a1;
      found = true;
      break;
    }
    a0 = a1;
    m0 = m1;
  }
  if (!found) {
    throw NoTrimFound("no statically stable zero-moment incidence in (-stall, stall); "
                      "check tail area and CG position");
  }

  for (int it = 0; it < 200 && bracket_hi - bracket_lo > 1e-15; ++it) {
    const double mid = 0.5 * (bracket_lo + bracket_hi);
    if (pitch_moment(mid) >= 0.0) {
      bracket_lo = mid;
    } else {
      bracket_hi = mid;
    }
  }

  TrimResult t;
  t.alpha = 0.5 * (bracket_lo + bracket_hi);

  // Aero force scales with V^2 at fixed incidence; the weight fixes both the
  // speed and the body pitch that cancels it.
  const Vec3 f = still_air_wrench(glider, t.alpha, kReferenceSpeed, rho).force_body;
  const double weight = glider.mass.mass * gravity;
  t.pitch = std::atan2(f.x(), -f.z());
  t.airspeed = kReferenceSpeed * std::sqrt(weight / std::hypot(f.x(), f.z()));
  t.gamma = t.pitch - t.alpha;

  if (!(t.airspeed > kMinTrimSpeed && t.airspeed < kMaxTrimSpeed)) {
    std::ostringstream msg;
    msg << "trim airspeed " << t.airspeed << " m/s is outside (" << kMinTrimSpeed << ", "
        << kMaxTrimSpeed << ")";
    throw NoTrimFound(msg.str());
  }
  if (std::abs(t.pitch) >= kPi / 2 - kGimbalMargin) throw NoTrimFound("trim pitch is near vertical");

  const double h = 1e-6;
  const double q_ref = 0.5 * rho * kReferenceSpeed * kReferenceSpeed;
  t.cm_alpha = (pitch_moment(t.alpha + h) - pitch_moment(t.alpha - h)) / (2 * h) / q_ref;

  const RigidBodyState s = t.state();
  const Wrench w = total_wrench(s, ActuatorState{}, glider, Vec3::Zero(), rho);
  const StateDerivative d = state_derivative(s, w, glider.mass, gravity);
  t.force_residual = glider.mass.mass * std::hypot(d.velocity_dot.x(), d.velocity_dot.z());
  t.moment_residual = std::abs(w.moment_body.y());
  if (t.force_residual > 1e-6 || t.moment_residual > 1e-6) {
    std::ostringstream msg;
    msg << "trim residuals did not converge (force " << t.force_residual << " N, moment "
        << t.moment_residual << " N m)";
    throw NoTrimFound(msg.str());
  }
  return t;
}

}  // namespace glider
