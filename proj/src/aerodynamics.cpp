#include "glider/aerodynamics.hpp"

#include <algorithm>
#include <cmath>

#include "glider/errors.hpp"

namespace glider {

namespace {

constexpr double kMinForwardFlow = 0.1;  // m/s

}  // namespace

double lift_slope(double aspect_ratio) {
  if (!(aspect_ratio > 0.0)) {
    throw DomainError("aspect ratio must be positive, got " + std::to_string(aspect_ratio));
  }
  const double half = aspect_ratio / 2.0;
  return kPi * aspect_ratio / (1.0 + std::sqrt(1.0 + half * half));
}

SurfaceCoefficients surface_coefficients(double alpha, const LiftingSurface& s) {
  const double a = std::clamp(alpha, -s.stall_alpha, s.stall_alpha);
  SurfaceCoefficients c;
  c.cl = s.cl0 + lift_slope(s.aspect_ratio) * a;
  c.cd = s.cd0 + c.cl * c.cl / (kPi * s.oswald * s.aspect_ratio);
  c.cm = s.cm0;
  return c;
}

double fuselage_drag_coefficient(const FuselageDrag& fus) {
  return fus.form_factor * fus.skin_friction * fus.wet_area / fus.ref_area;
}

Dcm wing_to_body(const SurfaceMounting& mounting, double deflection) {
  Dcm w2b = mounting.orientation_body.transpose();
  if (mounting.hinge && deflection != 0.0) {
    w2b = w2b * euler_to_dcm({0.0, deflection, 0.0});
  }
  return w2b;
}

LocalAirflow local_airflow(const Vec3& v_body, const Vec3& omega_body,
                           const SurfaceMounting& mounting, const Vec3& wind_body,
                           double rho, double deflection) {
  const Vec3 point_air = v_body + omega_body.cross(mounting.position_body) - wind_body;
  LocalAirflow flow;
  flow.deflection = mounting.hinge ? deflection : 0.0;
  flow.velocity_wing = wing_to_body(mounting, flow.deflection).m.transpose() * point_air;
  const double u = flow.velocity_wing.x();
  if (!(u > kMinForwardFlow)) {
    throw DegenerateAirflow("forward airflow " + std::to_string(u) + " m/s is below " +
                            std::to_string(kMinForwardFlow) + " m/s");
  }
  const double speed = flow.velocity_wing.norm();
  flow.alpha = std::atan2(flow.velocity_wing.z(), u);
  flow.beta = std::asin(std::clamp(flow.velocity_wing.y() / speed, -1.0, 1.0));
  flow.dynamic_pressure = 0.5 * rho * speed * speed;
  return flow;
}

Wrench surface_wrench(const LocalAirflow& flow, const LiftingSurface& surface) {
  Wrench out;
  if (flow.dynamic_pressure <= 0.0) return out;

  const SurfaceCoefficients c = surface_coefficients(flow.alpha, surface);
  const double qs = flow.dynamic_pressure * surface.area;
  // Wind frame: drag along -x_S, lift along -z_S, pitching moment about y_S.
  const Vec3 force_wind(-qs * c.cd, 0.0, -qs * c.cl);
  const Vec3 moment_wind(0.0, qs * surface.chord * c.cm, 0.0);

  const Dcm wind_to_body =
      wing_to_body(surface.mounting, flow.deflection) * wind_frame_dcm(flow.alpha, flow.beta).transpose();
  out.force_body = wind_to_body * force_wind;
  out.moment_body = wind_to_body * moment_wind +
                    surface.mounting.position_body.cross(out.force_body);
  return out;
}

double surface_deflection(const LiftingSurface& surface, const ActuatorState& controls,
                          double limit) {
  if (!surface.mounting.hinge) return 0.0;
  const double raw = controls.delta_el + surface.deflection_sign * controls.delta_ail;
  return std::clamp(raw, -limit, limit);
}

Wrench fuselage_wrench(const Vec3& air_velocity_body, const FuselageDrag& fus, double rho) {
  Wrench out;
  const double speed = air_velocity_body.norm();
  if (speed <= 0.0) return out;
  const double q = 0.5 * rho * speed * speed;
  out.force_body = -(q * fus.ref_area * fuselage_drag_coefficient(fus) / speed) * air_velocity_body;
  return out;
}

Wrench total_wrench(const RigidBodyState& state, const ActuatorState& controls,
                    const GliderModel& glider, const Vec3& wind_body, double rho) {
  Wrench total;
  for (const auto& s : glider.surfaces) {
    const double delta = surface_deflection(s, controls, glider.actuator_limit);
    try {
      const LocalAirflow flow =
          local_airflow(state.velocity_body, state.rates_body, s.mounting, wind_body, rho, delta);
      total += surface_wrench(flow, s);
    } catch (const DegenerateAirflow& e) {
      throw DegenerateAirflow("surface '" + s.name + "': " + e.what());
    }
  }
  total += fuselage_wrench(state.velocity_body - wind_body, glider.fuselage, rho);
  return total;
}

void validate(const LiftingSurface& s) {
  const std::string key = "surfaces." + s.name;
  if (!(s.area > 0.0)) throw ConfigError(key + ".area_m2", "must be > 0");
  if (!(s.chord > 0.0)) throw ConfigError(key + ".chord_m", "must be > 0");
  if (!(s.aspect_ratio > 0.0)) throw ConfigError(key + ".aspect_ratio", "must be > 0");
  if (!(s.oswald > 0.0 && s.oswald <= 1.0)) throw ConfigError(key + ".oswald", "must be in (0, 1]");
  if (!(s.stall_alpha > 0.0 && s.stall_alpha < kPi / 2)) {
    throw ConfigError(key + ".stall_alpha_deg", "must be in (0, 90) degrees");
  }
  if (s.deflection_sign < -1 || s.deflection_sign > 1) {
    throw ConfigError(key + ".deflection_sign", "must be -1, 0 or +1");
  }
  if (!is_orthonormal(s.mounting.orientation_body)) {
    throw ConfigError(key + ".mount_euler_deg", "mounting orientation is not a rotation");
  }
}

void validate(const GliderModel& g) {
  if (!(g.mass.mass > 0.0)) throw ConfigError("mass_kg", "must be > 0");
  const Mat3& i = g.mass.inertia;
  if ((i - i.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ConfigError("inertia_diag_kgm2", "must be symmetric");
  }
  Eigen::LLT<Mat3> llt(i);
  if (llt.info() != Eigen::Success) throw ConfigError("inertia_diag_kgm2", "must be positive definite");
  if (g.surfaces.empty()) throw ConfigError("surfaces", "at least one lifting surface is required");
  for (const auto& s : g.surfaces) validate(s);
  const auto& f = g.fuselage;
  if (!(f.form_factor > 0.0)) throw ConfigError("fuselage.form_factor", "must be > 0");
  if (!(f.skin_friction > 0.0)) throw ConfigError("fuselage.skin_friction", "must be > 0");
  if (!(f.wet_area > 0.0)) throw ConfigError("fuselage.wet_area_m2", "must be > 0");
  if (!(f.ref_area > 0.0)) throw ConfigError("fuselage.ref_area_m2", "must be > 0");
  if (!(g.actuator_limit > 0.0 && g.actuator_limit < kPi / 2)) {
    throw ConfigError("actuator_limit_deg", "must be in (0, 90) degrees");
  }
}

}  // namespace glider
