#pragma once

#include <string>
#include <vector>

#include "glider/frames.hpp"
#include "glider/state.hpp"

namespace glider {

// Geometry and coefficients of one lifting surface.
struct LiftingSurface {
  std::string name;
  SurfaceMounting mounting;
  double area = 0.0;          // m^2
  double chord = 0.0;         // m
  double aspect_ratio = 0.0;  // -
  double cl0 = 0.0;
  double cd0 = 0.0;
  double cm0 = 0.0;
  double oswald = 0.75;
  double stall_alpha = 15.0 * kDegToRad;
  // Weight of the asymmetric (roll) command on an all-moving surface.
  int deflection_sign = 0;
};

struct FuselageDrag {
  double form_factor = 0.0;
  double skin_friction = 0.0;
  double wet_area = 0.0;  // m^2
  double ref_area = 0.0;  // m^2
};

struct GliderModel {
  std::string name = "glider";
  MassProperties mass;
  std::vector<LiftingSurface> surfaces;
  FuselageDrag fuselage;
  double actuator_limit = 20.0 * kDegToRad;  // per-surface deflection limit, rad
};

struct LocalAirflow {
  Vec3 velocity_wing = Vec3::Zero();  // surface velocity through the air, wing frame
  double alpha = 0.0;
  double beta = 0.0;
  double dynamic_pressure = 0.0;  // Pa
  double deflection = 0.0;        // rad, hinge rotation used to build the frame
};

struct Wrench {
  Vec3 force_body = Vec3::Zero();   // N
  Vec3 moment_body = Vec3::Zero();  // N m about CG

  Wrench& operator+=(const Wrench& o) {
    force_body += o.force_body;
    moment_body += o.moment_body;
    return *this;
  }
};

struct SurfaceCoefficients {
  double cl = 0.0;
  double cd = 0.0;
  double cm = 0.0;
};

/// 3-D lift-curve slope per radian for a finite wing. Throws DomainError for
/// aspect_ratio <= 0.
double lift_slope(double aspect_ratio);

/// Linear lift below stall, |C_L| held at its stall value beyond it; drag is
/// profile plus induced drag of the (clamped) lift.
SurfaceCoefficients surface_coefficients(double alpha, const LiftingSurface& surface);

double fuselage_drag_coefficient(const FuselageDrag& fus);

/// Wing frame (including any hinge deflection) -> body frame.
Dcm wing_to_body(const SurfaceMounting& mounting, double deflection);

/// Airflow seen at a surface's neutral point. Throws DegenerateAirflow when
/// the forward component in the wing frame is <= 0.1 m/s.
LocalAirflow local_airflow(const Vec3& v_body, const Vec3& omega_body,
                           const SurfaceMounting& mounting, const Vec3& wind_body,
                           double rho, double deflection);

/// Lift, drag and pitching moment of one surface expressed in body axes about
/// the CG.
Wrench surface_wrench(const LocalAirflow& flow, const LiftingSurface& surface);

/// Deflection actually applied to one surface for a given command, after
/// elevon mixing and clamping. Fixed surfaces always return 0.
double surface_deflection(const LiftingSurface& surface, const ActuatorState& controls,
                          double limit);

/// Pure fuselage drag, anti-parallel to the airflow at the CG.
Wrench fuselage_wrench(const Vec3& air_velocity_body, const FuselageDrag& fus, double rho);

/// Whole-glider aerodynamic wrench about the CG.
Wrench total_wrench(const RigidBodyState& state, const ActuatorState& controls,
                    const GliderModel& glider, const Vec3& wind_body, double rho);

/// Throws ConfigError naming the first violated invariant.
void validate(const LiftingSurface& surface);
void validate(const GliderModel& glider);

}  // namespace glider
