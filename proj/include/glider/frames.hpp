#pragma once

#include <optional>

#include <Eigen/Dense>

namespace glider {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;

// Pitch magnitude at which Euler kinematics are declared singular.
inline constexpr double kGimbalMargin = 1e-3;

// ZYX (yaw, pitch, roll) Euler angles, radians.
struct EulerAngles {
  double phi = 0.0;    // roll, (-pi, pi]
  double theta = 0.0;  // pitch, (-pi/2, pi/2)
  double psi = 0.0;    // yaw, (-pi, pi]
};

// Proper rotation matrix. A Dcm named `a_to_b` maps coordinates of a vector
// expressed in frame a into frame b: v_b = a_to_b.m * v_a.
struct Dcm {
  Mat3 m = Mat3::Identity();

  Vec3 operator*(const Vec3& v) const { return m * v; }
  Dcm operator*(const Dcm& other) const { return Dcm{m * other.m}; }
  Dcm transpose() const { return Dcm{m.transpose()}; }

  static Dcm identity() { return Dcm{}; }
};

enum class HingeAxis { kY };

// Placement of one lifting surface relative to the centre of gravity.
struct SurfaceMounting {
  Vec3 position_body = Vec3::Zero();  // neutral point relative to CG, m
  Dcm orientation_body;               // body -> wing frame at zero deflection
  std::optional<HingeAxis> hinge;     // set for all-moving surfaces
};

/// Body -> NED rotation for ZYX Euler angles.
Dcm euler_to_dcm(const EulerAngles& angles);

/// Inverse of euler_to_dcm on the invariant ranges.
EulerAngles dcm_to_euler(const Dcm& body_to_ned);

/// H(Theta) such that Euler rates = H * body rates. Throws GimbalLock when
/// |theta| >= pi/2 - kGimbalMargin.
Mat3 euler_rate_matrix(const EulerAngles& angles);

/// skew(w) * v == w x v.
Mat3 skew(const Vec3& omega);

/// Wing -> wind frame rotation for local incidence alpha_s and sideslip
/// beta_s: rotate about y_W by alpha_s, then about the rotated z by beta_s.
/// The resulting x_S points along the surface's velocity through the air
/// (against the stream), z_S stays in the x_W/z_W plane.
Dcm wind_frame_dcm(double alpha_s, double beta_s);

/// Wraps to (-pi, pi].
double wrap_pi(double angle);

/// Maps arbitrary angles onto the EulerAngles invariant ranges, folding a
/// pitch that crossed +-pi/2 back with a roll/yaw flip.
EulerAngles normalize(const EulerAngles& angles);

bool is_orthonormal(const Dcm& dcm, double tol = 1e-9);

}  // namespace glider
