#include "glider/frames.hpp"

#include <algorithm>
#include <cmath>

#include "glider/errors.hpp"

namespace glider {

Dcm euler_to_dcm(const EulerAngles& a) {
  const double cf = std::cos(a.phi), sf = std::sin(a.phi);
  const double ct = std::cos(a.theta), st = std::sin(a.theta);
  const double cp = std::cos(a.psi), sp = std::sin(a.psi);
  Dcm out;
  out.m << ct * cp, sf * st * cp - cf * sp, cf * st * cp + sf * sp,  //
      ct * sp, sf * st * sp + cf * cp, cf * st * sp - sf * cp,       //
      -st, sf * ct, cf * ct;
  return out;
}

EulerAngles dcm_to_euler(const Dcm& c) {
  const double s = std::clamp(-c.m(2, 0), -1.0, 1.0);
  EulerAngles a;
  a.theta = std::asin(s);
  a.phi = wrap_pi(std::atan2(c.m(2, 1), c.m(2, 2)));
  a.psi = wrap_pi(std::atan2(c.m(1, 0), c.m(0, 0)));
  return a;
}

Mat3 euler_rate_matrix(const EulerAngles& a) {
  if (std::abs(a.theta) >= kPi / 2 - kGimbalMargin) {
    throw GimbalLock("pitch " + std::to_string(a.theta) +
                     " rad is inside the Euler singularity band");
  }
  const double cf = std::cos(a.phi), sf = std::sin(a.phi);
  const double ct = std::cos(a.theta), tt = std::tan(a.theta);
  Mat3 h;
  h << 1.0, sf * tt, cf * tt,  //
      0.0, cf, -sf,            //
      0.0, sf / ct, cf / ct;
  return h;
}

Mat3 skew(const Vec3& w) {
  Mat3 s;
  s << 0.0, -w.z(), w.y(),  //
      w.z(), 0.0, -w.x(),   //
      -w.y(), w.x(), 0.0;
  return s;
}

Dcm wind_frame_dcm(double alpha_s, double beta_s) {
  const double ca = std::cos(alpha_s), sa = std::sin(alpha_s);
  const double cb = std::cos(beta_s), sb = std::sin(beta_s);
  // Columns are the S axes written in W.
  Mat3 s_in_w;
  s_in_w << ca * cb, -ca * sb, -sa,  //
      sb, cb, 0.0,                   //
      sa * cb, -sa * sb, ca;
  return Dcm{s_in_w.transpose()};
}

double wrap_pi(double angle) {
  double r = std::remainder(angle, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

EulerAngles normalize(const EulerAngles& a) {
  EulerAngles out{wrap_pi(a.phi), wrap_pi(a.theta), wrap_pi(a.psi)};
  if (out.theta > kPi / 2) {
    out.theta = kPi - out.theta;
    out.phi = wrap_pi(out.phi + kPi);
    out.psi = wrap_pi(out.psi + kPi);
  } else if (out.theta < -kPi / 2) {
    out.theta = -kPi - out.theta;
    out.phi = wrap_pi(out.phi + kPi);
    out.psi = wrap_pi(out.psi + kPi);
  }
  return out;
}

bool is_orthonormal(const Dcm& dcm, double tol) {
  const Mat3 e = dcm.m.transpose() * dcm.m - Mat3::Identity();
  return e.cwiseAbs().maxCoeff() <= tol && std::abs(dcm.m.determinant() - 1.0) <= tol;
}

}  // namespace glider
