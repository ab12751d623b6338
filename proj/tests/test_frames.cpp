#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "glider/errors.hpp"
#include "support.hpp"

using namespace glider;
using doctest::Approx;

TEST_CASE("euler_to_dcm: level attitude is the identity") {
  CHECK(euler_to_dcm({0, 0, 0}).m.isApprox(Mat3::Identity(), 1e-15));
}

TEST_CASE("euler_to_dcm: 90 degree yaw sends body x to east") {
  const Vec3 v = euler_to_dcm({0, 0, kPi / 2}) * Vec3::UnitX();
  CHECK(v.x() == Approx(0.0).epsilon(1e-15));
  CHECK(v.y() == Approx(1.0));
  CHECK(v.z() == Approx(0.0).epsilon(1e-15));
}

TEST_CASE("euler_to_dcm: positive pitch raises the nose") {
  const Vec3 v = euler_to_dcm({0, 0.3, 0}) * Vec3::UnitX();
  CHECK(v.z() == Approx(-std::sin(0.3)));
}

TEST_CASE("euler_to_dcm: orthonormal for random attitudes") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const Dcm b = euler_to_dcm(test::random_attitude(rng));
    CHECK((b.m.transpose() * b.m - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(b.m.determinant() == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("dcm_to_euler inverts euler_to_dcm") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const EulerAngles a = test::random_attitude(rng);
    const EulerAngles b = dcm_to_euler(euler_to_dcm(a));
    CHECK(b.phi == Approx(a.phi).epsilon(1e-9));
    CHECK(b.theta == Approx(a.theta).epsilon(1e-9));
    CHECK(b.psi == Approx(a.psi).epsilon(1e-9));
  }
}

TEST_CASE("euler_rate_matrix") {
  CHECK(euler_rate_matrix({0, 0, 0}).isApprox(Mat3::Identity(), 1e-15));
  CHECK(euler_rate_matrix({0, 1.0, 0})(0, 2) == Approx(1.5574077246549023));
  CHECK_THROWS_AS(euler_rate_matrix({0, kPi / 2 - 1e-6, 0}), GimbalLock);
  CHECK_THROWS_AS(euler_rate_matrix({0, -(kPi / 2 - 1e-4), 0}), GimbalLock);
  CHECK_NOTHROW(euler_rate_matrix({0, kPi / 2 - 2e-3, 0}));
}

TEST_CASE("skew") {
  CHECK(skew(Vec3::Zero()).isZero());
  const Vec3 c = skew({0, 1, 0}) * Vec3(-0.5, 0, 0);
  CHECK(c.isApprox(Vec3(0, 0, 0.5), 1e-15));

  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 w = test::random_vec(rng, 5.0), v = test::random_vec(rng, 5.0);
    CHECK((skew(w) + skew(w).transpose()).isZero());
    CHECK((skew(w) * v - w.cross(v)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("wind_frame_dcm") {
  CHECK(wind_frame_dcm(0, 0).m.isApprox(Mat3::Identity(), 1e-15));

  // Pure pitch rotation: the z column tilts by alpha in the x-z plane.
  const Mat3 m = wind_frame_dcm(0.1, 0).m;
  CHECK(std::abs(m(1, 2)) < 1e-15);
  CHECK(std::acos(std::clamp(m(2, 2), -1.0, 1.0)) == Approx(0.1));

  // Lift (-z_S) is perpendicular to the relative flow.
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> a(-0.5, 0.5);
  for (int i = 0; i < 100; ++i) {
    const double alpha = a(rng), beta = a(rng);
    const Vec3 flow(std::cos(alpha) * std::cos(beta), std::sin(beta), std::sin(alpha) * std::cos(beta));
    const Vec3 lift_w = wind_frame_dcm(alpha, beta).m.transpose() * Vec3(0, 0, -1);
    CHECK(std::abs(lift_w.dot(flow)) < 1e-12);
    CHECK(is_orthonormal(wind_frame_dcm(alpha, beta)));
  }
}

TEST_CASE("wrap_pi and normalize") {
  CHECK(wrap_pi(3 * kPi / 2) == Approx(-kPi / 2));
  CHECK(wrap_pi(-kPi) == Approx(kPi));
  CHECK(wrap_pi(0.25) == 0.25);

  // Pitch past vertical folds back with roll and yaw flipped; the rotation is unchanged.
  const EulerAngles over{0.1, kPi / 2 + 0.2, 0.3};
  const EulerAngles n = normalize(over);
  CHECK(std::abs(n.theta) < kPi / 2);
  CHECK(euler_to_dcm(n).m.isApprox(euler_to_dcm(over).m, 1e-12));
}
