#include "glider/seeker.hpp"

#include <cmath>

#include "glider/errors.hpp"

namespace glider {

SeekerModel SeekerModel::from_fov(double horizontal_fov, double width, double height,
                                  const Dcm& mounting) {
  SeekerModel s;
  s.resolution = {width, height};
  s.principal_point = {width / 2.0, height / 2.0};
  s.focal = (width / 2.0) / std::tan(horizontal_fov / 2.0);
  s.fov = {horizontal_fov, 2.0 * std::atan((height / 2.0) / s.focal)};
  s.mounting_body = mounting;
  return s;
}

ImagePoint project(const Vec3& target_ned, const Vec3& position_ned, const EulerAngles& attitude,
                   const SeekerModel& seeker) {
  const Vec3 rel_body = euler_to_dcm(attitude).m.transpose() * (target_ned - position_ned);
  const Vec3 cam = seeker.mounting_body * rel_body;

  ImagePoint p;
  const double depth = cam.x();
  if (!(depth > 0.0)) return p;  // behind the image plane

  const double half_w = seeker.resolution.x() / 2.0;
  const double half_h = seeker.resolution.y() / 2.0;
  const double px = seeker.principal_point.x() + seeker.focal * cam.y() / depth;
  const double py = seeker.principal_point.y() + seeker.focal * cam.z() / depth;
  p.u = (px - seeker.principal_point.x()) / half_w;
  p.v = (py - seeker.principal_point.y()) / half_h;
  p.visible = std::abs(p.u) <= 1.0 && std::abs(p.v) <= 1.0;
  return p;
}

Eigen::Vector2d normalized_to_pixels(const ImagePoint& p, const SeekerModel& seeker) {
  if (!p.visible) throw NotVisible("image point is not visible");
  return {seeker.principal_point.x() + p.u * seeker.resolution.x() / 2.0,
          seeker.principal_point.y() + p.v * seeker.resolution.y() / 2.0};
}

ImagePoint pixels_to_normalized(const Eigen::Vector2d& px, const SeekerModel& seeker) {
  ImagePoint p;
  p.u = (px.x() - seeker.principal_point.x()) / (seeker.resolution.x() / 2.0);
  p.v = (px.y() - seeker.principal_point.y()) / (seeker.resolution.y() / 2.0);
  p.visible = std::abs(p.u) <= 1.0 && std::abs(p.v) <= 1.0;
  return p;
}

void validate(const SeekerModel& s) {
  if (!(s.focal > 0.0)) throw ConfigError("seeker.focal", "must be > 0");
  if (!(s.resolution.x() > 0.0 && s.resolution.y() > 0.0)) {
    throw ConfigError("seeker.resolution_px", "must be positive");
  }
  const double h = 2.0 * std::atan((s.resolution.x() / 2.0) / s.focal);
  const double v = 2.0 * std::atan((s.resolution.y() / 2.0) / s.focal);
  if (std::abs(h - s.fov.x()) > 0.01 * h) {
    throw ConfigError("seeker.horizontal_fov_deg", "inconsistent with focal and resolution");
  }
  if (std::abs(v - s.fov.y()) > 0.01 * v) {
    throw ConfigError("seeker.vertical_fov_deg", "inconsistent with focal and resolution");
  }
  if (!(s.pixel_noise_std >= 0.0)) throw ConfigError("seeker.pixel_noise_std_px", "must be >= 0");
  if (!is_orthonormal(s.mounting_body)) throw ConfigError("seeker.mount_euler_deg", "not a rotation");
}

}  // namespace glider
