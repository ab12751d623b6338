#pragma once

#include <Eigen/Dense>

#include "glider/frames.hpp"

namespace glider {

// Strap-down pinhole camera. Camera frame: x along the boresight, y to image
// right, z to image down.
struct SeekerModel {
  double focal = 0.0;                                            // px
  Eigen::Vector2d principal_point = Eigen::Vector2d::Zero();     // px
  Eigen::Vector2d resolution = Eigen::Vector2d::Zero();          // px (width, height)
  Dcm mounting_body;                                             // body -> camera
  Eigen::Vector2d fov = Eigen::Vector2d::Zero();                 // rad (horizontal, vertical)
  double pixel_noise_std = 0.0;                                  // px, applied by the environment

  /// Centred principal point, focal from the horizontal field of view; the
  /// vertical field of view follows from the sensor aspect ratio.
  static SeekerModel from_fov(double horizontal_fov, double width, double height,
                              const Dcm& mounting = Dcm::identity());
};

struct ImagePoint {
  double u = 0.0;  // normalized, +right
  double v = 0.0;  // normalized, +down
  bool visible = false;
};

/// Projects a NED point through the camera of a glider at the given pose.
ImagePoint project(const Vec3& target_ned, const Vec3& position_ned, const EulerAngles& attitude,
                   const SeekerModel& seeker);

/// Normalized image coordinates -> pixels. Throws NotVisible for invisible points.
Eigen::Vector2d normalized_to_pixels(const ImagePoint& p, const SeekerModel& seeker);

/// Inverse of normalized_to_pixels (visibility is recomputed from the bounds).
ImagePoint pixels_to_normalized(const Eigen::Vector2d& px, const SeekerModel& seeker);

void validate(const SeekerModel& seeker);

}  // namespace glider
