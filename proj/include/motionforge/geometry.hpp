#pragma once

#include "motionforge/types.hpp"

namespace motionforge {

// Right-handed elementary rotations (active, column-vector convention).
Mat3 rot_x(double theta);
Mat3 rot_y(double theta);
Mat3 rot_z(double theta);

/// Closest rotation in Frobenius norm (orthogonal polar factor, det +1).
Mat3 nearest_rotation(const Mat3& m);

/// Geodesic angle of a rotation, computed as atan2(|sin|, cos) so that
/// near-identity rotations keep full precision.
double rotation_angle(const Mat3& r);

}  // namespace motionforge
