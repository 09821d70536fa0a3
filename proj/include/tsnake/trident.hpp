#ifndef TSNAKE_TRIDENT_HPP
#define TSNAKE_TRIDENT_HPP

#include <array>

#include "tsnake/vector_field.hpp"

namespace tsnake {

/// Circumscribed body radius and link length.
inline constexpr double kBodyRadius = 1.0;
inline constexpr double kLinkLength = 1.0;

/// Generalized coordinates q = (x, y, theta, phi1, phi2, phi3): planar
/// position, body orientation, and the three joint angles.  Angles are
/// unnormalized reals so trajectories stay continuous.
struct Configuration {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
    double phi3 = 0.0;

    static Configuration from_vec(const Vec6& v) {
        return {v[0], v[1], v[2], v[3], v[4], v[5]};
    }
    Vec6 to_vec() const {
        Vec6 v;
        v << x, y, theta, phi1, phi2, phi3;
        return v;
    }
};

/// The two printed field families use different leg-offset conventions and
/// a different spatial parametrization:
///  - Original: world-frame spatial components (cos/sin of theta), leg
///    offsets (0, 2pi/3, 4pi/3).
///  - Transformed: spatial components reduced to constants by the
///    body-velocity substitution w_dot = R_theta v, leg offsets
///    (-2pi/3, 0, 2pi/3).
enum class Parametrization { Original, Transformed };

/// Leg-joint angular offsets psi_i on the triangular platform.
std::array<double, 3> leg_offsets(Parametrization par);

/// Control fields in the original (world-frame) parametrization.
std::array<VectorField, 3> fields_original();

/// Control fields in the transformed parametrization (the primary model).
std::array<VectorField, 3> fields_transformed();

/// Planar rotation by theta, embedded as a 3x3 block-diagonal matrix.
Eigen::Matrix3d rotation(double theta);

/// Planar kinematic points of a configuration:
///   vertex_i = root + r (cos(theta+psi_i), sin(theta+psi_i))
///   wheel_i  = vertex_i + l (cos(theta+psi_i+phi_i), sin(theta+psi_i+phi_i))
struct BodyPose {
    Eigen::Vector2d root = Eigen::Vector2d::Zero();
    std::array<Eigen::Vector2d, 3> vertices{};
    std::array<Eigen::Vector2d, 3> wheels{};
    std::array<Eigen::Vector2d, 3> link_directions{};  // unit, along each link
};

BodyPose kinematics(const Configuration& q, Parametrization par);

/// Wheel-velocity component normal to each link for a configuration motion
/// qdot; zero exactly when the non-holonomic (Pfaff) constraints hold.
///
/// For the Transformed parametrization the spatial rates (qdot_1, qdot_2)
/// are body-frame velocities, so they are mapped through rotation by theta
/// before projecting onto the wheel normals (the w_dot = R_theta v relation
/// that defines that parametrization).
std::array<double, 3> slip(const Configuration& q, const Vec6& qdot, Parametrization par);

}  // namespace tsnake

#endif  // TSNAKE_TRIDENT_HPP
