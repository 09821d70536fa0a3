#include "tsnake/trident.hpp"

#include <cmath>

namespace tsnake {

namespace {

constexpr double kThird = 2.0 * M_PI / 3.0;

Expr joint(int i) { return Expr::variable(4 + i); }

// sin(x_{3+i} + off), cos(x_{3+i} + off) with exact-zero offsets folded away.
Expr leg_sin(int i, double off) {
    return off == 0.0 ? Expr::sin(joint(i)) : Expr::sin(joint(i) + Expr::constant(off));
}
Expr leg_cos(int i, double off) {
    return off == 0.0 ? Expr::cos(joint(i)) : Expr::cos(joint(i) + Expr::constant(off));
}

}  // namespace

std::array<double, 3> leg_offsets(Parametrization par) {
    if (par == Parametrization::Original) return {0.0, kThird, 2.0 * kThird};
    return {-kThird, 0.0, kThird};
}

std::array<VectorField, 3> fields_original() {
    const auto off = leg_offsets(Parametrization::Original);
    const Expr zero = Expr::constant(0.0);
    const Expr one = Expr::constant(1.0);
    const Expr th = Expr::variable(3);

    VectorField g1, g2, g3;
    g1.comp = {Expr::cos(th), Expr::sin(th), zero,
               leg_sin(0, off[0]), leg_sin(1, off[1]), leg_sin(2, off[2])};
    g2.comp = {-Expr::sin(th), Expr::cos(th), zero,
               -leg_cos(0, off[0]), -leg_cos(1, off[1]), -leg_cos(2, off[2])};
    g3.comp = {zero, zero, one,
               -(one + Expr::cos(joint(0))),
               -(one + Expr::cos(joint(1))),
               -(one + Expr::cos(joint(2)))};
    return {g1, g2, g3};
}

std::array<VectorField, 3> fields_transformed() {
    const auto off = leg_offsets(Parametrization::Transformed);
    const Expr zero = Expr::constant(0.0);
    const Expr one = Expr::constant(1.0);

    VectorField g1, g2, g3;
    g1.comp = {one, zero, zero,
               leg_sin(0, off[0]), leg_sin(1, off[1]), leg_sin(2, off[2])};
    g2.comp = {zero, one, zero,
               -leg_cos(0, off[0]), -leg_cos(1, off[1]), -leg_cos(2, off[2])};
    g3.comp = {zero, zero, one,
               -(one + Expr::cos(joint(0))),
               -(one + Expr::cos(joint(1))),
               -(one + Expr::cos(joint(2)))};
    return {g1, g2, g3};
}

Eigen::Matrix3d rotation(double theta) {
    Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
    const double c = std::cos(theta), s = std::sin(theta);
    r(0, 0) = c;
    r(0, 1) = -s;
    r(1, 0) = s;
    r(1, 1) = c;
    return r;
}

BodyPose kinematics(const Configuration& q, Parametrization par) {
    const auto off = leg_offsets(par);
    BodyPose pose;
    pose.root << q.x, q.y;
    const std::array<double, 3> phi = {q.phi1, q.phi2, q.phi3};
    for (int i = 0; i < 3; ++i) {
        const double alpha = q.theta + off[i];
        const double beta = alpha + phi[i];
        pose.vertices[i] = pose.root + kBodyRadius * Eigen::Vector2d(std::cos(alpha), std::sin(alpha));
        pose.link_directions[i] = Eigen::Vector2d(std::cos(beta), std::sin(beta));
        pose.wheels[i] = pose.vertices[i] + kLinkLength * pose.link_directions[i];
    }
    return pose;
}

std::array<double, 3> slip(const Configuration& q, const Vec6& qdot, Parametrization par) {
    const auto off = leg_offsets(par);
    Eigen::Vector2d v(qdot[0], qdot[1]);
    if (par == Parametrization::Transformed) {
        const double c = std::cos(q.theta), s = std::sin(q.theta);
        v = Eigen::Vector2d(c * v[0] - s * v[1], s * v[0] + c * v[1]);
    }
    const double thdot = qdot[2];
    const std::array<double, 3> phi = {q.phi1, q.phi2, q.phi3};

    // wheel_i' = v + r thdot n(alpha_i) + l (thdot + phidot_i) n(beta_i)
    // with n(a) = (-sin a, cos a); projecting onto n(beta_i) gives
    //   slip_i = <n(beta_i), v> + thdot (l + r cos phi_i) + l phidot_i.
    std::array<double, 3> s{};
    for (int i = 0; i < 3; ++i) {
        const double beta = q.theta + off[i] + phi[i];
        s[i] = -std::sin(beta) * v[0] + std::cos(beta) * v[1] +
               thdot * (kLinkLength + kBodyRadius * std::cos(phi[i])) + kLinkLength * qdot[3 + i];
    }
    return s;
}

}  // namespace tsnake
