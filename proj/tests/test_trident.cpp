#include <doctest.h>

#include <cmath>
#include <random>

#include "tsnake/trident.hpp"

using namespace tsnake;

namespace {

Vec6 random_point(std::mt19937& rng, double radius) {
    std::uniform_real_distribution<double> dist(-radius, radius);
    Vec6 p;
    for (int i = 0; i < 6; ++i) p[i] = dist(rng);
    return p;
}

double max_abs(const std::array<double, 3>& s) {
    return std::max({std::abs(s[0]), std::abs(s[1]), std::abs(s[2])});
}

}  // namespace

TEST_SUITE("trident") {

TEST_CASE("leg offsets distinguish the parametrizations") {
    const double third = 2.0 * M_PI / 3.0;
    const auto orig = leg_offsets(Parametrization::Original);
    CHECK(orig[0] == 0.0);
    CHECK(orig[1] == doctest::Approx(third));
    CHECK(orig[2] == doctest::Approx(2.0 * third));
    const auto trans = leg_offsets(Parametrization::Transformed);
    CHECK(trans[0] == doctest::Approx(-third));
    CHECK(trans[1] == 0.0);
    CHECK(trans[2] == doctest::Approx(third));
}

TEST_CASE("field values at the reference configuration") {
    const auto go = fields_original();
    const auto gt = fields_transformed();
    const Vec6 zero = Vec6::Zero();
    const double s3 = std::sqrt(3.0);

    const Vec6 go1 = (Vec6() << 1, 0, 0, 0, s3 / 2.0, -s3 / 2.0).finished();
    CHECK((go[0].evaluate(zero) - go1).cwiseAbs().maxCoeff() <= 1e-15);

    const Vec6 gt1 = (Vec6() << 1, 0, 0, -s3 / 2.0, 0, s3 / 2.0).finished();
    const Vec6 gt2 = (Vec6() << 0, 1, 0, 0.5, -1, 0.5).finished();
    CHECK((gt[0].evaluate(zero) - gt1).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((gt[1].evaluate(zero) - gt2).cwiseAbs().maxCoeff() <= 1e-15);

    const Vec6 g3 = (Vec6() << 0, 0, 1, -2, -2, -2).finished();
    CHECK((go[2].evaluate(zero) - g3).cwiseAbs().maxCoeff() == 0.0);
    CHECK((gt[2].evaluate(zero) - g3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("transformed fields print with explicit leg offsets") {
    const auto gt = fields_transformed();
    CHECK(gt[0].comp[3].to_string() == "sin(-2.0943951023931953 + x4)");
    CHECK(gt[0].comp[4].to_string() == "sin(x5)");
    CHECK(gt[2].comp[0].to_string() == "0");
}

TEST_CASE("both parametrizations have growth vector (3,6)") {
    CHECK(growth_vector(fields_original(), Vec6::Zero()).dims == std::vector<int>{3, 6});
    CHECK(growth_vector(fields_transformed(), Vec6::Zero()).dims == std::vector<int>{3, 6});
    std::mt19937 rng(31);
    for (int k = 0; k < 10; ++k) {
        const Vec6 p = random_point(rng, 0.3);
        CHECK(growth_vector(fields_original(), p).dims == std::vector<int>{3, 6});
        CHECK(growth_vector(fields_transformed(), p).dims == std::vector<int>{3, 6});
    }
}

TEST_CASE("rotation is a proper planar rotation") {
    CHECK((rotation(0.0) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() == 0.0);
    const Eigen::Vector3d ex(1, 0, 0);
    CHECK((rotation(M_PI_2) * ex - Eigen::Vector3d(0, 1, 0)).cwiseAbs().maxCoeff() <= 1e-15);
    const double theta = 0.7;
    CHECK((rotation(theta) * rotation(-theta) - Eigen::Matrix3d::Identity())
              .cwiseAbs()
              .maxCoeff() <= 1e-15);
    CHECK(rotation(theta).determinant() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rotation(theta)(2, 2) == 1.0);
}

TEST_CASE("kinematics at the reference configuration") {
    const BodyPose pose = kinematics(Configuration{}, Parametrization::Original);
    CHECK(pose.root.cwiseAbs().maxCoeff() == 0.0);
    const double s3 = std::sqrt(3.0);
    const Eigen::Vector2d expected[3] = {{1.0, 0.0}, {-0.5, s3 / 2.0}, {-0.5, -s3 / 2.0}};
    for (int i = 0; i < 3; ++i) {
        CHECK((pose.vertices[static_cast<size_t>(i)] - expected[i]).cwiseAbs().maxCoeff() <= 1e-15);
        // straight legs double the vertex radius
        CHECK((pose.wheels[static_cast<size_t>(i)] - 2.0 * expected[i]).cwiseAbs().maxCoeff() <=
              1e-15);
    }

    const BodyPose tpose = kinematics(Configuration{}, Parametrization::Transformed);
    CHECK((tpose.vertices[1] - Eigen::Vector2d(1.0, 0.0)).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((tpose.vertices[0] - Eigen::Vector2d(-0.5, -s3 / 2.0)).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("pose lengths are invariant") {
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int k = 0; k < 50; ++k) {
        Vec6 v;
        for (int i = 0; i < 6; ++i) v[i] = dist(rng);
        const Configuration q = Configuration::from_vec(v);
        for (Parametrization par : {Parametrization::Original, Parametrization::Transformed}) {
            const BodyPose pose = kinematics(q, par);
            for (int i = 0; i < 3; ++i) {
                const size_t s = static_cast<size_t>(i);
                CHECK(std::abs((pose.vertices[s] - pose.root).norm() - kBodyRadius) <= 1e-12);
                CHECK(std::abs((pose.wheels[s] - pose.vertices[s]).norm() - kLinkLength) <= 1e-12);
                CHECK(std::abs(pose.link_directions[s].norm() - 1.0) <= 1e-12);
                CHECK((pose.wheels[s] - pose.vertices[s] - kLinkLength * pose.link_directions[s])
                          .cwiseAbs()
                          .maxCoeff() <= 1e-12);
            }
        }
    }
}

TEST_CASE("configuration round-trips through vectors") {
    Vec6 v;
    v << 0.1, -0.2, 0.3, -0.4, 0.5, -0.6;
    CHECK((Configuration::from_vec(v).to_vec() - v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("control fields annihilate the slip constraints") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (Parametrization par : {Parametrization::Original, Parametrization::Transformed}) {
        const auto g = par == Parametrization::Original ? fields_original() : fields_transformed();
        for (int k = 0; k < 100; ++k) {
            const Vec6 p = random_point(rng, 0.5);
            const Configuration q = Configuration::from_vec(p);
            Vec6 qdot = Vec6::Zero();
            for (int i = 0; i < 3; ++i) qdot += coeff(rng) * g[static_cast<size_t>(i)].evaluate(p);
            CHECK(max_abs(slip(q, qdot, par)) <= 1e-8);
        }
    }
}

TEST_CASE("generic motions violate the slip constraints") {
    Vec6 qdot = Vec6::Zero();
    qdot[0] = 1.0;  // pure translation, joints frozen
    const auto s = slip(Configuration{}, qdot, Parametrization::Original);
    CHECK(std::abs(s[0]) <= 1e-15);
    CHECK(std::abs(s[1]) > 0.5);
    CHECK(std::abs(s[2]) > 0.5);

    Vec6 spin = Vec6::Zero();
    spin[2] = 1.0;
    CHECK(max_abs(slip(Configuration{}, spin, Parametrization::Original)) > 1.0);
}

TEST_CASE("transformed slip reads spatial rates in the body frame") {
    Vec6 p;
    p << 0.2, -0.1, 0.9, 0.05, -0.3, 0.2;
    const Configuration q = Configuration::from_vec(p);
    const auto g = fields_transformed();
    const Vec6 qdot = g[0].evaluate(p) + 0.5 * g[1].evaluate(p);
    CHECK(max_abs(slip(q, qdot, Parametrization::Transformed)) <= 1e-12);
    // the same rates fed through the other parametrization slip
    CHECK(max_abs(slip(q, qdot, Parametrization::Original)) > 0.05);
}

}  // TEST_SUITE
