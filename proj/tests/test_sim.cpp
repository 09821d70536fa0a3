#include <doctest.h>

#include <cmath>

#include "tsnake/cli.hpp"
#include "tsnake/sim.hpp"
#include "tsnake/trident.hpp"

using namespace tsnake;

namespace {

std::array<VectorField, 3> basis_fields() {
    std::array<VectorField, 3> b;
    for (int i = 0; i < 3; ++i) b[static_cast<size_t>(i)].comp[static_cast<size_t>(i)] = Expr::constant(1.0);
    return b;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return acc * h / 3.0;
}

const std::array<VectorField, 3>& hat_fields_x_at_origin() {
    static const std::array<VectorField, 3> hats =
        analyze_at(fields_transformed(), Vec6::Zero()).hat_fields_x;
    return hats;
}

constexpr InputKind kAllKinds[] = {InputKind::Bracket12, InputKind::Bracket23,
                                   InputKind::Bracket13};

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("zero input holds the state constant") {
    const auto g = fields_transformed();
    Vec6 q0;
    q0 << 0.1, -0.2, 0.3, 0.0, 0.1, -0.1;
    const Trajectory traj = integrate(g, zero_input(InputKind::Bracket12, 1.0), q0, 1.0, 50);
    REQUIRE(traj.states.size() == 51);
    for (const Vec6& q : traj.states) CHECK((q - q0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("constant input on constant fields integrates exactly") {
    const auto b = basis_fields();
    ControlInput in;
    in.u[0] = [](double) { return 1.0; };
    const Trajectory traj = integrate(b, in, Vec6::Zero(), 1.0, 4);
    Vec6 expected = Vec6::Zero();
    expected[0] = 1.0;
    CHECK((traj.endpoint() - expected).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(traj.dt == doctest::Approx(0.25));
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(traj.integrator == "rk4");
}

TEST_CASE("periodic inputs excite the right channels") {
    const double a = 0.1, w = 2.0;
    const ControlInput in12 = periodic_input(InputKind::Bracket12, a, w);
    const Eigen::Vector3d u0 = in12.evaluate(0.0);
    CHECK(u0[0] == 0.0);
    CHECK(u0[1] == doctest::Approx(a * w).epsilon(1e-15));
    CHECK(u0[2] == 0.0);
    CHECK(in12.period() == doctest::Approx(M_PI));
    CHECK(in12.name() == "bracket12 A=0.1 omega=2");

    const ControlInput in13 = periodic_input(InputKind::Bracket13, a, w);
    const Eigen::Vector3d uq = in13.evaluate(M_PI / (2.0 * w));
    CHECK(uq[0] == doctest::Approx(-a * w).epsilon(1e-15));
    CHECK(uq[1] == 0.0);
    CHECK(std::abs(uq[2]) <= 1e-15);
}

TEST_CASE("periodic inputs have zero mean over one period") {
    const ControlInput in = periodic_input(InputKind::Bracket23, 0.3, 1.7);
    for (int i = 0; i < 3; ++i) {
        const int channel = i;
        const double integral = simpson(
            [&](double t) { return in.evaluate(t)[channel]; }, 0.0, in.period(), 200);
        CHECK(std::abs(integral) <= 1e-12);
    }
}

TEST_CASE("input and integrator preconditions throw") {
    CHECK_THROWS_AS(periodic_input(InputKind::Bracket12, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(periodic_input(InputKind::Bracket12, -0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(periodic_input(InputKind::Bracket12, 0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(periodic_input(InputKind::Custom, 0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bracket_pair(InputKind::Custom), std::invalid_argument);

    const auto g = fields_transformed();
    const ControlInput in = periodic_input(InputKind::Bracket12, 0.1, 1.0);
    CHECK_THROWS_AS(integrate(g, in, Vec6::Zero(), 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(integrate(g, in, Vec6::Zero(), 0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(integrate(g, in, Vec6::Zero(), -1.0, 10), std::invalid_argument);
}

TEST_CASE("finite-time blowup raises NonFiniteState") {
    std::array<VectorField, 1> quad;
    quad[0].comp[0] = Expr::variable(1) * Expr::variable(1);
    ControlInput in;
    in.u[0] = [](double) { return 1.0; };
    Vec6 q0 = Vec6::Zero();
    q0[0] = 1.0;
    try {
        integrate(quad, in, q0, 2.0, 100);
        FAIL("expected NonFiniteState");
    } catch (const NonFiniteState& e) {
        CHECK(e.time > 0.0);
        CHECK(e.time <= 2.0);
        CHECK(std::string(e.what()).find("non-finite") != std::string::npos);
    }
}

TEST_CASE("bracket loop displacement matches pi A^2 [g_i,g_j]") {
    const auto g = fields_transformed();
    for (InputKind kind : kAllKinds) {
        const BracketDisplacement d = bracket_displacement(g, kind, 0.05, 1.0, 2000);
        CHECK(d.direction_cosine >= 0.98);
        const Vec6 predicted =
            M_PI * 0.05 * 0.05 * bracket_field(g, kind).evaluate(Vec6::Zero());
        CHECK((d.displacement - predicted).norm() <= 0.15 * predicted.norm());
    }
}

TEST_CASE("displacement magnitude scales quadratically in amplitude") {
    const auto g = fields_transformed();
    for (InputKind kind : kAllKinds) {
        const double m1 = bracket_displacement(g, kind, 0.1, 1.0, 2000).magnitude;
        const double m2 = bracket_displacement(g, kind, 0.05, 1.0, 2000).magnitude;
        CHECK(m1 / m2 >= 3.6);
        CHECK(m1 / m2 <= 4.4);
    }
}

TEST_CASE("direction cosine improves as the loop shrinks") {
    const auto g = fields_transformed();
    for (InputKind kind : kAllKinds) {
        const double c1 = bracket_displacement(g, kind, 0.2, 1.0, 2000).direction_cosine;
        const double c2 = bracket_displacement(g, kind, 0.1, 1.0, 2000).direction_cosine;
        const double c3 = bracket_displacement(g, kind, 0.05, 1.0, 2000).direction_cosine;
        CHECK(c1 <= c2);
        CHECK(c2 <= c3);
        CHECK(c3 <= 1.0 + 1e-12);
    }
}

TEST_CASE("commuting fields produce no loop displacement") {
    const auto b = basis_fields();
    const BracketDisplacement d = bracket_displacement(b, InputKind::Bracket12, 0.1, 1.0, 400);
    CHECK(d.magnitude <= 1e-10);
    CHECK(d.direction_cosine == 0.0);
}

TEST_CASE("integration converges at fourth order") {
    const auto g = fields_transformed();
    const ControlInput in = periodic_input(InputKind::Bracket12, 0.5, 1.0);
    const double T = in.period();
    const Vec6 ref = integrate(g, in, Vec6::Zero(), T, 4000).endpoint();
    const double e40 = (integrate(g, in, Vec6::Zero(), T, 40).endpoint() - ref).norm();
    const double e80 = (integrate(g, in, Vec6::Zero(), T, 80).endpoint() - ref).norm();
    const double order = std::log2(e40 / e80);
    CHECK(order >= 3.7);
    CHECK(order <= 4.3);
}

TEST_CASE("step halving changes the endpoint below tolerance") {
    const auto g = fields_transformed();
    const Vec6 a = bracket_displacement(g, InputKind::Bracket12, 0.1, 1.0, 1000).endpoint;
    const Vec6 b = bracket_displacement(g, InputKind::Bracket12, 0.1, 1.0, 2000).endpoint;
    CHECK((a - b).norm() <= 1e-10);
}

TEST_CASE("compare reproduces the frozen reference run") {
    const auto g = fields_transformed();
    const auto& hats = hat_fields_x_at_origin();
    const ComparisonReport rep = compare(g, hats, InputKind::Bracket12, 0.1, 1.0, 2000,
                                         Parametrization::Transformed);
    CHECK(rep.direction_cosine == doctest::Approx(0.9975097276867435).epsilon(1e-9));
    CHECK(rep.magnitude == doctest::Approx(0.05496233752672669).epsilon(1e-9));
    CHECK(rep.max_dev == doctest::Approx(0.003898218480704767).epsilon(1e-6));
    CHECK(rep.endpoint_dev <= rep.max_dev + 1e-15);
    CHECK(rep.max_slip == doctest::Approx(0.0031211875151014312).epsilon(1e-6));
    CHECK(rep.max_slip_exact <= 1e-8);
    for (double wd : rep.wheel_dev) {
        CHECK(wd > 0.0);
        CHECK(wd < 0.1);
    }
    CHECK(rep.exact.model == "exact");
    CHECK(rep.nilpotent.model == "nilpotent");
    CHECK(rep.exact.states.size() == rep.nilpotent.states.size());
}

TEST_CASE("models diverge less for smaller loops") {
    const auto g = fields_transformed();
    const auto& hats = hat_fields_x_at_origin();
    double prev = 1e9;
    for (double a : {0.2, 0.1, 0.05}) {
        const ComparisonReport rep = compare(g, hats, InputKind::Bracket23, a, 1.0, 1000,
                                             Parametrization::Transformed);
        const double rel = rep.endpoint_dev / rep.magnitude;
        CHECK(rel < prev);
        prev = rel;
    }
}

TEST_CASE("zero-amplitude comparison is exactly flat") {
    const auto g = fields_transformed();
    const auto& hats = hat_fields_x_at_origin();
    const ComparisonReport rep =
        compare(g, hats, InputKind::Bracket12, 0.0, 1.0, 100, Parametrization::Transformed);
    CHECK(rep.max_dev == 0.0);
    CHECK(rep.endpoint_dev == 0.0);
    CHECK(rep.max_slip == 0.0);
    CHECK(rep.max_slip_exact == 0.0);
    CHECK(rep.magnitude == 0.0);
    CHECK(rep.direction_cosine == 0.0);
    for (double wd : rep.wheel_dev) CHECK(wd == 0.0);
}

TEST_CASE("exact trajectories satisfy the constraints, truncated ones slip") {
    const auto g = fields_transformed();
    const auto& hats = hat_fields_x_at_origin();
    for (InputKind kind : kAllKinds) {
        const ComparisonReport rep =
            compare(g, hats, kind, 0.1, 1.0, 500, Parametrization::Transformed);
        CHECK(rep.max_slip_exact <= 1e-8);
        CHECK(rep.max_slip > 1e-6);
    }
}

TEST_CASE("input kind names round-trip") {
    CHECK(input_kind_name(InputKind::Bracket12) == "bracket12");
    CHECK(input_kind_name(InputKind::Bracket23) == "bracket23");
    CHECK(input_kind_name(InputKind::Bracket13) == "bracket13");
    CHECK(input_kind_name(InputKind::Custom) == "custom");
    CHECK(bracket_pair(InputKind::Bracket13) == std::array<int, 2>{1, 3});
}

}  // TEST_SUITE
