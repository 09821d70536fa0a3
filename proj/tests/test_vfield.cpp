#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "tsnake/trident.hpp"
#include "tsnake/vector_field.hpp"

using namespace tsnake;

namespace {

Vec6 random_point(std::mt19937& rng, double radius) {
    std::uniform_real_distribution<double> dist(-radius, radius);
    Vec6 p;
    for (int i = 0; i < 6; ++i) p[i] = dist(rng);
    return p;
}

VectorField coordinate_field(int i) {
    VectorField f;
    f.comp[static_cast<size_t>(i - 1)] = Expr::constant(1.0);
    return f;
}

}  // namespace

TEST_SUITE("vfield") {

TEST_CASE("[g1,g2] is the constant field (0,0,0,1,1,1)") {
    const auto g = fields_transformed();
    const VectorField b = lie_bracket(g[0], g[1]);
    const Vec6 at0 = b.evaluate(Vec6::Zero());
    const Vec6 expected = (Vec6() << 0, 0, 0, 1, 1, 1).finished();
    CHECK((at0 - expected).cwiseAbs().maxCoeff() <= 1e-12);
    for (int k = 0; k < 6; ++k) {
        CHECK(is_zero(b.comp[static_cast<size_t>(k)] - Expr::constant(expected[k])));
    }
}

TEST_CASE("higher transformed brackets at the origin") {
    const auto g = fields_transformed();
    const Vec6 b23 = lie_bracket(g[1], g[2]).evaluate(Vec6::Zero());
    const Vec6 b13 = lie_bracket(g[0], g[2]).evaluate(Vec6::Zero());
    const double s3 = std::sqrt(3.0);
    CHECK((b23 - (Vec6() << 0, 0, 0, -s3, 0, s3).finished()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((b13 - (Vec6() << 0, 0, 0, -1, 2, -1).finished()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("symbolic brackets agree with finite differences") {
    const auto g = fields_transformed();
    std::mt19937 rng(101);
    const std::pair<int, int> pairs[] = {{0, 1}, {1, 2}, {0, 2}};
    for (auto [i, j] : pairs) {
        const VectorField sym = lie_bracket(g[static_cast<size_t>(i)], g[static_cast<size_t>(j)]);
        for (int k = 0; k < 50; ++k) {
            const Vec6 p = random_point(rng, 0.3);
            const Vec6 fd =
                fd_bracket(g[static_cast<size_t>(i)], g[static_cast<size_t>(j)], p, 1e-5);
            CHECK((sym.evaluate(p) - fd).cwiseAbs().maxCoeff() <= 1e-6);
        }
    }
}

TEST_CASE("bracket of a field with itself vanishes") {
    const auto g = fields_transformed();
    const VectorField self = lie_bracket(g[0], g[0]);
    for (const Expr& c : self.comp) CHECK(is_zero(c));
    std::mt19937 rng(5);
    CHECK(fd_bracket(g[1], g[1], random_point(rng, 0.3), 1e-5).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("bracket is antisymmetric") {
    const auto g = fields_transformed();
    const VectorField b12 = lie_bracket(g[0], g[1]);
    const VectorField b21 = lie_bracket(g[1], g[0]);
    for (int k = 0; k < 6; ++k) {
        CHECK(is_zero(b12.comp[static_cast<size_t>(k)] + b21.comp[static_cast<size_t>(k)]));
    }
}

TEST_CASE("Jacobi identity holds for the transformed frame") {
    const auto g = fields_transformed();
    const VectorField j1 = lie_bracket(g[0], lie_bracket(g[1], g[2]));
    const VectorField j2 = lie_bracket(g[1], lie_bracket(g[2], g[0]));
    const VectorField j3 = lie_bracket(g[2], lie_bracket(g[0], g[1]));
    for (int k = 0; k < 6; ++k) {
        const size_t s = static_cast<size_t>(k);
        CHECK(is_zero(j1.comp[s] + j2.comp[s] + j3.comp[s], 1e-8));
    }
}

TEST_CASE("lie_bracket rejects mismatched variable tags") {
    VectorField x;
    VectorField y;
    y.tag = 'y';
    x.comp[0] = Expr::constant(1.0);
    y.comp[1] = Expr::constant(1.0);
    CHECK_THROWS_AS(lie_bracket(x, y), std::invalid_argument);
}

TEST_CASE("growth vector of the trident distribution is (3,6)") {
    const auto g = fields_transformed();
    const Flag flag = growth_vector(g, Vec6::Zero());
    REQUIRE(flag.dims.size() == 2);
    CHECK(flag.dims[0] == 3);
    CHECK(flag.dims[1] == 6);
    CHECK(flag.degree_of_nonholonomy() == 2);
    CHECK(flag.weights() == std::vector<int>{1, 1, 1, 2, 2, 2});

    std::mt19937 rng(303);
    for (int k = 0; k < 20; ++k) {
        const Flag at = growth_vector(g, random_point(rng, 0.3));
        CHECK(at.dims == std::vector<int>{3, 6});
    }
}

TEST_CASE("growth vector is invariant under constant frame mixing") {
    const auto g = fields_transformed();
    std::mt19937 rng(404);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::Matrix3d a;
    do {
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) a(r, c) = dist(rng);
    } while (std::abs(a.determinant()) < 0.1);

    std::array<VectorField, 3> mixed;
    for (int r = 0; r < 3; ++r) {
        for (int k = 0; k < 6; ++k) {
            std::vector<Expr> terms;
            for (int c = 0; c < 3; ++c) {
                terms.push_back(Expr::constant(a(r, c)) *
                                g[static_cast<size_t>(c)].comp[static_cast<size_t>(k)]);
            }
            mixed[static_cast<size_t>(r)].comp[static_cast<size_t>(k)] = Expr::sum(terms);
        }
    }
    const Flag flag = growth_vector(mixed, Vec6::Zero());
    CHECK(flag.dims == std::vector<int>{3, 6});
}

TEST_CASE("full coordinate frame has trivial growth vector") {
    std::array<VectorField, 6> basis;
    for (int i = 1; i <= 6; ++i) basis[static_cast<size_t>(i - 1)] = coordinate_field(i);
    const Flag flag = growth_vector(basis, Vec6::Zero());
    CHECK(flag.dims == std::vector<int>{6});
    CHECK(flag.degree_of_nonholonomy() == 1);
    CHECK(flag.weights() == std::vector<int>{1, 1, 1, 1, 1, 1});
}

TEST_CASE("non-bracket-generating family throws with diagnostics") {
    std::array<VectorField, 3> flat = {coordinate_field(1), coordinate_field(2),
                                       coordinate_field(3)};
    try {
        growth_vector(flat, Vec6::Zero());
        FAIL("expected NotBracketGenerating");
    } catch (const NotBracketGenerating& e) {
        CHECK(e.dims() == std::vector<int>(4, 3));
        CHECK(e.depth() == kBracketDepthCap);
        CHECK(std::string(e.what()).find("not bracket-generating") != std::string::npos);
    }
}

TEST_CASE("weights_from_dims expands flag dimensions") {
    CHECK(weights_from_dims(std::vector<int>{3, 6}) == std::vector<int>{1, 1, 1, 2, 2, 2});
    CHECK(weights_from_dims(std::vector<int>{6}) == std::vector<int>{1, 1, 1, 1, 1, 1});
    CHECK(weights_from_dims(std::vector<int>{2, 4, 6}) == std::vector<int>{1, 1, 2, 2, 3, 3});
    CHECK_THROWS_AS(weights_from_dims(std::vector<int>{3, 3, 6}), std::invalid_argument);
    CHECK_THROWS_AS(weights_from_dims(std::vector<int>{4}), std::invalid_argument);
}

TEST_CASE("function_order measures vanishing order along the distribution") {
    const auto g = fields_transformed();
    const auto ord_x1 = function_order(Expr::variable(1), Vec6::Zero(), g, 4);
    REQUIRE(ord_x1.has_value());
    CHECK(*ord_x1 == 1);

    const auto ord_nonvanishing =
        function_order(Expr::constant(1.0) + Expr::variable(4), Vec6::Zero(), g, 4);
    REQUIRE(ord_nonvanishing.has_value());
    CHECK(*ord_nonvanishing == 0);

    const auto ord_sq = function_order(Expr::variable(1) * Expr::variable(1), Vec6::Zero(), g, 4);
    REQUIRE(ord_sq.has_value());
    CHECK(*ord_sq == 2);

    CHECK_FALSE(function_order(Expr::constant(0.0), Vec6::Zero(), g, 3).has_value());
}

TEST_CASE("lie_derivative differentiates along a field") {
    const auto g = fields_transformed();
    const Expr d = lie_derivative(g[0], Expr::variable(1));
    CHECK(is_zero(d - g[0].comp[0]));
}

}  // TEST_SUITE
