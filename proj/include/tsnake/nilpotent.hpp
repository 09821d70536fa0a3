#ifndef TSNAKE_NILPOTENT_HPP
#define TSNAKE_NILPOTENT_HPP

#include <array>
#include <vector>

#include "tsnake/polynomial.hpp"
#include "tsnake/privileged.hpp"
#include "tsnake/vector_field.hpp"

namespace tsnake {

/// Taylor depth used for truncation and residual certificates; total degree
/// 2 covers a system with weights 1 and 2.
inline constexpr int kTruncationTaylorDegree = 2;

/// Polynomial vector field in privileged coordinates together with the
/// coordinate weights.  Stored monomials on component j satisfy
/// w(alpha) >= w_j - 1.
struct WeightedField {
    std::array<Polynomial, kDim> comp{};
    std::array<int, kDim> weights{};

    Vec6 evaluate(const Vec6& y) const;
    VectorField to_field(char tag = 'y') const;
    std::string to_string(char tag = 'y') const;
};

/// Expresses `field` in the coordinates z = T (old - center): component i of
/// the result is sum_j T_ij field_j(old = center + T^-1 z), as a symbolic
/// substitution.  The coordinate tag flips between 'x' and 'y'.
VectorField pushforward(const VectorField& field, const FrameMatrix& transform,
                        const Vec6& center = Vec6::Zero());

/// Degree-(-1) weighted part: component j keeps exactly the Taylor monomials
/// (at 0) with w(alpha) == w_j - 1.
WeightedField weighted_truncate(const VectorField& field_y, std::span<const int> weights,
                                double zero_tol = kZeroTol);

struct FirstOrderViolation {
    int component = 0;  // 1-based
    MultiIndex alpha{};
    double coefficient = 0.0;
    int weighted_deg = 0;
};

struct FirstOrderReport {
    std::vector<FirstOrderViolation> violations;
    bool pass = false;
};

/// Certifies that g - hat has order >= 0 at 0 up to total degree 2: every
/// surviving Taylor monomial on component j must have w(alpha) >= w_j.
FirstOrderReport verify_first_order(const VectorField& g_y, const WeightedField& hat,
                                    double tol = kZeroTol);

struct NilpotencyReport {
    struct PairBracket {
        int i = 0, j = 0;  // 1-based
        Vec6 value_at_zero = Vec6::Zero();
        bool constant = false;
    };
    struct TripleBracket {
        int i = 0, j = 0, k = 0;
        bool zero = false;
    };
    std::vector<PairBracket> pair_brackets;
    std::vector<TripleBracket> triple_brackets;
    bool all_pass = false;
};

/// Checks that the hat fields generate a step-2 nilpotent algebra: pairwise
/// brackets have constant components and every length-3 bracket
/// [[hat_i, hat_j], hat_k] vanishes identically (via is_zero).
NilpotencyReport verify_nilpotent(const WeightedField& h1, const WeightedField& h2,
                                  const WeightedField& h3, double tol = kZeroTol);

}  // namespace tsnake

#endif  // TSNAKE_NILPOTENT_HPP
