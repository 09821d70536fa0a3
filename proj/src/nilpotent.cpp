#include "tsnake/nilpotent.hpp"

#include <Eigen/LU>

namespace tsnake {

Vec6 WeightedField::evaluate(const Vec6& y) const {
    std::array<double, kDim> pt;
    Eigen::Map<Vec6>(pt.data()) = y;
    Vec6 v;
    for (int k = 0; k < kDim; ++k) v[k] = comp[static_cast<size_t>(k)].evaluate(pt);
    return v;
}

VectorField WeightedField::to_field(char tag) const {
    VectorField f;
    f.tag = tag;
    for (int k = 0; k < kDim; ++k) f.comp[static_cast<size_t>(k)] = comp[static_cast<size_t>(k)].to_expression();
    return f;
}

std::string WeightedField::to_string(char tag) const {
    return to_field(tag).to_string();
}

VectorField pushforward(const VectorField& field, const FrameMatrix& transform,
                        const Vec6& center) {
    const Mat6& t = transform.entries;
    Mat6 tinv = Eigen::PartialPivLU<Mat6>(t).inverse();

    // old coordinate l = center_l + sum_k (T^-1)_lk z_k
    std::vector<Expr> replacement;
    replacement.reserve(kDim);
    for (int l = 0; l < kDim; ++l) {
        std::vector<Expr> terms{Expr::constant(center[l])};
        for (int k = 0; k < kDim; ++k) {
            if (tinv(l, k) == 0.0) continue;
            terms.push_back(Expr::product({Expr::constant(tinv(l, k)), Expr::variable(k + 1)}));
        }
        replacement.push_back(Expr::sum(std::move(terms)));
    }

    VectorField out;
    out.tag = field.tag == 'x' ? 'y' : 'x';
    for (int i = 0; i < kDim; ++i) {
        std::vector<Expr> terms;
        for (int j = 0; j < kDim; ++j) {
            if (t(i, j) == 0.0) continue;
            terms.push_back(Expr::product(
                {Expr::constant(t(i, j)), field.comp[static_cast<size_t>(j)].substitute(replacement)}));
        }
        out.comp[static_cast<size_t>(i)] = Expr::sum(std::move(terms));
    }
    return out;
}

WeightedField weighted_truncate(const VectorField& field_y, std::span<const int> weights,
                                double zero_tol) {
    if (weights.size() != static_cast<size_t>(kDim))
        throw std::invalid_argument("weighted_truncate: weights must have 6 entries");
    const std::array<double, kDim> origin{};
    WeightedField hat;
    for (int j = 0; j < kDim; ++j) {
        hat.weights[static_cast<size_t>(j)] = weights[static_cast<size_t>(j)];
        Polynomial taylor = Polynomial::taylor(field_y.comp[static_cast<size_t>(j)], origin,
                                               kTruncationTaylorDegree, zero_tol);
        hat.comp[static_cast<size_t>(j)] = taylor.weighted_part(weights, weights[static_cast<size_t>(j)] - 1);
    }
    return hat;
}

FirstOrderReport verify_first_order(const VectorField& g_y, const WeightedField& hat,
                                    double tol) {
    const std::array<double, kDim> origin{};
    FirstOrderReport report;
    report.pass = true;
    for (int j = 0; j < kDim; ++j) {
        Polynomial residual =
            Polynomial::taylor(g_y.comp[static_cast<size_t>(j)], origin, kTruncationTaylorDegree, tol) -
            hat.comp[static_cast<size_t>(j)];
        int wj = hat.weights[static_cast<size_t>(j)];
        for (const auto& [alpha, coeff] : residual.coefficients()) {
            int wa = weighted_degree(alpha, hat.weights);
            if (wa < wj && std::abs(coeff) > tol) {
                report.violations.push_back({j + 1, alpha, coeff, wa});
                report.pass = false;
            }
        }
    }
    return report;
}

NilpotencyReport verify_nilpotent(const WeightedField& h1, const WeightedField& h2,
                                  const WeightedField& h3, double tol) {
    std::array<VectorField, 3> hats{h1.to_field(), h2.to_field(), h3.to_field()};
    const Vec6 origin = Vec6::Zero();

    NilpotencyReport report;
    report.all_pass = true;

    std::array<std::array<VectorField, 3>, 3> pair;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) pair[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            lie_bracket(hats[static_cast<size_t>(i)], hats[static_cast<size_t>(j)]);

    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const VectorField& b = pair[static_cast<size_t>(i)][static_cast<size_t>(j)];
            NilpotencyReport::PairBracket pb;
            pb.i = i + 1;
            pb.j = j + 1;
            pb.value_at_zero = b.evaluate(origin);
            pb.constant = true;
            for (int k = 0; k < kDim; ++k) {
                Expr centered = b.comp[static_cast<size_t>(k)] - Expr::constant(pb.value_at_zero[k]);
                if (!is_zero(centered, tol)) pb.constant = false;
            }
            report.all_pass = report.all_pass && pb.constant;
            report.pair_brackets.push_back(pb);
        }

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                VectorField triple =
                    lie_bracket(pair[static_cast<size_t>(i)][static_cast<size_t>(j)], hats[static_cast<size_t>(k)]);
                NilpotencyReport::TripleBracket tb;
                tb.i = i + 1;
                tb.j = j + 1;
                tb.k = k + 1;
                tb.zero = true;
                for (int c = 0; c < kDim; ++c)
                    if (!is_zero(triple.comp[static_cast<size_t>(c)], tol)) tb.zero = false;
                report.all_pass = report.all_pass && tb.zero;
                report.triple_brackets.push_back(tb);
            }

    return report;
}

}  // namespace tsnake
