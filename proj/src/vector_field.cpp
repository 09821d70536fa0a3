#include "tsnake/vector_field.hpp"

#include <cmath>

namespace tsnake {

Vec6 VectorField::evaluate(const Vec6& p) const {
    std::array<double, kDim> pt;
    Eigen::Map<Vec6>(pt.data()) = p;
    Vec6 v;
    for (int k = 0; k < kDim; ++k) v[k] = comp[static_cast<size_t>(k)].evaluate(pt);
    return v;
}

std::string VectorField::to_string() const {
    std::string out;
    for (int k = 0; k < kDim; ++k) {
        const Expr& c = comp[static_cast<size_t>(k)];
        if (c.is_constant() && c.constant_value() == 0.0) continue;
        std::string basis = "d/d" + std::string(1, tag) + std::to_string(k + 1);
        std::string term;
        if (c.is_constant() && c.constant_value() == 1.0) {
            term = basis;
        } else if (c.is_constant() && c.constant_value() == -1.0) {
            term = "-" + basis;
        } else {
            std::string cs = c.to_string(tag);
            bool atom = c.kind() != ExprKind::Sum && c.kind() != ExprKind::Negate;
            term = (atom ? cs : "(" + cs + ")") + "*" + basis;
        }
        if (out.empty()) {
            out = term;
        } else if (term.front() == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return out.empty() ? "0" : out;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    if (X.tag != Y.tag)
        throw std::invalid_argument("lie_bracket: coordinate tags differ");
    VectorField b;
    b.tag = X.tag;
    for (int k = 0; k < kDim; ++k) {
        std::vector<Expr> terms;
        for (int j = 1; j <= kDim; ++j) {
            terms.push_back(Expr::product({X.comp[static_cast<size_t>(j - 1)],
                                           Y.comp[static_cast<size_t>(k)].differentiate(j)}));
            terms.push_back(Expr::negate(Expr::product(
                {Y.comp[static_cast<size_t>(j - 1)], X.comp[static_cast<size_t>(k)].differentiate(j)})));
        }
        b.comp[static_cast<size_t>(k)] = Expr::sum(std::move(terms));
    }
    return b;
}

Vec6 fd_bracket(const VectorField& X, const VectorField& Y, const Vec6& p, double h) {
    if (h <= 0.0) throw std::invalid_argument("fd_bracket: step must be positive");
    Mat6 jx, jy;
    for (int j = 0; j < kDim; ++j) {
        Vec6 pp = p, pm = p;
        pp[j] += h;
        pm[j] -= h;
        jx.col(j) = (X.evaluate(pp) - X.evaluate(pm)) / (2.0 * h);
        jy.col(j) = (Y.evaluate(pp) - Y.evaluate(pm)) / (2.0 * h);
    }
    return jy * X.evaluate(p) - jx * Y.evaluate(p);
}

Expr lie_derivative(const VectorField& X, const Expr& f) {
    std::vector<Expr> terms;
    for (int j = 1; j <= kDim; ++j)
        terms.push_back(Expr::product({X.comp[static_cast<size_t>(j - 1)], f.differentiate(j)}));
    return Expr::sum(std::move(terms));
}

std::vector<int> Flag::weights() const {
    return weights_from_dims(dims);
}

std::vector<int> weights_from_dims(std::span<const int> dims) {
    if (dims.empty() || dims.back() != kDim)
        throw std::invalid_argument("dims must reach the full dimension");
    int prev = 0;
    std::vector<int> w;
    for (size_t s = 0; s < dims.size(); ++s) {
        int n = dims[s];
        if (n <= prev) throw std::invalid_argument("dims must increase strictly");
        for (int j = prev; j < n; ++j) w.push_back(static_cast<int>(s) + 1);
        prev = n;
    }
    return w;
}

NotBracketGenerating::NotBracketGenerating(std::vector<int> dims, int depth)
    : std::runtime_error("not bracket-generating at p within depth " + std::to_string(depth)),
      dims_(std::move(dims)),
      depth_(depth) {}

namespace {

int numeric_rank(const Eigen::MatrixXd& m, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > tol * sv[0]) ++r;
    return r;
}

}  // namespace

Flag growth_vector(std::span<const VectorField> fields, const Vec6& p, double tol, int depth_cap) {
    if (fields.empty()) throw std::invalid_argument("growth_vector: empty field list");
    if (tol <= 0.0) throw std::invalid_argument("growth_vector: tolerance must be positive");

    std::vector<VectorField> level(fields.begin(), fields.end());
    std::vector<Vec6> columns;
    Flag flag;
    for (int depth = 1; depth <= depth_cap; ++depth) {
        for (const auto& f : level) columns.push_back(f.evaluate(p));
        Eigen::MatrixXd m(kDim, static_cast<Eigen::Index>(columns.size()));
        for (size_t c = 0; c < columns.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = columns[c];
        flag.dims.push_back(numeric_rank(m, tol));
        if (flag.dims.back() == kDim) return flag;

        if (depth == depth_cap) break;
        // next level: left-nested brackets [g_i, Y] for Y in the current level
        std::vector<VectorField> next;
        for (const auto& y : level)
            for (const auto& g : fields) next.push_back(lie_bracket(g, y));
        level = std::move(next);
    }
    throw NotBracketGenerating(flag.dims, depth_cap);
}

std::optional<int> function_order(const Expr& f, const Vec6& p,
                                  std::span<const VectorField> fields, int max_order,
                                  double tol) {
    if (max_order < 0) throw std::invalid_argument("function_order: max_order must be >= 0");
    std::array<double, kDim> pt;
    Eigen::Map<Vec6>(pt.data()) = p;

    std::vector<Expr> level{f};
    for (int s = 0; s <= max_order; ++s) {
        for (const auto& e : level)
            if (std::abs(e.evaluate(pt)) > tol) return s;
        if (s == max_order) break;
        std::vector<Expr> next;
        next.reserve(level.size() * fields.size());
        for (const auto& e : level)
            for (const auto& X : fields) next.push_back(lie_derivative(X, e));
        level = std::move(next);
    }
    return std::nullopt;
}

}  // namespace tsnake
