#include "tsnake/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace tsnake {

int total_degree(const MultiIndex& alpha) {
    int d = 0;
    for (int a : alpha) d += a;
    return d;
}

int weighted_degree(const MultiIndex& alpha, std::span<const int> weights) {
    if (weights.size() != static_cast<size_t>(kDim))
        throw std::invalid_argument("weights must have one entry per coordinate");
    int d = 0;
    for (int i = 0; i < kDim; ++i) d += weights[static_cast<size_t>(i)] * alpha[static_cast<size_t>(i)];
    return d;
}

namespace {

double factorial_of(const MultiIndex& alpha) {
    double f = 1.0;
    for (int a : alpha)
        for (int k = 2; k <= a; ++k) f *= k;
    return f;
}

// Enumerates multi-indices in non-decreasing variable order so each
// iterated derivative is produced exactly once from its parent.
void taylor_rec(const Expr& deriv, std::span<const double> center, MultiIndex alpha,
                int first_var, int remaining, double zero_tol, Polynomial& out) {
    double coeff = deriv.evaluate(center) / factorial_of(alpha);
    if (std::abs(coeff) > zero_tol) out.set_coefficient(alpha, coeff, zero_tol);
    if (remaining == 0) return;
    for (int i = first_var; i <= kDim; ++i) {
        MultiIndex next = alpha;
        ++next[static_cast<size_t>(i - 1)];
        taylor_rec(deriv.differentiate(i), center, next, i, remaining - 1, zero_tol, out);
    }
}

}  // namespace

Polynomial Polynomial::taylor(const Expr& e, std::span<const double> center,
                              int max_total_degree, double zero_tol) {
    if (max_total_degree < 0) throw std::invalid_argument("taylor degree must be >= 0");
    Polynomial p;
    taylor_rec(e, center, MultiIndex{}, 1, max_total_degree, zero_tol, p);
    return p;
}

double Polynomial::coefficient(const MultiIndex& alpha) const {
    auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? 0.0 : it->second;
}

void Polynomial::set_coefficient(const MultiIndex& alpha, double value, double zero_tol) {
    if (std::abs(value) <= zero_tol)
        coeffs_.erase(alpha);
    else
        coeffs_[alpha] = value;
}

double Polynomial::evaluate(std::span<const double> point) const {
    double sum = 0.0;
    for (const auto& [alpha, coeff] : coeffs_) {
        double m = coeff;
        for (int i = 0; i < kDim; ++i)
            for (int k = 0; k < alpha[static_cast<size_t>(i)]; ++k) m *= point[static_cast<size_t>(i)];
        sum += m;
    }
    return sum;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    Polynomial r = *this;
    for (const auto& [alpha, coeff] : other.coeffs_)
        r.set_coefficient(alpha, r.coefficient(alpha) - coeff, 0.0);
    return r;
}

Polynomial Polynomial::weighted_part(std::span<const int> weights, int degree) const {
    Polynomial r;
    for (const auto& [alpha, coeff] : coeffs_)
        if (weighted_degree(alpha, weights) == degree) r.coeffs_[alpha] = coeff;
    return r;
}

double Polynomial::max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [alpha, coeff] : coeffs_) m = std::max(m, std::abs(coeff));
    return m;
}

Expr Polynomial::to_expression() const {
    std::vector<Expr> terms;
    for (const auto& [alpha, coeff] : coeffs_) {
        std::vector<Expr> factors{Expr::constant(coeff)};
        for (int i = 0; i < kDim; ++i)
            for (int k = 0; k < alpha[static_cast<size_t>(i)]; ++k) factors.push_back(Expr::variable(i + 1));
        terms.push_back(Expr::product(std::move(factors)));
    }
    return Expr::sum(std::move(terms));
}

std::string Polynomial::to_string(char tag) const {
    return to_expression().to_string(tag);
}

}  // namespace tsnake
