#ifndef TSNAKE_POLYNOMIAL_HPP
#define TSNAKE_POLYNOMIAL_HPP

#include <array>
#include <map>
#include <span>
#include <string>

#include "tsnake/expr.hpp"

namespace tsnake {

/// Monomial exponents, one per coordinate.
using MultiIndex = std::array<int, kDim>;

int total_degree(const MultiIndex& alpha);

/// Weighted degree w(alpha) = sum_i weights[i] * alpha[i].
int weighted_degree(const MultiIndex& alpha, std::span<const int> weights);

/// Default threshold below which coefficients are treated as zero.
inline constexpr double kZeroTol = 1e-9;

/// Sparse polynomial: multi-index -> coefficient.  Stored coefficients are
/// never exactly zero.  When produced by `taylor`, the variables are the
/// displacements from the expansion center.
class Polynomial {
public:
    Polynomial() = default;

    /// Taylor polynomial of `e` at `center` up to `max_total_degree`,
    /// computed by repeated symbolic differentiation; coefficients with
    /// magnitude <= zero_tol are dropped.
    static Polynomial taylor(const Expr& e, std::span<const double> center,
                             int max_total_degree, double zero_tol = kZeroTol);

    const std::map<MultiIndex, double>& coefficients() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }

    double coefficient(const MultiIndex& alpha) const;
    void set_coefficient(const MultiIndex& alpha, double value, double zero_tol = kZeroTol);

    double evaluate(std::span<const double> point) const;

    Polynomial operator-(const Polynomial& other) const;

    /// Keeps only monomials with w(alpha) == degree.
    Polynomial weighted_part(std::span<const int> weights, int degree) const;

    /// Largest |coefficient|, 0 for the zero polynomial.
    double max_abs_coefficient() const;

    /// Expression form (sum of coefficient * variable products).
    Expr to_expression() const;

    std::string to_string(char tag = 'y') const;

private:
    std::map<MultiIndex, double> coeffs_;
};

}  // namespace tsnake

#endif  // TSNAKE_POLYNOMIAL_HPP
