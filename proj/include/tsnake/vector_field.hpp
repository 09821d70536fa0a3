#ifndef TSNAKE_VECTOR_FIELD_HPP
#define TSNAKE_VECTOR_FIELD_HPP

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsnake/expr.hpp"
#include "tsnake/polynomial.hpp"

namespace tsnake {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Vector field on R^6 with symbolic components.  `tag` names the
/// coordinate system the components are written in ('x' or 'y').
struct VectorField {
    char tag = 'x';
    std::array<Expr, kDim> comp{};

    Vec6 evaluate(const Vec6& p) const;

    /// Printable form, e.g. "d/dx1 + sin(x4 - 2.0943951023931953)*d/dx4 + ...".
    std::string to_string() const;
};

/// Symbolic Lie bracket [X, Y]; component k is
/// sum_j (X_j dY_k/dx_j - Y_j dX_k/dx_j).  Throws on coordinate-tag mismatch.
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

/// Finite-difference bracket oracle: JY(p) X(p) - JX(p) Y(p) with
/// central-difference Jacobians of step h.  Independent of the symbolic path.
Vec6 fd_bracket(const VectorField& X, const VectorField& Y, const Vec6& p, double h);

/// Lie derivative X f = sum_j X_j df/dx_j (symbolic).
Expr lie_derivative(const VectorField& X, const Expr& f);

/// Dimensions of the bracket flag at a point, with derived weights.
struct Flag {
    std::vector<int> dims;  // n_1 < n_2 < ... < n_r = 6

    int degree_of_nonholonomy() const { return static_cast<int>(dims.size()); }
    std::vector<int> weights() const;
};

/// Weight rule w_j = s iff n_{s-1} < j <= n_s.  dims must increase strictly
/// and reach the full dimension.
std::vector<int> weights_from_dims(std::span<const int> dims);

/// Thrown when the flag fails to reach full rank within the depth cap.
class NotBracketGenerating : public std::runtime_error {
public:
    NotBracketGenerating(std::vector<int> dims, int depth);

    const std::vector<int>& dims() const { return dims_; }
    int depth() const { return depth_; }

private:
    std::vector<int> dims_;
    int depth_;
};

/// Relative singular-value cutoff for numeric rank decisions.
inline constexpr double kRankTol = 1e-8;

/// Depth cap guarding against non-bracket-generating inputs.
inline constexpr int kBracketDepthCap = 4;

/// Growth vector of the distribution spanned by `fields` at `p`: ranks of
/// the flag obtained by adjoining iterated (left-nested) brackets level by
/// level.  Throws NotBracketGenerating if full rank is not reached within
/// `depth_cap` levels.
Flag growth_vector(std::span<const VectorField> fields, const Vec6& p,
                   double tol = kRankTol, int depth_cap = kBracketDepthCap);

/// Non-holonomic order of `f` at `p`: the smallest s such that some iterated
/// Lie derivative X_{i1}...X_{is} f is nonzero at p (threshold `tol`),
/// searching words breadth-first.  Returns nullopt when every derivative up
/// to order `max_order` vanishes (order >= max_order + 1).
std::optional<int> function_order(const Expr& f, const Vec6& p,
                                  std::span<const VectorField> fields, int max_order,
                                  double tol = kZeroTol);

}  // namespace tsnake

#endif  // TSNAKE_VECTOR_FIELD_HPP
