#ifndef TSNAKE_EXPR_HPP
#define TSNAKE_EXPR_HPP

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsnake {

/// Dimension of the configuration space (x, y, theta, phi1, phi2, phi3).
inline constexpr int kDim = 6;

enum class ExprKind { Constant, Variable, Sin, Cos, Sum, Product, Negate };

class Expr;

/// Affine decomposition c0 + sum_i coeff[i] * x_{i+1} of an expression,
/// when one exists.
struct AffineForm {
    double constant = 0.0;
    std::vector<double> coeffs;  // one per variable, 1-based index i -> coeffs[i-1]

    bool is_constant(double tol = 0.0) const;
};

struct ExprNode {
    ExprKind kind;
    double value = 0.0;      // Constant
    int var = 0;             // Variable, 1-based
    std::vector<Expr> args;  // Sin/Cos/Negate: 1 arg; Sum/Product: >= 2
};

/// Immutable symbolic scalar expression over coordinates x1..x6.
///
/// The grammar is closed under partial differentiation: constants,
/// variables, sums, products, negation, and sin/cos whose arguments are
/// affine combinations of variables.  Evaluation is finite everywhere
/// (no divisions or singular functions).  Handles share nodes; all
/// operations are pure, so expressions are safe to use concurrently.
class Expr {
public:
    /// Default-constructs the constant 0.
    Expr();

    static Expr constant(double c);
    static Expr variable(int index);  // 1-based, 1..kDim
    /// Throws std::invalid_argument if the argument is not affine.
    static Expr sin(const Expr& arg);
    /// Throws std::invalid_argument if the argument is not affine.
    static Expr cos(const Expr& arg);
    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr negate(const Expr& arg);

    const ExprNode& node() const { return *node_; }
    ExprKind kind() const { return node_->kind; }

    bool is_constant() const { return node_->kind == ExprKind::Constant; }
    /// Value of a Constant node; throws otherwise.
    double constant_value() const;

    double evaluate(std::span<const double> point) const;

    /// Symbolic partial derivative with respect to variable `index` (1-based).
    Expr differentiate(int index) const;

    /// Replaces each variable i by replacement[i-1].  The result stays in
    /// grammar as long as trig arguments remain affine after substitution
    /// (always the case for affine replacements).
    Expr substitute(std::span<const Expr> replacements) const;

    /// Affine decomposition, or nullopt if the expression is not affine.
    std::optional<AffineForm> affine_form() const;

    /// DSL text; `tag` selects the variable letter ('x' or 'y').
    std::string to_string(char tag = 'x') const;

private:
    explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const ExprNode> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

/// True iff `e` vanishes within `tol` on a fixed deterministic sample of
/// points in [-1,1]^6 and its degree-2 Taylor coefficients at 0 are all
/// below `tol` in magnitude.  Sound at the configured tolerance for the
/// grammar in use; not a canonical-form decision procedure.
bool is_zero(const Expr& e, double tol = 1e-9);

/// Sample count and RNG seed used by is_zero (deterministic across runs).
inline constexpr int kIsZeroSamples = 64;
inline constexpr unsigned kIsZeroSeed = 0x5eedu;

/// Shortest round-trip decimal text for a double (17 significant digits max).
std::string format_double(double v);

}  // namespace tsnake

#endif  // TSNAKE_EXPR_HPP
