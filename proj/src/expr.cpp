#include "tsnake/expr.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>
#include <utility>

namespace tsnake {

namespace {

std::shared_ptr<const ExprNode> make_node(ExprNode n) {
    return std::make_shared<const ExprNode>(std::move(n));
}

}  // namespace

bool AffineForm::is_constant(double tol) const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [tol](double c) { return std::abs(c) <= tol; });
}

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(double c) {
    ExprNode n;
    n.kind = ExprKind::Constant;
    n.value = c;
    return Expr(make_node(std::move(n)));
}

Expr Expr::variable(int index) {
    if (index < 1 || index > kDim)
        throw std::invalid_argument("variable index out of range 1.." + std::to_string(kDim));
    ExprNode n;
    n.kind = ExprKind::Variable;
    n.var = index;
    return Expr(make_node(std::move(n)));
}

Expr Expr::sin(const Expr& arg) {
    if (!arg.affine_form())
        throw std::invalid_argument("non-affine trigonometric argument");
    if (arg.is_constant()) return constant(std::sin(arg.constant_value()));
    ExprNode n;
    n.kind = ExprKind::Sin;
    n.args = {arg};
    return Expr(make_node(std::move(n)));
}

Expr Expr::cos(const Expr& arg) {
    if (!arg.affine_form())
        throw std::invalid_argument("non-affine trigonometric argument");
    if (arg.is_constant()) return constant(std::cos(arg.constant_value()));
    ExprNode n;
    n.kind = ExprKind::Cos;
    n.args = {arg};
    return Expr(make_node(std::move(n)));
}

Expr Expr::sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    double c = 0.0;
    for (auto& t : terms) {
        if (t.kind() == ExprKind::Sum) {
            for (const auto& s : t.node().args) {
                if (s.is_constant())
                    c += s.constant_value();
                else
                    flat.push_back(s);
            }
        } else if (t.is_constant()) {
            c += t.constant_value();
        } else {
            flat.push_back(std::move(t));
        }
    }
    if (c != 0.0 || flat.empty()) flat.insert(flat.begin(), constant(c));
    if (flat.size() == 1) return flat.front();
    ExprNode n;
    n.kind = ExprKind::Sum;
    n.args = std::move(flat);
    return Expr(make_node(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    double c = 1.0;
    for (auto& f : factors) {
        if (f.kind() == ExprKind::Product) {
            for (const auto& s : f.node().args) {
                if (s.is_constant())
                    c *= s.constant_value();
                else
                    flat.push_back(s);
            }
        } else if (f.is_constant()) {
            c *= f.constant_value();
        } else {
            flat.push_back(std::move(f));
        }
    }
    if (c == 0.0) return constant(0.0);
    if (c != 1.0 || flat.empty()) flat.insert(flat.begin(), constant(c));
    if (flat.size() == 1) return flat.front();
    ExprNode n;
    n.kind = ExprKind::Product;
    n.args = std::move(flat);
    return Expr(make_node(std::move(n)));
}

Expr Expr::negate(const Expr& arg) {
    if (arg.is_constant()) return constant(-arg.constant_value());
    if (arg.kind() == ExprKind::Negate) return arg.node().args.front();
    ExprNode n;
    n.kind = ExprKind::Negate;
    n.args = {arg};
    return Expr(make_node(std::move(n)));
}

double Expr::constant_value() const {
    if (!is_constant()) throw std::logic_error("constant_value on non-constant expression");
    return node_->value;
}

double Expr::evaluate(std::span<const double> point) const {
    const ExprNode& n = *node_;
    switch (n.kind) {
        case ExprKind::Constant:
            return n.value;
        case ExprKind::Variable:
            if (n.var > static_cast<int>(point.size()))
                throw std::invalid_argument("evaluation point has too few coordinates");
            return point[static_cast<size_t>(n.var - 1)];
        case ExprKind::Sin:
            return std::sin(n.args.front().evaluate(point));
        case ExprKind::Cos:
            return std::cos(n.args.front().evaluate(point));
        case ExprKind::Sum: {
            double s = 0.0;
            for (const auto& a : n.args) s += a.evaluate(point);
            return s;
        }
        case ExprKind::Product: {
            double p = 1.0;
            for (const auto& a : n.args) p *= a.evaluate(point);
            return p;
        }
        case ExprKind::Negate:
            return -n.args.front().evaluate(point);
    }
    throw std::logic_error("unreachable expression kind");
}

Expr Expr::differentiate(int index) const {
    const ExprNode& n = *node_;
    switch (n.kind) {
        case ExprKind::Constant:
            return constant(0.0);
        case ExprKind::Variable:
            return constant(n.var == index ? 1.0 : 0.0);
        case ExprKind::Sin:
            return product({cos(n.args.front()), n.args.front().differentiate(index)});
        case ExprKind::Cos:
            return negate(product({sin(n.args.front()), n.args.front().differentiate(index)}));
        case ExprKind::Sum: {
            std::vector<Expr> ds;
            ds.reserve(n.args.size());
            for (const auto& a : n.args) ds.push_back(a.differentiate(index));
            return sum(std::move(ds));
        }
        case ExprKind::Product: {
            std::vector<Expr> terms;
            for (size_t i = 0; i < n.args.size(); ++i) {
                std::vector<Expr> fs = n.args;
                fs[i] = n.args[i].differentiate(index);
                terms.push_back(product(std::move(fs)));
            }
            return sum(std::move(terms));
        }
        case ExprKind::Negate:
            return negate(n.args.front().differentiate(index));
    }
    throw std::logic_error("unreachable expression kind");
}

Expr Expr::substitute(std::span<const Expr> replacements) const {
    const ExprNode& n = *node_;
    switch (n.kind) {
        case ExprKind::Constant:
            return *this;
        case ExprKind::Variable:
            if (n.var > static_cast<int>(replacements.size()))
                throw std::invalid_argument("substitution list has too few entries");
            return replacements[static_cast<size_t>(n.var - 1)];
        case ExprKind::Sin:
            return sin(n.args.front().substitute(replacements));
        case ExprKind::Cos:
            return cos(n.args.front().substitute(replacements));
        case ExprKind::Sum: {
            std::vector<Expr> ts;
            ts.reserve(n.args.size());
            for (const auto& a : n.args) ts.push_back(a.substitute(replacements));
            return sum(std::move(ts));
        }
        case ExprKind::Product: {
            std::vector<Expr> fs;
            fs.reserve(n.args.size());
            for (const auto& a : n.args) fs.push_back(a.substitute(replacements));
            return product(std::move(fs));
        }
        case ExprKind::Negate:
            return negate(n.args.front().substitute(replacements));
    }
    throw std::logic_error("unreachable expression kind");
}

std::optional<AffineForm> Expr::affine_form() const {
    const ExprNode& n = *node_;
    AffineForm f;
    f.coeffs.assign(kDim, 0.0);
    switch (n.kind) {
        case ExprKind::Constant:
            f.constant = n.value;
            return f;
        case ExprKind::Variable:
            f.coeffs[static_cast<size_t>(n.var - 1)] = 1.0;
            return f;
        case ExprKind::Sin:
        case ExprKind::Cos:
            return std::nullopt;
        case ExprKind::Sum:
            for (const auto& a : n.args) {
                auto sub = a.affine_form();
                if (!sub) return std::nullopt;
                f.constant += sub->constant;
                for (int i = 0; i < kDim; ++i) f.coeffs[static_cast<size_t>(i)] += sub->coeffs[static_cast<size_t>(i)];
            }
            return f;
        case ExprKind::Product: {
            // affine iff at most one factor is non-constant affine
            double scale = 1.0;
            std::optional<AffineForm> linear;
            for (const auto& a : n.args) {
                auto sub = a.affine_form();
                if (!sub) return std::nullopt;
                if (sub->is_constant()) {
                    scale *= sub->constant;
                } else if (!linear) {
                    linear = std::move(sub);
                } else {
                    return std::nullopt;
                }
            }
            if (!linear) {
                f.constant = scale;
                return f;
            }
            f.constant = scale * linear->constant;
            for (int i = 0; i < kDim; ++i) f.coeffs[static_cast<size_t>(i)] = scale * linear->coeffs[static_cast<size_t>(i)];
            return f;
        }
        case ExprKind::Negate: {
            auto sub = n.args.front().affine_form();
            if (!sub) return std::nullopt;
            f.constant = -sub->constant;
            for (int i = 0; i < kDim; ++i) f.coeffs[static_cast<size_t>(i)] = -sub->coeffs[static_cast<size_t>(i)];
            return f;
        }
    }
    return std::nullopt;
}

namespace {

// precedence levels: 0 sum, 1 product/negate, 2 atom
int precedence(const Expr& e) {
    switch (e.kind()) {
        case ExprKind::Sum:
            return 0;
        case ExprKind::Product:
        case ExprKind::Negate:
            return 1;
        default:
            return 2;
    }
}

std::string to_string_prec(const Expr& e, char tag, int context);

std::string wrap(const Expr& e, char tag, int context) {
    std::string s = to_string_prec(e, tag, precedence(e));
    if (precedence(e) < context) return "(" + s + ")";
    return s;
}

std::string to_string_prec(const Expr& e, char tag, int /*context*/) {
    const ExprNode& n = e.node();
    switch (n.kind) {
        case ExprKind::Constant:
            return format_double(n.value);
        case ExprKind::Variable:
            return std::string(1, tag) + std::to_string(n.var);
        case ExprKind::Sin:
            return "sin(" + to_string_prec(n.args.front(), tag, 0) + ")";
        case ExprKind::Cos:
            return "cos(" + to_string_prec(n.args.front(), tag, 0) + ")";
        case ExprKind::Sum: {
            std::string s = wrap(n.args.front(), tag, 0);
            for (size_t i = 1; i < n.args.size(); ++i) {
                std::string t = wrap(n.args[i], tag, 1);
                if (!t.empty() && t.front() == '-')
                    s += " - " + t.substr(1);
                else
                    s += " + " + t;
            }
            return s;
        }
        case ExprKind::Product: {
            std::string s = wrap(n.args.front(), tag, 2);
            for (size_t i = 1; i < n.args.size(); ++i) s += "*" + wrap(n.args[i], tag, 2);
            return s;
        }
        case ExprKind::Negate:
            return "-" + wrap(n.args.front(), tag, 2);
    }
    return {};
}

}  // namespace

std::string Expr::to_string(char tag) const {
    return to_string_prec(*this, tag, 0);
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, Expr::negate(b)}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator-(const Expr& a) { return Expr::negate(a); }

bool is_zero(const Expr& e, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("is_zero tolerance must be positive");
    // Deterministic sample points in [-1,1]^6 (seed documented in the header).
    std::mt19937 rng(kIsZeroSeed);
    std::array<double, kDim> p{};
    for (int s = 0; s < kIsZeroSamples; ++s) {
        for (auto& c : p) c = static_cast<double>(rng()) * (2.0 / 4294967295.0) - 1.0;
        if (std::abs(e.evaluate(p)) > tol) return false;
    }
    // Degree-2 Taylor coefficients at the origin.
    const std::array<double, kDim> origin{};
    if (std::abs(e.evaluate(origin)) > tol) return false;
    for (int i = 1; i <= kDim; ++i) {
        Expr di = e.differentiate(i);
        if (std::abs(di.evaluate(origin)) > tol) return false;
        for (int j = i; j <= kDim; ++j) {
            double fact = (i == j) ? 2.0 : 1.0;
            if (std::abs(di.differentiate(j).evaluate(origin)) / fact > tol) return false;
        }
    }
    return true;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace tsnake
