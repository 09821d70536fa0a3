#include "tsnake/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

namespace tsnake {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    double number = 0.0;
    size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        current_.pos = i_;
        if (i_ >= src_.size()) {
            current_.kind = Tok::End;
            current_.text.clear();
            return;
        }
        char c = src_[i_];
        switch (c) {
            case '+': current_.kind = Tok::Plus; break;
            case '-': current_.kind = Tok::Minus; break;
            case '*': current_.kind = Tok::Star; break;
            case '/': current_.kind = Tok::Slash; break;
            case '(': current_.kind = Tok::LParen; break;
            case ')': current_.kind = Tok::RParen; break;
            default: current_.kind = Tok::End; break;
        }
        if (current_.kind != Tok::End || c == ')') {
            current_.text = std::string(1, c);
            ++i_;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t start = i_;
            const char* begin = src_.data() + start;
            const char* end = src_.data() + src_.size();
            double value = 0.0;
            auto res = std::from_chars(begin, end, value);
            if (res.ec != std::errc{})
                throw ParseError("malformed number", start);
            i_ = static_cast<size_t>(res.ptr - src_.data());
            current_.kind = Tok::Number;
            current_.number = value;
            current_.text = std::string(src_.substr(start, i_ - start));
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = i_;
            while (i_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
                ++i_;
            current_.kind = Tok::Ident;
            current_.text = std::string(src_.substr(start, i_ - start));
            return;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", i_);
    }

    std::string_view src_;
    size_t i_ = 0;
    Token current_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    Expr run() {
        Expr e = expression();
        const Token& t = lex_.peek();
        if (t.kind != Tok::End) throw ParseError("unexpected trailing input", t.pos);
        return e;
    }

private:
    Expr expression() {
        std::vector<Expr> terms{term()};
        while (true) {
            Tok k = lex_.peek().kind;
            if (k == Tok::Plus) {
                lex_.take();
                terms.push_back(term());
            } else if (k == Tok::Minus) {
                lex_.take();
                terms.push_back(Expr::negate(term()));
            } else {
                break;
            }
        }
        return Expr::sum(std::move(terms));
    }

    Expr term() {
        std::vector<Expr> factors{factor()};
        while (true) {
            Tok k = lex_.peek().kind;
            if (k == Tok::Star) {
                lex_.take();
                factors.push_back(factor());
            } else if (k == Tok::Slash) {
                Token slash = lex_.take();
                Expr rhs = factor();
                if (!rhs.is_constant())
                    throw ParseError("division only by constant expressions", slash.pos);
                double d = rhs.constant_value();
                if (d == 0.0) throw ParseError("division by zero", slash.pos);
                factors.push_back(Expr::constant(1.0 / d));
            } else {
                break;
            }
        }
        return Expr::product(std::move(factors));
    }

    Expr factor() {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::Minus:
                return Expr::negate(factor());
            case Tok::Number:
                return Expr::constant(t.number);
            case Tok::LParen: {
                Expr e = expression();
                expect(Tok::RParen, "expected ')'");
                return e;
            }
            case Tok::Ident:
                return identifier(t);
            default:
                throw ParseError("expected a number, identifier, or '('", t.pos);
        }
    }

    Expr identifier(const Token& t) {
        if (t.text == "pi") return Expr::constant(M_PI);
        if (t.text == "sqrt") {
            expect(Tok::LParen, "expected '(' after sqrt");
            Token arg = lex_.take();
            if (arg.kind != Tok::Number || arg.number != std::floor(arg.number) || arg.number < 0)
                throw ParseError("sqrt expects a non-negative integer literal", arg.pos);
            expect(Tok::RParen, "expected ')'");
            return Expr::constant(std::sqrt(arg.number));
        }
        if (t.text == "sin" || t.text == "cos") {
            expect(Tok::LParen, "expected '(' after " + t.text);
            Expr arg = expression();
            expect(Tok::RParen, "expected ')'");
            try {
                return t.text == "sin" ? Expr::sin(arg) : Expr::cos(arg);
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), t.pos);
            }
        }
        // variables x1..x6 / y1..y6
        if (t.text.size() == 2 && (t.text[0] == 'x' || t.text[0] == 'y') &&
            t.text[1] >= '1' && t.text[1] <= '0' + kDim) {
            return Expr::variable(t.text[1] - '0');
        }
        throw ParseError("unknown identifier '" + t.text + "'", t.pos);
    }

    void expect(Tok kind, const std::string& message) {
        Token t = lex_.take();
        if (t.kind != kind) throw ParseError(message, t.pos);
    }

    Lexer lex_;
};

}  // namespace

Expr parse(std::string_view source) {
    return Parser(source).run();
}

}  // namespace tsnake
