#ifndef TSNAKE_PARSE_HPP
#define TSNAKE_PARSE_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "tsnake/expr.hpp"

namespace tsnake {

/// Syntax or semantic error in DSL text; `position` is a 0-based byte offset
/// into the source.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)),
          position_(position) {}

    size_t position() const { return position_; }

private:
    size_t position_;
};

/// Parses the expression DSL (grammar in docs/dsl.md):
/// floating literals, `pi`, `sqrt(k)`, variables x1..x6 or y1..y6,
/// `+ - *`, division by constant subexpressions, sin(...), cos(...),
/// parentheses.  Throws ParseError on malformed input, unknown
/// identifiers, non-affine trig arguments, or division by a
/// non-constant.
Expr parse(std::string_view source);

}  // namespace tsnake

#endif  // TSNAKE_PARSE_HPP
