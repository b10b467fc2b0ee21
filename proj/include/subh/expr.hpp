#pragma once

#include <cstddef>

#include "subh/field.hpp"

namespace subh {

// Syntax/type error with the 0-based offset into the source text.
struct ParseError : std::invalid_argument {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : std::invalid_argument(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

// Parse an expression over the variable z using
//   constants, re(), im(), abs(), log(), pow(,), +, -, *, /, parentheses.
// The top-level value must be real.  Terms of the shape c*log(abs(a*z+b)) are
// extracted into exact log atoms; everything else becomes the smooth part.
// Division by zero and non-real intermediate requirements are reported
// per-point at evaluation time.
ScalarField parse_field(const std::string& text, Domain domain = Domain::whole_plane());

}  // namespace subh
