#pragma once

#include "unirat/poly.hpp"

#include <cstddef>
#include <string_view>

namespace unirat {

/// Syntax or semantic error while parsing a polynomial expression.
/// `position` is the byte offset into the input where the problem starts.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

/// Parses the polynomial expression grammar
///
///   integer  ::= [0-9]+
///   rational ::= integer "/" integer
///   atom     ::= variable | integer | rational | "(" expr ")"
///   power    ::= atom ["^" integer]
///   term     ::= power (("*" power))*
///   expr     ::= ["-"] term (("+"|"-") term)*
///
/// into canonical expanded form. Whitespace is allowed between tokens.
/// Juxtaposition is not multiplication: "4x" is a syntax error. Unknown
/// variables and negative exponents are rejected.
MultiPoly parse_poly(std::string_view text, RingPtr ring);

} // namespace unirat
