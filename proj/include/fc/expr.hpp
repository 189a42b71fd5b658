#pragma once

#include <string>

#include "fc/ratfun.hpp"

namespace fc {

// Grammar: integers, rationals p/q, symbols, + - * /, parentheses, and ^ with
// a nonnegative integer exponent (so canonical output re-parses). Unknown
// identifiers are registered as new symbols.
RationalFunction parse_expression(const std::string& text);

// Canonical text: terms in descending graded lex, no whitespace; a quotient
// prints as (num)/(den). Bit-exact across runs for equal values.
std::string to_string(const Polynomial& p);
std::string to_string(const RationalFunction& f);

}  // namespace fc
