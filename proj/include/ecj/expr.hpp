#pragma once

#include <string_view>

#include "ecj/mpoly.hpp"
#include "ecj/ratfunc.hpp"

namespace ecj {

// Recursive-descent reader for
//   expr   := unary (("+" | "-") unary)*      (leading term may be negated)
//   term   := unary (("*" | "/") unary)*
//   unary  := "-" unary | factor
//   factor := atom ("^" nat)?
//   atom   := int | ident | "(" expr ")"
// Identifiers must exist in the registry. `line` only feeds error positions.
// parse_polynomial accepts "/" only with a nonzero constant divisor.
MPoly parse_polynomial(std::string_view text, const RegistryPtr& reg, int line = 1,
                       OrderPtr order = nullptr);
RatFunc parse_ratfunc(std::string_view text, const RegistryPtr& reg, int line = 1);

}  // namespace ecj
