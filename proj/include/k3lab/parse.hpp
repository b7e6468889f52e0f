#pragma once
// Infix expressions: + - * / ^, parentheses, integers and variable names.
#include <string_view>

#include "k3lab/ratfunc.hpp"

namespace k3lab {

RationalFunction parse_rf(std::string_view text, const VarList& vars);
// Throws ParseError when the expression divides by a non-constant.
Poly parse_poly(std::string_view text, const VarList& vars);

}  // namespace k3lab
