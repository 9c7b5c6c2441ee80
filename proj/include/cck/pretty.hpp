#pragma once

#include <string>

#include "cck/syntax.hpp"

namespace cck {

std::string pretty_sort(const Sort& s);

// Surface rendering; parsing the result yields an alpha-equal term for any
// term expressible in the surface grammar.
std::string pretty_print(const TermPtr& t);

}  // namespace cck
