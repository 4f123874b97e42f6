#pragma once

#include "lamlab/term.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lamlab {

// Named closed terms: combinators, Church encodings and factorial bodies.
// Accepts "church:N" for numerals.  Throws DomainError for unknown names.
Term builtin(std::string_view name);

Term church(std::uint64_t n);
// n when t is alpha-equal to a Church numeral, -1 otherwise.
long long church_value(const Term& t);

std::vector<std::string> builtin_names();

} // namespace lamlab
