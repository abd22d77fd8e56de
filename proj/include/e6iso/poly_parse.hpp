#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace e6iso {

// Splits "2*t^2 - 3/4*t + 1" into (coefficient literal, degree) terms.
// Coefficients keep their sign; like degrees are not merged.
std::vector<std::pair<std::string, int>> parse_poly_terms(std::string_view text, std::string_view var);

}  // namespace e6iso
