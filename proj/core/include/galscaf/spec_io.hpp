#pragma once

#include <string>
#include <string_view>

#include "galscaf/tower.hpp"

namespace galscaf {

/**
 * Line-oriented spec files:
 *
 *     # REF1
 *     p = 2
 *     f = 1
 *     n = 1
 *     precision = 64
 *     beta = t^-1
 *     omega[0] = 1
 *     omega[1] = t^-1
 *     epsilon[1] = t^-2
 *
 * Series use the notation of LaurentSeries::to_string with F_q elements in
 * the power basis of w ("(w+1)*t^-3 + w^2"). A trailing "+ O(t^N)" marks a
 * truncated series; without it the series is exact. Missing epsilon lines
 * are zero; f defaults to 1 and precision to the library default.
 */
std::string emit_spec(const TowerSpec& spec);
// Throws ParseError with the offending line number.
TowerSpec parse_spec(std::string_view text);
TowerSpec load_spec(const std::string& path);

}  // namespace galscaf
