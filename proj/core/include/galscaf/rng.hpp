#pragma once

#include <cstdint>
#include <random>

#include "galscaf/fq.hpp"
#include "galscaf/laurent.hpp"
#include "galscaf/tower.hpp"

namespace galscaf {

// std::mt19937_64 output is fixed by the standard, the distributions are not,
// so integers are drawn by plain reduction to keep runs reproducible across
// standard libraries.
using Rng = std::mt19937_64;

inline long long uniform_int(Rng& rng, long long lo, long long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(rng() % span);
}

inline Fq random_fq(Rng& rng, const FqField& field) {
    return static_cast<Fq>(uniform_int(rng, 0, field.q() - 1));
}

inline Fq random_nonzero_fq(Rng& rng, const FqField& field) {
    return static_cast<Fq>(uniform_int(rng, 1, field.q() - 1));
}

// Series with certified valuation `valuation` (nonzero leading coefficient)
// and `relative` known coefficients.
LaurentSeries random_series(Rng& rng, const FqField& field, long long valuation, long long relative);

// Like random_series but the leading coefficient may vanish.
LaurentSeries random_series_maybe_zero(Rng& rng, const FqField& field, long long start, long long relative);

// Element whose coefficients are random series starting at `start`
// (possibly with vanishing leading terms); `density` is the chance in percent
// that a monomial is present at all.
TowerElement random_tower_element(Rng& rng, const PresentationPtr& presentation, long long start,
                                  long long relative, int density = 100);

}  // namespace galscaf
