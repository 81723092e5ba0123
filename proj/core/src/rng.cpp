#include "galscaf/rng.hpp"

namespace galscaf {

LaurentSeries random_series(Rng& rng, const FqField& field, long long valuation, long long relative) {
    std::vector<Fq> c(static_cast<std::size_t>(relative));
    c[0] = random_nonzero_fq(rng, field);
    for (std::size_t i = 1; i < c.size(); ++i) c[i] = random_fq(rng, field);
    return LaurentSeries::from_coefficients(field, valuation, std::move(c), valuation + relative);
}

LaurentSeries random_series_maybe_zero(Rng& rng, const FqField& field, long long start, long long relative) {
    std::vector<Fq> c(static_cast<std::size_t>(relative));
    for (auto& x : c) x = random_fq(rng, field);
    return LaurentSeries::from_coefficients(field, start, std::move(c), start + relative);
}

TowerElement random_tower_element(Rng& rng, const PresentationPtr& presentation, long long start,
                                  long long relative, int density) {
    TowerElement e(presentation);
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (uniform_int(rng, 1, 100) > density) continue;
        e.coefficient(i) = random_series_maybe_zero(rng, *presentation->field, start, relative);
    }
    return e;
}

}  // namespace galscaf
