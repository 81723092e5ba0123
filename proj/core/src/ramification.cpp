#include "galscaf/ramification.hpp"

#include <algorithm>

#include "galscaf/error.hpp"
#include "galscaf/rng.hpp"

namespace galscaf {

BreakData breaks_from_gaps(int p, int n, long long b, const std::vector<long long>& m) {
    if (static_cast<int>(m.size()) != n + 1)
        throw Error(ErrorCode::InvalidArgument, "ramification", "need m_0..m_n");
    BreakData d;
    d.p = p;
    d.n = n;
    d.b = b;
    d.m = m;
    d.m[0] = 0;
    const long long pn = int_pow(p, n);
    long long lower_sum = 0;
    long long upper_sum = 0;
    for (int i = 0; i <= n; ++i) {
        lower_sum += int_pow(p, i) * d.m[i];
        upper_sum += d.m[i];
        d.lower.push_back(b + pn * lower_sum);
        d.upper.push_back(b + pn * upper_sum);
    }
    d.b_m = d.lower.back();
    if (!hasse_arf_holds(d))
        throw Error(ErrorCode::LemmaViolation, "ramification", "Hasse-Arf congruences fail for the break formulas");
    return d;
}

BreakData breaks_from_spec(const TowerSpec& spec) {
    validate_spec(spec);
    std::vector<long long> m(spec.n + 1, 0);
    for (int i = 1; i <= spec.n; ++i) m[i] = spec.omegas[i - 1].valuation() - spec.omegas[i].valuation();
    return breaks_from_gaps(spec.p, spec.n, spec.b(), m);
}

bool hasse_arf_holds(const BreakData& d) {
    for (int i = 0; i <= d.n; ++i) {
        const long long mod = int_pow(d.p, i + 1);
        if (((d.lower[i] - d.lower[d.n]) % mod + mod) % mod != 0) return false;
    }
    return true;
}

Jumps lower_jumps(const BreakData& d) {
    Jumps j;
    for (int i = 0; i <= d.n; ++i) {
        if (!j.breaks.empty() && j.breaks.back() == d.lower[i]) continue;
        j.breaks.push_back(d.lower[i]);
        j.orders.push_back(int_pow(d.p, d.n + 1 - i));
    }
    return j;
}

std::vector<Rational> herbrand_lower_to_upper(const std::vector<long long>& lower, const std::vector<long long>& orders) {
    if (lower.size() != orders.size() || lower.empty())
        throw Error(ErrorCode::InvalidArgument, "ramification", "need one order per break");
    const long long total = orders[0];
    std::vector<Rational> upper{Rational(lower[0])};
    for (std::size_t k = 1; k < lower.size(); ++k) {
        if (lower[k] <= lower[k - 1] || orders[k] >= orders[k - 1])
            throw Error(ErrorCode::InvalidArgument, "ramification", "breaks must increase and orders decrease");
        upper.push_back(upper.back() + Rational(lower[k] - lower[k - 1]) * Rational(orders[k], total));
    }
    return upper;
}

std::vector<Rational> herbrand_upper_to_lower(const std::vector<Rational>& upper, const std::vector<long long>& orders) {
    if (upper.size() != orders.size() || upper.empty())
        throw Error(ErrorCode::InvalidArgument, "ramification", "need one order per break");
    const long long total = orders[0];
    std::vector<Rational> lower{upper[0]};
    for (std::size_t k = 1; k < upper.size(); ++k)
        lower.push_back(lower.back() + (upper[k] - upper[k - 1]) * Rational(total, orders[k]));
    return lower;
}

std::vector<ErrorBoundRow> check_error_bound(const TowerSpec& spec, const BreakData& d) {
    const long long pn = int_pow(spec.p, spec.n);
    std::vector<ErrorBoundRow> rows;
    for (int i = 1; i <= spec.n; ++i) {
        ErrorBoundRow r;
        r.index = i;
        r.scale = pn;
        long long below = 0;
        long long above = 0;
        for (int j = 1; j <= i; ++j) below += int_pow(spec.p, j) * d.m[j];
        for (int j = i + 1; j <= spec.n; ++j) above += (pn - int_pow(spec.p, j)) * d.m[j];
        r.scaled_bound = -d.b + pn * (-below + above);
        r.scaled_bound_from_breaks = -d.lower[spec.n] + pn * (d.upper[spec.n] - d.upper[i]);
        r.forces_no_error = r.scaled_bound >= 0;
        const LaurentSeries& eps = spec.epsilons[i];
        r.epsilon_zero = eps.is_zero();
        if (r.epsilon_zero) {
            r.pass = true;
        } else {
            r.epsilon_valuation = eps.valuation();
            r.pass = pn * r.epsilon_valuation > r.scaled_bound;
        }
        rows.push_back(r);
    }
    return rows;
}

void require_error_bound(const TowerSpec& spec, const BreakData& d) {
    for (const auto& r : check_error_bound(spec, d)) {
        if (r.scaled_bound != r.scaled_bound_from_breaks)
            throw Error(ErrorCode::LemmaViolation, "ramification", "the two forms of the error bound disagree");
        if (!r.pass)
            throw Error(ErrorCode::BoundViolated, "ramification",
                        "epsilon_" + std::to_string(r.index) + " has valuation " +
                            std::to_string(r.epsilon_valuation) + " but must exceed " +
                            std::to_string(r.scaled_bound) + "/" + std::to_string(int_pow(spec.p, spec.n)));
    }
}

std::vector<long long> DirectBreaks::distinct() const {
    std::vector<long long> out;
    for (const auto& [v, count] : multiplicity) out.push_back(v);
    return out;
}

DirectBreaks breaks_direct(const TowerElement& pi, const ValuationOracle& oracle, bool exhaustive,
                           unsigned long long seed) {
    const Presentation& P = pi.pres();
    const int p = P.p;
    const int n = P.n;
    DirectBreaks out;
    out.layer_values.resize(n + 1);
    auto measure = [&](const GroupIndex& g) {
        TowerElement diff = apply_group_element(g, pi) - pi;
        BreakObservation obs{g, oracle.valuation(diff) - 1};
        out.observations.push_back(obs);
        int layer = 0;
        while (g.a[layer] == 0) ++layer;
        out.layer_values[layer].push_back(obs.value);
        return obs.value;
    };

    if (exhaustive) {
        for (long long k = 1; k < P.degree(); ++k) {
            long long v = measure(GroupIndex::from_ordinal(p, n, k));
            ++out.multiplicity[v];
        }
    } else {
        Rng rng(seed);
        for (int i = 0; i <= n; ++i) {
            measure(GroupIndex::generator(n, i));
            GroupIndex g = GroupIndex::identity(n);
            g.a[i] = static_cast<int>(uniform_int(rng, 1, p - 1));
            for (int k = i + 1; k <= n; ++k) g.a[k] = static_cast<int>(uniform_int(rng, 0, p - 1));
            measure(g);
        }
        for (int i = 0; i <= n; ++i) {
            const long long layer_size = int_pow(p, n + 1 - i) - int_pow(p, n - i);
            out.multiplicity[out.layer_values[i].front()] += layer_size;
        }
    }
    for (const auto& values : out.layer_values)
        for (long long v : values)
            if (v != values.front()) out.layers_homogeneous = false;
    return out;
}

}  // namespace galscaf
