#pragma once

#include <boost/rational.hpp>
#include <map>
#include <string>
#include <vector>

#include "galscaf/tower.hpp"

namespace galscaf {

using Rational = boost::rational<long long>;

/**
 * Break numbers of a tower predicted from its data:
 *
 *     m_i   = v(Omega_{i-1}) - v(Omega_i)                 (1 <= i <= n)
 *     b_(i) = b + p^n sum_{j<=i} p^j m_j                   lower breaks
 *     u_(i) = b + p^n sum_{j<=i} m_j                       upper breaks
 *
 * m[0] is always 0 so that m[i] lines up with the index used above.
 */
struct BreakData {
    int p = 2;
    int n = 0;
    long long b = 0;
    std::vector<long long> m;
    std::vector<long long> lower;
    std::vector<long long> upper;
    long long b_m = 0;  // largest lower break, b_(n)
};

BreakData breaks_from_spec(const TowerSpec& spec);
// Breaks from raw data; used by generators that know (b, m) before a spec exists.
BreakData breaks_from_gaps(int p, int n, long long b, const std::vector<long long>& m);

// b_(i) = b_(n) mod p^{i+1} for every i.
bool hasse_arf_holds(const BreakData& data);

/// Distinct jumps of a filtration with |G_x| at each jump.
struct Jumps {
    std::vector<long long> breaks;  // strictly increasing
    std::vector<long long> orders;  // |G_{breaks[k]}|, strictly decreasing
};

// Collapse the lower breaks b_(0..n) (with repetition) into jumps with the
// orders |G_{b_(i)}| = p^{n+1-i} for the first index i of each value.
Jumps lower_jumps(const BreakData& data);

// Herbrand phi on the knots: u_0 = l_0 and
// u_k = u_{k-1} + (l_k - l_{k-1}) |G_{l_k}| / |G|.
std::vector<Rational> herbrand_lower_to_upper(const std::vector<long long>& lower, const std::vector<long long>& orders);
// Herbrand psi, the inverse transform.
std::vector<Rational> herbrand_upper_to_lower(const std::vector<Rational>& upper, const std::vector<long long>& orders);

/// Per-index evaluation of the error bound on epsilon_i.
struct ErrorBoundRow {
    int index = 0;
    bool epsilon_zero = false;
    long long epsilon_valuation = 0;  // meaningful when !epsilon_zero
    // Bound scaled by p^n:
    // -b - p^n sum_{j<=i} p^j m_j + p^n sum_{j>i} (p^n - p^j) m_j
    long long scaled_bound = 0;
    // The same bound from breaks, scaled by p^n: -b_(n) + p^n (u_(n) - u_(i)).
    long long scaled_bound_from_breaks = 0;
    // A nonnegative bound forces epsilon_i into K^wp, i.e. no error at all.
    bool forces_no_error = false;
    bool pass = false;
    long long scale = 1;  // p^n

    Rational bound() const { return Rational(scaled_bound, scale); }
};

std::vector<ErrorBoundRow> check_error_bound(const TowerSpec& spec, const BreakData& data);
// Throws BoundViolated naming the first failing index.
void require_error_bound(const TowerSpec& spec, const BreakData& data);

/// One measured value i(sigma) = v_L((sigma - 1) pi_L) - 1.
struct BreakObservation {
    GroupIndex sigma;
    long long value = 0;
};

struct DirectBreaks {
    std::vector<BreakObservation> observations;
    // Distinct values with the number of group elements attaining them.
    std::map<long long, long long> multiplicity;
    // Values seen inside each layer <sigma_i..sigma_n> \ <sigma_{i+1}..sigma_n>.
    std::vector<std::vector<long long>> layer_values;
    bool layers_homogeneous = true;

    std::vector<long long> distinct() const;
};

/**
 * Break numbers from the definition of G_i: measures i(sigma) with the
 * oracle for the generators sigma_i and one random element of every layer
 * <sigma_i, ..., sigma_n> minus <sigma_{i+1}, ..., sigma_n>, or for every
 * nonidentity sigma when `exhaustive` is set. In sampled mode the counts in
 * `multiplicity` take each layer as homogeneous, which `layers_homogeneous`
 * confirms on the samples.
 */
DirectBreaks breaks_direct(const TowerElement& uniformizer, const ValuationOracle& oracle, bool exhaustive,
                           unsigned long long seed = 1);

}  // namespace galscaf
