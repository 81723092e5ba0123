#include "doctest.h"
#include "galscaf/constructions.hpp"
#include "galscaf/error.hpp"
#include "galscaf/ramification.hpp"
#include "galscaf/scaffold.hpp"
#include "test_support.hpp"

using namespace galscaf;
using testsupport::make_spec;
using testsupport::ref1;

namespace {

// phi(l) = sum_{x=1}^{l} |G_x| / |G_0| with |G_x| = p^{#{i : b_(i) >= x}}.
Rational herbrand_by_sum(const BreakData& d, long long l) {
    const long long total = int_pow(d.p, d.n + 1);
    Rational sum = 0;
    for (long long x = 1; x <= l; ++x) {
        long long k = 0;
        for (long long b : d.lower)
            if (b >= x) ++k;
        sum += Rational(int_pow(d.p, static_cast<int>(k)), total);
    }
    return sum;
}

}  // namespace

TEST_CASE("breaks from tower data") {
    const BreakData d = breaks_from_spec(ref1());
    CHECK(d.m == std::vector<long long>{0, 1});
    CHECK(d.lower == std::vector<long long>{1, 5});
    CHECK(d.upper == std::vector<long long>{1, 3});
    CHECK(d.b_m == 5);
    CHECK(hasse_arf_holds(d));

    const BreakData flat = breaks_from_gaps(3, 2, 2, {0, 0, 0});
    CHECK(flat.lower == std::vector<long long>{2, 2, 2});
    CHECK(flat.upper == std::vector<long long>{2, 2, 2});

    const BreakData single = breaks_from_spec(make_spec(3, 1, 0, "t^-2", {"1"}));
    CHECK(single.lower == std::vector<long long>{2});
}

TEST_CASE("herbrand transform examples") {
    auto up = herbrand_lower_to_upper({1, 5}, {4, 2});
    CHECK(up == std::vector<Rational>{1, 3});
    CHECK(herbrand_upper_to_lower(up, {4, 2}) == std::vector<Rational>{1, 5});

    up = herbrand_lower_to_upper({1, 28}, {9, 3});
    CHECK(up == std::vector<Rational>{1, 10});
    // With n = 1 the gap m_1 = 1 gives b_(1) = 1 + 3 * 3 and u_(1) = 1 + 3.
    const BreakData d = breaks_from_gaps(3, 1, 1, {0, 1});
    CHECK(d.lower == std::vector<long long>{1, 10});
    CHECK(d.upper == std::vector<long long>{1, 4});
    CHECK(herbrand_lower_to_upper({1, 10}, {9, 3}) == std::vector<Rational>{1, 4});

    CHECK(herbrand_lower_to_upper({7}, {8}) == std::vector<Rational>{7});
}

TEST_CASE("herbrand transform against a direct sum") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int p = static_cast<int>(uniform_int(rng, 0, 1)) ? 3 : 2;
        const int n = static_cast<int>(uniform_int(rng, 0, 2));
        long long b = uniform_int(rng, 1, 9);
        if (b % p == 0) ++b;
        std::vector<long long> m{0};
        for (int i = 1; i <= n; ++i) m.push_back(uniform_int(rng, 0, 3));
        const BreakData d = breaks_from_gaps(p, n, b, m);
        CHECK(hasse_arf_holds(d));

        const Jumps j = lower_jumps(d);
        const auto up = herbrand_lower_to_upper(j.breaks, j.orders);
        const auto back = herbrand_upper_to_lower(up, j.orders);
        for (std::size_t k = 0; k < j.breaks.size(); ++k) {
            CHECK(up[k] == herbrand_by_sum(d, j.breaks[k]));
            CHECK(back[k] == Rational(j.breaks[k]));
            int first = 0;
            while (d.lower[first] != j.breaks[k]) ++first;
            CHECK(up[k] == Rational(d.upper[first]));
        }
    }
}

TEST_CASE("error bound examples") {
    const BreakData d = breaks_from_spec(ref1());
    auto rows = check_error_bound(make_spec(2, 1, 1, "t^-1", {"1", "t^-1"}, {"0", "t^-2"}), d);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].index == 1);
    CHECK(rows[0].bound() == Rational(-5, 2));
    CHECK(rows[0].pass);

    const auto bad = make_spec(2, 1, 1, "t^-1", {"1", "t^-1"}, {"0", "t^-3"});
    rows = check_error_bound(bad, d);
    CHECK_FALSE(rows[0].pass);
    CHECK_THROWS_AS(require_error_bound(bad, d), Error);
    try {
        require_error_bound(bad, d);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BoundViolated);
    }

    // Passes the validity clause v(epsilon_1) > 4 v(Omega_1) - b = -5 but not the bound -9/4.
    const auto tight = make_spec(2, 1, 2, "t^-1", {"1", "t^-1", "t^-2"}, {"0", "t^-4"});
    CHECK_FALSE(check_spec(tight).has_value());
    rows = check_error_bound(tight, breaks_from_spec(tight));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].bound() == Rational(-9, 4));
    CHECK_FALSE(rows[0].pass);
    CHECK(rows[1].pass);
}

TEST_CASE("bound formula agrees with the break form") {
    Rng rng(5);
    for (int p : {2, 3})
        for (int n : {1, 2})
            for (int trial = 0; trial < 5; ++trial) {
                const TowerSpec s = random_spec(rng, p, n);
                const BreakData d = breaks_from_spec(s);
                for (const auto& r : check_error_bound(s, d)) {
                    CHECK(r.scaled_bound == r.scaled_bound_from_breaks);
                    CHECK(r.pass);
                }
            }
}

TEST_CASE("direct breaks from the oracle") {
    {
        const Scaffold s = Scaffold::build(ref1());
        const DirectBreaks db = breaks_direct(uniformizer(s).element, s.oracle, true);
        CHECK(db.distinct() == std::vector<long long>{1, 5});
        CHECK(db.multiplicity.at(1) == 2);
        CHECK(db.multiplicity.at(5) == 1);
        CHECK(db.layers_homogeneous);
    }
    {
        const Scaffold s = Scaffold::build(make_spec(2, 1, 0, "t^-1", {"1"}));
        CHECK(breaks_direct(uniformizer(s).element, s.oracle, true).distinct() == std::vector<long long>{1});
    }
    {
        const auto& F = FqField::get(2, 2);
        const TowerSpec w = weakly_ramified_spec(2, 2, 1, {1, F.generator()}, {}, LaurentSeries::parse(F, "t^-1"));
        const Scaffold s = Scaffold::build(w);
        CHECK(breaks_direct(uniformizer(s).element, s.oracle, true).distinct() == std::vector<long long>{1});
    }
}
