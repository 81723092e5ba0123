#include "doctest.h"
#include "galscaf/constructions.hpp"
#include "galscaf/error.hpp"
#include "galscaf/group_algebra.hpp"
#include "galscaf/rng.hpp"
#include "test_support.hpp"

using namespace galscaf;
using testsupport::make_spec;
using testsupport::ref1;
using testsupport::series;

namespace {

// 1 + sum_g c_g (g - 1) with random coefficients.
GroupAlgebraElement random_one_unit(Rng& rng, const FqField& F, int p, int n) {
    auto u = GroupAlgebraElement::one(F, p, n);
    const auto one = GroupAlgebraElement::one(F, p, n);
    for (long long k = 1; k < int_pow(p, n + 1); ++k) {
        if (uniform_int(rng, 0, 2) == 0) continue;
        const auto g = GroupAlgebraElement::group_element(F, p, n, GroupIndex::from_ordinal(p, n, k));
        u = u + (g - one).scaled(random_series(rng, F, uniform_int(rng, -2, 2), 12));
    }
    return u;
}

GroupAlgebraElement random_element(Rng& rng, const FqField& F, int p, int n) {
    GroupAlgebraElement e(F, p, n);
    for (std::size_t k = 0; k < e.size(); ++k) e.coefficient(k) = random_series_maybe_zero(rng, F, -2, 12);
    return e;
}

}  // namespace

TEST_CASE("binomial coefficients") {
    const FqField& F3 = FqField::get(3, 1);
    CHECK(binom_scalar(series(F3, "t^-1"), 2, 3) == series(F3, "2*t^-2 + t^-1"));
    CHECK(binom_scalar(series(F3, "t^-1"), 0, 3) == LaurentSeries::one(F3));
    CHECK(binom_scalar(series(F3, "t^-1"), 1, 3) == series(F3, "t^-1"));
    CHECK_THROWS_AS(binom_scalar(series(F3, "t"), 3, 3), Error);

    // binom(c, i) for c in F_p is the ordinary binomial coefficient mod p.
    const FqField& F5 = FqField::get(5, 1);
    for (int c = 0; c < 5; ++c)
        for (int i = 0; i < 5; ++i) {
            long long expected = 1;
            for (int k = 0; k < i; ++k) expected = expected * (c - k) / (k + 1);
            CHECK(binom_scalar(LaurentSeries::constant(F5, c), i, 5) ==
                  LaurentSeries::constant(F5, static_cast<Fq>(((expected % 5) + 5) % 5)));
        }

    // Pascal's rule binom(A + 1, i) = binom(A, i) + binom(A, i - 1).
    Rng rng(3);
    for (int p : {2, 3, 5}) {
        const FqField& F = FqField::get(p, 1);
        for (int trial = 0; trial < 10; ++trial) {
            const auto A = random_series(rng, F, uniform_int(rng, -3, 3), 10);
            const auto A1 = A + LaurentSeries::one(F);
            for (int i = 1; i < p; ++i)
                CHECK(binom_scalar(A1, i, p).agrees_with(binom_scalar(A, i, p) + binom_scalar(A, i - 1, p)));
        }
    }

    // On constants binom_element agrees with binom_scalar.
    Tower t = Tower::build(make_spec(3, 1, 1, "t^-1", {"1", "t^-1"}, {}, 32));
    const auto A = series(t.field(), "t^-2 + 2*t");
    for (int i = 0; i < 3; ++i) CHECK(binom_element(t.element(A), i).agrees_with(t.element(binom_scalar(A, i, 3))));
}

TEST_CASE("ring laws and augmentation") {
    Rng rng(9);
    for (int p : {2, 3})
        for (int n : {0, 1}) {
            const FqField& F = FqField::get(p, 1);
            for (int trial = 0; trial < 5; ++trial) {
                const auto a = random_element(rng, F, p, n);
                const auto b = random_element(rng, F, p, n);
                const auto c = random_element(rng, F, p, n);
                CHECK((a * b).agrees_with(b * a));
                CHECK(((a * b) * c).agrees_with(a * (b * c)));
                CHECK((a * (b + c)).agrees_with(a * b + a * c));
                CHECK((a * b).augmentation().agrees_with(a.augmentation() * b.augmentation()));
                CHECK((a * GroupAlgebraElement::one(F, p, n)).agrees_with(a));
            }
            const auto s = GroupAlgebraElement::sigma(F, p, n, n);
            CHECK(s.pow(p).agrees_with(GroupAlgebraElement::one(F, p, n)));
            CHECK((s - GroupAlgebraElement::one(F, p, n)).in_augmentation_ideal());
        }
}

TEST_CASE("one-units: (U - 1)^p = 0") {
    Rng rng(21);
    for (int p : {2, 3})
        for (int n : {0, 1, 2}) {
            if (p == 3 && n == 2) continue;
            const FqField& F = FqField::get(p, 1);
            const auto one = GroupAlgebraElement::one(F, p, n);
            for (int trial = 0; trial < 4; ++trial) {
                const auto u = random_one_unit(rng, F, p, n);
                CHECK(u.is_one_unit());
                CHECK((u - one).pow(p).is_zero());
            }
        }
}

TEST_CASE("truncated exponentiation") {
    const FqField& F = FqField::get(2, 1);
    const auto one = GroupAlgebraElement::one(F, 2, 1);
    const auto s0 = GroupAlgebraElement::sigma(F, 2, 1, 0);
    const auto A = series(F, "t^-1 + t");
    CHECK(truncated_exp(s0, A).agrees_with(one + (s0 - one).scaled(A)));
    CHECK_THROWS_AS(truncated_exp(s0 + s0, A), Error);
    try {
        truncated_exp(s0.scaled(series(F, "t")), A);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotOneUnit);
    }

    // U^[a] is the ordinary power for a in F_p, and U^[A] U^[B] = U^[A+B].
    Rng rng(4);
    for (int p : {2, 3}) {
        const FqField& Fp = FqField::get(p, 1);
        for (int trial = 0; trial < 5; ++trial) {
            const auto u = random_one_unit(rng, Fp, p, 1);
            const auto a = random_series(rng, Fp, uniform_int(rng, -2, 2), 10);
            const auto b = random_series(rng, Fp, uniform_int(rng, -2, 2), 10);
            CHECK((truncated_exp(u, a) * truncated_exp(u, b)).agrees_with(truncated_exp(u, a + b)));
            CHECK((truncated_exp(u, a) * truncated_exp(u, -a)).agrees_with(GroupAlgebraElement::one(Fp, p, 1)));
            for (int c = 0; c < p; ++c)
                CHECK(truncated_exp(u, LaurentSeries::constant(Fp, c)).agrees_with(u.pow(static_cast<unsigned>(c))));
        }
    }

    // Not multiplicative in U: at p = 2 the two sides differ by (A^2 - A)(U - 1)(V - 1).
    const auto s1 = GroupAlgebraElement::sigma(F, 2, 1, 1);
    const auto lhs = truncated_exp(s0 * s1, A);
    const auto rhs = truncated_exp(s0, A) * truncated_exp(s1, A);
    CHECK_FALSE(lhs.agrees_with(rhs));
    CHECK((rhs - lhs).agrees_with(((s0 - one) * (s1 - one)).scaled(A * A - A)));
}

TEST_CASE("action on tower elements") {
    Tower t = Tower::build(ref1(32));
    const FqField& F = t.field();
    const auto one = GroupAlgebraElement::one(F, 2, 1);
    const auto s0 = GroupAlgebraElement::sigma(F, 2, 1, 0);
    CHECK(apply_algebra(one, t.x(1)).agrees_with(t.x(1)));
    CHECK(apply_algebra(s0 - one, t.x(0)).agrees_with(t.one()));

    Rng rng(6);
    const auto e = random_tower_element(rng, t.generators(), -3, 16);
    const auto a = random_element(rng, F, 2, 1);
    const auto b = random_element(rng, F, 2, 1);
    CHECK(apply_algebra(a * b, e).agrees_with(apply_algebra(a, apply_algebra(b, e))));
    CHECK(apply_algebra(a + b, e).agrees_with(apply_algebra(a, e) + apply_algebra(b, e)));

    // In the cyclic prototype (sigma - 1)^i binom(x - 1, p - 1) = binom(x - 1, p - 1 - i).
    for (int p : {2, 3, 5}) {
        Tower c = Tower::build(make_spec(p, 1, 0, "t^-1", {"1"}, {}, 24));
        const auto& Fp = c.field();
        const auto x1 = c.x(0) - c.one();
        const auto d = GroupAlgebraElement::sigma(Fp, p, 0, 0) - GroupAlgebraElement::one(Fp, p, 0);
        for (int i = 0; i < p; ++i)
            CHECK(apply_algebra(d.pow(static_cast<unsigned>(i)), binom_element(x1, p - 1))
                      .agrees_with(binom_element(x1, p - 1 - i)));
    }
}
