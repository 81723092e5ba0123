#include <functional>

#include "doctest.h"
#include "galscaf/error.hpp"
#include "galscaf/rng.hpp"
#include "galscaf/tower.hpp"
#include "test_support.hpp"

using namespace galscaf;
using testsupport::make_spec;
using testsupport::ref1;
using testsupport::series;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

SpecClause clause_of(const TowerSpec& spec) {
    auto v = check_spec(spec);
    REQUIRE(v.has_value());
    return v->clause;
}

}  // namespace

TEST_CASE("build_tower validation") {
    Tower t = Tower::build(ref1());
    CHECK(t.degree() == 4);
    CHECK(t.b() == 1);

    CHECK(clause_of(make_spec(2, 1, 1, "t^-1", {"1", "1"})) == SpecClause::Independence);
    CHECK(clause_of(make_spec(2, 1, 0, "t^-2", {"1"})) == SpecClause::Coprime);
    CHECK(code_of([] { Tower::build(make_spec(2, 1, 0, "t^-2", {"1"})); }) == ErrorCode::InvalidSpec);
    CHECK(clause_of(make_spec(2, 1, 2, "t^-1", {"1", "t^-2", "t^-1"})) == SpecClause::OmegaOrdering);
    CHECK(clause_of(make_spec(2, 1, 1, "t^-1", {"1", "t"})) == SpecClause::OmegaOrdering);
    CHECK(clause_of(make_spec(2, 1, 1, "t^-1", {"t^-1", "t^-1"})) == SpecClause::OmegaZero);
    CHECK(clause_of(make_spec(2, 1, 0, "t", {"1"})) == SpecClause::BetaValuation);
    CHECK(clause_of(make_spec(2, 1, 1, "t^-1", {"1", "t^-1"}, {"t", "0"})) == SpecClause::EpsilonZero);
    // v(phi(Omega_1) beta) = -3; epsilon_1 = t^{-3} is not strictly smaller in size.
    CHECK(clause_of(make_spec(2, 1, 1, "t^-1", {"1", "t^-1"}, {"0", "t^-3"})) == SpecClause::EpsilonValuation);
    CHECK_FALSE(check_spec(make_spec(2, 1, 1, "t^-1", {"1", "t^-1"}, {"0", "t^-2"})).has_value());

    // Equal-valuation runs: over F_4 the pair (1, w) is independent, (1, 1+t) is not.
    CHECK_FALSE(check_spec(make_spec(2, 2, 1, "t^-1", {"1", "w"})).has_value());
    CHECK(clause_of(make_spec(2, 2, 1, "t^-1", {"1", "1 + t"})) == SpecClause::Independence);
    CHECK(clause_of(make_spec(3, 1, 2, "t^-1", {"1", "t^-1", "2*t^-1 + 1"})) == SpecClause::Independence);
    CHECK_FALSE(check_spec(make_spec(3, 2, 2, "t^-1", {"1", "t^-1", "w*t^-1"})).has_value());
}

TEST_CASE("group action on generators") {
    Tower t = Tower::build(ref1());
    const FqField& F = t.field();
    auto s0 = GroupIndex::generator(1, 0);
    auto s1 = GroupIndex::generator(1, 1);
    CHECK(apply_group_element(s0, t.x(0)).agrees_with(t.x(0) + t.one()));
    CHECK(apply_group_element(s0, t.x(1)).agrees_with(t.x(1)));
    CHECK(apply_group_element(s1, t.x(1)).agrees_with(t.x(1) + t.one()));

    auto e = t.x(0) * t.x(1) + t.element(series(F, "t^3 + t^-2"));
    CHECK(apply_group_element(GroupIndex::identity(1), e).agrees_with(e));

    // X = x_1 - t^{-1} x_0; sigma_0 X = x_1 - t^{-1}(x_0 + 1) = X - t^{-1} = X + t^{-1} in char 2.
    auto X = t.x(1) - t.x(0).scaled(series(F, "t^-1"));
    CHECK(apply_group_element(s0, X).agrees_with(X + t.element(series(F, "t^-1"))));
}

TEST_CASE("reduction rule and multiplication") {
    Tower t = Tower::build(make_spec(3, 1, 1, "2*t^-2", {"1", "t^-1"}));
    const FqField& F = t.field();
    // x_i^p = x_i + phi^n(Omega_i) beta
    CHECK(t.x(0).pow(3).agrees_with(t.x(0) + t.element(series(F, "2*t^-2"))));
    CHECK(t.x(1).pow(3).agrees_with(t.x(1) + t.element(series(F, "2*t^-5"))));
    // Exponents never reach p: x_0^2 * x_0 is reduced.
    auto sq = t.x(0) * t.x(0);
    CHECK(sq.coefficient({2, 0}) == LaurentSeries::one(F));
    auto cube = sq * t.x(0);
    CHECK(cube.coefficient({1, 0}) == LaurentSeries::one(F));
    CHECK(cube.coefficient({0, 0}) == series(F, "2*t^-2"));
}

TEST_CASE("norm examples") {
    const FqField& F2 = FqField::get(2, 1);
    Tower cyc = Tower::build(make_spec(2, 1, 0, "t^-1", {"1"}));
    // N(x) = x (x + 1) = x^2 + x = x^2 - x = t^{-1} in characteristic 2.
    CHECK(norm(cyc.x(0)) == series(F2, "t^-1"));

    Tower t = Tower::build(ref1());
    CHECK(norm(t.x(0)) == series(F2, "t^-2"));
    CHECK(norm(t.element(series(F2, "t^-1 + t"))) == series(F2, "t^-1 + t").pow(4));
    CHECK(valuation_L(t.element(series(F2, "t"))) == 4);
    CHECK(valuation_L(t.x(0)) == -2);
    CHECK(valuation_L(t.x(1)) == -6);
    CHECK(valuation_L(t.x(1) - t.x(0).scaled(series(F2, "t^-1"))) == -5);

    const FqField& F3 = FqField::get(3, 1);
    Tower c3 = Tower::build(make_spec(3, 1, 0, "t^-2", {"1"}));
    // N(x) = x(x+1)(x+2) = x^3 - x.
    CHECK(norm(c3.x(0)) == series(F3, "t^-2"));
    CHECK(valuation_L(c3.x(0)) == -2);
}

TEST_CASE("zero to precision is reported, not guessed") {
    Tower t = Tower::build(ref1(16));
    const FqField& F = t.field();
    auto z = t.element(LaurentSeries::zero_to(F, 3));
    CHECK(code_of([&] { valuation_L(z); }) == ErrorCode::NonzeroUndetectable);
}

TEST_CASE("automorphism and valuation laws on random elements") {
    std::vector<TowerSpec> specs = {
        ref1(48),
        make_spec(3, 1, 1, "t^-2 + t", {"1", "t^-1"}, {}, 48),
        make_spec(2, 1, 2, "t^-3", {"1", "t^-1", "t^-1 + t^-2"}, {"0", "t^-2", "t^-9"}, 48),
        make_spec(2, 2, 1, "t^-1", {"1", "w + t"}, {}, 48),
    };
    Rng rng(7);
    for (const auto& spec : specs) {
        Tower t = Tower::build(spec);
        const int n = t.n();
        const int p = t.p();
        for (int trial = 0; trial < 6; ++trial) {
            auto a = random_tower_element(rng, t.generators(), uniform_int(rng, -3, 2), 24);
            auto b = random_tower_element(rng, t.generators(), uniform_int(rng, -3, 2), 24);
            auto g = GroupIndex::from_ordinal(p, n, uniform_int(rng, 0, t.degree() - 1));
            auto h = GroupIndex::from_ordinal(p, n, uniform_int(rng, 0, t.degree() - 1));
            CHECK(apply_group_element(g, a * b).agrees_with(apply_group_element(g, a) * apply_group_element(g, b)));
            CHECK(apply_group_element(g.plus(h, p), a).agrees_with(apply_group_element(g, apply_group_element(h, a))));
            for (int i = 0; i <= n; ++i) {
                auto s = GroupIndex::generator(n, i);
                auto r = a;
                for (int k = 0; k < p; ++k) r = apply_group_element(s, r);
                CHECK(r.agrees_with(a));
            }
            CHECK((a * b).agrees_with(b * a));
            // Non-constant elements are moved by some generator.
            bool moved = false;
            for (int i = 0; i <= n; ++i)
                if (!apply_group_element(GroupIndex::generator(n, i), a).agrees_with(a)) moved = true;
            CHECK(moved == !a.in_base_field());

            if (trial < 3) {
                const long long va = valuation_L(a);
                const long long vb = valuation_L(b);
                CHECK(valuation_L(a * b) == va + vb);
                CHECK(valuation_L(a + b) >= std::min(va, vb));
                CHECK(norm(apply_group_element(g, a)).agrees_with(norm(a)));
            }
        }
        auto c = random_series(rng, t.field(), -2, 20);
        CHECK(valuation_L(t.element(c)) == t.degree() * c.valuation());
        auto k = t.element(series(t.field(), "1 + t"));
        for (int i = 0; i <= n; ++i) CHECK(apply_group_element(GroupIndex::generator(n, i), k).agrees_with(k));
    }
}

TEST_CASE("presentation map between generator frames") {
    // Mapping x_j to itself is the identity map.
    Tower t = Tower::build(ref1(32));
    std::vector<TowerElement> images = {t.x(0), t.x(1)};
    PresentationMap id(t.generators(), t.generators(), images);
    Rng rng(3);
    auto a = random_tower_element(rng, t.generators(), -2, 16);
    CHECK(id(a).agrees_with(a));
    CHECK(id(a * a).agrees_with(id(a) * id(a)));
}

TEST_CASE("group index ordinals") {
    for (long long k = 0; k < 27; ++k) CHECK(GroupIndex::from_ordinal(3, 2, k).ordinal(3) == k);
    CHECK(GroupIndex::from_ordinal(2, 1, 2).a == std::vector<int>{0, 1});
    CHECK(GroupIndex::generator(2, 1).plus(GroupIndex::generator(2, 1), 2).is_identity());
}
