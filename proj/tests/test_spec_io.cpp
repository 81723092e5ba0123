#include "doctest.h"
#include "galscaf/constructions.hpp"
#include "galscaf/error.hpp"
#include "galscaf/spec_io.hpp"
#include "test_support.hpp"

using namespace galscaf;
using testsupport::make_spec;
using testsupport::ref1;

namespace {

bool same_spec(const TowerSpec& a, const TowerSpec& b) {
    if (a.p != b.p || a.f != b.f || a.n != b.n || a.precision != b.precision || !(a.beta == b.beta)) return false;
    for (int i = 0; i <= a.n; ++i)
        if (!(a.omegas[i] == b.omegas[i]) || !(a.epsilons[i] == b.epsilons[i])) return false;
    return true;
}

std::string parse_error(const std::string& text) {
    try {
        parse_spec(text);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        return e.what();
    }
    FAIL("expected a parse error");
    return {};
}

}  // namespace

TEST_CASE("spec text round trip") {
    CHECK(same_spec(parse_spec(emit_spec(ref1())), ref1()));
    const auto truncated = make_spec(2, 2, 1, "w*t^-1 + (w+1)*t^2 + O(t^5)", {"1", "w + t"}, {}, 40);
    CHECK(same_spec(parse_spec(emit_spec(truncated)), truncated));

    Rng rng(13);
    for (int p : {2, 3})
        for (int n : {1, 2})
            for (int trial = 0; trial < 5; ++trial) {
                const TowerSpec s = random_spec(rng, p, n);
                CHECK(same_spec(parse_spec(emit_spec(s)), s));
            }
}

TEST_CASE("spec text defaults and comments") {
    const TowerSpec s = parse_spec("# REF1\np = 2\nn = 1   # height\nbeta = t^-1\nomega[1] = t^-1\nomega[0] = 1\n");
    CHECK(s.f == 1);
    CHECK(s.precision == LaurentSeries::kDefaultPrecision);
    CHECK(s.epsilons.size() == 2);
    CHECK(s.epsilons[1].is_zero());
}

TEST_CASE("spec text errors name the line") {
    CHECK(parse_error("p = 2\nn = 1\nbeta = t^-1\nomega[0] = 1\n").find("omega[1]") != std::string::npos);
    CHECK(parse_error("p = 2\nq = 3\n").find("line 2") != std::string::npos);
    CHECK(parse_error("p = 2\np = 3\n").find("duplicate") != std::string::npos);
    CHECK(parse_error("p = 2\nn = x\n").find("line 2") != std::string::npos);
    CHECK(parse_error("p = 4\nn = 0\nbeta = t^-1\nomega[0] = 1\n").find("line 1") != std::string::npos);
    CHECK(parse_error("p = 2\nn = 0\nbeta = t^-1 +\nomega[0] = 1\n").find("line 3") != std::string::npos);
    CHECK(parse_error("p = 2\nn = 0\nbeta = t^-1\nomega[0] = 1\nomega[3] = 1\n").find("line 5") != std::string::npos);
    CHECK(parse_error("p = 2\nn 0\n").find("key = value") != std::string::npos);
    CHECK_THROWS_AS(load_spec("/nonexistent/spec.txt"), Error);
}
