// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "galscaf/constructions.hpp"
#include "galscaf/error.hpp"
#include "galscaf/ramification.hpp"
#include "galscaf/scaffold.hpp"

using namespace galscaf;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string first_failure;

    void fail(const std::string& why) {
        if (pass) first_failure = why;
        pass = false;
    }
    void require(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
};

TowerSpec make_spec(int p, int f, int n, const std::string& beta, const std::vector<std::string>& omegas,
                    const std::vector<std::string>& epsilons = {}) {
    const FqField& F = FqField::get(p, f);
    TowerSpec s;
    s.p = p;
    s.f = f;
    s.n = n;
    s.precision = 64;
    s.beta = LaurentSeries::parse(F, beta);
    for (const auto& o : omegas) s.omegas.push_back(LaurentSeries::parse(F, o));
    for (int i = 0; i <= n; ++i)
        s.epsilons.push_back(i < static_cast<int>(epsilons.size()) ? LaurentSeries::parse(F, epsilons[i])
                                                                   : LaurentSeries::zero(F));
    return s;
}

std::string spec_label(const TowerSpec& s) {
    std::ostringstream out;
    out << "p=" << s.p << " f=" << s.f << " n=" << s.n << " beta=" << s.beta.to_string();
    return out.str();
}

// Counters for the full pipeline on one spec.
struct PipelineStats {
    int specs = 0;
    int rho = 0;
    int rows = 0;
    int normal_checks = 0;
};

/**
 * Scaffold construction (with every recursion check and the [Delta] action
 * check), the valuation rows on `trials` random elements, residue coverage,
 * normal basis for elements of valuation b_m, and the three routes to the
 * break numbers.
 */
void run_pipeline(const TowerSpec& spec, int trials, Rng& rng, Outcome& theorem, Outcome& breaks,
                  Outcome& normal, PipelineStats& stats) {
    const std::string label = spec_label(spec);
    Scaffold s;
    try {
        s = Scaffold::build(spec);
    } catch (const Error& e) {
        theorem.fail(label + ": " + e.what());
        return;
    }
    ++stats.specs;
    const long long N = int_pow(s.p(), s.n() + 1);
    for (int t = 0; t < trials; ++t) {
        const long long v = s.breaks.b_m + (t % 2 == 0 ? 0 : N * uniform_int(rng, -1, 1));
        try {
            const TowerElement rho = random_element_of_valuation(s, v, rng);
            const TheoremReport r = verify_theorem(s, rho);
            ++stats.rho;
            stats.rows += static_cast<int>(r.rows.size());
            theorem.require(r.pass, label + ": valuation row mismatch");
            theorem.require(r.rows.size() == static_cast<std::size_t>(N), label + ": wrong number of rows");
            theorem.require(r.residues_complete && r.measured_residues_complete, label + ": residues incomplete");
            if (r.rho_valuation == s.breaks.b_m) {
                ++stats.normal_checks;
                normal.require(normal_basis_check(s, rho), label + ": conjugates are not a basis");
            }
        } catch (const Error& e) {
            theorem.fail(label + ": " + e.what());
        }
    }

    const BreakData& d = s.breaks;
    breaks.require(hasse_arf_holds(d), label + ": congruences fail");
    const Jumps j = lower_jumps(d);
    const auto up = herbrand_lower_to_upper(j.breaks, j.orders);
    const auto back = herbrand_upper_to_lower(up, j.orders);
    for (std::size_t k = 0; k < j.breaks.size(); ++k) {
        int first = 0;
        while (d.lower[first] != j.breaks[k]) ++first;
        breaks.require(up[k] == Rational(d.upper[first]), label + ": upper break differs from the formula");
        breaks.require(back[k] == Rational(j.breaks[k]), label + ": Herbrand round trip fails");
    }
    try {
        const DirectBreaks db = breaks_direct(uniformizer(s).element, s.oracle, false, rng());
        std::vector<long long> expected(d.lower.begin(), d.lower.end());
        expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
        breaks.require(db.distinct() == expected && db.layers_homogeneous, label + ": direct breaks differ");
    } catch (const Error& e) {
        breaks.fail(label + ": " + e.what());
    }
}

// ---- 1 ----------------------------------------------------------------------------------

Outcome ref1_end_to_end() {
    Outcome o;
    const auto start = Clock::now();
    const TowerSpec spec = make_spec(2, 1, 1, "t^-1", {"1", "t^-1"});
    const Scaffold s = Scaffold::build(spec);
    const FqField& F = s.field();
    o.require(s.breaks.lower == std::vector<long long>{1, 5}, "lower breaks");
    o.require(s.breaks.upper == std::vector<long long>{1, 3}, "upper breaks");
    o.require(s.delta[0][1] == LaurentSeries::parse(F, "t^-1"), "Delta_01");
    o.require(s.alphas[0] == LaurentSeries::parse(F, "t^2") && s.alphas[1] == LaurentSeries::one(F), "alpha");

    Rng rng(1);
    int rows = 0;
    for (int t = 0; t < 10; ++t) {
        const long long v = 5 + 16 * uniform_int(rng, -1, 1);
        const TowerElement rho = random_element_of_valuation(s, v, rng);
        const TheoremReport r = verify_theorem(s, rho);
        o.require(r.rho_valuation == v, "rho valuation");
        o.require(r.rows.size() == 4, "row count");
        for (const auto& row : r.rows) {
            o.require(row.predicted == row.measured, "row mismatch");
            ++rows;
        }
    }
    const double secs = seconds_since(start);
    o.require(secs < 5.0, "runtime");
    std::ostringstream d;
    d << "breaks (1,5)/(1,3), Delta_01 = t^-1, alpha = (t^2, 1), " << rows << " rows exact, " << secs << " s";
    o.detail = d.str();
    return o;
}

// ---- 2, 3 and the positive half of 6 ---------------------------------------------------------

struct SweepOutcome {
    Outcome theorem;
    Outcome breaks;
    Outcome normal;
};

SweepOutcome theorem_sweep() {
    SweepOutcome o;
    PipelineStats stats;
    const auto start = Clock::now();
    Rng rng(2024);
    for (int p : {2, 3})
        for (int n : {1, 2})
            for (int k = 0; k < 20; ++k) {
                RandomSpecOptions opts;
                opts.errors = k % 2 == 0 ? ErrorPlacement::AtBound : ErrorPlacement::Inside;
                const TowerSpec spec = random_spec(rng, p, n, opts);
                run_pipeline(spec, 10, rng, o.theorem, o.breaks, o.normal, stats);
            }
    std::ostringstream d;
    d << stats.specs << " specs, " << stats.rho << " elements, " << stats.rows << " rows, " << seconds_since(start)
      << " s";
    o.theorem.detail = d.str();
    std::ostringstream b;
    b << stats.specs << " specs: direct breaks, Herbrand round trip, congruences";
    o.breaks.detail = b.str();
    std::ostringstream nb;
    nb << stats.normal_checks << " elements of valuation b_m give normal bases";
    o.normal.detail = nb.str();
    return o;
}

// ---- 4 ----------------------------------------------------------------------------------

Outcome prototype_and_binomial_identity() {
    Outcome o;
    int identities = 0;
    for (int p : {2, 3, 5}) {
        const FqField& F = FqField::get(p, 1);
        const std::string beta = p == 2 ? "t^-1 + t" : p == 3 ? "t^-2 + t^-1" : "2*t^-3 + t^-1";
        try {
            const PrototypeReport r = cyclic_prototype(p, 1, LaurentSeries::parse(F, beta), 10, 7);
            o.require(r.pass, "prototype p=" + std::to_string(p));
            for (const auto& t : r.trials) o.require(t.residues_complete, "prototype residues p=" + std::to_string(p));
            const Lemma21Report l = lemma21_check(p, 1, LaurentSeries::parse(F, beta), 20, 11);
            o.require(l.trials == 20 && l.passed == 20, "binomial identity p=" + std::to_string(p));
            identities += l.passed;
        } catch (const Error& e) {
            o.fail(std::string("p=") + std::to_string(p) + ": " + e.what());
        }
    }
    o.detail = "p in {2,3,5}: residues complete, " + std::to_string(identities) + " exact binomial identities";
    return o;
}

// ---- 5 ----------------------------------------------------------------------------------

LaurentSeries odd_series(Rng& rng, const FqField& F, long long v) {
    LaurentSeries s = LaurentSeries::monomial(F, random_nonzero_fq(rng, F), -v);
    for (int k = 0; k < 3; ++k) s += LaurentSeries::monomial(F, random_fq(rng, F), uniform_int(rng, -v + 1, 2));
    return s;
}

Outcome families() {
    Outcome o;
    Outcome breaks;
    Outcome normal;
    PipelineStats stats;
    Rng rng(77);

    int reduced = 0;
    int degenerate = 0;
    while (reduced < 20) {
        const FqField& F = FqField::get(2, static_cast<int>(uniform_int(rng, 1, 2)));
        const long long v = 2 * uniform_int(rng, 0, 2) + 1;
        const long long v1 = v + 2 * uniform_int(rng, 0, 2);
        const LaurentSeries beta = odd_series(rng, F, v);
        const LaurentSeries beta1 = odd_series(rng, F, v1);
        BiquadraticResult r;
        try {
            r = biquadratic_reduce(beta, beta1, 96);
        } catch (const Error& e) {
            // Equal valuations may give a field of degree 2; anything else is a failure.
            if (e.code() != ErrorCode::InvalidInput || v != v1) o.fail(std::string("biquadratic: ") + e.what());
            ++degenerate;
            if (degenerate > 40) break;
            continue;
        }
        ++reduced;
        for (const auto& row : check_error_bound(r.spec, breaks_from_spec(r.spec)))
            o.require(row.pass, "biquadratic spec violates the error bound");
        r.spec.precision = recommended_precision(breaks_from_spec(r.spec).b_m);
        run_pipeline(r.spec, 10, rng, o, breaks, normal, stats);
    }
    o.require(reduced == 20, "too few fully ramified pairs");

    const std::vector<std::pair<int, int>> unit_root = {{2, 2}, {3, 2}};
    for (const auto& [p, f_sub] : unit_root) {
        const FqField& F = FqField::get(p, f_sub);
        try {
            const UnitRootResult u = unit_root_extension(p, f_sub, f_sub, LaurentSeries::parse(F, "t^-1 + w*t"));
            run_pipeline(u.spec, 10, rng, o, breaks, normal, stats);
        } catch (const Error& e) {
            o.fail(std::string("unit root: ") + e.what());
        }
    }

    struct Weak {
        int p, f, n;
    };
    for (const Weak w : {Weak{2, 2, 1}, Weak{2, 3, 2}, Weak{3, 2, 1}}) {
        const FqField& F = FqField::get(w.p, w.f);
        std::vector<Fq> units{1};
        Fq g = 1;
        for (int i = 1; i <= w.n; ++i) units.push_back(g = F.mul(g, F.generator()));
        std::vector<LaurentSeries> eps{LaurentSeries::zero(F)};
        for (int i = 1; i <= w.n; ++i) eps.push_back(random_series_maybe_zero(rng, F, 0, 4));
        try {
            const TowerSpec s = weakly_ramified_spec(w.p, w.f, w.n, units, eps, LaurentSeries::parse(F, "t^-1 + 1"));
            o.require(breaks_from_spec(s).lower == std::vector<long long>(w.n + 1, 1), "weak breaks");
            run_pipeline(s, 10, rng, o, breaks, normal, stats);
        } catch (const Error& e) {
            o.fail(std::string("weakly ramified: ") + e.what());
        }
    }
    if (!breaks.pass) o.fail(breaks.first_failure);
    if (!normal.pass) o.fail(normal.first_failure);
    o.detail = std::to_string(reduced) + " biquadratic pairs reduced, 2 unit root and 3 weakly ramified specs; " +
               std::to_string(stats.specs) + " specs through the pipeline";
    return o;
}

// ---- 6 ----------------------------------------------------------------------------------

Outcome negative_controls() {
    Outcome o;
    auto rejects = [&](const TowerSpec& s, SpecClause clause, const std::string& name) {
        const auto v = check_spec(s);
        o.require(v.has_value() && v->clause == clause, name + " not detected");
        try {
            Tower::build(s);
            o.fail(name + " accepted by the tower builder");
        } catch (const Error& e) {
            o.require(e.code() == ErrorCode::InvalidSpec, name + " wrong code");
            o.require(std::string(e.what()).find(std::string(to_string(clause))) != std::string::npos,
                      name + " diagnostic does not name the clause");
        }
    };
    rejects(make_spec(2, 1, 1, "t^-2", {"1", "t^-1"}), SpecClause::Coprime, "gcd(b,p)");
    rejects(make_spec(3, 1, 1, "t^-3 + t^-1", {"1", "t^-1"}), SpecClause::Coprime, "gcd(b,p)");
    rejects(make_spec(2, 1, 2, "t^-1", {"1", "t^-2", "t^-1"}), SpecClause::OmegaOrdering, "Omega ordering");
    rejects(make_spec(2, 1, 1, "t^-1", {"1", "1 + t"}), SpecClause::Independence, "F_p independence");
    rejects(make_spec(3, 1, 2, "t^-1", {"1", "t^-1", "2*t^-1 + 1"}), SpecClause::Independence, "F_p independence");

    const TowerSpec bound = make_spec(2, 1, 2, "t^-1", {"1", "t^-1", "t^-2"}, {"0", "t^-4"});
    o.require(!check_spec(bound).has_value(), "bound control should pass the validity clauses");
    try {
        Scaffold::build(bound);
        o.fail("error bound violation accepted");
    } catch (const Error& e) {
        o.require(e.code() == ErrorCode::BoundViolated, "error bound violation has the wrong code");
    }

    const Scaffold s = Scaffold::build(make_spec(2, 1, 1, "t^-1", {"1", "t^-1"}));
    o.require(!normal_basis_check(s, TowerElement::constant(s.working(), LaurentSeries::one(s.field()))),
              "normal_basis_check(1)");
    o.detail = "gcd, ordering, independence and error bound rejected by name; 1 is not a normal basis generator";
    return o;
}

void report(int index, const std::string& name, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << index << "  " << name << ": " << o.detail;
    if (!o.pass) std::cout << " [first failure: " << o.first_failure << "]";
    std::cout << std::endl;
}

Outcome guarded(const std::function<Outcome()>& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        Outcome o;
        o.fail(e.what());
        return o;
    }
}

}  // namespace

int main() {
    bool all = true;
    auto emit = [&](int index, const std::string& name, const Outcome& o) {
        report(index, name, o);
        all = all && o.pass;
    };

    emit(1, "REF1 end to end", guarded(ref1_end_to_end));

    SweepOutcome sweep;
    try {
        sweep = theorem_sweep();
    } catch (const std::exception& e) {
        sweep.theorem.fail(e.what());
    }
    emit(2, "valuation rows on random specs", sweep.theorem);
    emit(3, "break numbers three ways", sweep.breaks);
    emit(4, "cyclic prototype and binomial identity", guarded(prototype_and_binomial_identity));
    emit(5, "biquadratic, unit root and weakly ramified families", guarded(families));

    Outcome negative = guarded(negative_controls);
    if (!sweep.normal.pass) negative.fail(sweep.normal.first_failure);
    negative.detail += "; " + sweep.normal.detail;
    emit(6, "negative controls and normal bases", negative);
    return all ? 0 : 1;
}
