#include "galscaf/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "galscaf/error.hpp"
#include "galscaf/group_algebra.hpp"
#include "galscaf/ramification.hpp"

namespace galscaf {

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int rank_mod_p(std::vector<std::vector<int>> rows, int p) {
    int rank = 0;
    const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][c] % p != 0) pivot = r;
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        int inv = 1;
        while ((rows[rank][c] * inv) % p != 1) ++inv;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][c] % p == 0) continue;
            const int factor = rows[r][c] * inv % p;
            for (int k = 0; k < cols; ++k) rows[r][k] = ((rows[r][k] - factor * rows[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

void require_valid(const TowerSpec& spec, const char* what) {
    if (auto v = check_spec(spec))
        throw Error(ErrorCode::InvalidInput, "constructions",
                    std::string(what) + ": " + std::string(to_string(v->clause)) + ": " + v->detail);
}

// a + b t + ... with random coefficients after a fixed leading term.
LaurentSeries with_tail(Rng& rng, const FqField& F, Fq lead, long long valuation, int tail) {
    std::vector<Fq> c{lead};
    for (int k = 0; k < tail; ++k) c.push_back(random_fq(rng, F));
    return LaurentSeries::from_coefficients(F, valuation, std::move(c), LaurentSeries::kExact);
}

}  // namespace

// ---- prototype ------------------------------------------------------------------------

TowerSpec cyclic_spec(int p, int f, const LaurentSeries& beta, long long precision) {
    TowerSpec s;
    s.p = p;
    s.f = f;
    s.n = 0;
    s.precision = precision;
    s.beta = beta;
    s.omegas = {LaurentSeries::one(s.field())};
    s.epsilons = {LaurentSeries::zero(s.field())};
    return s;
}

PrototypeReport cyclic_prototype(int p, int f, const LaurentSeries& beta, int trials, std::uint64_t seed,
                                 long long precision) {
    PrototypeReport r;
    r.spec = cyclic_spec(p, f, beta, precision);
    const Scaffold s = Scaffold::build(r.spec);
    r.b = s.breaks.b;
    const TowerElement x = s.tower.x(0);
    const TowerElement one = s.tower.one();
    r.x_valuation = s.oracle.valuation(x);
    r.binom_valuation = s.oracle.valuation(binom_element(x - one, p - 1));
    r.pass = r.x_valuation == -r.b && r.binom_valuation == -(p - 1) * r.b;

    Rng rng(seed);
    const GroupIndex sigma = GroupIndex::generator(0, 0);
    for (int k = 0; k < trials; ++k) {
        PrototypeTrial t;
        TowerElement rho = random_element_of_valuation(s, r.b + p * uniform_int(rng, -1, 1), rng);
        t.rho_valuation = s.oracle.valuation(rho);
        std::vector<bool> seen(p, false);
        t.matches = true;
        for (int i = 0; i < p; ++i) {
            const long long v = s.oracle.valuation(rho);
            t.valuations.push_back(v);
            seen[((v % p) + p) % p] = true;
            t.matches = t.matches && v == t.rho_valuation + i * r.b;
            rho = apply_group_element(sigma, rho) - rho;
        }
        t.residues_complete = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
        r.pass = r.pass && t.matches && t.residues_complete;
        r.trials.push_back(std::move(t));
    }
    return r;
}

bool lemma21_identity(const Tower& cyclic, const TowerElement& A) {
    const int p = cyclic.p();
    const TowerElement x_minus_1 = cyclic.x(0) - cyclic.one();
    const GroupIndex sigma = GroupIndex::generator(0, 0);
    TowerElement term = binom_element(x_minus_1, p - 1);
    TowerElement lhs(cyclic.generators());
    for (int i = 0; i < p; ++i) {
        lhs += binom_element(A, i) * term;
        term = apply_group_element(sigma, term) - term;
    }
    const TowerElement rhs = binom_element(x_minus_1 + A, p - 1);
    if (!lhs.agrees_with(rhs))
        throw Error(ErrorCode::IdentityFailed, "constructions",
                    "truncated exponentiation identity fails for A = " + A.to_string());
    return true;
}

Lemma21Report lemma21_check(int p, int f, const LaurentSeries& beta, int trials, std::uint64_t seed,
                            long long precision) {
    const Tower t = Tower::build(cyclic_spec(p, f, beta, precision));
    Rng rng(seed);
    Lemma21Report r;
    for (int k = 0; k < trials; ++k) {
        const TowerElement A = random_tower_element(rng, t.generators(), uniform_int(rng, -3, 2), 16);
        ++r.trials;
        if (lemma21_identity(t, A)) ++r.passed;
    }
    return r;
}

// ---- biquadratic ----------------------------------------------------------------------

LaurentSeries reduce_wp_coset(const LaurentSeries& input) {
    if (!input.has_field() || input.is_exact_zero()) return input;
    const FqField& F = input.field();
    const int p = F.p();
    LaurentSeries a = input;
    while (!a.is_zero() && a.valuation() < 0 && a.valuation() % p == 0) {
        const long long v = a.valuation();
        const LaurentSeries z = LaurentSeries::monomial(F, F.frobenius_inverse(a.leading_coefficient()), v / p);
        a -= z.wp();
    }
    if (!a.is_exact() && a.precision() <= 0)
        throw Error(ErrorCode::PrecisionLoss, "constructions", "coset representative needs the constant term");
    // Positive-valuation terms lie in wp(P_K); a constant of trace zero lies in wp(F).
    std::vector<Fq> c;
    const long long start = std::min<long long>(a.start(), 0);
    for (long long k = start; k <= 0; ++k) c.push_back(k < a.start() ? Fq{0} : a.coefficient(k));
    if (F.trace(c.back()) == 0) c.back() = 0;
    return LaurentSeries::from_coefficients(F, start, std::move(c), LaurentSeries::kExact);
}

BiquadraticResult biquadratic_reduce(const LaurentSeries& beta_in, const LaurentSeries& beta1_in,
                                     long long precision) {
    if (!beta_in.has_field() || beta_in.field().p() != 2 || !beta1_in.has_field() ||
        &beta_in.field() != &beta1_in.field())
        throw Error(ErrorCode::InvalidInput, "constructions", "biquadratic data must lie in one field of characteristic 2");
    if (beta_in.is_zero() || beta1_in.is_zero())
        throw Error(ErrorCode::InvalidInput, "constructions", "beta and beta_1 must be nonzero");
    const FqField& F = beta_in.field();
    BiquadraticResult r;
    r.beta = beta_in;
    r.beta1 = beta1_in;
    const long long vb = r.beta.valuation();
    const long long vb1 = r.beta1.valuation();
    if (vb >= 0 || vb1 >= 0 || vb % 2 == 0 || vb1 % 2 == 0)
        throw Error(ErrorCode::InvalidInput, "constructions", "valuations must be odd and negative");
    if (vb1 > vb) throw Error(ErrorCode::InvalidInput, "constructions", "need v(beta_1) <= v(beta)");

    if (vb1 == vb && r.beta.leading_coefficient() == r.beta1.leading_coefficient()) {
        // x_0 + x_1 has a smaller break; use it as the new x_0.
        const LaurentSeries sum = reduce_wp_coset(r.beta + r.beta1);
        if (sum.is_zero() || sum.valuation() >= 0)
            throw Error(ErrorCode::InvalidInput, "constructions",
                        "beta + beta_1 lies in O_K + K^wp, so the extension is not fully ramified of degree 4");
        r.beta1 = r.beta;
        r.beta = sum;
        r.relabelled = true;
    }

    const long long v1 = r.beta1.valuation();
    const Fq lc1 = r.beta1.leading_coefficient();
    LaurentSeries mu = LaurentSeries::zero(F);
    LaurentSeries tau = r.beta;
    const long long cap = std::max<long long>(precision, 1 - vb);
    for (long long iter = 0; !tau.is_exact_zero(); ++iter) {
        if (iter > cap)
            throw Error(ErrorCode::PrecisionLoss, "constructions", "biquadratic reduction did not terminate");
        const long long v = tau.valuation();
        ReductionStep step;
        step.mu_k = LaurentSeries::zero(F);
        if (v > 0) {
            r.beta -= tau;
            step.coset_adjustment = true;
        } else if (v == 0) {
            const Fq c = tau.leading_coefficient();
            const LaurentSeries rest = tau - LaurentSeries::constant(F, c);
            r.beta -= rest;
            if (F.trace(c) == 0) r.beta -= LaurentSeries::constant(F, c);
            step.coset_adjustment = true;
        } else if (v % 2 == 0) {
            const LaurentSeries z = LaurentSeries::monomial(F, F.frobenius_inverse(tau.leading_coefficient()), v / 2);
            r.beta -= z.wp();
            step.coset_adjustment = true;
        } else {
            step.mu_k = LaurentSeries::monomial(F, F.frobenius_inverse(F.div(tau.leading_coefficient(), lc1)),
                                                (v - v1) / 2);
            mu += step.mu_k;
        }
        tau = r.beta - mu * mu * r.beta1;
        step.tau_k = tau;
        r.trace.steps.push_back(std::move(step));
        if (v >= 0) break;
    }
    r.trace.mu = mu;
    r.trace.tau = tau;

    const LaurentSeries mu_inv = mu.inverse(precision);
    TowerSpec& s = r.spec;
    s.p = 2;
    s.f = F.f();
    s.n = 1;
    s.precision = precision;
    s.beta = r.beta;
    s.omegas = {LaurentSeries::one(F), mu_inv};
    s.epsilons = {LaurentSeries::zero(F), tau.is_exact_zero() ? tau : -(tau * mu_inv * mu_inv)};
    require_valid(s, "reduced biquadratic spec");
    require_error_bound(s, breaks_from_spec(s));
    return r;
}

// ---- one-dimensional families ---------------------------------------------------------

UnitRootResult unit_root_extension(int p, int f_big, int f_sub, const LaurentSeries& beta, long long precision) {
    if (f_sub < 1 || f_big < 1 || f_big % f_sub != 0)
        throw Error(ErrorCode::InvalidInput, "constructions", "F_{p^f_sub} must be a subfield of F_{p^f_big}");
    const FqField& F = FqField::get(p, f_big);
    if (!beta.has_field() || &beta.field() != &F)
        throw Error(ErrorCode::InvalidInput, "constructions", "beta must have coefficients in F_{p^f_big}");
    if (beta.is_zero() || beta.valuation() >= 0 || (-beta.valuation()) % p == 0)
        throw Error(ErrorCode::InvalidInput, "constructions", "need v(beta) < 0 and prime to p");
    UnitRootResult r;
    r.zeta = 1;
    if (f_big > 1) {
        const long long exponent = (int_pow(p, f_big) - 1) / (int_pow(p, f_sub) - 1);
        r.zeta = F.pow(F.generator(), static_cast<std::uint64_t>(exponent));
    }
    const int n = f_sub - 1;
    TowerSpec& s = r.spec;
    s.p = p;
    s.f = f_big;
    s.n = n;
    s.precision = precision;
    s.beta = beta;
    for (int i = 0; i <= n; ++i) {
        const Fq w = F.pow(r.zeta, static_cast<std::uint64_t>(i));
        r.omegas_small.push_back(w);
        s.omegas.push_back(LaurentSeries::constant(F, F.frobenius_power(w, -n)));
        s.epsilons.push_back(LaurentSeries::zero(F));
    }
    require_valid(s, "unit root spec");
    return r;
}

TowerSpec weakly_ramified_spec(int p, int f, int n, const std::vector<Fq>& units,
                               const std::vector<LaurentSeries>& epsilons, const LaurentSeries& beta,
                               long long precision) {
    const FqField& F = FqField::get(p, f);
    if (static_cast<int>(units.size()) != n + 1)
        throw Error(ErrorCode::InvalidInput, "constructions", "need n+1 units");
    if (units[0] != 1) throw Error(ErrorCode::InvalidInput, "constructions", "omega_0 must be 1");
    if (!beta.has_field() || &beta.field() != &F || beta.is_zero() || beta.valuation() != -1)
        throw Error(ErrorCode::InvalidInput, "constructions", "beta must have valuation -1");
    TowerSpec s;
    s.p = p;
    s.f = f;
    s.n = n;
    s.precision = precision;
    s.beta = beta;
    for (int i = 0; i <= n; ++i) {
        if (units[i] == 0 || units[i] >= F.q())
            throw Error(ErrorCode::InvalidInput, "constructions", "omega_" + std::to_string(i) + " is not a unit of F");
        s.omegas.push_back(LaurentSeries::constant(F, F.frobenius_power(units[i], -n)));
        LaurentSeries e = static_cast<int>(epsilons.size()) > i ? epsilons[i] : LaurentSeries::zero(F);
        if (!e.has_field()) e = LaurentSeries::zero(F);
        if (!e.is_zero() && e.valuation() < 0)
            throw Error(ErrorCode::InvalidInput, "constructions",
                        "epsilon_" + std::to_string(i) + " must have nonnegative valuation");
        s.epsilons.push_back(e);
    }
    require_valid(s, "weakly ramified spec");
    return s;
}

// ---- random specs -----------------------------------------------------------------------

long long recommended_precision(long long b_m) { return std::max<long long>(64, 2 * b_m + 64); }

TowerSpec random_spec(Rng& rng, int p, int n, const RandomSpecOptions& o) {
    long long b = 0;
    do {
        b = uniform_int(rng, 1, o.max_b);
    } while (std::gcd(b, static_cast<long long>(p)) != 1);
    std::vector<long long> m(n + 1, 0);
    for (int i = 1; i <= n; ++i) m[i] = uniform_int(rng, 0, o.max_gap);
    const BreakData d = breaks_from_gaps(p, n, b, m);

    std::vector<long long> vals(n + 1, 0);
    for (int i = 1; i <= n; ++i) vals[i] = vals[i - 1] - m[i];
    int f = 1;
    for (int i = 0, run = 0; i <= n; ++i) {
        run = (i > 0 && vals[i] == vals[i - 1]) ? run + 1 : 1;
        f = std::max(f, run);
    }
    const FqField& F = FqField::get(p, f);

    TowerSpec s;
    s.p = p;
    s.f = f;
    s.n = n;
    s.precision = recommended_precision(d.b_m);
    s.beta = with_tail(rng, F, random_nonzero_fq(rng, F), -b, o.tail_terms);
    s.omegas.push_back(LaurentSeries::one(F));
    std::vector<std::vector<int>> run_coords{F.coordinates(1)};
    for (int i = 1; i <= n; ++i) {
        if (vals[i] != vals[i - 1]) run_coords.clear();
        Fq lead = 0;
        for (;;) {
            lead = random_nonzero_fq(rng, F);
            auto rows = run_coords;
            rows.push_back(F.coordinates(lead));
            if (rank_mod_p(rows, p) == static_cast<int>(rows.size())) break;
        }
        run_coords.push_back(F.coordinates(lead));
        s.omegas.push_back(with_tail(rng, F, lead, vals[i], o.tail_terms));
    }

    const long long pn = int_pow(p, n);
    s.epsilons.push_back(LaurentSeries::zero(F));
    for (int i = 1; i <= n; ++i) {
        long long below = 0;
        long long above = 0;
        for (int j = 1; j <= i; ++j) below += int_pow(p, j) * m[j];
        for (int j = i + 1; j <= n; ++j) above += (pn - int_pow(p, j)) * m[j];
        const long long scaled = -b + pn * (-below + above);
        const long long at_bound = floor_div(scaled, pn) + 1;
        ErrorPlacement where = o.errors;
        if (where == ErrorPlacement::Mixed) where = static_cast<ErrorPlacement>(uniform_int(rng, 0, 2));
        if (where == ErrorPlacement::None) {
            s.epsilons.push_back(LaurentSeries::zero(F));
        } else {
            const long long v = where == ErrorPlacement::AtBound ? at_bound : at_bound + uniform_int(rng, 1, 3);
            s.epsilons.push_back(with_tail(rng, F, random_nonzero_fq(rng, F), v, o.tail_terms));
        }
    }
    validate_spec(s);
    require_error_bound(s, d);
    return s;
}

}  // namespace galscaf
