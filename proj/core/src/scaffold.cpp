#include "galscaf/scaffold.hpp"

#include <algorithm>
#include <set>

#include "galscaf/error.hpp"

namespace galscaf {

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

std::string pair_label(int i, int j) { return "(" + std::to_string(i) + ", " + std::to_string(j) + ")"; }

std::vector<int> digits(long long k, int p, int n) { return GroupIndex::from_ordinal(p, n, k).a; }

}  // namespace

// ---- matrices -----------------------------------------------------------------

Matrix identity_matrix(const FqField& field, int size) {
    Matrix m(size, std::vector<LaurentSeries>(size, LaurentSeries::zero(field)));
    for (int i = 0; i < size; ++i) m[i][i] = LaurentSeries::one(field);
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t rows = a.size();
    const std::size_t inner = b.size();
    const std::size_t cols = inner ? b[0].size() : 0;
    Matrix r(rows, std::vector<LaurentSeries>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t k = 0; k < inner; ++k)
                if (!a[i][k].is_exact_zero() && !b[k][j].is_exact_zero()) r[i][j] += a[i][k] * b[k][j];
    return r;
}

bool agrees_with(const Matrix& a, const Matrix& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (!(a[i][j] - b[i][j]).is_zero()) return false;
    }
    return true;
}

// ---- Omega triangle -------------------------------------------------------------

OmegaTriangle omega_reduce(const std::vector<LaurentSeries>& omegas, int p, long long precision) {
    if (omegas.empty()) throw Error(ErrorCode::InvalidArgument, "scaffold", "empty Omega list");
    const FqField& F = omegas[0].field();
    const int n = static_cast<int>(omegas.size()) - 1;
    OmegaTriangle T;
    T.n = n;
    T.entries.assign(n + 1, std::vector<LaurentSeries>(n + 1, LaurentSeries::zero(F)));
    T.entries[0] = omegas;
    T.entries[0][0] = LaurentSeries::one(F);
    for (int i = 1; i <= n; ++i) {
        const LaurentSeries pivot = T.entries[i - 1][i].wp();
        if (pivot.is_zero())
            throw Error(ErrorCode::DivisionByZero, "scaffold",
                        "wp(Omega_" + std::to_string(i) + "^(" + std::to_string(i - 1) + ")) vanishes to precision");
        T.entries[i][i] = LaurentSeries::one(F);
        for (int j = i + 1; j <= n; ++j) T.entries[i][j] = T.entries[i - 1][j].wp().divide(pivot, precision);
    }

    std::vector<long long> m(n + 1, 0);
    for (int k = 1; k <= n; ++k) m[k] = omegas[k - 1].valuation() - omegas[k].valuation();
    for (int i = 0; i <= n; ++i) {
        long long sum = 0;
        for (int j = i; j <= n; ++j) {
            if (j > i) sum += m[j];
            const long long expected = -int_pow(p, i) * sum;
            const LaurentSeries& e = T.entries[i][j];
            if (e.is_zero() || e.valuation() != expected)
                throw Error(ErrorCode::LemmaViolation, "scaffold",
                            "v(Omega_" + std::to_string(j) + "^(" + std::to_string(i) + ")) should be " +
                                std::to_string(expected) + ", got " +
                                (e.is_zero() ? std::string("zero to precision") : std::to_string(e.valuation())));
        }
    }
    return T;
}

Matrix omega_phi_matrix(const OmegaTriangle& T) {
    const int n = T.n;
    const FqField& F = T.at(0, 0).field();
    Matrix m = identity_matrix(F, n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = i; j <= n; ++j) m[i][j] = T.at(i, j).frobenius(n - i - 1);
    return m;
}

Matrix invert_unipotent(const Matrix& m) {
    const int size = static_cast<int>(m.size());
    if (size == 0) return {};
    const FqField& F = m[0][0].field();
    Matrix d = identity_matrix(F, size);
    for (int j = 0; j < size; ++j) {
        for (int i = j - 1; i >= 0; --i) {
            LaurentSeries s = LaurentSeries::zero(F);
            for (int k = i + 1; k <= j; ++k)
                if (!m[i][k].is_exact_zero() && !d[k][j].is_exact_zero()) s += m[i][k] * d[k][j];
            d[i][j] = -s;
        }
    }
    return d;
}

// ---- X recursion ------------------------------------------------------------------

XRecursion x_recursion(const Tower& tower, const OmegaTriangle& T, const BreakData& breaks) {
    const TowerSpec& spec = tower.spec();
    const FqField& F = tower.field();
    const PresentationPtr& P = tower.generators();
    const int n = spec.n;
    const int p = spec.p;
    XRecursion r;
    r.X.assign(n + 1, std::vector<TowerElement>(n + 1));
    r.E.assign(n + 1, std::vector<LaurentSeries>(n + 1, LaurentSeries::zero(F)));
    r.B.resize(n + 1);
    r.c.assign(n + 1, LaurentSeries::zero(F));

    auto check_identity = [&](int i, int j) {
        const TowerElement rhs = r.B[i].scaled(T.at(i, j).frobenius(n - i)) + TowerElement::constant(P, r.E[i][j]);
        if (!r.X[i][j].wp().agrees_with(rhs))
            throw Error(ErrorCode::LemmaViolation, "scaffold",
                        "wp(X_" + std::to_string(j) + "^(" + std::to_string(i) + ")) differs from phi^" +
                            std::to_string(n - i) + "(Omega_" + std::to_string(j) + "^(" + std::to_string(i) +
                            ")) B_" + std::to_string(i) + " + E_" + std::to_string(j) + "^(" + std::to_string(i) +
                            ")");
    };

    r.B[0] = TowerElement::constant(P, spec.beta);
    for (int j = 0; j <= n; ++j) {
        r.X[0][j] = tower.x(j);
        r.E[0][j] = spec.epsilons[j];
    }
    r.E[0][0] = LaurentSeries::zero(F);
    for (int j = 0; j <= n; ++j) check_identity(0, j);

    for (int i = 1; i <= n; ++i) {
        const LaurentSeries& e_prev = r.E[i - 1][i];
        if (!e_prev.is_zero() && int_pow(p, i) * e_prev.valuation() <= -breaks.lower[i])
            throw Error(ErrorCode::LemmaViolation, "scaffold",
                        "p^" + std::to_string(i) + " v(E_" + std::to_string(i) + "^(" + std::to_string(i - 1) +
                            ")) = " + std::to_string(int_pow(p, i) * e_prev.valuation()) + " does not exceed -b_(" +
                            std::to_string(i) + ") = " + std::to_string(-breaks.lower[i]));
        const TowerElement& prev = r.X[i - 1][i - 1];
        r.c[i] = -T.at(i - 1, i).wp().frobenius(n - i);
        r.B[i] = prev.scaled(r.c[i]) + TowerElement::constant(P, e_prev);
        for (int j = i; j <= n; ++j) {
            r.X[i][j] = r.X[i - 1][j] - prev.scaled(T.at(i - 1, j).frobenius(n - i));
            r.E[i][j] = j == i ? LaurentSeries::zero(F) : r.E[i - 1][j] - T.at(i, j).frobenius(n - i) * e_prev;
            check_identity(i, j);
        }
    }
    return r;
}

std::vector<AssumptionEntry> check_assumption1(const XRecursion& rec, const Matrix& delta) {
    const int n = static_cast<int>(rec.X.size()) - 1;
    std::vector<AssumptionEntry> out;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const TowerElement& Y = rec.adapted_variable(j);
            const TowerElement moved = apply_group_element(GroupIndex::generator(n, i), Y) - Y;
            AssumptionEntry e;
            e.i = i;
            e.j = j;
            e.in_base_field = moved.in_base_field();
            e.value = moved.constant_term();
            e.matches_delta = (e.value - delta[i][j]).is_zero();
            if (!e.in_base_field)
                throw Error(ErrorCode::AssumptionFailed, "scaffold",
                            "(sigma_" + std::to_string(i) + " - 1) X_" + std::to_string(j) + "^(" +
                                std::to_string(j) + ") is not in K: " + moved.to_string());
            if (!e.matches_delta)
                throw Error(ErrorCode::AssumptionFailed, "scaffold",
                            "(sigma_i - 1) X_j^(j) at " + pair_label(i, j) + " is " + e.value.to_string() +
                                " but Delta has " + delta[i][j].to_string());
            out.push_back(std::move(e));
        }
    }
    return out;
}

PresentationPtr adapted_presentation(const Tower& tower, const XRecursion& rec, const Matrix& delta) {
    const TowerSpec& spec = tower.spec();
    const FqField& F = tower.field();
    const int n = spec.n;
    const int p = spec.p;
    std::vector<std::vector<LaurentSeries>> reductions(n + 1);
    for (int j = 0; j <= n; ++j) {
        reductions[j].assign(static_cast<std::size_t>(int_pow(p, j)), LaurentSeries::zero(F));
        if (j == 0) {
            reductions[0][0] = spec.beta;
        } else {
            reductions[j][0] = rec.E[j - 1][j];
            reductions[j][static_cast<std::size_t>(int_pow(p, j - 1))] = rec.c[j];
        }
    }
    return Presentation::make(F, p, n, spec.precision, "X", std::move(reductions), delta);
}

// ---- Theta, alpha ---------------------------------------------------------------------

std::vector<GroupAlgebraElement> build_thetas(const Matrix& delta, const FqField& field, int p, int n) {
    std::vector<GroupAlgebraElement> thetas;
    thetas.push_back(GroupAlgebraElement::sigma(field, p, n, n));
    for (int i = 1; i <= n; ++i) {
        GroupAlgebraElement theta = GroupAlgebraElement::sigma(field, p, n, n - i);
        for (int k = 0; k < i; ++k) theta = theta * truncated_exp(thetas[k], -delta[n - i][n - k]);
        thetas.push_back(std::move(theta));
    }
    return thetas;
}

std::vector<LaurentSeries> scaffold_alphas(const BreakData& d, const FqField& field) {
    std::vector<LaurentSeries> alphas;
    for (int j = 0; j <= d.n; ++j) {
        const long long num = d.lower[d.n] - d.lower[j];
        const long long den = int_pow(d.p, j + 1);
        long long from_gaps = 0;
        if (j < d.n) {
            long long sum = 0;
            for (int i = j + 1; i <= d.n; ++i) sum += int_pow(d.p, i) * d.m[i];
            from_gaps = int_pow(d.p, d.n - j - 1) * sum;
        }
        if (num % den != 0 || num / den != from_gaps)
            throw Error(ErrorCode::LemmaViolation, "scaffold",
                        "v(alpha_" + std::to_string(j) + "): (b_(n) - b_(j)) / p^(j+1) = " + std::to_string(num) +
                            "/" + std::to_string(den) + " but the gap formula gives " + std::to_string(from_gaps));
        alphas.push_back(LaurentSeries::monomial(field, 1, from_gaps));
    }
    return alphas;
}

long long predicted_valuation(const std::vector<int>& a, long long v_rho, const BreakData& d) {
    const long long N = int_pow(d.p, d.n + 1);
    if (((v_rho - d.b_m) % N + N) % N != 0)
        throw Error(ErrorCode::InvalidArgument, "scaffold",
                    "v_L(rho) = " + std::to_string(v_rho) + " is not b_m = " + std::to_string(d.b_m) + " mod " +
                        std::to_string(N));
    long long v = v_rho;
    for (int s = 0; s <= d.n; ++s) v += a[s] * int_pow(d.p, s) * d.b_m;
    return v;
}

// ---- Scaffold ---------------------------------------------------------------------

Scaffold Scaffold::build(const TowerSpec& spec, Frame frame) {
    Scaffold s;
    s.tower = Tower::build(spec);
    s.breaks = breaks_from_spec(spec);
    require_error_bound(spec, s.breaks);
    const FqField& F = s.tower.field();
    const int n = spec.n;
    const int p = spec.p;

    s.triangle = omega_reduce(spec.omegas, p, spec.precision);
    s.omega_phi = omega_phi_matrix(s.triangle);
    s.delta = invert_unipotent(s.omega_phi);
    if (!agrees_with(multiply(s.omega_phi, s.delta), identity_matrix(F, n + 1)))
        throw Error(ErrorCode::LemmaViolation, "scaffold", "[Omega^phi] [Delta] is not the identity");

    s.rec = x_recursion(s.tower, s.triangle, s.breaks);
    s.assumption = check_assumption1(s.rec, s.delta);
    s.adapted = adapted_presentation(s.tower, s.rec, s.delta);

    std::vector<TowerElement> x_images;
    std::vector<TowerElement> y_images;
    for (int j = 0; j <= n; ++j) {
        TowerElement img(s.adapted);
        for (int k = 0; k <= j; ++k)
            img += TowerElement::variable(s.adapted, k).scaled(s.omega_phi[k][j]);
        x_images.push_back(std::move(img));
        y_images.push_back(s.rec.adapted_variable(j));
    }
    s.to_adapted = std::make_shared<PresentationMap>(s.tower.generators(), s.adapted, std::move(x_images));
    s.to_generators = std::make_shared<PresentationMap>(s.adapted, s.tower.generators(), std::move(y_images));
    s.frame = frame;
    s.oracle = frame == Frame::Adapted ? ValuationOracle(s.to_adapted) : ValuationOracle();

    for (int j = 0; j <= n; ++j) {
        const long long v = s.oracle.valuation(s.rec.adapted_variable(j));
        const long long expected = -int_pow(p, n - j) * s.breaks.lower[j];
        if (v != expected)
            throw Error(ErrorCode::LemmaViolation, "scaffold",
                        "v_L(X_" + std::to_string(j) + "^(" + std::to_string(j) + ")) = " + std::to_string(v) +
                            ", expected " + std::to_string(expected));
        s.variable_valuations.push_back(v);
    }

    s.thetas = build_thetas(s.delta, F, p, n);
    s.alphas = scaffold_alphas(s.breaks, F);
    return s;
}

TowerElement Scaffold::variable(int j) const {
    return frame == Frame::Adapted ? TowerElement::variable(adapted, j) : rec.adapted_variable(j);
}

TowerElement Scaffold::to_working(const TowerElement& e) const {
    if (e.presentation() == working()) return e;
    if (e.presentation() == tower.generators()) return (*to_adapted)(e);
    if (e.presentation() == adapted) return (*to_generators)(e);
    throw Error(ErrorCode::InvalidArgument, "scaffold", "element belongs to a different tower");
}

// ---- valuation rows ----------------------------------------------------------------------

TheoremReport verify_theorem(const Scaffold& s, const TowerElement& rho) {
    const int p = s.p();
    const int n = s.n();
    const long long N = int_pow(p, n + 1);
    const BreakData& d = s.breaks;
    const TowerElement start = s.to_working(rho);

    TheoremReport report;
    report.rho_valuation = s.oracle.valuation(start);
    predicted_valuation(std::vector<int>(n + 1, 0), report.rho_valuation, d);

    const GroupAlgebraElement one = GroupAlgebraElement::one(s.field(), p, n);
    std::vector<GroupAlgebraElement> steps;
    for (int k = 0; k <= n; ++k) steps.push_back((s.thetas[k] - one).scaled(s.alphas[n - k]));

    std::vector<TowerElement> elements(static_cast<std::size_t>(N));
    elements[0] = start;
    std::set<long long> predicted_residues;
    std::set<long long> measured_residues;
    report.pass = true;
    for (long long k = 0; k < N; ++k) {
        TheoremRow row;
        row.a = digits(k, p, n);
        if (k > 0) {
            int low = 0;
            while (row.a[low] == 0) ++low;
            elements[k] = apply_algebra(steps[low], elements[k - int_pow(p, low)]);
        }
        row.predicted = predicted_valuation(row.a, report.rho_valuation, d);
        row.measured = s.oracle.valuation(elements[k]);
        row.pass = row.predicted == row.measured;
        report.pass = report.pass && row.pass;
        predicted_residues.insert(((row.predicted - report.rho_valuation) % N + N) % N);
        measured_residues.insert((row.measured % N + N) % N);
        report.rows.push_back(std::move(row));
    }
    report.residues_complete = static_cast<long long>(predicted_residues.size()) == N;
    report.measured_residues_complete = static_cast<long long>(measured_residues.size()) == N;
    report.pass = report.pass && report.residues_complete && report.measured_residues_complete;
    return report;
}

void require_theorem(const TheoremReport& report) {
    for (const auto& row : report.rows) {
        if (row.pass) continue;
        std::string a;
        for (std::size_t i = 0; i < row.a.size(); ++i) a += (i ? "," : "") + std::to_string(row.a[i]);
        throw Error(ErrorCode::Mismatch, "scaffold",
                    "a = (" + a + "): expected " + std::to_string(row.predicted) + ", got " +
                        std::to_string(row.measured));
    }
    if (!report.residues_complete || !report.measured_residues_complete)
        throw Error(ErrorCode::Mismatch, "scaffold", "valuations miss a residue class mod [L:K]");
}

TowerElement canonical_rho(const Scaffold& s) {
    const int p = s.p();
    const int n = s.n();
    long long exponent = s.breaks.b_m;
    for (const auto& a : s.alphas) exponent -= (p - 1) * a.valuation();
    TowerElement r = TowerElement::constant(s.working(), LaurentSeries::monomial(s.field(), 1, exponent));
    for (int j = 0; j <= n; ++j) r = r * binom_element(s.variable(j), p - 1);
    return r;
}

// ---- normal basis -----------------------------------------------------------------

bool normal_basis_check(const Scaffold& s, const TowerElement& rho) {
    const int p = s.p();
    const int n = s.n();
    const long long N = int_pow(p, n + 1);
    const TowerElement r = s.to_working(rho);
    const long long rel = s.tower.spec().precision;

    Matrix A;
    for (long long k = 0; k < N; ++k) {
        TowerElement g = apply_group_element(GroupIndex::from_ordinal(p, n, k), r);
        std::vector<LaurentSeries> row;
        for (std::size_t i = 0; i < g.size(); ++i) row.push_back(g.coefficient(i));
        A.push_back(std::move(row));
    }
    for (long long k = 1; k < N; ++k) {
        bool same = true;
        for (long long i = 0; i < N && same; ++i) same = (A[k][i] - A[0][i]).is_exact_zero();
        if (same) return false;
    }

    std::vector<int> rows(N);
    std::vector<int> cols(N);
    for (long long i = 0; i < N; ++i) rows[i] = cols[i] = static_cast<int>(i);
    for (long long step = 0; step < N; ++step) {
        int best_r = -1;
        int best_c = -1;
        long long best_v = 0;
        bool all_exact_zero = true;
        for (long long a = step; a < N; ++a) {
            for (long long b = step; b < N; ++b) {
                const LaurentSeries& e = A[rows[a]][cols[b]];
                if (!e.is_exact_zero()) all_exact_zero = false;
                if (e.is_zero()) continue;
                if (best_r < 0 || e.valuation() < best_v) {
                    best_r = static_cast<int>(a);
                    best_c = static_cast<int>(b);
                    best_v = e.valuation();
                }
            }
        }
        if (best_r < 0) {
            if (all_exact_zero) return false;
            throw Error(ErrorCode::PrecisionLoss, "scaffold",
                        "conjugate matrix has rank at least " + std::to_string(step) +
                            " but the rest is only zero to precision; retry with precision " +
                            std::to_string(2 * rel));
        }
        std::swap(rows[step], rows[best_r]);
        std::swap(cols[step], cols[best_c]);
        const std::vector<LaurentSeries>& pivot_row = A[rows[step]];
        const LaurentSeries& pivot = pivot_row[cols[step]];
        for (long long a = step + 1; a < N; ++a) {
            std::vector<LaurentSeries>& row = A[rows[a]];
            const LaurentSeries& lead = row[cols[step]];
            if (lead.is_exact_zero()) continue;
            const LaurentSeries f = lead.divide(pivot, rel);
            for (long long b = step; b < N; ++b)
                if (!pivot_row[cols[b]].is_exact_zero()) row[cols[b]] -= f * pivot_row[cols[b]];
        }
    }
    return true;
}

// ---- uniformizer and random elements ---------------------------------------------------

Uniformizer uniformizer(const Scaffold& s) {
    const long long N = int_pow(s.p(), s.n() + 1);
    const long long bm = -s.variable_valuations[s.n()];
    Uniformizer u;
    for (u.c = 0; u.c < N; ++u.c)
        if ((u.c * bm + 1) % N == 0) break;
    if (u.c == N) throw Error(ErrorCode::NoSolution, "scaffold", "b_(n) is not prime to p");
    u.a = (1 + u.c * bm) / N;
    u.element = s.variable(s.n())
                    .pow(static_cast<std::uint64_t>(u.c))
                    .scaled(LaurentSeries::monomial(s.field(), 1, u.a));
    return u;
}

TowerElement random_element_of_valuation(const Scaffold& s, long long v, Rng& rng, long long relative) {
    const int p = s.p();
    const int n = s.n();
    const long long N = int_pow(p, n + 1);
    const FqField& F = s.field();
    const PresentationPtr& W = s.working();
    if (relative <= 0) relative = s.tower.spec().precision;

    std::vector<TowerElement> monomials;
    std::vector<long long> mono_val;
    for (long long k = 0; k < N; ++k) {
        const std::vector<int> e = digits(k, p, n);
        long long val = 0;
        for (int j = 0; j <= n; ++j) val += e[j] * s.variable_valuations[j];
        mono_val.push_back(val);
        if (s.frame == Frame::Adapted) {
            monomials.push_back(TowerElement::monomial(W, e, LaurentSeries::one(F)));
        } else {
            TowerElement m = TowerElement::constant(W, LaurentSeries::one(F));
            for (int j = 0; j <= n; ++j) m = m * s.variable(j).pow(static_cast<std::uint64_t>(e[j]));
            monomials.push_back(std::move(m));
        }
    }

    long long lead = -1;
    for (long long k = 0; k < N; ++k)
        if (((v - mono_val[k]) % N + N) % N == 0) lead = k;
    if (lead < 0) throw Error(ErrorCode::LemmaViolation, "scaffold", "monomial valuations miss a residue class");
    TowerElement result =
        monomials[lead].scaled(random_series(rng, F, 0, relative).shifted((v - mono_val[lead]) / N));

    TowerElement unit = TowerElement::constant(W, LaurentSeries::one(F));
    for (long long k = 0; k < N; ++k) {
        const long long start = ceil_div(1 - mono_val[k], N);
        unit += monomials[k].scaled(random_series_maybe_zero(rng, F, start, relative));
    }
    return result * unit;
}

}  // namespace galscaf
