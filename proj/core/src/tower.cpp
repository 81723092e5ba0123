#include "galscaf/tower.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "galscaf/error.hpp"

namespace galscaf {

namespace {

using Vec = std::vector<LaurentSeries>;

bool block_is_exact_zero(const LaurentSeries* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (!a[i].is_exact_zero()) return false;
    return true;
}

void add_into(Vec& dst, const LaurentSeries* src, std::size_t n) {
    if (dst.empty()) {
        dst.assign(src, src + n);
        return;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!src[i].is_exact_zero()) dst[i] = dst[i] + src[i];
}

void mul_into(const Presentation& P, int j, const LaurentSeries* a, const LaurentSeries* b, LaurentSeries* out);

// out = x * B_j for x in K_{j-1}.
void mul_by_reduction(const Presentation& P, int j, const LaurentSeries* x, LaurentSeries* out) {
    const Vec& B = P.reductions[j];
    if (P.constant_reduction[j]) {
        const std::size_t s = B.size();
        for (std::size_t i = 0; i < s; ++i) out[i] = x[i] * B[0];
        return;
    }
    mul_into(P, j - 1, x, B.data(), out);
}

// out = a * b for a, b in K_j, stored as p^{j+1} coefficients.
void mul_into(const Presentation& P, int j, const LaurentSeries* a, const LaurentSeries* b, LaurentSeries* out) {
    if (j < 0) {
        out[0] = a[0] * b[0];
        return;
    }
    const int p = P.p;
    const std::size_t s = static_cast<std::size_t>(int_pow(p, j));
    std::vector<Vec> C(2 * p - 1);
    Vec tmp(s);
    for (int ea = 0; ea < p; ++ea) {
        const LaurentSeries* A = a + ea * s;
        if (block_is_exact_zero(A, s)) continue;
        for (int eb = 0; eb < p; ++eb) {
            const LaurentSeries* B = b + eb * s;
            if (block_is_exact_zero(B, s)) continue;
            mul_into(P, j - 1, A, B, tmp.data());
            add_into(C[ea + eb], tmp.data(), s);
        }
    }
    // Y_j^k = Y_j^{k-p+1} + B_j Y_j^{k-p} for k >= p, top degree first.
    for (int k = 2 * p - 2; k >= p; --k) {
        if (C[k].empty()) continue;
        add_into(C[k - p + 1], C[k].data(), s);
        mul_by_reduction(P, j, C[k].data(), tmp.data());
        add_into(C[k - p], tmp.data(), s);
    }
    for (int e = 0; e < p; ++e) {
        for (std::size_t i = 0; i < s; ++i) out[e * s + i] = C[e].empty() ? LaurentSeries() : std::move(C[e][i]);
    }
}

// out = g(a) for a in K_j where g shifts Y_k by shift[k].
void act_into(const Presentation& P, int j, const LaurentSeries* a, const Vec& shift, LaurentSeries* out) {
    if (j < 0) {
        out[0] = a[0];
        return;
    }
    const int p = P.p;
    const std::size_t s = static_cast<std::size_t>(int_pow(p, j));
    Vec A(p * s);
    for (int e = 0; e < p; ++e) act_into(P, j - 1, a + e * s, shift, A.data() + e * s);
    if (shift[j].is_exact_zero()) {
        std::move(A.begin(), A.end(), out);
        return;
    }
    const FqField& F = *P.field;
    Vec powers(p);
    powers[0] = LaurentSeries::one(F);
    for (int k = 1; k < p; ++k) powers[k] = powers[k - 1] * shift[j];
    for (std::size_t i = 0; i < p * s; ++i) out[i] = LaurentSeries();
    // (Y + s)^e = sum_k binom(e, k) s^{e-k} Y^k
    std::vector<std::vector<int>> binom(p, std::vector<int>(p, 0));
    for (int e = 0; e < p; ++e) {
        binom[e][0] = 1;
        for (int k = 1; k <= e; ++k) binom[e][k] = (binom[e - 1][k - 1] + (k <= e - 1 ? binom[e - 1][k] : 0)) % p;
    }
    for (int e = 0; e < p; ++e) {
        const LaurentSeries* Ae = A.data() + e * s;
        if (block_is_exact_zero(Ae, s)) continue;
        for (int k = 0; k <= e; ++k) {
            LaurentSeries coef = powers[e - k].scaled(F.from_int(binom[e][k]));
            if (coef.is_exact_zero()) continue;
            for (std::size_t i = 0; i < s; ++i)
                if (!Ae[i].is_exact_zero()) out[k * s + i] = out[k * s + i] + Ae[i] * coef;
        }
    }
}

Vec shift_vector(const Presentation& P, const GroupIndex& g) {
    if (static_cast<int>(g.a.size()) != P.n + 1)
        throw Error(ErrorCode::InvalidArgument, "tower", "group index has wrong length");
    const FqField& F = *P.field;
    Vec shift(P.n + 1, LaurentSeries::zero(F));
    for (int i = 0; i <= P.n; ++i) {
        const int ai = ((g.a[i] % P.p) + P.p) % P.p;
        if (!ai) continue;
        for (int j = 0; j <= P.n; ++j) shift[j] = shift[j] + P.shifts[i][j].scaled(F.from_int(ai));
    }
    return shift;
}

std::string exponent_label(const Presentation& P, const std::vector<int>& e) {
    std::string out;
    for (int j = 0; j <= P.n; ++j) {
        if (!e[j]) continue;
        if (!out.empty()) out += "*";
        out += P.variable + std::to_string(j);
        if (e[j] > 1) out += "^" + std::to_string(e[j]);
    }
    return out;
}

// Rank of integer vectors over F_p.
int rank_mod_p(std::vector<std::vector<int>> rows, int p) {
    int rank = 0;
    const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][c] % p) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[pivot], rows[rank]);
        int inv = 1;
        while ((rows[rank][c] * inv) % p != 1) ++inv;
        for (int& x : rows[rank]) x = (x * inv) % p;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][c] % p == 0) continue;
            const int factor = rows[r][c];
            for (int k = 0; k < cols; ++k) rows[r][k] = ((rows[r][k] - factor * rows[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

long long int_pow(long long base, int exponent) {
    long long r = 1;
    for (int i = 0; i < exponent; ++i) r *= base;
    return r;
}

// ---- TowerSpec ----------------------------------------------------------------

LaurentSeries TowerSpec::wp_value(int i) const { return omegas[i].frobenius(n) * beta + epsilons[i]; }

bool TowerSpec::operator==(const TowerSpec& o) const {
    return p == o.p && f == o.f && n == o.n && precision == o.precision && beta == o.beta && omegas == o.omegas &&
           epsilons == o.epsilons;
}

std::string_view to_string(SpecClause clause) {
    switch (clause) {
        case SpecClause::Shape: return "shape";
        case SpecClause::BetaValuation: return "beta-valuation";
        case SpecClause::Coprime: return "gcd(b,p)=1";
        case SpecClause::OmegaZero: return "omega0=1";
        case SpecClause::OmegaOrdering: return "omega-ordering";
        case SpecClause::Independence: return "Fp-independence";
        case SpecClause::EpsilonZero: return "epsilon0=0";
        case SpecClause::EpsilonValuation: return "epsilon-valuation";
    }
    return "unknown";
}

std::optional<SpecViolation> check_spec(const TowerSpec& spec) {
    auto fail = [](SpecClause c, std::string d) { return std::optional<SpecViolation>(SpecViolation{c, std::move(d)}); };
    if (!is_prime(spec.p)) return fail(SpecClause::Shape, "p = " + std::to_string(spec.p) + " is not prime");
    if (spec.n < 0) return fail(SpecClause::Shape, "n must be non-negative");
    if (spec.precision < 4) return fail(SpecClause::Shape, "precision must be at least 4");
    const FqField* F = nullptr;
    try {
        F = &spec.field();
    } catch (const Error& e) {
        return fail(SpecClause::Shape, e.what());
    }
    if (static_cast<int>(spec.omegas.size()) != spec.n + 1)
        return fail(SpecClause::Shape, "expected " + std::to_string(spec.n + 1) + " omegas");
    if (static_cast<int>(spec.epsilons.size()) != spec.n + 1)
        return fail(SpecClause::Shape, "expected " + std::to_string(spec.n + 1) + " epsilons");
    auto same_field = [&](const LaurentSeries& s) { return !s.has_field() || &s.field() == F; };
    if (!same_field(spec.beta)) return fail(SpecClause::Shape, "beta is over a different field");
    for (int i = 0; i <= spec.n; ++i)
        if (!same_field(spec.omegas[i]) || !same_field(spec.epsilons[i]))
            return fail(SpecClause::Shape, "series " + std::to_string(i) + " is over a different field");

    if (spec.beta.is_zero()) return fail(SpecClause::BetaValuation, "beta is zero to working precision");
    const long long b = -spec.beta.valuation();
    if (b <= 0) return fail(SpecClause::BetaValuation, "v(beta) = " + std::to_string(-b) + " must be negative");
    if (b % spec.p == 0)
        return fail(SpecClause::Coprime,
                    "gcd(b,p) != 1 with b = " + std::to_string(b) + ", p = " + std::to_string(spec.p));

    if (!(spec.omegas[0] - LaurentSeries::one(*F)).is_zero())
        return fail(SpecClause::OmegaZero, "Omega_0 must be 1, got " + spec.omegas[0].to_string());
    std::vector<long long> v(spec.n + 1, 0);
    for (int i = 1; i <= spec.n; ++i) {
        if (spec.omegas[i].is_zero())
            return fail(SpecClause::Independence, "Omega_" + std::to_string(i) + " is zero, so the Omegas are F_p-dependent");
        v[i] = spec.omegas[i].valuation();
        if (v[i] > v[i - 1])
            return fail(SpecClause::OmegaOrdering, "v(Omega_" + std::to_string(i) + ") = " + std::to_string(v[i]) +
                                                       " exceeds v(Omega_" + std::to_string(i - 1) +
                                                       ") = " + std::to_string(v[i - 1]));
    }
    for (int start = 0; start <= spec.n;) {
        int end = start;
        while (end + 1 <= spec.n && v[end + 1] == v[start]) ++end;
        std::vector<std::vector<int>> rows;
        for (int i = start; i <= end; ++i) rows.push_back(F->coordinates(spec.omegas[i].leading_coefficient()));
        if (rank_mod_p(rows, spec.p) != end - start + 1)
            return fail(SpecClause::Independence, "leading coefficients of Omega_" + std::to_string(start) +
                                                      ".." + std::to_string(end) + " (valuation " +
                                                      std::to_string(v[start]) + ") are F_p-dependent");
        start = end + 1;
    }

    if (!spec.epsilons[0].is_zero()) return fail(SpecClause::EpsilonZero, "epsilon_0 must be 0");
    const long long pn = int_pow(spec.p, spec.n);
    for (int i = 1; i <= spec.n; ++i) {
        if (spec.epsilons[i].is_zero()) continue;
        const long long ve = spec.epsilons[i].valuation();
        const long long bound = pn * v[i] - b;
        if (ve <= bound)
            return fail(SpecClause::EpsilonValuation, "v(epsilon_" + std::to_string(i) + ") = " + std::to_string(ve) +
                                                          " must exceed v(phi^n(Omega_i) beta) = " +
                                                          std::to_string(bound));
    }
    return std::nullopt;
}

void validate_spec(const TowerSpec& spec) {
    if (auto violation = check_spec(spec))
        throw Error(ErrorCode::InvalidSpec, "tower",
                    std::string(to_string(violation->clause)) + ": " + violation->detail);
}

// ---- GroupIndex ---------------------------------------------------------------

GroupIndex GroupIndex::generator(int n, int i) {
    GroupIndex g = identity(n);
    g.a[i] = 1;
    return g;
}

GroupIndex GroupIndex::from_ordinal(int p, int n, long long k) {
    GroupIndex g = identity(n);
    for (int i = 0; i <= n; ++i) {
        g.a[i] = static_cast<int>(k % p);
        k /= p;
    }
    return g;
}

long long GroupIndex::ordinal(int p) const {
    long long k = 0;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) k = k * p + ((a[i] % p) + p) % p;
    return k;
}

GroupIndex GroupIndex::plus(const GroupIndex& o, int p) const {
    GroupIndex g = *this;
    for (std::size_t i = 0; i < a.size(); ++i) g.a[i] = (a[i] + o.a[i]) % p;
    return g;
}

bool GroupIndex::is_identity() const {
    return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

std::string GroupIndex::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(a[i]);
    return out + ")";
}

// ---- Presentation -------------------------------------------------------------

long long Presentation::degree() const { return int_pow(p, n + 1); }

PresentationPtr Presentation::make(const FqField& field, int p, int n, long long precision, std::string variable,
                                   std::vector<std::vector<LaurentSeries>> reductions,
                                   std::vector<std::vector<LaurentSeries>> shifts) {
    auto P = std::make_shared<Presentation>();
    P->field = &field;
    P->p = p;
    P->n = n;
    P->precision = precision;
    P->variable = std::move(variable);
    if (static_cast<int>(reductions.size()) != n + 1 || static_cast<int>(shifts.size()) != n + 1)
        throw Error(ErrorCode::InvalidArgument, "tower", "presentation needs n+1 reductions and shift rows");
    for (int j = 0; j <= n; ++j) {
        if (static_cast<long long>(reductions[j].size()) != int_pow(p, j))
            throw Error(ErrorCode::InvalidArgument, "tower", "reduction B_j must live in K_{j-1}");
        if (static_cast<int>(shifts[j].size()) != n + 1)
            throw Error(ErrorCode::InvalidArgument, "tower", "shift rows need n+1 entries");
        for (int k = 0; k < j; ++k)
            if (!shifts[j][k].is_exact_zero())
                throw Error(ErrorCode::InvalidArgument, "tower", "sigma_j must fix the variables below j");
        if (shifts[j][j].is_zero()) throw Error(ErrorCode::InvalidArgument, "tower", "sigma_j must move Y_j");
        bool constant = true;
        for (std::size_t i = 1; i < reductions[j].size(); ++i)
            if (!reductions[j][i].is_exact_zero()) constant = false;
        P->constant_reduction.push_back(constant);
    }
    P->reductions = std::move(reductions);
    P->shifts = std::move(shifts);
    return P;
}

// ---- TowerElement -------------------------------------------------------------

TowerElement::TowerElement(PresentationPtr presentation)
    : pres_(std::move(presentation)), c_(static_cast<std::size_t>(pres_->degree())) {}

TowerElement TowerElement::constant(PresentationPtr presentation, const LaurentSeries& a) {
    TowerElement e(std::move(presentation));
    e.c_[0] = a;
    return e;
}

TowerElement TowerElement::variable(PresentationPtr presentation, int j) {
    const FqField& F = *presentation->field;
    const std::size_t idx = static_cast<std::size_t>(int_pow(presentation->p, j));
    TowerElement e(std::move(presentation));
    e.c_[idx] = LaurentSeries::one(F);
    return e;
}

TowerElement TowerElement::monomial(PresentationPtr presentation, const std::vector<int>& exponents,
                                    const LaurentSeries& a) {
    TowerElement e(std::move(presentation));
    e.c_[e.index_of(exponents)] = a;
    return e;
}

const LaurentSeries& TowerElement::coefficient(const std::vector<int>& exponents) const {
    return c_[index_of(exponents)];
}

std::vector<int> TowerElement::exponents_of(std::size_t index) const {
    std::vector<int> e(pres_->n + 1);
    for (int j = 0; j <= pres_->n; ++j) {
        e[j] = static_cast<int>(index % pres_->p);
        index /= pres_->p;
    }
    return e;
}

std::size_t TowerElement::index_of(const std::vector<int>& exponents) const {
    if (static_cast<int>(exponents.size()) != pres_->n + 1)
        throw Error(ErrorCode::InvalidArgument, "tower", "exponent vector has wrong length");
    std::size_t idx = 0;
    for (int j = pres_->n; j >= 0; --j) {
        if (exponents[j] < 0 || exponents[j] >= pres_->p)
            throw Error(ErrorCode::InvalidArgument, "tower", "exponents must lie in [0, p)");
        idx = idx * pres_->p + exponents[j];
    }
    return idx;
}

bool TowerElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const LaurentSeries& s) { return s.is_zero(); });
}

bool TowerElement::in_base_field() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

long long TowerElement::min_precision() const {
    long long m = LaurentSeries::kExact;
    for (const auto& s : c_) m = std::min(m, s.precision());
    return m;
}

TowerElement TowerElement::operator+(const TowerElement& o) const {
    if (pres_ != o.pres_) throw Error(ErrorCode::InvalidArgument, "tower", "elements of different presentations");
    TowerElement r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!o.c_[i].is_exact_zero()) r.c_[i] = r.c_[i] + o.c_[i];
    return r;
}

TowerElement TowerElement::operator-() const {
    TowerElement r = *this;
    for (auto& s : r.c_) s = -s;
    return r;
}

TowerElement TowerElement::operator-(const TowerElement& o) const { return *this + (-o); }

TowerElement TowerElement::operator*(const TowerElement& o) const {
    if (pres_ != o.pres_) throw Error(ErrorCode::InvalidArgument, "tower", "elements of different presentations");
    TowerElement r(pres_);
    mul_into(*pres_, pres_->n, c_.data(), o.c_.data(), r.c_.data());
    return r;
}

TowerElement TowerElement::scaled(const LaurentSeries& a) const {
    TowerElement r = *this;
    for (auto& s : r.c_)
        if (!s.is_exact_zero()) s = s * a;
    return r;
}

TowerElement TowerElement::pow(std::uint64_t e) const {
    TowerElement result = constant(pres_, LaurentSeries::one(*pres_->field));
    TowerElement base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::string TowerElement::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_exact_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string label = exponent_label(*pres_, exponents_of(i));
        if (label.empty()) {
            out += "(" + c_[i].to_string() + ")";
        } else {
            out += "(" + c_[i].to_string() + ")*" + label;
        }
    }
    return out.empty() ? "0" : out;
}

// ---- action, norm, valuation --------------------------------------------------

TowerElement apply_group_element(const GroupIndex& g, const TowerElement& e) {
    const Presentation& P = e.pres();
    if (g.is_identity()) return e;
    Vec shift = shift_vector(P, g);
    TowerElement r(e.presentation());
    act_into(P, P.n, &e.coefficient(0), shift, &r.coefficient(0));
    return r;
}

LaurentSeries norm(const TowerElement& e) {
    const Presentation& P = e.pres();
    const FqField& F = *P.field;
    Vec cur(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) cur[i] = e.coefficient(i);
    for (int j = P.n; j >= 0; --j) {
        const std::size_t size = static_cast<std::size_t>(int_pow(P.p, j + 1));
        const std::size_t s = size / P.p;
        Vec shift(P.n + 1, LaurentSeries::zero(F));
        shift[j] = P.shifts[j][j];
        Vec prod(cur.begin(), cur.begin() + size);
        Vec conj = prod;
        Vec next(size);
        for (int k = 1; k < P.p; ++k) {
            act_into(P, j, conj.data(), shift, next.data());
            conj.swap(next);
            mul_into(P, j, prod.data(), conj.data(), next.data());
            prod.swap(next);
        }
        for (std::size_t i = s; i < size; ++i)
            if (!prod[i].is_zero())
                throw Error(ErrorCode::PrecisionLoss, "tower",
                            "norm to K_" + std::to_string(j - 1) +
                                " is not certifiably in the subfield; retry with precision " +
                                std::to_string(2 * P.precision));
        prod.resize(s);
        cur.swap(prod);
    }
    return cur[0].has_field() ? cur[0] : LaurentSeries::zero(F);
}

long long valuation_L(const TowerElement& e) {
    LaurentSeries N = norm(e);
    if (N.is_zero())
        throw Error(ErrorCode::NonzeroUndetectable, "tower",
                    "norm is zero to precision O(t^" + std::to_string(N.precision()) + "); retry with precision " +
                        std::to_string(2 * e.pres().precision));
    return N.valuation();
}

// ---- PresentationMap / ValuationOracle ----------------------------------------

PresentationMap::PresentationMap(PresentationPtr source, PresentationPtr target,
                                 std::vector<TowerElement> variable_images)
    : source_(std::move(source)), target_(std::move(target)), variables_(std::move(variable_images)) {
    if (source_->p != target_->p || source_->n != target_->n || source_->field != target_->field)
        throw Error(ErrorCode::InvalidArgument, "tower", "presentations of different towers");
    if (static_cast<int>(variables_.size()) != source_->n + 1)
        throw Error(ErrorCode::InvalidArgument, "tower", "need one image per variable");
    for (const auto& v : variables_)
        if (v.presentation() != target_) throw Error(ErrorCode::InvalidArgument, "tower", "image in wrong presentation");
    const std::size_t d = static_cast<std::size_t>(source_->degree());
    monomials_.resize(d);
    monomials_[0] = TowerElement::constant(target_, LaurentSeries::one(*target_->field));
    for (std::size_t idx = 1; idx < d; ++idx) {
        std::size_t rest = idx;
        int j = 0;
        std::size_t step = 1;
        while (rest % source_->p == 0) {
            rest /= source_->p;
            step *= source_->p;
            ++j;
        }
        monomials_[idx] = monomials_[idx - step] * variables_[j];
    }
}

TowerElement PresentationMap::operator()(const TowerElement& e) const {
    if (e.presentation() != source_) throw Error(ErrorCode::InvalidArgument, "tower", "element not in source presentation");
    TowerElement r(target_);
    for (std::size_t idx = 0; idx < e.size(); ++idx) {
        const LaurentSeries& c = e.coefficient(idx);
        if (c.is_exact_zero()) continue;
        r += monomials_[idx].scaled(c);
    }
    return r;
}

TowerElement ValuationOracle::to_working_frame(const TowerElement& e) const {
    if (map_ && e.presentation() == map_->source()) return (*map_)(e);
    return e;
}

LaurentSeries ValuationOracle::norm(const TowerElement& e) const { return galscaf::norm(to_working_frame(e)); }

long long ValuationOracle::valuation(const TowerElement& e) const { return valuation_L(to_working_frame(e)); }

// ---- Tower --------------------------------------------------------------------

Tower Tower::build(const TowerSpec& spec) {
    validate_spec(spec);
    const FqField& F = spec.field();
    std::vector<Vec> reductions(spec.n + 1);
    std::vector<Vec> shifts(spec.n + 1, Vec(spec.n + 1, LaurentSeries::zero(F)));
    for (int j = 0; j <= spec.n; ++j) {
        reductions[j].assign(static_cast<std::size_t>(int_pow(spec.p, j)), LaurentSeries::zero(F));
        reductions[j][0] = spec.wp_value(j);
        shifts[j][j] = LaurentSeries::one(F);
    }
    Tower t;
    t.spec_ = spec;
    t.pres_ = Presentation::make(F, spec.p, spec.n, spec.precision, "x", std::move(reductions), std::move(shifts));
    return t;
}

}  // namespace galscaf
