#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galscaf/fq.hpp"
#include "galscaf/laurent.hpp"

namespace galscaf {

/**
 * Input data of a tower L = K(x_0, ..., x_n) with
 *
 *     x_i^p - x_i = phi^n(Omega_i) * beta + epsilon_i.
 *
 * `precision` is the working relative precision used whenever an exact
 * input has to be inverted or a random series drawn.
 */
struct TowerSpec {
    int p = 2;
    int f = 1;
    int n = 0;
    long long precision = LaurentSeries::kDefaultPrecision;
    LaurentSeries beta;
    std::vector<LaurentSeries> omegas;
    std::vector<LaurentSeries> epsilons;

    const FqField& field() const { return FqField::get(p, f); }
    long long b() const { return -beta.valuation(); }
    // The constant phi^n(Omega_i) beta + epsilon_i.
    LaurentSeries wp_value(int i) const;

    bool operator==(const TowerSpec& o) const;
};

enum class SpecClause {
    Shape,           // sizes, p prime, n >= 0, precision
    BetaValuation,   // v(beta) = -b with b > 0
    Coprime,         // gcd(b, p) = 1
    OmegaZero,       // Omega_0 = 1
    OmegaOrdering,   // v(Omega_n) <= ... <= v(Omega_1) <= 0
    Independence,    // equal-valuation runs have F_p-independent leading terms
    EpsilonZero,     // epsilon_0 = 0
    EpsilonValuation // v(epsilon_i) > v(phi^n(Omega_i) beta)
};

std::string_view to_string(SpecClause clause);

struct SpecViolation {
    SpecClause clause;
    std::string detail;
};

std::optional<SpecViolation> check_spec(const TowerSpec& spec);
// Throws InvalidSpec naming the first violated clause.
void validate_spec(const TowerSpec& spec);

/// Exponent vector (a_0, ..., a_n) of sigma_0^{a_0} ... sigma_n^{a_n}.
struct GroupIndex {
    std::vector<int> a;

    static GroupIndex identity(int n) { return {std::vector<int>(n + 1, 0)}; }
    static GroupIndex generator(int n, int i);
    // Inverse of ordinal(): digit i of k in base p is a_i.
    static GroupIndex from_ordinal(int p, int n, long long k);
    long long ordinal(int p) const;
    GroupIndex plus(const GroupIndex& o, int p) const;
    bool is_identity() const;
    bool operator==(const GroupIndex& o) const { return a == o.a; }
    bool operator<(const GroupIndex& o) const { return a < o.a; }
    std::string to_string() const;
};

/**
 * An Artin-Schreier presentation of L over K by variables Y_0, ..., Y_n:
 *
 *     Y_j^p - Y_j = B_j,   B_j in K(Y_0, ..., Y_{j-1}),
 *     sigma_i Y_j = Y_j + d_{ij},   d_{ij} in K.
 *
 * The generator presentation has Y_j = x_j, constant B_j and d = identity.
 * Other presentations (for instance one adapted to a scaffold) are built
 * from verified data and share the group labelling of the generator one.
 *
 * The norm computation uses sigma_j as a generator of Gal(K_j / K_{j-1}),
 * which requires d_{jk} = 0 for k < j and d_{jj} != 0.
 */
struct Presentation {
    const FqField* field = nullptr;
    int p = 2;
    int n = 0;
    long long precision = LaurentSeries::kDefaultPrecision;
    std::string variable;  // printing prefix, e.g. "x"
    // reductions[j] is B_j, dense over the p^j monomials in Y_0..Y_{j-1}.
    std::vector<std::vector<LaurentSeries>> reductions;
    std::vector<std::vector<LaurentSeries>> shifts;  // shifts[i][j] = d_{ij}
    std::vector<bool> constant_reduction;

    long long degree() const;
    static std::shared_ptr<const Presentation> make(const FqField& field, int p, int n, long long precision,
                                                    std::string variable,
                                                    std::vector<std::vector<LaurentSeries>> reductions,
                                                    std::vector<std::vector<LaurentSeries>> shifts);
};

using PresentationPtr = std::shared_ptr<const Presentation>;

/**
 * Element of L as a dense vector of p^{n+1} coefficients in K, one for each
 * monomial Y_0^{e_0} ... Y_n^{e_n} with 0 <= e_i < p, indexed by
 * e_0 + e_1 p + ... + e_n p^n. Products are reduced eagerly.
 */
class TowerElement {
public:
    TowerElement() = default;
    explicit TowerElement(PresentationPtr presentation);

    static TowerElement constant(PresentationPtr presentation, const LaurentSeries& a);
    static TowerElement variable(PresentationPtr presentation, int j);
    static TowerElement monomial(PresentationPtr presentation, const std::vector<int>& exponents,
                                 const LaurentSeries& a);

    const PresentationPtr& presentation() const noexcept { return pres_; }
    const Presentation& pres() const { return *pres_; }
    std::size_t size() const noexcept { return c_.size(); }

    const LaurentSeries& coefficient(std::size_t index) const { return c_[index]; }
    LaurentSeries& coefficient(std::size_t index) { return c_[index]; }
    const LaurentSeries& coefficient(const std::vector<int>& exponents) const;
    std::vector<int> exponents_of(std::size_t index) const;
    std::size_t index_of(const std::vector<int>& exponents) const;

    // Every coefficient is zero to its precision.
    bool is_zero() const;
    // Every non-constant coefficient is zero to its precision.
    bool in_base_field() const;
    const LaurentSeries& constant_term() const { return c_[0]; }
    // Smallest absolute precision among the nonzero or inexact coefficients.
    long long min_precision() const;

    TowerElement operator+(const TowerElement& o) const;
    TowerElement operator-(const TowerElement& o) const;
    TowerElement operator-() const;
    TowerElement operator*(const TowerElement& o) const;
    TowerElement& operator+=(const TowerElement& o) { return *this = *this + o; }
    TowerElement& operator-=(const TowerElement& o) { return *this = *this - o; }
    TowerElement& operator*=(const TowerElement& o) { return *this = *this * o; }
    TowerElement scaled(const LaurentSeries& a) const;
    TowerElement pow(std::uint64_t e) const;
    TowerElement wp() const { return pow(static_cast<std::uint64_t>(pres_->p)) - *this; }

    // Coefficient-wise equality to precision.
    bool agrees_with(const TowerElement& o) const { return (*this - o).is_zero(); }

    std::string to_string() const;

private:
    PresentationPtr pres_;
    std::vector<LaurentSeries> c_;
};

TowerElement apply_group_element(const GroupIndex& g, const TowerElement& e);
// Product of all p^{n+1} conjugates; throws PrecisionLoss when the result is
// not certifiably in K.
LaurentSeries norm(const TowerElement& e);
// v_L(e) = v_K(N_{L/K}(e)), valid because L/K is totally ramified.
long long valuation_L(const TowerElement& e);

/**
 * A K-algebra isomorphism between two presentations of the same field,
 * given by the images of the source variables. Images of all monomials are
 * precomputed so a conversion costs p^{n+1} scalar multiplications.
 */
class PresentationMap {
public:
    PresentationMap(PresentationPtr source, PresentationPtr target, std::vector<TowerElement> variable_images);

    const PresentationPtr& source() const noexcept { return source_; }
    const PresentationPtr& target() const noexcept { return target_; }
    const TowerElement& image_of_variable(int j) const { return variables_[j]; }
    TowerElement operator()(const TowerElement& e) const;

private:
    PresentationPtr source_;
    PresentationPtr target_;
    std::vector<TowerElement> variables_;
    std::vector<TowerElement> monomials_;
};

/**
 * The norm-based valuation on L. Elements of the generator presentation are
 * optionally moved into a better conditioned presentation first, where the
 * conjugate products lose far less precision to cancellation.
 */
class ValuationOracle {
public:
    ValuationOracle() = default;
    explicit ValuationOracle(std::shared_ptr<const PresentationMap> map) : map_(std::move(map)) {}

    long long valuation(const TowerElement& e) const;
    LaurentSeries norm(const TowerElement& e) const;
    TowerElement to_working_frame(const TowerElement& e) const;

private:
    std::shared_ptr<const PresentationMap> map_;
};

/// A validated tower together with its generator presentation.
class Tower {
public:
    static Tower build(const TowerSpec& spec);

    const TowerSpec& spec() const noexcept { return spec_; }
    const FqField& field() const { return *pres_->field; }
    int p() const noexcept { return spec_.p; }
    int n() const noexcept { return spec_.n; }
    long long degree() const { return pres_->degree(); }
    long long b() const { return spec_.b(); }
    const PresentationPtr& generators() const noexcept { return pres_; }

    TowerElement x(int i) const { return TowerElement::variable(pres_, i); }
    TowerElement element(const LaurentSeries& a) const { return TowerElement::constant(pres_, a); }
    TowerElement one() const { return element(LaurentSeries::one(field())); }

private:
    TowerSpec spec_;
    PresentationPtr pres_;
};

long long int_pow(long long base, int exponent);

}  // namespace galscaf
