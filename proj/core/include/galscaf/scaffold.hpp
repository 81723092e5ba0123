#pragma once

#include <memory>
#include <vector>

#include "galscaf/group_algebra.hpp"
#include "galscaf/ramification.hpp"
#include "galscaf/rng.hpp"
#include "galscaf/tower.hpp"

namespace galscaf {

using Matrix = std::vector<std::vector<LaurentSeries>>;

Matrix identity_matrix(const FqField& field, int size);
Matrix multiply(const Matrix& a, const Matrix& b);
bool agrees_with(const Matrix& a, const Matrix& b);

/**
 * Row reduction of the Omega list:
 *
 *     Omega_j^(0) = Omega_j,
 *     Omega_j^(i) = wp(Omega_j^(i-1)) / wp(Omega_i^(i-1))   for j >= i >= 1.
 *
 * entries[i][j] holds Omega_j^(i) for i <= j; entries below the diagonal are
 * left as exact zeros.
 */
struct OmegaTriangle {
    int n = 0;
    Matrix entries;

    const LaurentSeries& at(int i, int j) const { return entries[i][j]; }
};

// Throws DivisionByZero when a pivot wp(Omega_i^(i-1)) vanishes and
// LemmaViolation when v(Omega_j^(i)) != -p^i sum_{i<k<=j} m_k.
OmegaTriangle omega_reduce(const std::vector<LaurentSeries>& omegas, int p, long long precision);

// [Omega^phi]_{ij} = phi^{n-i-1}(Omega_j^(i)) for i < n; row n is (0, ..., 0, 1).
Matrix omega_phi_matrix(const OmegaTriangle& triangle);
// Inverse of a unipotent upper-triangular matrix by back substitution.
Matrix invert_unipotent(const Matrix& m);

/**
 * The elements of the recursion
 *
 *     X_j^(0) = x_j,  X_j^(i) = X_j^(i-1) - phi^{n-i}(Omega_j^(i-1)) X_{i-1}^(i-1),
 *     B_0 = beta,     B_i = c_i X_{i-1}^(i-1) + E_i^(i-1),  c_i = -phi^{n-i}(wp(Omega_i^(i-1))),
 *     E_j^(0) = epsilon_j,  E_j^(i) = E_j^(i-1) - phi^{n-i}(Omega_j^(i)) E_i^(i-1),
 *
 * all in the generator presentation, so that
 * wp(X_j^(i)) = phi^{n-i}(Omega_j^(i)) B_i + E_j^(i).
 */
struct XRecursion {
    std::vector<std::vector<TowerElement>> X;  // X[i][j] = X_j^(i), i <= j
    std::vector<TowerElement> B;
    std::vector<LaurentSeries> c;              // c[0] unused
    Matrix E;                                  // E[i][j] = E_j^(i), i <= j

    const TowerElement& adapted_variable(int j) const { return X[j][j]; }
};

// Checks the wp identity at every step and p^i v(E_i^(i-1)) > -b_(i);
// throws LemmaViolation naming the step.
XRecursion x_recursion(const Tower& tower, const OmegaTriangle& triangle, const BreakData& breaks);

/// (sigma_i - 1) X_j^(j) for every pair, compared with Delta.
struct AssumptionEntry {
    int i = 0;
    int j = 0;
    LaurentSeries value;
    bool in_base_field = false;
    bool matches_delta = false;
};

// Throws AssumptionFailed on the first entry outside K or different from Delta_{ij}.
std::vector<AssumptionEntry> check_assumption1(const XRecursion& rec, const Matrix& delta);

/**
 * The presentation by Y_j = X_j^(j):
 *
 *     Y_0^p - Y_0 = beta,   Y_j^p - Y_j = c_j Y_{j-1} + E_j^(j-1),
 *     sigma_i Y_j = Y_j + Delta_{ij}.
 */
PresentationPtr adapted_presentation(const Tower& tower, const XRecursion& rec, const Matrix& delta);

// Theta_(0) = sigma_n, Theta_(i) = sigma_{n-i} prod_{k<i} Theta_(k)^{[-Delta_{n-i,n-k}]}.
std::vector<GroupAlgebraElement> build_thetas(const Matrix& delta, const FqField& field, int p, int n);

// alpha_j = t^{(b_(n) - b_(j)) / p^{j+1}}; throws LemmaViolation if this
// differs from p^{n-j-1} sum_{i>j} p^i m_i or is not integral.
std::vector<LaurentSeries> scaffold_alphas(const BreakData& breaks, const FqField& field);

// v + sum_s a_s p^s b_m; throws InvalidArgument unless v = b_m mod p^{n+1}.
long long predicted_valuation(const std::vector<int>& a, long long v_rho, const BreakData& breaks);

enum class Frame {
    Adapted,    // elements and norms in the Y presentation
    Generators  // everything in the x presentation
};

/**
 * Everything derived from a spec: breaks, the Omega triangle, [Omega^phi],
 * [Delta], the X recursion, the adapted presentation with maps in both
 * directions, the valuation oracle, Theta_(i) and alpha_j. Construction runs
 * every lemma check and throws on the first failure.
 */
struct Scaffold {
    Tower tower;
    BreakData breaks;
    OmegaTriangle triangle;
    Matrix omega_phi;
    Matrix delta;
    XRecursion rec;
    std::vector<AssumptionEntry> assumption;
    PresentationPtr adapted;
    std::shared_ptr<const PresentationMap> to_adapted;
    std::shared_ptr<const PresentationMap> to_generators;
    Frame frame = Frame::Adapted;
    ValuationOracle oracle;
    std::vector<long long> variable_valuations;  // v_L(Y_j), measured
    std::vector<GroupAlgebraElement> thetas;
    std::vector<LaurentSeries> alphas;

    static Scaffold build(const TowerSpec& spec, Frame frame = Frame::Adapted);

    const FqField& field() const { return tower.field(); }
    int p() const { return tower.p(); }
    int n() const { return tower.n(); }
    // The presentation random elements and reports are written in.
    const PresentationPtr& working() const { return frame == Frame::Adapted ? adapted : tower.generators(); }
    // Y_j in the working presentation.
    TowerElement variable(int j) const;
    TowerElement to_working(const TowerElement& e) const;
};

/// One row of the valuation claim for prod_s alpha_{n-s}^{a_s} (Theta_(s) - 1)^{a_s} rho.
struct TheoremRow {
    std::vector<int> a;
    long long predicted = 0;
    long long measured = 0;
    bool pass = false;
};

struct TheoremReport {
    long long rho_valuation = 0;
    std::vector<TheoremRow> rows;
    // (sum_s a_s p^s) b_m runs over all classes mod p^{n+1}.
    bool residues_complete = false;
    // The measured valuations run over all classes mod p^{n+1}.
    bool measured_residues_complete = false;
    bool pass = false;
};

TheoremReport verify_theorem(const Scaffold& s, const TowerElement& rho);
// Throws Mismatch naming the first failing row.
void require_theorem(const TheoremReport& report);

// A prod_j binom(Y_j, p-1) with A = t^{b_(n)} prod_j alpha_j^{-(p-1)}.
TowerElement canonical_rho(const Scaffold& s);

// Whether the conjugates of rho form a K-basis of L; throws PrecisionLoss
// when the elimination cannot certify either answer.
bool normal_basis_check(const Scaffold& s, const TowerElement& rho);

/// pi_L = t^a Y_n^c with a p^{n+1} - c b_(n) = 1 and 0 <= c < p^{n+1}.
struct Uniformizer {
    long long a = 0;
    long long c = 0;
    TowerElement element;
};

Uniformizer uniformizer(const Scaffold& s);

// t^k Y^e (1 + sum_m a_m Y^m) with v_L(t^k Y^e) = v and every correction
// term of positive valuation, so the result has valuation exactly v.
// Coefficients carry `relative` known terms; 0 means the tower precision.
TowerElement random_element_of_valuation(const Scaffold& s, long long v, Rng& rng, long long relative = 0);

}  // namespace galscaf
