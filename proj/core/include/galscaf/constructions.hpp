#pragma once

#include <string>
#include <vector>

#include "galscaf/rng.hpp"
#include "galscaf/scaffold.hpp"
#include "galscaf/tower.hpp"

namespace galscaf {

// ---- cyclic degree-p prototype -------------------------------------------------------

// The n = 0 spec x^p - x = beta.
TowerSpec cyclic_spec(int p, int f, const LaurentSeries& beta, long long precision = LaurentSeries::kDefaultPrecision);

struct PrototypeTrial {
    long long rho_valuation = 0;
    std::vector<long long> valuations;  // v_L((sigma - 1)^i rho), i = 0..p-1
    bool residues_complete = false;
    bool matches = false;               // valuations[i] = v(rho) + i b
};

struct PrototypeReport {
    TowerSpec spec;
    long long b = 0;
    long long x_valuation = 0;          // measured v_L(x), expected -b
    long long binom_valuation = 0;      // measured v_L(binom(x - 1, p - 1)), expected -(p-1) b
    std::vector<PrototypeTrial> trials;
    bool pass = false;
};

PrototypeReport cyclic_prototype(int p, int f, const LaurentSeries& beta, int trials, std::uint64_t seed,
                                 long long precision = LaurentSeries::kDefaultPrecision);

struct Lemma21Report {
    int trials = 0;
    int passed = 0;
};

// sum_{i<p} binom(A, i) (sigma - 1)^i binom(x - 1, p - 1) = binom(x - 1 + A, p - 1)
// for random A in L; throws IdentityFailed on the first failure.
bool lemma21_identity(const Tower& cyclic, const TowerElement& A);
Lemma21Report lemma21_check(int p, int f, const LaurentSeries& beta, int trials, std::uint64_t seed,
                            long long precision = 48);

// ---- fully ramified biquadratic extensions ---------------------------------------------

struct ReductionStep {
    LaurentSeries mu_k;     // zero for a coset adjustment
    LaurentSeries tau_k;    // tau after the step
    bool coset_adjustment = false;
};

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    LaurentSeries mu;
    LaurentSeries tau;
};

struct BiquadraticResult {
    TowerSpec spec;
    ReductionTrace trace;
    // The pair actually reduced: beta after coset adjustments, and beta_1.
    LaurentSeries beta;
    LaurentSeries beta1;
    // x_1 was replaced by x_0 + x_1 and the two generators swapped.
    bool relabelled = false;
};

// Writes the biquadratic extension x_0^2 - x_0 = beta, x_1^2 - x_1 = beta1
// as beta1 = Omega_1^2 beta + epsilon_1. Throws InvalidInput unless p = 2,
// both valuations are odd and negative with v(beta1) <= v(beta), and the
// extension is fully ramified of degree 4.
BiquadraticResult biquadratic_reduce(const LaurentSeries& beta, const LaurentSeries& beta1,
                                     long long precision = LaurentSeries::kDefaultPrecision);

// Representative of a + K^wp that is zero, a unit with nonzero trace, or of
// odd negative valuation (p = 2); also in characteristic p > 2 the leading
// terms with exponent divisible by p are removed.
LaurentSeries reduce_wp_coset(const LaurentSeries& a);

// ---- one-dimensional and weakly ramified families -------------------------------------

struct UnitRootResult {
    TowerSpec spec;
    std::vector<Fq> omegas_small;  // power basis 1, zeta, ..., zeta^{f_sub - 1} of F_{p^f_sub}
    Fq zeta = 0;
};

// L = K(y), y^q - y = beta with q = p^{f_sub}, as x_i = sum_r phi^r(omega_i y):
// Omega_i = phi^{-(f_sub-1)}(omega_i), n = f_sub - 1, epsilon = 0.
UnitRootResult unit_root_extension(int p, int f_big, int f_sub, const LaurentSeries& beta,
                                   long long precision = LaurentSeries::kDefaultPrecision);

// beta of valuation -1, Omega_i = phi^{-n}(omega_i) with omega_0 = 1, and
// errors of nonnegative valuation. Throws InvalidInput on bad data.
TowerSpec weakly_ramified_spec(int p, int f, int n, const std::vector<Fq>& units,
                               const std::vector<LaurentSeries>& epsilons, const LaurentSeries& beta,
                               long long precision = LaurentSeries::kDefaultPrecision);

// ---- random specs -----------------------------------------------------------------------

enum class ErrorPlacement {
    None,    // epsilon = 0
    AtBound, // smallest valuation allowed by the error bound
    Inside,  // a few steps past the bound
    Mixed    // each index picks one of the three
};

struct RandomSpecOptions {
    long long max_b = 7;
    long long max_gap = 2;
    ErrorPlacement errors = ErrorPlacement::Mixed;
    int tail_terms = 3;  // extra terms after the leading one in beta, Omega_i, epsilon_i
};

// Working precision that keeps every valuation row certifiable: max(64, 2 b_m + 64).
long long recommended_precision(long long b_m);

// A valid spec with p, n given and f the longest run of equal Omega valuations.
TowerSpec random_spec(Rng& rng, int p, int n, const RandomSpecOptions& options = {});

}  // namespace galscaf
