#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "galscaf/fq.hpp"

namespace galscaf {

/**
 * Truncated Laurent series over F_q in the variable t.
 *
 * A series is stored densely from its valuation up to its absolute precision:
 * coefficient k of `coefficients()` belongs to t^(start() + k), and every
 * exponent at or above `precision()` is unknown. Three states exist:
 *
 *   - nonzero: the first stored coefficient is nonzero, so `valuation()` is
 *     certified;
 *   - zero to precision: nothing is stored and start() == precision(); the
 *     value may still be nonzero beyond the working precision;
 *   - exact: precision() == kExact, only trailing-zero-free Laurent
 *     polynomials (including the exact 0) are represented this way.
 *
 * Operations propagate precision pessimistically. Exact operands stay exact
 * under ring operations and Frobenius; inversion of an exact non-monomial
 * needs an explicit relative precision.
 *
 * A default-constructed series is an exact zero not yet bound to a field; it
 * takes the field of the other operand in binary operations.
 */
class LaurentSeries {
public:
    static constexpr long long kExact = (1LL << 60);
    static constexpr long long kDefaultPrecision = 128;

    LaurentSeries() = default;

    static LaurentSeries zero(const FqField& field);
    static LaurentSeries zero_to(const FqField& field, long long precision);
    static LaurentSeries one(const FqField& field) { return constant(field, 1); }
    static LaurentSeries constant(const FqField& field, Fq c);
    static LaurentSeries monomial(const FqField& field, Fq c, long long exponent);
    // coeffs[k] is the coefficient of t^(start + k); precision may be kExact.
    static LaurentSeries from_coefficients(const FqField& field, long long start,
                                           std::vector<Fq> coeffs, long long precision);

    const FqField& field() const;
    bool has_field() const noexcept { return field_ != nullptr; }

    bool is_exact() const noexcept { return prec_ == kExact; }
    // True for the exact zero and for series that are zero to working precision.
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_exact_zero() const noexcept { return c_.empty() && prec_ == kExact; }

    // Exponent of the first nonzero coefficient; throws NonzeroUndetectable
    // when every known coefficient vanishes.
    long long valuation() const;
    // Certified lower bound on the valuation (the precision for a zero).
    long long valuation_lower_bound() const noexcept { return val_; }
    long long precision() const noexcept { return prec_; }
    // Known coefficients past the valuation; kExact for exact series.
    long long relative_precision() const noexcept;

    long long start() const noexcept { return val_; }
    const std::vector<Fq>& coefficients() const noexcept { return c_; }
    // Coefficient of t^k; throws PrecisionLoss when k is not known.
    Fq coefficient(long long k) const;
    Fq leading_coefficient() const;
    bool is_monomial() const noexcept;

    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-(const LaurentSeries& o) const;
    LaurentSeries operator-() const;
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries operator/(const LaurentSeries& o) const { return divide(o, kDefaultPrecision); }
    LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
    LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }
    LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

    LaurentSeries scaled(Fq c) const;
    // Multiplication by t^k.
    LaurentSeries shifted(long long k) const;
    // Forget everything at exponents >= precision (never raises precision).
    LaurentSeries truncated(long long precision) const;
    LaurentSeries with_relative_precision(long long relative) const;

    // s^{-1}; keeps the relative precision of s, using `relative_if_exact`
    // for exact non-monomials. Throws DivisionByZero on a zero series.
    LaurentSeries inverse(long long relative_if_exact = kDefaultPrecision) const;
    LaurentSeries divide(const LaurentSeries& o, long long relative_if_exact) const;

    LaurentSeries pow(std::uint64_t e) const;
    // phi^k: coefficients raised to p^k, exponents and precision scaled by p^k.
    LaurentSeries frobenius(int k = 1) const;
    // x^p - x.
    LaurentSeries wp() const { return frobenius(1) - *this; }

    // Structural equality (same field, stored data and precision).
    bool operator==(const LaurentSeries& o) const;
    // The difference is zero to the common precision.
    bool agrees_with(const LaurentSeries& o) const { return (*this - o).is_zero(); }

    // Human notation: "t^-1 + (w+1)*t^2 + O(t^5)".
    std::string to_string() const;
    // Inverse of to_string(); without an O(t^N) term the result is exact.
    static LaurentSeries parse(const FqField& field, std::string_view text);

    // Record notation: "[-2:1,0;-1:1,1]@5" lists (exponent, coordinates)
    // pairs of the nonzero terms; the precision is "exact" for exact series.
    std::string to_record() const;
    static LaurentSeries from_record(const FqField& field, std::string_view text);

private:
    LaurentSeries(const FqField* field, long long val, std::vector<Fq> c, long long prec)
        : field_(field), val_(val), prec_(prec), c_(std::move(c)) {}
    void normalize();

    const FqField* field_ = nullptr;
    long long val_ = kExact;
    long long prec_ = kExact;
    std::vector<Fq> c_;
};

// Low-level convolution of coefficient vectors, truncated to `length` terms.
std::vector<Fq> convolve(const FqField& field, const std::vector<Fq>& a, const std::vector<Fq>& b,
                         std::size_t length);

}  // namespace galscaf
