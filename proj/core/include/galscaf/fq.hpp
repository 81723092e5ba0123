#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace galscaf {

// Packed element of F_q: the integer sum c_0 + c_1 p + ... + c_{f-1} p^{f-1}
// of its coordinates in the power basis 1, w, ..., w^{f-1}. For f = 1 the
// packed value is the residue itself, which the series kernels rely on.
using Fq = std::uint16_t;

/**
 * The finite field F_{p^f}, realized as F_p[w]/(g(w)) for a fixed monic
 * primitive polynomial g.
 *
 * g is the first primitive polynomial of degree f when the coefficient
 * vectors (g_0, ..., g_{f-1}) are ordered by the integer sum g_i p^i, so the
 * choice is reproducible across runs and machines. Instances are interned:
 * `get(p, f)` always returns the same object, which lives for the whole
 * program, so raw pointers to it are safe to store.
 *
 * All arithmetic is table driven; q is capped at 1024.
 */
class FqField {
public:
    static constexpr int kMaxOrder = 1024;

    static const FqField& get(int p, int f);

    int p() const noexcept { return p_; }
    int f() const noexcept { return f_; }
    int q() const noexcept { return q_; }

    // Monic modulus g, coefficients low to high (size f + 1).
    const std::vector<int>& modulus() const noexcept { return modulus_; }

    Fq add(Fq a, Fq b) const noexcept { return add_[a * q_ + b]; }
    Fq sub(Fq a, Fq b) const noexcept { return add_[a * q_ + neg_[b]]; }
    Fq neg(Fq a) const noexcept { return neg_[a]; }
    Fq mul(Fq a, Fq b) const noexcept { return mul_[a * q_ + b]; }
    Fq inv(Fq a) const;  // throws DivisionByZero on 0
    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
    Fq pow(Fq a, std::uint64_t e) const noexcept;
    Fq frobenius(Fq a) const noexcept { return frob_[a]; }
    Fq frobenius_inverse(Fq a) const noexcept { return frob_inv_[a]; }
    // Apply a -> a^{p^k} for any integer k (negative k uses the inverse).
    Fq frobenius_power(Fq a, long long k) const noexcept;
    // Absolute trace to F_p, returned as a residue.
    int trace(Fq a) const noexcept { return trace_[a]; }
    Fq from_int(long long v) const noexcept;  // image of an integer in F_p
    bool in_prime_field(Fq a) const noexcept { return a < p_; }

    int coordinate(Fq a, int k) const noexcept { return coords_[a * f_ + k]; }
    std::vector<int> coordinates(Fq a) const;
    Fq from_coordinates(const std::vector<int>& coords) const;

    // Generator w of the power basis (for f = 1 this is 0; use with care).
    Fq generator() const noexcept { return f_ == 1 ? Fq{0} : Fq(p_); }

    // Polynomial-in-w notation, e.g. "w^2+1" or "2".
    std::string format(Fq a) const;
    // Inverse of format(); also accepts integers and "w" powers.
    Fq parse(std::string_view text) const;
    std::string modulus_string() const;

private:
    FqField(int p, int f);

    int p_;
    int f_;
    int q_;
    std::vector<int> modulus_;
    std::vector<Fq> add_, mul_, neg_, inv_, frob_, frob_inv_;
    std::vector<int> trace_;
    std::vector<std::uint8_t> coords_;
};

/// Value type over an interned FqField.
class FqElement {
public:
    FqElement(const FqField& field, Fq value) : field_(&field), value_(value) {}

    static FqElement from_coordinates(const FqField& field, const std::vector<int>& coords) {
        return {field, field.from_coordinates(coords)};
    }

    const FqField& field() const noexcept { return *field_; }
    Fq packed() const noexcept { return value_; }
    std::vector<int> coordinates() const { return field_->coordinates(value_); }
    bool is_zero() const noexcept { return value_ == 0; }

    FqElement operator+(const FqElement& o) const { return {*field_, field_->add(value_, o.value_)}; }
    FqElement operator-(const FqElement& o) const { return {*field_, field_->sub(value_, o.value_)}; }
    FqElement operator*(const FqElement& o) const { return {*field_, field_->mul(value_, o.value_)}; }
    FqElement operator/(const FqElement& o) const { return {*field_, field_->div(value_, o.value_)}; }
    FqElement operator-() const { return {*field_, field_->neg(value_)}; }
    FqElement inverse() const { return {*field_, field_->inv(value_)}; }
    FqElement frobenius() const { return {*field_, field_->frobenius(value_)}; }
    FqElement frobenius_inverse() const { return {*field_, field_->frobenius_inverse(value_)}; }

    bool operator==(const FqElement& o) const noexcept {
        return field_ == o.field_ && value_ == o.value_;
    }

    std::string to_string() const { return field_->format(value_); }

private:
    const FqField* field_;
    Fq value_;
};

bool is_prime(int n) noexcept;

// A root of x^p - x = c in F_q. Exists iff the absolute trace of c vanishes;
// throws NoSolution otherwise. The smallest packed root is returned.
Fq solve_wp(const FqField& field, Fq c);

}  // namespace galscaf
