#pragma once

#include <string>
#include <vector>

#include "galscaf/laurent.hpp"
#include "galscaf/tower.hpp"

namespace galscaf {

/**
 * Element of K[G] for G = (Z/p)^{n+1} with generators sigma_0..sigma_n.
 * Coefficients are stored densely, one per group element, indexed by
 * GroupIndex::ordinal().
 */
class GroupAlgebraElement {
public:
    GroupAlgebraElement() = default;
    GroupAlgebraElement(const FqField& field, int p, int n);

    static GroupAlgebraElement one(const FqField& field, int p, int n);
    static GroupAlgebraElement group_element(const FqField& field, int p, int n, const GroupIndex& g);
    static GroupAlgebraElement sigma(const FqField& field, int p, int n, int i) {
        return group_element(field, p, n, GroupIndex::generator(n, i));
    }

    int p() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    const FqField& field() const { return *field_; }
    std::size_t size() const noexcept { return c_.size(); }

    const LaurentSeries& coefficient(std::size_t ordinal) const { return c_[ordinal]; }
    LaurentSeries& coefficient(std::size_t ordinal) { return c_[ordinal]; }
    const LaurentSeries& coefficient(const GroupIndex& g) const { return c_[g.ordinal(p_)]; }

    // Sum of all coefficients.
    LaurentSeries augmentation() const;
    bool in_augmentation_ideal() const { return augmentation().is_zero(); }
    bool is_one_unit() const { return (augmentation() - LaurentSeries::one(*field_)).is_zero(); }
    bool is_zero() const;

    GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator-() const;
    GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
    GroupAlgebraElement scaled(const LaurentSeries& a) const;
    GroupAlgebraElement pow(unsigned e) const;

    bool agrees_with(const GroupAlgebraElement& o) const { return (*this - o).is_zero(); }
    std::string to_string() const;

private:
    void check_compatible(const GroupAlgebraElement& o) const;

    const FqField* field_ = nullptr;
    int p_ = 2;
    int n_ = 0;
    std::vector<LaurentSeries> c_;
};

// A (A - 1) ... (A - i + 1) / i! for 0 <= i < p.
LaurentSeries binom_scalar(const LaurentSeries& A, int i, int p);
// The same falling factorial with a tower element on top.
TowerElement binom_element(const TowerElement& A, int i);

// U^{[A]} = sum_{i<p} binom(A, i) (U - 1)^i for a 1-unit U; throws NotOneUnit otherwise.
GroupAlgebraElement truncated_exp(const GroupAlgebraElement& U, const LaurentSeries& A);

// sum_g c_g g(e), the K-linear extension of the Galois action.
TowerElement apply_algebra(const GroupAlgebraElement& theta, const TowerElement& e);

}  // namespace galscaf
