#include "galscaf/group_algebra.hpp"

#include "galscaf/error.hpp"

namespace galscaf {

GroupAlgebraElement::GroupAlgebraElement(const FqField& field, int p, int n)
    : field_(&field), p_(p), n_(n), c_(static_cast<std::size_t>(int_pow(p, n + 1))) {}

GroupAlgebraElement GroupAlgebraElement::one(const FqField& field, int p, int n) {
    return group_element(field, p, n, GroupIndex::identity(n));
}

GroupAlgebraElement GroupAlgebraElement::group_element(const FqField& field, int p, int n, const GroupIndex& g) {
    GroupAlgebraElement r(field, p, n);
    r.c_[g.ordinal(p)] = LaurentSeries::one(field);
    return r;
}

void GroupAlgebraElement::check_compatible(const GroupAlgebraElement& o) const {
    if (field_ != o.field_ || p_ != o.p_ || n_ != o.n_)
        throw Error(ErrorCode::InvalidArgument, "group_algebra", "elements of different group algebras");
}

LaurentSeries GroupAlgebraElement::augmentation() const {
    LaurentSeries s = LaurentSeries::zero(*field_);
    for (const auto& c : c_) s = s + c;
    return s;
}

bool GroupAlgebraElement::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
    check_compatible(o);
    GroupAlgebraElement r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!o.c_[i].is_exact_zero()) r.c_[i] = r.c_[i] + o.c_[i];
    return r;
}

GroupAlgebraElement GroupAlgebraElement::operator-() const {
    GroupAlgebraElement r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& o) const { return *this + (-o); }

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
    check_compatible(o);
    GroupAlgebraElement r(*field_, p_, n_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_exact_zero()) continue;
        const GroupIndex g = GroupIndex::from_ordinal(p_, n_, static_cast<long long>(i));
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_exact_zero()) continue;
            const GroupIndex h = GroupIndex::from_ordinal(p_, n_, static_cast<long long>(j));
            auto& slot = r.c_[g.plus(h, p_).ordinal(p_)];
            slot = slot + c_[i] * o.c_[j];
        }
    }
    return r;
}

GroupAlgebraElement GroupAlgebraElement::scaled(const LaurentSeries& a) const {
    GroupAlgebraElement r = *this;
    for (auto& c : r.c_)
        if (!c.is_exact_zero()) c = c * a;
    return r;
}

GroupAlgebraElement GroupAlgebraElement::pow(unsigned e) const {
    GroupAlgebraElement result = one(*field_, p_, n_);
    for (unsigned i = 0; i < e; ++i) result = result * *this;
    return result;
}

std::string GroupAlgebraElement::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_exact_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c_[i].to_string() + ")*s" + GroupIndex::from_ordinal(p_, n_, static_cast<long long>(i)).to_string();
    }
    return out.empty() ? "0" : out;
}

LaurentSeries binom_scalar(const LaurentSeries& A, int i, int p) {
    if (i < 0 || i >= p)
        throw Error(ErrorCode::InvalidArgument, "group_algebra", "binomial index must lie in [0, p)");
    const FqField& F = A.has_field() ? A.field() : FqField::get(p, 1);
    LaurentSeries r = LaurentSeries::one(F);
    long long factorial = 1;
    for (int k = 0; k < i; ++k) {
        r = r * (A - LaurentSeries::constant(F, F.from_int(k)));
        factorial = factorial * (k + 1) % p;
    }
    return r.scaled(F.inv(F.from_int(factorial)));
}

TowerElement binom_element(const TowerElement& A, int i) {
    const Presentation& P = A.pres();
    const FqField& F = *P.field;
    if (i < 0 || i >= P.p)
        throw Error(ErrorCode::InvalidArgument, "group_algebra", "binomial index must lie in [0, p)");
    TowerElement r = TowerElement::constant(A.presentation(), LaurentSeries::one(F));
    long long factorial = 1;
    for (int k = 0; k < i; ++k) {
        r = r * (A - TowerElement::constant(A.presentation(), LaurentSeries::constant(F, F.from_int(k))));
        factorial = factorial * (k + 1) % P.p;
    }
    return r.scaled(LaurentSeries::constant(F, F.inv(F.from_int(factorial))));
}

GroupAlgebraElement truncated_exp(const GroupAlgebraElement& U, const LaurentSeries& A) {
    if (!U.is_one_unit())
        throw Error(ErrorCode::NotOneUnit, "group_algebra", "truncated exponentiation needs a 1-unit");
    const FqField& F = U.field();
    const GroupAlgebraElement one = GroupAlgebraElement::one(F, U.p(), U.n());
    const GroupAlgebraElement N = U - one;
    GroupAlgebraElement result = one;
    GroupAlgebraElement power = one;
    for (int i = 1; i < U.p(); ++i) {
        power = power * N;
        LaurentSeries c = binom_scalar(A, i, U.p());
        if (c.is_exact_zero()) continue;
        result = result + power.scaled(c);
    }
    return result;
}

TowerElement apply_algebra(const GroupAlgebraElement& theta, const TowerElement& e) {
    const Presentation& P = e.pres();
    if (theta.p() != P.p || theta.n() != P.n)
        throw Error(ErrorCode::InvalidArgument, "group_algebra", "group algebra and tower do not match");
    TowerElement r(e.presentation());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const LaurentSeries& c = theta.coefficient(i);
        if (c.is_exact_zero()) continue;
        const GroupIndex g = GroupIndex::from_ordinal(P.p, P.n, static_cast<long long>(i));
        r += apply_group_element(g, e).scaled(c);
    }
    return r;
}

}  // namespace galscaf
