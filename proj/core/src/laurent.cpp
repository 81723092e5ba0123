#include "galscaf/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "galscaf/error.hpp"

namespace galscaf {

namespace {

constexpr long long kExact = LaurentSeries::kExact;

const FqField* pick_field(const FqField* a, const FqField* b) {
    if (a && b && a != b) throw Error(ErrorCode::InvalidArgument, "base_field", "series over different fields");
    return a ? a : b;
}

std::vector<Fq> convolve_prime(const FqField& F, const std::vector<Fq>& a, const std::vector<Fq>& b,
                               std::size_t length) {
    const std::size_t la = std::min(a.size(), length);
    const std::size_t lb = std::min(b.size(), length);
    std::vector<std::uint64_t> acc(length, 0);
    for (std::size_t i = 0; i < la; ++i) {
        const std::uint64_t ai = a[i];
        if (!ai) continue;
        const std::size_t lim = std::min(lb, length - i);
        std::uint64_t* out = acc.data() + i;
        const Fq* bp = b.data();
        for (std::size_t j = 0; j < lim; ++j) out[j] += ai * bp[j];
    }
    std::vector<Fq> r(length);
    const std::uint64_t p = static_cast<std::uint64_t>(F.p());
    for (std::size_t k = 0; k < length; ++k) r[k] = static_cast<Fq>(acc[k] % p);
    return r;
}

std::vector<Fq> convolve_extension(const FqField& F, const std::vector<Fq>& a, const std::vector<Fq>& b,
                                   std::size_t length) {
    const int f = F.f();
    const std::uint64_t p = static_cast<std::uint64_t>(F.p());
    const std::size_t la = std::min(a.size(), length);
    const std::size_t lb = std::min(b.size(), length);
    std::vector<std::vector<std::uint64_t>> pa(f, std::vector<std::uint64_t>(la));
    std::vector<std::vector<std::uint64_t>> pb(f, std::vector<std::uint64_t>(lb));
    for (std::size_t i = 0; i < la; ++i)
        for (int d = 0; d < f; ++d) pa[d][i] = F.coordinate(a[i], d);
    for (std::size_t i = 0; i < lb; ++i)
        for (int d = 0; d < f; ++d) pb[d][i] = F.coordinate(b[i], d);

    std::vector<std::vector<std::uint64_t>> planes(2 * f - 1, std::vector<std::uint64_t>(length, 0));
    for (int da = 0; da < f; ++da)
        for (int db = 0; db < f; ++db) {
            std::uint64_t* out = planes[da + db].data();
            for (std::size_t i = 0; i < la; ++i) {
                const std::uint64_t ai = pa[da][i];
                if (!ai) continue;
                const std::size_t lim = std::min(lb, length - i);
                const std::uint64_t* bp = pb[db].data();
                for (std::size_t j = 0; j < lim; ++j) out[i + j] += ai * bp[j];
            }
        }
    // Reduce w^d for d >= f with w^f = -(g_0 + ... + g_{f-1} w^{f-1}).
    const auto& g = F.modulus();
    for (int d = 2 * f - 2; d >= 0; --d) {
        for (std::size_t k = 0; k < length; ++k) planes[d][k] %= p;
        if (d < f) continue;
        for (int e = 0; e < f; ++e) {
            const std::uint64_t ge = static_cast<std::uint64_t>(g[e]);
            if (!ge) continue;
            const std::uint64_t scale = (p - ge) % p;
            for (std::size_t k = 0; k < length; ++k) planes[d - f + e][k] += scale * planes[d][k];
        }
    }
    std::vector<Fq> r(length);
    for (std::size_t k = 0; k < length; ++k) {
        int packed = 0;
        for (int d = f - 1; d >= 0; --d) packed = packed * F.p() + static_cast<int>(planes[d][k]);
        r[k] = static_cast<Fq>(packed);
    }
    return r;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

long long to_integer(std::string_view s, std::string_view context) {
    s = trim(s);
    while (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s = trim(s.substr(1));
    }
    if (s.empty()) throw Error(ErrorCode::ParseError, "base_field", "missing integer in '" + std::string(context) + "'");
    long long v = 0;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw Error(ErrorCode::ParseError, "base_field", "bad integer in '" + std::string(context) + "'");
        v = v * 10 + (ch - '0');
        if (v > (1LL << 40)) throw Error(ErrorCode::ParseError, "base_field", "exponent too large");
    }
    return neg ? -v : v;
}

}  // namespace

std::vector<Fq> convolve(const FqField& field, const std::vector<Fq>& a, const std::vector<Fq>& b,
                         std::size_t length) {
    if (field.f() == 1) return convolve_prime(field, a, b, length);
    return convolve_extension(field, a, b, length);
}

LaurentSeries LaurentSeries::zero(const FqField& field) { return {&field, kExact, {}, kExact}; }

LaurentSeries LaurentSeries::zero_to(const FqField& field, long long precision) {
    if (precision >= kExact) return zero(field);
    return {&field, precision, {}, precision};
}

LaurentSeries LaurentSeries::constant(const FqField& field, Fq c) { return monomial(field, c, 0); }

LaurentSeries LaurentSeries::monomial(const FqField& field, Fq c, long long exponent) {
    if (c == 0) return zero(field);
    return {&field, exponent, {c}, kExact};
}

LaurentSeries LaurentSeries::from_coefficients(const FqField& field, long long start, std::vector<Fq> coeffs,
                                               long long precision) {
    if (precision < kExact) {
        if (precision < start) precision = start;
        coeffs.resize(static_cast<std::size_t>(precision - start), 0);
    }
    for (Fq c : coeffs)
        if (c >= field.q()) throw Error(ErrorCode::InvalidArgument, "base_field", "coefficient outside F_q");
    LaurentSeries s(&field, start, std::move(coeffs), precision);
    s.normalize();
    return s;
}

const FqField& LaurentSeries::field() const {
    if (!field_) throw Error(ErrorCode::InvalidArgument, "base_field", "series has no field");
    return *field_;
}

void LaurentSeries::normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead == c_.size()) {
        c_.clear();
        val_ = prec_;
        return;
    }
    if (lead) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
        val_ += static_cast<long long>(lead);
    }
    if (prec_ == kExact)
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

long long LaurentSeries::valuation() const {
    if (c_.empty()) {
        if (prec_ == kExact)
            throw Error(ErrorCode::NonzeroUndetectable, "base_field", "valuation of the exact zero");
        throw Error(ErrorCode::NonzeroUndetectable, "base_field",
                    "series is zero to precision O(t^" + std::to_string(prec_) + ")");
    }
    return val_;
}

long long LaurentSeries::relative_precision() const noexcept {
    if (prec_ == kExact) return kExact;
    return prec_ - val_;
}

Fq LaurentSeries::coefficient(long long k) const {
    if (k >= prec_)
        throw Error(ErrorCode::PrecisionLoss, "base_field",
                    "coefficient of t^" + std::to_string(k) + " beyond precision " + std::to_string(prec_));
    if (k < val_) return 0;
    std::size_t idx = static_cast<std::size_t>(k - val_);
    return idx < c_.size() ? c_[idx] : Fq{0};
}

Fq LaurentSeries::leading_coefficient() const {
    valuation();
    return c_.front();
}

bool LaurentSeries::is_monomial() const noexcept {
    if (c_.empty() || prec_ != kExact) return false;
    return c_.size() == 1;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    const FqField* F = pick_field(field_, o.field_);
    if (is_exact_zero()) return o;
    if (o.is_exact_zero()) return *this;
    const long long prec = std::min(prec_, o.prec_);
    const long long lo = std::min(val_, o.val_);
    long long hi;
    if (prec == kExact) {
        hi = std::max(val_ + static_cast<long long>(c_.size()), o.val_ + static_cast<long long>(o.c_.size()));
    } else {
        hi = prec;
    }
    if (hi <= lo) return zero_to(*F, prec);
    std::vector<Fq> r(static_cast<std::size_t>(hi - lo), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        long long k = val_ + static_cast<long long>(i);
        if (k >= hi) break;
        r[static_cast<std::size_t>(k - lo)] = c_[i];
    }
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
        long long k = o.val_ + static_cast<long long>(i);
        if (k >= hi) break;
        Fq& slot = r[static_cast<std::size_t>(k - lo)];
        slot = F->add(slot, o.c_[i]);
    }
    LaurentSeries s(F, lo, std::move(r), prec);
    s.normalize();
    return s;
}

LaurentSeries LaurentSeries::operator-() const {
    if (c_.empty()) return *this;
    LaurentSeries s = *this;
    for (Fq& c : s.c_) c = field_->neg(c);
    return s;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    const FqField* F = pick_field(field_, o.field_);
    if (is_exact_zero() || o.is_exact_zero()) return F ? zero(*F) : LaurentSeries();
    long long prec = kExact;
    if (prec_ != kExact) prec = std::min(prec, prec_ + o.val_);
    if (o.prec_ != kExact) prec = std::min(prec, o.prec_ + val_);
    if (c_.empty() || o.c_.empty()) return zero_to(*F, prec);
    const long long lo = val_ + o.val_;
    std::size_t length;
    if (prec == kExact) {
        length = c_.size() + o.c_.size() - 1;
    } else {
        if (prec <= lo) return zero_to(*F, prec);
        length = static_cast<std::size_t>(prec - lo);
    }
    LaurentSeries s(F, lo, convolve(*F, c_, o.c_, length), prec);
    s.normalize();
    return s;
}

LaurentSeries LaurentSeries::scaled(Fq c) const {
    if (c_.empty()) return *this;
    if (c == 0) return is_exact() ? zero(*field_) : zero_to(*field_, prec_);
    LaurentSeries s = *this;
    for (Fq& x : s.c_) x = field_->mul(x, c);
    return s;
}

LaurentSeries LaurentSeries::shifted(long long k) const {
    if (is_exact_zero()) return *this;
    LaurentSeries s = *this;
    s.val_ += k;
    if (s.prec_ != kExact) s.prec_ += k;
    return s;
}

LaurentSeries LaurentSeries::truncated(long long precision) const {
    if (precision >= prec_) return *this;
    if (!field_) return *this;
    if (precision <= val_ || c_.empty()) return zero_to(*field_, precision);
    std::vector<Fq> c(c_.begin(), c_.begin() + std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(c_.size()),
                                                                          static_cast<std::ptrdiff_t>(precision - val_)));
    LaurentSeries s(field_, val_, std::move(c), precision);
    s.c_.resize(static_cast<std::size_t>(precision - val_), 0);
    s.normalize();
    return s;
}

LaurentSeries LaurentSeries::with_relative_precision(long long relative) const {
    if (c_.empty()) return *this;
    return truncated(val_ + relative);
}

LaurentSeries LaurentSeries::inverse(long long relative_if_exact) const {
    if (c_.empty()) throw Error(ErrorCode::DivisionByZero, "base_field", "inverse of a series that is zero to precision");
    const FqField& F = *field_;
    const Fq inv0 = F.inv(c_[0]);
    if (is_monomial()) return {field_, -val_, {inv0}, kExact};
    const long long rel = is_exact() ? relative_if_exact : prec_ - val_;
    const std::size_t r = static_cast<std::size_t>(std::max<long long>(rel, 1));
    // Unit part u = s / (c_0 t^v); d = u^{-1} by the triangular recurrence.
    std::vector<Fq> u(r, 0);
    for (std::size_t i = 0; i < r && i < c_.size(); ++i) u[i] = F.mul(c_[i], inv0);
    std::vector<Fq> d(r, 0);
    d[0] = 1;
    if (F.f() == 1) {
        const std::uint64_t p = static_cast<std::uint64_t>(F.p());
        for (std::size_t k = 1; k < r; ++k) {
            std::uint64_t acc = 0;
            const std::size_t lim = std::min(k, c_.size() - 1);
            for (std::size_t i = 1; i <= lim; ++i) acc += static_cast<std::uint64_t>(u[i]) * d[k - i];
            d[k] = static_cast<Fq>((p - acc % p) % p);
        }
    } else {
        for (std::size_t k = 1; k < r; ++k) {
            Fq acc = 0;
            const std::size_t lim = std::min(k, c_.size() - 1);
            for (std::size_t i = 1; i <= lim; ++i) acc = F.add(acc, F.mul(u[i], d[k - i]));
            d[k] = F.neg(acc);
        }
    }
    for (Fq& x : d) x = F.mul(x, inv0);
    LaurentSeries s(field_, -val_, std::move(d), -val_ + static_cast<long long>(r));
    s.normalize();
    return s;
}

LaurentSeries LaurentSeries::divide(const LaurentSeries& o, long long relative_if_exact) const {
    long long rel = relative_if_exact;
    if (!is_exact() && !c_.empty()) rel = std::max(rel, relative_precision());
    return *this * o.inverse(rel);
}

LaurentSeries LaurentSeries::pow(std::uint64_t e) const {
    const FqField& F = field();
    LaurentSeries result = one(F);
    int k = 0;
    while (e) {
        const std::uint64_t digit = e % static_cast<std::uint64_t>(F.p());
        if (digit) {
            LaurentSeries base = frobenius(k);
            for (std::uint64_t i = 0; i < digit; ++i) result = result * base;
        }
        e /= static_cast<std::uint64_t>(F.p());
        ++k;
    }
    return result;
}

LaurentSeries LaurentSeries::frobenius(int k) const {
    if (k == 0 || is_exact_zero()) return *this;
    const FqField& F = *field_;
    long long scale = 1;
    for (int i = 0; i < k; ++i) scale *= F.p();
    const long long prec = prec_ == kExact ? kExact : prec_ * scale;
    if (c_.empty()) return zero_to(F, prec);
    std::size_t length = prec == kExact ? (c_.size() - 1) * static_cast<std::size_t>(scale) + 1
                                        : static_cast<std::size_t>(prec - val_ * scale);
    std::vector<Fq> r(length, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        Fq x = c_[i];
        for (int j = 0; j < k; ++j) x = F.frobenius(x);
        r[i * static_cast<std::size_t>(scale)] = x;
    }
    return {field_, val_ * scale, std::move(r), prec};
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
    if (is_exact_zero() && o.is_exact_zero()) return true;
    return field_ == o.field_ && val_ == o.val_ && prec_ == o.prec_ && c_ == o.c_;
}

std::string LaurentSeries::to_string() const {
    if (is_exact_zero()) return "0";
    std::string out;
    const FqField& F = *field_;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        const long long k = val_ + static_cast<long long>(i);
        std::string coeff = F.format(c_[i]);
        if (coeff.find('+') != std::string::npos) coeff = "(" + coeff + ")";
        std::string term;
        if (k == 0) {
            term = coeff;
        } else {
            if (coeff != "1") term = coeff + "*";
            term += "t";
            if (k != 1) term += "^" + std::to_string(k);
        }
        if (!out.empty()) out += " + ";
        out += term;
    }
    if (prec_ != kExact) {
        if (!out.empty()) out += " + ";
        out += "O(t^" + std::to_string(prec_) + ")";
    }
    return out;
}

LaurentSeries LaurentSeries::parse(const FqField& F, std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw Error(ErrorCode::ParseError, "base_field", "empty series literal");

    // Split into signed top-level terms. A '-' right after '^' belongs to the
    // exponent, and signs inside parentheses belong to the coefficient.
    std::vector<std::pair<bool, std::string_view>> terms;
    int depth = 0;
    bool negative = false;
    std::size_t begin = 0;
    bool pending = false;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        const char ch = i < s.size() ? s[i] : '\0';
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        const bool sign = (ch == '+' || ch == '-') && depth == 0;
        std::string_view before = trim(s.substr(begin, i - begin));
        const bool exponent_sign = sign && !before.empty() && before.back() == '^';
        if (i == s.size() || (sign && !exponent_sign)) {
            if (!before.empty()) {
                terms.push_back({negative, before});
                pending = false;
            } else if (pending && i == s.size()) {
                throw Error(ErrorCode::ParseError, "base_field", "dangling sign in '" + std::string(text) + "'");
            }
            if (i < s.size()) {
                if (before.empty()) {
                    negative = (ch == '-') != negative;
                } else {
                    negative = ch == '-';
                }
                pending = true;
            }
            begin = i + 1;
        }
    }
    if (depth != 0) throw Error(ErrorCode::ParseError, "base_field", "unbalanced parentheses in '" + std::string(text) + "'");

    long long precision = kExact;
    std::map<long long, Fq> coeffs;
    for (auto [neg, term] : terms) {
        if (term.size() >= 2 && term[0] == 'O' && term[1] == '(') {
            if (neg || term.back() != ')') throw Error(ErrorCode::ParseError, "base_field", "bad O-term '" + std::string(term) + "'");
            std::string_view inner = trim(term.substr(2, term.size() - 3));
            if (inner.empty() || inner[0] != 't')
                throw Error(ErrorCode::ParseError, "base_field", "bad O-term '" + std::string(term) + "'");
            inner = trim(inner.substr(1));
            long long n = 1;
            if (!inner.empty()) {
                if (inner[0] != '^') throw Error(ErrorCode::ParseError, "base_field", "bad O-term '" + std::string(term) + "'");
                n = to_integer(inner.substr(1), text);
            }
            precision = std::min(precision, n);
            continue;
        }
        long long exponent = 0;
        Fq c = 1;
        std::size_t tpos = term.find('t');
        std::string_view coeff_text = term;
        if (tpos != std::string_view::npos) {
            coeff_text = trim(term.substr(0, tpos));
            if (!coeff_text.empty() && coeff_text.back() == '*') coeff_text = trim(coeff_text.substr(0, coeff_text.size() - 1));
            std::string_view rest = trim(term.substr(tpos + 1));
            exponent = 1;
            if (!rest.empty()) {
                if (rest[0] != '^') throw Error(ErrorCode::ParseError, "base_field", "bad term '" + std::string(term) + "'");
                exponent = to_integer(rest.substr(1), text);
            }
        }
        if (!coeff_text.empty()) c = F.parse(coeff_text);
        if (neg) c = F.neg(c);
        Fq& slot = coeffs[exponent];
        slot = F.add(slot, c);
    }

    if (coeffs.empty()) return precision == kExact ? zero(F) : zero_to(F, precision);
    const long long lo = coeffs.begin()->first;
    long long hi = precision == kExact ? coeffs.rbegin()->first + 1 : precision;
    if (hi <= lo) return zero_to(F, precision);
    std::vector<Fq> c(static_cast<std::size_t>(hi - lo), 0);
    for (auto [k, v] : coeffs)
        if (k < hi) c[static_cast<std::size_t>(k - lo)] = v;
    return from_coefficients(F, lo, std::move(c), precision);
}

std::string LaurentSeries::to_record() const {
    std::string out = "[";
    bool first = true;
    if (field_) {
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!c_[i]) continue;
            if (!first) out += ";";
            first = false;
            out += std::to_string(val_ + static_cast<long long>(i)) + ":";
            for (int d = 0; d < field_->f(); ++d) {
                if (d) out += ",";
                out += std::to_string(field_->coordinate(c_[i], d));
            }
        }
    }
    out += "]@";
    out += prec_ == kExact ? std::string("exact") : std::to_string(prec_);
    return out;
}

LaurentSeries LaurentSeries::from_record(const FqField& F, std::string_view text) {
    std::string_view s = trim(text);
    const std::size_t close = s.find(']');
    if (s.empty() || s[0] != '[' || close == std::string_view::npos || close + 1 >= s.size() || s[close + 1] != '@')
        throw Error(ErrorCode::ParseError, "base_field", "bad series record '" + std::string(text) + "'");
    std::string_view body = s.substr(1, close - 1);
    std::string_view prec_text = trim(s.substr(close + 2));
    const long long precision = prec_text == "exact" ? kExact : to_integer(prec_text, text);

    std::map<long long, Fq> coeffs;
    while (!trim(body).empty()) {
        std::size_t semi = body.find(';');
        std::string_view item = trim(body.substr(0, semi));
        body = semi == std::string_view::npos ? std::string_view{} : body.substr(semi + 1);
        std::size_t colon = item.find(':');
        if (colon == std::string_view::npos)
            throw Error(ErrorCode::ParseError, "base_field", "bad term '" + std::string(item) + "' in record");
        const long long k = to_integer(item.substr(0, colon), text);
        std::vector<int> coords;
        std::string_view rest = item.substr(colon + 1);
        while (true) {
            std::size_t comma = rest.find(',');
            coords.push_back(static_cast<int>(to_integer(rest.substr(0, comma), text)));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (static_cast<int>(coords.size()) != F.f())
            throw Error(ErrorCode::ParseError, "base_field", "coefficient needs " + std::to_string(F.f()) + " residues");
        for (int c : coords)
            if (c < 0 || c >= F.p()) throw Error(ErrorCode::ParseError, "base_field", "residue out of range in record");
        coeffs[k] = F.from_coordinates(coords);
    }
    if (coeffs.empty()) return precision == kExact ? zero(F) : zero_to(F, precision);
    const long long lo = coeffs.begin()->first;
    const long long hi = precision == kExact ? coeffs.rbegin()->first + 1 : precision;
    if (hi <= lo) return zero_to(F, precision);
    std::vector<Fq> c(static_cast<std::size_t>(hi - lo), 0);
    for (auto [k, v] : coeffs) {
        if (k >= hi) throw Error(ErrorCode::ParseError, "base_field", "term beyond recorded precision");
        c[static_cast<std::size_t>(k - lo)] = v;
    }
    return from_coefficients(F, lo, std::move(c), precision);
}

}  // namespace galscaf
