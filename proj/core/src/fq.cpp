#include "galscaf/fq.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "galscaf/error.hpp"

namespace galscaf {

bool is_prime(int n) noexcept {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Multiplication by w in F_p[w]/(g), on coordinate vectors.
std::vector<int> times_w(const std::vector<int>& a, const std::vector<int>& g, int p) {
    const int f = static_cast<int>(a.size());
    std::vector<int> r(f, 0);
    int top = a[f - 1];
    for (int i = f - 1; i > 0; --i) r[i] = a[i - 1];
    r[0] = 0;
    for (int i = 0; i < f; ++i) r[i] = ((r[i] - top * g[i]) % p + p) % p;
    return r;
}

int pack(const std::vector<int>& a, int p) {
    int v = 0;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) v = v * p + a[i];
    return v;
}

// Returns the powers 1, w, w^2, ... of the class of w modulo g (degree f) until
// the sequence returns to 1, or an empty vector if w is not a unit of order q-1.
std::vector<int> primitive_powers(const std::vector<int>& g, int p, int f, int q) {
    std::vector<int> powers;
    std::vector<int> x(f, 0);
    x[0] = 1;
    for (int k = 0; k < q - 1; ++k) {
        int packed = pack(x, p);
        if (k > 0 && packed == 1) return {};
        if (packed == 0) return {};
        powers.push_back(packed);
        x = times_w(x, g, p);
    }
    if (pack(x, p) != 1) return {};
    return powers;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

long long parse_int(std::string_view s, std::string_view context) {
    s = trim(s);
    if (s.empty()) throw Error(ErrorCode::ParseError, "base_field", "empty integer in '" + std::string(context) + "'");
    bool neg = false;
    if (s.front() == '-' || s.front() == '+') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw Error(ErrorCode::ParseError, "base_field", "bad integer in '" + std::string(context) + "'");
    long long v = 0;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw Error(ErrorCode::ParseError, "base_field", "bad integer in '" + std::string(context) + "'");
        v = v * 10 + (ch - '0');
        if (v > (1LL << 40)) throw Error(ErrorCode::ParseError, "base_field", "integer too large in '" + std::string(context) + "'");
    }
    return neg ? -v : v;
}

}  // namespace

const FqField& FqField::get(int p, int f) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<FqField>> cache;
    if (!is_prime(p) || p > 255)
        throw Error(ErrorCode::InvalidArgument, "base_field", "p must be a prime below 256, got " + std::to_string(p));
    if (f < 1) throw Error(ErrorCode::InvalidArgument, "base_field", "f must be positive");
    long long q = 1;
    for (int i = 0; i < f; ++i) {
        q *= p;
        if (q > kMaxOrder)
            throw Error(ErrorCode::InvalidArgument, "base_field",
                        "field order p^f exceeds " + std::to_string(kMaxOrder));
    }
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{p, f}];
    if (!slot) slot.reset(new FqField(p, f));
    return *slot;
}

FqField::FqField(int p, int f) : p_(p), f_(f), q_(1) {
    for (int i = 0; i < f; ++i) q_ *= p;

    // Log/antilog tables from a primitive element. For f = 1 the "polynomial"
    // w - g only serves to pick the primitive root g.
    std::vector<int> powers;
    for (int k = 0; k < q_ && powers.empty(); ++k) {
        std::vector<int> g(f + 1, 0);
        int r = k;
        for (int i = 0; i < f; ++i) {
            g[i] = r % p;
            r /= p;
        }
        g[f] = 1;
        powers = primitive_powers(g, p, f, q_);
        if (!powers.empty()) modulus_ = g;
    }
    if (powers.empty()) throw Error(ErrorCode::InvalidArgument, "base_field", "no primitive polynomial found");

    coords_.assign(static_cast<std::size_t>(q_) * f_, 0);
    for (int a = 0; a < q_; ++a) {
        int r = a;
        for (int i = 0; i < f_; ++i) {
            coords_[a * f_ + i] = static_cast<std::uint8_t>(r % p_);
            r /= p_;
        }
    }

    std::vector<int> log(q_, -1);
    for (int k = 0; k < q_ - 1; ++k) log[powers[k]] = k;

    const std::size_t qq = static_cast<std::size_t>(q_) * q_;
    add_.assign(qq, 0);
    mul_.assign(qq, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    for (int a = 0; a < q_; ++a) {
        std::vector<int> n(f_);
        for (int i = 0; i < f_; ++i) n[i] = (p_ - coordinate(static_cast<Fq>(a), i)) % p_;
        neg_[a] = static_cast<Fq>(pack(n, p_));
        if (a != 0) inv_[a] = static_cast<Fq>(powers[(q_ - 1 - log[a]) % (q_ - 1)]);
        for (int b = 0; b < q_; ++b) {
            std::vector<int> s(f_);
            for (int i = 0; i < f_; ++i)
                s[i] = (coordinate(static_cast<Fq>(a), i) + coordinate(static_cast<Fq>(b), i)) % p_;
            add_[a * q_ + b] = static_cast<Fq>(pack(s, p_));
            if (a != 0 && b != 0) mul_[a * q_ + b] = static_cast<Fq>(powers[(log[a] + log[b]) % (q_ - 1)]);
        }
    }

    frob_.assign(q_, 0);
    frob_inv_.assign(q_, 0);
    trace_.assign(q_, 0);
    for (int a = 0; a < q_; ++a) frob_[a] = pow(static_cast<Fq>(a), static_cast<std::uint64_t>(p_));
    for (int a = 0; a < q_; ++a) frob_inv_[frob_[a]] = static_cast<Fq>(a);
    for (int a = 0; a < q_; ++a) {
        Fq s = 0;
        Fq x = static_cast<Fq>(a);
        for (int i = 0; i < f_; ++i) {
            s = add(s, x);
            x = frob_[x];
        }
        trace_[a] = s;  // lies in F_p, so the packed value is the residue
    }
}

Fq FqField::inv(Fq a) const {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "base_field", "inverse of zero in F_q");
    return inv_[a];
}

Fq FqField::pow(Fq a, std::uint64_t e) const noexcept {
    Fq result = 1;
    Fq base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Fq FqField::frobenius_power(Fq a, long long k) const noexcept {
    long long r = ((k % f_) + f_) % f_;
    for (long long i = 0; i < r; ++i) a = frob_[a];
    return a;
}

Fq FqField::from_int(long long v) const noexcept {
    return static_cast<Fq>(((v % p_) + p_) % p_);
}

std::vector<int> FqField::coordinates(Fq a) const {
    std::vector<int> c(f_);
    for (int i = 0; i < f_; ++i) c[i] = coordinate(a, i);
    return c;
}

Fq FqField::from_coordinates(const std::vector<int>& coords) const {
    if (static_cast<int>(coords.size()) > f_)
        throw Error(ErrorCode::InvalidArgument, "base_field", "too many coordinates for F_q element");
    std::vector<int> c(f_, 0);
    for (std::size_t i = 0; i < coords.size(); ++i) c[i] = ((coords[i] % p_) + p_) % p_;
    return static_cast<Fq>(pack(c, p_));
}

std::string FqField::format(Fq a) const {
    if (f_ == 1) return std::to_string(a);
    std::string out;
    for (int i = f_ - 1; i >= 0; --i) {
        int c = coordinate(a, i);
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c);
            continue;
        }
        if (c != 1) out += std::to_string(c) + "*";
        out += "w";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

std::string FqField::modulus_string() const {
    std::string out;
    for (int i = f_; i >= 0; --i) {
        int c = modulus_[i];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c);
            continue;
        }
        if (c != 1) out += std::to_string(c) + "*";
        out += "w";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

Fq FqField::parse(std::string_view text) const {
    std::string_view s = trim(text);
    while (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
    if (s.empty()) throw Error(ErrorCode::ParseError, "base_field", "empty field element");

    Fq total = 0;
    std::size_t pos = 0;
    while (pos < s.size()) {
        bool negative = false;
        while (pos < s.size() && (s[pos] == '+' || s[pos] == '-' || std::isspace(static_cast<unsigned char>(s[pos])))) {
            if (s[pos] == '-') negative = !negative;
            ++pos;
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string_view term = trim(s.substr(pos, end - pos));
        pos = end;
        if (term.empty()) throw Error(ErrorCode::ParseError, "base_field", "dangling sign in '" + std::string(text) + "'");

        long long coeff = 1;
        long long power = 0;
        std::size_t w = term.find('w');
        if (w == std::string_view::npos) {
            coeff = parse_int(term, text);
        } else {
            if (f_ == 1) throw Error(ErrorCode::ParseError, "base_field", "'w' used over a prime field");
            std::string_view left = trim(term.substr(0, w));
            if (!left.empty() && left.back() == '*') left = trim(left.substr(0, left.size() - 1));
            if (!left.empty()) coeff = parse_int(left, text);
            std::string_view right = trim(term.substr(w + 1));
            power = 1;
            if (!right.empty()) {
                if (right.front() != '^') throw Error(ErrorCode::ParseError, "base_field", "bad term '" + std::string(term) + "'");
                power = parse_int(right.substr(1), text);
                if (power < 0) throw Error(ErrorCode::ParseError, "base_field", "negative power of w");
            }
        }
        Fq value = mul(from_int(coeff), pow(generator(), static_cast<std::uint64_t>(power)));
        total = negative ? sub(total, value) : add(total, value);
    }
    return total;
}

Fq solve_wp(const FqField& field, Fq c) {
    if (field.trace(c) == 0) {
        for (int x = 0; x < field.q(); ++x) {
            Fq a = static_cast<Fq>(x);
            if (field.sub(field.frobenius(a), a) == c) return a;
        }
    }
    throw Error(ErrorCode::NoSolution, "base_field", field.format(c) + " is not of the form x^p - x in F_q");
}

}  // namespace galscaf
