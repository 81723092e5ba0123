#include "galscaf/spec_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "galscaf/error.hpp"

namespace galscaf {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw Error(ErrorCode::ParseError, "cli", "line " + std::to_string(line) + ": " + what);
}

long long parse_int(std::string_view text, int line) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) fail(line, "expected an integer, got '" + std::string(text) + "'");
    return v;
}

struct Entry {
    std::string value;
    int line = 0;
};

}  // namespace

std::string emit_spec(const TowerSpec& spec) {
    std::ostringstream out;
    out << "p = " << spec.p << "\n";
    out << "f = " << spec.f << "\n";
    out << "n = " << spec.n << "\n";
    out << "precision = " << spec.precision << "\n";
    out << "beta = " << spec.beta.to_string() << "\n";
    for (std::size_t i = 0; i < spec.omegas.size(); ++i) out << "omega[" << i << "] = " << spec.omegas[i].to_string() << "\n";
    for (std::size_t i = 0; i < spec.epsilons.size(); ++i)
        out << "epsilon[" << i << "] = " << spec.epsilons[i].to_string() << "\n";
    return out.str();
}

TowerSpec parse_spec(std::string_view text) {
    std::map<std::string, Entry> scalars;
    std::map<long long, Entry> omegas;
    std::map<long long, Entry> epsilons;
    int line_no = 0;
    while (!text.empty()) {
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++line_no;
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (value.empty()) fail(line_no, "empty value for '" + key + "'");

        auto indexed = [&](const std::string& name, std::map<long long, Entry>& into) {
            if (key.rfind(name + "[", 0) != 0 || key.back() != ']') return false;
            const long long i = parse_int(std::string_view(key).substr(name.size() + 1, key.size() - name.size() - 2), line_no);
            if (i < 0) fail(line_no, "negative index");
            if (!into.emplace(i, Entry{value, line_no}).second) fail(line_no, "duplicate key '" + key + "'");
            return true;
        };
        if (indexed("omega", omegas) || indexed("epsilon", epsilons)) continue;
        if (key != "p" && key != "f" && key != "n" && key != "precision" && key != "beta")
            fail(line_no, "unknown key '" + key + "'");
        if (!scalars.emplace(key, Entry{value, line_no}).second) fail(line_no, "duplicate key '" + key + "'");
    }

    auto require = [&](const std::string& key) -> const Entry& {
        auto it = scalars.find(key);
        if (it == scalars.end()) fail(line_no, "missing key '" + key + "'");
        return it->second;
    };
    TowerSpec s;
    s.p = static_cast<int>(parse_int(require("p").value, require("p").line));
    if (auto it = scalars.find("f"); it != scalars.end()) s.f = static_cast<int>(parse_int(it->second.value, it->second.line));
    s.n = static_cast<int>(parse_int(require("n").value, require("n").line));
    if (auto it = scalars.find("precision"); it != scalars.end()) s.precision = parse_int(it->second.value, it->second.line);
    if (!is_prime(s.p) || s.f < 1 || s.n < 0 || s.precision < 1) fail(require("p").line, "need p prime, f >= 1, n >= 0, precision >= 1");

    const FqField* field = nullptr;
    try {
        field = &s.field();
    } catch (const Error& e) {
        fail(require("p").line, e.what());
    }
    auto series = [&](const Entry& e) {
        try {
            return LaurentSeries::parse(*field, e.value);
        } catch (const Error& err) {
            fail(e.line, err.what());
        }
    };
    s.beta = series(require("beta"));
    for (int i = 0; i <= s.n; ++i) {
        auto it = omegas.find(i);
        if (it == omegas.end()) fail(line_no, "missing omega[" + std::to_string(i) + "]");
        s.omegas.push_back(series(it->second));
        auto jt = epsilons.find(i);
        s.epsilons.push_back(jt == epsilons.end() ? LaurentSeries::zero(*field) : series(jt->second));
    }
    for (const auto& [i, e] : omegas)
        if (i > s.n) fail(e.line, "omega index beyond n");
    for (const auto& [i, e] : epsilons)
        if (i > s.n) fail(e.line, "epsilon index beyond n");
    return s;
}

TowerSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cli", "cannot read spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

}  // namespace galscaf
