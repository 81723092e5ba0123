#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "galscaf/constructions.hpp"
#include "galscaf/error.hpp"
#include "galscaf/ramification.hpp"
#include "galscaf/scaffold.hpp"
#include "galscaf/spec_io.hpp"

namespace galscaf::cli {

namespace {

struct Config {
    std::string spec_path;
    long long precision = 0;
    std::uint64_t seed = 1;
    int trials = 10;
    std::string format = "table";
    std::string frame = "adapted";
    bool exhaustive = false;

    std::string kind;
    int p = 2;
    int f = 1;
    int n = 1;
    int f_sub = 2;
    std::string beta = "t^-1";
    std::string beta1 = "t^-3";
    std::string units = "1,w";
    std::vector<std::string> epsilons;
    std::string out_path;
};

// Table text or tab-separated records, one per line.
class Sink {
public:
    Sink(std::ostream& out, bool records) : out_(out), records_(records) {}

    bool records() const { return records_; }
    void record(const std::vector<std::string>& fields) {
        if (!records_) return;
        for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "\t" : "") << fields[i];
        out_ << "\n";
    }
    void text(const std::string& line) {
        if (!records_) out_ << line << "\n";
    }
    std::string series(const LaurentSeries& s) const { return records_ ? s.to_record() : s.to_string(); }

private:
    std::ostream& out_;
    bool records_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string pass_fail(bool b) { return b ? "pass" : "fail"; }

std::string vec_label(const std::vector<int>& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
}

std::string rational_label(const Rational& r) {
    return r.denominator() == 1 ? std::to_string(r.numerator())
                                : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string pad(const std::string& s, std::size_t width) { return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' '); }

TowerSpec load(const Config& c) {
    if (c.spec_path.empty()) throw Error(ErrorCode::InvalidArgument, "cli", "--spec is required");
    TowerSpec s = load_spec(c.spec_path);
    if (c.precision > 0) s.precision = c.precision;
    return s;
}

Frame frame_of(const Config& c) { return c.frame == "generators" ? Frame::Generators : Frame::Adapted; }

void spec_header(Sink& out, const TowerSpec& s) {
    out.record({"spec", std::to_string(s.p), std::to_string(s.f), std::to_string(s.n), std::to_string(s.b()),
                std::to_string(s.precision)});
    out.text("spec: p=" + std::to_string(s.p) + " f=" + std::to_string(s.f) + " n=" + std::to_string(s.n) +
             " b=" + std::to_string(s.b()) + " precision=" + std::to_string(s.precision));
}

// ---- validate --------------------------------------------------------------------------

bool cmd_validate(const Config& c, Sink& out) {
    const TowerSpec s = load(c);
    validate_spec(s);
    spec_header(out, s);
    out.record({"clauses", "ok"});
    out.text("clauses: ok");
    const BreakData d = breaks_from_spec(s);
    bool pass = true;
    out.text("error bound, v(epsilon_i) > bound:");
    out.text("  " + pad("i", 4) + pad("v(epsilon_i)", 14) + pad("bound", 10) + "pass");
    for (const auto& r : check_error_bound(s, d)) {
        const std::string v = r.epsilon_zero ? "zero" : std::to_string(r.epsilon_valuation);
        const bool row_pass = r.pass && r.scaled_bound == r.scaled_bound_from_breaks;
        pass = pass && row_pass;
        out.record({"bound", std::to_string(r.index), v, rational_label(r.bound()), yes_no(row_pass), "formula"});
        out.text("  " + pad(std::to_string(r.index), 4) + pad(v, 14) + pad(rational_label(r.bound()), 10) +
                 yes_no(row_pass));
    }
    if (!pass) require_error_bound(s, d);
    out.record({"result", pass_fail(pass)});
    out.text("result: " + pass_fail(pass));
    return pass;
}

// ---- breaks ------------------------------------------------------------------------------

bool cmd_breaks(const Config& c, Sink& out) {
    const TowerSpec s = load(c);
    const Scaffold sc = Scaffold::build(s, frame_of(c));
    const BreakData& d = sc.breaks;
    spec_header(out, s);
    bool pass = hasse_arf_holds(d);

    out.text("breaks (formula):");
    out.text("  " + pad("i", 4) + pad("lower", 8) + pad("upper", 8) + "m_i");
    for (int i = 0; i <= d.n; ++i) {
        const std::string m = i == 0 ? "-" : std::to_string(d.m[i]);
        out.record({"break", std::to_string(i), std::to_string(d.lower[i]), std::to_string(d.upper[i]), m, "formula"});
        out.text("  " + pad(std::to_string(i), 4) + pad(std::to_string(d.lower[i]), 8) +
                 pad(std::to_string(d.upper[i]), 8) + m);
    }

    const Jumps j = lower_jumps(d);
    const std::vector<Rational> upper = herbrand_lower_to_upper(j.breaks, j.orders);
    const std::vector<Rational> back = herbrand_upper_to_lower(upper, j.orders);
    out.text("herbrand (lower -> upper on the jumps):");
    for (std::size_t k = 0; k < j.breaks.size(); ++k) {
        int first = 0;
        while (d.lower[first] != j.breaks[k]) ++first;
        const bool match = upper[k] == Rational(d.upper[first]) && back[k] == Rational(j.breaks[k]);
        pass = pass && match;
        out.record({"herbrand", std::to_string(j.breaks[k]), std::to_string(j.orders[k]), rational_label(upper[k]),
                    yes_no(match), "formula"});
        out.text("  lower " + pad(std::to_string(j.breaks[k]), 6) + "|G| " + pad(std::to_string(j.orders[k]), 6) +
                 "upper " + pad(rational_label(upper[k]), 8) + "matches u_(i): " + yes_no(match));
    }
    out.record({"hasse_arf", yes_no(hasse_arf_holds(d)), "formula"});
    out.text("hasse-arf congruences: " + yes_no(hasse_arf_holds(d)));

    const Uniformizer u = uniformizer(sc);
    const long long vu = sc.oracle.valuation(u.element);
    pass = pass && vu == 1;
    out.record({"uniformizer", std::to_string(u.a), std::to_string(u.c), std::to_string(vu), "oracle"});
    out.text("uniformizer t^" + std::to_string(u.a) + " X_" + std::to_string(d.n) + "^" + std::to_string(u.c) +
             ", v_L = " + std::to_string(vu) + " (oracle)");

    const DirectBreaks db = breaks_direct(u.element, sc.oracle, c.exhaustive, c.seed);
    std::vector<long long> expected(d.lower.begin(), d.lower.end());
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    const bool direct_match = db.distinct() == expected && db.layers_homogeneous;
    pass = pass && direct_match;
    out.text(std::string("direct breaks (oracle, ") + (c.exhaustive ? "every element" : "sampled layers") + "):");
    for (const auto& [v, count] : db.multiplicity) {
        out.record({"direct_break", std::to_string(v), std::to_string(count), "oracle"});
        out.text("  i(sigma) = " + pad(std::to_string(v), 6) + "for " + std::to_string(count) + " elements");
    }
    out.record({"direct_matches_formula", yes_no(direct_match)});
    out.text("direct breaks match formula: " + yes_no(direct_match));
    out.record({"result", pass_fail(pass)});
    out.text("result: " + pass_fail(pass));
    return pass;
}

// ---- scaffold ----------------------------------------------------------------------------

void matrix_out(Sink& out, const std::string& name, const Matrix& m) {
    out.text(name + ":");
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::string row = "  [";
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            out.record({name, std::to_string(i), std::to_string(j), out.series(m[i][j]), "formula"});
            row += (j ? ", " : "") + m[i][j].to_string();
        }
        out.text(row + "]");
    }
}

bool cmd_scaffold(const Config& c, Sink& out) {
    const TowerSpec s = load(c);
    const Scaffold sc = Scaffold::build(s, frame_of(c));
    const int n = sc.n();
    const int p = sc.p();
    spec_header(out, s);
    matrix_out(out, "omega_phi", sc.omega_phi);
    matrix_out(out, "delta", sc.delta);

    bool pass = true;
    out.text("(sigma_i - 1) X_j^(j) (group action):");
    for (const auto& e : sc.assumption) {
        pass = pass && e.in_base_field && e.matches_delta;
        out.record({"assumption", std::to_string(e.i), std::to_string(e.j), out.series(e.value),
                    yes_no(e.matches_delta), "action"});
        if (e.i <= e.j)
            out.text("  i=" + std::to_string(e.i) + " j=" + std::to_string(e.j) + ": " + e.value.to_string() +
                     (e.matches_delta ? "  = Delta" : "  != Delta"));
    }

    out.text("v_L(X_j^(j)) (oracle) against -p^(n-j) b_(j) (formula):");
    for (int j = 0; j <= n; ++j) {
        const long long expected = -int_pow(p, n - j) * sc.breaks.lower[j];
        const long long got = sc.variable_valuations[j];
        pass = pass && expected == got;
        out.record({"variable_valuation", std::to_string(j), std::to_string(expected), "formula", std::to_string(got),
                    "oracle"});
        out.text("  j=" + std::to_string(j) + ": " + std::to_string(got) + " (expected " + std::to_string(expected) + ")");
    }

    for (int i = 0; i <= n; ++i) {
        out.text("Theta_(" + std::to_string(i) + "):");
        const GroupAlgebraElement& th = sc.thetas[i];
        for (std::size_t k = 0; k < th.size(); ++k) {
            if (th.coefficient(k).is_exact_zero()) continue;
            const std::string g = vec_label(GroupIndex::from_ordinal(p, n, static_cast<long long>(k)).a);
            out.record({"theta", std::to_string(i), g, out.series(th.coefficient(k)), "formula"});
            out.text("  sigma^" + pad(g, 10) + th.coefficient(k).to_string());
        }
    }
    for (int j = 0; j <= n; ++j) {
        out.record({"alpha", std::to_string(j), out.series(sc.alphas[j]), "formula"});
        out.text("alpha_" + std::to_string(j) + " = " + sc.alphas[j].to_string());
    }

    const long long vx = sc.oracle.valuation(canonical_rho(sc));
    pass = pass && vx == sc.breaks.b_m;
    out.record({"canonical_rho", std::to_string(sc.breaks.b_m), "formula", std::to_string(vx), "oracle"});
    out.text("v_L(canonical rho) = " + std::to_string(vx) + " (oracle), b_m = " + std::to_string(sc.breaks.b_m));
    out.record({"result", pass_fail(pass)});
    out.text("result: " + pass_fail(pass));
    return pass;
}

// ---- verify --------------------------------------------------------------------------------

bool cmd_verify(const Config& c, Sink& out) {
    const TowerSpec s = load(c);
    const Scaffold sc = Scaffold::build(s, frame_of(c));
    const long long N = int_pow(sc.p(), sc.n() + 1);
    spec_header(out, s);
    Rng rng(c.seed);
    bool pass = true;
    out.text("  " + pad("trial", 7) + pad("a", 10) + pad("predicted(formula)", 20) + pad("measured(oracle)", 18) + "pass");
    for (int t = 0; t < c.trials; ++t) {
        const long long v = sc.breaks.b_m + N * uniform_int(rng, -1, 1);
        const TowerElement rho = random_element_of_valuation(sc, v, rng);
        const TheoremReport rep = verify_theorem(sc, rho);
        out.record({"rho", std::to_string(t), std::to_string(rep.rho_valuation), "oracle"});
        for (const auto& row : rep.rows) {
            out.record({"theorem", std::to_string(t), vec_label(row.a), std::to_string(row.predicted), "formula",
                        std::to_string(row.measured), "oracle", pass_fail(row.pass)});
            out.text("  " + pad(std::to_string(t), 7) + pad(vec_label(row.a), 10) +
                     pad(std::to_string(row.predicted), 20) + pad(std::to_string(row.measured), 18) +
                     pass_fail(row.pass));
        }
        const bool normal = normal_basis_check(sc, rho);
        out.record({"residues", std::to_string(t), yes_no(rep.residues_complete), yes_no(rep.measured_residues_complete)});
        out.record({"normal_basis", std::to_string(t), yes_no(normal), "elimination"});
        out.text("  trial " + std::to_string(t) + ": v_L(rho) = " + std::to_string(rep.rho_valuation) +
                 ", residues complete: " + yes_no(rep.residues_complete && rep.measured_residues_complete) +
                 ", normal basis: " + yes_no(normal));
        pass = pass && rep.pass && normal;
    }
    out.record({"result", pass_fail(pass)});
    out.text("result: " + pass_fail(pass));
    return pass;
}

// ---- example -------------------------------------------------------------------------------

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) parts.push_back(item);
    return parts;
}

bool cmd_example(const Config& c, std::ostream& os) {
    TowerSpec spec;
    const long long precision = c.precision > 0 ? c.precision : LaurentSeries::kDefaultPrecision;
    if (c.kind == "cyclic") {
        const FqField& F = FqField::get(c.p, c.f);
        spec = cyclic_spec(c.p, c.f, LaurentSeries::parse(F, c.beta), precision);
        validate_spec(spec);
    } else if (c.kind == "biquadratic") {
        const FqField& F = FqField::get(2, c.f);
        spec = biquadratic_reduce(LaurentSeries::parse(F, c.beta), LaurentSeries::parse(F, c.beta1), precision).spec;
    } else if (c.kind == "unitroot") {
        const FqField& F = FqField::get(c.p, c.f);
        spec = unit_root_extension(c.p, c.f, c.f_sub, LaurentSeries::parse(F, c.beta), precision).spec;
    } else {
        const FqField& F = FqField::get(c.p, c.f);
        std::vector<Fq> units;
        for (const auto& u : split_commas(c.units)) units.push_back(F.parse(u));
        std::vector<LaurentSeries> eps;
        for (const auto& e : c.epsilons) eps.push_back(LaurentSeries::parse(F, e));
        spec = weakly_ramified_spec(c.p, c.f, c.n, units, eps, LaurentSeries::parse(F, c.beta), precision);
    }
    const std::string text = "# " + c.kind + " example\n" + emit_spec(spec);
    if (c.out_path.empty()) {
        os << text;
    } else {
        std::ofstream file(c.out_path);
        if (!file) throw Error(ErrorCode::InvalidArgument, "cli", "cannot write '" + c.out_path + "'");
        file << text;
    }
    return true;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Galois scaffolds of near one-dimensional elementary abelian extensions of F_q((t))", "galscaf"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--spec", c.spec_path, "spec file");
    app.add_option("--precision", c.precision, "override the working precision")->check(CLI::PositiveNumber);
    app.add_option("--seed", c.seed, "random seed")->capture_default_str();
    app.add_option("--trials", c.trials, "random elements per check")->capture_default_str()->check(CLI::NonNegativeNumber);
    app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"table", "records"}))->capture_default_str();
    app.add_option("--frame", c.frame, "presentation for elements and norms")
        ->check(CLI::IsMember({"adapted", "generators"}))
        ->capture_default_str();

    auto* validate = app.add_subcommand("validate", "check the tower data and the error bound");
    auto* breaks = app.add_subcommand("breaks", "break numbers by formula, Herbrand transform and the oracle");
    breaks->add_flag("--exhaustive", c.exhaustive, "measure every group element");
    auto* scaffold = app.add_subcommand("scaffold", "print [Omega^phi], [Delta], Theta_(i) and alpha_j");
    auto* verify = app.add_subcommand("verify", "check the valuation claims on random elements");
    auto* example = app.add_subcommand("example", "emit a spec for one of the standard families");
    example->add_option("kind", c.kind, "cyclic | biquadratic | unitroot | weak")
        ->required()
        ->check(CLI::IsMember({"cyclic", "biquadratic", "unitroot", "weak"}));
    example->add_option("--p", c.p, "characteristic")->capture_default_str();
    example->add_option("--f", c.f, "residue field degree")->capture_default_str();
    example->add_option("--n", c.n, "tower height (weak)")->capture_default_str();
    example->add_option("--f-sub", c.f_sub, "degree of F_q in y^q - y = beta (unitroot)")->capture_default_str();
    example->add_option("--beta", c.beta, "beta")->capture_default_str();
    example->add_option("--beta1", c.beta1, "beta_1 (biquadratic)")->capture_default_str();
    example->add_option("--units", c.units, "omega_0,...,omega_n (weak)")->capture_default_str();
    example->add_option("--epsilon", c.epsilons, "epsilon_0, ..., epsilon_n (weak)");
    example->add_option("--out", c.out_path, "write the spec file here instead of stdout");

    std::vector<const char*> argv{"galscaf"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error\tParseError\tcli\t" << e.what() << "\n";
        return 2;
    }

    Sink sink(out, c.format == "records");
    try {
        bool ok = false;
        if (*validate) ok = cmd_validate(c, sink);
        if (*breaks) ok = cmd_breaks(c, sink);
        if (*scaffold) ok = cmd_scaffold(c, sink);
        if (*verify) ok = cmd_verify(c, sink);
        if (*example) ok = cmd_example(c, out);
        return ok ? 0 : 1;
    } catch (const Error& e) {
        err << "error\t" << to_string(e.code()) << "\t" << e.module() << "\t" << e.what() << "\n";
        return 1;
    }
}

}  // namespace galscaf::cli
