#include "appell/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "appell/errors.hpp"
#include "appell/kernel.hpp"
#include "appell/modular.hpp"
#include "appell/qexact.hpp"
#include "appell/suites.hpp"

namespace appell::cli {

namespace {

using cplx = std::complex<double>;
using nlohmann::ordered_json;

double parse_real(std::string_view text)
{
    if (text.empty() || text == "+") {
        return 1.0;
    }
    if (text == "-") {
        return -1.0;
    }
    const char* first = text.data();
    if (*first == '+') {
        ++first;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return v;
}

cplx option_complex(const std::string& name, const std::string& text)
{
    try {
        return parse_complex(text);
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError(name, "expected a complex number like 0.5+1.5i, got '" + text + "'");
    }
}

std::string format_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

ordered_json complex_json(cplx z)
{
    return ordered_json{{"re", z.real()}, {"im", z.imag()}, {"text", format_complex(z)}};
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

// Opens --out FILE when given; otherwise forwards to the default stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw std::runtime_error("cannot open output file '" + path + "'");
            }
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

// ---- verify -------------------------------------------------------------------

ordered_json record_json(const suites::CheckRecord& r)
{
    ordered_json j{{"id", r.id}, {"suite", suites::to_string(r.suite)}, {"samples", r.samples}};
    if (r.max_rel_residual) {
        j["max_rel_residual"] = *r.max_rel_residual;
        j["tolerance"] = r.tolerance;
    } else {
        j["exact"] = r.pass ? "PASS" : "FAIL";
    }
    j["pass"] = r.pass;
    if (r.failing_exponent) {
        j["failing_exponent"] = *r.failing_exponent;
    }
    if (!r.detail.empty()) {
        j["detail"] = r.detail;
    }
    return j;
}

void write_verify_csv(std::ostream& os, const std::vector<suites::CheckRecord>& records)
{
    os << "id,suite,samples,max_rel_residual,tolerance,pass,failing_exponent,detail\n";
    for (const auto& r : records) {
        os << r.id << ',' << suites::to_string(r.suite) << ',' << r.samples << ',';
        if (r.max_rel_residual) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6e,%.1e", *r.max_rel_residual, r.tolerance);
            os << buf;
        } else {
            os << (r.pass ? "PASS" : "FAIL") << ',';
        }
        os << ',' << (r.pass ? "true" : "false") << ',';
        if (r.failing_exponent) {
            os << *r.failing_exponent;
        }
        os << ',' << csv_escape(r.detail) << '\n';
    }
}

struct VerifyArgs {
    std::string suite;
    std::optional<std::uint64_t> seed;
    int samples = 100;
    std::size_t order = 80;
    std::string format = "json";
    std::string out;
    bool timing = false;
};

std::uint64_t default_seed()
{
    if (const char* env = std::getenv("APPELL_KIT_SEED")) {
        std::uint64_t v = 0;
        const std::string_view s{env};
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc{} && ptr == s.data() + s.size()) {
            return v;
        }
        throw CLI::ValidationError("APPELL_KIT_SEED", "expected a non-negative integer, got '" + std::string(s) + "'");
    }
    return 0;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err)
{
    suites::Options opt;
    opt.seed = a.seed ? *a.seed : default_seed();
    opt.samples = a.samples;
    opt.exact_order = a.order;

    const auto start = std::chrono::steady_clock::now();
    std::vector<suites::CheckRecord> records;
    try {
        records = suites::run_named(a.suite, opt);
    } catch (const std::invalid_argument& e) {
        err << "verify: " << e.what() << "\n"
            << "expected all, numeric, exact, bundles, modular, an identity id or a check id\n";
        return exit_usage;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = suites::all_pass(records);

    Sink sink(a.out, out);
    if (a.format == "csv") {
        write_verify_csv(sink.stream(), records);
    } else {
        ordered_json j{{"command", "verify"},
                       {"parameters",
                        {{"suite", a.suite}, {"samples", opt.samples}, {"exact_order", opt.exact_order}}},
                       {"seed", opt.seed},
                       {"pass", pass},
                       {"records", ordered_json::array()}};
        for (const auto& r : records) {
            j["records"].push_back(record_json(r));
        }
        if (a.timing) {
            j["wall_time_s"] = wall;
        }
        sink.stream() << j.dump(2) << '\n';
    }
    if (a.timing && a.format == "csv") {
        err << "wall time " << format_double(wall) << " s\n";
    }
    return pass ? exit_pass : exit_fail;
}

// ---- eval ---------------------------------------------------------------------

struct EvalArgs {
    std::string function;
    std::string z = "1";
    std::string a;
    std::string u;
    std::string v;
    std::string format = "json";
};

int cmd_eval(const EvalArgs& e, std::ostream& out, std::ostream& err)
{
    const cplx z = option_complex("--z", e.z);
    const bool quarter = e.function == "vartheta0" || e.function == "vartheta1";
    if (quarter && e.v.empty()) {
        err << "eval: " << e.function << " takes the quarter nome, pass --v (q = v^4)\n";
        return exit_usage;
    }
    if (!quarter && e.u.empty()) {
        err << "eval: " << e.function << " takes the half nome, pass --u (q = u^2)\n";
        return exit_usage;
    }
    const bool needs_a = e.function == "kappa" || e.function == "kappa_bar";
    if (needs_a && e.a.empty()) {
        err << "eval: " << e.function << " needs --a\n";
        return exit_usage;
    }

    cplx value;
    ordered_json j{{"function", e.function}, {"z", format_complex(z)}};
    try {
        if (quarter) {
            const num::QuarterNome v{option_complex("--v", e.v)};
            j["v"] = format_complex(v.v());
            value = e.function == "vartheta0" ? num::vartheta0(z, v) : num::vartheta1(z, v);
        } else {
            const num::Nome u{option_complex("--u", e.u)};
            j["u"] = format_complex(u.u());
            if (needs_a) {
                const cplx a = option_complex("--a", e.a);
                j["a"] = format_complex(a);
                value = e.function == "kappa" ? num::kappa(a, z, u) : num::kappa_bar(a, z, u);
            } else {
                value = num::theta(z, u);
            }
        }
    } catch (const DomainError& ex) {
        err << "eval: domain error: " << ex.what() << '\n';
        return exit_usage;
    } catch (const ConvergenceError& ex) {
        err << "eval: " << ex.what() << '\n';
        return exit_fail;
    }

    if (e.format == "text") {
        out << format_complex(value) << '\n';
    } else {
        j["value"] = complex_json(value);
        out << j.dump(2) << '\n';
    }
    return exit_pass;
}

// ---- qseries ------------------------------------------------------------------

struct QseriesArgs {
    std::string series;
    std::size_t order = 40;
    std::string format = "json";
    std::string out;
};

// u-exponent k is the q-exponent k/2.
std::string q_exponent(std::size_t k)
{
    return k % 2 == 0 ? std::to_string(k / 2) : std::to_string(k) + "/2";
}

qexact::USeries build_series(const std::string& name, std::size_t trunc)
{
    if (name == "t3") {
        const auto t = qexact::triangular_gf(trunc);
        return t * t * t;
    }
    if (name == "double_sum") {
        return qexact::double_sum_series(trunc);
    }
    if (name == "andrews") {
        return qexact::andrews_series(trunc);
    }
    const auto sv = qexact::SpecialValues::compute(trunc);
    const auto sides = name.starts_with("for1") ? qexact::for1_sides(sv) : qexact::for2_sides(sv);
    return name.ends_with("lhs") ? sides.lhs : sides.rhs;
}

int cmd_qseries(const QseriesArgs& a, std::ostream& out)
{
    // q^0 .. q^{order-1}: u^0 .. u^{2 order - 2}.
    const std::size_t trunc = 2 * a.order - 1;
    const auto s = build_series(a.series, trunc);
    // The triangular series are q-series; the identity sides carry
    // half-integral q-powers and list every half step.
    const bool half_steps = a.series.starts_with("for");
    const std::size_t step = half_steps ? 1 : 2;

    Sink sink(a.out, out);
    std::ostream& os = sink.stream();
    if (a.format == "csv") {
        os << "q_exponent,numerator,denominator\n";
        for (std::size_t k = 0; k < trunc; k += step) {
            os << q_exponent(k) << ',' << numerator(s[k]) << ',' << denominator(s[k]) << '\n';
        }
        return exit_pass;
    }
    ordered_json j{{"command", "qseries"}, {"series", a.series}, {"order", a.order}, {"rows", ordered_json::array()}};
    for (std::size_t k = 0; k < trunc; k += step) {
        j["rows"].push_back({{"q_exponent", q_exponent(k)},
                             {"numerator", numerator(s[k]).str()},
                             {"denominator", denominator(s[k]).str()}});
    }
    os << j.dump(2) << '\n';
    return exit_pass;
}

// ---- modular ------------------------------------------------------------------

struct ModularArgs {
    std::vector<long long> entries;
    std::string tau = "1.5i";
    int grid = 1;
    std::string format = "json";
    std::string out;
};

int cmd_modular(const ModularArgs& m, std::ostream& out, std::ostream& err)
{
    const cplx tau = option_complex("--tau", m.tau);
    const auto& e = m.entries;
    if (!modular::in_gamma12(e[0], e[1], e[2], e[3])) {
        err << "modular: [[" << e[0] << ", " << e[1] << "], [" << e[2] << ", " << e[3]
            << "]] is not in Gamma_{1,2} (need ad - bc = 1 and ac = bd = 0 mod 2)\n";
        return exit_usage;
    }
    const modular::GammaElement g{e[0], e[1], e[2], e[3]};
    if (tau.imag() < modular::min_im_tau) {
        err << "modular: Im tau = " << format_double(tau.imag()) << " is below " << modular::min_im_tau
            << "; choose tau higher in the upper half plane\n";
        return exit_usage;
    }
    const cplx gt = modular::mobius(g, tau);
    if (gt.imag() < modular::min_im_tau) {
        err << "modular: Im(gamma tau) = " << format_double(gt.imag()) << " is below " << modular::min_im_tau
            << " for tau = " << format_complex(tau)
            << "; choose a tau with larger imaginary part or closer to -d/c\n";
        return exit_usage;
    }

    const auto zeros = modular::zero_grid(m.grid);
    std::vector<modular::DivisibilityRecord> records;
    try {
        records = modular::divisibility_records(g, tau, zeros);
    } catch (const DomainError& ex) {
        err << "modular: " << ex.what() << '\n';
        return exit_usage;
    }
    double worst = 0.0;
    for (const auto& r : records) {
        worst = std::max(worst, r.residual);
    }
    const bool pass = worst < suites::modular_tolerance;

    Sink sink(m.out, out);
    std::ostream& os = sink.stream();
    if (m.format == "csv") {
        os << "m,n,x,defect,residual\n";
        for (const auto& r : records) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6e", r.residual);
            os << r.zero.m << ',' << r.zero.n << ',' << format_complex(r.x) << ',' << format_complex(r.defect) << ','
               << buf << '\n';
        }
    } else {
        ordered_json j{{"command", "modular"},
                       {"gamma", {{e[0], e[1]}, {e[2], e[3]}}},
                       {"tau", format_complex(tau)},
                       {"gamma_tau", format_complex(gt)},
                       {"zeta_sq", complex_json(modular::zeta_sq(g))},
                       {"chi", complex_json(modular::chi(g))},
                       {"k_gamma", complex_json(modular::k_gamma(g, tau))},
                       {"grid", m.grid},
                       {"zeros", ordered_json::array()}};
        for (const auto& r : records) {
            j["zeros"].push_back({{"m", r.zero.m},
                                  {"n", r.zero.n},
                                  {"x", format_complex(r.x)},
                                  {"defect", format_complex(r.defect)},
                                  {"residual", r.residual}});
        }
        j["max_residual"] = worst;
        j["tolerance"] = suites::modular_tolerance;
        j["pass"] = pass;
        os << j.dump(2) << '\n';
    }
    return pass ? exit_pass : exit_fail;
}

} // namespace

cplx parse_complex(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (c != ' ') {
            s += c;
        }
    }
    if (s.empty()) {
        throw std::invalid_argument("empty complex number");
    }
    if (s.back() != 'i' && s.back() != 'j') {
        return {parse_real(s), 0.0};
    }
    s.pop_back();
    // Split at the last sign that is not the leading one or part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        return {0.0, parse_real(s)};
    }
    const std::string_view sv{s};
    if (split == 0) {
        throw std::invalid_argument("malformed complex number");
    }
    return {parse_real(sv.substr(0, split)), parse_real(sv.substr(split))};
}

std::string format_complex(cplx z)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.15g%+.15gi", z.real(), z.imag());
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Verification toolkit for theta functions, the Appell function kappa and related identities",
                 "appell_kit"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run a verification suite and print a report");
    verify->add_option("suite", va.suite, "all | numeric | exact | bundles | modular | <identity id> | <check id>")
        ->required();
    verify->add_option("--seed", va.seed, "Sampling seed (default: APPELL_KIT_SEED or 0)");
    verify->add_option("--samples", va.samples, "Sample points per numeric check")
        ->check(CLI::Range(1, 100000));
    verify->add_option("--order", va.order, "Truncation of the exact checks in powers of u")
        ->check(CLI::Range(2, 4000));
    verify->add_option("--format", va.format)->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--out", va.out, "Write the report to FILE");
    verify->add_flag("--timing", va.timing, "Include wall time (reports are no longer byte-identical)");

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "Evaluate one function at a point");
    eval->add_option("function", ea.function)
        ->required()
        ->check(CLI::IsMember({"theta", "kappa", "kappa_bar", "vartheta0", "vartheta1"}));
    eval->add_option("--z", ea.z, "Argument z (default 1)");
    eval->add_option("--a", ea.a, "First argument of kappa");
    eval->add_option("--u", ea.u, "Half nome u = q^{1/2}");
    eval->add_option("--v", ea.v, "Quarter nome v = q^{1/4} (vartheta0, vartheta1)");
    eval->add_option("--format", ea.format)->check(CLI::IsMember({"json", "text"}));

    QseriesArgs qa;
    auto* qseries = app.add_subcommand("qseries", "Print exact coefficients of a q-series");
    qseries->add_option("series", qa.series)
        ->required()
        ->check(CLI::IsMember({"t3", "double_sum", "andrews", "for1_lhs", "for1_rhs", "for2_lhs", "for2_rhs"}));
    qseries->add_option("--order", qa.order, "Number of integral q-powers (q^0 .. q^{order-1})")
        ->check(CLI::Range(1, 2000));
    qseries->add_option("--format", qa.format)->check(CLI::IsMember({"json", "csv"}));
    qseries->add_option("--out", qa.out, "Write the table to FILE");

    ModularArgs ma;
    auto* mod = app.add_subcommand("modular", "Characters and divisibility report for a Gamma_{1,2} element");
    mod->add_option("entries", ma.entries, "a b c d")->required()->expected(4);
    mod->add_option("--tau", ma.tau, "Point of the upper half plane (default 1.5i)");
    mod->add_option("--grid", ma.grid, "Zeros (tau+1)/2 + m + n tau with |m|, |n| <= grid")
        ->check(CLI::Range(0, 5));
    mod->add_option("--format", ma.format)->check(CLI::IsMember({"json", "csv"}));
    mod->add_option("--out", ma.out, "Write the report to FILE");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << "appell_kit: " << e.what() << '\n';
        if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
            err << sub->help();
        } else {
            err << app.help();
        }
        return exit_usage;
    }

    try {
        if (verify->parsed()) {
            return cmd_verify(va, out, err);
        }
        if (eval->parsed()) {
            return cmd_eval(ea, out, err);
        }
        if (qseries->parsed()) {
            return cmd_qseries(qa, out);
        }
        return cmd_modular(ma, out, err);
    } catch (const CLI::ValidationError& e) {
        err << "appell_kit: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "appell_kit: " << e.what() << '\n';
        return exit_fail;
    }
}

} // namespace appell::cli
