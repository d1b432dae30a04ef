#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "christol/complexity.hpp"
#include "christol/curve.hpp"
#include "christol/dfao.hpp"
#include "christol/errors.hpp"
#include "christol/expr.hpp"
#include "christol/kernel.hpp"
#include "christol/rational_sweep.hpp"
#include "christol/series.hpp"

using namespace christol;

namespace {

struct JobOpts {
    std::uint64_t p = 0;
    unsigned r = 1;
    std::string modulus;       // comma-separated F_p digits, constant term first
    std::string curve_expr;
    std::string curve_file;
    std::optional<std::int64_t> a0;
    std::string branch_coeffs; // comma-separated packed coefficients
    int precision = 512;
    std::string convention = "reverse";
    std::optional<long long> genus;
    std::string primes;
    std::string format;
    std::uint64_t seed = 0;    // reserved; output is deterministic
    std::string out;
    std::string automaton_file;
};

std::vector<std::uint64_t> parse_csv_u64(const std::string& s, const std::string& what) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            unsigned long long v = std::stoull(item, &used);
            while (used < item.size() && std::isspace((unsigned char)item[used])) ++used;
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UserError("cannot parse " + what + " entry '" + item + "'");
        }
    }
    if (out.empty()) throw UserError(what + " list is empty");
    return out;
}

Fq make_field(const JobOpts& o) {
    if (o.p == 0) throw UserError("--p is required");
    if (o.r == 1 && o.modulus.empty()) return Fq::prime_field(o.p);
    std::optional<std::vector<fq_t>> mod;
    if (!o.modulus.empty()) {
        auto digits = parse_csv_u64(o.modulus, "--modulus");
        std::vector<fq_t> m(digits.begin(), digits.end());
        mod = std::move(m);
    }
    return Fq::extension(o.p, o.r, mod);
}

PlaneCurve make_curve(const Fq& F, const JobOpts& o) {
    if (o.curve_expr.empty() == o.curve_file.empty())
        throw UserError("exactly one of --curve or --curve-file is required");
    if (!o.curve_expr.empty()) return PlaneCurve(F, parse_curve_expr(F, o.curve_expr));

    std::ifstream f(o.curve_file);
    if (!f) throw UserError("cannot open curve file '" + o.curve_file + "'");
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UserError("invalid curve file: " + std::string(e.what()));
    }
    if (j.is_object() && j.contains("coeffs")) j = j["coeffs"];
    if (!j.is_array()) throw UserError("curve file must hold an array of coefficient rows");
    std::vector<Poly> byT;
    for (const auto& row : j) {
        if (!row.is_array()) throw UserError("curve file rows must be arrays of packed values");
        std::vector<fq_t> cs;
        for (const auto& v : row) {
            if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= F.q())
                throw UserError("curve file entries must be packed values in [0, q)");
            cs.push_back((fq_t)v.get<std::uint64_t>());
        }
        byT.push_back(poly_from(F, std::move(cs)));
    }
    return PlaneCurve(F, std::move(byT));
}

// Working precision never sinks below 16; expand still prints exactly the
// requested count.
int working_precision(const JobOpts& o) {
    if (o.precision < 1) throw UserError("--precision must be positive");
    return std::max(o.precision, 16);
}

TruncSeries make_branch(const Fq& F, const PlaneCurve& curve, const JobOpts& o, int N) {
    if (!o.branch_coeffs.empty() && o.a0)
        throw UserError("give either --a0 or --branch-coeffs, not both");
    if (!o.branch_coeffs.empty()) {
        auto vals = parse_csv_u64(o.branch_coeffs, "--branch-coeffs");
        std::vector<fq_t> cs;
        for (auto v : vals) {
            if (v >= F.q()) throw UserError("--branch-coeffs entries must be packed values in [0, q)");
            cs.push_back((fq_t)v);
        }
        TruncSeries s = ts_from(F, std::move(cs));
        // A truncation of a true branch satisfies f(x, s) = 0 to its own
        // precision; reject anything else rather than emit a wrong automaton.
        TruncSeries residue = ts_eval_curve(curve, s, s.precision());
        for (auto v : residue.c)
            if (v != 0)
                throw UserError("--branch-coeffs do not satisfy the curve to their own precision "
                                "(f(x, s) has a nonzero coefficient)");
        return s;
    }
    if (o.a0) {
        fq_t a0 = F.from_int(0);
        if (*o.a0 < 0 || (std::uint64_t)*o.a0 >= F.q())
            throw UserError("--a0 must be a packed value in [0, q)");
        a0 = (fq_t)*o.a0;
        return hensel_expand(curve, a0, N);
    }
    if (curve.degree() == 1) {
        // f_1 T + f_0 = 0 has the unique solution -f_0/f_1.
        RatFunc y = rf_make(curve.field(), poly_neg(F, curve.coeffs()[0]), curve.coeffs()[1]);
        return ts_of_ratfunc(F, y, N);
    }
    throw UserError("--a0 (or --branch-coeffs) is required for curves of degree >= 2 in T");
}

void emit(const std::string& text, const JobOpts& o) {
    if (o.out.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw UserError("cannot open output file '" + o.out + "'");
        f << text;
    }
}

std::string pick_format(const JobOpts& o, const std::string& def,
                        const std::vector<std::string>& allowed) {
    std::string f = o.format.empty() ? def : o.format;
    for (const auto& a : allowed)
        if (f == a) return f;
    std::string msg = "--format must be one of:";
    for (const auto& a : allowed) msg += " " + a;
    throw UserError(msg);
}

Dfao derive_automaton(const Fq& F, const PlaneCurve& curve, const TruncSeries& branch,
                      const std::string& convention) {
    Kernel k = enumerate_kernel(curve, branch);
    if (convention == "reverse") return canonical_renumber(build_reverse_dfao(k));
    if (convention == "forward") {
        Representation rep = extract_representation(curve, k);
        return canonical_renumber(build_forward_dfao(F, rep));
    }
    throw UserError("--convention must be reverse or forward");
}

int run_expand(const JobOpts& o) {
    Fq F = make_field(o);
    PlaneCurve curve = make_curve(F, o);
    TruncSeries s = make_branch(F, curve, o, working_precision(o));
    std::ostringstream os;
    for (int n = 0; n < o.precision; ++n) {
        if (n) os << ",";
        os << s.at(n);
    }
    os << "\n";
    emit(os.str(), o);
    return 0;
}

int run_kernel(const JobOpts& o) {
    Fq F = make_field(o);
    PlaneCurve curve = make_curve(F, o);
    TruncSeries branch = make_branch(F, curve, o, working_precision(o));
    Kernel k = enumerate_kernel(curve, branch);
    emit(kernel_dump(curve, k), o);
    return 0;
}

int run_automaton(const JobOpts& o) {
    Fq F = make_field(o);
    PlaneCurve curve = make_curve(F, o);
    TruncSeries branch = make_branch(F, curve, o, working_precision(o));
    Dfao d = derive_automaton(F, curve, branch, o.convention);
    std::string fmt = pick_format(o, "json", {"json", "dot"});
    emit(fmt == "json" ? serialize_json(d) : serialize_dot(d), o);
    return 0;
}

int run_complexity(const JobOpts& o) {
    Fq F = make_field(o);
    PlaneCurve curve = make_curve(F, o);
    TruncSeries branch = make_branch(F, curve, o, working_precision(o));
    Kernel k = enumerate_kernel(curve, branch);
    Representation rep = extract_representation(curve, k);
    Dfao fwd = build_forward_dfao(F, rep);
    ComplexityReport repd = bounds_report(F, curve.degree(), curve.height(), o.genus, k.size(),
                                          (std::uint64_t)fwd.n_states);
    std::string fmt = pick_format(o, "text", {"text", "json"});
    emit(fmt == "text" ? report_text(repd) : report_json(repd), o);
    return 0;
}

int run_algebraize(const JobOpts& o) {
    Fq F = make_field(o);
    PlaneCurve curve = make_curve(F, o);
    TruncSeries branch = make_branch(F, curve, o, working_precision(o));
    Kernel k = enumerate_kernel(curve, branch);
    Bivariate rel = algebraize(F, branch, (unsigned)k.size());
    std::string fmt = pick_format(o, "text", {"text", "json"});
    if (fmt == "text") {
        emit(bivariate_to_string(F, rel) + "\n", o);
    } else {
        nlohmann::ordered_json j;
        j["deg_T"] = rel.deg_T();
        j["deg_x"] = bivariate_deg_x(rel);
        j["byT"] = nlohmann::ordered_json::array();
        for (const auto& p : rel.byT) j["byT"].push_back(p.c);
        emit(j.dump(2) + "\n", o);
    }
    return 0;
}

int run_sweep(const JobOpts& o) {
    if (o.curve_expr.empty())
        throw UserError("sweep needs --curve with a rational function of x, e.g. \"1/(1-2*x)\"");
    if (o.primes.empty()) throw UserError("--primes is required (list \"3,5,7\" or range \"3..50\")");
    RationalSeriesQ y = parse_rational_expr(o.curve_expr);

    std::vector<std::uint64_t> primes;
    auto dots = o.primes.find("..");
    if (dots != std::string::npos) {
        auto lo = parse_csv_u64(o.primes.substr(0, dots), "--primes")[0];
        auto hi = parse_csv_u64(o.primes.substr(dots + 2), "--primes")[0];
        if (lo > hi) throw UserError("--primes range is empty");
        for (std::uint64_t n = lo; n <= hi; ++n)
            if (Fq::is_prime(n)) primes.push_back(n);
        if (primes.empty()) throw UserError("--primes range contains no primes");
    } else {
        primes = parse_csv_u64(o.primes, "--primes");
    }

    SweepResult res = prime_sweep(y, primes);
    std::string fmt = pick_format(o, "text", {"text", "json"});
    emit(fmt == "text" ? sweep_text(res) : sweep_json(res), o);
    return 0;
}

int run_verify(const JobOpts& o) {
    if (o.automaton_file.empty()) throw UserError("--automaton is required");
    std::ifstream f(o.automaton_file, std::ios::binary);
    if (!f) throw UserError("cannot open automaton file '" + o.automaton_file + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    Dfao stored = parse_dfao_json(buf.str());

    Fq F = make_field(o);
    PlaneCurve curve = make_curve(F, o);
    TruncSeries branch = make_branch(F, curve, o, working_precision(o));
    std::string convention = (stored.conv == Convention::reverse) ? "reverse" : "forward";
    Dfao derived = derive_automaton(F, curve, branch, convention);

    std::string a = serialize_json(canonical_renumber(stored));
    std::string b = serialize_json(canonical_renumber(derived));
    if (a == b) {
        emit("verified: the stored automaton matches the derivation (" + convention + ", " +
                 std::to_string(derived.n_states) + " states)\n",
             o);
        return 0;
    }
    std::cerr << "verification failed: stored automaton disagrees with the derivation\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact automata from algebraic power series over finite fields"};
    app.require_subcommand(1);

    JobOpts o;
    // Shared flags are registered on every subcommand so they can appear
    // after the subcommand name, which is how people type them.
    auto add_common = [&](CLI::App* sub, bool needs_field) {
        if (needs_field) {
            sub->add_option("--p", o.p, "field characteristic (prime)");
            sub->add_option("--r", o.r, "extension degree, q = p^r (default 1)");
            sub->add_option("--modulus", o.modulus,
                            "extension modulus digits over F_p, constant term first, e.g. 1,1,1");
        }
        sub->add_option("--curve", o.curve_expr, "curve expression in x and T, e.g. \"(1-2*x)*T-1\"");
        sub->add_option("--curve-file", o.curve_file, "JSON coefficient table by ascending T-degree");
        sub->add_option("--a0", o.a0, "branch seed: packed root of f(0, T)");
        sub->add_option("--branch-coeffs", o.branch_coeffs,
                        "explicit branch coefficients (packed, comma-separated)");
        sub->add_option("--precision", o.precision, "working series precision (default 512)");
        sub->add_option("--format", o.format, "output format");
        sub->add_option("--seed", o.seed, "reserved; all CLI output is deterministic");
        sub->add_option("--out", o.out, "write the artifact to this path instead of stdout");
    };

    auto* expand = app.add_subcommand("expand", "print the first N branch coefficients");
    add_common(expand, true);

    auto* kernel = app.add_subcommand("kernel", "dump the kernel table");
    add_common(kernel, true);

    auto* automaton = app.add_subcommand("automaton", "emit the minimal DFAO (dot or json)");
    add_common(automaton, true);
    automaton->add_option("--convention", o.convention, "reverse (default) or forward");

    auto* complexity = app.add_subcommand("complexity", "state counts against the size bounds");
    add_common(complexity, true);
    complexity->add_option("--genus", o.genus, "curve genus, if known");

    auto* algebraize = app.add_subcommand("algebraize", "recover an annihilating polynomial");
    add_common(algebraize, true);

    auto* sweep = app.add_subcommand("sweep", "reduce a rational series modulo many primes");
    add_common(sweep, false);
    sweep->add_option("--primes", o.primes, "comma list \"3,5,7\" or inclusive range \"3..50\"");

    auto* verify = app.add_subcommand("verify", "re-derive and compare a stored automaton");
    add_common(verify, true);
    verify->add_option("--automaton", o.automaton_file, "automaton JSON file to check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (expand->parsed()) return run_expand(o);
        if (kernel->parsed()) return run_kernel(o);
        if (automaton->parsed()) return run_automaton(o);
        if (complexity->parsed()) return run_complexity(o);
        if (algebraize->parsed()) return run_algebraize(o);
        if (sweep->parsed()) return run_sweep(o);
        if (verify->parsed()) return run_verify(o);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ComputeRefusal& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
