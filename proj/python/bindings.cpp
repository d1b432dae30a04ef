#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>
#include <string>

#include "christol/complexity.hpp"
#include "christol/dfao.hpp"
#include "christol/errors.hpp"
#include "christol/expr.hpp"
#include "christol/kernel.hpp"
#include "christol/rational_sweep.hpp"
#include "christol/series.hpp"

namespace py = pybind11;
using namespace christol;

namespace {

Fq make_field(std::uint64_t p, unsigned r) {
    return r == 1 ? Fq::prime_field(p) : Fq::extension(p, r);
}

struct Pipeline {
    Fq F;
    PlaneCurve curve;
    TruncSeries branch;
};

Pipeline build(std::uint64_t p, unsigned r, const std::string& curve_expr,
               std::optional<std::int64_t> a0, int precision) {
    Fq F = make_field(p, r);
    PlaneCurve curve(F, parse_curve_expr(F, curve_expr));
    int prec = std::max(precision, 16);
    TruncSeries branch;
    if (a0) {
        if (*a0 < 0 || (std::uint64_t)*a0 >= F.q())
            throw UserError("a0 must be a packed field element in [0, q)");
        branch = hensel_expand(curve, (fq_t)*a0, prec);
    } else if (curve.degree() == 1) {
        branch = ts_of_ratfunc(
            F, rf_make(F, poly_neg(F, curve.coeffs()[0]), curve.coeffs()[1]), prec);
    } else {
        throw UserError("a0 is required for curves of degree >= 2 in T");
    }
    return {std::move(F), std::move(curve), std::move(branch)};
}

Dfao automaton_of(const Pipeline& pl, const std::string& convention) {
    Kernel k = enumerate_kernel(pl.curve, pl.branch);
    if (convention == "reverse") return canonical_renumber(build_reverse_dfao(k));
    if (convention == "forward")
        return canonical_renumber(build_forward_dfao(pl.F, extract_representation(pl.curve, k)));
    throw UserError("convention must be 'reverse' or 'forward'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Algebraic power series over F_q and their digit automata";

    py::register_exception<UserError>(m, "UserError");
    py::register_exception<ComputeRefusal>(m, "ComputeRefusal");

    m.def(
        "expand",
        [](std::uint64_t p, const std::string& curve, std::optional<std::int64_t> a0,
           int precision, unsigned r) {
            Pipeline pl = build(p, r, curve, a0, precision);
            std::vector<std::uint64_t> out;
            for (int n = 0; n < precision; ++n) out.push_back(pl.branch.at(n));
            return out;
        },
        py::arg("p"), py::arg("curve"), py::arg("a0") = std::nullopt,
        py::arg("precision") = 32, py::arg("r") = 1,
        "First `precision` coefficients of the branch series");

    m.def(
        "kernel_size",
        [](std::uint64_t p, const std::string& curve, std::optional<std::int64_t> a0,
           int precision, unsigned r) {
            Pipeline pl = build(p, r, curve, a0, precision);
            return enumerate_kernel(pl.curve, pl.branch).size();
        },
        py::arg("p"), py::arg("curve"), py::arg("a0") = std::nullopt,
        py::arg("precision") = 64, py::arg("r") = 1,
        "Number of states of the minimal reverse-reading automaton (q-kernel size)");

    m.def(
        "automaton_json",
        [](std::uint64_t p, const std::string& curve, std::optional<std::int64_t> a0,
           const std::string& convention, int precision, unsigned r) {
            return serialize_json(automaton_of(build(p, r, curve, a0, precision), convention));
        },
        py::arg("p"), py::arg("curve"), py::arg("a0") = std::nullopt,
        py::arg("convention") = "reverse", py::arg("precision") = 64, py::arg("r") = 1,
        "Canonical JSON of the reverse- or forward-reading automaton");

    m.def(
        "eval_automaton_json",
        [](const std::string& text, std::uint64_t n) {
            return dfao_eval(parse_dfao_json(text), n);
        },
        py::arg("automaton"), py::arg("n"), "Evaluate a serialized automaton at n");

    m.def(
        "complexity_json",
        [](std::uint64_t p, const std::string& curve, std::optional<std::int64_t> a0,
           std::optional<long long> genus, int precision, unsigned r) {
            Pipeline pl = build(p, r, curve, a0, precision);
            Kernel k = enumerate_kernel(pl.curve, pl.branch);
            Dfao fwd = build_forward_dfao(pl.F, extract_representation(pl.curve, k));
            return report_json(bounds_report(pl.F, pl.curve.degree(), pl.curve.height(), genus,
                                             k.size(), (std::uint64_t)fwd.n_states));
        },
        py::arg("p"), py::arg("curve"), py::arg("a0") = std::nullopt,
        py::arg("genus") = std::nullopt, py::arg("precision") = 64, py::arg("r") = 1,
        "State counts against the five complexity bounds, as JSON");

    m.def(
        "algebraize_text",
        [](std::uint64_t p, const std::string& curve, std::optional<std::int64_t> a0,
           int precision, unsigned r) {
            Pipeline pl = build(p, r, curve, a0, precision);
            Kernel k = enumerate_kernel(pl.curve, pl.branch);
            Bivariate rel = algebraize(pl.F, pl.branch, (unsigned)k.size());
            return bivariate_to_string(pl.F, rel);
        },
        py::arg("p"), py::arg("curve"), py::arg("a0") = std::nullopt,
        py::arg("precision") = 512, py::arg("r") = 1,
        "Recover an annihilating bivariate polynomial of the branch series");

    m.def(
        "sweep_json",
        [](const std::string& expr, const std::vector<std::uint64_t>& primes) {
            return sweep_json(prime_sweep(parse_rational_expr(expr), primes));
        },
        py::arg("expr"), py::arg("primes"),
        "Reduce a rational series over Q modulo each prime and report N_p");
}
