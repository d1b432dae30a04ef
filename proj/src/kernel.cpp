#include "christol/kernel.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace christol {

Kernel enumerate_orbit(const PlaneCurve& curve, const TruncSeries& branch,
                       const FFElem& start, unsigned levels,
                       std::uint64_t max_states) {
    const Fq& F = curve.field();
    std::uint64_t digits = 1;
    for (unsigned i = 0; i < levels; ++i) digits *= F.p();

    Kernel k;
    k.alphabet = digits;
    std::unordered_map<std::string, int> index;
    index.emplace(curve.canonical_key(start), 0);
    k.elements.push_back(start);
    k.outputs.push_back(ff_const_term(curve, branch, start));

    for (size_t at = 0; at < k.elements.size(); ++at) {
        // Copy: lambda_all may reallocate k.elements under us otherwise.
        FFElem cur = k.elements[at];
        std::vector<FFElem> images = curve.lambda_all(cur, levels);
        std::vector<int> row(digits);
        for (std::uint64_t c = 0; c < digits; ++c) {
            std::string key = curve.canonical_key(images[c]);
            auto it = index.find(key);
            if (it == index.end()) {
                if (k.elements.size() >= max_states)
                    throw ComputeRefusal("kernel enumeration exceeded the state budget of " +
                                         std::to_string(max_states));
                int id = (int)k.elements.size();
                index.emplace(std::move(key), id);
                k.elements.push_back(images[c]);
                k.outputs.push_back(ff_const_term(curve, branch, images[c]));
                row[c] = id;
            } else {
                row[c] = it->second;
            }
        }
        k.delta.push_back(std::move(row));
    }
    return k;
}

Kernel enumerate_kernel(const PlaneCurve& curve, const TruncSeries& branch,
                        std::uint64_t max_states) {
    return enumerate_orbit(curve, branch, curve.gen(), curve.field().r(), max_states);
}

namespace {

// Agreement on the overlap of the known prefixes.
bool prefix_match(const TruncSeries& a, const TruncSeries& b) {
    size_t n = std::min(a.c.size(), b.c.size());
    for (size_t i = 0; i < n; ++i)
        if (a.c[i] != b.c[i]) return false;
    return true;
}

} // namespace

TruncKernel kernel_truncated(const Fq& F, const TruncSeries& s, std::uint64_t q,
                             std::uint64_t max_states, int min_keep) {
    if (q < 2) throw UserError("decimation base must be at least 2");
    if (min_keep < 1) min_keep = 1;
    if (s.precision() < min_keep)
        throw PrecisionExhaustion(
            "truncated kernel: starting series has fewer than " + std::to_string(min_keep) +
                " known coefficients",
            (std::uint64_t)min_keep * q);

    TruncKernel k;
    k.alphabet = q;
    k.states.push_back(s);
    k.outputs.push_back(s.c[0]);

    for (size_t at = 0; at < k.states.size(); ++at) {
        std::vector<int> row(q);
        for (std::uint64_t c = 0; c < q; ++c) {
            TruncSeries child;
            bool have_child = (std::uint64_t)k.states[at].precision() > c;
            if (have_child) child = ts_decimate(q, c, k.states[at]);
            // Identify against stored states on overlapping prefixes.
            int found = -1;
            bool ambiguous = false;
            if (have_child) {
                for (size_t j = 0; j < k.states.size(); ++j) {
                    if (!prefix_match(child, k.states[j])) continue;
                    if (found >= 0) { ambiguous = true; break; }
                    found = (int)j;
                }
            }
            if (ambiguous) {
                std::uint64_t required = (std::uint64_t)s.precision() * 2;
                throw PrecisionExhaustion(
                    "truncated kernel: two stored states are indistinguishable on a candidate's "
                    "known prefix; retry with precision >= " +
                        std::to_string(required),
                    required);
            }
            if (!have_child || (found < 0 && child.precision() < min_keep)) {
                // Cannot store safely: report a precision that would keep
                // min_keep coefficients at this depth.
                std::uint64_t have = have_child ? (std::uint64_t)child.precision() : 0;
                std::uint64_t factor = ((std::uint64_t)min_keep + std::max<std::uint64_t>(have, 1) - 1) /
                                       std::max<std::uint64_t>(have, 1);
                std::uint64_t required = (std::uint64_t)s.precision() * (factor + 1);
                throw PrecisionExhaustion(
                    "truncated kernel: a state at this depth retains " + std::to_string(have) +
                        " coefficients (< " + std::to_string(min_keep) +
                        "); retry with precision >= " + std::to_string(required),
                    required);
            }
            if (found >= 0) {
                row[c] = found;
            } else {
                if (k.states.size() >= max_states)
                    throw ComputeRefusal("truncated kernel exceeded the state budget of " +
                                         std::to_string(max_states));
                int id = (int)k.states.size();
                k.states.push_back(child);
                k.outputs.push_back(child.c[0]);
                row[c] = id;
            }
        }
        k.delta.push_back(std::move(row));
    }
    return k;
}

namespace {

// Incremental F_q Gaussian elimination that selects a basis among the state
// vectors (in order) and expresses every state over that basis.
struct SpanBasis {
    const Fq& F;
    std::vector<size_t> basis_states;
    // Echelon rows: reduced vector + its expression over basis_states.
    std::vector<std::vector<fq_t>> rows;
    std::vector<std::vector<fq_t>> row_coords;
    std::vector<size_t> pivots;

    explicit SpanBasis(const Fq& f) : F(f) {}

    // Returns the coordinates of v over the selected basis, growing the
    // basis if v is independent (state_id names v).
    std::vector<fq_t> insert(size_t state_id, std::vector<fq_t> v) {
        std::vector<fq_t> acc(basis_states.size(), 0);
        for (size_t k = 0; k < rows.size(); ++k) {
            fq_t x = v[pivots[k]];
            if (x == 0) continue;
            for (size_t i = 0; i < v.size(); ++i)
                if (rows[k][i] != 0) v[i] = F.sub(v[i], F.mul(x, rows[k][i]));
            for (size_t i = 0; i < row_coords[k].size(); ++i)
                if (row_coords[k][i] != 0) acc[i] = F.add(acc[i], F.mul(x, row_coords[k][i]));
        }
        size_t piv = v.size();
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) { piv = i; break; }
        if (piv == v.size()) return acc; // dependent: v = sum acc_i basis_i
        // Independent: v joins the basis; residual = v - sum acc_i basis_i.
        std::vector<fq_t> rc(basis_states.size() + 1, 0);
        for (size_t i = 0; i < acc.size(); ++i) rc[i] = F.neg(acc[i]);
        rc[basis_states.size()] = 1;
        fq_t scale = F.inv(v[piv]);
        for (auto& x : v) x = F.mul(x, scale);
        for (auto& x : rc) x = F.mul(x, scale);
        basis_states.push_back(state_id);
        rows.push_back(std::move(v));
        row_coords.push_back(std::move(rc));
        pivots.push_back(piv);
        std::vector<fq_t> coords(basis_states.size(), 0);
        coords[basis_states.size() - 1] = 1;
        return coords;
    }
};

Representation representation_from_vectors(const Fq& F,
                                           const std::vector<std::vector<fq_t>>& vecs,
                                           const std::vector<std::vector<int>>& delta,
                                           const std::vector<fq_t>& outputs,
                                           std::uint64_t alphabet) {
    SpanBasis span(F);
    std::vector<std::vector<fq_t>> coords(vecs.size());
    for (size_t i = 0; i < vecs.size(); ++i) coords[i] = span.insert(i, vecs[i]);
    unsigned m = (unsigned)span.basis_states.size();
    for (auto& c : coords) c.resize(m, 0);

    Representation rep;
    rep.dim = m;
    rep.alphabet = alphabet;
    rep.start = coords[0];
    rep.functional.resize(m);
    for (unsigned j = 0; j < m; ++j) rep.functional[j] = outputs[span.basis_states[j]];
    rep.mats.assign(alphabet, std::vector<std::vector<fq_t>>(m, std::vector<fq_t>(m, 0)));
    for (std::uint64_t c = 0; c < alphabet; ++c)
        for (unsigned j = 0; j < m; ++j) {
            int img = delta[span.basis_states[j]][c];
            for (unsigned i = 0; i < m; ++i) rep.mats[c][i][j] = coords[(size_t)img][i];
        }
    return rep;
}

} // namespace

Representation extract_representation(const PlaneCurve& curve, const Kernel& k) {
    const Fq& F = curve.field();
    // Flatten each element over a common coordinate basis: scale by the LCM
    // of all denominators, then read off polynomial coefficients slot by
    // slot.
    Poly lcm = Poly::constant(1);
    for (const auto& e : k.elements)
        for (const auto& co : e.coords) {
            if (co.is_zero()) continue;
            Poly g = poly_gcd(F, lcm, co.den);
            lcm = poly_mul(F, lcm, poly_exact_div(F, co.den, g));
        }
    int width = 0;
    std::vector<std::vector<Poly>> scaled(k.elements.size());
    for (size_t i = 0; i < k.elements.size(); ++i) {
        scaled[i].resize(k.elements[i].coords.size());
        for (size_t cidx = 0; cidx < k.elements[i].coords.size(); ++cidx) {
            const RatFunc& co = k.elements[i].coords[cidx];
            if (co.is_zero()) continue;
            scaled[i][cidx] = poly_mul(F, co.num, poly_exact_div(F, lcm, co.den));
            width = std::max(width, poly_deg(scaled[i][cidx]) + 1);
        }
    }
    size_t d = k.elements.empty() ? 0 : k.elements[0].coords.size();
    std::vector<std::vector<fq_t>> vecs(k.elements.size(),
                                        std::vector<fq_t>(d * (size_t)width, 0));
    for (size_t i = 0; i < k.elements.size(); ++i)
        for (size_t cidx = 0; cidx < d; ++cidx)
            for (size_t t = 0; t < scaled[i][cidx].c.size(); ++t)
                vecs[i][cidx * (size_t)width + t] = scaled[i][cidx].c[t];
    return representation_from_vectors(F, vecs, k.delta, k.outputs, k.alphabet);
}

Representation extract_representation(const Fq& F, const TruncKernel& k) {
    // Flatten on the common known prefix.  The rank over a finite window is
    // a heuristic in the same sense as the truncated kernel itself.
    size_t width = k.states.empty() ? 0 : k.states[0].c.size();
    for (const auto& s : k.states) width = std::min(width, s.c.size());
    std::vector<std::vector<fq_t>> vecs(k.states.size(), std::vector<fq_t>(width, 0));
    for (size_t i = 0; i < k.states.size(); ++i)
        for (size_t t = 0; t < width; ++t) vecs[i][t] = k.states[i].c[t];
    return representation_from_vectors(F, vecs, k.delta, k.outputs, k.alphabet);
}

std::string kernel_dump(const PlaneCurve& curve, const Kernel& k) {
    const Fq& F = curve.field();
    std::ostringstream os;
    os << "kernel states: " << k.elements.size() << ", digits: " << k.alphabet << "\n";
    for (size_t i = 0; i < k.elements.size(); ++i) {
        os << "s" << i << " | out=" << k.outputs[i] << " |";
        for (std::uint64_t c = 0; c < k.alphabet; ++c) os << " " << c << "->s" << k.delta[i][c];
        os << " | ";
        bool first = true;
        const auto& coords = k.elements[i].coords;
        bool all_zero = true;
        for (size_t cidx = 0; cidx < coords.size(); ++cidx) {
            if (coords[cidx].is_zero()) continue;
            all_zero = false;
            if (!first) os << " + ";
            first = false;
            os << "(" << rf_to_string(F, coords[cidx]) << ")";
            if (cidx >= 1) {
                os << "*y";
                if (cidx > 1) os << "^" << cidx;
            }
        }
        if (all_zero) os << "0";
        os << "\n";
    }
    return os.str();
}

} // namespace christol
