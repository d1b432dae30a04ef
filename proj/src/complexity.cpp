#include "christol/complexity.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "christol/errors.hpp"
#include "christol/kernel.hpp"

namespace christol {

std::uint64_t landau(unsigned n) {
    if (n > 200) throw UserError("landau is tabulated for n <= 200 only");
    // Knapsack over prime powers: each prime contributes at most one power
    // p^e of weight p^e and value factor p^e; leftover weight is free.
    std::vector<bool> composite(n + 1, false);
    std::vector<unsigned> primes;
    for (unsigned i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (unsigned j = 2 * i; j <= n; j += i) composite[j] = true;
    }
    std::vector<std::uint64_t> dp(n + 1, 1);
    for (unsigned p : primes) {
        std::vector<std::uint64_t> nxt = dp;
        for (unsigned j = p; j <= n; ++j)
            for (std::uint64_t pe = p; pe <= j; pe *= p)
                nxt[j] = std::max(nxt[j], dp[j - (unsigned)pe] * pe);
        dp = std::move(nxt);
    }
    return dp[n];
}

namespace {

bigint big_pow(std::uint64_t base, long long e) {
    if (e <= 0) return 1;
    bigint b = base, acc = 1;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

// Smallest k with p^k >= t, i.e. ceil(log_p t) for t >= 1.
unsigned ceil_log(std::uint64_t p, std::uint64_t t) {
    unsigned k = 0;
    bigint pk = 1;
    while (pk < t) {
        pk *= p;
        ++k;
    }
    return k;
}

std::string verdict_of(const bigint& bound, std::optional<std::uint64_t> n) {
    if (!n) return "SKIP";
    return (bigint(*n) <= bound) ? "PASS" : "FAIL";
}

} // namespace

ComplexityReport bounds_report(const Fq& F, int d, int h,
                               std::optional<long long> genus,
                               std::uint64_t n_rev,
                               std::optional<std::uint64_t> n_fwd) {
    if (d < 1) throw UserError("degree must be positive");
    if (h < 0) throw UserError("height must be non-negative");
    ComplexityReport rep;
    rep.q = F.q();
    rep.p = F.p();
    rep.r = F.r();
    rep.d = d;
    rep.h = h;
    rep.genus_input = genus;
    rep.genus_bound = (long long)(d - 1) * (h - 1);
    if (rep.genus_bound < 0) rep.genus_bound = 0; // h = 0 curves
    rep.genus_used = genus ? *genus : rep.genus_bound;
    rep.genus_substituted = !genus.has_value();
    rep.n_rev = n_rev;
    rep.n_fwd = n_fwd;

    long long g = rep.genus_used;
    if (g < 0) throw UserError("genus must be non-negative");
    std::uint64_t q = F.q();

    // T = max(h, d) enters only through ceil(log_p T).
    std::uint64_t T = (std::uint64_t)std::max(h, d);
    rep.landau_arg = (unsigned)(h + 2 * d);
    rep.landau_val = landau(rep.landau_arg);

    bigint main_b = big_pow(q, h + d + g - 1);
    bigint refined = bigint(1) + ceil_log(F.p(), std::max<std::uint64_t>(T, 1)) +
                     bigint(F.r()) * rep.landau_val * big_pow(q, g) + main_b;
    bigint easy = big_pow(q, h + 3 * d + g - 1);
    bigint forward = big_pow(q, h + 2 * d + g - 1);
    bigint genus_free = big_pow(q, (long long)h * d);

    rep.bounds.push_back({"main", main_b, "N_rev", n_rev, verdict_of(main_b, n_rev)});
    rep.bounds.push_back({"refined", refined, "N_rev", n_rev, verdict_of(refined, n_rev)});
    rep.bounds.push_back({"easy", easy, "N_rev", n_rev, verdict_of(easy, n_rev)});
    rep.bounds.push_back({"forward", forward, "N_fwd", n_fwd, verdict_of(forward, n_fwd)});
    rep.bounds.push_back({"genus_free", genus_free, "N_rev", n_rev, verdict_of(genus_free, n_rev)});
    return rep;
}

std::string report_text(const ComplexityReport& rep) {
    std::ostringstream os;
    os << "state-complexity report\n";
    os << "  q = " << rep.q << " (p = " << rep.p << ", r = " << rep.r << "), d = " << rep.d
       << ", h = " << rep.h << "\n";
    if (rep.genus_substituted)
        os << "  genus: " << rep.genus_used << " (Castelnuovo fallback (d-1)(h-1); no genus supplied)\n";
    else
        os << "  genus: " << rep.genus_used << " (user-supplied; Castelnuovo bound " << rep.genus_bound
           << ")\n";
    os << "  N_rev = " << rep.n_rev;
    if (rep.n_fwd)
        os << ", N_fwd = " << *rep.n_fwd << "\n";
    else
        os << ", N_fwd not computed\n";
    os << "  L(" << rep.landau_arg << ") = " << rep.landau_val << "\n";

    size_t wname = 10, wval = 5;
    for (const auto& b : rep.bounds) {
        wname = std::max(wname, b.name.size());
        wval = std::max(wval, b.value.str().size());
    }
    os << "  " << std::left << std::setw((int)wname + 2) << "bound" << std::setw((int)wval + 2)
       << "value" << std::setw(8) << "against" << "verdict\n";
    for (const auto& b : rep.bounds) {
        os << "  " << std::left << std::setw((int)wname + 2) << b.name << std::setw((int)wval + 2)
           << b.value.str() << std::setw(8) << b.against << b.verdict << "\n";
    }
    return os.str();
}

std::string report_json(const ComplexityReport& rep) {
    nlohmann::ordered_json j;
    j["q"] = rep.q;
    j["p"] = rep.p;
    j["r"] = rep.r;
    j["d"] = rep.d;
    j["h"] = rep.h;
    if (rep.genus_input)
        j["genus_input"] = *rep.genus_input;
    else
        j["genus_input"] = nullptr;
    j["genus_bound"] = rep.genus_bound;
    j["genus_used"] = rep.genus_used;
    j["genus_substituted"] = rep.genus_substituted;
    j["n_rev"] = rep.n_rev;
    if (rep.n_fwd)
        j["n_fwd"] = *rep.n_fwd;
    else
        j["n_fwd"] = nullptr;
    j["landau_arg"] = rep.landau_arg;
    j["landau"] = rep.landau_val;
    j["bounds"] = nlohmann::ordered_json::array();
    for (const auto& b : rep.bounds) {
        nlohmann::ordered_json e;
        e["name"] = b.name;
        e["value"] = b.value.str(); // decimal string: bounds overflow 64 bits routinely
        e["against"] = b.against;
        if (b.n)
            e["n"] = *b.n;
        else
            e["n"] = nullptr;
        e["verdict"] = b.verdict;
        j["bounds"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

BaseCompare base_compare(const PlaneCurve& curve, const TruncSeries& branch,
                         std::uint64_t max_states) {
    const Fq& F = curve.field();
    Kernel kp = enumerate_orbit(curve, branch, curve.gen(), 1, max_states);
    Kernel kq = enumerate_orbit(curve, branch, curve.gen(), F.r(), max_states);
    BaseCompare out;
    out.n_p = kp.size();
    out.n_q = kq.size();
    // N_q <= N_p <= (q-1)/(p-1) * N_q; the ratio is the geometric series
    // 1 + p + ... + p^(r-1), an integer.
    std::uint64_t ratio = (F.q() - 1) / (F.p() - 1);
    out.pass = (out.n_q <= out.n_p) && (out.n_p <= ratio * out.n_q);
    return out;
}

int bivariate_deg_x(const Bivariate& b) {
    int dx = -1;
    for (const auto& p : b.byT) dx = std::max(dx, poly_deg(p));
    return dx;
}

std::string bivariate_to_string(const Fq& F, const Bivariate& b) {
    std::ostringstream os;
    bool first = true;
    for (int j = (int)b.byT.size() - 1; j >= 0; --j) {
        if (b.byT[j].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << poly_to_string(F, b.byT[j]) << ")";
        if (j == 1)
            os << "*T";
        else if (j > 1)
            os << "*T^" << j;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

// First null-space vector (deterministic: smallest free column set to 1) of
// a dense matrix over F_q, or empty if the kernel is trivial.
std::vector<fq_t> fq_first_null_vector(const Fq& F, std::vector<std::vector<fq_t>> A,
                                       size_t ncols) {
    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < A.size(); ++col) {
        size_t sel = row;
        while (sel < A.size() && A[sel][col] == 0) ++sel;
        if (sel == A.size()) continue;
        std::swap(A[row], A[sel]);
        fq_t inv = F.inv(A[row][col]);
        for (size_t k = col; k < ncols; ++k) A[row][k] = F.mul(A[row][k], inv);
        for (size_t i = 0; i < A.size(); ++i) {
            if (i == row || A[i][col] == 0) continue;
            fq_t f = A[i][col];
            for (size_t k = col; k < ncols; ++k)
                A[i][k] = F.sub(A[i][k], F.mul(f, A[row][k]));
        }
        pivot_col.push_back(col);
        ++row;
    }
    // Smallest free column.
    std::vector<bool> is_pivot(ncols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    size_t free_col = ncols;
    for (size_t c = 0; c < ncols; ++c)
        if (!is_pivot[c]) { free_col = c; break; }
    if (free_col == ncols) return {};
    std::vector<fq_t> v(ncols, 0);
    v[free_col] = 1;
    for (size_t k = 0; k < pivot_col.size(); ++k)
        v[pivot_col[k]] = F.neg(A[k][free_col]);
    return v;
}

} // namespace

Bivariate algebraize(const Fq& F, const TruncSeries& s, unsigned m,
                     std::optional<int> cap_T, std::optional<int> cap_x) {
    // Default caps from the coarse degree bound for a kernel of size m.
    bigint qm = big_pow(F.q(), m);
    int capT = cap_T ? *cap_T : (int)std::min<bigint>(qm - 1, 32).convert_to<int>();
    int capX = cap_x ? *cap_x : (int)std::min<bigint>(bigint(m) * qm * F.q(), 256).convert_to<int>();
    if (capT < 1 || capX < 1) throw UserError("degree caps must be positive");

    // Candidate shapes, cheapest first.
    std::vector<std::pair<int, int>> shapes;
    std::vector<int> xs;
    for (int x = 1; x < capX; x *= 2) xs.push_back(x);
    xs.push_back(capX);
    for (int t = 1; t <= capT; ++t)
        for (int x : xs) shapes.push_back({t, x});
    std::sort(shapes.begin(), shapes.end(), [](auto& a, auto& b) {
        long pa = (long)(a.first + 1) * (a.second + 1);
        long pb = (long)(b.first + 1) * (b.second + 1);
        if (pa != pb) return pa < pb;
        return a < b;
    });

    // Powers of s, extended on demand.
    std::vector<TruncSeries> pw;
    pw.push_back(ts_of_poly(Poly::constant(1), s.precision()));
    pw.push_back(s);
    auto power = [&](int j) -> const TruncSeries& {
        while ((int)pw.size() <= j) pw.push_back(ts_mul(F, pw.back(), s));
        return pw[j];
    };

    bool skipped_for_precision = false;
    for (auto [t, x] : shapes) {
        int rows = 2 * (t + 1) * (x + 1);
        if (s.precision() < rows) {
            skipped_for_precision = true;
            continue;
        }
        size_t ncols = (size_t)(t + 1) * (x + 1);
        // Row n: coefficient of x^n in sum c_{j,i} x^i s^j; column j*(x+1)+i.
        std::vector<std::vector<fq_t>> A(rows, std::vector<fq_t>(ncols, 0));
        for (int j = 0; j <= t; ++j) {
            const TruncSeries& sj = power(j);
            for (int i = 0; i <= x; ++i)
                for (int n = i; n < rows; ++n)
                    A[n][(size_t)j * (x + 1) + i] = sj.at(n - i);
        }
        std::vector<fq_t> v = fq_first_null_vector(F, std::move(A), ncols);
        if (v.empty()) continue;

        Bivariate cand;
        cand.byT.resize(t + 1);
        for (int j = 0; j <= t; ++j) {
            std::vector<fq_t> cs(x + 1, 0);
            for (int i = 0; i <= x; ++i) cs[i] = v[(size_t)j * (x + 1) + i];
            cand.byT[j] = poly_from(F, cs);
        }
        while (!cand.byT.empty() && cand.byT.back().is_zero()) cand.byT.pop_back();
        if (cand.byT.empty()) continue;

        // Normalize: first nonzero coefficient (T-major order) scaled to 1.
        fq_t lead = 0;
        for (const auto& pj : cand.byT) {
            if (pj.is_zero()) continue;
            for (fq_t c : pj.c)
                if (c != 0) { lead = c; break; }
            if (lead != 0) break;
        }
        fq_t scale = F.inv(lead);
        for (auto& pj : cand.byT) pj = poly_scale(F, pj, scale);

        // Re-verify by substitution at doubled precision.
        int check = std::min(2 * rows, s.precision());
        TruncSeries acc = ts_of_poly(Poly::zero(), check);
        for (int j = 0; j < (int)cand.byT.size(); ++j) {
            TruncSeries term = ts_mul(F, ts_of_poly(cand.byT[j], check),
                                      ts_truncate(power(j), check));
            acc = ts_add(F, acc, term);
        }
        bool ok = true;
        for (int n = 0; n < acc.precision(); ++n)
            if (acc.at(n) != 0) { ok = false; break; }
        if (!ok) throw InternalError("algebraize: candidate relation failed re-verification");
        return cand;
    }
    if (skipped_for_precision)
        throw UserError("algebraize: series precision " + std::to_string(s.precision()) +
                        " is insufficient for the remaining degree caps (deg_T <= " +
                        std::to_string(capT) + ", deg_x <= " + std::to_string(capX) + ")");
    throw ComputeRefusal("algebraize: no annihilating relation within the degree caps (deg_T <= " +
                         std::to_string(capT) + ", deg_x <= " + std::to_string(capX) + ")");
}

} // namespace christol
