#include "christol/dfao.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include <nlohmann/json.hpp>

#include "christol/errors.hpp"

namespace christol {

Dfao build_reverse_dfao(const Kernel& k) {
    Dfao d;
    d.q = k.alphabet;
    d.conv = Convention::reverse;
    d.n_states = (int)k.elements.size();
    d.initial = 0;
    d.delta = k.delta;
    d.tau = k.outputs;
    return d;
}

Dfao build_reverse_dfao(const TruncKernel& k) {
    Dfao d;
    d.q = k.alphabet;
    d.conv = Convention::reverse;
    d.n_states = (int)k.states.size();
    d.initial = 0;
    d.delta = k.delta;
    d.tau = k.outputs;
    return d;
}

Dfao build_forward_dfao(const Fq& F, const Representation& rep,
                        std::uint64_t max_states) {
    Dfao d;
    d.q = rep.alphabet;
    d.conv = Convention::forward;

    auto dot = [&](const std::vector<fq_t>& mu, const std::vector<fq_t>& v) {
        fq_t s = 0;
        for (size_t i = 0; i < mu.size(); ++i) s = F.add(s, F.mul(mu[i], v[i]));
        return s;
    };
    auto step = [&](const std::vector<fq_t>& mu, std::uint64_t c) {
        std::vector<fq_t> out(rep.dim, 0);
        for (unsigned j = 0; j < rep.dim; ++j) {
            fq_t s = 0;
            for (unsigned i = 0; i < rep.dim; ++i)
                s = F.add(s, F.mul(mu[i], rep.mats[c][i][j]));
            out[j] = s;
        }
        return out;
    };

    std::map<std::vector<fq_t>, int> index;
    std::vector<std::vector<fq_t>> states;
    states.push_back(rep.functional);
    index.emplace(rep.functional, 0);
    for (size_t at = 0; at < states.size(); ++at) {
        std::vector<int> row(rep.alphabet);
        for (std::uint64_t c = 0; c < rep.alphabet; ++c) {
            std::vector<fq_t> nxt = step(states[at], c);
            auto it = index.find(nxt);
            if (it == index.end()) {
                if (states.size() >= max_states)
                    throw ComputeRefusal("forward automaton exceeded the state budget of " +
                                         std::to_string(max_states));
                int id = (int)states.size();
                index.emplace(nxt, id);
                states.push_back(std::move(nxt));
                row[c] = id;
            } else {
                row[c] = it->second;
            }
        }
        d.delta.push_back(std::move(row));
    }
    d.n_states = (int)states.size();
    d.initial = 0;
    d.tau.resize(states.size());
    for (size_t i = 0; i < states.size(); ++i) d.tau[i] = dot(states[i], rep.start);
    return d;
}

fq_t dfao_eval_digits(const Dfao& d, const std::vector<std::uint64_t>& digits) {
    int s = d.initial;
    if (d.conv == Convention::forward) {
        for (std::uint64_t c : digits) {
            if (c >= d.q) throw UserError("digit out of range for the automaton alphabet");
            s = d.delta[s][c];
        }
    } else {
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
            if (*it >= d.q) throw UserError("digit out of range for the automaton alphabet");
            s = d.delta[s][*it];
        }
    }
    return d.tau[s];
}

fq_t dfao_eval(const Dfao& d, std::uint64_t n) {
    std::vector<std::uint64_t> digits; // most significant first
    while (n > 0) {
        digits.push_back(n % d.q);
        n /= d.q;
    }
    std::reverse(digits.begin(), digits.end());
    return dfao_eval_digits(d, digits);
}

Dfao canonical_renumber(const Dfao& d) {
    std::vector<int> order(d.n_states, -1); // old -> new
    std::vector<int> bfs;                   // new -> old
    bfs.push_back(d.initial);
    order[d.initial] = 0;
    for (size_t at = 0; at < bfs.size(); ++at)
        for (std::uint64_t c = 0; c < d.q; ++c) {
            int t = d.delta[bfs[at]][c];
            if (order[t] < 0) {
                order[t] = (int)bfs.size();
                bfs.push_back(t);
            }
        }
    Dfao out;
    out.q = d.q;
    out.conv = d.conv;
    out.n_states = (int)bfs.size();
    out.initial = 0;
    out.delta.resize(bfs.size());
    out.tau.resize(bfs.size());
    for (size_t i = 0; i < bfs.size(); ++i) {
        out.tau[i] = d.tau[bfs[i]];
        out.delta[i].resize(d.q);
        for (std::uint64_t c = 0; c < d.q; ++c) out.delta[i][c] = order[d.delta[bfs[i]][c]];
    }
    return out;
}

Dfao minimize(const Dfao& d) {
    // Reachable states only.
    Dfao r = canonical_renumber(d);

    // Moore refinement: start from the output partition, split until the
    // signature (class, successor classes) is constant on every class.
    std::vector<int> cls(r.n_states);
    {
        std::map<fq_t, int> by_out;
        for (int i = 0; i < r.n_states; ++i) {
            auto it = by_out.find(r.tau[i]);
            if (it == by_out.end()) it = by_out.emplace(r.tau[i], (int)by_out.size()).first;
            cls[i] = it->second;
        }
    }
    int n_cls = 1 + *std::max_element(cls.begin(), cls.end());
    for (;;) {
        // Signature = own class + successor classes; classes only ever
        // split, so a round that keeps the count is the fixpoint.
        std::map<std::vector<int>, int> sig_map;
        std::vector<int> next(r.n_states);
        for (int i = 0; i < r.n_states; ++i) {
            std::vector<int> sig;
            sig.reserve(r.q + 1);
            sig.push_back(cls[i]);
            for (std::uint64_t c = 0; c < r.q; ++c) sig.push_back(cls[r.delta[i][c]]);
            auto it = sig_map.find(sig);
            if (it == sig_map.end()) it = sig_map.emplace(std::move(sig), (int)sig_map.size()).first;
            next[i] = it->second;
        }
        int n_next = (int)sig_map.size();
        cls = std::move(next);
        if (n_next == n_cls) break;
        n_cls = n_next;
    }

    int n_classes = 1 + *std::max_element(cls.begin(), cls.end());
    Dfao m;
    m.q = r.q;
    m.conv = r.conv;
    m.n_states = n_classes;
    m.initial = cls[r.initial];
    m.delta.assign(n_classes, std::vector<int>(r.q, 0));
    m.tau.assign(n_classes, 0);
    for (int i = 0; i < r.n_states; ++i) {
        m.tau[cls[i]] = r.tau[i];
        for (std::uint64_t c = 0; c < r.q; ++c) m.delta[cls[i]][c] = cls[r.delta[i][c]];
    }
    return canonical_renumber(m);
}

bool check_leading_zero_invariance(const Dfao& d) {
    for (std::uint64_t n = 0; n < 10000; ++n) {
        std::vector<std::uint64_t> digits;
        std::uint64_t m = n;
        while (m > 0) {
            digits.push_back(m % d.q);
            m /= d.q;
        }
        std::reverse(digits.begin(), digits.end());
        fq_t base = dfao_eval_digits(d, digits);
        std::vector<std::uint64_t> padded = digits;
        for (int k = 1; k <= 3; ++k) {
            padded.insert(padded.begin(), 0);
            if (dfao_eval_digits(d, padded) != base) return false;
        }
    }
    return true;
}

std::string serialize_dot(const Dfao& d) {
    std::ostringstream os;
    os << "digraph dfao {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=circle];\n";
    os << "  __start [shape=none, label=\"\"];\n";
    os << "  __start -> q" << d.initial << ";\n";
    for (int i = 0; i < d.n_states; ++i)
        os << "  q" << i << " [label=\"q" << i << "/" << d.tau[i] << "\"];\n";
    for (int i = 0; i < d.n_states; ++i) {
        // One edge per target, digits merged into the label.
        std::map<int, std::vector<std::uint64_t>> by_target;
        for (std::uint64_t c = 0; c < d.q; ++c) by_target[d.delta[i][c]].push_back(c);
        for (const auto& [t, cs] : by_target) {
            os << "  q" << i << " -> q" << t << " [label=\"";
            for (size_t k = 0; k < cs.size(); ++k) {
                if (k) os << ",";
                os << cs[k];
            }
            os << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string serialize_json(const Dfao& d) {
    nlohmann::ordered_json j;
    j["q"] = d.q;
    j["convention"] = (d.conv == Convention::reverse) ? "reverse" : "forward";
    j["n_states"] = d.n_states;
    j["initial"] = d.initial;
    j["delta"] = d.delta;
    j["tau"] = d.tau;
    return j.dump(2) + "\n";
}

Dfao parse_dfao_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UserError(std::string("invalid automaton JSON: ") + e.what());
    }
    Dfao d;
    try {
        d.q = j.at("q").get<std::uint64_t>();
        std::string conv = j.at("convention").get<std::string>();
        if (conv == "reverse")
            d.conv = Convention::reverse;
        else if (conv == "forward")
            d.conv = Convention::forward;
        else
            throw UserError("invalid automaton JSON: unknown convention \"" + conv + "\"");
        d.n_states = j.at("n_states").get<int>();
        d.initial = j.at("initial").get<int>();
        d.delta = j.at("delta").get<std::vector<std::vector<int>>>();
        d.tau = j.at("tau").get<std::vector<fq_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw UserError(std::string("invalid automaton JSON: ") + e.what());
    }
    if (d.q < 2) throw UserError("invalid automaton JSON: q must be at least 2");
    if (d.n_states < 1) throw UserError("invalid automaton JSON: need at least one state");
    if (d.initial < 0 || d.initial >= d.n_states)
        throw UserError("invalid automaton JSON: initial state out of range");
    if ((int)d.delta.size() != d.n_states || (int)d.tau.size() != d.n_states)
        throw UserError("invalid automaton JSON: table sizes disagree with n_states");
    for (const auto& row : d.delta) {
        if (row.size() != d.q)
            throw UserError("invalid automaton JSON: transition row length disagrees with q");
        for (int t : row)
            if (t < 0 || t >= d.n_states)
                throw UserError("invalid automaton JSON: transition target out of range");
    }
    return d;
}

} // namespace christol
