#include "christol/expr.hpp"

#include <cctype>
#include <memory>

#include "christol/errors.hpp"

namespace christol {

namespace {

// Small AST shared by the two evaluators (curve polynomials over F_q and
// integer rational functions for the sweep).
struct Node {
    enum Kind { Num, Var, Add, Sub, Neg, Mul, Div, Pow } kind;
    size_t offset = 0; // 1-based, for error messages
    std::string digits;
    char var = 0; // 'x' or 'T'
    std::unique_ptr<Node> a, b;
    unsigned long long exp = 0;
};

using NodePtr = std::unique_ptr<Node>;

constexpr unsigned long long EXP_CAP = 4096;

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ < s_.size())
            throw UserError("syntax error at offset " + std::to_string(pos_ + 1) +
                            ": unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    bool peek_is(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    [[noreturn]] void fail(const std::string& what) {
        size_t off = std::min(pos_, s_.size()) + 1;
        if (pos_ >= s_.size())
            throw UserError("syntax error at offset " + std::to_string(off) + ": " + what +
                            " before end of input");
        throw UserError("syntax error at offset " + std::to_string(off) + ": " + what +
                        ", found '" + std::string(1, s_[pos_]) + "'");
    }

    NodePtr expr() {
        NodePtr left = term();
        for (;;) {
            skip_ws();
            if (peek_is('+') || peek_is('-')) {
                char op = s_[pos_];
                size_t off = pos_ + 1;
                ++pos_;
                NodePtr right = term();
                NodePtr n = std::make_unique<Node>();
                n->kind = (op == '+') ? Node::Add : Node::Sub;
                n->offset = off;
                n->a = std::move(left);
                n->b = std::move(right);
                left = std::move(n);
            } else {
                return left;
            }
        }
    }

    NodePtr term() {
        NodePtr left = factor();
        for (;;) {
            skip_ws();
            if (peek_is('*') || peek_is('/')) {
                char op = s_[pos_];
                size_t off = pos_ + 1;
                ++pos_;
                NodePtr right = factor();
                NodePtr n = std::make_unique<Node>();
                n->kind = (op == '*') ? Node::Mul : Node::Div;
                n->offset = off;
                n->a = std::move(left);
                n->b = std::move(right);
                left = std::move(n);
            } else {
                return left;
            }
        }
    }

    NodePtr factor() {
        skip_ws();
        if (peek_is('-')) {
            size_t off = pos_ + 1;
            ++pos_;
            NodePtr inner = factor();
            NodePtr n = std::make_unique<Node>();
            n->kind = Node::Neg;
            n->offset = off;
            n->a = std::move(inner);
            return n;
        }
        NodePtr b = base();
        skip_ws();
        if (peek_is('^')) {
            ++pos_;
            skip_ws();
            size_t off = pos_ + 1;
            if (pos_ >= s_.size() || !std::isdigit((unsigned char)s_[pos_]))
                fail("expected a non-negative integer exponent");
            std::string digits;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) digits += s_[pos_++];
            if (digits.size() > 6)
                throw UserError("exponent too large at offset " + std::to_string(off) + " (cap " +
                                std::to_string(EXP_CAP) + ")");
            unsigned long long e = std::stoull(digits);
            if (e > EXP_CAP)
                throw UserError("exponent too large at offset " + std::to_string(off) + " (cap " +
                                std::to_string(EXP_CAP) + ")");
            NodePtr n = std::make_unique<Node>();
            n->kind = Node::Pow;
            n->offset = off;
            n->a = std::move(b);
            n->exp = e;
            return n;
        }
        return b;
    }

    NodePtr base() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected a number, variable, or '('");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            skip_ws();
            if (!peek_is(')')) fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit((unsigned char)c)) {
            NodePtr n = std::make_unique<Node>();
            n->kind = Node::Num;
            n->offset = pos_ + 1;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) n->digits += s_[pos_++];
            return n;
        }
        if (std::isalpha((unsigned char)c)) {
            if (c == 'x' || c == 'T' || c == 'y') {
                NodePtr n = std::make_unique<Node>();
                n->kind = Node::Var;
                n->offset = pos_ + 1;
                n->var = (c == 'x') ? 'x' : 'T';
                ++pos_;
                return n;
            }
            throw UserError("unknown symbol '" + std::string(1, c) + "' at offset " +
                            std::to_string(pos_ + 1));
        }
        fail("expected a number, variable, or '('");
    }
};

// ---- evaluation over F_q[x][T] ----

constexpr int CURVE_TDEG_CAP = 128;
constexpr int CURVE_XDEG_CAP = 4096;

struct BPoly { // dense by ascending T-degree
    std::vector<Poly> byT;
};

void bp_trim(BPoly& a) {
    while (!a.byT.empty() && a.byT.back().is_zero()) a.byT.pop_back();
}

void bp_check_caps(const BPoly& a, size_t offset) {
    if ((int)a.byT.size() - 1 > CURVE_TDEG_CAP)
        throw UserError("T-degree exceeds the parser cap " + std::to_string(CURVE_TDEG_CAP) +
                        " at offset " + std::to_string(offset));
    for (const auto& p : a.byT)
        if (poly_deg(p) > CURVE_XDEG_CAP)
            throw UserError("x-degree exceeds the parser cap " + std::to_string(CURVE_XDEG_CAP) +
                            " at offset " + std::to_string(offset));
}

BPoly bp_add(const Fq& F, const BPoly& a, const BPoly& b, bool subtract) {
    BPoly r;
    r.byT.resize(std::max(a.byT.size(), b.byT.size()));
    for (size_t i = 0; i < r.byT.size(); ++i) {
        Poly pa = i < a.byT.size() ? a.byT[i] : Poly::zero();
        Poly pb = i < b.byT.size() ? b.byT[i] : Poly::zero();
        r.byT[i] = subtract ? poly_sub(F, pa, pb) : poly_add(F, pa, pb);
    }
    bp_trim(r);
    return r;
}

BPoly bp_mul(const Fq& F, const BPoly& a, const BPoly& b, size_t offset) {
    BPoly r;
    if (a.byT.empty() || b.byT.empty()) return r;
    r.byT.assign(a.byT.size() + b.byT.size() - 1, Poly::zero());
    for (size_t i = 0; i < a.byT.size(); ++i)
        for (size_t j = 0; j < b.byT.size(); ++j)
            r.byT[i + j] = poly_add(F, r.byT[i + j], poly_mul(F, a.byT[i], b.byT[j]));
    bp_trim(r);
    bp_check_caps(r, offset);
    return r;
}

BPoly eval_curve(const Fq& F, const Node* n) {
    switch (n->kind) {
        case Node::Num: {
            fq_t acc = 0;
            for (char d : n->digits)
                acc = F.add(F.from_int(d - '0'), F.mul(acc, F.from_int(10)));
            BPoly r;
            if (acc != 0) r.byT.push_back(Poly::constant(acc));
            return r;
        }
        case Node::Var: {
            BPoly r;
            if (n->var == 'x')
                r.byT.push_back(Poly::x());
            else
                r.byT = {Poly::zero(), Poly::constant(1)};
            return r;
        }
        case Node::Add:
            return bp_add(F, eval_curve(F, n->a.get()), eval_curve(F, n->b.get()), false);
        case Node::Sub:
            return bp_add(F, eval_curve(F, n->a.get()), eval_curve(F, n->b.get()), true);
        case Node::Neg: {
            BPoly r = eval_curve(F, n->a.get());
            for (auto& p : r.byT) p = poly_neg(F, p);
            return r;
        }
        case Node::Mul:
            return bp_mul(F, eval_curve(F, n->a.get()), eval_curve(F, n->b.get()), n->offset);
        case Node::Div:
            throw UserError("division is not supported in curve expressions (offset " +
                            std::to_string(n->offset) + ")");
        case Node::Pow: {
            BPoly b = eval_curve(F, n->a.get());
            BPoly acc;
            acc.byT.push_back(Poly::constant(1));
            unsigned long long e = n->exp;
            while (e > 0) {
                if (e & 1) acc = bp_mul(F, acc, b, n->offset);
                e >>= 1;
                if (e) b = bp_mul(F, b, b, n->offset);
            }
            return acc;
        }
    }
    throw InternalError("unhandled expression node");
}

// ---- evaluation over Z(x) for the sweep ----

struct ZRatFunc {
    ZPoly num;
    ZPoly den{ZInt(1)};
};

constexpr int SWEEP_DEG_CAP = 8192;

void zr_check(const ZRatFunc& a, size_t offset) {
    if ((int)a.num.size() > SWEEP_DEG_CAP || (int)a.den.size() > SWEEP_DEG_CAP)
        throw UserError("degree exceeds the parser cap " + std::to_string(SWEEP_DEG_CAP) +
                        " at offset " + std::to_string(offset));
}

ZRatFunc eval_rational(const Node* n) {
    switch (n->kind) {
        case Node::Num: {
            ZRatFunc r;
            ZInt v(n->digits);
            if (v != 0) r.num.push_back(v);
            return r;
        }
        case Node::Var: {
            if (n->var != 'x')
                throw UserError("the sweep input is a rational function of x only (offset " +
                                std::to_string(n->offset) + ")");
            ZRatFunc r;
            r.num = {ZInt(0), ZInt(1)};
            return r;
        }
        case Node::Add:
        case Node::Sub: {
            ZRatFunc a = eval_rational(n->a.get());
            ZRatFunc b = eval_rational(n->b.get());
            ZRatFunc r;
            ZPoly bn = (n->kind == Node::Sub) ? zp_neg(b.num) : b.num;
            r.num = zp_add(zp_mul(a.num, b.den), zp_mul(bn, a.den));
            r.den = zp_mul(a.den, b.den);
            zr_check(r, n->offset);
            return r;
        }
        case Node::Neg: {
            ZRatFunc r = eval_rational(n->a.get());
            r.num = zp_neg(r.num);
            return r;
        }
        case Node::Mul: {
            ZRatFunc a = eval_rational(n->a.get());
            ZRatFunc b = eval_rational(n->b.get());
            ZRatFunc r;
            r.num = zp_mul(a.num, b.num);
            r.den = zp_mul(a.den, b.den);
            zr_check(r, n->offset);
            return r;
        }
        case Node::Div: {
            ZRatFunc a = eval_rational(n->a.get());
            ZRatFunc b = eval_rational(n->b.get());
            if (b.num.empty())
                throw UserError("division by zero at offset " + std::to_string(n->offset));
            ZRatFunc r;
            r.num = zp_mul(a.num, b.den);
            r.den = zp_mul(a.den, b.num);
            zr_check(r, n->offset);
            return r;
        }
        case Node::Pow: {
            ZRatFunc b = eval_rational(n->a.get());
            ZRatFunc acc;
            acc.num = {ZInt(1)};
            unsigned long long e = n->exp;
            while (e > 0) {
                if (e & 1) {
                    acc.num = zp_mul(acc.num, b.num);
                    acc.den = zp_mul(acc.den, b.den);
                    zr_check(acc, n->offset);
                }
                e >>= 1;
                if (e) {
                    b.num = zp_mul(b.num, b.num);
                    b.den = zp_mul(b.den, b.den);
                    zr_check(b, n->offset);
                }
            }
            return acc;
        }
    }
    throw InternalError("unhandled expression node");
}

} // namespace

std::vector<Poly> parse_curve_expr(const Fq& F, const std::string& text) {
    Parser p(text);
    NodePtr ast = p.parse();
    BPoly b = eval_curve(F, ast.get());
    return b.byT;
}

RationalSeriesQ parse_rational_expr(const std::string& text) {
    Parser p(text);
    NodePtr ast = p.parse();
    ZRatFunc r = eval_rational(ast.get());
    return make_rational_series(std::move(r.num), std::move(r.den));
}

} // namespace christol
