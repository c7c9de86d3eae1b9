#include "bosonext/expr.hpp"

#include <cctype>
#include <limits>

namespace bosonext {

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Expr parse() {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    void expect(char c) {
        skip();
        if (pos_ >= s_.size()) fail(std::string("expected '") + c + "' but input ended");
        if (s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    long integer(bool allow_sign) {
        skip();
        std::size_t start = pos_;
        bool neg = false;
        if (allow_sign && pos_ < s_.size() && s_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        if (pos_ >= s_.size()) fail("expected integer but input ended");
        if (!std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (v > (std::numeric_limits<int>::max() - 9) / 10) {
                pos_ = start;
                fail("integer out of range");
            }
            v = v * 10 + (s_[pos_++] - '0');
        }
        return neg ? -v : v;
    }

    Expr expr() {
        Expr first = term();
        if (!peek('+') && !peek('-')) return first;
        Expr sum;
        sum.kind = Expr::Kind::Sum;
        sum.children.push_back(std::move(first));
        sum.signs.push_back(1);
        while (peek('+') || peek('-')) {
            int sign = s_[pos_++] == '+' ? 1 : -1;
            sum.children.push_back(term());
            sum.signs.push_back(sign);
        }
        return sum;
    }

    Expr term() {
        Expr first = factor();
        if (!peek('*')) return first;
        Expr prod;
        prod.kind = Expr::Kind::Product;
        prod.children.push_back(std::move(first));
        while (peek('*')) {
            ++pos_;
            prod.children.push_back(factor());
        }
        return prod;
    }

    Expr factor() {
        Expr a = atom();
        if (!peek('^')) return a;
        ++pos_;
        Expr p;
        p.kind = Expr::Kind::Power;
        p.exponent = static_cast<int>(integer(true));
        p.children.push_back(std::move(a));
        return p;
    }

    // halfint := integer ('/' '2')?
    int halfint() {
        long n = integer(true);
        if (peek('/')) {
            ++pos_;
            skip();
            std::size_t at = pos_;
            if (integer(false) != 2) {
                pos_ = at;
                fail("only the denominator 2 is allowed");
            }
            return static_cast<int>(n);
        }
        return static_cast<int>(2 * n);
    }

    Expr atom() {
        skip();
        if (pos_ >= s_.size()) fail("expected an atom but input ended");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (s_.compare(pos_, 2, "dp") == 0) {
            pos_ += 2;
            expect('(');
            Expr inner = atom();
            expect(',');
            Expr d;
            d.kind = Expr::Kind::DividedPower;
            d.exponent = static_cast<int>(integer(false));
            d.children.push_back(std::move(inner));
            expect(')');
            return d;
        }
        if (c == 'f') {
            ++pos_;
            expect('(');
            Expr g;
            g.kind = Expr::Kind::Generator;
            g.index = static_cast<int>(integer(false));
            expect(',');
            g.level = static_cast<int>(integer(true));
            expect(')');
            return g;
        }
        if (c == 'q') {
            ++pos_;
            Expr e;
            e.kind = Expr::Kind::QPower;
            e.exponent = 2;
            // 'q^{' is part of the atom; a bare 'q^n' is a power of the atom q
            std::size_t save = pos_;
            if (peek('^')) {
                ++pos_;
                if (peek('{')) {
                    ++pos_;
                    e.exponent = halfint();
                    expect('}');
                } else {
                    pos_ = save;
                }
            }
            return e;
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            Expr e;
            e.kind = Expr::Kind::Integer;
            e.value = integer(true);
            return e;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

int precedence(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Sum: return 0;
    case Expr::Kind::Product: return 1;
    case Expr::Kind::Power: return 2;
    default: return 3;
    }
}

std::string wrap(const Expr& e, int min_prec) {
    std::string s = print_expr(e);
    bool negative_int = e.kind == Expr::Kind::Integer && e.value < 0;
    return precedence(e) < min_prec || (negative_int && min_prec > 0) ? "(" + s + ")" : s;
}

[[noreturn]] void eval_fail(const std::string& what) { throw Error(ErrorCode::EvalError, what); }

}  // namespace

Expr parse_expr(const std::string& text) { return Parser(text).parse(); }

std::string print_expr(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Sum: {
        std::string s = wrap(e.children[0], 1);
        if (e.signs[0] < 0) s = "-" + s;
        for (std::size_t k = 1; k < e.children.size(); ++k) s += (e.signs[k] > 0 ? " + " : " - ") + wrap(e.children[k], 1);
        return s;
    }
    case Expr::Kind::Product: {
        std::string s;
        for (std::size_t k = 0; k < e.children.size(); ++k) s += (k ? "*" : "") + wrap(e.children[k], 2);
        return s;
    }
    case Expr::Kind::Power: return wrap(e.children[0], 3) + "^" + std::to_string(e.exponent);
    case Expr::Kind::DividedPower: return "dp(" + print_expr(e.children[0]) + "," + std::to_string(e.exponent) + ")";
    case Expr::Kind::Generator: return "f(" + std::to_string(e.index) + "," + std::to_string(e.level) + ")";
    case Expr::Kind::QPower:
        if (e.exponent == 2) return "q";
        if (e.exponent % 2 == 0) return "q^{" + std::to_string(e.exponent / 2) + "}";
        return "q^{" + std::to_string(e.exponent) + "/2}";
    case Expr::Kind::Integer: return std::to_string(e.value);
    }
    return "";
}

HatElem eval_expr(const Expr& e, const HatAlgebra& h) {
    switch (e.kind) {
    case Expr::Kind::Sum: {
        HatElem r;
        for (std::size_t k = 0; k < e.children.size(); ++k) {
            HatElem c = eval_expr(e.children[k], h);
            r = e.signs[k] > 0 ? r + c : r - c;
        }
        return r;
    }
    case Expr::Kind::Product: {
        HatElem r = eval_expr(e.children[0], h);
        for (std::size_t k = 1; k < e.children.size(); ++k) r = h.mul(r, eval_expr(e.children[k], h));
        return r;
    }
    case Expr::Kind::Power: {
        HatElem base = eval_expr(e.children[0], h);
        if (e.exponent >= 0) return h.pow(base, e.exponent);
        // negative powers only of nonzero scalars
        if (base.terms().size() != 1 || !base.terms().begin()->first.empty()) eval_fail("negative power of a non-scalar");
        return h.one().scaled(base.terms().begin()->second.pow(e.exponent));
    }
    case Expr::Kind::DividedPower: {
        const Expr& g = e.children[0];
        if (g.kind != Expr::Kind::Generator) eval_fail("dp expects a generator f(i,m)");
        if (g.index < 1 || static_cast<std::size_t>(g.index) > h.context().rank()) eval_fail("generator index out of range");
        return h.divided_power(g.index - 1, g.level, e.exponent);
    }
    case Expr::Kind::Generator:
        if (e.index < 1 || static_cast<std::size_t>(e.index) > h.context().rank()) eval_fail("generator index out of range");
        return h.generator(e.index - 1, e.level);
    case Expr::Kind::QPower: return h.one().scaled(RatFunc::v_pow(e.exponent));
    case Expr::Kind::Integer: return h.one().scaled(RatFunc(e.value));
    }
    return HatElem();
}

}  // namespace bosonext
