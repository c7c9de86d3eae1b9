#include "bosonext/scalars.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "bosonext/error.hpp"

namespace bosonext {

namespace {

using Poly = std::vector<mpz_class>;  // index = exponent

void ptrim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

mpz_class pcontent(const Poly& p) {
    mpz_class g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

void pdiv_scalar(Poly& p, const mpz_class& s) {
    if (s == 1) return;
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
}

void pmake_primitive(Poly& p) {
    if (p.empty()) return;
    pdiv_scalar(p, pcontent(p));
}

// Pseudo-remainder of a by b, kept primitive after every step.
Poly pprem(Poly a, const Poly& b) {
    const mpz_class& lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        mpz_class la = a.back();
        std::size_t shift = a.size() - b.size();
        for (auto& c : a) c *= lb;
        for (std::size_t k = 0; k < b.size(); ++k) {
            mpz_submul(a[k + shift].get_mpz_t(), la.get_mpz_t(), b[k].get_mpz_t());
        }
        ptrim(a);
        pmake_primitive(a);
    }
    return a;
}

Poly pgcd(Poly a, Poly b) {
    ptrim(a);
    ptrim(b);
    if (a.empty() && b.empty()) return {};
    if (a.empty()) std::swap(a, b);
    if (b.empty()) {
        if (a.back() < 0)
            for (auto& c : a) c = -c;
        return a;
    }
    mpz_class ca = pcontent(a), cb = pcontent(b), c;
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    pdiv_scalar(a, ca);
    pdiv_scalar(b, cb);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        if (b.size() == 1) {
            a = Poly{1};
            break;
        }
        Poly r = pprem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.back() < 0)
        for (auto& x : a) x = -x;
    for (auto& x : a) x *= c;
    return a;
}

Poly pdivexact(const Poly& a, const Poly& b) {
    if (a.empty()) return {};
    if (b.empty()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    if (a.size() < b.size()) throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
    Poly r = a;
    Poly q(a.size() - b.size() + 1);
    const mpz_class& lb = b.back();
    for (std::size_t k = q.size(); k-- > 0;) {
        mpz_class& top = r[k + b.size() - 1];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t()))
            throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
        mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        for (std::size_t j = 0; j < b.size(); ++j) {
            mpz_submul(r[k + j].get_mpz_t(), q[k].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    for (const auto& c : r)
        if (c != 0) throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
    ptrim(q);
    return q;
}

std::string render_exponent(int v_exp) {
    // v^e = q^{e/2}
    if (v_exp == 2) return "q";
    std::ostringstream os;
    if (v_exp % 2 == 0) {
        int e = v_exp / 2;
        if (e > 0) {
            os << "q^" << e;
        } else {
            os << "q^{" << e << "}";
        }
    } else {
        os << "q^{" << v_exp << "/2}";
    }
    return os.str();
}

std::string render_poly(const LaurentHalf& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const mpz_class& c = p.coeffs()[k];
        if (c == 0) continue;
        int e = p.low() + static_cast<int>(k);
        mpz_class a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << render_exponent(e);
        }
    }
    return os.str();
}

int nonzero_terms(const LaurentHalf& p) {
    int n = 0;
    for (const auto& c : p.coeffs())
        if (c != 0) ++n;
    return n;
}

}  // namespace

// ---------------------------------------------------------------- LaurentHalf

LaurentHalf::LaurentHalf(long c) {
    if (c != 0) c_.emplace_back(c);
}

LaurentHalf::LaurentHalf(const mpz_class& c) {
    if (c != 0) c_.push_back(c);
}

LaurentHalf LaurentHalf::monomial(const mpz_class& c, int v_exp) {
    LaurentHalf p;
    if (c != 0) {
        p.c_.push_back(c);
        p.low_ = v_exp;
    }
    return p;
}

LaurentHalf LaurentHalf::from_coeffs(int low, std::vector<mpz_class> coeffs) {
    LaurentHalf p;
    p.low_ = low;
    p.c_ = std::move(coeffs);
    p.trim();
    return p;
}

bool LaurentHalf::is_one() const { return c_.size() == 1 && low_ == 0 && c_[0] == 1; }

mpz_class LaurentHalf::coeff(int v_exp) const {
    if (c_.empty() || v_exp < low_ || v_exp > high()) return 0;
    return c_[static_cast<std::size_t>(v_exp - low_)];
}

void LaurentHalf::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    std::size_t lead_zeros = 0;
    while (lead_zeros < c_.size() && c_[lead_zeros] == 0) ++lead_zeros;
    if (lead_zeros > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead_zeros));
        low_ += static_cast<int>(lead_zeros);
    }
    if (c_.empty()) low_ = 0;
}

LaurentHalf& LaurentHalf::operator+=(const LaurentHalf& o) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) return *this = o;
    int lo = std::min(low_, o.low_);
    int hi = std::max(high(), o.high());
    if (lo < low_) {
        c_.insert(c_.begin(), static_cast<std::size_t>(low_ - lo), mpz_class(0));
        low_ = lo;
    }
    if (static_cast<int>(c_.size()) < hi - lo + 1) c_.resize(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[static_cast<std::size_t>(o.low_ - lo) + k] += o.c_[k];
    trim();
    return *this;
}

LaurentHalf& LaurentHalf::operator-=(const LaurentHalf& o) { return *this += -o; }

LaurentHalf operator*(const LaurentHalf& a, const LaurentHalf& b) {
    LaurentHalf r;
    if (a.c_.empty() || b.c_.empty()) return r;
    r.low_ = a.low_ + b.low_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            mpz_addmul(r.c_[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        }
    }
    r.trim();
    return r;
}

LaurentHalf& LaurentHalf::operator*=(const LaurentHalf& o) { return *this = *this * o; }

LaurentHalf LaurentHalf::operator-() const {
    LaurentHalf r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

LaurentHalf LaurentHalf::shifted(int k) const {
    LaurentHalf r = *this;
    if (!r.c_.empty()) r.low_ += k;
    return r;
}

LaurentHalf LaurentHalf::scaled(const mpz_class& s) const {
    if (s == 0) return LaurentHalf();
    LaurentHalf r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

LaurentHalf LaurentHalf::bar() const {
    LaurentHalf r;
    if (c_.empty()) return r;
    r.c_.assign(c_.rbegin(), c_.rend());
    r.low_ = -high();
    return r;
}

mpz_class LaurentHalf::content() const { return pcontent(c_); }

LaurentHalf poly_gcd(const LaurentHalf& a, const LaurentHalf& b) {
    return LaurentHalf::from_coeffs(0, pgcd(a.coeffs(), b.coeffs()));
}

LaurentHalf poly_divexact(const LaurentHalf& a, const LaurentHalf& b) {
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero polynomial");
    if (a.is_zero()) return a;
    return LaurentHalf::from_coeffs(a.low() - b.low(), pdivexact(a.coeffs(), b.coeffs()));
}

LaurentHalf q_integer(int n, int d) {
    // [n]_t = sum_{k=0}^{n-1} t^{n-1-2k}, t = v^{2d}
    if (n == 0) return LaurentHalf();
    int sign = 1;
    if (n < 0) {
        n = -n;
        sign = -1;
    }
    LaurentHalf r;
    for (int k = 0; k < n; ++k) r += LaurentHalf::monomial(sign, 2 * d * (n - 1 - 2 * k));
    return r;
}

LaurentHalf q_factorial(int n, int d) {
    LaurentHalf r(1);
    for (int k = 2; k <= n; ++k) r *= q_integer(k, d);
    return r;
}

LaurentHalf q_binomial(int n, int k, int d) {
    if (k < 0 || k > n) return LaurentHalf();
    return poly_divexact(q_factorial(n, d), q_factorial(k, d) * q_factorial(n - k, d));
}

std::string to_string(const LaurentHalf& p) { return render_poly(p); }

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const LaurentHalf& n, const LaurentHalf& d) : num_(n), den_(d) { normalize(); }

void RatFunc::normalize() {
    if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    if (num_.is_zero()) {
        den_ = LaurentHalf(1);
        return;
    }
    if (den_.is_one()) return;
    if (den_.low() != 0) {
        int s = den_.low();
        num_ = num_.shifted(-s);
        den_ = den_.shifted(-s);
    }
    if (den_.size() == 1) {
        mpz_class g = num_.content();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.coeffs()[0].get_mpz_t());
        if (den_.coeffs()[0] < 0) g = -g;
        if (g != 1) {
            num_ = LaurentHalf::from_coeffs(num_.low(), [&] {
                Poly p = num_.coeffs();
                pdiv_scalar(p, g);
                return p;
            }());
            den_ = LaurentHalf(mpz_class(den_.coeffs()[0] / g));
        }
        return;
    }
    Poly g = pgcd(num_.coeffs(), den_.coeffs());
    if (!(g.size() == 1 && g[0] == 1)) {
        num_ = LaurentHalf::from_coeffs(num_.low(), pdivexact(num_.coeffs(), g));
        den_ = LaurentHalf::from_coeffs(0, pdivexact(den_.coeffs(), g));
    }
    if (den_.lead() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_.is_one() && o.den_.is_one()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
        normalize();
        return *this;
    }
    if (o.den_.is_one()) {
        num_ += o.num_ * den_;
        return *this;
    }
    if (den_.is_one()) {
        num_ = num_ * o.den_ + o.num_;
        den_ = o.den_;
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (is_zero() || o.is_zero()) {
        num_ = LaurentHalf();
        den_ = LaurentHalf(1);
        return *this;
    }
    if (den_.is_one() && o.den_.is_one()) {
        num_ *= o.num_;
        return *this;
    }
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inv(); }

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::inv() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::bar() const { return RatFunc(num_.bar(), den_.bar()); }

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return inv().pow(-e);
    RatFunc r(1), b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

RatFunc RatFunc::shifted(int k) const {
    RatFunc r = *this;
    r.num_ = r.num_.shifted(k);
    return r;
}

std::string RatFunc::to_string() const {
    if (den_.is_one()) return render_poly(num_);
    std::string n = render_poly(num_);
    std::string d = render_poly(den_);
    if (nonzero_terms(num_) > 1) n = "(" + n + ")";
    if (nonzero_terms(den_) > 1) d = "(" + d + ")";
    return n + "/" + d;
}

std::ostream& operator<<(std::ostream& os, const RatFunc& x) { return os << x.to_string(); }

RatFunc add(const RatFunc& x, const RatFunc& y) { return x + y; }
RatFunc mul(const RatFunc& x, const RatFunc& y) { return x * y; }
RatFunc inv(const RatFunc& x) { return x.inv(); }
RatFunc neg(const RatFunc& x) { return -x; }
RatFunc bar(const RatFunc& x) { return x.bar(); }

std::vector<mpq_class> series_at_zero(const RatFunc& x, int N) {
    std::vector<mpq_class> out(static_cast<std::size_t>(std::max(N, 0)));
    if (x.is_zero() || N <= 0) return out;
    const LaurentHalf& n = x.num();
    const LaurentHalf& d = x.den();  // lowest exponent 0, d(0) != 0
    if (n.low() < 0) throw Error(ErrorCode::NotRegularAtZero, "pole at q = 0: " + x.to_string());
    int shift = n.low();
    // s = n'/d with n' = n / v^shift; out[k] = s[k - shift]
    int need = N - shift;
    std::vector<mpq_class> s(static_cast<std::size_t>(std::max(need, 0)));
    mpq_class d0(d.coeffs()[0]);
    for (int j = 0; j < need; ++j) {
        mpq_class acc(j < static_cast<int>(n.size()) ? n.coeffs()[static_cast<std::size_t>(j)] : mpz_class(0));
        for (int t = 1; t <= j && t < static_cast<int>(d.size()); ++t) {
            acc -= mpq_class(d.coeffs()[static_cast<std::size_t>(t)]) * s[static_cast<std::size_t>(j - t)];
        }
        s[static_cast<std::size_t>(j)] = acc / d0;
    }
    for (int k = shift; k < N; ++k) out[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k - shift)];
    return out;
}

bool series_is_integral(const std::vector<mpq_class>& s) {
    return std::all_of(s.begin(), s.end(), [](const mpq_class& c) { return c.get_den() == 1; });
}

bool is_laurent(const RatFunc& x) { return x.den().is_constant(); }

bool is_integer_laurent(const RatFunc& x) { return x.den().is_one(); }

bool is_integer_laurent_whole_powers(const RatFunc& x) {
    if (!x.den().is_one()) return false;
    const LaurentHalf& n = x.num();
    for (std::size_t k = 0; k < n.size(); ++k) {
        int e = n.low() + static_cast<int>(k);
        if (n.coeffs()[k] != 0 && (e % 2 != 0)) return false;
    }
    return true;
}

int valuation(const RatFunc& x) {
    if (x.is_zero()) throw Error(ErrorCode::InvalidArgument, "valuation of zero");
    return x.num().low();
}

mpq_class specialize(const RatFunc& x, const mpq_class& value) {
    auto eval = [&](const LaurentHalf& p) {
        mpq_class acc = 0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            int e = p.low() + static_cast<int>(k);
            mpq_class pw = 1;
            mpq_class base = e >= 0 ? value : mpq_class(1) / value;
            for (int t = 0; t < std::abs(e); ++t) pw *= base;
            acc += mpq_class(p.coeffs()[k]) * pw;
        }
        return acc;
    };
    if (value == 0) throw Error(ErrorCode::DivisionByZero, "specialize at v = 0");
    mpq_class d = eval(x.den());
    if (d == 0) throw Error(ErrorCode::DivisionByZero, "specialization hits a pole");
    return eval(x.num()) / d;
}

}  // namespace bosonext
