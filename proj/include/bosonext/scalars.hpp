#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <vector>

namespace bosonext {

/**
 * @brief Laurent polynomial in v = q^{1/2} with arbitrary-precision integer coefficients.
 *
 * Stored densely from the lowest nonzero exponent; the zero polynomial has no coefficients.
 */
class LaurentHalf {
public:
    LaurentHalf() = default;
    LaurentHalf(long c);  // NOLINT(google-explicit-constructor)
    explicit LaurentHalf(const mpz_class& c);

    static LaurentHalf monomial(const mpz_class& c, int v_exp);
    static LaurentHalf from_coeffs(int low, std::vector<mpz_class> coeffs);

    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    bool is_constant() const { return c_.size() <= 1 && (c_.empty() || low_ == 0); }
    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
    std::size_t size() const { return c_.size(); }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    mpz_class coeff(int v_exp) const;
    const mpz_class& lead() const { return c_.back(); }

    LaurentHalf& operator+=(const LaurentHalf& o);
    LaurentHalf& operator-=(const LaurentHalf& o);
    LaurentHalf& operator*=(const LaurentHalf& o);
    friend LaurentHalf operator+(LaurentHalf a, const LaurentHalf& b) { return a += b; }
    friend LaurentHalf operator-(LaurentHalf a, const LaurentHalf& b) { return a -= b; }
    friend LaurentHalf operator*(const LaurentHalf& a, const LaurentHalf& b);
    LaurentHalf operator-() const;

    LaurentHalf shifted(int k) const;
    LaurentHalf scaled(const mpz_class& s) const;
    LaurentHalf bar() const;
    /** Positive gcd of the coefficients (0 for the zero polynomial). */
    mpz_class content() const;

    bool operator==(const LaurentHalf& o) const { return low_ == o.low_ && c_ == o.c_; }
    bool operator!=(const LaurentHalf& o) const { return !(*this == o); }

private:
    int low_ = 0;
    std::vector<mpz_class> c_;
    void trim();
};

/** gcd in Z[v] up to powers of v; lowest exponent 0 and positive leading coefficient. */
LaurentHalf poly_gcd(const LaurentHalf& a, const LaurentHalf& b);
/** Exact quotient a/b in Z[v^{+-1}]; throws if b does not divide a. */
LaurentHalf poly_divexact(const LaurentHalf& a, const LaurentHalf& b);

/**
 * @brief Element of Q(q^{1/2}) as a reduced fraction num/den of integer Laurent polynomials in v.
 *
 * Invariant: den has lowest exponent 0 and positive leading coefficient, gcd(num, den) = 1.
 */
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    RatFunc(const LaurentHalf& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
    RatFunc(const LaurentHalf& n, const LaurentHalf& d);

    static RatFunc v_pow(int k) { return RatFunc(LaurentHalf::monomial(1, k)); }
    static RatFunc q_pow(int k) { return v_pow(2 * k); }

    const LaurentHalf& num() const { return num_; }
    const LaurentHalf& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    RatFunc operator-() const;

    RatFunc inv() const;
    RatFunc bar() const;
    RatFunc pow(int e) const;
    /** Multiply by v^k without renormalizing the denominator. */
    RatFunc shifted(int k) const;

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    LaurentHalf num_;
    LaurentHalf den_;
    void normalize();
};

RatFunc add(const RatFunc& x, const RatFunc& y);
RatFunc mul(const RatFunc& x, const RatFunc& y);
RatFunc inv(const RatFunc& x);
RatFunc neg(const RatFunc& x);
RatFunc bar(const RatFunc& x);

/** Coefficients of v^0..v^{N-1} of the expansion at v = 0. Throws NotRegularAtZero on a pole. */
std::vector<mpq_class> series_at_zero(const RatFunc& x, int N);
/** True iff every entry of series_at_zero(x, N) is an integer. */
bool series_is_integral(const std::vector<mpq_class>& s);

bool is_laurent(const RatFunc& x);
bool is_integer_laurent(const RatFunc& x);
bool is_integer_laurent_whole_powers(const RatFunc& x);

/** v-adic valuation of a nonzero element. */
int valuation(const RatFunc& x);

/** Evaluate at v = value (rational); debug cross-checks only. Throws DivisionByZero. */
mpq_class specialize(const RatFunc& x, const mpq_class& value);

/** Quantum integer [n] in the variable t = q^d: (t^n - t^{-n})/(t - t^{-1}). */
LaurentHalf q_integer(int n, int d);
LaurentHalf q_factorial(int n, int d);
LaurentHalf q_binomial(int n, int k, int d);

std::string to_string(const LaurentHalf& p);
std::ostream& operator<<(std::ostream& os, const RatFunc& x);

}  // namespace bosonext
