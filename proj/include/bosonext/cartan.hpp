#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "bosonext/scalars.hpp"

namespace bosonext {

/** @brief Element of the root lattice in simple-root coordinates. */
struct RootVec {
    std::vector<int> c;

    RootVec() = default;
    explicit RootVec(std::size_t n) : c(n, 0) {}
    explicit RootVec(std::vector<int> v) : c(std::move(v)) {}

    static RootVec simple(std::size_t n, int i);

    std::size_t size() const { return c.size(); }
    int operator[](std::size_t i) const { return c[i]; }
    int& operator[](std::size_t i) { return c[i]; }
    bool is_zero() const;

    RootVec& operator+=(const RootVec& o);
    RootVec& operator-=(const RootVec& o);
    friend RootVec operator+(RootVec a, const RootVec& b) { return a += b; }
    friend RootVec operator-(RootVec a, const RootVec& b) { return a -= b; }
    RootVec operator-() const;
    friend RootVec operator*(int s, RootVec a);

    bool operator==(const RootVec& o) const { return c == o.c; }
    bool operator!=(const RootVec& o) const { return c != o.c; }
    bool operator<(const RootVec& o) const { return c < o.c; }
};

std::string to_string(const RootVec& b);
std::ostream& operator<<(std::ostream& os, const RootVec& b);

int ht(const RootVec& b);
RootVec norm_abs(const RootVec& b);
/** a <= b in the dominance order: b - a has nonnegative coordinates. */
bool leq_Q(const RootVec& a, const RootVec& b);
bool is_nonnegative(const RootVec& b);

/**
 * @brief Symmetrizable generalized Cartan matrix c with symmetrizer d, (alpha_i, alpha_j) = d_i c_ij.
 */
class CartanDatum {
public:
    CartanDatum(std::vector<std::vector<int>> c, std::vector<int> d, std::string name = "");

    /** Named presets: An, Bn, Cn, Dn, E6-E8, F4, G2, and A1(1) for [[2,-2],[-2,2]]. */
    static CartanDatum preset(const std::string& name);
    /** Text format: n, then n rows of c, then one row of d. */
    static CartanDatum parse(const std::string& text, const std::string& name = "file");
    static CartanDatum from_file(const std::string& path);

    std::size_t rank() const { return n_; }
    const std::string& name() const { return name_; }
    int c(std::size_t i, std::size_t j) const { return c_[i][j]; }
    int d(std::size_t i) const { return d_[i]; }
    const std::vector<std::vector<int>>& matrix() const { return c_; }
    const std::vector<int>& symmetrizer() const { return d_; }
    /** Canonical text used as part of cache keys. */
    std::string signature() const;

    RootVec simple(int i) const { return RootVec::simple(n_, i); }
    RootVec zero() const { return RootVec(n_); }

    int form(const RootVec& a, const RootVec& b) const;
    int form_simple(int i, int j) const { return d_[static_cast<std::size_t>(i)] * c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    /** <h_i, beta> = sum_j c_ij beta_j. */
    int pairing(int i, const RootVec& b) const;
    int N_quad(const RootVec& a) const;

    /** prod_i (1 - q_i^{2 sign})^{n_i}; beta must be nonnegative. */
    RatFunc zeta_pow(const RootVec& b, int sign = 1) const;
    /** prod_i q_i^{n_i}. */
    RatFunc qq_pow(const RootVec& b) const;
    /** q_i^k as an element of Q(q^{1/2}). */
    RatFunc qi_pow(int i, int k) const { return RatFunc::q_pow(d_[static_cast<std::size_t>(i)] * k); }
    /** (-1)^m alpha_i. */
    RootVec alpha_level(int i, int m) const;

    RootVec reflect(int i, const RootVec& b) const;
    bool is_finite_type() const;
    /** Positive roots ordered by height then coordinates; finite type only. */
    std::vector<RootVec> positive_roots() const;
    /** Lexicographically smallest reduced word of the longest element; finite type only. */
    std::vector<int> default_reduced_word() const;

private:
    std::size_t n_;
    std::vector<std::vector<int>> c_;
    std::vector<int> d_;
    std::string name_;
};

}  // namespace bosonext
