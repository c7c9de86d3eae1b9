#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bosonext/cartan.hpp"
#include "bosonext/linalg.hpp"
#include "bosonext/memo.hpp"

namespace bosonext {

/** Word in the generators f_i; letters are 0-based indices. */
using Word = std::vector<int>;

/** @brief Element of the free algebra on the f_i. No zero coefficients are stored. */
class FreeElem {
public:
    FreeElem() = default;
    static FreeElem one() { return word({}); }
    static FreeElem word(const Word& w, const RatFunc& c = RatFunc(1));
    static FreeElem generator(int i) { return word({i}); }

    const std::map<Word, RatFunc>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Word& w, const RatFunc& c);

    FreeElem& operator+=(const FreeElem& o);
    FreeElem& operator-=(const FreeElem& o);
    friend FreeElem operator+(FreeElem a, const FreeElem& b) { return a += b; }
    friend FreeElem operator-(FreeElem a, const FreeElem& b) { return a -= b; }
    friend FreeElem operator*(const FreeElem& a, const FreeElem& b);
    FreeElem scaled(const RatFunc& s) const;

    bool operator==(const FreeElem& o) const { return terms_ == o.terms_; }

private:
    std::map<Word, RatFunc> terms_;
};

/** Reverse every word (the anti-automorphism fixing each f_i). */
FreeElem star_u(const FreeElem& x);
/** Reverse every word and bar every coefficient. */
FreeElem bar_u(const FreeElem& x);

/**
 * @brief Element of U_q^-: per-depth coordinates against the cached weight-space bases.
 *
 * The depth of a weight -beta is beta; zero coordinate vectors are never stored.
 */
class UqmElem {
public:
    UqmElem() = default;
    const std::map<RootVec, Vec>& coords() const { return coords_; }
    bool is_zero() const { return coords_.empty(); }
    /** Coordinates at a depth, or an empty vector. */
    const Vec* at(const RootVec& depth) const;
    void add(const RootVec& depth, const Vec& v);
    void add_entry(const RootVec& depth, std::size_t size, std::size_t index, const RatFunc& c);

    UqmElem& operator+=(const UqmElem& o);
    UqmElem& operator-=(const UqmElem& o);
    friend UqmElem operator+(UqmElem a, const UqmElem& b) { return a += b; }
    friend UqmElem operator-(UqmElem a, const UqmElem& b) { return a -= b; }
    UqmElem scaled(const RatFunc& s) const;
    bool operator==(const UqmElem& o) const { return coords_ == o.coords_; }
    bool operator!=(const UqmElem& o) const { return !(*this == o); }

private:
    std::map<RootVec, Vec> coords_;
    void prune(const RootVec& depth);
};

/** @brief Basis of a weight space: lexicographically first form-independent words, with Gram data. */
struct WeightBasis {
    RootVec depth;
    std::vector<Word> words;
    std::map<Word, std::size_t> index;
    Mat gram;
    Mat gram_inv;
    std::size_t size() const { return words.size(); }
};

/** Sparse matrix stored by columns. */
struct SparseMat {
    std::size_t rows = 0;
    std::vector<std::vector<std::pair<std::size_t, RatFunc>>> cols;
};

/** Divided-power word (i_1, n_1), (i_2, n_2), ... with consecutive indices distinct. */
using DividedPowerWord = std::vector<std::pair<int, int>>;

/**
 * @brief Cartan datum plus the U_q^- caches: word pairings, weight bases, operator matrices.
 *
 * Thread-safe: caches are filled on demand with single insertion per key.
 */
class UqContext {
public:
    explicit UqContext(CartanDatum cartan, int height_bound = 6);

    const CartanDatum& cartan() const { return cartan_; }
    std::size_t rank() const { return cartan_.rank(); }
    int height_bound() const { return height_bound_; }

    RootVec depth(const Word& w) const;
    void check_height(const RootVec& depth) const;

    // Free-algebra level
    FreeElem e_prime(int i, const FreeElem& x) const;
    FreeElem e_star(int i, const FreeElem& x) const;
    RatFunc kform(const FreeElem& x, const FreeElem& y) const;
    RatFunc kform_words(const Word& a, const Word& b) const;
    FreeElem serre_element(int i, int j) const;
    /** sum_k (-1)^k [b choose k]_i e'_i^k e'_j e'_i^{b-k} applied to x. */
    FreeElem e_serre_apply(int i, int j, const FreeElem& x) const;
    FreeElem divided_power_free(int i, int n) const;
    FreeElem divided_power_word_free(const DividedPowerWord& w) const;
    /** E(a) L(b) target, where E(f_i) = e'_i and L(b) is left multiplication. */
    FreeElem boson_act(const FreeElem& a, const FreeElem& b, const FreeElem& target) const;

    // Weight spaces
    const WeightBasis& weight_basis(const RootVec& depth) const;
    std::vector<Word> words_of_depth(const RootVec& depth) const;
    std::vector<DividedPowerWord> divided_power_words(const RootVec& depth) const;
    /** All depths with height <= h, ordered by height then coordinates. */
    std::vector<RootVec> depths_up_to(int h) const;

    // Quotient level
    UqmElem reduce(const FreeElem& x) const;
    bool is_zero_uq(const FreeElem& x) const { return reduce(x).is_zero(); }
    UqmElem basis_element(const RootVec& depth, std::size_t j) const;
    UqmElem one() const;
    UqmElem generator(int i) const;
    FreeElem to_free(const UqmElem& x) const;
    UqmElem divided_power(int i, int n) const;
    UqmElem coords_of_word(const Word& w) const;

    const SparseMat& left_mul_mat(int i, const RootVec& depth) const;
    const SparseMat& e_star_mat(int i, const RootVec& depth) const;
    const SparseMat& e_prime_mat(int i, const RootVec& depth) const;

    UqmElem left_mul(int i, const UqmElem& x) const;
    UqmElem left_mul_word(const Word& w, const UqmElem& x) const;
    UqmElem e_prime(int i, const UqmElem& x) const;
    UqmElem e_star(int i, const UqmElem& x) const;
    UqmElem mul(const UqmElem& a, const UqmElem& b) const;
    UqmElem star(const UqmElem& x) const;
    UqmElem bar(const UqmElem& x) const;
    RatFunc kform(const UqmElem& x, const UqmElem& y) const;

private:
    CartanDatum cartan_;
    int height_bound_;

    mutable Memo<std::pair<Word, Word>, RatFunc> kform_memo_;
    mutable Memo<RootVec, WeightBasis> basis_memo_;
    mutable Memo<std::pair<int, RootVec>, SparseMat> left_mul_memo_;
    mutable Memo<std::pair<int, RootVec>, SparseMat> e_star_memo_;
    mutable Memo<std::pair<int, RootVec>, SparseMat> e_prime_memo_;

    WeightBasis build_basis(const RootVec& depth) const;
    Vec pair_with_basis(const FreeElem& x, const WeightBasis& b) const;
    UqmElem apply_sparse(const SparseMat& m, const RootVec& target, const Vec& v) const;
    UqmElem apply_op(int i, const UqmElem& x, int shift_sign,
                     const SparseMat& (UqContext::*mat)(int, const RootVec&) const) const;
};

}  // namespace bosonext
