#pragma once

#include <compare>
#include <map>
#include <vector>

#include "bosonext/aqn.hpp"

namespace bosonext {

/** Generator f_{i,m}; i is 0-based. */
struct LevelLetter {
    int i = 0;
    int m = 0;
    auto operator<=>(const LevelLetter&) const = default;
};

/** Word f_{i_1,m_1} ... f_{i_r,m_r}. */
using HatWord = std::vector<LevelLetter>;
/** Unreduced linear combination of words. */
using HatPoly = std::map<HatWord, RatFunc>;

/** One tensor factor of a normal monomial: basis element index of the weight basis at depth, placed at a level. */
struct LevelCoord {
    int level = 0;
    RootVec depth;
    std::size_t index = 0;
    bool operator==(const LevelCoord& o) const { return level == o.level && depth == o.depth && index == o.index; }
    bool operator<(const LevelCoord& o) const {
        if (level != o.level) return level < o.level;
        if (depth != o.depth) return depth < o.depth;
        return index < o.index;
    }
};

/** Levels strictly decrease; depths are nonzero. The empty key is the unit. */
using NormalKey = std::vector<LevelCoord>;

/**
 * @brief Linear combination of normal monomials L_b(u_b) ... L_a(u_a) with basis factors u_k.
 *
 * The same coordinates describe an element of the bosonic extension and a vector of the module U_Z;
 * the two are identified by G and F. No zero coefficients are stored.
 */
class SerialVec {
public:
    const std::map<NormalKey, RatFunc>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const NormalKey& k, const RatFunc& c);
    RatFunc coeff(const NormalKey& k) const;

    SerialVec& operator+=(const SerialVec& o);
    SerialVec& operator-=(const SerialVec& o);
    SerialVec scaled(const RatFunc& s) const;
    bool operator==(const SerialVec& o) const { return terms_ == o.terms_; }
    bool operator!=(const SerialVec& o) const { return !(*this == o); }

private:
    std::map<NormalKey, RatFunc> terms_;
};

/** @brief Element of the bosonic extension in normal form (higher levels to the left). */
struct HatElem : SerialVec {
    HatElem() = default;
    explicit HatElem(SerialVec v) : SerialVec(std::move(v)) {}
    friend HatElem operator+(HatElem a, const HatElem& b) { return HatElem(a += b); }
    friend HatElem operator-(HatElem a, const HatElem& b) { return HatElem(a -= b); }
    HatElem scaled(const RatFunc& s) const { return HatElem(SerialVec::scaled(s)); }
};

/** @brief Vector of U_Z = ... (x) U_{k+1} (x) U_k (x) ..., expanded over tensors of basis elements. */
struct TensorState : SerialVec {
    TensorState() = default;
    explicit TensorState(SerialVec v) : SerialVec(std::move(v)) {}
    friend TensorState operator+(TensorState a, const TensorState& b) { return TensorState(a += b); }
    friend TensorState operator-(TensorState a, const TensorState& b) { return TensorState(a -= b); }
    TensorState scaled(const RatFunc& s) const { return TensorState(SerialVec::scaled(s)); }
};

/** Weight of f_{i,m}: (-1)^{m+1} alpha_i. */
RootVec letter_weight(const CartanDatum& c, const LevelLetter& l);
RootVec key_weight(const NormalKey& k);
/** Depth profile of a key: level -> depth. */
std::map<int, RootVec> key_profile(const NormalKey& k);

/**
 * @brief The bosonic extension of a Cartan datum with its faithful module.
 *
 * Thread-safe: the word normalization cache has single insertion per key.
 */
class HatAlgebra {
public:
    explicit HatAlgebra(const UqContext& ctx) : ctx_(ctx) {}
    const UqContext& context() const { return ctx_; }
    const CartanDatum& cartan() const { return ctx_.cartan(); }

    HatElem one() const;
    HatElem generator(int i, int m) const;
    /** f_{i,m}^n. */
    HatElem generator_power(int i, int m, int n) const;
    /** f_{i,m}^{(n)}. */
    HatElem divided_power(int i, int m, int n) const;
    /** The word a letter sequence of a normal monomial spells out. */
    HatWord word_of(const NormalKey& k) const;

    /** Normal form by rewriting adjacent inversions, then reducing each level block. */
    HatElem normalize_word(const HatWord& w) const;
    HatElem normalize(const HatPoly& x) const;

    // Module
    TensorState unit_state() const;
    TensorState act_f(int i, int m, const TensorState& s) const;
    /** Letters act right to left. */
    TensorState act_word(const HatWord& w, const TensorState& s) const;
    TensorState act(const HatElem& x, const TensorState& s) const;
    TensorState tensor(const std::map<int, UqmElem>& levels) const;
    TensorState F_map(const HatElem& x) const;
    HatElem G_map(const TensorState& s) const { return HatElem(static_cast<const SerialVec&>(s)); }

    HatElem mul(const HatElem& x, const HatElem& y) const;
    HatElem pow(const HatElem& x, int n) const;

    HatElem L_m(const UqmElem& u, int m) const;
    HatElem phi_m(const AqnElem& f, int m) const;
    /** The factor at level m of an element of the single-level subalgebra at m, as an AqnElem. */
    AqnElem phi_m_inverse(const HatElem& x, int m) const;

    // (Anti)automorphisms
    HatElem shiftD(const HatElem& x) const;
    HatElem shiftD_inverse(const HatElem& x) const;
    HatElem bar_h(const HatElem& x) const;
    HatElem antiD(const HatElem& x) const;
    HatElem star_h(const HatElem& x) const;
    HatElem c_h(const HatElem& x) const;
    HatElem sigma_h(const HatElem& x) const;

    /** Splits x into homogeneous components. */
    std::map<RootVec, HatElem> components(const HatElem& x) const;
    /** Weight of a homogeneous nonzero element; throws InhomogeneousInput otherwise. */
    RootVec weight(const HatElem& x) const;

    HatElem E_op(int i, int m, const HatElem& x) const;
    HatElem Estar_op(int i, int m, const HatElem& x) const;
    HatElem E_div(int i, int m, int n, const HatElem& x) const;
    HatElem Estar_div(int i, int m, int n, const HatElem& x) const;
    /** [x, y]_q = xy - q^{-(wt x, wt y)} yx, per homogeneous components. */
    HatElem qbracket(const HatElem& x, const HatElem& y) const;

    RatFunc Mn(const HatElem& x) const;
    RatFunc hform(const HatElem& x, const HatElem& y) const;
    /** q^{-N(wt x)} hform(x, y); throws InhomogeneousInput unless both are homogeneous. */
    RatFunc pairform(const HatElem& x, const HatElem& y) const;

    /** Membership in the Z[q^{+-1}]-form generated by the phi_k(A_Z(n)). */
    bool is_integral_hat(const HatElem& x) const;
    /** Sum of level heights of a product of homogeneous level factors. */
    int ht_strong(const HatElem& x) const;

private:
    const UqContext& ctx_;
    mutable Memo<HatWord, HatElem> word_memo_;

    RatFunc mn_of_action(const HatWord& w, const TensorState& s) const;
};

}  // namespace bosonext
