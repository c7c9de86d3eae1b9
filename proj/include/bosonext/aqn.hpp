#pragma once

#include <map>
#include <memory>
#include <vector>

#include "bosonext/uqneg.hpp"

namespace bosonext {

/**
 * @brief Element f of the quantum unipotent coordinate ring, stored as its carrier u with f = iota(u).
 *
 * iota is an algebra isomorphism, so products are products of carriers. The depth of a component is minus its weight.
 */
struct AqnElem {
    UqmElem carrier;

    bool is_zero() const { return carrier.is_zero(); }
    AqnElem& operator+=(const AqnElem& o) {
        carrier += o.carrier;
        return *this;
    }
    AqnElem& operator-=(const AqnElem& o) {
        carrier -= o.carrier;
        return *this;
    }
    friend AqnElem operator+(AqnElem a, const AqnElem& b) { return a += b; }
    friend AqnElem operator-(AqnElem a, const AqnElem& b) { return a -= b; }
    AqnElem scaled(const RatFunc& s) const { return AqnElem{carrier.scaled(s)}; }
    bool operator==(const AqnElem& o) const { return carrier == o.carrier; }
    bool operator!=(const AqnElem& o) const { return !(*this == o); }
};

AqnElem aqn_one(const UqContext& ctx);
/** The dual generator <i>, with carrier (1 - q_i^2) f_i. */
AqnElem aqn_generator(const UqContext& ctx, int i);
/** iota(u). */
inline AqnElem aqn_iota(const UqmElem& u) { return AqnElem{u}; }
AqnElem aqn_mul(const UqContext& ctx, const AqnElem& a, const AqnElem& b);
/** <ij> = (<i><j> - q^{-(a_i,a_j)} <j><i>) / (1 - q^{-2(a_i,a_j)}); requires (a_i, a_j) < 0. */
AqnElem aqn_ij(const UqContext& ctx, int i, int j);

/** Canonical pairing <f, u> of the coordinate ring with U_q^-. */
RatFunc pair_against_U(const UqContext& ctx, const AqnElem& f, const UqmElem& u);
/** <<x, y>> = <x, iota^{-1}(y)>. */
RatFunc aform(const UqContext& ctx, const AqnElem& x, const AqnElem& y);

/** The twisted bar map c, computed on products of dual generators. */
AqnElem c_map(const UqContext& ctx, const AqnElem& f);

/** Membership in the Z[q^{+-1}]-form: pairings with all divided-power words are integral Laurent polynomials. */
bool is_integral_aqn(const UqContext& ctx, const AqnElem& f);
/** iota(zeta_i^{-n} e_i'^{(n)}(carrier)). */
AqnElem zeta_scaled_eprime(const UqContext& ctx, int i, int n, const AqnElem& f);
/** Integral with self-pairing regular at q = 0 and integral series prefix of the given depth. */
bool lup_member(const UqContext& ctx, const AqnElem& f, int series_depth = 8);

/** Exponent vector a = (a_1, ..., a_l) over the convex order of positive roots. */
using PbwExp = std::vector<int>;

/** @brief Upper global basis elements of one weight, with their expansion in dual PBW monomials. */
struct GupBlock {
    RootVec depth;
    std::vector<PbwExp> index;
    std::map<PbwExp, std::size_t> pos;
    std::vector<AqnElem> monomials;   // M(a)
    std::vector<AqnElem> elements;    // G^up(a)
    Mat g_in_m;                       // row a: coordinates of G^up(a) over the M(a')
    Mat c_in_m;                       // row a: coordinates of c(M(a)) over the M(a')
};

/**
 * @brief Dual PBW vectors, monomials and the upper global basis attached to a reduced word of w_0.
 *
 * Finite type only. Letters of the reduced word are 0-based.
 */
class DualPbw {
public:
    /** An empty word selects the lexicographically smallest reduced word. */
    explicit DualPbw(const UqContext& ctx, std::vector<int> reduced_word = {});

    const UqContext& context() const { return ctx_; }
    const std::vector<int>& reduced_word() const { return word_; }
    /** beta_1 < ... < beta_l in the convex order. */
    const std::vector<RootVec>& roots() const { return roots_; }
    std::size_t length() const { return roots_.size(); }

    /** F(beta_k), 0-based k. */
    const AqnElem& root_vector(std::size_t k) const { return root_vectors_[k]; }
    /** True when F(beta_k) came from the bracket of a minimal pair rather than the orthogonal complement. */
    bool from_bracket(std::size_t k) const { return from_bracket_[k]; }

    RootVec depth_of(const PbwExp& a) const;
    /** All exponent vectors of the given depth, in lexicographic order. */
    std::vector<PbwExp> exponents_of_depth(const RootVec& depth) const;
    /** F(beta_l)^{a_l} ... F(beta_1)^{a_1} without the normalizing power. */
    AqnElem ordered_product(const PbwExp& a) const;
    /** M(a) = q^A times the ordered product, with self-pairing in 1 + qZ[[q]]. */
    AqnElem monomial(const PbwExp& a) const;
    /** The exponent A of M(a), in units of q^{1/2}. */
    int monomial_shift(const PbwExp& a) const;

    const GupBlock& gup_block(const RootVec& depth) const;
    const AqnElem& gup(const PbwExp& a) const;
    /** All blocks with height at most h. */
    std::vector<const GupBlock*> upper_global_basis(int max_height) const;

private:
    const UqContext& ctx_;
    std::vector<int> word_;
    std::vector<RootVec> roots_;
    std::vector<AqnElem> root_vectors_;
    std::vector<bool> from_bracket_;
    mutable Memo<RootVec, GupBlock> blocks_;

    void build_root_vectors();
    AqnElem normalize_root_vector(const AqnElem& x, const RootVec& depth) const;
    bool orthogonal_to_others(const AqnElem& x, std::size_t k) const;
    GupBlock build_block(const RootVec& depth) const;
};

/** Roots beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}); throws InvalidArgument unless the word is reduced for w_0. */
std::vector<RootVec> convex_order(const CartanDatum& cartan, const std::vector<int>& reduced_word);

/** Smallest s such that s x has integral, primitive pairings with the divided-power words of its depth. */
RatFunc primitive_scale(const UqContext& ctx, const AqnElem& x, const RootVec& depth);

}  // namespace bosonext
