#pragma once

#include <map>
#include <string>
#include <vector>

#include "bosonext/bosonic.hpp"

namespace bosonext {

/** Level -> PBW exponent vector; zero vectors are never stored. The empty index is the unit. */
using ExtIndex = std::map<int, PbwExp>;
/** Coordinates over an indexed basis. */
using IndexCoords = std::map<ExtIndex, RatFunc>;

std::string to_string(const ExtIndex& b);

/** @brief Global basis element with its expansion over the P-basis. */
struct GBEntry {
    ExtIndex index;
    HatElem element;
    RootVec weight;
    IndexCoords in_p;  // G(b) = sum in_p[b'] P(b'); in_p[b] = 1
};

/** One pair of the star check: G(b)^star = G(image). */
struct StarPair {
    ExtIndex index;
    ExtIndex image;
};

/**
 * @brief The global basis of the bosonic extension for a finite-type datum and a reduced word.
 *
 * Thread-safe: G entries are memoized with single insertion per index.
 */
class GlobalBasis {
public:
    GlobalBasis(const HatAlgebra& h, const DualPbw& pbw);
    const HatAlgebra& algebra() const { return h_; }
    const DualPbw& pbw() const { return pbw_; }

    /** Drops zero exponent vectors; throws InvalidArgument on a wrong length or a negative entry. */
    ExtIndex canonical(const ExtIndex& b) const;
    std::map<int, RootVec> depth_profile(const ExtIndex& b) const;
    RootVec weight(const ExtIndex& b) const;
    /** Sum over levels of ht(depth). */
    int strong_height(const ExtIndex& b) const;
    /** Levelwise dominance of depths. */
    bool preceq(const ExtIndex& a, const ExtIndex& b) const;
    bool prec(const ExtIndex& a, const ExtIndex& b) const { return preceq(a, b) && !preceq(b, a); }
    /** Indices with levels in [lo, hi] and strong height <= max_height, ordered by strong height. */
    std::vector<ExtIndex> indices(int lo, int hi, int max_height) const;
    /** The indices of the given weight among indices(lo, hi, max_height). */
    std::vector<ExtIndex> block(const RootVec& weight, int lo, int hi, int max_height) const;

    HatElem P(const ExtIndex& b) const;
    /** Coordinates over the P-basis; exact for every element. */
    IndexCoords expand_in_P(const HatElem& x) const;

    const GBEntry& G(const ExtIndex& b) const;
    /** v^{-N(wt)} G(b). */
    HatElem G_tilde(const ExtIndex& b) const;
    /** Coordinates over the G-basis. Throws NotInSpan if peeling leaves a remainder. */
    IndexCoords expand_in_G(const HatElem& x) const;
    /** Coordinates over the normalized basis. */
    IndexCoords expand_in_G_tilde(const HatElem& x) const;

    /** Ordered product of phi_k(M(c_k)). */
    HatElem M_monomial(const ExtIndex& c) const;
    /** v^{-N(wt)} M(c). */
    HatElem E_standard(const ExtIndex& c) const;

    /** Checks that star maps {G(b) : b in the block} onto the block of levels [-hi, -lo]; throws SetMismatch. */
    std::vector<StarPair> star_orbit_check(const RootVec& weight, int lo, int hi, int max_height) const;

    /** Merges previously saved entries for this datum and reduced word; returns how many were loaded. */
    std::size_t load_cache(const std::string& path) const;
    /** Writes all computed entries, keeping tables of other data already in the file. */
    void save_cache(const std::string& path) const;
    std::size_t cached_entries() const { return entries_.size(); }

private:
    const HatAlgebra& h_;
    const DualPbw& pbw_;
    mutable Memo<ExtIndex, GBEntry> entries_;
    mutable Memo<RootVec, Mat> phi_inv_;  // depth -> inverse of the phi(G^up) coordinate matrix

    const Mat& phi_gup_inverse(const RootVec& depth) const;
    GBEntry build(const ExtIndex& b) const;
    HatElem from_p_coords(const IndexCoords& c) const;
    IndexCoords peel_to_G(IndexCoords coords) const;
};

}  // namespace bosonext
