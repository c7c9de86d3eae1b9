#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bosonext/globalbasis.hpp"

namespace bosonext {

// ---------------------------------------------------------------- random inputs

/** Nonzero Laurent polynomial in whole powers of q with small coefficients. */
RatFunc random_laurent_coeff(std::mt19937_64& rng, int max_terms = 2, int span = 2);
/** Depth with height drawn uniformly from [lo, hi]. */
RootVec random_depth(std::mt19937_64& rng, std::size_t rank, int lo, int hi);
/** Random combination of basis elements at one depth; never zero. */
UqmElem random_uqm(std::mt19937_64& rng, const UqContext& ctx, const RootVec& depth, int terms = 2);
/** Level -> depth with levels in [lo, hi] and per-level height in [0, max_level_height]. */
std::map<int, RootVec> random_profile(std::mt19937_64& rng, std::size_t rank, int lo, int hi, int max_level_height);
/** Product of random homogeneous level factors with the given profile. */
HatElem random_product(std::mt19937_64& rng, const HatAlgebra& h, const std::map<int, RootVec>& profile);
/** Sum of a few random level-factor products, each with per-level height <= max_level_height. */
TensorState random_state(std::mt19937_64& rng, const HatAlgebra& h, int lo, int hi, int max_level_height, int terms = 2);

// ---------------------------------------------------------------- lattice search oracles

/**
 * @brief The c-fixed elements M(a) + sum_{a' != a} c_{a'} M(a') with every c_{a'} in sum_{k=1}^{max_power} Z q^k.
 *
 * Uses only M and c_map; the lattice is decided by an exact linear solve. Returns nothing, the unique element,
 * or two distinct elements when there are several.
 */
std::vector<AqnElem> gup_search(const DualPbw& pbw, const PbwExp& a, int max_power = 4);

/**
 * @brief P-coordinates of the c-fixed elements P(b) + sum_{b' < b} c_{b'} P(b') with every c_{b'} in sum_{k=1}^{max_power} Z q^k.
 *
 * Uses only P, c_h and the order; same return convention as gup_search.
 */
std::vector<IndexCoords> gb_search(const GlobalBasis& gb, const ExtIndex& b, int max_power = 4);

// ---------------------------------------------------------------- suites

struct SuiteConfig {
    std::vector<int> reduced_word;  // 0-based; empty selects the default
    int max_height = 4;
    int series_depth = 8;
    std::uint64_t seed = 0;
    int trials = 25;
    std::string cache_path;
};

struct SuiteResult {
    std::string suite;
    bool passed = true;
    long checks = 0;
    long failures = 0;
    std::vector<std::string> messages;

    void check(bool ok, const std::string& what);
    void note(const std::string& what) { messages.push_back(what); }
};

/** relations, serial, closed-forms, forms, nondegeneracy, boson, gup, gb, integral, standard. */
const std::vector<std::string>& suite_names();
/** Throws InvalidArgument for an unknown suite. Computation errors inside a suite are recorded as failures. */
SuiteResult run_suite(const std::string& name, const UqContext& ctx, const SuiteConfig& cfg);

}  // namespace bosonext
