#pragma once

#include <random>
#include <string>

#include "bosonext/scalars.hpp"
#include "bosonext/uqneg.hpp"

namespace testsupport {

using bosonext::LaurentHalf;
using bosonext::RatFunc;

/** Laurent polynomial in v given as {low exponent, coefficients}. */
LaurentHalf lp(int low, std::initializer_list<long> coeffs);
/** q^k with integer k. */
RatFunc q(int k);
/** v^k = q^{k/2}. */
RatFunc v(int k);

/** Small random integer Laurent polynomial in q (whole powers only when whole is true). */
LaurentHalf random_laurent(std::mt19937_64& rng, int max_terms = 3, int span = 3, bool whole = true);
/** Random element of Q(q^{1/2}); denominators are products of small factors. */
RatFunc random_ratfunc(std::mt19937_64& rng);
/** Random Laurent coefficient, never zero. */
RatFunc random_coeff(std::mt19937_64& rng);

/** Random free-algebra element with every term of the given depth. */
bosonext::FreeElem random_free(std::mt19937_64& rng, const bosonext::UqContext& ctx,
                               const bosonext::RootVec& depth, int terms = 3);
/** Random depth with height in [lo, hi]. */
bosonext::RootVec random_depth(std::mt19937_64& rng, std::size_t rank, int lo, int hi);

}  // namespace testsupport
