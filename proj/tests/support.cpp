#include "support.hpp"

namespace testsupport {

using namespace bosonext;

LaurentHalf lp(int low, std::initializer_list<long> coeffs) {
    std::vector<mpz_class> c;
    for (long x : coeffs) c.emplace_back(x);
    return LaurentHalf::from_coeffs(low, std::move(c));
}

RatFunc q(int k) { return RatFunc::q_pow(k); }
RatFunc v(int k) { return RatFunc::v_pow(k); }

LaurentHalf random_laurent(std::mt19937_64& rng, int max_terms, int span, bool whole) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> expo(-span, span);
    std::uniform_int_distribution<int> coef(-3, 3);
    LaurentHalf p;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        int e = expo(rng);
        p += LaurentHalf::monomial(coef(rng), whole ? 2 * e : e);
    }
    if (p.is_zero()) p = LaurentHalf(1);
    return p;
}

RatFunc random_ratfunc(std::mt19937_64& rng) {
    LaurentHalf n = random_laurent(rng, 3, 3, false);
    LaurentHalf d = random_laurent(rng, 2, 2, false);
    return RatFunc(n, d);
}

RatFunc random_coeff(std::mt19937_64& rng) { return RatFunc(random_laurent(rng, 2, 2, true)); }

RootVec random_depth(std::mt19937_64& rng, std::size_t rank, int lo, int hi) {
    std::uniform_int_distribution<int> h(lo, hi);
    std::uniform_int_distribution<std::size_t> pick(0, rank - 1);
    RootVec d(rank);
    int target = h(rng);
    for (int t = 0; t < target; ++t) d[pick(rng)] += 1;
    return d;
}

FreeElem random_free(std::mt19937_64& rng, const UqContext& ctx, const RootVec& depth, int terms) {
    std::vector<Word> words = ctx.words_of_depth(depth);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    FreeElem x;
    for (int t = 0; t < terms; ++t) x.add_term(words[pick(rng)], random_coeff(rng));
    return x;
}

}  // namespace testsupport
