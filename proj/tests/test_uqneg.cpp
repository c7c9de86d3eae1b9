#include "catch_amalgamated.hpp"

#include <functional>
#include <set>

#include "bosonext/error.hpp"
#include "bosonext/uqneg.hpp"
#include "support.hpp"

using namespace bosonext;
using testsupport::q;

namespace {

RootVec rv(std::vector<int> c) { return RootVec(std::move(c)); }

// Independent route to the form: peel letters from the right, <u f_i, w> = <u, e*_i w>.
RatFunc kform_right_oracle(const CartanDatum& c, const Word& a, const Word& b) {
    if (a.size() != b.size()) return RatFunc(0);
    if (a.empty()) return RatFunc(1);
    int i = a.back();
    Word rest(a.begin(), a.end() - 1);
    RatFunc sum;
    int expo = 0;
    for (std::size_t k = b.size(); k-- > 0;) {
        if (b[k] == i) {
            Word sub = b;
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(k));
            sum += kform_right_oracle(c, rest, sub) * q(-expo);
        }
        expo += c.form_simple(i, b[k]);
    }
    return sum;
}

// Number of ways to write beta as a sum of positive roots (dimension of the weight space).
long kostant(const std::vector<RootVec>& roots, std::size_t from, const RootVec& beta) {
    if (beta.is_zero()) return 1;
    long total = 0;
    for (std::size_t r = from; r < roots.size(); ++r) {
        RootVec rest = beta - roots[r];
        if (is_nonnegative(rest)) total += kostant(roots, r, rest);
    }
    return total;
}

FreeElem f(int i) { return FreeElem::generator(i); }

}  // namespace

TEST_CASE("e' examples") {
    UqContext ctx(CartanDatum::preset("A2"));
    REQUIRE(ctx.e_prime(0, FreeElem::word({0, 1})) == f(1));
    REQUIRE(ctx.e_prime(0, FreeElem::one()).is_zero());
    REQUIRE(ctx.e_prime(0, FreeElem::word({1, 0})) == f(1).scaled(q(1)));
}

TEST_CASE("e* examples and commutation with e'") {
    UqContext ctx(CartanDatum::preset("A2"));
    REQUIRE(ctx.e_star(0, FreeElem::word({1, 0})) == f(1));
    REQUIRE(ctx.e_star(0, FreeElem::one()).is_zero());
    std::mt19937_64 rng(2);
    for (const char* name : {"A2", "B2", "G2"}) {
        UqContext c(CartanDatum::preset(name));
        for (int t = 0; t < 15; ++t) {
            FreeElem x = testsupport::random_free(rng, c, testsupport::random_depth(rng, 2, 1, 4));
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) REQUIRE(c.e_prime(i, c.e_star(j, x)) == c.e_star(j, c.e_prime(i, x)));
        }
    }
}

TEST_CASE("Kashiwara form values") {
    UqContext ctx(CartanDatum::preset("A2"));
    REQUIRE(ctx.kform(f(0), f(0)) == RatFunc(1));
    REQUIRE(ctx.kform(FreeElem::one(), FreeElem::one()) == RatFunc(1));
    RatFunc v = ctx.kform(FreeElem::word({0, 1}), FreeElem::word({1, 0}));
    REQUIRE(v == kform_right_oracle(ctx.cartan(), {0, 1}, {1, 0}));
    REQUIRE(v == q(1));
    REQUIRE(ctx.kform(f(0), f(1)).is_zero());
}

TEST_CASE("form agrees with the right-peeling recursion") {
    for (const char* name : {"A2", "B2", "G2", "A1(1)"}) {
        UqContext ctx(CartanDatum::preset(name));
        for (const auto& d : ctx.depths_up_to(4)) {
            auto words = ctx.words_of_depth(d);
            for (const auto& a : words)
                for (const auto& b : words) {
                    RatFunc v = ctx.kform_words(a, b);
                    REQUIRE(v == kform_right_oracle(ctx.cartan(), a, b));
                    REQUIRE(v == ctx.kform_words(b, a));
                    REQUIRE(is_integer_laurent_whole_powers(v));
                }
        }
    }
}

TEST_CASE("adjunctions and star invariance") {
    std::mt19937_64 rng(4);
    for (const char* name : {"A2", "B2", "G2"}) {
        UqContext ctx(CartanDatum::preset(name));
        for (int t = 0; t < 20; ++t) {
            RootVec d = testsupport::random_depth(rng, 2, 0, 3);
            int i = static_cast<int>(rng() % 2);
            RootVec d2 = d + ctx.cartan().simple(i);
            FreeElem x = testsupport::random_free(rng, ctx, d2);
            FreeElem y = testsupport::random_free(rng, ctx, d);
            REQUIRE(ctx.kform(ctx.e_prime(i, x), y) == ctx.kform(x, f(i) * y));
            REQUIRE(ctx.kform(ctx.e_star(i, x), y) == ctx.kform(x, y * f(i)));
            FreeElem z = testsupport::random_free(rng, ctx, d2);
            REQUIRE(ctx.kform(star_u(x), star_u(z)) == ctx.kform(x, z));
        }
    }
}

TEST_CASE("weight bases") {
    UqContext ctx(CartanDatum::preset("A2"));
    const WeightBasis& b1 = ctx.weight_basis(rv({1, 0}));
    REQUIRE(b1.words == std::vector<Word>{{0}});
    REQUIRE(b1.gram == Mat{{RatFunc(1)}});
    const WeightBasis& b11 = ctx.weight_basis(rv({1, 1}));
    REQUIRE(b11.words == std::vector<Word>{{0, 1}, {1, 0}});
    REQUIRE(b11.gram == Mat{{RatFunc(1), q(1)}, {q(1), RatFunc(1)}});
    const WeightBasis& b21 = ctx.weight_basis(rv({2, 1}));
    REQUIRE(b21.size() == 2);
    REQUIRE(b21.words == std::vector<Word>{{0, 0, 1}, {0, 1, 0}});
    // rank of the full word Gram matrix
    auto words = ctx.words_of_depth(rv({2, 1}));
    REQUIRE(words.size() == 3);
    Mat g(3, Vec(3));
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) g[a][b] = ctx.kform_words(words[a], words[b]);
    REQUIRE(mat_rank(g) == 2);
}

TEST_CASE("greedy basis matches the scan over all words") {
    for (const char* name : {"A2", "B2", "A1(1)"}) {
        UqContext ctx(CartanDatum::preset(name));
        for (const auto& d : ctx.depths_up_to(4)) {
            auto words = ctx.words_of_depth(d);
            std::vector<Word> kept;
            RowEchelon ech(words.size());
            for (const auto& w : words) {
                Vec row(words.size());
                for (std::size_t k = 0; k < words.size(); ++k) row[k] = ctx.kform_words(w, words[k]);
                if (ech.add(row)) kept.push_back(w);
            }
            REQUIRE(kept == ctx.weight_basis(d).words);
        }
    }
}

TEST_CASE("dimensions equal the Kostant partition function") {
    for (const char* name : {"A2", "B2", "G2", "A3"}) {
        UqContext ctx(CartanDatum::preset(name));
        auto roots = ctx.cartan().positive_roots();
        for (const auto& d : ctx.depths_up_to(name[0] == 'A' && name[1] == '3' ? 4 : 6))
            REQUIRE(static_cast<long>(ctx.weight_basis(d).size()) == kostant(roots, 0, d));
    }
}

TEST_CASE("reduction examples") {
    UqContext ctx(CartanDatum::preset("A2"));
    REQUIRE(ctx.reduce(ctx.serre_element(0, 1)).is_zero());
    UqmElem r = ctx.reduce(f(0));
    REQUIRE(*r.at(rv({1, 0})) == Vec{RatFunc(1)});
    UqmElem d = ctx.reduce(FreeElem::word({0, 1}) - FreeElem::word({1, 0}));
    REQUIRE(*d.at(rv({1, 1})) == Vec{RatFunc(1), RatFunc(-1)});
    FreeElem expected = FreeElem::word({0, 0, 1}) - FreeElem::word({0, 1, 0}).scaled(q(1) + q(-1)) +
                        FreeElem::word({1, 0, 0});
    REQUIRE(ctx.serre_element(0, 1) == expected);
    REQUIRE_THROWS_AS(ctx.serre_element(1, 1), Error);
}

TEST_CASE("Serre elements span the radical") {
    std::mt19937_64 rng(8);
    for (const char* name : {"A2", "B2", "G2", "A1(1)"}) {
        UqContext ctx(CartanDatum::preset(name), 8);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                if (i == j) continue;
                FreeElem s = ctx.serre_element(i, j);
                REQUIRE(ctx.is_zero_uq(s));
                for (int t = 0; t < 3; ++t) {
                    FreeElem a = testsupport::random_free(rng, ctx, testsupport::random_depth(rng, 2, 0, 1), 2);
                    FreeElem b = testsupport::random_free(rng, ctx, testsupport::random_depth(rng, 2, 0, 1), 2);
                    REQUIRE(ctx.is_zero_uq(a * s * b));
                }
                for (int t = 0; t < 4; ++t) {
                    FreeElem x = testsupport::random_free(rng, ctx, testsupport::random_depth(rng, 2, 2, 6));
                    REQUIRE(ctx.is_zero_uq(ctx.e_serre_apply(i, j, x)));
                }
            }
    }
}

TEST_CASE("coordinate operators agree with the pairing route") {
    std::mt19937_64 rng(12);
    for (const char* name : {"A2", "B2", "G2"}) {
        UqContext ctx(CartanDatum::preset(name));
        for (int t = 0; t < 15; ++t) {
            RootVec d = testsupport::random_depth(rng, 2, 0, 4);
            FreeElem x = testsupport::random_free(rng, ctx, d);
            UqmElem rx = ctx.reduce(x);
            for (int i = 0; i < 2; ++i) {
                REQUIRE(ctx.left_mul(i, rx) == ctx.reduce(f(i) * x));
                REQUIRE(ctx.e_prime(i, rx) == ctx.reduce(ctx.e_prime(i, x)));
                REQUIRE(ctx.e_star(i, rx) == ctx.reduce(ctx.e_star(i, x)));
            }
            for (const auto& [w, c] : x.terms()) REQUIRE(ctx.coords_of_word(w) == ctx.reduce(FreeElem::word(w)));
            REQUIRE(ctx.reduce(ctx.to_free(rx)) == rx);
            REQUIRE(ctx.kform(rx, rx) == ctx.kform(x, x));
            FreeElem y = testsupport::random_free(rng, ctx, testsupport::random_depth(rng, 2, 0, 2));
            REQUIRE(ctx.mul(rx, ctx.reduce(y)) == ctx.reduce(x * y));
            REQUIRE(ctx.bar(ctx.bar(rx)) == rx);
            REQUIRE(ctx.star(rx) == ctx.reduce(star_u(x)));
        }
    }
}

TEST_CASE("divided powers") {
    UqContext ctx(CartanDatum::preset("B2"));
    REQUIRE(ctx.divided_power(0, 0) == ctx.one());
    REQUIRE(ctx.divided_power(1, 2) == ctx.reduce(FreeElem::word({1, 1})).scaled((q(1) + q(-1)).inv()));
    REQUIRE(ctx.divided_power(0, 2) == ctx.reduce(FreeElem::word({0, 0})).scaled((q(2) + q(-2)).inv()));
}

TEST_CASE("coproduct of divided powers through the form") {
    for (const char* name : {"A2", "B2", "G2"}) {
        UqContext ctx(CartanDatum::preset(name));
        for (int i = 0; i < 2; ++i)
            for (int n = 1; n <= 4; ++n) {
                FreeElem top = ctx.divided_power_free(i, n);
                for (int k = 0; k <= n; ++k) {
                    FreeElem a = ctx.divided_power_free(i, k), b = ctx.divided_power_free(i, n - k);
                    RatFunc lhs = ctx.kform(a * b, top);
                    RatFunc rhs = ctx.cartan().qi_pow(i, -k * (n - k)) * ctx.kform(a, a) * ctx.kform(b, b);
                    REQUIRE(lhs == rhs);
                }
            }
    }
}

TEST_CASE("boson operators") {
    std::mt19937_64 rng(21);
    UqContext ctx(CartanDatum::preset("A2"));
    REQUIRE(ctx.boson_act(f(0), FreeElem::one(), f(0)) == FreeElem::one());
    FreeElem x = testsupport::random_free(rng, ctx, rv({1, 2}));
    REQUIRE(ctx.boson_act(FreeElem::one(), f(1), x) == f(1) * x);
    for (const char* name : {"A2", "B2", "G2"}) {
        UqContext c(CartanDatum::preset(name));
        for (int t = 0; t < 10; ++t) {
            FreeElem tgt = testsupport::random_free(rng, c, testsupport::random_depth(rng, 2, 0, 4));
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    FreeElem lhs = c.boson_act(f(i), f(j), tgt) -
                                   c.boson_act(FreeElem::one(), f(j), c.boson_act(f(i), FreeElem::one(), tgt))
                                       .scaled(q(-c.cartan().form_simple(i, j)));
                    if (i == j) lhs -= tgt;
                    REQUIRE(lhs.is_zero());
                }
        }
    }
}

TEST_CASE("boson operator family is independent") {
    UqContext ctx(CartanDatum::preset("A2"), 8);
    std::vector<std::pair<Word, Word>> ops;
    for (const auto& da : ctx.depths_up_to(3))
        for (const auto& db : ctx.depths_up_to(3 - ht(da)))
            for (const auto& a : ctx.weight_basis(da).words)
                for (const auto& b : ctx.weight_basis(db).words) ops.emplace_back(a, b);
    REQUIRE(ops.size() == 45);
    // group by the weight shift so that each group is a separate rank problem
    std::map<std::vector<int>, std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < ops.size(); ++k) {
        RootVec s = ctx.depth(ops[k].second) - ctx.depth(ops[k].first);
        groups[s.c].push_back(k);
    }
    auto inputs = ctx.depths_up_to(4);
    std::size_t total_rank = 0;
    for (const auto& [shift, members] : groups) {
        std::vector<Vec> cols;
        for (std::size_t k : members) {
            Vec col;
            for (const auto& d : inputs) {
                RootVec out = d + RootVec(shift);
                if (!is_nonnegative(out)) continue;
                for (std::size_t j = 0; j < ctx.weight_basis(d).size(); ++j) {
                    UqmElem y = ctx.left_mul_word(ops[k].second, ctx.basis_element(d, j));
                    for (std::size_t t = ops[k].first.size(); t-- > 0;) y = ctx.e_prime(ops[k].first[t], y);
                    std::size_t n = ctx.weight_basis(out).size();
                    const Vec* v = y.at(out);
                    for (std::size_t r = 0; r < n; ++r) col.push_back(v ? (*v)[r] : RatFunc(0));
                }
            }
            cols.push_back(std::move(col));
        }
        RowEchelon ech(cols[0].size());
        for (auto& c : cols) ech.add(c);
        total_rank += ech.rank();
    }
    REQUIRE(total_rank == ops.size());
}

TEST_CASE("height bound is enforced") {
    UqContext ctx(CartanDatum::preset("A2"), 3);
    REQUIRE_THROWS_AS(ctx.weight_basis(rv({2, 2})), Error);
    REQUIRE_THROWS_AS(ctx.reduce(FreeElem::word({0, 1, 0, 1})), Error);
    REQUIRE_NOTHROW(ctx.weight_basis(rv({2, 1})));
}
