#include "catch_amalgamated.hpp"

#include <cstdio>
#include <fstream>

#include "bosonext/error.hpp"
#include "bosonext/globalbasis.hpp"
#include "bosonext/verify.hpp"
#include "support.hpp"

using namespace bosonext;
using testsupport::q;

namespace {

// Exponent vector of the simple root alpha_i.
PbwExp simple_exp(const DualPbw& pbw, int i) {
    PbwExp a(pbw.length(), 0);
    for (std::size_t k = 0; k < pbw.length(); ++k)
        if (pbw.roots()[k] == pbw.context().cartan().simple(i)) a[k] = 1;
    return a;
}

// Integer polynomial in q with zero constant term.
bool in_qZq(const RatFunc& c) { return is_integer_laurent_whole_powers(c) && c.den().is_one() && c.num().low() >= 2; }

struct Fixture {
    UqContext ctx;
    HatAlgebra h;
    DualPbw pbw;
    GlobalBasis gb;
    Fixture(const char* name, std::vector<int> rw = {}) : ctx(CartanDatum::preset(name)), h(ctx), pbw(ctx, std::move(rw)), gb(h, pbw) {}
};

}  // namespace

TEST_CASE("order on extended indices") {
    Fixture f("A2");
    ExtIndex e1{{0, simple_exp(f.pbw, 0)}}, e2{{0, simple_exp(f.pbw, 1)}};
    ExtIndex both{{0, simple_exp(f.pbw, 0)}, {1, simple_exp(f.pbw, 0)}};
    CHECK(f.gb.preceq(e1, e1));
    CHECK_FALSE(f.gb.prec(e1, e1));
    CHECK(f.gb.preceq({}, both));
    CHECK(f.gb.prec({}, both));
    CHECK_FALSE(f.gb.preceq(e1, e2));
    CHECK_FALSE(f.gb.preceq(e2, e1));
    CHECK(f.gb.prec(e1, both));
    CHECK(f.gb.canonical({{3, PbwExp(3, 0)}}).empty());
    CHECK_THROWS_AS(f.gb.canonical({{0, PbwExp(2, 1)}}), Error);
    CHECK(f.gb.strong_height(both) == 2);
    CHECK(f.gb.weight(both).is_zero());
}

TEST_CASE("P elements") {
    Fixture f("A2");
    CHECK(f.gb.P({}) == f.h.one());
    for (int m = -1; m <= 1; ++m)
        for (const auto& a : f.pbw.exponents_of_depth(RootVec({1, 1})))
            CHECK(f.gb.P({{m, a}}) == f.h.phi_m(f.pbw.gup(a), m));
    for (const auto& b : f.gb.indices(-1, 1, 3)) {
        HatElem p = f.gb.P(b);
        CHECK(f.h.weight(p) == f.gb.weight(b));
        CHECK(f.h.is_integral_hat(p));
        IndexCoords c = f.gb.expand_in_P(p);
        CHECK(c.size() == 1);
        CHECK(c.at(b).is_one());
    }
}

TEST_CASE("global basis elements of single levels are the transported upper global basis") {
    for (const char* name : {"A2", "B2"}) {
        Fixture f(name);
        for (const auto& depth : f.ctx.depths_up_to(3))
            for (const auto& a : f.pbw.exponents_of_depth(depth))
                for (int m = -1; m <= 1; ++m) {
                    ExtIndex b = depth.is_zero() ? ExtIndex{} : ExtIndex{{m, a}};
                    CHECK(f.gb.G(b).element == f.h.phi_m(f.pbw.gup(a), m));
                }
    }
}

TEST_CASE("global basis of A2 over three levels") {
    Fixture f("A2");
    const int depth = 4;
    auto all = f.gb.indices(-1, 1, 3);
    for (const auto& b : all) {
        INFO(to_string(b));
        const GBEntry& g = f.gb.G(b);
        CHECK(f.h.c_h(g.element) == g.element);
        CHECK(g.in_p.at(b).is_one());
        for (const auto& [bp, c] : g.in_p) {
            if (bp == b) continue;
            CHECK(f.gb.prec(bp, b));
            CHECK(in_qZq(c));
        }
        CHECK(f.h.is_integral_hat(g.element));
        HatElem gt = f.gb.G_tilde(b);
        CHECK(f.h.bar_h(gt) == gt);
        CHECK(f.h.weight(gt) == g.weight);
    }
    // q = 0 orthonormality within weight blocks
    std::map<RootVec, std::vector<ExtIndex>> blocks;
    for (const auto& b : all) blocks[f.gb.weight(b)].push_back(b);
    for (const auto& [wt, members] : blocks)
        for (const auto& a : members)
            for (const auto& b : members) {
                auto s = series_at_zero(f.h.hform(f.gb.G_tilde(a), f.gb.G_tilde(b)), depth);
                CHECK(s[0] == (a == b ? 1 : 0));
                CHECK(series_is_integral(s));
            }
}

TEST_CASE("A2 example with f1 at levels 0 and 1") {
    Fixture f("A2");
    ExtIndex b{{0, simple_exp(f.pbw, 0)}, {1, simple_exp(f.pbw, 0)}};
    const GBEntry& g = f.gb.G(b);
    HatElem p = f.gb.P(b);
    CHECK(p == f.h.mul(f.h.phi_m(aqn_generator(f.ctx, 0), 1), f.h.phi_m(aqn_generator(f.ctx, 0), 0)));
    CHECK(f.h.c_h(g.element) == g.element);
    CHECK(g.element != p);
    // P(b) = q f_{1,1} f_{1,0} and c(P) - P = q^{-1} - q, so G = P - q
    IndexCoords expect{{b, RatFunc(1)}, {ExtIndex{}, -q(1)}};
    CHECK(g.in_p == expect);
    auto found = gb_search(f.gb, b, 3);
    REQUIRE(found.size() == 1);
    CHECK(found[0] == g.in_p);
}

TEST_CASE("exhaustive search agrees with the triangular construction") {
    Fixture f("A2");
    for (const auto& b : f.gb.indices(-1, 1, 3)) {
        INFO(to_string(b));
        auto found = gb_search(f.gb, b, 4);
        REQUIRE(found.size() == 1);
        CHECK(found[0] == f.gb.G(b).in_p);
    }
    for (const char* name : {"A2", "B2"}) {
        UqContext ctx(CartanDatum::preset(name));
        DualPbw pbw(ctx);
        for (const auto& depth : ctx.depths_up_to(3))
            for (const auto& a : pbw.exponents_of_depth(depth)) {
                INFO(name << " " << to_string(depth));
                auto found = gup_search(pbw, a, 4);
                REQUIRE(found.size() == 1);
                CHECK(found[0] == pbw.gup(a));
            }
    }
}

TEST_CASE("expansion over the global basis") {
    Fixture f("A2");
    std::mt19937_64 rng(7);
    for (const auto& b : f.gb.indices(-1, 1, 3)) {
        IndexCoords unit{{b, RatFunc(1)}};
        CHECK(f.gb.expand_in_G(f.gb.G(b).element) == unit);
        IndexCoords scaled{{b, q(1)}};
        CHECK(f.gb.expand_in_G(f.gb.G(b).element.scaled(q(1))) == scaled);
        IndexCoords tilde_unit{{b, RatFunc(1)}};
        CHECK(f.gb.expand_in_G_tilde(f.gb.G_tilde(b)) == tilde_unit);
        IndexCoords pe = f.gb.expand_in_G(f.gb.P(b));
        CHECK(pe.at(b).is_one());
        for (const auto& [bp, c] : pe)
            if (bp != b) CHECK((f.gb.prec(bp, b) && in_qZq(-c)) == true);
    }
    HatElem x = random_product(rng, f.h, {{1, RootVec({1, 1})}, {0, RootVec({1, 0})}});
    HatElem back;
    for (const auto& [b, c] : f.gb.expand_in_G(x)) back += f.gb.G(b).element.scaled(c);
    CHECK(back == x);
}

TEST_CASE("standard elements are unitriangular") {
    Fixture f("A2", {0, 1, 0});
    for (std::size_t k = 0; k < f.pbw.length(); ++k) {
        PbwExp a(f.pbw.length(), 0);
        a[k] = 1;
        for (int m = -1; m <= 1; ++m) CHECK(f.gb.M_monomial({{m, a}}) == f.h.phi_m(f.pbw.root_vector(k), m));
    }
    for (const auto& c : f.gb.indices(-1, 1, 3)) {
        INFO(to_string(c));
        IndexCoords e = f.gb.expand_in_G_tilde(f.gb.E_standard(c));
        CHECK(e.at(c).is_one());
        for (const auto& [bp, coef] : e)
            if (bp != c) CHECK(in_qZq(coef));
        CHECK(f.gb.expand_in_G(f.gb.M_monomial(c)).at(c).is_one());
    }
}

TEST_CASE("star permutes global basis blocks") {
    Fixture f("A2");
    auto unit = f.gb.star_orbit_check(RootVec({0, 0}), 0, 0, 0);
    REQUIRE(unit.size() == 1);
    CHECK(unit[0].index.empty());
    CHECK(unit[0].image.empty());
    auto single = f.gb.star_orbit_check(RootVec({-1, -1}), 2, 2, 2);
    for (const auto& p : single) {
        REQUIRE(p.image.size() == 1);
        CHECK(p.image.begin()->first == -2);
    }
    for (const auto& wt : {RootVec({0, 0}), RootVec({1, 0}), RootVec({-1, 1}), RootVec({0, 1})}) {
        auto pairs = f.gb.star_orbit_check(wt, 0, 1, 2);
        CHECK(pairs.size() == f.gb.block(wt, 0, 1, 2).size());
    }
}

TEST_CASE("normalized elements are characterized by bar invariance and self pairing") {
    Fixture f("A2");
    std::map<RootVec, std::vector<ExtIndex>> blocks;
    for (const auto& b : f.gb.indices(-1, 1, 3)) blocks[f.gb.weight(b)].push_back(b);
    std::size_t controls = 0;
    for (const auto& [wt, members] : blocks) {
        for (std::size_t s = 0; s < members.size(); ++s) {
            HatElem gt = f.gb.G_tilde(members[s]);
            auto self = series_at_zero(f.h.hform(gt, gt), 8);
            CHECK(self[0] == 1);
            CHECK(series_is_integral(self));
            if (members.size() < 2) continue;
            HatElem other = f.gb.G_tilde(members[(s + 1) % members.size()]);
            HatElem perturbed = gt + other.scaled(q(1));
            bool bar_ok = f.h.bar_h(perturbed) == perturbed;
            auto ps = series_at_zero(f.h.hform(perturbed, perturbed), 8);
            bool pair_ok = ps[0] == 1 && series_is_integral(ps);
            CHECK_FALSE((bar_ok && pair_ok));
            ++controls;
        }
    }
    CHECK(controls > 0);
}

TEST_CASE("global basis of B2") {
    Fixture f("B2");
    for (const auto& b : f.gb.indices(0, 1, 3)) {
        INFO(to_string(b));
        const GBEntry& g = f.gb.G(b);
        CHECK(f.h.c_h(g.element) == g.element);
        for (const auto& [bp, c] : g.in_p)
            if (bp != b) CHECK(in_qZq(c));
    }
}

TEST_CASE("global basis cache round trip") {
    Fixture f("A2");
    auto all = f.gb.indices(0, 1, 2);
    for (const auto& b : all) f.gb.G(b);
    std::string path = "test_gb_cache.json";
    std::remove(path.c_str());
    f.gb.save_cache(path);
    Fixture g("A2");
    CHECK(g.gb.load_cache(path) == f.gb.cached_entries());
    for (const auto& b : all) CHECK(g.gb.G(b).element == f.gb.G(b).element);
    Fixture other("A2", {1, 0, 1});
    CHECK(other.gb.load_cache(path) == 0);
    other.gb.G(all.back());
    other.gb.save_cache(path);
    Fixture again("A2");
    CHECK(again.gb.load_cache(path) == f.gb.cached_entries());
    {
        std::ofstream bad(path);
        bad << "{\"format\": \"something else\"}";
    }
    CHECK_THROWS_AS(again.gb.load_cache(path), Error);
    std::remove(path.c_str());
    CHECK(again.gb.load_cache(path) == 0);
}

TEST_CASE("non-finite data have no global basis") {
    UqContext ctx(CartanDatum::preset("A1(1)"));
    CHECK_THROWS_AS(DualPbw(ctx), Error);
}
