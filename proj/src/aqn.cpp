#include "bosonext/aqn.hpp"

#include <algorithm>
#include <functional>

#include "bosonext/error.hpp"

namespace bosonext {

namespace {

RatFunc zeta_inv(const CartanDatum& c, const RootVec& depth) { return c.zeta_pow(depth).inv(); }

// Row vector times matrix.
Vec vec_mat(const Vec& x, const Mat& m) {
    Vec r(m.empty() ? 0 : m[0].size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < r.size(); ++j)
            if (!m[i][j].is_zero()) r[j] += x[i] * m[i][j];
    }
    return r;
}

LaurentHalf poly_lcm(const LaurentHalf& a, const LaurentHalf& b) {
    LaurentHalf g = poly_gcd(a, b);
    return poly_divexact(a * b, g);
}

// Part of p with strictly positive q-exponents; p must be a whole-power Laurent polynomial.
RatFunc positive_part(const RatFunc& p) {
    LaurentHalf r;
    const LaurentHalf& n = p.num();
    for (int e = std::max(n.low(), 1); e <= n.high(); ++e) {
        mpz_class c = n.coeff(e);
        if (c != 0) r += LaurentHalf::monomial(c, e);
    }
    return RatFunc(r);
}

}  // namespace

AqnElem aqn_one(const UqContext& ctx) { return AqnElem{ctx.one()}; }

AqnElem aqn_generator(const UqContext& ctx, int i) {
    return AqnElem{ctx.generator(i).scaled(ctx.cartan().zeta_pow(ctx.cartan().simple(i)))};
}

AqnElem aqn_mul(const UqContext& ctx, const AqnElem& a, const AqnElem& b) {
    return AqnElem{ctx.mul(a.carrier, b.carrier)};
}

AqnElem aqn_ij(const UqContext& ctx, int i, int j) {
    int f = ctx.cartan().form_simple(i, j);
    if (f >= 0) throw Error(ErrorCode::InvalidArgument, "<ij> needs (alpha_i, alpha_j) < 0");
    AqnElem gi = aqn_generator(ctx, i), gj = aqn_generator(ctx, j);
    AqnElem num = aqn_mul(ctx, gi, gj) - aqn_mul(ctx, gj, gi).scaled(RatFunc::q_pow(-f));
    return num.scaled((RatFunc(1) - RatFunc::q_pow(-2 * f)).inv());
}

RatFunc pair_against_U(const UqContext& ctx, const AqnElem& f, const UqmElem& u) {
    RatFunc s;
    for (const auto& [d, v] : f.carrier.coords()) {
        const Vec* w = u.at(d);
        if (!w) continue;
        UqmElem part;
        part.add(d, v);
        UqmElem other;
        other.add(d, *w);
        s += ctx.kform(part, other) * zeta_inv(ctx.cartan(), d);
    }
    return s;
}

RatFunc aform(const UqContext& ctx, const AqnElem& x, const AqnElem& y) { return pair_against_U(ctx, x, y.carrier); }

AqnElem c_map(const UqContext& ctx, const AqnElem& f) {
    // carrier word w equals zeta^{-depth} times the product of dual generators along w
    const CartanDatum& c = ctx.cartan();
    FreeElem out;
    FreeElem words = ctx.to_free(f.carrier);
    for (const auto& [w, p] : words.terms()) {
        RootVec d = ctx.depth(w);
        int expo = 0;
        for (std::size_t a = 0; a < w.size(); ++a)
            for (std::size_t b = a + 1; b < w.size(); ++b) expo += c.form_simple(w[a], w[b]);
        RatFunc z = c.zeta_pow(d);
        RatFunc coeff = p.bar() * z.bar().inv() * z * RatFunc::q_pow(expo);
        out.add_term(Word(w.rbegin(), w.rend()), coeff);
    }
    return AqnElem{ctx.reduce(out)};
}

bool is_integral_aqn(const UqContext& ctx, const AqnElem& f) {
    for (const auto& [d, v] : f.carrier.coords()) {
        AqnElem part;
        part.carrier.add(d, v);
        for (const auto& dw : ctx.divided_power_words(d)) {
            RatFunc p = pair_against_U(ctx, part, ctx.reduce(ctx.divided_power_word_free(dw)));
            if (!is_integer_laurent_whole_powers(p)) return false;
        }
    }
    return true;
}

AqnElem zeta_scaled_eprime(const UqContext& ctx, int i, int n, const AqnElem& f) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative divided power");
    UqmElem u = f.carrier;
    for (int k = 0; k < n; ++k) u = ctx.e_prime(i, u);
    const CartanDatum& c = ctx.cartan();
    RatFunc s = RatFunc(q_factorial(n, c.d(static_cast<std::size_t>(i)))).inv() *
                c.zeta_pow(n * c.simple(i)).inv();
    return AqnElem{u.scaled(s)};
}

bool lup_member(const UqContext& ctx, const AqnElem& f, int series_depth) {
    if (!is_integral_aqn(ctx, f)) return false;
    try {
        return series_is_integral(series_at_zero(aform(ctx, f, f), series_depth));
    } catch (const Error&) {
        return false;
    }
}

std::vector<RootVec> convex_order(const CartanDatum& cartan, const std::vector<int>& word) {
    if (!cartan.is_finite_type()) throw Error(ErrorCode::UnsupportedType, "reduced words need a finite-type datum");
    std::size_t expected = cartan.positive_roots().size();
    if (word.size() != expected)
        throw Error(ErrorCode::InvalidArgument, "reduced word of w_0 must have length " + std::to_string(expected));
    std::vector<RootVec> roots;
    for (std::size_t k = 0; k < word.size(); ++k) {
        int i = word[k];
        if (i < 0 || static_cast<std::size_t>(i) >= cartan.rank())
            throw Error(ErrorCode::InvalidArgument, "letter out of range in reduced word");
        RootVec b = cartan.simple(i);
        for (std::size_t t = k; t-- > 0;) b = cartan.reflect(word[t], b);
        if (!is_nonnegative(b) || std::find(roots.begin(), roots.end(), b) != roots.end())
            throw Error(ErrorCode::InvalidArgument, "word is not a reduced word of w_0");
        roots.push_back(b);
    }
    return roots;
}

RatFunc primitive_scale(const UqContext& ctx, const AqnElem& x, const RootVec& depth) {
    std::vector<RatFunc> pairings;
    for (const auto& dw : ctx.divided_power_words(depth))
        pairings.push_back(pair_against_U(ctx, x, ctx.reduce(ctx.divided_power_word_free(dw))));
    LaurentHalf l(1);
    for (const auto& p : pairings)
        if (!p.is_zero()) l = poly_lcm(l, p.den());
    LaurentHalf g;
    const RatFunc* first = nullptr;
    for (const auto& p : pairings) {
        if (p.is_zero()) continue;
        if (!first) first = &p;
        RatFunc scaled = p * RatFunc(l);
        g = g.is_zero() ? scaled.num() : poly_gcd(g, scaled.num());
    }
    if (!first) throw Error(ErrorCode::VerificationFailed, "element pairs to zero with every divided-power word");
    RatFunc s = RatFunc(l) / RatFunc(g);
    RatFunc lead = *first * s;
    if (lead.num().coeffs().front() < 0) s = -s;
    return s;
}

// ---------------------------------------------------------------- DualPbw

DualPbw::DualPbw(const UqContext& ctx, std::vector<int> word) : ctx_(ctx), word_(std::move(word)) {
    if (!ctx.cartan().is_finite_type())
        throw Error(ErrorCode::UnsupportedType, "dual PBW bases need a finite-type datum");
    if (word_.empty()) word_ = ctx.cartan().default_reduced_word();
    roots_ = convex_order(ctx.cartan(), word_);
    build_root_vectors();
}

RootVec DualPbw::depth_of(const PbwExp& a) const {
    if (a.size() != roots_.size()) throw Error(ErrorCode::InvalidArgument, "exponent vector has the wrong length");
    RootVec d(ctx_.rank());
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] < 0) throw Error(ErrorCode::NegativeCoordinate, "negative PBW exponent");
        d += a[k] * roots_[k];
    }
    return d;
}

std::vector<PbwExp> DualPbw::exponents_of_depth(const RootVec& depth) const {
    std::vector<PbwExp> out;
    PbwExp cur(roots_.size(), 0);
    std::function<void(std::size_t, const RootVec&)> rec = [&](std::size_t k, const RootVec& rem) {
        if (k == roots_.size()) {
            if (rem.is_zero()) out.push_back(cur);
            return;
        }
        RootVec r = rem;
        for (int n = 0;; ++n) {
            if (!is_nonnegative(r)) break;
            cur[k] = n;
            rec(k + 1, r);
            r -= roots_[k];
        }
        cur[k] = 0;
    };
    rec(0, depth);
    return out;
}

AqnElem DualPbw::ordered_product(const PbwExp& a) const {
    depth_of(a);
    AqnElem r = aqn_one(ctx_);
    for (std::size_t k = roots_.size(); k-- > 0;)
        for (int n = 0; n < a[k]; ++n) r = aqn_mul(ctx_, r, root_vectors_[k]);
    return r;
}

int DualPbw::monomial_shift(const PbwExp& a) const {
    AqnElem p = ordered_product(a);
    RatFunc self = aform(ctx_, p, p);
    int val = valuation(self);
    if (val % 2 != 0) throw Error(ErrorCode::NormalizationFailed, "self-pairing has odd valuation");
    RatFunc normalized = self * RatFunc::v_pow(-val);
    if (series_at_zero(normalized, 1)[0] != 1)
        throw Error(ErrorCode::NormalizationFailed, "self-pairing does not start with 1");
    return -val / 2;
}

AqnElem DualPbw::monomial(const PbwExp& a) const {
    return ordered_product(a).scaled(RatFunc::v_pow(monomial_shift(a)));
}

bool DualPbw::orthogonal_to_others(const AqnElem& x, std::size_t k) const {
    for (const auto& a : exponents_of_depth(roots_[k])) {
        if (a[k] == 1) continue;
        if (!aform(ctx_, x, ordered_product(a)).is_zero()) return false;
    }
    return true;
}

AqnElem DualPbw::normalize_root_vector(const AqnElem& x, const RootVec& depth) const {
    AqnElem y = x.scaled(primitive_scale(ctx_, x, depth));
    int val = valuation(aform(ctx_, y, y));
    if (val % 2 != 0) throw Error(ErrorCode::VerificationFailed, "root vector self-pairing has odd valuation");
    return y.scaled(RatFunc::v_pow(-val / 2));
}

void DualPbw::build_root_vectors() {
    std::size_t l = roots_.size();
    root_vectors_.assign(l, AqnElem{});
    from_bracket_.assign(l, false);
    std::vector<std::size_t> order(l);
    for (std::size_t k = 0; k < l; ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return ht(roots_[a]) < ht(roots_[b]); });
    for (std::size_t k : order) {
        const RootVec& beta = roots_[k];
        if (ht(beta) == 1) {
            int i = static_cast<int>(std::find(beta.c.begin(), beta.c.end(), 1) - beta.c.begin());
            root_vectors_[k] = aqn_generator(ctx_, i);
            from_bracket_[k] = true;
            continue;
        }
        // minimal pair: beta_a + beta_b = beta_k with a < k < b and b - a smallest
        std::size_t best_a = l, best_b = l;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = k + 1; b < l; ++b)
                if (roots_[a] + roots_[b] == beta && (best_a == l || b - a < best_b - best_a)) {
                    best_a = a;
                    best_b = b;
                }
        AqnElem found;
        if (best_a != l) {
            const AqnElem& g = root_vectors_[best_a];
            const AqnElem& d = root_vectors_[best_b];
            int f = ctx_.cartan().form(roots_[best_a], roots_[best_b]);
            AqnElem gd = aqn_mul(ctx_, g, d), dg = aqn_mul(ctx_, d, g);
            std::vector<AqnElem> candidates = {
                dg - gd.scaled(RatFunc::q_pow(-f)), gd - dg.scaled(RatFunc::q_pow(-f)),
                dg - gd.scaled(RatFunc::q_pow(f)), gd - dg.scaled(RatFunc::q_pow(f))};
            for (const auto& x : candidates)
                if (!x.is_zero() && orthogonal_to_others(x, k)) {
                    found = x;
                    from_bracket_[k] = true;
                    break;
                }
        }
        if (found.is_zero()) {
            // orthogonal complement of the other monomials of this weight
            const WeightBasis& wb = ctx_.weight_basis(beta);
            Mat rows;
            for (const auto& a : exponents_of_depth(beta)) {
                if (a[k] == 1) continue;
                AqnElem p = ordered_product(a);
                const Vec* y = p.carrier.at(beta);
                Vec row(wb.size());
                if (y) row = mat_vec(wb.gram, *y);
                rows.push_back(row);
            }
            auto ns = mat_nullspace(rows, wb.size());
            if (ns.size() != 1) throw Error(ErrorCode::VerificationFailed, "root vector is not determined by orthogonality");
            found.carrier.add(beta, ns[0]);
        }
        AqnElem y = normalize_root_vector(found, beta);
        if (!is_integral_aqn(ctx_, y)) throw Error(ErrorCode::VerificationFailed, "root vector is not integral");
        if (series_at_zero(aform(ctx_, y, y), 1) != std::vector<mpq_class>{1})
            throw Error(ErrorCode::VerificationFailed, "root vector is not normalized at q = 0");
        if (!orthogonal_to_others(y, k))
            throw Error(ErrorCode::VerificationFailed, "root vector is not orthogonal to the other monomials");
        root_vectors_[k] = std::move(y);
    }
}

GupBlock DualPbw::build_block(const RootVec& depth) const {
    GupBlock blk;
    blk.depth = depth;
    blk.index = exponents_of_depth(depth);
    std::size_t n = blk.index.size();
    const WeightBasis& wb = ctx_.weight_basis(depth);
    if (n != wb.size()) throw Error(ErrorCode::VerificationFailed, "PBW exponents do not match the weight-space dimension");
    Mat m(n);
    for (std::size_t a = 0; a < n; ++a) {
        blk.pos[blk.index[a]] = a;
        blk.monomials.push_back(monomial(blk.index[a]));
        const Vec* v = blk.monomials.back().carrier.at(depth);
        m[a] = v ? *v : Vec(n);
    }
    Mat minv = mat_inverse(m);
    blk.c_in_m.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        AqnElem cm = c_map(ctx_, blk.monomials[a]);
        const Vec* v = cm.carrier.at(depth);
        blk.c_in_m[a] = v ? vec_mat(*v, minv) : Vec(n);
        for (std::size_t b = 0; b < n; ++b)
            if (!is_integer_laurent_whole_powers(blk.c_in_m[a][b]))
                throw Error(ErrorCode::NonIntegralTransition, "c(M) has a non-integral coefficient at " + to_string(depth));
        if (blk.c_in_m[a][a] != RatFunc(1))
            throw Error(ErrorCode::VerificationFailed, "c(M) is not unitriangular at " + to_string(depth));
    }
    // topological order: every a' occurring in c(M(a)) precedes a
    std::vector<int> state(n, 0);
    std::vector<std::size_t> order;
    std::function<void(std::size_t)> visit = [&](std::size_t a) {
        if (state[a] == 2) return;
        if (state[a] == 1) throw Error(ErrorCode::VerificationFailed, "c(M) is not triangular at " + to_string(depth));
        state[a] = 1;
        for (std::size_t b = 0; b < n; ++b)
            if (b != a && !blk.c_in_m[a][b].is_zero()) visit(b);
        state[a] = 2;
        order.push_back(a);
    };
    for (std::size_t a = 0; a < n; ++a) visit(a);
    std::vector<std::size_t> rank_of(n);
    for (std::size_t t = 0; t < n; ++t) rank_of[order[t]] = t;

    blk.g_in_m.assign(n, Vec(n));
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t a = order[t];
        Vec r = blk.c_in_m[a];
        r[a] -= RatFunc(1);
        Vec g(n);
        g[a] = RatFunc(1);
        for (std::size_t s = t; s-- > 0;) {
            std::size_t b = order[s];
            RatFunc p = r[b];
            if (p.is_zero()) continue;
            if (!is_integer_laurent_whole_powers(p))
                throw Error(ErrorCode::NonIntegralTransition, "transition coefficient " + p.to_string());
            if (p.bar() != -p) throw Error(ErrorCode::NonAntisymmetric, "transition coefficient " + p.to_string());
            RatFunc f = positive_part(p);
            for (std::size_t c = 0; c < n; ++c) {
                if (blk.g_in_m[b][c].is_zero()) continue;
                r[c] -= p * blk.g_in_m[b][c];
                g[c] += f * blk.g_in_m[b][c];
            }
        }
        for (std::size_t c = 0; c < n; ++c)
            if (!r[c].is_zero()) throw Error(ErrorCode::VerificationFailed, "c(M) left a residue outside the lower set");
        blk.g_in_m[a] = g;
        (void)rank_of;
    }
    for (std::size_t a = 0; a < n; ++a) {
        AqnElem e;
        e.carrier.add(depth, vec_mat(blk.g_in_m[a], m));
        blk.elements.push_back(std::move(e));
    }
    return blk;
}

const GupBlock& DualPbw::gup_block(const RootVec& depth) const {
    ctx_.check_height(depth);
    return blocks_.get_or_compute(depth, [&] { return build_block(depth); });
}

const AqnElem& DualPbw::gup(const PbwExp& a) const {
    const GupBlock& b = gup_block(depth_of(a));
    return b.elements[b.pos.at(a)];
}

std::vector<const GupBlock*> DualPbw::upper_global_basis(int max_height) const {
    std::vector<const GupBlock*> out;
    for (const auto& d : ctx_.depths_up_to(max_height)) out.push_back(&gup_block(d));
    return out;
}

}  // namespace bosonext
