#include "bosonext/globalbasis.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

#include "bosonext/error.hpp"

namespace bosonext {

namespace {

using nlohmann::json;

constexpr int kCacheVersion = 1;
constexpr const char* kCacheFormat = "bosonext-gb-cache";

RootVec level_weight(int level, const RootVec& depth) { return level % 2 != 0 ? depth : -depth; }

// Terms with q^{1/2}-exponent >= 1 of a Laurent polynomial.
RatFunc positive_part(const RatFunc& p) {
    LaurentHalf r;
    const LaurentHalf& n = p.num();
    for (int e = std::max(n.low(), 1); e <= n.high(); ++e) {
        mpz_class c = n.coeff(e);
        if (c != 0) r += LaurentHalf::monomial(c, e);
    }
    return RatFunc(r);
}

// phi_m(iota(u)) = v^{sum d_i n_i} zeta^{-n} L_m(u) on depth n.
RatFunc phi_scale(const CartanDatum& c, const RootVec& depth) {
    int s = 0;
    for (std::size_t i = 0; i < depth.size(); ++i) s += c.d(i) * depth[i];
    return RatFunc::v_pow(s) * c.zeta_pow(depth).inv();
}

void add_coord(IndexCoords& m, const ExtIndex& k, const RatFunc& c) {
    if (c.is_zero()) return;
    auto it = m.find(k);
    if (it == m.end()) {
        m.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
}

json laurent_json(const LaurentHalf& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(c.get_str());
    return json::array({p.low(), coeffs});
}

LaurentHalf laurent_from_json(const json& j) {
    std::vector<mpz_class> coeffs;
    for (const auto& c : j.at(1)) coeffs.emplace_back(c.get<std::string>());
    return LaurentHalf::from_coeffs(j.at(0).get<int>(), std::move(coeffs));
}

json index_json(const ExtIndex& b) {
    json r = json::array();
    for (const auto& [k, a] : b) r.push_back(json::array({k, a}));
    return r;
}

ExtIndex index_from_json(const json& j) {
    ExtIndex b;
    for (const auto& e : j) b[e.at(0).get<int>()] = e.at(1).get<PbwExp>();
    return b;
}

json read_cache_file(const std::string& path, bool& exists) {
    std::ifstream in(path);
    exists = static_cast<bool>(in);
    if (!exists) return json();
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::CacheError, "unreadable cache file " + path + ": " + e.what());
    }
    if (!doc.is_object() || doc.value("format", "") != kCacheFormat)
        throw Error(ErrorCode::CacheError, "not a global basis cache: " + path);
    if (doc.value("version", -1) != kCacheVersion)
        throw Error(ErrorCode::CacheError, "unsupported cache version in " + path);
    return doc;
}

}  // namespace

std::string to_string(const ExtIndex& b) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [k, a] : b) {
        if (!first) os << ", ";
        first = false;
        os << k << ": (";
        for (std::size_t t = 0; t < a.size(); ++t) os << (t ? "," : "") << a[t];
        os << ")";
    }
    os << "}";
    return os.str();
}

GlobalBasis::GlobalBasis(const HatAlgebra& h, const DualPbw& pbw) : h_(h), pbw_(pbw) {
    if (&h.context() != &pbw.context()) throw Error(ErrorCode::InvalidArgument, "algebra and PBW data use different contexts");
}

ExtIndex GlobalBasis::canonical(const ExtIndex& b) const {
    ExtIndex r;
    for (const auto& [k, a] : b) {
        if (a.size() != pbw_.length()) throw Error(ErrorCode::InvalidArgument, "exponent vector has the wrong length");
        bool zero = true;
        for (int e : a) {
            if (e < 0) throw Error(ErrorCode::NegativeCoordinate, "negative PBW exponent");
            zero = zero && e == 0;
        }
        if (!zero) r[k] = a;
    }
    return r;
}

std::map<int, RootVec> GlobalBasis::depth_profile(const ExtIndex& b) const {
    std::map<int, RootVec> p;
    for (const auto& [k, a] : b) p[k] = pbw_.depth_of(a);
    return p;
}

RootVec GlobalBasis::weight(const ExtIndex& b) const {
    RootVec w = h_.cartan().zero();
    for (const auto& [k, d] : depth_profile(b)) w += level_weight(k, d);
    return w;
}

int GlobalBasis::strong_height(const ExtIndex& b) const {
    int s = 0;
    for (const auto& [k, d] : depth_profile(b)) s += ht(d);
    return s;
}

bool GlobalBasis::preceq(const ExtIndex& a, const ExtIndex& b) const {
    auto pa = depth_profile(a), pb = depth_profile(b);
    for (const auto& [k, d] : pa) {
        auto it = pb.find(k);
        if (it == pb.end() || !leq_Q(d, it->second)) return false;
    }
    return true;
}

std::vector<ExtIndex> GlobalBasis::indices(int lo, int hi, int max_height) const {
    std::vector<ExtIndex> out;
    ExtIndex cur;
    std::function<void(int, int)> rec = [&](int level, int remaining) {
        if (level > hi) {
            out.push_back(cur);
            return;
        }
        for (const auto& d : h_.context().depths_up_to(remaining)) {
            if (d.is_zero()) {
                rec(level + 1, remaining);
                continue;
            }
            for (const auto& a : pbw_.exponents_of_depth(d)) {
                cur[level] = a;
                rec(level + 1, remaining - ht(d));
            }
            cur.erase(level);
        }
    };
    rec(lo, max_height);
    std::stable_sort(out.begin(), out.end(), [&](const ExtIndex& x, const ExtIndex& y) { return strong_height(x) < strong_height(y); });
    return out;
}

std::vector<ExtIndex> GlobalBasis::block(const RootVec& wt, int lo, int hi, int max_height) const {
    std::vector<ExtIndex> out;
    for (auto& b : indices(lo, hi, max_height))
        if (weight(b) == wt) out.push_back(std::move(b));
    return out;
}

HatElem GlobalBasis::P(const ExtIndex& b) const {
    HatElem r = h_.one();
    for (const auto& [k, a] : canonical(b)) r = h_.mul(h_.phi_m(pbw_.gup(a), k), r);
    return r;
}

const Mat& GlobalBasis::phi_gup_inverse(const RootVec& depth) const {
    return phi_inv_.get_or_compute(depth, [&] {
        const GupBlock& blk = pbw_.gup_block(depth);
        std::size_t n = h_.context().weight_basis(depth).size();
        RatFunc s = phi_scale(h_.cartan(), depth);
        Mat t(blk.index.size(), Vec(n));
        for (std::size_t a = 0; a < blk.index.size(); ++a) {
            const Vec* v = blk.elements[a].carrier.at(depth);
            if (!v) throw Error(ErrorCode::VerificationFailed, "upper global basis element without a component at its depth");
            for (std::size_t j = 0; j < n; ++j) t[a][j] = (*v)[j] * s;
        }
        return mat_inverse(t);
    });
}

IndexCoords GlobalBasis::expand_in_P(const HatElem& x) const {
    IndexCoords out;
    for (const auto& [key, c] : x.terms()) {
        std::vector<std::pair<ExtIndex, RatFunc>> partial{{ExtIndex{}, c}};
        for (const auto& f : key) {
            const Mat& inv = phi_gup_inverse(f.depth);
            const GupBlock& blk = pbw_.gup_block(f.depth);
            std::vector<std::pair<ExtIndex, RatFunc>> next;
            for (const auto& [idx, pc] : partial)
                for (std::size_t a = 0; a < blk.index.size(); ++a) {
                    const RatFunc& t = inv[f.index][a];
                    if (t.is_zero()) continue;
                    ExtIndex n = idx;
                    n[f.level] = blk.index[a];
                    next.emplace_back(std::move(n), pc * t);
                }
            partial.swap(next);
        }
        for (const auto& [idx, pc] : partial) add_coord(out, idx, pc);
    }
    return out;
}

HatElem GlobalBasis::from_p_coords(const IndexCoords& c) const {
    HatElem r;
    for (const auto& [b, coef] : c) r += P(b).scaled(coef);
    return r;
}

const GBEntry& GlobalBasis::G(const ExtIndex& b) const {
    ExtIndex key = canonical(b);
    return entries_.get_or_compute(key, [&] { return build(key); });
}

IndexCoords GlobalBasis::peel_to_G(IndexCoords coords) const {
    IndexCoords out;
    while (!coords.empty()) {
        auto top = coords.begin();
        for (auto it = coords.begin(); it != coords.end(); ++it)
            if (strong_height(it->first) > strong_height(top->first)) top = it;
        ExtIndex b = top->first;
        RatFunc coef = top->second;
        const GBEntry& g = G(b);
        for (const auto& [k, v] : g.in_p) add_coord(coords, k, -coef * v);
        if (coords.count(b)) throw Error(ErrorCode::NotInSpan, "peeling did not remove " + to_string(b));
        add_coord(out, b, coef);
    }
    return out;
}

GBEntry GlobalBasis::build(const ExtIndex& b) const {
    GBEntry e;
    e.index = b;
    e.weight = weight(b);
    HatElem p = P(b);
    e.element = p;
    e.in_p[b] = RatFunc(1);
    if (b.empty()) return e;
    // c(P(b)) = P(b) + sum_{b' < b} p_{b,b'} G(b')
    IndexCoords lower = expand_in_P(h_.c_h(p) - p);
    for (const auto& [bp, coef] : lower)
        if (!prec(bp, b))
            throw Error(ErrorCode::VerificationFailed, "c(P" + to_string(b) + ") involves P" + to_string(bp) + ", which is not lower");
    for (const auto& [bp, coef] : peel_to_G(lower)) {
        if (!is_integer_laurent_whole_powers(coef))
            throw Error(ErrorCode::NonIntegralTransition, "transition coefficient " + coef.to_string() + " at " + to_string(bp));
        if (coef.bar() != -coef)
            throw Error(ErrorCode::NonAntisymmetric, "transition coefficient " + coef.to_string() + " at " + to_string(bp));
        RatFunc f = positive_part(coef);
        const GBEntry& g = G(bp);
        e.element += g.element.scaled(f);
        for (const auto& [k, v] : g.in_p) add_coord(e.in_p, k, f * v);
    }
    if (h_.c_h(e.element) != e.element) throw Error(ErrorCode::VerificationFailed, "G" + to_string(b) + " is not c-fixed");
    return e;
}

HatElem GlobalBasis::G_tilde(const ExtIndex& b) const {
    const GBEntry& g = G(b);
    return g.element.scaled(RatFunc::v_pow(-h_.cartan().N_quad(g.weight)));
}

IndexCoords GlobalBasis::expand_in_G(const HatElem& x) const { return peel_to_G(expand_in_P(x)); }

IndexCoords GlobalBasis::expand_in_G_tilde(const HatElem& x) const {
    IndexCoords r;
    for (const auto& [b, c] : expand_in_G(x)) r[b] = c * RatFunc::v_pow(h_.cartan().N_quad(weight(b)));
    return r;
}

HatElem GlobalBasis::M_monomial(const ExtIndex& c) const {
    HatElem r = h_.one();
    for (const auto& [k, a] : canonical(c)) r = h_.mul(h_.phi_m(pbw_.monomial(a), k), r);
    return r;
}

HatElem GlobalBasis::E_standard(const ExtIndex& c) const { return h_.sigma_h(M_monomial(c)); }

std::vector<StarPair> GlobalBasis::star_orbit_check(const RootVec& wt, int lo, int hi, int max_height) const {
    std::vector<ExtIndex> src = block(wt, lo, hi, max_height);
    std::vector<ExtIndex> dst = block(wt, -hi, -lo, max_height);
    if (src.size() != dst.size())
        throw Error(ErrorCode::SetMismatch, "blocks have " + std::to_string(src.size()) + " and " + std::to_string(dst.size()) + " elements");
    std::vector<StarPair> pairs;
    std::vector<bool> used(dst.size(), false);
    for (const auto& b : src) {
        HatElem s = h_.star_h(G(b).element);
        bool found = false;
        for (std::size_t t = 0; t < dst.size() && !found; ++t) {
            if (used[t] || G(dst[t]).element != s) continue;
            used[t] = true;
            found = true;
            pairs.push_back({b, dst[t]});
        }
        if (!found) throw Error(ErrorCode::SetMismatch, "star image of G" + to_string(b) + " is not a global basis element");
    }
    return pairs;
}

std::size_t GlobalBasis::load_cache(const std::string& path) const {
    bool exists = false;
    json doc = read_cache_file(path, exists);
    if (!exists) return 0;
    std::size_t n = 0;
    try {
        for (const auto& table : doc.at("tables")) {
            if (table.at("cartan").get<std::string>() != h_.cartan().signature()) continue;
            if (table.at("reduced_word").get<std::vector<int>>() != pbw_.reduced_word()) continue;
            for (const auto& entry : table.at("entries")) {
                GBEntry e;
                e.index = canonical(index_from_json(entry.at("index")));
                e.weight = weight(e.index);
                for (const auto& t : entry.at("in_p")) {
                    RatFunc c(laurent_from_json(t.at("num")), laurent_from_json(t.at("den")));
                    add_coord(e.in_p, canonical(index_from_json(t.at("index"))), c);
                }
                e.element = from_p_coords(e.in_p);
                entries_.insert(e.index, std::move(e));
                ++n;
            }
        }
    } catch (const json::exception& ex) {
        throw Error(ErrorCode::CacheError, std::string("malformed cache entry: ") + ex.what());
    }
    return n;
}

void GlobalBasis::save_cache(const std::string& path) const {
    bool exists = false;
    json doc = read_cache_file(path, exists);
    if (!exists) doc = json{{"format", kCacheFormat}, {"version", kCacheVersion}, {"tables", json::array()}};
    json entries = json::array();
    entries_.for_each([&](const ExtIndex& b, const GBEntry& e) {
        json in_p = json::array();
        for (const auto& [k, c] : e.in_p)
            in_p.push_back({{"index", index_json(k)}, {"num", laurent_json(c.num())}, {"den", laurent_json(c.den())}});
        entries.push_back({{"index", index_json(b)}, {"in_p", in_p}});
    });
    json table{{"cartan", h_.cartan().signature()}, {"reduced_word", pbw_.reduced_word()}, {"entries", entries}};
    json tables = json::array();
    for (const auto& t : doc.at("tables"))
        if (t.value("cartan", "") != h_.cartan().signature() || t.value("reduced_word", std::vector<int>{}) != pbw_.reduced_word())
            tables.push_back(t);
    tables.push_back(table);
    doc["tables"] = tables;
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::CacheError, "cannot write cache file " + path);
    out << doc.dump(1) << "\n";
}

}  // namespace bosonext
