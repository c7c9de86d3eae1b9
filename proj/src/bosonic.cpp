#include "bosonext/bosonic.hpp"

#include <algorithm>
#include <functional>

#include "bosonext/error.hpp"

namespace bosonext {

namespace {

bool odd(int k) { return k % 2 != 0; }

// (-1)^{level+1} depth: the weight of a level factor of the given depth.
RootVec level_weight(int level, const RootVec& depth) { return odd(level) ? depth : -depth; }

// Position of the factor at a level, or -1.
int find_level(const NormalKey& k, int level) {
    for (std::size_t t = 0; t < k.size(); ++t)
        if (k[t].level == level) return static_cast<int>(t);
    return -1;
}

// Replaces (or inserts, or removes when depth is zero) the factor at a level.
NormalKey with_level(const NormalKey& k, int level, const RootVec& depth, std::size_t idx) {
    NormalKey r;
    r.reserve(k.size() + 1);
    bool placed = depth.is_zero();
    for (const auto& c : k) {
        if (!placed && c.level < level) {
            r.push_back({level, depth, idx});
            placed = true;
        }
        if (c.level == level) continue;
        r.push_back(c);
    }
    if (!placed) r.push_back({level, depth, idx});
    return r;
}

RatFunc zeta_bar(const CartanDatum& c, int i) { return RatFunc(1) - c.qi_pow(i, -2); }

// q^{1/2 sum d_i n_i}: the factor qq^{beta/2}.
RatFunc qq_half(const CartanDatum& c, const RootVec& depth) {
    int s = 0;
    for (std::size_t i = 0; i < depth.size(); ++i) s += c.d(i) * depth[i];
    return RatFunc::v_pow(s);
}

}  // namespace

// ---------------------------------------------------------------- SerialVec

void SerialVec::add_term(const NormalKey& k, const RatFunc& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

RatFunc SerialVec::coeff(const NormalKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? RatFunc(0) : it->second;
}

SerialVec& SerialVec::operator+=(const SerialVec& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

SerialVec& SerialVec::operator-=(const SerialVec& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

SerialVec SerialVec::scaled(const RatFunc& s) const {
    SerialVec r;
    if (s.is_zero()) return r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
    return r;
}

RootVec letter_weight(const CartanDatum& c, const LevelLetter& l) { return level_weight(l.m, c.simple(l.i)); }

RootVec key_weight(const NormalKey& k) {
    if (k.empty()) return RootVec();
    RootVec w(k.front().depth.size());
    for (const auto& c : k) w += level_weight(c.level, c.depth);
    return w;
}

std::map<int, RootVec> key_profile(const NormalKey& k) {
    std::map<int, RootVec> p;
    for (const auto& c : k) p[c.level] = c.depth;
    return p;
}

// ---------------------------------------------------------------- HatAlgebra

HatElem HatAlgebra::one() const {
    HatElem r;
    r.add_term({}, RatFunc(1));
    return r;
}

HatElem HatAlgebra::generator(int i, int m) const {
    if (i < 0 || static_cast<std::size_t>(i) >= ctx_.rank()) throw Error(ErrorCode::InvalidArgument, "generator index out of range");
    HatElem r;
    r.add_term({{m, cartan().simple(i), 0}}, RatFunc(1));
    return r;
}

HatElem HatAlgebra::generator_power(int i, int m, int n) const {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
    return normalize_word(HatWord(static_cast<std::size_t>(n), LevelLetter{i, m}));
}

HatElem HatAlgebra::divided_power(int i, int m, int n) const {
    return generator_power(i, m, n).scaled(RatFunc(q_factorial(n, cartan().d(static_cast<std::size_t>(i)))).inv());
}

HatWord HatAlgebra::word_of(const NormalKey& k) const {
    HatWord w;
    for (const auto& c : k)
        for (int letter : ctx_.weight_basis(c.depth).words[c.index]) w.push_back({letter, c.level});
    return w;
}

HatElem HatAlgebra::normalize_word(const HatWord& w) const {
    return word_memo_.get_or_compute(w, [&] {
        HatElem out;
        HatPoly work{{w, RatFunc(1)}};
        while (!work.empty()) {
            auto node = work.extract(work.begin());
            const HatWord& word = node.key();
            const RatFunc& c = node.mapped();
            std::size_t k = 0;
            while (k + 1 < word.size() && word[k].m >= word[k + 1].m) ++k;
            if (k + 1 < word.size()) {
                // f_{i,m} f_{j,p} = q^{(-1)^{p-m+1}(a_i,a_j)} f_{j,p} f_{i,m} + delta (1 - q_i^2), m < p
                LevelLetter a = word[k], b = word[k + 1];
                int sign = odd(b.m - a.m + 1) ? -1 : 1;
                HatWord swapped = word;
                std::swap(swapped[k], swapped[k + 1]);
                RatFunc s = c * RatFunc::q_pow(sign * cartan().form_simple(a.i, b.i));
                auto add = [&](const HatWord& key, const RatFunc& v) {
                    auto it = work.find(key);
                    if (it == work.end()) {
                        work.emplace(key, v);
                    } else {
                        it->second += v;
                        if (it->second.is_zero()) work.erase(it);
                    }
                };
                add(swapped, s);
                if (b.i == a.i && b.m == a.m + 1) {
                    HatWord shorter = word;
                    shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(k), shorter.begin() + static_cast<std::ptrdiff_t>(k) + 2);
                    add(shorter, c * (RatFunc(1) - cartan().qi_pow(a.i, 2)));
                }
                continue;
            }
            // level-sorted: reduce each block of equal level
            std::map<int, UqmElem> levels;
            std::size_t start = 0;
            while (start < word.size()) {
                std::size_t end = start;
                Word block;
                while (end < word.size() && word[end].m == word[start].m) block.push_back(word[end++].i);
                levels[word[start].m] = ctx_.coords_of_word(block);
                start = end;
            }
            out += tensor(levels).scaled(c);
        }
        return out;
    });
}

HatElem HatAlgebra::normalize(const HatPoly& x) const {
    HatElem r;
    for (const auto& [w, c] : x) r += normalize_word(w).scaled(c);
    return r;
}

TensorState HatAlgebra::unit_state() const {
    TensorState s;
    s.add_term({}, RatFunc(1));
    return s;
}

TensorState HatAlgebra::act_f(int i, int m, const TensorState& s) const {
    if (i < 0 || static_cast<std::size_t>(i) >= ctx_.rank()) throw Error(ErrorCode::InvalidArgument, "generator index out of range");
    const CartanDatum& cd = cartan();
    RootVec alpha = cd.alpha_level(i, m);
    RootVec simple = cd.simple(i);
    RatFunc zb = zeta_bar(cd, i);
    TensorState out;
    for (const auto& [key, c] : s.terms()) {
        RootVec hw(ctx_.rank());
        for (const auto& f : key)
            if (f.level >= m + 1) hw += level_weight(f.level, f.depth);
        RatFunc scalar = c * RatFunc::q_pow(cd.form(alpha, hw));
        // -zeta_bar e*_i on the factor at level m + 1
        int y = find_level(key, m + 1);
        if (y >= 0 && key[static_cast<std::size_t>(y)].depth[static_cast<std::size_t>(i)] > 0) {
            const LevelCoord& f = key[static_cast<std::size_t>(y)];
            RootVec target = f.depth - simple;
            for (const auto& [row, val] : ctx_.e_star_mat(i, f.depth).cols[f.index])
                out.add_term(with_level(key, m + 1, target, row), -scalar * zb * val);
        }
        // f_i on the factor at level m
        int z = find_level(key, m);
        RootVec depth = z >= 0 ? key[static_cast<std::size_t>(z)].depth : cd.zero();
        std::size_t idx = z >= 0 ? key[static_cast<std::size_t>(z)].index : 0;
        for (const auto& [row, val] : ctx_.left_mul_mat(i, depth).cols[idx])
            out.add_term(with_level(key, m, depth + simple, row), scalar * val);
    }
    return out;
}

TensorState HatAlgebra::act_word(const HatWord& w, const TensorState& s) const {
    TensorState r = s;
    for (std::size_t k = w.size(); k-- > 0;) r = act_f(w[k].i, w[k].m, r);
    return r;
}

TensorState HatAlgebra::act(const HatElem& x, const TensorState& s) const {
    TensorState r;
    for (const auto& [key, c] : x.terms()) r += act_word(word_of(key), s).scaled(c);
    return r;
}

TensorState HatAlgebra::tensor(const std::map<int, UqmElem>& levels) const {
    std::map<NormalKey, RatFunc> acc{{NormalKey{}, RatFunc(1)}};
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        std::map<NormalKey, RatFunc> next;
        for (const auto& [d, v] : it->second.coords())
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (v[j].is_zero()) continue;
                for (const auto& [k, c] : acc) {
                    NormalKey nk = k;
                    if (!d.is_zero()) nk.push_back({it->first, d, j});
                    RatFunc& slot = next[nk];
                    slot += c * v[j];
                }
            }
        acc.swap(next);
    }
    TensorState s;
    for (const auto& [k, c] : acc) s.add_term(k, c);
    return s;
}

TensorState HatAlgebra::F_map(const HatElem& x) const { return act(x, unit_state()); }

HatElem HatAlgebra::mul(const HatElem& x, const HatElem& y) const {
    return G_map(act(x, TensorState(static_cast<const SerialVec&>(y))));
}

HatElem HatAlgebra::pow(const HatElem& x, int n) const {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
    HatElem r = one();
    for (int k = 0; k < n; ++k) r = mul(x, r);
    return r;
}

HatElem HatAlgebra::L_m(const UqmElem& u, int m) const { return G_map(tensor({{m, u}})); }

HatElem HatAlgebra::phi_m(const AqnElem& f, int m) const {
    UqmElem scaled;
    for (const auto& [d, v] : f.carrier.coords()) {
        UqmElem part;
        part.add(d, v);
        scaled += part.scaled(qq_half(cartan(), d) * cartan().zeta_pow(d).inv());
    }
    return L_m(scaled, m);
}

AqnElem HatAlgebra::phi_m_inverse(const HatElem& x, int m) const {
    UqmElem u;
    for (const auto& [key, c] : x.terms()) {
        if (key.size() > 1 || (key.size() == 1 && key[0].level != m))
            throw Error(ErrorCode::InvalidArgument, "element does not lie in a single level subalgebra");
        RootVec d = key.empty() ? cartan().zero() : key[0].depth;
        std::size_t j = key.empty() ? 0 : key[0].index;
        u.add_entry(d, ctx_.weight_basis(d).size(), j, c * qq_half(cartan(), d).inv() * cartan().zeta_pow(d));
    }
    return AqnElem{u};
}

HatElem HatAlgebra::shiftD(const HatElem& x) const {
    HatElem r;
    for (const auto& [key, c] : x.terms()) {
        NormalKey k = key;
        for (auto& f : k) ++f.level;
        r.add_term(k, c);
    }
    return r;
}

HatElem HatAlgebra::shiftD_inverse(const HatElem& x) const {
    HatElem r;
    for (const auto& [key, c] : x.terms()) {
        NormalKey k = key;
        for (auto& f : k) --f.level;
        r.add_term(k, c);
    }
    return r;
}

HatElem HatAlgebra::bar_h(const HatElem& x) const {
    TensorState r;
    for (const auto& [key, c] : x.terms()) {
        HatWord w = word_of(key);
        std::reverse(w.begin(), w.end());
        r += act_word(w, unit_state()).scaled(c.bar());
    }
    return G_map(r);
}

HatElem HatAlgebra::antiD(const HatElem& x) const { return shiftD(bar_h(x)); }

HatElem HatAlgebra::star_h(const HatElem& x) const {
    TensorState r;
    for (const auto& [key, c] : x.terms()) {
        std::map<int, UqmElem> levels;
        for (const auto& f : key) levels[-f.level] = ctx_.star(ctx_.basis_element(f.depth, f.index));
        r += tensor(levels).scaled(c);
    }
    return G_map(r);
}

std::map<RootVec, HatElem> HatAlgebra::components(const HatElem& x) const {
    std::map<RootVec, HatElem> r;
    for (const auto& [key, c] : x.terms()) {
        RootVec w = key.empty() ? cartan().zero() : key_weight(key);
        r[w].add_term(key, c);
    }
    return r;
}

RootVec HatAlgebra::weight(const HatElem& x) const {
    auto comps = components(x);
    if (comps.size() != 1) throw Error(ErrorCode::InhomogeneousInput, "element is not homogeneous");
    return comps.begin()->first;
}

HatElem HatAlgebra::c_h(const HatElem& x) const {
    HatElem r;
    for (const auto& [w, comp] : components(x)) r += bar_h(comp).scaled(RatFunc::q_pow(cartan().N_quad(w)));
    return r;
}

HatElem HatAlgebra::sigma_h(const HatElem& x) const {
    HatElem r;
    for (const auto& [w, comp] : components(x)) r += comp.scaled(RatFunc::v_pow(-cartan().N_quad(w)));
    return r;
}

HatElem HatAlgebra::qbracket(const HatElem& x, const HatElem& y) const {
    HatElem r;
    for (const auto& [wx, cx] : components(x))
        for (const auto& [wy, cy] : components(y))
            r += mul(cx, cy) - mul(cy, cx).scaled(RatFunc::q_pow(-cartan().form(wx, wy)));
    return r;
}

HatElem HatAlgebra::E_op(int i, int m, const HatElem& x) const { return qbracket(x, generator(i, m + 1)); }

HatElem HatAlgebra::Estar_op(int i, int m, const HatElem& x) const { return qbracket(generator(i, m - 1), x); }

HatElem HatAlgebra::E_div(int i, int m, int n, const HatElem& x) const {
    HatElem r = x;
    for (int k = 0; k < n; ++k) r = E_op(i, m, r);
    return r.scaled(RatFunc(q_factorial(n, cartan().d(static_cast<std::size_t>(i)))).inv());
}

HatElem HatAlgebra::Estar_div(int i, int m, int n, const HatElem& x) const {
    HatElem r = x;
    for (int k = 0; k < n; ++k) r = Estar_op(i, m, r);
    return r.scaled(RatFunc(q_factorial(n, cartan().d(static_cast<std::size_t>(i)))).inv());
}

RatFunc HatAlgebra::Mn(const HatElem& x) const { return x.coeff({}); }

RatFunc HatAlgebra::mn_of_action(const HatWord& w, const TensorState& s) const {
    // remaining[(i, k)]: letters f_{i,k} still to act; a factor at level k needs letters (i, k - 1) to vanish
    std::map<std::pair<int, int>, int> remaining;
    for (const auto& l : w) ++remaining[{l.i, l.m}];
    auto viable = [&](const NormalKey& key) {
        for (const auto& f : key)
            for (std::size_t i = 0; i < f.depth.size(); ++i) {
                if (f.depth[i] == 0) continue;
                auto it = remaining.find({static_cast<int>(i), f.level - 1});
                if (it == remaining.end() || it->second < f.depth[i]) return false;
            }
        return true;
    };
    TensorState cur;
    for (const auto& [key, c] : s.terms())
        if (viable(key)) cur.add_term(key, c);
    for (std::size_t k = w.size(); k-- > 0 && !cur.is_zero();) {
        --remaining[{w[k].i, w[k].m}];
        TensorState next = act_f(w[k].i, w[k].m, cur);
        cur = TensorState();
        for (const auto& [key, c] : next.terms())
            if (viable(key)) cur.add_term(key, c);
    }
    return cur.coeff({});
}

RatFunc HatAlgebra::hform(const HatElem& x, const HatElem& y) const {
    auto ycomps = components(shiftD(y));
    RatFunc total;
    for (const auto& [key, c] : x.terms()) {
        RootVec wx = key.empty() ? cartan().zero() : key_weight(key);
        auto it = ycomps.find(-wx);
        if (it == ycomps.end()) continue;
        total += c * mn_of_action(word_of(key), TensorState(static_cast<const SerialVec&>(it->second)));
    }
    return total;
}

RatFunc HatAlgebra::pairform(const HatElem& x, const HatElem& y) const {
    if (x.is_zero() || y.is_zero()) return RatFunc(0);
    RootVec wx = weight(x), wy = weight(y);
    if (wx != wy) return RatFunc(0);
    return hform(x, y) * RatFunc::q_pow(-cartan().N_quad(wx));
}

bool HatAlgebra::is_integral_hat(const HatElem& x) const {
    // group by depth profile; each group is a tensor over levels paired against tuples of divided-power words
    std::map<std::map<int, RootVec>, std::vector<std::pair<NormalKey, RatFunc>>> groups;
    for (const auto& [key, c] : x.terms()) groups[key_profile(key)].emplace_back(key, c);
    for (const auto& [profile, terms] : groups) {
        // per factor position: pairing of basis element j with divided-power word t, times qq^{-beta/2}
        std::vector<std::vector<Vec>> pairing;
        for (const auto& [level, depth] : profile) {
            (void)level;
            const WeightBasis& wb = ctx_.weight_basis(depth);
            auto dws = ctx_.divided_power_words(depth);
            RatFunc s = qq_half(cartan(), depth).inv();
            std::vector<Vec> per(wb.size(), Vec(dws.size()));
            for (std::size_t t = 0; t < dws.size(); ++t) {
                UqmElem d = ctx_.reduce(ctx_.divided_power_word_free(dws[t]));
                const Vec* v = d.at(depth);
                if (!v) continue;
                Vec g = mat_vec(wb.gram, *v);
                for (std::size_t j = 0; j < wb.size(); ++j) per[j][t] = g[j] * s;
            }
            pairing.push_back(std::move(per));
        }
        // keys list factors by descending level; profile iterates ascending
        std::size_t nf = profile.size();
        std::function<bool(std::size_t, const std::vector<std::pair<NormalKey, RatFunc>>&)> rec =
            [&](std::size_t pos, const std::vector<std::pair<NormalKey, RatFunc>>& cur) -> bool {
            if (pos == nf) {
                RatFunc sum;
                for (const auto& kc : cur) sum += kc.second;
                return is_integer_laurent_whole_powers(sum);
            }
            const auto& per = pairing[pos];
            std::size_t ntuples = per.empty() ? 0 : per[0].size();
            for (std::size_t t = 0; t < ntuples; ++t) {
                std::vector<std::pair<NormalKey, RatFunc>> next;
                for (const auto& [key, c] : cur) {
                    const LevelCoord& f = key[nf - 1 - pos];
                    const RatFunc& p = per[f.index][t];
                    if (!p.is_zero()) next.emplace_back(key, c * p);
                }
                if (!rec(pos + 1, next)) return false;
            }
            return true;
        };
        if (!rec(0, terms)) return false;
    }
    return true;
}

int HatAlgebra::ht_strong(const HatElem& x) const {
    if (x.is_zero()) throw Error(ErrorCode::NotStronglyHomogeneous, "zero element");
    const NormalKey& first = x.terms().begin()->first;
    auto profile = key_profile(first);
    for (const auto& [key, c] : x.terms())
        if (key_profile(key) != profile) throw Error(ErrorCode::NotStronglyHomogeneous, "terms have different level weights");
    // a product of level factors has a rank-one coefficient tensor: every flattening has rank one
    std::size_t nf = first.size();
    for (std::size_t pos = 0; pos < nf && nf > 1; ++pos) {
        std::map<std::size_t, std::size_t> rows;
        std::map<NormalKey, std::size_t> cols;
        for (const auto& [key, c] : x.terms()) {
            rows.emplace(key[pos].index, rows.size());
            NormalKey rest = key;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
            cols.emplace(rest, cols.size());
        }
        Mat m(rows.size(), Vec(cols.size()));
        for (const auto& [key, c] : x.terms()) {
            NormalKey rest = key;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
            m[rows.at(key[pos].index)][cols.at(rest)] = c;
        }
        if (mat_rank(m) != 1) throw Error(ErrorCode::NotStronglyHomogeneous, "element is not a product of level factors");
    }
    int h = 0;
    for (const auto& [level, depth] : profile) h += ht(depth);
    return h;
}

}  // namespace bosonext
