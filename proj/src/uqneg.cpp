#include "bosonext/uqneg.hpp"

#include <algorithm>
#include <functional>

#include "bosonext/error.hpp"

namespace bosonext {

// ---------------------------------------------------------------- FreeElem

FreeElem FreeElem::word(const Word& w, const RatFunc& c) {
    FreeElem x;
    x.add_term(w, c);
    return x;
}

void FreeElem::add_term(const Word& w, const RatFunc& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

FreeElem& FreeElem::operator+=(const FreeElem& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

FreeElem& FreeElem::operator-=(const FreeElem& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

FreeElem operator*(const FreeElem& a, const FreeElem& b) {
    FreeElem r;
    for (const auto& [wa, ca] : a.terms_)
        for (const auto& [wb, cb] : b.terms_) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r.add_term(w, ca * cb);
        }
    return r;
}

FreeElem FreeElem::scaled(const RatFunc& s) const {
    FreeElem r;
    if (s.is_zero()) return r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, c * s);
    return r;
}

FreeElem star_u(const FreeElem& x) {
    FreeElem r;
    for (const auto& [w, c] : x.terms()) r.add_term(Word(w.rbegin(), w.rend()), c);
    return r;
}

FreeElem bar_u(const FreeElem& x) {
    FreeElem r;
    for (const auto& [w, c] : x.terms()) r.add_term(Word(w.rbegin(), w.rend()), c.bar());
    return r;
}

// ---------------------------------------------------------------- UqmElem

const Vec* UqmElem::at(const RootVec& depth) const {
    auto it = coords_.find(depth);
    return it == coords_.end() ? nullptr : &it->second;
}

void UqmElem::prune(const RootVec& depth) {
    auto it = coords_.find(depth);
    if (it == coords_.end()) return;
    if (std::all_of(it->second.begin(), it->second.end(), [](const RatFunc& c) { return c.is_zero(); }))
        coords_.erase(it);
}

void UqmElem::add(const RootVec& depth, const Vec& v) {
    auto& dst = coords_[depth];
    if (dst.empty()) dst.resize(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) dst[k] += v[k];
    prune(depth);
}

void UqmElem::add_entry(const RootVec& depth, std::size_t size, std::size_t index, const RatFunc& c) {
    if (c.is_zero()) return;
    auto& dst = coords_[depth];
    if (dst.empty()) dst.resize(size);
    dst[index] += c;
    prune(depth);
}

UqmElem& UqmElem::operator+=(const UqmElem& o) {
    for (const auto& [d, v] : o.coords_) add(d, v);
    return *this;
}

UqmElem& UqmElem::operator-=(const UqmElem& o) { return *this += o.scaled(RatFunc(-1)); }

UqmElem UqmElem::scaled(const RatFunc& s) const {
    UqmElem r;
    if (s.is_zero()) return r;
    for (const auto& [d, v] : coords_) {
        Vec w(v.size());
        for (std::size_t k = 0; k < v.size(); ++k)
            if (!v[k].is_zero()) w[k] = v[k] * s;
        r.coords_.emplace(d, std::move(w));
    }
    return r;
}

// ---------------------------------------------------------------- UqContext

UqContext::UqContext(CartanDatum cartan, int height_bound)
    : cartan_(std::move(cartan)), height_bound_(height_bound) {}

RootVec UqContext::depth(const Word& w) const {
    RootVec d(rank());
    for (int i : w) d[static_cast<std::size_t>(i)] += 1;
    return d;
}

void UqContext::check_height(const RootVec& depth) const {
    if (ht(depth) > height_bound_)
        throw Error(ErrorCode::HeightBoundExceeded,
                    "weight " + to_string(depth) + " exceeds height bound " + std::to_string(height_bound_));
}

FreeElem UqContext::e_prime(int i, const FreeElem& x) const {
    FreeElem r;
    for (const auto& [w, c] : x.terms()) {
        int expo = 0;  // sum over earlier letters of (alpha_i, alpha_letter)
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (w[k] == i) {
                Word sub = w;
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(k));
                r.add_term(sub, c * RatFunc::q_pow(-expo));
            }
            expo += cartan_.form_simple(i, w[k]);
        }
    }
    return r;
}

FreeElem UqContext::e_star(int i, const FreeElem& x) const {
    FreeElem r;
    for (const auto& [w, c] : x.terms()) {
        int expo = 0;  // sum over later letters
        for (std::size_t k = w.size(); k-- > 0;) {
            if (w[k] == i) {
                Word sub = w;
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(k));
                r.add_term(sub, c * RatFunc::q_pow(-expo));
            }
            expo += cartan_.form_simple(i, w[k]);
        }
    }
    return r;
}

RatFunc UqContext::kform_words(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return RatFunc(0);
    if (a.empty()) return RatFunc(1);
    if (depth(a) != depth(b)) return RatFunc(0);
    if (a.size() == 1) return RatFunc(1);
    auto key = std::make_pair(a, b);
    return kform_memo_.get_or_compute(key, [&] {
        int i = a[0];
        Word rest(a.begin() + 1, a.end());
        RatFunc sum;
        int expo = 0;
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (b[k] == i) {
                Word sub = b;
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(k));
                RatFunc v = kform_words(rest, sub);
                if (!v.is_zero()) sum += v * RatFunc::q_pow(-expo);
            }
            expo += cartan_.form_simple(i, b[k]);
        }
        return sum;
    });
}

RatFunc UqContext::kform(const FreeElem& x, const FreeElem& y) const {
    RatFunc s;
    for (const auto& [wa, ca] : x.terms())
        for (const auto& [wb, cb] : y.terms()) {
            RatFunc v = kform_words(wa, wb);
            if (!v.is_zero()) s += ca * cb * v;
        }
    return s;
}

FreeElem UqContext::serre_element(int i, int j) const {
    if (i == j) throw Error(ErrorCode::EqualIndices, "Serre element needs i != j");
    int b = 1 - cartan_.c(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    int di = cartan_.d(static_cast<std::size_t>(i));
    FreeElem r;
    for (int k = 0; k <= b; ++k) {
        Word w(static_cast<std::size_t>(k), i);
        w.push_back(j);
        w.insert(w.end(), static_cast<std::size_t>(b - k), i);
        RatFunc coeff(q_binomial(b, k, di));
        if (k % 2) coeff = -coeff;
        r.add_term(w, coeff);
    }
    return r;
}

FreeElem UqContext::e_serre_apply(int i, int j, const FreeElem& x) const {
    if (i == j) throw Error(ErrorCode::EqualIndices, "Serre operator needs i != j");
    int b = 1 - cartan_.c(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    int di = cartan_.d(static_cast<std::size_t>(i));
    FreeElem r;
    for (int k = 0; k <= b; ++k) {
        FreeElem y = x;
        for (int t = 0; t < b - k; ++t) y = e_prime(i, y);
        y = e_prime(j, y);
        for (int t = 0; t < k; ++t) y = e_prime(i, y);
        RatFunc coeff(q_binomial(b, k, di));
        if (k % 2) coeff = -coeff;
        r += y.scaled(coeff);
    }
    return r;
}

FreeElem UqContext::divided_power_free(int i, int n) const {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative divided power");
    RatFunc s = RatFunc(q_factorial(n, cartan_.d(static_cast<std::size_t>(i)))).inv();
    return FreeElem::word(Word(static_cast<std::size_t>(n), i), s);
}

FreeElem UqContext::divided_power_word_free(const DividedPowerWord& w) const {
    FreeElem r = FreeElem::one();
    for (const auto& [i, n] : w) r = r * divided_power_free(i, n);
    return r;
}

FreeElem UqContext::boson_act(const FreeElem& a, const FreeElem& b, const FreeElem& target) const {
    FreeElem y = b * target;
    FreeElem r;
    for (const auto& [w, c] : a.terms()) {
        FreeElem z = y;
        for (std::size_t k = w.size(); k-- > 0;) z = e_prime(w[k], z);
        r += z.scaled(c);
    }
    return r;
}

std::vector<Word> UqContext::words_of_depth(const RootVec& depth) const {
    std::vector<Word> out;
    Word cur;
    RootVec rem = depth;
    int total = ht(depth);
    std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == total) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = 0; i < rank(); ++i) {
            if (rem[i] == 0) continue;
            rem[i] -= 1;
            cur.push_back(static_cast<int>(i));
            rec();
            cur.pop_back();
            rem[i] += 1;
        }
    };
    rec();
    return out;
}

std::vector<DividedPowerWord> UqContext::divided_power_words(const RootVec& depth) const {
    std::vector<DividedPowerWord> out;
    DividedPowerWord cur;
    RootVec rem = depth;
    std::function<void(int)> rec = [&](int last) {
        if (rem.is_zero()) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = 0; i < rank(); ++i) {
            if (static_cast<int>(i) == last || rem[i] == 0) continue;
            int avail = rem[i];
            for (int n = 1; n <= avail; ++n) {
                rem[i] -= n;
                cur.emplace_back(static_cast<int>(i), n);
                rec(static_cast<int>(i));
                cur.pop_back();
                rem[i] += n;
            }
        }
    };
    rec(-1);
    return out;
}

std::vector<RootVec> UqContext::depths_up_to(int h) const {
    std::vector<RootVec> out;
    RootVec cur(rank());
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == rank()) {
            out.push_back(cur);
            return;
        }
        for (int a = 0; a <= left; ++a) {
            cur[i] = a;
            rec(i + 1, left - a);
        }
        cur[i] = 0;
    };
    rec(0, h);
    std::sort(out.begin(), out.end(), [](const RootVec& a, const RootVec& b) {
        if (ht(a) != ht(b)) return ht(a) < ht(b);
        return a < b;
    });
    return out;
}

WeightBasis UqContext::build_basis(const RootVec& depth) const {
    check_height(depth);
    if (!is_nonnegative(depth)) throw Error(ErrorCode::NegativeCoordinate, "weight space of a non-negative depth");
    WeightBasis wb;
    wb.depth = depth;
    if (depth.is_zero()) {
        wb.words = {Word{}};
        wb.index[Word{}] = 0;
        wb.gram = mat_identity(1);
        wb.gram_inv = mat_identity(1);
        return wb;
    }
    // Every lexicographically-first independent word is f_i followed by such a word one level down.
    std::vector<Word> cand;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (depth[i] == 0) continue;
        const WeightBasis& sub = weight_basis(depth - cartan_.simple(static_cast<int>(i)));
        for (const auto& w : sub.words) {
            Word c{static_cast<int>(i)};
            c.insert(c.end(), w.begin(), w.end());
            cand.push_back(std::move(c));
        }
    }
    RowEchelon ech(cand.size());
    for (const auto& w : cand) {
        Vec row(cand.size());
        for (std::size_t k = 0; k < cand.size(); ++k) row[k] = kform_words(w, cand[k]);
        if (ech.add(std::move(row))) wb.words.push_back(w);
    }
    for (std::size_t k = 0; k < wb.words.size(); ++k) wb.index[wb.words[k]] = k;
    std::size_t n = wb.words.size();
    wb.gram.assign(n, Vec(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) wb.gram[a][b] = kform_words(wb.words[a], wb.words[b]);
    wb.gram_inv = mat_inverse(wb.gram);
    return wb;
}

const WeightBasis& UqContext::weight_basis(const RootVec& depth) const {
    return basis_memo_.get_or_compute(depth, [&] { return build_basis(depth); });
}

Vec UqContext::pair_with_basis(const FreeElem& x, const WeightBasis& b) const {
    Vec p(b.size());
    for (const auto& [w, c] : x.terms())
        for (std::size_t k = 0; k < b.size(); ++k) {
            RatFunc v = kform_words(w, b.words[k]);
            if (!v.is_zero()) p[k] += c * v;
        }
    return p;
}

UqmElem UqContext::reduce(const FreeElem& x) const {
    std::map<RootVec, FreeElem> parts;
    UqmElem r;
    for (const auto& [w, c] : x.terms()) {
        RootVec d = depth(w);
        const WeightBasis& b = weight_basis(d);
        auto it = b.index.find(w);
        if (it != b.index.end()) {
            r.add_entry(d, b.size(), it->second, c);
        } else {
            parts[d].add_term(w, c);
        }
    }
    for (const auto& [d, part] : parts) {
        const WeightBasis& b = weight_basis(d);
        r.add(d, mat_vec(b.gram_inv, pair_with_basis(part, b)));
    }
    return r;
}

UqmElem UqContext::basis_element(const RootVec& depth, std::size_t j) const {
    UqmElem r;
    r.add_entry(depth, weight_basis(depth).size(), j, RatFunc(1));
    return r;
}

UqmElem UqContext::one() const { return basis_element(cartan_.zero(), 0); }

UqmElem UqContext::generator(int i) const { return basis_element(cartan_.simple(i), 0); }

FreeElem UqContext::to_free(const UqmElem& x) const {
    FreeElem r;
    for (const auto& [d, v] : x.coords()) {
        const WeightBasis& b = weight_basis(d);
        for (std::size_t k = 0; k < v.size(); ++k) r.add_term(b.words[k], v[k]);
    }
    return r;
}

UqmElem UqContext::divided_power(int i, int n) const {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative divided power");
    RatFunc s = RatFunc(q_factorial(n, cartan_.d(static_cast<std::size_t>(i)))).inv();
    return coords_of_word(Word(static_cast<std::size_t>(n), i)).scaled(s);
}

UqmElem UqContext::coords_of_word(const Word& w) const { return left_mul_word(w, one()); }

const SparseMat& UqContext::left_mul_mat(int i, const RootVec& depth) const {
    return left_mul_memo_.get_or_compute({i, depth}, [&] {
        const WeightBasis& src = weight_basis(depth);
        const WeightBasis& dst = weight_basis(depth + cartan_.simple(i));
        SparseMat m;
        m.rows = dst.size();
        m.cols.resize(src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            Word w{i};
            w.insert(w.end(), src.words[j].begin(), src.words[j].end());
            auto it = dst.index.find(w);
            if (it != dst.index.end()) {
                m.cols[j].emplace_back(it->second, RatFunc(1));
                continue;
            }
            Vec c = mat_vec(dst.gram_inv, pair_with_basis(FreeElem::word(w), dst));
            for (std::size_t k = 0; k < c.size(); ++k)
                if (!c[k].is_zero()) m.cols[j].emplace_back(k, c[k]);
        }
        return m;
    });
}

namespace {

SparseMat lowering_matrix(const UqContext& ctx, int i, const RootVec& depth,
                          FreeElem (UqContext::*op)(int, const FreeElem&) const) {
    const WeightBasis& src = ctx.weight_basis(depth);
    SparseMat m;
    m.cols.resize(src.size());
    if (depth[static_cast<std::size_t>(i)] == 0) return m;
    RootVec target = depth - ctx.cartan().simple(i);
    m.rows = ctx.weight_basis(target).size();
    for (std::size_t j = 0; j < src.size(); ++j) {
        UqmElem img = ctx.reduce((ctx.*op)(i, FreeElem::word(src.words[j])));
        if (const Vec* v = img.at(target))
            for (std::size_t k = 0; k < v->size(); ++k)
                if (!(*v)[k].is_zero()) m.cols[j].emplace_back(k, (*v)[k]);
    }
    return m;
}

}  // namespace

const SparseMat& UqContext::e_star_mat(int i, const RootVec& depth) const {
    return e_star_memo_.get_or_compute(
        {i, depth}, [&] { return lowering_matrix(*this, i, depth, &UqContext::e_star); });
}

const SparseMat& UqContext::e_prime_mat(int i, const RootVec& depth) const {
    return e_prime_memo_.get_or_compute(
        {i, depth}, [&] { return lowering_matrix(*this, i, depth, &UqContext::e_prime); });
}

UqmElem UqContext::apply_sparse(const SparseMat& m, const RootVec& target, const Vec& v) const {
    Vec out(m.rows);
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero()) continue;
        for (const auto& [row, val] : m.cols[j]) out[row] += v[j] * val;
    }
    UqmElem r;
    r.add(target, out);
    return r;
}

UqmElem UqContext::apply_op(int i, const UqmElem& x, int shift_sign,
                            const SparseMat& (UqContext::*mat)(int, const RootVec&) const) const {
    UqmElem r;
    for (const auto& [d, v] : x.coords()) {
        RootVec target = d;
        target[static_cast<std::size_t>(i)] += shift_sign;
        if (!is_nonnegative(target)) continue;
        r += apply_sparse((this->*mat)(i, d), target, v);
    }
    return r;
}

UqmElem UqContext::left_mul(int i, const UqmElem& x) const { return apply_op(i, x, +1, &UqContext::left_mul_mat); }

UqmElem UqContext::left_mul_word(const Word& w, const UqmElem& x) const {
    UqmElem r = x;
    for (std::size_t k = w.size(); k-- > 0;) r = left_mul(w[k], r);
    return r;
}

UqmElem UqContext::e_prime(int i, const UqmElem& x) const { return apply_op(i, x, -1, &UqContext::e_prime_mat); }

UqmElem UqContext::e_star(int i, const UqmElem& x) const { return apply_op(i, x, -1, &UqContext::e_star_mat); }

UqmElem UqContext::mul(const UqmElem& a, const UqmElem& b) const {
    UqmElem r;
    for (const auto& [d, v] : a.coords()) {
        const WeightBasis& wb = weight_basis(d);
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j].is_zero()) continue;
            r += left_mul_word(wb.words[j], b).scaled(v[j]);
        }
    }
    return r;
}

UqmElem UqContext::star(const UqmElem& x) const { return reduce(star_u(to_free(x))); }

UqmElem UqContext::bar(const UqmElem& x) const { return reduce(bar_u(to_free(x))); }

RatFunc UqContext::kform(const UqmElem& x, const UqmElem& y) const {
    RatFunc s;
    for (const auto& [d, v] : x.coords()) {
        const Vec* w = y.at(d);
        if (!w) continue;
        const Mat& g = weight_basis(d).gram;
        for (std::size_t a = 0; a < v.size(); ++a) {
            if (v[a].is_zero()) continue;
            for (std::size_t b = 0; b < w->size(); ++b)
                if (!(*w)[b].is_zero() && !g[a][b].is_zero()) s += v[a] * g[a][b] * (*w)[b];
        }
    }
    return s;
}

}  // namespace bosonext
