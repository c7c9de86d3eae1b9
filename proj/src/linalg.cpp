#include "bosonext/linalg.hpp"

#include <limits>

#include "bosonext/error.hpp"

namespace bosonext {

namespace {

std::size_t weight_of(const RatFunc& x) { return x.num().size() + x.den().size(); }

// Row-reduces a in place; pivots are searched in the first ncols columns only.
std::vector<std::size_t> rref(Mat& a, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
        std::size_t best = a.size();
        std::size_t best_w = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = r; i < a.size(); ++i) {
            if (a[i][c].is_zero()) continue;
            std::size_t w = weight_of(a[i][c]);
            if (w < best_w) {
                best = i;
                best_w = w;
            }
        }
        if (best == a.size()) continue;
        std::swap(a[r], a[best]);
        RatFunc p = a[r][c].inv();
        std::size_t width = a[r].size();
        for (std::size_t k = c; k < width; ++k)
            if (!a[r][k].is_zero()) a[r][k] *= p;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            RatFunc f = a[i][c];
            for (std::size_t k = c; k < width; ++k)
                if (!a[r][k].is_zero()) a[i][k] -= f * a[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Mat mat_identity(std::size_t n) {
    Mat m(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = RatFunc(1);
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.empty()) return {};
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Mat r(n, Vec(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (!b[t][j].is_zero()) r[i][j] += a[i][t] * b[t][j];
        }
    return r;
}

Vec mat_vec(const Mat& a, const Vec& x) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (!a[i][j].is_zero() && !x[j].is_zero()) r[i] += a[i][j] * x[j];
    return r;
}

Mat mat_transpose(const Mat& a) {
    if (a.empty()) return {};
    Mat t(a[0].size(), Vec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

Mat mat_inverse(const Mat& a) {
    std::size_t n = a.size();
    Mat aug(n, Vec(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = RatFunc(1);
    }
    auto piv = rref(aug, n);
    if (piv.size() != n) throw Error(ErrorCode::DivisionByZero, "singular matrix");
    Mat inv(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

RatFunc mat_det(Mat a) {
    std::size_t n = a.size();
    RatFunc det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = n;
        std::size_t best_w = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = c; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            std::size_t w = weight_of(a[i][c]);
            if (w < best_w) {
                best = i;
                best_w = w;
            }
        }
        if (best == n) return RatFunc(0);
        if (best != c) {
            std::swap(a[c], a[best]);
            det = -det;
        }
        det *= a[c][c];
        RatFunc p = a[c][c].inv();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            RatFunc f = a[i][c] * p;
            for (std::size_t k = c; k < n; ++k)
                if (!a[c][k].is_zero()) a[i][k] -= f * a[c][k];
        }
    }
    return det;
}

std::size_t mat_rank(Mat a) {
    if (a.empty()) return 0;
    return rref(a, a[0].size()).size();
}

std::vector<Vec> mat_nullspace(const Mat& a, std::size_t ncols) {
    Mat m = a;
    auto piv = rref(m, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        Vec x(ncols);
        x[free] = RatFunc(1);
        for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -m[r][free];
        basis.push_back(std::move(x));
    }
    return basis;
}

bool RowEchelon::add(Vec row) {
    row.resize(ncols_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const RatFunc& f = row[pivots_[r]];
        if (f.is_zero()) continue;
        RatFunc g = f;
        for (std::size_t k = 0; k < ncols_; ++k)
            if (!rows_[r][k].is_zero()) row[k] -= g * rows_[r][k];
    }
    std::size_t p = ncols_;
    std::size_t best_w = std::numeric_limits<std::size_t>::max();
    for (std::size_t k = 0; k < ncols_; ++k) {
        if (row[k].is_zero()) continue;
        std::size_t w = weight_of(row[k]);
        if (w < best_w) {
            p = k;
            best_w = w;
        }
    }
    if (p == ncols_) return false;
    RatFunc s = row[p].inv();
    for (auto& x : row)
        if (!x.is_zero()) x *= s;
    // keep earlier rows reduced in the new pivot column
    for (auto& other : rows_) {
        if (other[p].is_zero()) continue;
        RatFunc f = other[p];
        for (std::size_t k = 0; k < ncols_; ++k)
            if (!row[k].is_zero()) other[k] -= f * row[k];
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(p);
    return true;
}

}  // namespace bosonext
