#pragma once

#include <cstddef>
#include <vector>

#include "bosonext/scalars.hpp"

namespace bosonext {

using Vec = std::vector<RatFunc>;
using Mat = std::vector<Vec>;  // row-major

Mat mat_identity(std::size_t n);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& a, const Vec& x);
Mat mat_transpose(const Mat& a);

/** Inverse over Q(q^{1/2}); throws DivisionByZero when singular. */
Mat mat_inverse(const Mat& a);
RatFunc mat_det(Mat a);
std::size_t mat_rank(Mat a);
/** Basis of {x : a x = 0}. */
std::vector<Vec> mat_nullspace(const Mat& a, std::size_t ncols);

/** @brief Incremental row reduction answering "is this row independent of the rows kept so far". */
class RowEchelon {
public:
    explicit RowEchelon(std::size_t ncols) : ncols_(ncols) {}
    /** Keeps the row and returns true iff it is independent of the kept rows. */
    bool add(Vec row);
    std::size_t rank() const { return rows_.size(); }

private:
    std::size_t ncols_;
    std::vector<Vec> rows_;          // reduced, pivot entry 1
    std::vector<std::size_t> pivots_;
};

}  // namespace bosonext
