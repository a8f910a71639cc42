#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace rfh::gf2 {

using Vec = std::vector<std::uint8_t>;

struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> d;  // row-major, entries 0/1

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), d(static_cast<std::size_t>(r) * c, 0) {}

    std::uint8_t& at(int r, int c) { return d[static_cast<std::size_t>(r) * cols + c]; }
    std::uint8_t at(int r, int c) const { return d[static_cast<std::size_t>(r) * cols + c]; }

    static Mat identity(int n);
    Mat operator*(const Mat& o) const;
    Vec operator*(const Vec& v) const;
    Mat operator+(const Mat& o) const;
    Mat transpose() const;
    bool is_zero() const;
    Mat cols_subset(const std::vector<int>& idx) const;
};

struct Rref {
    Mat R;
    std::vector<int> pivot_cols;  // one per nonzero row of R, increasing
};

// Column order determines pivot preference; reverse_pivots flips it (used to
// exercise a second, equally valid section choice).
Rref rref(const Mat& A, bool reverse_pivots = false);

int rank(const Mat& A);

// Basis of the right kernel, as columns.
std::vector<Vec> nullspace(const Mat& A);

// Particular solution of A x = b with non-pivot variables set to 0.
std::optional<Vec> solve(const Mat& A, const Vec& b, bool reverse_pivots = false);

// Incremental echelon basis; add() returns false if v was already in the span.
struct SpanBasis {
    std::vector<Vec> rows_;        // echelonized copies
    std::vector<int> lead_;        // leading index of each row
    std::vector<Vec> originals_;   // vectors as inserted

    bool contains(const Vec& v) const;
    bool add(const Vec& v);
    int dim() const { return static_cast<int>(rows_.size()); }
};

Vec add(const Vec& a, const Vec& b);

}  // namespace rfh::gf2
