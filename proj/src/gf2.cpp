#include "rfh/gf2.hpp"

#include <stdexcept>

namespace rfh::gf2 {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols != o.rows) throw std::logic_error("gf2: dimension mismatch in product");
    Mat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k)
            if (at(i, k))
                for (int j = 0; j < o.cols; ++j) r.at(i, j) ^= o.at(k, j);
    return r;
}

Vec Mat::operator*(const Vec& v) const {
    if (static_cast<int>(v.size()) != cols)
        throw std::logic_error("gf2: dimension mismatch in matrix-vector product");
    Vec r(rows, 0);
    for (int i = 0; i < rows; ++i) {
        std::uint8_t s = 0;
        for (int j = 0; j < cols; ++j) s ^= at(i, j) & v[j];
        r[i] = s;
    }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows != o.rows || cols != o.cols)
        throw std::logic_error("gf2: dimension mismatch in sum");
    Mat r(rows, cols);
    for (std::size_t i = 0; i < d.size(); ++i) r.d[i] = d[i] ^ o.d[i];
    return r;
}

Mat Mat::transpose() const {
    Mat r(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool Mat::is_zero() const {
    for (auto x : d)
        if (x) return false;
    return true;
}

Mat Mat::cols_subset(const std::vector<int>& idx) const {
    Mat r(rows, static_cast<int>(idx.size()));
    for (int i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) r.at(i, static_cast<int>(j)) = at(i, idx[j]);
    return r;
}

Rref rref(const Mat& A, bool reverse_pivots) {
    Rref res;
    res.R = A;
    Mat& R = res.R;
    int row = 0;
    for (int cc = 0; cc < A.cols && row < A.rows; ++cc) {
        int c = reverse_pivots ? A.cols - 1 - cc : cc;
        int piv = -1;
        for (int r = row; r < A.rows; ++r)
            if (R.at(r, c)) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < A.cols; ++j) std::swap(R.d[static_cast<std::size_t>(piv) * A.cols + j],
                                                       R.d[static_cast<std::size_t>(row) * A.cols + j]);
        for (int r = 0; r < A.rows; ++r)
            if (r != row && R.at(r, c))
                for (int j = 0; j < A.cols; ++j) R.at(r, j) ^= R.at(row, j);
        res.pivot_cols.push_back(c);
        ++row;
    }
    return res;
}

int rank(const Mat& A) {
    return static_cast<int>(rref(A).pivot_cols.size());
}

std::vector<Vec> nullspace(const Mat& A) {
    Rref rr = rref(A);
    std::vector<bool> is_pivot(A.cols, false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int fc = 0; fc < A.cols; ++fc) {
        if (is_pivot[fc]) continue;
        Vec v(A.cols, 0);
        v[fc] = 1;
        for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r)
            if (rr.R.at(static_cast<int>(r), fc)) v[rr.pivot_cols[r]] = 1;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Mat& A, const Vec& b, bool reverse_pivots) {
    if (static_cast<int>(b.size()) != A.rows)
        throw std::logic_error("gf2: rhs size mismatch");
    Mat aug(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[i];
    }
    // Eliminate only over the first A.cols columns.
    Mat R = aug;
    std::vector<int> pivot_cols;
    int row = 0;
    for (int cc = 0; cc < A.cols && row < A.rows; ++cc) {
        int c = reverse_pivots ? A.cols - 1 - cc : cc;
        int piv = -1;
        for (int r = row; r < A.rows; ++r)
            if (R.at(r, c)) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j <= A.cols; ++j)
                std::swap(R.d[static_cast<std::size_t>(piv) * R.cols + j],
                          R.d[static_cast<std::size_t>(row) * R.cols + j]);
        for (int r = 0; r < A.rows; ++r)
            if (r != row && R.at(r, c))
                for (int j = 0; j <= A.cols; ++j) R.at(r, j) ^= R.at(row, j);
        pivot_cols.push_back(c);
        ++row;
    }
    for (int r = row; r < A.rows; ++r)
        if (R.at(r, A.cols)) return std::nullopt;  // inconsistent
    Vec x(A.cols, 0);
    for (std::size_t r = 0; r < pivot_cols.size(); ++r)
        x[pivot_cols[r]] = R.at(static_cast<int>(r), A.cols);
    return x;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] ^ b[i];
    return r;
}

bool SpanBasis::contains(const Vec& v) const {
    Vec w = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        int l = lead_[i];
        if (w[l]) w = gf2::add(w, rows_[i]);
    }
    for (auto x : w)
        if (x) return false;
    return true;
}

bool SpanBasis::add(const Vec& v) {
    Vec w = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        int l = lead_[i];
        if (w[l]) w = gf2::add(w, rows_[i]);
    }
    int lead = -1;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i]) {
            lead = static_cast<int>(i);
            break;
        }
    if (lead < 0) return false;
    rows_.push_back(w);
    lead_.push_back(lead);
    originals_.push_back(v);
    return true;
}

}  // namespace rfh::gf2
