#pragma once
#include "qmk/numberfield.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace qmk {

// Dense matrix over a field handle F (see FieldLike).
template <class F>
struct Mat {
    using E = typename F::Elem;
    size_t rows = 0, cols = 0;
    std::vector<E> a;

    Mat() = default;
    Mat(const F& f, size_t r, size_t c) : rows(r), cols(c), a(r * c, f.zero()) {}

    E& at(size_t i, size_t j) { return a[i * cols + j]; }
    const E& at(size_t i, size_t j) const { return a[i * cols + j]; }
};

template <class F>
Mat<F> mat_identity(const F& f, size_t n) {
    Mat<F> m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

template <class F>
Mat<F> mat_mul(const F& f, const Mat<F>& x, const Mat<F>& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix product: shape mismatch");
    Mat<F> r(f, x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k) {
            if (f.is_zero(x.at(i, k))) continue;
            for (size_t j = 0; j < y.cols; ++j)
                r.at(i, j) = f.add(r.at(i, j), f.mul(x.at(i, k), y.at(k, j)));
        }
    return r;
}

template <class F>
Mat<F> mat_add(const F& f, const Mat<F>& x, const Mat<F>& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw std::invalid_argument("matrix sum: shape mismatch");
    Mat<F> r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = f.add(r.a[i], y.a[i]);
    return r;
}

template <class F>
Mat<F> mat_sub(const F& f, const Mat<F>& x, const Mat<F>& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw std::invalid_argument("matrix difference: shape mismatch");
    Mat<F> r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = f.sub(r.a[i], y.a[i]);
    return r;
}

template <class F>
Mat<F> mat_scale(const F& f, const typename F::Elem& k, const Mat<F>& x) {
    Mat<F> r = x;
    for (auto& e : r.a) e = f.mul(k, e);
    return r;
}

template <class F>
Mat<F> mat_transpose(const F& f, const Mat<F>& x) {
    Mat<F> r(f, x.cols, x.rows);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

template <class F>
typename F::Elem mat_trace(const F& f, const Mat<F>& x) {
    if (x.rows != x.cols) throw std::invalid_argument("trace: not square");
    typename F::Elem t = f.zero();
    for (size_t i = 0; i < x.rows; ++i) t = f.add(t, x.at(i, i));
    return t;
}

template <class F>
bool mat_eq(const F& f, const Mat<F>& x, const Mat<F>& y) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    for (size_t i = 0; i < x.a.size(); ++i)
        if (!f.eq(x.a[i], y.a[i])) return false;
    return true;
}

namespace detail {

// Adjugate-based inverse for tiny matrices: one reciprocal in total, instead
// of one per pivot row.  Division is by far the costliest field operation
// over a number field, and most invertible forms in practice are this small.
template <class F>
std::optional<Mat<F>> mat_inv_small(const F& f, const Mat<F>& m) {
    size_t n = m.rows;
    if (n == 1) {
        if (f.is_zero(m.at(0, 0))) return std::nullopt;
        Mat<F> inv(f, 1, 1);
        inv.at(0, 0) = f.div(f.one(), m.at(0, 0));
        return inv;
    }
    if (n == 2) {
        typename F::Elem det =
            f.sub(f.mul(m.at(0, 0), m.at(1, 1)), f.mul(m.at(0, 1), m.at(1, 0)));
        if (f.is_zero(det)) return std::nullopt;
        typename F::Elem di = f.div(f.one(), det);
        Mat<F> inv(f, 2, 2);
        inv.at(0, 0) = f.mul(di, m.at(1, 1));
        inv.at(0, 1) = f.neg(f.mul(di, m.at(0, 1)));
        inv.at(1, 0) = f.neg(f.mul(di, m.at(1, 0)));
        inv.at(1, 1) = f.mul(di, m.at(0, 0));
        return inv;
    }
    // n == 3: inverse = adjugate / det, with the adjugate from 2x2 cofactors.
    auto cof = [&](size_t r0, size_t r1, size_t c0, size_t c1) {
        return f.sub(f.mul(m.at(r0, c0), m.at(r1, c1)), f.mul(m.at(r0, c1), m.at(r1, c0)));
    };
    typename F::Elem c00 = cof(1, 2, 1, 2);
    typename F::Elem c01 = cof(1, 2, 0, 2);
    typename F::Elem c02 = cof(1, 2, 0, 1);
    typename F::Elem det = f.add(f.sub(f.mul(m.at(0, 0), c00), f.mul(m.at(0, 1), c01)),
                                 f.mul(m.at(0, 2), c02));
    if (f.is_zero(det)) return std::nullopt;
    typename F::Elem di = f.div(f.one(), det);
    Mat<F> inv(f, 3, 3);
    inv.at(0, 0) = f.mul(di, c00);
    inv.at(1, 0) = f.neg(f.mul(di, c01));
    inv.at(2, 0) = f.mul(di, c02);
    inv.at(0, 1) = f.neg(f.mul(di, cof(0, 2, 1, 2)));
    inv.at(1, 1) = f.mul(di, cof(0, 2, 0, 2));
    inv.at(2, 1) = f.neg(f.mul(di, cof(0, 2, 0, 1)));
    inv.at(0, 2) = f.mul(di, cof(0, 1, 1, 2));
    inv.at(1, 2) = f.neg(f.mul(di, cof(0, 1, 0, 2)));
    inv.at(2, 2) = f.mul(di, cof(0, 1, 0, 1));
    return inv;
}

} // namespace detail

// Inverse; empty when singular.  Tiny matrices go through the adjugate;
// larger ones use Gauss-Jordan with one reciprocal per pivot.
template <class F>
std::optional<Mat<F>> mat_inv(const F& f, Mat<F> m) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse: not square");
    size_t n = m.rows;
    if (n >= 1 && n <= 3) return detail::mat_inv_small(f, m);
    Mat<F> inv = mat_identity(f, n);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && f.is_zero(m.at(piv, col))) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != col)
            for (size_t j = 0; j < n; ++j) {
                std::swap(m.at(piv, j), m.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        typename F::Elem di = f.div(f.one(), m.at(col, col));
        for (size_t j = 0; j < n; ++j) {
            m.at(col, j) = f.mul(m.at(col, j), di);
            inv.at(col, j) = f.mul(inv.at(col, j), di);
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || f.is_zero(m.at(r, col))) continue;
            typename F::Elem k = m.at(r, col);
            for (size_t j = 0; j < n; ++j) {
                m.at(r, j) = f.sub(m.at(r, j), f.mul(k, m.at(col, j)));
                inv.at(r, j) = f.sub(inv.at(r, j), f.mul(k, inv.at(col, j)));
            }
        }
    }
    return inv;
}

// Basis of the right null space {v : M v = 0}.
template <class F>
std::vector<std::vector<typename F::Elem>> null_space(const F& f, Mat<F> m) {
    size_t rows = m.rows, cols = m.cols;
    std::vector<size_t> pivot_col;
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && f.is_zero(m.at(piv, col))) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (size_t j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        typename F::Elem di = f.div(f.one(), m.at(rank, col));
        for (size_t j = 0; j < cols; ++j) m.at(rank, j) = f.mul(m.at(rank, j), di);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || f.is_zero(m.at(r, col))) continue;
            typename F::Elem k = m.at(r, col);
            for (size_t j = 0; j < cols; ++j)
                m.at(r, j) = f.sub(m.at(r, j), f.mul(k, m.at(rank, j)));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<typename F::Elem>> basis;
    for (size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<typename F::Elem> v(cols, f.zero());
        v[free_col] = f.one();
        for (size_t r = 0; r < rank; ++r)
            v[pivot_col[r]] = f.neg(m.at(r, free_col));
        basis.push_back(std::move(v));
    }
    return basis;
}

// Matrix-vector product.
template <class F>
std::vector<typename F::Elem> mat_apply(const F& f, const Mat<F>& m,
                                        const std::vector<typename F::Elem>& v) {
    if (m.cols != v.size()) throw std::invalid_argument("matrix apply: shape mismatch");
    std::vector<typename F::Elem> r(m.rows, f.zero());
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j)
            if (!f.is_zero(m.at(i, j))) r[i] = f.add(r[i], f.mul(m.at(i, j), v[j]));
    return r;
}

} // namespace qmk
