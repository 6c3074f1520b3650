#pragma once
#include "qmk/error.hpp"
#include "qmk/graph.hpp"
#include "qmk/matrix.hpp"
#include "qmk/numberfield.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qmk {

// The bilinear-form datum attached to an unordered pair of adjacent vertices
// i < j: fwd plays the role of the form on V_ij x V_ji and bwd the form in the
// opposite direction. Both are invertible a x a matrices, a = multiplicity.
template <class F>
struct FormPair {
    int dim = 1;
    Mat<F> fwd, bwd;
};

// The self-pairing attached to a vertex with loops: an invertible a x a
// matrix, a = loop multiplicity.
template <class F>
struct SelfForm {
    int dim = 1;
    Mat<F> e;
};

// A candidate solution of the vertex trace equations:
//   for each vertex i,  sum_j Tr(E_ij (E_ji^t)^{-1}) = lambda,
// where the sum runs over neighbors j (pair forms) and the vertex itself
// (self form), all over the working field F.
template <class F>
struct ModuleSolution {
    F field;
    MultiGraph graph;
    typename F::Elem lam;
    std::map<std::pair<int, int>, FormPair<F>> pairs; // key (i, j) with i < j
    std::map<int, SelfForm<F>> selfs;

    explicit ModuleSolution(F f) : field(std::move(f)), graph(1), lam(field.zero()) {}
};

namespace detail {

// Tr(x * y) without forming the product.
template <class F>
typename F::Elem product_trace(const F& f, const Mat<F>& x, const Mat<F>& y) {
    typename F::Elem t = f.zero();
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k)
            t = f.add(t, f.mul(x.at(i, k), y.at(k, i)));
    return t;
}

template <class F>
Mat<F> inverse_transpose(const F& f, const Mat<F>& m) {
    auto inv = mat_inv(f, mat_transpose(f, m));
    if (!inv)
        throw Error(ErrorCode::InvalidSolution, "bilinear form matrix is singular");
    return *inv;
}

// Tr(x (m^t)^{-1}) as an undivided fraction {numerator, det(m)}, using
// (m^t)^{-1} = adj(m)^t / det(m), so numerator = sum_ij x_ij adj(m)_ij.
// Lets callers batch the reciprocals of several determinants into one
// division. Only for dims 1..3 (all forms of multiplicity <= 3); nullopt
// beyond that, where the caller should invert directly.
template <class F>
std::optional<std::pair<typename F::Elem, typename F::Elem>>
trace_quotient_parts(const F& f, const Mat<F>& x, const Mat<F>& m) {
    size_t n = m.rows;
    if (n < 1 || n > 3) return std::nullopt;
    if (n == 1) return std::make_pair(x.at(0, 0), m.at(0, 0));
    if (n == 2) {
        typename F::Elem det =
            f.sub(f.mul(m.at(0, 0), m.at(1, 1)), f.mul(m.at(0, 1), m.at(1, 0)));
        typename F::Elem numer = f.add(
            f.sub(f.mul(x.at(0, 0), m.at(1, 1)), f.mul(x.at(0, 1), m.at(0, 1))),
            f.sub(f.mul(x.at(1, 1), m.at(0, 0)), f.mul(x.at(1, 0), m.at(1, 0))));
        return std::make_pair(std::move(numer), std::move(det));
    }
    auto cof = [&](size_t r0, size_t r1, size_t c0, size_t c1) {
        return f.sub(f.mul(m.at(r0, c0), m.at(r1, c1)), f.mul(m.at(r0, c1), m.at(r1, c0)));
    };
    typename F::Elem a00 = cof(1, 2, 1, 2), a10 = f.neg(cof(1, 2, 0, 2)), a20 = cof(1, 2, 0, 1);
    typename F::Elem det = f.add(f.add(f.mul(m.at(0, 0), a00), f.mul(m.at(0, 1), a10)),
                                 f.mul(m.at(0, 2), a20));
    typename F::Elem numer = f.zero();
    auto acc = [&](size_t i, size_t j, const typename F::Elem& adj_ij) {
        numer = f.add(numer, f.mul(x.at(i, j), adj_ij));
    };
    acc(0, 0, a00);
    acc(1, 0, a10);
    acc(2, 0, a20);
    acc(0, 1, f.neg(cof(0, 2, 1, 2)));
    acc(1, 1, cof(0, 2, 0, 2));
    acc(2, 1, f.neg(cof(0, 2, 0, 1)));
    acc(0, 2, cof(0, 1, 1, 2));
    acc(1, 2, f.neg(cof(0, 1, 0, 2)));
    acc(2, 2, cof(0, 1, 0, 1));
    return std::make_pair(std::move(numer), std::move(det));
}

} // namespace detail

// The pair of trace invariants (x, y):
//   x = Tr(fwd (bwd^t)^{-1})  (the contribution at the smaller vertex),
//   y = Tr(bwd (fwd^t)^{-1})  (the contribution at the larger vertex).
// Invariant under the gauge action (fwd, bwd) -> (P^t fwd Q, Q^t bwd P).
template <class F>
std::pair<typename F::Elem, typename F::Elem> trace_invariant(const F& f, const FormPair<F>& p) {
    auto a = detail::trace_quotient_parts(f, p.fwd, p.bwd);
    auto b = detail::trace_quotient_parts(f, p.bwd, p.fwd);
    if (a && b) {
        if (f.is_zero(a->second) || f.is_zero(b->second))
            throw Error(ErrorCode::InvalidSolution, "bilinear form matrix is singular");
        return {f.div(a->first, a->second), f.div(b->first, b->second)};
    }
    return {detail::product_trace(f, p.fwd, detail::inverse_transpose(f, p.bwd)),
            detail::product_trace(f, p.bwd, detail::inverse_transpose(f, p.fwd))};
}

// Tr(E (E^t)^{-1}) of a self pairing.
template <class F>
typename F::Elem self_trace_invariant(const F& f, const SelfForm<F>& s) {
    if (auto parts = detail::trace_quotient_parts(f, s.e, s.e)) {
        if (f.is_zero(parts->second))
            throw Error(ErrorCode::InvalidSolution, "bilinear form matrix is singular");
        return f.div(parts->first, parts->second);
    }
    return detail::product_trace(f, s.e, detail::inverse_transpose(f, s.e));
}

// Constructs a pair of forms with prescribed trace invariants (x, y).
// Admissible targets:
//   a = 1: the hyperbola x y = 1;
//   a = 2: (0, 0) or x y != 0;
//   a >= 3: the whole plane.
// Anything else throws OutsideModuliImage. Canonical section: fwd = identity,
// bwd = S with S diagonal or companion-shaped; padding directions contribute
// (1, 1) each.
template <class F>
FormPair<F> realize_pair_traces(const F& f, int a, const typename F::Elem& x,
                                const typename F::Elem& y) {
    if (a < 1) throw std::invalid_argument("pair multiplicity must be positive");
    FormPair<F> out;
    out.dim = a;
    out.fwd = mat_identity(f, size_t(a));
    out.bwd = mat_identity(f, size_t(a));

    if (a == 1) {
        // (x, y) = (s, 1/s): realizable iff x y = 1
        if (!f.eq(f.mul(x, y), f.one()))
            throw Error(ErrorCode::OutsideModuliImage,
                        "1-dimensional pair traces must satisfy x*y = 1");
        out.fwd.at(0, 0) = x;
        return out;
    }

    // Head size 2 or 3 in the top-left corner, identity padding elsewhere.
    // A k x k head must realize (x - (a-k), y - (a-k)).
    auto head2 = [&](const typename F::Elem& hx, const typename F::Elem& hy, Mat<F>& S) {
        // S = companion of z^2 - hy z + w with w = hy / hx:
        // Tr(S) = hy, Tr(S^{-1}) = hy / w = hx.
        typename F::Elem w = f.div(hy, hx);
        S.at(0, 0) = f.zero();
        S.at(0, 1) = f.neg(w);
        S.at(1, 0) = f.one();
        S.at(1, 1) = hy;
    };

    typename F::Elem x2 = f.sub(x, f.from_rat(Rat(a - 2)));
    typename F::Elem y2 = f.sub(y, f.from_rat(Rat(a - 2)));
    bool x2z = f.is_zero(x2), y2z = f.is_zero(y2);

    if (x2z && y2z) {
        // S = diag(1, -1) gives (0, 0)
        out.bwd.at(1, 1) = f.neg(f.one());
        return out;
    }
    if (!x2z && !y2z) {
        head2(x2, y2, out.bwd);
        return out;
    }
    // Head target on the punctured axes: impossible in dimension 2, use a
    // 3 x 3 head (a >= 3 has the whole plane as image).
    if (a == 2)
        throw Error(ErrorCode::OutsideModuliImage,
                    "2-dimensional pair traces must be (0,0) or have x*y != 0");
    typename F::Elem x3 = f.sub(x, f.from_rat(Rat(a - 3)));
    typename F::Elem y3 = f.sub(y, f.from_rat(Rat(a - 3)));
    // S = companion of z^3 - y3 z^2 + x3 z - 1: Tr(S) = y3, Tr(S^{-1}) = x3/det = x3.
    out.bwd.at(0, 0) = f.zero();
    out.bwd.at(0, 1) = f.zero();
    out.bwd.at(0, 2) = f.one();
    out.bwd.at(1, 0) = f.one();
    out.bwd.at(1, 1) = f.zero();
    out.bwd.at(1, 2) = f.neg(x3);
    out.bwd.at(2, 0) = f.zero();
    out.bwd.at(2, 1) = f.one();
    out.bwd.at(2, 2) = y3;
    return out;
}

// Constructs a self pairing with prescribed trace invariant t.
// Admissible: a = 1 forces t = 1; a >= 2 realizes every t. The head operator
// S_E = E (E^t)^{-1} has characteristic polynomial z^2 - t' z + 1 with
// t' = t - (a - 2): at t' = 2 the head is the identity (S_E = I, all Jordan
// cells of size 1 at eigenvalue +1, allowed), at t' = -2 it is one 2 x 2
// Jordan cell at eigenvalue -1 (allowed since (-1)^2 != -1); otherwise S_E is
// semisimple with eigenvalue pair mu, 1/mu, mu + 1/mu = t'.
template <class F>
SelfForm<F> realize_self_trace(const F& f, int a, const typename F::Elem& t) {
    if (a < 1) throw std::invalid_argument("self multiplicity must be positive");
    SelfForm<F> out;
    out.dim = a;
    out.e = mat_identity(f, size_t(a));
    if (a == 1) {
        if (!f.eq(t, f.one()))
            throw Error(ErrorCode::OutsideModuliImage,
                        "1-dimensional self pairings always have trace 1");
        return out;
    }
    typename F::Elem t2 = f.sub(t, f.from_rat(Rat(a - 2)));
    typename F::Elem gap = f.sub(f.from_rat(Rat(2)), t2);
    if (f.is_zero(gap)) return out; // identity head realizes t' = 2
    // E = [[1, 1], [0, u]] with u = 1/(2 - t'): Tr(E (E^t)^{-1}) = 2 - 1/u = t'.
    out.e.at(0, 1) = f.one();
    out.e.at(1, 1) = f.div(f.one(), gap);
    return out;
}

// Per-vertex residuals sum_j (trace contribution at i) - lambda; the solution
// is valid exactly when every residual is zero in the field's equality.
template <class F>
std::vector<typename F::Elem> verify_solution(const ModuleSolution<F>& sol) {
    const F& f = sol.field;
    const MultiGraph& g = sol.graph;
    std::vector<typename F::Elem> res(size_t(g.n), f.neg(sol.lam));
    for (const auto& [key, p] : sol.pairs) {
        auto [x, y] = trace_invariant(f, p);
        res[size_t(key.first)] = f.add(res[size_t(key.first)], x);
        res[size_t(key.second)] = f.add(res[size_t(key.second)], y);
    }
    for (const auto& [v, s] : sol.selfs)
        res[size_t(v)] = f.add(res[size_t(v)], self_trace_invariant(f, s));
    return res;
}

template <class F>
bool all_residuals_zero(const F& f, const std::vector<typename F::Elem>& res) {
    for (const auto& r : res)
        if (!f.is_zero(r)) return false;
    return true;
}

// Structural sanity of a solution against its graph: a form for every edge
// and loop with matching dimensions, and nothing extra.
template <class F>
void check_solution_shape(const ModuleSolution<F>& sol) {
    const MultiGraph& g = sol.graph;
    size_t expected_pairs = 0, expected_selfs = 0;
    for (int i = 0; i < g.n; ++i) {
        if (g.at(i, i) > 0) {
            ++expected_selfs;
            auto it = sol.selfs.find(i);
            if (it == sol.selfs.end() || it->second.dim != g.at(i, i))
                throw Error(ErrorCode::InvalidSolution, "self pairing missing or wrong size");
        }
        for (int j = i + 1; j < g.n; ++j)
            if (g.at(i, j) > 0) {
                ++expected_pairs;
                auto it = sol.pairs.find({i, j});
                if (it == sol.pairs.end() || it->second.dim != g.at(i, j))
                    throw Error(ErrorCode::InvalidSolution, "pair form missing or wrong size");
            }
    }
    if (sol.pairs.size() != expected_pairs || sol.selfs.size() != expected_selfs)
        throw Error(ErrorCode::InvalidSolution, "solution carries forms not present in the graph");
}

} // namespace qmk
