#pragma once
#include "qmk/error.hpp"
#include "qmk/forms.hpp"
#include "qmk/graph.hpp"
#include "qmk/matrix.hpp"
#include "qmk/numberfield.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qmk {

// ===== planar diagrams ========================================================
//
// A Temperley-Lieb diagram with k inputs and l outputs (k + l even) is a
// perfect non-crossing matching of k + l marked points on the boundary of a
// rectangle. Points are numbered clockwise starting at the bottom-left corner:
// inputs 0 .. k-1 run left to right along the bottom edge, outputs
// k .. k+l-1 run right to left along the top edge. The output strand at
// left-to-right position s (s = 0 .. l-1) therefore carries boundary number
// k + l - 1 - s.
struct PlanarDiagram {
    int k = 0, l = 0;
    std::vector<int> match; // match[p] = boundary partner of point p

    bool operator==(const PlanarDiagram& o) const {
        return k == o.k && l == o.l && match == o.match;
    }
    bool operator<(const PlanarDiagram& o) const {
        if (k != o.k) return k < o.k;
        if (l != o.l) return l < o.l;
        return match < o.match;
    }
};

// True when `match` is a fixed-point-free involution that is non-crossing in
// the circular boundary order (checked by a nesting scan).
bool is_planar_matching(const std::vector<int>& match);

// Validates pair data (boundary numbering) and builds the diagram.
// Throws std::invalid_argument when the pairs are not a planar perfect
// matching of k + l points.
PlanarDiagram make_diagram(int k, int l, const std::vector<std::pair<int, int>>& pairs);

// n through-strands.
PlanarDiagram identity_diagram(int n);

// The generator e_i on n strands (1 <= i <= n-1): a cap joining inputs
// i-1 and i, a cup joining the outputs at the same positions, and
// through-strands elsewhere.
PlanarDiagram cap_cup_diagram(int n, int i);

// All planar (k, l) diagrams; there are catalan((k+l)/2) of them.
std::vector<PlanarDiagram> enumerate_diagrams(int k, int l);

unsigned long catalan(int n);

// "0-3 1-2" (each strand as "p-q" with p < q, sorted).
std::string diagram_str(const PlanarDiagram& d);

struct DiagramComposition {
    PlanarDiagram diagram;
    int loops = 0; // closed circles removed while gluing
};

// Stacks a (k -> l) under b (l -> m): output position s of `a` is glued to
// input s of `b`. Throws ArityMismatch when a.l != b.k.
DiagramComposition compose_diagrams(const PlanarDiagram& a, const PlanarDiagram& b);

// Appends one through-strand on the right of a diagram.
PlanarDiagram strand_append(const PlanarDiagram& d);

// For a primitive root of unity of order N >= 3, the number of strands at
// which the projector tower ends: N for odd N, N/2 for even N.
int n_star(int N);

// ===== linear combinations ====================================================

// Finite linear combination of (k, l) diagrams over a field. The map never
// stores an explicit zero coefficient.
template <FieldLike F>
struct TLElement {
    int k = 0, l = 0;
    std::map<PlanarDiagram, typename F::Elem> terms;
};

template <FieldLike F>
TLElement<F> tl_from_diagram(const F& f, const PlanarDiagram& d) {
    TLElement<F> e;
    e.k = d.k;
    e.l = d.l;
    e.terms.emplace(d, f.one());
    return e;
}

template <FieldLike F>
TLElement<F> tl_identity(const F& f, int n) {
    return tl_from_diagram(f, identity_diagram(n));
}

template <FieldLike F>
TLElement<F> tl_generator(const F& f, int n, int i) {
    return tl_from_diagram(f, cap_cup_diagram(n, i));
}

template <FieldLike F>
TLElement<F> tl_scale(const F& f, const typename F::Elem& c, const TLElement<F>& a) {
    TLElement<F> r;
    r.k = a.k;
    r.l = a.l;
    if (f.is_zero(c)) return r;
    for (const auto& [d, v] : a.terms) {
        typename F::Elem w = f.mul(c, v);
        if (!f.is_zero(w)) r.terms.emplace(d, std::move(w));
    }
    return r;
}

template <FieldLike F>
TLElement<F> tl_add(const F& f, const TLElement<F>& a, const TLElement<F>& b) {
    if (a.k != b.k || a.l != b.l)
        throw Error(ErrorCode::ArityMismatch, "sum of diagram elements with different arities");
    TLElement<F> r = a;
    for (const auto& [d, v] : b.terms) {
        auto it = r.terms.find(d);
        if (it == r.terms.end()) {
            r.terms.emplace(d, v);
        } else {
            it->second = f.add(it->second, v);
            if (f.is_zero(it->second)) r.terms.erase(it);
        }
    }
    return r;
}

template <FieldLike F>
TLElement<F> tl_sub(const F& f, const TLElement<F>& a, const TLElement<F>& b) {
    return tl_add(f, a, tl_scale(f, f.neg(f.one()), b));
}

template <FieldLike F>
bool tl_eq(const F& f, const TLElement<F>& a, const TLElement<F>& b) {
    if (a.k != b.k || a.l != b.l) return false;
    for (const auto& [d, v] : a.terms) {
        auto it = b.terms.find(d);
        if (it == b.terms.end()) {
            if (!f.is_zero(v)) return false;
        } else if (!f.eq(v, it->second)) {
            return false;
        }
    }
    for (const auto& [d, v] : b.terms)
        if (a.terms.find(d) == a.terms.end() && !f.is_zero(v)) return false;
    return true;
}

// Stacks a (k -> l) under b (l -> m). Every circle closed while gluing
// multiplies the coefficient by `delta`. Throws ArityMismatch.
template <FieldLike F>
TLElement<F> compose(const F& f, const TLElement<F>& a, const TLElement<F>& b,
                     const typename F::Elem& delta) {
    if (a.l != b.k)
        throw Error(ErrorCode::ArityMismatch,
                    "cannot stack a diagram with " + std::to_string(a.l) +
                        " outputs under one with " + std::to_string(b.k) + " inputs");
    TLElement<F> r;
    r.k = a.k;
    r.l = b.l;
    std::vector<typename F::Elem> delta_pow{f.one()};
    for (const auto& [da, ca] : a.terms)
        for (const auto& [db, cb] : b.terms) {
            DiagramComposition dc = compose_diagrams(da, db);
            while ((int)delta_pow.size() <= dc.loops)
                delta_pow.push_back(f.mul(delta_pow.back(), delta));
            typename F::Elem v = f.mul(f.mul(ca, cb), delta_pow[size_t(dc.loops)]);
            auto it = r.terms.find(dc.diagram);
            if (it == r.terms.end()) {
                if (!f.is_zero(v)) r.terms.emplace(dc.diagram, std::move(v));
            } else {
                it->second = f.add(it->second, v);
                if (f.is_zero(it->second)) r.terms.erase(it);
            }
        }
    return r;
}

// Appends one through-strand on the right of every term.
template <FieldLike F>
TLElement<F> tl_strand_append(const F&, const TLElement<F>& a) {
    TLElement<F> r;
    r.k = a.k + 1;
    r.l = a.l + 1;
    for (const auto& [d, v] : a.terms) r.terms.emplace(strand_append(d), v);
    return r;
}

// ===== Jones-Wenzl projectors =================================================
//
// f_1 is the single strand; f_{m+1} = f_m - (P_m(delta) / P_{m+1}(delta)) *
// f_m e_m f_m, where P_1 = 1, P_2 = x, P_{m+2} = x P_{m+1} - P_m (all elements
// here are widened to m + 1 strands). Building f_n therefore needs
// P_2(delta), ..., P_n(delta) all nonzero; otherwise UndefinableProjector.
template <FieldLike F>
TLElement<F> jones_wenzl(const F& f, int n, const typename F::Elem& delta) {
    if (n < 1) throw std::invalid_argument("projector needs at least one strand");
    TLElement<F> fm = tl_identity(f, 1);
    typename F::Elem p_prev = f.one(); // P_1(delta)
    typename F::Elem p_cur = delta;    // P_2(delta)
    for (int m = 1; m < n; ++m) {
        if (f.is_zero(p_cur))
            throw Error(ErrorCode::UndefinableProjector,
                        "projector on " + std::to_string(m + 1) +
                            " strands: the Chebyshev value P_" + std::to_string(m + 1) +
                            " vanishes at this loop value");
        TLElement<F> wide = tl_strand_append(f, fm);
        TLElement<F> fef =
            compose(f, compose(f, wide, tl_generator(f, m + 1, m), delta), wide, delta);
        fm = tl_sub(f, wide, tl_scale(f, f.div(p_prev, p_cur), fef));
        typename F::Elem p_next = f.sub(f.mul(delta, p_cur), p_prev);
        p_prev = p_cur;
        p_cur = std::move(p_next);
    }
    return fm;
}

// ===== graded representations =================================================
//
// A verified solution on a multigraph makes the grade-(i, j) spaces V_ij of
// dimension a_ij into a self-dual object of the I x I graded category: the
// cap on V_ij (x) V_ji is the bilinear form E_ij, and the cup into
// V_ij (x) V_ji is the copairing with matrix inverse(E_ji). This is the
// unique choice for which both duality (zigzag) identities hold, and it makes
// every closed circle evaluate to the loop value at every grade.
template <FieldLike F>
struct GradedRep {
    F field;
    MultiGraph graph;
    typename F::Elem delta;
    std::map<std::pair<int, int>, Mat<F>> pairing;   // ordered (i, j) -> E_ij
    std::map<std::pair<int, int>, Mat<F>> copairing; // ordered (i, j) -> inverse(E_ji)

    explicit GradedRep(F f) : field(std::move(f)), graph(1), delta(field.zero()) {}
};

// Checks the solution (shape and vertex equations; InvalidSolution otherwise)
// and assembles the pairing and copairing tables.
template <FieldLike F>
GradedRep<F> build_graded_rep(const ModuleSolution<F>& sol) {
    check_solution_shape(sol);
    const F& f = sol.field;
    if (!all_residuals_zero(f, verify_solution(sol)))
        throw Error(ErrorCode::InvalidSolution, "vertex equations are not satisfied");
    GradedRep<F> rep(sol.field);
    rep.graph = sol.graph;
    rep.delta = sol.lam;
    for (const auto& [key, p] : sol.pairs) {
        rep.pairing[{key.first, key.second}] = p.fwd;
        rep.pairing[{key.second, key.first}] = p.bwd;
    }
    for (const auto& [i, s] : sol.selfs) rep.pairing[{i, i}] = s.e;
    for (const auto& [key, mat] : rep.pairing) {
        auto inv = mat_inv(f, rep.pairing.at({key.second, key.first}));
        if (!inv) throw Error(ErrorCode::InvalidSolution, "singular bilinear form");
        rep.copairing[key] = std::move(*inv);
    }
    return rep;
}

// Basis vector of the s-fold graded tensor power: a walk through the
// multigraph recording s + 1 vertices and, for each step, which of the
// a(v_t, v_{t+1}) parallel edges carries it. s = 0 gives one basis vector per
// vertex (the graded unit).
struct GradedPath {
    std::vector<int> v; // s + 1 vertices
    std::vector<int> e; // s edge indices, e[t] < a(v[t], v[t+1])
};

// All graded paths with `strands` steps, ordered lexicographically by the
// start vertex and then by (vertex, edge index) per step. Throws
// SizeLimitExceeded when there are more than `dim_cap` of them.
std::vector<GradedPath> graded_paths(const MultiGraph& g, int strands, size_t dim_cap = 20000);

// Matrix of one diagram on the graded path bases, rows indexed by input
// paths, columns by output paths, so that stacking diagrams multiplies
// matrices in the same order. Entry (P, Q) is nonzero only when P and Q have
// equal endpoints and every strand of the diagram matches grades:
//  - a through-strand forces its input and output slot to carry the same
//    grade and the same parallel-edge index;
//  - a cap joining input slots t < t' needs v[t+1] = v[t'] and v[t] = v[t'+1]
//    and contributes the pairing entry E(v[t], v[t+1])[e[t], e[t']];
//  - a cup joining output positions s < s' needs the mirror conditions and
//    contributes the copairing entry inverse(E(v[s+1], v[s]))[e[s], e[s']].
template <FieldLike F>
Mat<F> rep_of_diagram(const GradedRep<F>& rep, const PlanarDiagram& d,
                      const std::vector<GradedPath>& in, const std::vector<GradedPath>& out) {
    const F& f = rep.field;
    const int k = d.k, l = d.l;
    Mat<F> m(f, in.size(), out.size());
    for (size_t r = 0; r < in.size(); ++r) {
        const GradedPath& P = in[r];
        for (size_t c = 0; c < out.size(); ++c) {
            const GradedPath& Q = out[c];
            if (P.v.front() != Q.v.front() || P.v.back() != Q.v.back()) continue;
            typename F::Elem val = f.one();
            bool dead = false;
            for (int p = 0; p < k + l && !dead; ++p) {
                int q = d.match[size_t(p)];
                if (q < p) continue;
                if (q < k) { // cap on input slots p < q
                    if (P.v[size_t(p + 1)] != P.v[size_t(q)] ||
                        P.v[size_t(p)] != P.v[size_t(q + 1)]) {
                        dead = true;
                        break;
                    }
                    const Mat<F>& E = rep.pairing.at({P.v[size_t(p)], P.v[size_t(p + 1)]});
                    val = f.mul(val, E.at(size_t(P.e[size_t(p)]), size_t(P.e[size_t(q)])));
                } else if (p >= k) { // cup on output positions s < s2
                    int s = k + l - 1 - q, s2 = k + l - 1 - p;
                    if (Q.v[size_t(s + 1)] != Q.v[size_t(s2)] ||
                        Q.v[size_t(s)] != Q.v[size_t(s2 + 1)]) {
                        dead = true;
                        break;
                    }
                    const Mat<F>& C = rep.copairing.at({Q.v[size_t(s)], Q.v[size_t(s + 1)]});
                    val = f.mul(val, C.at(size_t(Q.e[size_t(s)]), size_t(Q.e[size_t(s2)])));
                } else { // through-strand from input p to output position s
                    int s = k + l - 1 - q;
                    if (P.v[size_t(p)] != Q.v[size_t(s)] ||
                        P.v[size_t(p + 1)] != Q.v[size_t(s + 1)] ||
                        P.e[size_t(p)] != Q.e[size_t(s)]) {
                        dead = true;
                        break;
                    }
                }
            }
            if (!dead) m.at(r, c) = val;
        }
    }
    return m;
}

template <FieldLike F>
Mat<F> rep_of_element(const GradedRep<F>& rep, const TLElement<F>& el, size_t dim_cap = 20000) {
    const F& f = rep.field;
    std::vector<GradedPath> in = graded_paths(rep.graph, el.k, dim_cap);
    std::vector<GradedPath> out = graded_paths(rep.graph, el.l, dim_cap);
    Mat<F> m(f, in.size(), out.size());
    for (const auto& [d, coeff] : el.terms)
        m = mat_add(f, m, mat_scale(f, coeff, rep_of_diagram(rep, d, in, out)));
    return m;
}

// ===== numeric projector images ==============================================

// Entrywise image of an exact representation under the field's real
// embedding. Throws when the field has no distinguished real root.
GradedRep<ComplexField> complex_rep(const GradedRep<NumberFieldF>& rep);

double mat_max_abs(const Mat<ComplexField>& m);

// The loop value of an exact representation as an algebraic number. Supports
// the shapes the solvers produce: a rational constant or the field generator
// of an embedded field.
AlgebraicReal rep_lambda(const GradedRep<NumberFieldF>& rep);

// Max-abs-entry norm of the matrix of the projector on n strands. The
// projector is computed exactly in the representation's own field (so
// definability is decided exactly; UndefinableProjector when some
// intermediate Chebyshev value vanishes), then evaluated numerically.
double jw_image_norm(const GradedRep<NumberFieldF>& rep, int n, size_t dim_cap = 20000);

// Requires the quantum parameter q of the representation's loop value to be a
// primitive root of unity of order exactly N (NotRootOfUnity otherwise) and
// returns jw_image_norm on n_star(N) - 1 strands — the projector whose image
// must vanish exactly when the solution extends to a module structure.
double check_jw_vanishing(const GradedRep<NumberFieldF>& rep, int N);

} // namespace qmk
