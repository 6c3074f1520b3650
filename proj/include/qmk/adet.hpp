#pragma once
#include "qmk/graph.hpp"
#include "qmk/numberfield.hpp"
#include "qmk/poly.hpp"
#include "qmk/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qmk {

// Normalized ultraspherical polynomials P_n: P_0 = 0, P_1 = 1, P_2 = x,
// P_{n+2} = x * P_{n+1} - P_n. P_n(2 cos t) = sin(n t) / sin(t), so P_n
// vanishes exactly at 2 cos(pi k / n), k = 1..n-1.
ZPoly ultraspherical(int n);

// Horner evaluation of an integer polynomial at a field element.
template <FieldLike F>
typename F::Elem eval_poly(const F& f, const ZPoly& p, const typename F::Elem& x) {
    typename F::Elem acc = f.zero();
    for (size_t i = p.c.size(); i-- > 0;) acc = f.add(f.mul(acc, x), f.from_rat(Rat(p.c[i])));
    return acc;
}

// ---- affine-free diagram families -----------------------------------------
//
// The connected multigraphs whose adjacency matrix is annihilated by some
// ultraspherical polynomial (equivalently: spectral radius < 2) fall into the
// classical simply-laced families plus a tadpole family:
//
//   family   rank range   coxeter number h   realization
//   A_n      n >= 1       n + 1              path on n vertices
//   D_n      n >= 4       2n - 2             fork: arms (1, 1, n - 3)
//   E_6/7/8  6, 7, 8      12 / 18 / 30       fork: arms (1, 2, rank - 4)
//   T_n      n >= 1       2n + 1             path with one loop on the end
//
// The rank lower bounds keep the list duplicate-free (D_2, D_3 and small E
// coincide with A-family shapes).

enum class DynkinFamily { A, D, E6, E7, E8, T };

struct DynkinDiagram {
    DynkinFamily family;
    int rank = 0;    // number of vertices
    int coxeter = 0; // h from the table above
    MultiGraph graph;
};

// Builds the named diagram; throws std::invalid_argument for a rank outside
// the family's range.
DynkinDiagram make_dynkin(DynkinFamily family, int rank);

const char* dynkin_family_name(DynkinFamily family); // "A", "D", "E", "T"
std::string dynkin_name(const DynkinDiagram& d);     // e.g. "A_4", "E_8", "T_3"

// ---- exact polynomial evaluation at an adjacency matrix --------------------

using IntMat = std::vector<std::vector<Int>>;

IntMat adjacency_matrix(const MultiGraph& g);

// P(A) for the adjacency matrix A of g, by Horner's rule in exact integer
// arithmetic.
IntMat eval_poly_matrix(const ZPoly& p, const MultiGraph& g);

// ---- detection -------------------------------------------------------------

struct AdetDetection {
    DynkinDiagram diagram; // the isomorphic named diagram
    int coxeter = 0;       // smallest n with P_n(A) = 0 (= diagram.coxeter)
};

// Scans n = 1..n_max for the smallest n with P_n(A) = 0 exactly and matches
// the graph against the named diagram with that Coxeter number (by canonical
// form for <= 9 vertices, by vertex count + characteristic polynomial above).
// Absent when no ultraspherical polynomial up to n_max annihilates A.
// Throws DisconnectedGraph; n_max must lie in [1, 64].
std::optional<AdetDetection> adet_detect(const MultiGraph& g, int n_max = 64);

// True iff every entry of P_n(A) is >= 0 for every n <= n_max.
// Throws DisconnectedGraph.
bool nonneg_check(const MultiGraph& g, int n_max = 50);

// All named diagrams whose Coxeter number equals N* (= N for odd N, N/2 for
// even N), excluding the T family when N is even: exactly the diagrams that
// carry a semisimple solution when q is a primitive N-th root of unity.
// Requires N >= 3. Order: A, D, E, T.
std::vector<DynkinDiagram> classify_root_of_unity(int N);

// ---- cross-module validation ----------------------------------------------

// One row per distinct eigenvalue lambda of the diagram's graph (ascending).
struct DiagramEigenRow {
    AlgebraicReal lambda;
    int multiplicity = 1;
    bool nondegenerate = false;     // eigenvector with all entries nonzero
    bool solved = false;            // generalized-tree solver produced a solution
    bool q_excluded = false;        // lambda = 0, i.e. q = +-i
    std::optional<int> q_order;     // order of q as a root of unity
    std::optional<double> jw_norm;  // max |entry| of the image of the ending
                                    // projector at that order; absent when the
                                    // work estimate exceeds the budget
};

struct DiagramReport {
    DynkinDiagram diagram;
    std::vector<DiagramEigenRow> rows;
};

// For each eigenvalue of d.graph: nondegeneracy verdict, solver outcome, the
// order of the corresponding q, and (when affordable) the norm of the image
// of the ending projector, which must vanish. Internal consistency is
// enforced: solvable == nondegenerate, solved rows have q of order N with
// N* = h (unless excluded), and computed projector images vanish to 1e-8;
// violations throw std::logic_error.
DiagramReport validate_diagram_solution(const DynkinDiagram& d, double work_budget = 5e8);

} // namespace qmk
