#pragma once
#include "qmk/algebraic.hpp"
#include "qmk/graph.hpp"
#include "qmk/numberfield.hpp"
#include "qmk/poly.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace qmk {

// det(xI - A) with exact integer coefficients.
ZPoly char_poly(const MultiGraph& g);

// Result of the exact eigenspace analysis for one eigenvalue.
// All vector entries live in Q[t]/(minpoly), represented as polynomials in t
// of degree < deg(minpoly).
struct EigenAnalysis {
    std::shared_ptr<const NumberField> field; // Q(lambda)
    int eigenspace_dim = 0;
    bool nondegenerate = false;
    std::vector<QPoly> witness;       // nondegenerate: eigenvector, every entry nonzero
    int vanishing_coordinate = -1;    // degenerate: coordinate zero on the whole eigenspace
};

// Decides whether the lambda-eigenspace contains a vector with all entries
// nonzero, and constructs a deterministic witness when it does.
// Throws NotAnEigenvalue when lambda is not a root of char_poly(g).
EigenAnalysis analyze_eigenvalue(const MultiGraph& g, const AlgebraicReal& lambda);
bool is_nondegenerate(const MultiGraph& g, const AlgebraicReal& lambda);

struct EigenvalueInfo {
    AlgebraicReal value;
    int multiplicity = 1;
    bool nondegenerate = false;
    std::vector<QPoly> witness;       // present iff nondegenerate
    int vanishing_coordinate = -1;    // present iff degenerate
    int eigenspace_dim = 0;
};

struct Spectrum {
    ZPoly cp;                          // characteristic polynomial
    std::vector<EigenvalueInfo> values; // distinct eigenvalues, ascending
};

// Full exact spectrum of a connected multigraph: all distinct eigenvalues with
// multiplicities, each analyzed for nondegeneracy. Throws DisconnectedGraph.
Spectrum spectrum(const MultiGraph& g);

// Largest eigenvalue of a connected graph with at least one edge or loop.
// Throws DisconnectedGraph / ZeroGraph.
AlgebraicReal frobenius_perron(const MultiGraph& g);

// The two solutions of q^2 + lambda*q + 1 = 0, i.e. -q - 1/q = lambda.
struct QPair {
    AlgebraicNumber q_plus;  // upper half plane when complex, larger root when real
    AlgebraicNumber q_minus; // the other solution (= conjugate resp. 1/q_plus)
    bool coincident = false; // lambda = +-2: the two roots agree (q = -+1)
    bool excluded = false;   // lambda = 0: q = +-i, outside the allowed parameter set
};
QPair lambda_to_q(const AlgebraicReal& lambda);

// Smallest N <= max_order with q^N = 1, decided exactly through divisibility
// of q's minimal polynomial into x^N - 1; absent when there is none.
std::optional<int> q_root_of_unity_order(const AlgebraicNumber& q, int max_order = 512);

} // namespace qmk
