#pragma once
#include "qmk/forms.hpp"
#include "qmk/graph.hpp"
#include "qmk/spectra.hpp"

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace qmk {

// ---- edge-variable systems on trees -------------------------------------------
//
// One variable u per tree edge e = (i < j); the edge contributes
//   off_x + 1/u  at vertex i   and   off_y + u  at vertex j,
// and every vertex equation (sum of incident contributions = target) must hold.
// Plain simply laced edges have zero offsets, so the contributions are 1/u and
// u with product 1; edges of higher multiplicity enter through nonzero offsets
// (sums over the frozen eigenvalues of the attached operator).

template <class F>
struct TreeEdgeTerm {
    int i = 0, j = 0; // i < j
    typename F::Elem off_x, off_y;
};

template <class F>
struct TreeSystem {
    int n = 0;
    std::vector<TreeEdgeTerm<F>> edges;    // exactly n - 1, forming a tree
    std::vector<typename F::Elem> targets; // one per vertex
};

template <class F>
struct TreeAssignment {
    bool solved = false;
    std::vector<typename F::Elem> u; // per edge, aligned with TreeSystem::edges
};

// Chooses the next leaf to eliminate from the ascending list of current
// leaves; the default takes the smallest index. Exposed so callers can verify
// order independence of the result.
using LeafPicker = std::function<int(const std::vector<int>&)>;

// Eliminates leaves one at a time: a leaf's single equation forces its edge
// variable, which then feeds the neighbor's remaining target; the last vertex
// must end at target zero. Each step is forced, so a solution is unique when
// it exists. Returns solved = false (no solution) when a forced variable hits
// zero or the final consistency check fails.
template <class F>
TreeAssignment<F> peel_tree_system(const F& f, const TreeSystem<F>& sys,
                                   const LeafPicker& pick_leaf = {}) {
    const int n = sys.n;
    if ((int)sys.edges.size() != n - 1 || (int)sys.targets.size() != n)
        throw std::invalid_argument("edge system shape mismatch");
    TreeAssignment<F> out;
    out.u.assign(sys.edges.size(), f.zero());
    std::vector<typename F::Elem> rem = sys.targets;

    std::vector<int> degree(size_t(n), 0);
    std::vector<std::vector<int>> incident(static_cast<size_t>(n));
    for (size_t e = 0; e < sys.edges.size(); ++e) {
        const auto& t = sys.edges[e];
        if (t.i < 0 || t.j >= n || t.i >= t.j)
            throw std::invalid_argument("edge system has an invalid edge");
        ++degree[size_t(t.i)];
        ++degree[size_t(t.j)];
        incident[size_t(t.i)].push_back((int)e);
        incident[size_t(t.j)].push_back((int)e);
    }
    std::vector<bool> vertex_done(size_t(n), false), edge_done(sys.edges.size(), false);

    for (int round = 0; round < n - 1; ++round) {
        std::vector<int> leaves;
        for (int v = 0; v < n; ++v)
            if (!vertex_done[size_t(v)] && degree[size_t(v)] == 1) leaves.push_back(v);
        if (leaves.empty()) throw std::invalid_argument("edge system is not a tree");
        int v = pick_leaf ? pick_leaf(leaves) : leaves.front();

        int e = -1;
        for (int cand : incident[size_t(v)])
            if (!edge_done[size_t(cand)]) e = cand;
        const auto& term = sys.edges[size_t(e)];
        int other = (term.i == v) ? term.j : term.i;
        if (v == term.j) {
            // contribution at j: off_y + u = rem[j]
            typename F::Elem u = f.sub(rem[size_t(v)], term.off_y);
            if (f.is_zero(u)) return out; // forced zero variable: no solution
            out.u[size_t(e)] = u;
            rem[size_t(other)] =
                f.sub(rem[size_t(other)], f.add(term.off_x, f.div(f.one(), u)));
        } else {
            // contribution at i: off_x + 1/u = rem[i]
            typename F::Elem d = f.sub(rem[size_t(v)], term.off_x);
            if (f.is_zero(d)) return out;
            typename F::Elem u = f.div(f.one(), d);
            out.u[size_t(e)] = u;
            rem[size_t(other)] = f.sub(rem[size_t(other)], f.add(term.off_y, u));
        }
        edge_done[size_t(e)] = true;
        vertex_done[size_t(v)] = true;
        --degree[size_t(v)];
        --degree[size_t(other)];
    }
    for (int v = 0; v < n; ++v)
        if (!vertex_done[size_t(v)] && !f.is_zero(rem[size_t(v)])) return out;
    out.solved = true;
    return out;
}

// Contribution of each edge at each endpoint, keyed by the ordered pair
// (vertex, other endpoint). Two peels agree exactly when these maps agree.
template <class F>
std::map<std::pair<int, int>, typename F::Elem>
oriented_edge_values(const F& f, const TreeSystem<F>& sys, const TreeAssignment<F>& asg) {
    std::map<std::pair<int, int>, typename F::Elem> out;
    for (size_t e = 0; e < sys.edges.size(); ++e) {
        const auto& t = sys.edges[e];
        out[{t.i, t.j}] = f.add(t.off_x, f.div(f.one(), asg.u[e]));
        out[{t.j, t.i}] = f.add(t.off_y, asg.u[e]);
    }
    return out;
}

// ---- general graphs: free parameters ------------------------------------------

// One field value consumed by solve_general, in order. Pair slots refer to the
// canonical spanning tree (breadth-first from vertex 0 over the underlying
// simply laced graph, neighbors in ascending order).
struct ParamSlot {
    enum class Kind {
        PairX,     // trace at the smaller endpoint of a non-tree edge
        PairY,     // trace at the larger endpoint (multiplicity >= 2 only)
        EdgeEigen, // one surplus eigenvalue of a tree edge with multiplicity >= 2
        LoopTrace, // trace of the self pairing at a vertex with >= 2 loops
    };
    Kind kind;
    int i = 0, j = -1; // endpoints (j = -1 for loop slots)
    int index = 0;     // eigenvalue position for EdgeEigen
};

struct GeneralShape {
    std::vector<std::pair<int, int>> tree_edges;    // ascending, i < j
    std::vector<std::pair<int, int>> nontree_edges; // ascending, i < j
};
GeneralShape general_shape(const MultiGraph& g); // throws DisconnectedGraph

// The exact list of free parameters solve_general consumes for this graph.
// For graphs whose non-tree multiplicities are <= 2 and loop multiplicities
// <= 3 the slot count equals generalized_cycle_count(g).
std::vector<ParamSlot> solve_general_params(const MultiGraph& g);

// Solves the vertex trace equations on any connected multigraph after freezing
// the free parameters: non-tree edges get their trace pair directly (one value
// when the multiplicity is 1, since then x*y = 1), tree edges of multiplicity
// a >= 2 get a - 1 nonzero eigenvalues (the last eigenvalue is the tree
// unknown), and multi-loop vertices get their self trace. The remaining tree
// system is peeled; absent result means no solution for these parameters.
// Throws DisconnectedGraph, BadParameterCount, OutsideModuliImage.
template <class F>
std::optional<ModuleSolution<F>> solve_general(const F& f, const MultiGraph& g,
                                               const typename F::Elem& lam,
                                               const std::vector<typename F::Elem>& params) {
    auto slots = solve_general_params(g);
    if (params.size() != slots.size())
        throw Error(ErrorCode::BadParameterCount,
                    "expected " + std::to_string(slots.size()) + " parameters, got " +
                        std::to_string(params.size()));
    GeneralShape shape = general_shape(g);

    std::map<std::pair<int, int>, std::pair<typename F::Elem, typename F::Elem>> nontree;
    std::map<std::pair<int, int>, std::vector<typename F::Elem>> surplus;
    std::map<int, typename F::Elem> loop_trace;
    for (size_t s = 0; s < slots.size(); ++s) {
        const ParamSlot& slot = slots[s];
        const auto& v = params[s];
        switch (slot.kind) {
        case ParamSlot::Kind::PairX: {
            if (g.at(slot.i, slot.j) == 1) {
                if (f.is_zero(v))
                    throw Error(ErrorCode::OutsideModuliImage,
                                "1-dimensional pair traces must satisfy x*y = 1");
                nontree[{slot.i, slot.j}] = {v, f.div(f.one(), v)};
            } else {
                nontree[{slot.i, slot.j}].first = v;
            }
            break;
        }
        case ParamSlot::Kind::PairY:
            nontree[{slot.i, slot.j}].second = v;
            break;
        case ParamSlot::Kind::EdgeEigen:
            if (f.is_zero(v))
                throw Error(ErrorCode::OutsideModuliImage,
                            "pairing eigenvalues must be nonzero");
            surplus[{slot.i, slot.j}].push_back(v);
            break;
        case ParamSlot::Kind::LoopTrace:
            loop_trace[slot.i] = v;
            break;
        }
    }

    TreeSystem<F> sys;
    sys.n = g.n;
    sys.targets.assign(size_t(g.n), lam);
    for (int i = 0; i < g.n; ++i) {
        int loops = g.at(i, i);
        if (loops == 1)
            sys.targets[size_t(i)] = f.sub(sys.targets[size_t(i)], f.one());
        else if (loops >= 2)
            sys.targets[size_t(i)] = f.sub(sys.targets[size_t(i)], loop_trace.at(i));
    }
    for (const auto& [key, xy] : nontree) {
        sys.targets[size_t(key.first)] = f.sub(sys.targets[size_t(key.first)], xy.first);
        sys.targets[size_t(key.second)] = f.sub(sys.targets[size_t(key.second)], xy.second);
    }
    for (const auto& [i, j] : shape.tree_edges) {
        TreeEdgeTerm<F> term{i, j, f.zero(), f.zero()};
        auto it = surplus.find({i, j});
        if (it != surplus.end())
            for (const auto& s : it->second) {
                term.off_x = f.add(term.off_x, f.div(f.one(), s));
                term.off_y = f.add(term.off_y, s);
            }
        sys.edges.push_back(std::move(term));
    }

    TreeAssignment<F> asg = peel_tree_system(f, sys);
    if (!asg.solved) return std::nullopt;

    ModuleSolution<F> sol(f);
    sol.graph = g;
    sol.lam = lam;
    for (size_t e = 0; e < sys.edges.size(); ++e) {
        const auto& term = sys.edges[e];
        int a = g.at(term.i, term.j);
        if (a == 1) {
            typename F::Elem x = f.div(f.one(), asg.u[e]);
            sol.pairs.emplace(std::make_pair(term.i, term.j),
                              realize_pair_traces(f, 1, x, asg.u[e]));
        } else {
            // operator eigenvalues: the frozen ones plus the tree unknown
            FormPair<F> p;
            p.dim = a;
            p.fwd = mat_identity(f, size_t(a));
            p.bwd = mat_identity(f, size_t(a));
            const auto& eig = surplus.at({term.i, term.j});
            for (size_t k = 0; k < eig.size(); ++k) p.bwd.at(k, k) = eig[k];
            p.bwd.at(size_t(a - 1), size_t(a - 1)) = asg.u[e];
            sol.pairs.emplace(std::make_pair(term.i, term.j), std::move(p));
        }
    }
    for (const auto& [key, xy] : nontree)
        sol.pairs.emplace(key, realize_pair_traces(f, g.at(key.first, key.second), xy.first,
                                                   xy.second));
    for (int i = 0; i < g.n; ++i) {
        int loops = g.at(i, i);
        if (loops == 1)
            sol.selfs.emplace(i, realize_self_trace(f, 1, f.one()));
        else if (loops >= 2)
            sol.selfs.emplace(i, realize_self_trace(f, loops, loop_trace.at(i)));
    }
    return sol;
}

// ---- concrete exact operations -------------------------------------------------

using ExactSolution = ModuleSolution<NumberFieldF>;

// Number field Q(lambda) with the generator embedded at lambda.
NumberFieldF field_of(const AlgebraicReal& lambda);

// Unique solution candidate on a generalized tree at the given value: targets
// lambda (minus 1 on looped vertices) peeled leaf by leaf. Absent result means
// the system is inconsistent there, which for eigenvalues happens exactly in
// the degenerate case. Throws NotAGeneralizedTree.
std::optional<ExactSolution> solve_generalized_tree(const MultiGraph& g,
                                                    const AlgebraicReal& lambda,
                                                    const LeafPicker& pick_leaf = {});

// One row of the solution table of a generalized tree: an eigenvalue with its
// q parameters, the order of q when it is a root of unity, and the solution
// when the eigenvalue is nondegenerate. Degenerate eigenvalues are reported
// with an absent solution rather than dropped.
struct SuperRigidEntry {
    EigenvalueInfo info;
    QPair q;
    std::optional<int> q_order;
    std::optional<ExactSolution> sol;
};
std::vector<SuperRigidEntry> super_rigid_spectrum(const MultiGraph& g);

// Canonical solution at the largest eigenvalue, built from the positive
// eigenvector r: the pair (i, j) carries traces (a_ij r_j / r_i, a_ij r_i / r_j)
// and a looped vertex carries self trace a_ii. Works on every connected
// nonzero multigraph. Throws DisconnectedGraph, ZeroGraph.
ExactSolution fp_solution(const MultiGraph& g);

} // namespace qmk
