#pragma once
#include "qmk/error.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qmk {

// Finite undirected multigraph with self-loops, stored as a symmetric
// nonnegative integer multiplicity matrix (diagonal = loop counts).
struct MultiGraph {
    int n = 0;
    std::vector<int> mult; // row-major n*n, symmetric

    MultiGraph() = default;
    explicit MultiGraph(int vertex_count) : n(vertex_count), mult((size_t)(n * n), 0) {}

    int at(int i, int j) const { return mult[(size_t)(i * n + j)]; }
    void set(int i, int j, int m) {
        mult[(size_t)(i * n + j)] = m;
        mult[(size_t)(j * n + i)] = m;
    }
    bool operator==(const MultiGraph& o) const { return n == o.n && mult == o.mult; }
};

enum class RigidityClass { SuperRigid, Rigid, NonRigid };
const char* rigidity_name(RigidityClass c);

bool is_connected(const MultiGraph& g);
// Sum of all edge multiplicities (loops once).
int edge_count(const MultiGraph& g);

// L = (1/2) sum_{i != j} a_ij + sum_i floor(a_ii / 2) - |I| + 1.
int generalized_cycle_count(const MultiGraph& g); // throws DisconnectedGraph

RigidityClass classify_rigidity(const MultiGraph& g); // throws DisconnectedGraph

MultiGraph underlying_simply_laced(const MultiGraph& g);

// True when g is a tree with at most one self-loop per vertex (loops allowed
// only with multiplicity 1); equivalent to L = 0 for connected graphs.
bool is_generalized_tree(const MultiGraph& g);

struct Component {
    MultiGraph graph;
    std::vector<int> vertices; // indices into the parent graph
};
std::vector<Component> connected_components(const MultiGraph& g);

// Canonical label under exhaustive vertex permutations; equal iff isomorphic.
std::string canonical_form(const MultiGraph& g); // throws SizeLimitExceeded for n > 9

// Relabel: result(i, j) = g(perm[i], perm[j]).
MultiGraph apply_permutation(const MultiGraph& g, const std::vector<int>& perm);

// All connected multigraphs on n vertices with the requested rigidity class,
// up to isomorphism, sorted by canonical form.
std::vector<MultiGraph> enumerate_graphs(int n, RigidityClass cls);

// Exhaustive scan over symmetric matrices with entries <= max_entry; returns
// connected graphs up to isomorphism (the independent enumeration oracle).
std::vector<MultiGraph> enumerate_connected_multigraphs(int n, int max_entry);

// ---- input / output ----------------------------------------------------------

// Text format: "n <count>" then "<i> <j> <mult>" lines (0-based, i <= j).
MultiGraph parse_graph_text(const std::string& text); // throws ParseError
std::string graph_to_text(const MultiGraph& g);
// JSON document {"vertex_count": n, "mult": [[...], ...]}.
MultiGraph parse_graph_json(const std::string& text); // throws ParseError
std::string graph_to_json(const MultiGraph& g);
// Accepts either format (JSON when the first non-space byte is '{').
MultiGraph parse_graph_auto(const std::string& text);
// DOT rendering with explicit parallel edges and self-loops.
std::string graph_to_dot(const MultiGraph& g);

std::string graph_brief(const MultiGraph& g); // one-line human description

// Run fn(k) for k in [0, count) across QMK_THREADS workers (default: hardware).
void parallel_chunks(size_t count, const std::function<void(size_t)>& fn);

} // namespace qmk
