#include "qmk/solver.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace qmk {

GeneralShape general_shape(const MultiGraph& g) {
    if (!is_connected(g)) throw Error(ErrorCode::DisconnectedGraph, "graph is not connected");
    GeneralShape shape;
    std::vector<bool> seen(size_t(g.n), false);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = true;
    std::vector<std::pair<int, int>> tree;
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int w = 0; w < g.n; ++w) {
            if (w == v || g.at(v, w) == 0 || seen[size_t(w)]) continue;
            seen[size_t(w)] = true;
            tree.emplace_back(std::min(v, w), std::max(v, w));
            bfs.push(w);
        }
    }
    std::sort(tree.begin(), tree.end());
    shape.tree_edges = tree;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) {
            if (g.at(i, j) == 0) continue;
            if (!std::binary_search(tree.begin(), tree.end(), std::make_pair(i, j)))
                shape.nontree_edges.emplace_back(i, j);
        }
    return shape;
}

std::vector<ParamSlot> solve_general_params(const MultiGraph& g) {
    GeneralShape shape = general_shape(g);
    std::vector<ParamSlot> slots;
    for (const auto& [i, j] : shape.nontree_edges) {
        slots.push_back({ParamSlot::Kind::PairX, i, j, 0});
        if (g.at(i, j) >= 2) slots.push_back({ParamSlot::Kind::PairY, i, j, 0});
    }
    for (const auto& [i, j] : shape.tree_edges)
        for (int k = 0; k + 1 < g.at(i, j); ++k)
            slots.push_back({ParamSlot::Kind::EdgeEigen, i, j, k});
    for (int i = 0; i < g.n; ++i)
        if (g.at(i, i) >= 2) slots.push_back({ParamSlot::Kind::LoopTrace, i, -1, 0});
    return slots;
}

NumberFieldF field_of(const AlgebraicReal& lambda) {
    return NumberFieldF(NumberField::make(lambda.minpoly, lambda));
}

std::optional<ExactSolution> solve_generalized_tree(const MultiGraph& g,
                                                    const AlgebraicReal& lambda,
                                                    const LeafPicker& pick_leaf) {
    if (!is_generalized_tree(g))
        throw Error(ErrorCode::NotAGeneralizedTree,
                    "operation requires a tree with at most one loop per vertex");
    NumberFieldF K = field_of(lambda);
    QPoly lam = K.gen();

    TreeSystem<NumberFieldF> sys;
    sys.n = g.n;
    sys.targets.assign(size_t(g.n), lam);
    for (int i = 0; i < g.n; ++i)
        if (g.at(i, i) == 1) sys.targets[size_t(i)] = K.sub(sys.targets[size_t(i)], K.one());
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.at(i, j) > 0) sys.edges.push_back({i, j, K.zero(), K.zero()});

    TreeAssignment<NumberFieldF> asg = peel_tree_system(K, sys, pick_leaf);
    if (!asg.solved) return std::nullopt;

    ExactSolution sol(K);
    sol.graph = g;
    sol.lam = lam;
    for (size_t e = 0; e < sys.edges.size(); ++e) {
        const auto& term = sys.edges[e];
        QPoly x = K.div(K.one(), asg.u[e]);
        sol.pairs.emplace(std::make_pair(term.i, term.j),
                          realize_pair_traces(K, 1, x, asg.u[e]));
    }
    for (int i = 0; i < g.n; ++i)
        if (g.at(i, i) == 1) sol.selfs.emplace(i, realize_self_trace(K, 1, K.one()));
    return sol;
}

std::vector<SuperRigidEntry> super_rigid_spectrum(const MultiGraph& g) {
    if (!is_generalized_tree(g))
        throw Error(ErrorCode::NotAGeneralizedTree,
                    "operation requires a tree with at most one loop per vertex");
    Spectrum sp = spectrum(g);
    std::vector<SuperRigidEntry> out;
    for (const EigenvalueInfo& info : sp.values) {
        SuperRigidEntry entry;
        entry.info = info;
        entry.q = lambda_to_q(info.value);
        if (!entry.q.excluded) entry.q_order = q_root_of_unity_order(entry.q.q_plus);
        entry.sol = solve_generalized_tree(g, info.value);
        if (entry.sol.has_value() != info.nondegenerate)
            throw std::logic_error("solution existence must match nondegeneracy");
        out.push_back(std::move(entry));
    }
    return out;
}

namespace {

// Determinant of the submatrix of m on the index lists rows x cols (size <= 3).
QPoly sub_det(const NumberFieldF& K, const Mat<NumberFieldF>& m,
              const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
    if (rows.empty()) return K.one();
    if (rows.size() == 1) return m.at(rows[0], cols[0]);
    if (rows.size() == 2)
        return K.sub(K.mul(m.at(rows[0], cols[0]), m.at(rows[1], cols[1])),
                     K.mul(m.at(rows[0], cols[1]), m.at(rows[1], cols[0])));
    QPoly acc = K.zero();
    std::vector<size_t> rs{rows[1], rows[2]};
    for (size_t j = 0; j < 3; ++j) {
        std::vector<size_t> cs;
        for (size_t t = 0; t < 3; ++t)
            if (t != j) cs.push_back(cols[t]);
        QPoly term = K.mul(m.at(rows[0], cols[j]), sub_det(K, m, rs, cs));
        acc = (j % 2) ? K.sub(acc, term) : K.add(acc, term);
    }
    return acc;
}

// For a singular matrix of rank n-1 (n <= 4), a nonzero adjugate column,
// which spans the kernel since M adj(M) = det(M) I = 0.  No divisions, so
// much cheaper over a number field than eliminating.  Empty if rank < n-1.
std::vector<QPoly> adjugate_kernel(const NumberFieldF& K, const Mat<NumberFieldF>& m) {
    size_t n = m.rows;
    for (size_t drop_row = 0; drop_row < n; ++drop_row) {
        std::vector<size_t> rows;
        for (size_t r = 0; r < n; ++r)
            if (r != drop_row) rows.push_back(r);
        std::vector<QPoly> v(n, K.zero());
        bool nonzero = false;
        for (size_t drop_col = 0; drop_col < n; ++drop_col) {
            std::vector<size_t> cols;
            for (size_t c = 0; c < n; ++c)
                if (c != drop_col) cols.push_back(c);
            QPoly minor = sub_det(K, m, rows, cols);
            if ((drop_row + drop_col) % 2) minor = K.neg(minor);
            nonzero = nonzero || !K.is_zero(minor);
            v[drop_col] = std::move(minor);
        }
        if (nonzero) return v;
    }
    return {};
}

} // namespace

ExactSolution fp_solution(const MultiGraph& g) {
    AlgebraicReal lam = frobenius_perron(g); // DisconnectedGraph / ZeroGraph guards
    NumberFieldF K = field_of(lam);
    QPoly lamE = K.gen();

    Mat<NumberFieldF> m(K, size_t(g.n), size_t(g.n));
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            m.at(size_t(i), size_t(j)) = K.from_rat(Rat(g.at(i, j)));
            if (i == j) m.at(size_t(i), size_t(j)) = K.sub(m.at(size_t(i), size_t(j)), lamE);
        }
    std::vector<QPoly> r;
    if (g.n <= 4) r = adjugate_kernel(K, m);
    if (r.empty()) {
        auto basis = null_space(K, m);
        if (basis.size() != 1)
            throw std::logic_error("largest eigenvalue of a connected graph must be simple");
        r = std::move(basis[0]);
    }
    for (const auto& entry : r)
        if (K.is_zero(entry))
            throw Error(ErrorCode::InvalidSolution,
                        "eigenvector at the largest eigenvalue has a zero entry");

    ExactSolution sol(K);
    sol.graph = g;
    sol.lam = lamE;
    // x_ij = a r_j / r_i and y_ij = a r_i / r_j for every edge; invert each
    // eigenvector entry once up front instead of once per incident edge.
    std::vector<QPoly> rinv;
    rinv.reserve(r.size());
    for (const QPoly& entry : r) rinv.push_back(K.inv(entry));
    for (int i = 0; i < g.n; ++i) {
        if (int a = g.at(i, i); a > 0)
            sol.selfs.emplace(i, realize_self_trace(K, a, K.from_rat(Rat(a))));
        for (int j = i + 1; j < g.n; ++j) {
            int a = g.at(i, j);
            if (a == 0) continue;
            QPoly x = K.mul(K.from_rat(Rat(a)), K.mul(r[size_t(j)], rinv[size_t(i)]));
            QPoly y = K.mul(K.from_rat(Rat(a)), K.mul(r[size_t(i)], rinv[size_t(j)]));
            sol.pairs.emplace(std::make_pair(i, j), realize_pair_traces(K, a, x, y));
        }
    }
    return sol;
}

} // namespace qmk
