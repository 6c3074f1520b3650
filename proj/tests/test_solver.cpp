#include "qmk/solver.hpp"

#include "qmk/error.hpp"

#include <doctest.h>

#include <random>

using namespace qmk;

namespace {

const RationalField QQ;

MultiGraph path_graph(int n) {
    MultiGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.set(i, i + 1, 1);
    return g;
}

MultiGraph cycle_graph(int n) {
    MultiGraph g = path_graph(n);
    g.set(0, n - 1, g.at(0, n - 1) + 1);
    return g;
}

ZPoly zp(std::initializer_list<long> cs) { return ZPoly::from_ints(cs); }

AlgebraicReal root_of(std::initializer_list<long> cs, long lo, long hi) {
    return AlgebraicReal::from_isolated(ZPoly::from_ints(cs), Rat(lo), Rat(hi));
}

Rat rq(long n, long d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

TreeSystem<RationalField> plain_tree(int n, std::vector<std::pair<int, int>> edges,
                                     std::vector<Rat> targets) {
    TreeSystem<RationalField> sys;
    sys.n = n;
    for (auto [i, j] : edges) sys.edges.push_back({i, j, Rat(0), Rat(0)});
    sys.targets = std::move(targets);
    return sys;
}

} // namespace

TEST_CASE("tree peeling: forced elimination on explicit systems") {
    // single edge, targets (1, 1): both oriented values 1
    auto sys = plain_tree(2, {{0, 1}}, {Rat(1), Rat(1)});
    auto asg = peel_tree_system(QQ, sys);
    REQUIRE(asg.solved);
    auto vals = oriented_edge_values(QQ, sys, asg);
    CHECK(vals.at({0, 1}) == Rat(1));
    CHECK(vals.at({1, 0}) == Rat(1));

    // single edge, targets (2, 2): the product constraint 2 * 2 = 1 fails
    CHECK_FALSE(peel_tree_system(QQ, plain_tree(2, {{0, 1}}, {Rat(2), Rat(2)})).solved);

    // single vertex: solvable exactly at target zero
    CHECK(peel_tree_system(QQ, plain_tree(1, {}, {Rat(0)})).solved);
    CHECK_FALSE(peel_tree_system(QQ, plain_tree(1, {}, {Rat(1)})).solved);

    // 3-vertex path, all targets 1: the middle vertex is forced to zero
    CHECK_FALSE(
        peel_tree_system(QQ, plain_tree(3, {{0, 1}, {1, 2}}, {Rat(1), Rat(1), Rat(1)})).solved);

    // 3-vertex path, targets (1, 2, 1): all oriented values 1
    auto p3 = plain_tree(3, {{0, 1}, {1, 2}}, {Rat(1), Rat(2), Rat(1)});
    auto a3 = peel_tree_system(QQ, p3);
    REQUIRE(a3.solved);
    for (auto& [k, v] : oriented_edge_values(QQ, p3, a3)) CHECK(v == Rat(1));

    // constant offsets shift the contributions: doubled-edge system at
    // lambda = 2 with frozen eigenvalue 1 forces the remaining eigenvalue 1
    TreeSystem<RationalField> off;
    off.n = 2;
    off.edges.push_back({0, 1, Rat(1), Rat(1)});
    off.targets = {Rat(2), Rat(2)};
    auto aoff = peel_tree_system(QQ, off);
    REQUIRE(aoff.solved);
    CHECK(aoff.u[0] == Rat(1));

    // non-tree edge sets are rejected
    CHECK_THROWS_AS(
        (void)peel_tree_system(QQ, plain_tree(3, {{0, 1}}, {Rat(0), Rat(0), Rat(0)})),
        std::invalid_argument);
    CHECK_THROWS_AS((void)peel_tree_system(
                        QQ, plain_tree(4, {{0, 1}, {2, 3}, {0, 1}}, // not a tree
                                       {Rat(1), Rat(1), Rat(1), Rat(1)})),
                    std::invalid_argument);
}

TEST_CASE("tree peeling: the result is independent of the leaf order") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<long> tnum(-4, 4), tden(1, 3);
    for (int trial = 0; trial < 40; ++trial) {
        // random tree on 6 vertices, random rational targets
        int n = 6;
        std::vector<std::pair<int, int>> edges;
        for (int v = 1; v < n; ++v) {
            std::uniform_int_distribution<int> parent(0, v - 1);
            edges.emplace_back(parent(rng), v);
        }
        std::vector<Rat> targets;
        for (int v = 0; v < n; ++v) targets.push_back(rq(tnum(rng), tden(rng)));
        auto sys = plain_tree(n, edges, targets);

        auto base = peel_tree_system(QQ, sys);
        auto base_vals =
            base.solved ? oriented_edge_values(QQ, sys, base)
                        : std::map<std::pair<int, int>, Rat>{};
        for (int order = 0; order < 5; ++order) {
            LeafPicker random_leaf = [&rng](const std::vector<int>& leaves) {
                std::uniform_int_distribution<size_t> pick(0, leaves.size() - 1);
                return leaves[pick(rng)];
            };
            auto other = peel_tree_system(QQ, sys, random_leaf);
            CHECK(other.solved == base.solved);
            if (base.solved) CHECK(oriented_edge_values(QQ, sys, other) == base_vals);
        }
    }
}

TEST_CASE("generalized tree solving: explicit cases") {
    MultiGraph a2 = path_graph(2);

    auto sol = solve_generalized_tree(a2, AlgebraicReal::from_rational(Rat(1)));
    REQUIRE(sol.has_value());
    check_solution_shape(*sol);
    CHECK(all_residuals_zero(sol->field, verify_solution(*sol)));
    auto [x, y] = trace_invariant(sol->field, sol->pairs.at({0, 1}));
    CHECK(sol->field.eq(x, sol->field.one()));
    CHECK(sol->field.eq(y, sol->field.one()));

    auto neg = solve_generalized_tree(a2, AlgebraicReal::from_rational(Rat(-1)));
    REQUIRE(neg.has_value());
    auto [nx, ny] = trace_invariant(neg->field, neg->pairs.at({0, 1}));
    CHECK(neg->field.eq(nx, neg->field.from_rat(Rat(-1))));
    CHECK(neg->field.eq(ny, neg->field.from_rat(Rat(-1))));

    // 3-vertex path: lambda = 0 is a degenerate eigenvalue -> no solution,
    // lambda = sqrt(2) is nondegenerate -> unique solution with zero residuals
    MultiGraph p3 = path_graph(3);
    CHECK_FALSE(solve_generalized_tree(p3, AlgebraicReal::from_rational(Rat(0))).has_value());
    CHECK_FALSE(is_nondegenerate(p3, AlgebraicReal::from_rational(Rat(0))));
    auto s2 = solve_generalized_tree(p3, root_of({-2, 0, 1}, 1, 2));
    REQUIRE(s2.has_value());
    check_solution_shape(*s2);
    CHECK(all_residuals_zero(s2->field, verify_solution(*s2)));

    // values that are not eigenvalues simply have no solution
    CHECK_FALSE(solve_generalized_tree(p3, AlgebraicReal::from_rational(Rat(5))).has_value());

    // a loop shifts the target: edge plus loop at vertex 0 at the golden ratio
    MultiGraph el = path_graph(2);
    el.set(0, 0, 1);
    auto gold = solve_generalized_tree(el, root_of({-1, -1, 1}, 1, 2));
    REQUIRE(gold.has_value());
    check_solution_shape(*gold);
    CHECK(all_residuals_zero(gold->field, verify_solution(*gold)));
    const NumberFieldF& K = gold->field;
    auto [gx, gy] = trace_invariant(K, gold->pairs.at({0, 1}));
    CHECK(K.eq(gx, K.sub(K.gen(), K.one()))); // phi - 1 at the looped vertex
    CHECK(K.eq(gy, K.gen()));                 // phi at the other

    // 3-vertex path with loops everywhere: lambda = 1 is degenerate
    MultiGraph all3 = path_graph(3);
    for (int v = 0; v < 3; ++v) all3.set(v, v, 1);
    CHECK_FALSE(solve_generalized_tree(all3, AlgebraicReal::from_rational(Rat(1))).has_value());

    // non-tree inputs are rejected
    CHECK_THROWS_AS(
        (void)solve_generalized_tree(cycle_graph(3), AlgebraicReal::from_rational(Rat(2))),
        Error);
    MultiGraph dbl(2);
    dbl.set(0, 1, 2);
    CHECK_THROWS_AS(
        (void)solve_generalized_tree(dbl, AlgebraicReal::from_rational(Rat(2))), Error);
}

TEST_CASE("generalized tree solving: solvable exactly at nondegenerate eigenvalues") {
    for (int n : {3, 4}) {
        for (const MultiGraph& g : enumerate_graphs(n, RigidityClass::SuperRigid)) {
            Spectrum sp = spectrum(g);
            for (const EigenvalueInfo& info : sp.values) {
                auto sol = solve_generalized_tree(g, info.value);
                CHECK(sol.has_value() == info.nondegenerate);
                if (sol) {
                    check_solution_shape(*sol);
                    CHECK(all_residuals_zero(sol->field, verify_solution(*sol)));
                }
            }
        }
    }
}

TEST_CASE("generalized tree solving: leaf order never changes the outcome") {
    std::mt19937 rng(20240518);
    // random generalized trees: random tree shape plus random loops
    for (int trial = 0; trial < 12; ++trial) {
        std::uniform_int_distribution<int> size(2, 6);
        int n = size(rng);
        MultiGraph g(n);
        for (int v = 1; v < n; ++v) {
            std::uniform_int_distribution<int> parent(0, v - 1);
            g.set(parent(rng), v, 1);
        }
        std::uniform_int_distribution<int> coin(0, 1);
        for (int v = 0; v < n; ++v)
            if (coin(rng)) g.set(v, v, 1);

        for (const EigenvalueInfo& info : spectrum(g).values) {
            auto base = solve_generalized_tree(g, info.value);
            for (int order = 0; order < 5; ++order) {
                LeafPicker random_leaf = [&rng](const std::vector<int>& leaves) {
                    std::uniform_int_distribution<size_t> pick(0, leaves.size() - 1);
                    return leaves[pick(rng)];
                };
                auto other = solve_generalized_tree(g, info.value, random_leaf);
                REQUIRE(other.has_value() == base.has_value());
                if (base) {
                    for (const auto& [key, form] : base->pairs) {
                        auto [bx, by] = trace_invariant(base->field, form);
                        auto [ox, oy] = trace_invariant(other->field, other->pairs.at(key));
                        CHECK(base->field.eq(bx, ox));
                        CHECK(base->field.eq(by, oy));
                    }
                }
            }
        }
    }
}

TEST_CASE("solution tables of generalized trees") {
    // single edge with a loop at each end: eigenvalues 0 (excluded q) and 2
    MultiGraph both(2);
    both.set(0, 1, 1);
    both.set(0, 0, 1);
    both.set(1, 1, 1);
    auto table = super_rigid_spectrum(both);
    REQUIRE(table.size() == 2);
    CHECK(table[0].info.value == AlgebraicReal::from_rational(Rat(0)));
    CHECK(table[0].q.excluded);
    CHECK(table[0].sol.has_value()); // nondegenerate even though q is excluded
    CHECK(table[1].info.value == AlgebraicReal::from_rational(Rat(2)));
    CHECK(table[1].q.coincident);
    CHECK(table[1].q.q_plus.minpoly == zp({1, 1})); // q = -1
    REQUIRE(table[1].q_order.has_value());
    CHECK(*table[1].q_order == 2);
    REQUIRE(table[1].sol.has_value());
    CHECK(all_residuals_zero(table[1].sol->field, verify_solution(*table[1].sol)));

    // plain edge: lambda = -1 gives q of order 6, lambda = 1 gives order 3
    auto a2 = super_rigid_spectrum(path_graph(2));
    REQUIRE(a2.size() == 2);
    CHECK(a2[0].info.value == AlgebraicReal::from_rational(Rat(-1)));
    CHECK(a2[0].q.q_plus.minpoly == zp({1, -1, 1}));
    CHECK(a2[0].q_order == std::optional<int>(6));
    CHECK(a2[1].info.value == AlgebraicReal::from_rational(Rat(1)));
    CHECK(a2[1].q.q_plus.minpoly == zp({1, 1, 1}));
    CHECK(a2[1].q_order == std::optional<int>(3));

    // edge plus one loop: both eigenvalues give q of order 5
    MultiGraph el = path_graph(2);
    el.set(0, 0, 1);
    auto golden = super_rigid_spectrum(el);
    REQUIRE(golden.size() == 2);
    for (const auto& entry : golden) {
        CHECK(entry.q.q_plus.minpoly == zp({1, 1, 1, 1, 1}));
        CHECK(entry.q_order == std::optional<int>(5));
        CHECK(entry.sol.has_value());
    }

    // 3-vertex path: the middle eigenvalue 0 is degenerate and q-excluded,
    // the outer ones +-sqrt(2) have q of order 8
    auto p3 = super_rigid_spectrum(path_graph(3));
    REQUIRE(p3.size() == 3);
    CHECK(p3[1].info.value == AlgebraicReal::from_rational(Rat(0)));
    CHECK(p3[1].q.excluded);
    CHECK_FALSE(p3[1].sol.has_value());
    for (size_t k : {size_t(0), size_t(2)}) {
        CHECK(p3[k].q.q_plus.minpoly == zp({1, 0, 0, 0, 1}));
        CHECK(p3[k].q_order == std::optional<int>(8));
        CHECK(p3[k].sol.has_value());
    }

    CHECK_THROWS_AS((void)super_rigid_spectrum(cycle_graph(3)), Error);
}

TEST_CASE("canonical solution at the largest eigenvalue") {
    // plain edge: lambda = 1, all traces 1
    auto a2 = fp_solution(path_graph(2));
    CHECK(a2.field.nf->minpoly == zp({-1, 1}));
    check_solution_shape(a2);
    CHECK(all_residuals_zero(a2.field, verify_solution(a2)));

    // triangle: lambda = 2, each pair measures (1, 1)
    auto tri = fp_solution(cycle_graph(3));
    CHECK(tri.field.nf->minpoly == zp({-2, 1}));
    for (const auto& [key, form] : tri.pairs) {
        auto [x, y] = trace_invariant(tri.field, form);
        CHECK(tri.field.eq(x, tri.field.one()));
        CHECK(tri.field.eq(y, tri.field.one()));
    }
    CHECK(all_residuals_zero(tri.field, verify_solution(tri)));

    // single vertex with two loops: lambda = 2 realized by the self trace
    MultiGraph v2(1);
    v2.set(0, 0, 2);
    auto lp = fp_solution(v2);
    CHECK(lp.field.nf->minpoly == zp({-2, 1}));
    CHECK(lp.field.eq(self_trace_invariant(lp.field, lp.selfs.at(0)), lp.field.from_rat(Rat(2))));
    CHECK(all_residuals_zero(lp.field, verify_solution(lp)));

    // doubled edge: lambda = 2, the pair measures (2, 2)
    MultiGraph dbl(2);
    dbl.set(0, 1, 2);
    auto d = fp_solution(dbl);
    auto [dx, dy] = trace_invariant(d.field, d.pairs.at({0, 1}));
    CHECK(d.field.eq(dx, d.field.from_rat(Rat(2))));
    CHECK(d.field.eq(dy, d.field.from_rat(Rat(2))));
    CHECK(all_residuals_zero(d.field, verify_solution(d)));

    // edge plus loop: lambda is the golden ratio
    MultiGraph el = path_graph(2);
    el.set(0, 0, 1);
    auto gold = fp_solution(el);
    CHECK(gold.field.nf->minpoly == zp({-1, -1, 1}));
    CHECK(all_residuals_zero(gold.field, verify_solution(gold)));

    // guards
    CHECK_THROWS_AS((void)fp_solution(MultiGraph(1)), Error);  // no edges at all
    CHECK_THROWS_AS((void)fp_solution(MultiGraph(2)), Error);  // disconnected
}

TEST_CASE("canonical solution: zero residuals across an exhaustive family") {
    auto graphs = enumerate_connected_multigraphs(3, 2);
    CHECK(graphs.size() > 20);
    for (const MultiGraph& g : graphs) {
        auto sol = fp_solution(g);
        check_solution_shape(sol);
        CHECK(all_residuals_zero(sol.field, verify_solution(sol)));
    }
}

TEST_CASE("general solver: parameter slots match the cycle count") {
    // triangle: one non-tree edge
    auto tri_slots = solve_general_params(cycle_graph(3));
    REQUIRE(tri_slots.size() == 1);
    CHECK(tri_slots[0].kind == ParamSlot::Kind::PairX);
    CHECK(tri_slots[0].i == 1);
    CHECK(tri_slots[0].j == 2);

    // 4-cycle: non-tree edge (2, 3)
    auto c4_slots = solve_general_params(cycle_graph(4));
    REQUIRE(c4_slots.size() == 1);
    CHECK(c4_slots[0].i == 2);
    CHECK(c4_slots[0].j == 3);

    // doubled tree edge: one surplus eigenvalue
    MultiGraph dbl(2);
    dbl.set(0, 1, 2);
    auto dbl_slots = solve_general_params(dbl);
    REQUIRE(dbl_slots.size() == 1);
    CHECK(dbl_slots[0].kind == ParamSlot::Kind::EdgeEigen);

    // vertex with two loops: one free self trace
    MultiGraph v2(1);
    v2.set(0, 0, 2);
    auto v2_slots = solve_general_params(v2);
    REQUIRE(v2_slots.size() == 1);
    CHECK(v2_slots[0].kind == ParamSlot::Kind::LoopTrace);

    // slot count == cycle count for every small graph with moderate
    // multiplicities (non-tree edges <= 2, loops <= 3)
    for (const MultiGraph& g : enumerate_connected_multigraphs(3, 2))
        CHECK((int)solve_general_params(g).size() == generalized_cycle_count(g));
}

TEST_CASE("general solver: triangle families") {
    MultiGraph tri = cycle_graph(3);

    // lambda = 2: consistent exactly at x = 1, matching the canonical solution
    auto at2 = solve_general(QQ, tri, Rat(2), {Rat(1)});
    REQUIRE(at2.has_value());
    check_solution_shape(*at2);
    CHECK(all_residuals_zero(QQ, verify_solution(*at2)));
    for (const auto& [key, form] : at2->pairs) {
        auto [x, y] = trace_invariant(QQ, form);
        CHECK(x == Rat(1));
        CHECK(y == Rat(1));
    }
    CHECK_FALSE(solve_general(QQ, tri, Rat(2), {Rat(2)}).has_value());

    // lambda = -1: every nonzero x except -1 gives a solution
    for (long xv = 1; xv <= 10; ++xv) {
        auto sol = solve_general(QQ, tri, Rat(-1), {Rat(xv)});
        REQUIRE(sol.has_value());
        CHECK(all_residuals_zero(QQ, verify_solution(*sol)));
        auto [x, y] = trace_invariant(QQ, sol->pairs.at({1, 2}));
        CHECK(x == Rat(xv));
        CHECK(y == rq(1, xv));
    }

    // lambda = 1 is the other identically-consistent value
    auto at1 = solve_general(QQ, tri, Rat(1), {Rat(2)});
    REQUIRE(at1.has_value());
    CHECK(all_residuals_zero(QQ, verify_solution(*at1)));

    // generic lambda needs x^2 - lambda x + 1 = 0: rational x = 1 fails at
    // lambda = 3, but x = (3 + sqrt(5))/2 works over that field
    CHECK_FALSE(solve_general(QQ, tri, Rat(3), {Rat(1)}).has_value());
    NumberFieldF K5 = field_of(root_of({-5, 0, 1}, 2, 3));
    QPoly xg = K5.mul(K5.from_rat(rq(1, 2)), K5.add(K5.from_rat(Rat(3)), K5.gen()));
    auto s5 = solve_general(K5, tri, K5.from_rat(Rat(3)), {xg});
    REQUIRE(s5.has_value());
    CHECK(all_residuals_zero(K5, verify_solution(*s5)));

    // parameter validation
    CHECK_THROWS_AS((void)solve_general(QQ, tri, Rat(2), {}), Error);
    CHECK_THROWS_AS((void)solve_general(QQ, tri, Rat(2), {Rat(1), Rat(1)}), Error);
    CHECK_THROWS_AS((void)solve_general(QQ, tri, Rat(2), {Rat(0)}), Error);
}

TEST_CASE("general solver: multiplicity parameters") {
    // doubled edge at lambda = 2: frozen eigenvalue 1 works, 2 does not
    MultiGraph dbl(2);
    dbl.set(0, 1, 2);
    auto ok = solve_general(QQ, dbl, Rat(2), {Rat(1)});
    REQUIRE(ok.has_value());
    CHECK(all_residuals_zero(QQ, verify_solution(*ok)));
    auto [x, y] = trace_invariant(QQ, ok->pairs.at({0, 1}));
    CHECK(x == Rat(2));
    CHECK(y == Rat(2));
    CHECK_FALSE(solve_general(QQ, dbl, Rat(2), {Rat(2)}).has_value());
    // at lambda = 3 the eigenvalue must satisfy s^2 - 3s + 1 = 0
    NumberFieldF K5 = field_of(root_of({-5, 0, 1}, 2, 3));
    QPoly sg = K5.mul(K5.from_rat(rq(1, 2)), K5.add(K5.from_rat(Rat(3)), K5.gen()));
    auto s3 = solve_general(K5, dbl, K5.from_rat(Rat(3)), {sg});
    REQUIRE(s3.has_value());
    CHECK(all_residuals_zero(K5, verify_solution(*s3)));
    // zero eigenvalues are outside the moduli
    CHECK_THROWS_AS((void)solve_general(QQ, dbl, Rat(2), {Rat(0)}), Error);

    // vertex with two loops: the self trace must equal lambda
    MultiGraph v2(1);
    v2.set(0, 0, 2);
    auto lt = solve_general(QQ, v2, Rat(5), {Rat(5)});
    REQUIRE(lt.has_value());
    CHECK(all_residuals_zero(QQ, verify_solution(*lt)));
    CHECK_FALSE(solve_general(QQ, v2, Rat(5), {Rat(4)}).has_value());

    // triangle with one doubled edge: feeding the canonical trace pair back
    // into the general solver reproduces the canonical solution
    MultiGraph trid(3);
    trid.set(0, 1, 1);
    trid.set(0, 2, 1);
    trid.set(1, 2, 2);
    auto fp = fp_solution(trid);
    const NumberFieldF& K = fp.field;
    auto slots = solve_general_params(trid);
    REQUIRE(slots.size() == 2); // non-tree edge (1, 2) of multiplicity 2
    CHECK(slots[0].kind == ParamSlot::Kind::PairX);
    CHECK(slots[1].kind == ParamSlot::Kind::PairY);
    auto [fx, fy] = trace_invariant(K, fp.pairs.at({1, 2}));
    auto again = solve_general(K, trid, fp.lam, {fx, fy});
    REQUIRE(again.has_value());
    CHECK(all_residuals_zero(K, verify_solution(*again)));
    for (const auto& [key, form] : again->pairs) {
        auto [ax, ay] = trace_invariant(K, form);
        auto [bx, by] = trace_invariant(K, fp.pairs.at(key));
        CHECK(K.eq(ax, bx));
        CHECK(K.eq(ay, by));
    }
}

TEST_CASE("general solver: 4-cycle near the boundary value") {
    MultiGraph c4 = cycle_graph(4);

    // lambda = 2: the unique admissible parameter is x = 1
    auto flat = solve_general(QQ, c4, Rat(2), {Rat(1)});
    REQUIRE(flat.has_value());
    CHECK(all_residuals_zero(QQ, verify_solution(*flat)));
    CHECK_FALSE(solve_general(QQ, c4, Rat(2), {Rat(2)}).has_value());

    // lambda = 21/10: x satisfies 10x^2 - 21x + 10 = 0, a real quadratic
    NumberFieldF K21 = field_of(root_of({10, -21, 10}, 0, 1));
    auto hi = solve_general(K21, c4, K21.from_rat(rq(21, 10)), {K21.gen()});
    REQUIRE(hi.has_value());
    check_solution_shape(*hi);
    CHECK(all_residuals_zero(K21, verify_solution(*hi)));

    // lambda = 19/10: 10x^2 - 19x + 10 has no real roots; the same solve runs
    // in the abstract field without any embedding
    NumberFieldF K19(NumberField::make(zp({10, -19, 10})));
    auto lo = solve_general(K19, c4, K19.from_rat(rq(19, 10)), {K19.gen()});
    REQUIRE(lo.has_value());
    check_solution_shape(*lo);
    CHECK(all_residuals_zero(K19, verify_solution(*lo)));

    // and the floating point version of the same point
    ComplexField C;
    std::complex<double> xc{0.95, 0.31224989991991992}; // (19 + i sqrt(39)) / 20
    auto fc = solve_general(C, c4, {1.9, 0.0}, {xc});
    REQUIRE(fc.has_value());
    CHECK(all_residuals_zero(C, verify_solution(*fc)));
}

TEST_CASE("general solver: agrees with the tree solver on generalized trees") {
    MultiGraph p3 = path_graph(3);
    AlgebraicReal s2 = root_of({-2, 0, 1}, 1, 2);
    auto tree_sol = solve_generalized_tree(p3, s2);
    REQUIRE(tree_sol.has_value());
    const NumberFieldF& K = tree_sol->field;
    CHECK(solve_general_params(p3).empty());
    auto gen_sol = solve_general(K, p3, K.gen(), {});
    REQUIRE(gen_sol.has_value());
    for (const auto& [key, form] : gen_sol->pairs) {
        auto [ax, ay] = trace_invariant(K, form);
        auto [bx, by] = trace_invariant(K, tree_sol->pairs.at(key));
        CHECK(K.eq(ax, bx));
        CHECK(K.eq(ay, by));
    }

    // disconnected graphs are rejected up front
    CHECK_THROWS_AS((void)solve_general(QQ, MultiGraph(2), Rat(0), {}), Error);
}
