#include "qmk/adet.hpp"

#include "qmk/error.hpp"
#include "qmk/solver.hpp"
#include "qmk/spectra.hpp"

#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

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

MultiGraph tadpole(int n) {
    MultiGraph g = path_graph(n);
    g.set(n - 1, n - 1, 1);
    return g;
}

MultiGraph star_graph(int leaves) {
    MultiGraph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.set(0, i, 1);
    return g;
}

MultiGraph single_vertex(int loops) {
    MultiGraph g(1);
    g.set(0, 0, loops);
    return g;
}

AlgebraicReal root_of(std::initializer_list<long> cs, long lo, long hi) {
    return AlgebraicReal::from_isolated(ZPoly::from_ints(cs), Rat(lo), Rat(hi));
}

template <typename Fn>
std::optional<ErrorCode> code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

// Stable double evaluation of P_n through the three-term recurrence (the
// recurrence is a rotation for |x| < 2, so errors grow only linearly in n).
double ultra_double(int n, double x) {
    double prev = 0.0;
    double cur = 1.0;
    if (n == 0) return prev;
    for (int k = 1; k < n; ++k) {
        double nxt = x * cur - prev;
        prev = cur;
        cur = nxt;
    }
    return cur;
}

// Independent oracle: P(A) as an explicit power sum, no Horner.
IntMat power_sum_eval(const ZPoly& p, const MultiGraph& g) {
    const IntMat a = adjacency_matrix(g);
    size_t n = (size_t)g.n;
    IntMat acc(n, std::vector<Int>(n, Int(0)));
    IntMat pw(n, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < n; ++i) pw[i][i] = 1;
    for (size_t d = 0; d < p.c.size(); ++d) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) acc[i][j] += p.c[d] * pw[i][j];
        IntMat nxt(n, std::vector<Int>(n, Int(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k < n; ++k)
                for (size_t j = 0; j < n; ++j) nxt[i][j] += pw[i][k] * a[k][j];
        pw = std::move(nxt);
    }
    return acc;
}

bool imat_zero(const IntMat& m) {
    for (const auto& row : m)
        for (const Int& v : row)
            if (v != 0) return false;
    return true;
}

IntMat zero_mat(int n) { return IntMat((size_t)n, std::vector<Int>((size_t)n, Int(0))); }

std::vector<std::string> classify_names(int N) {
    std::vector<std::string> names;
    for (const DynkinDiagram& d : classify_root_of_unity(N)) names.push_back(dynkin_name(d));
    return names;
}

} // namespace

TEST_CASE("ultraspherical polynomials track the sine quotient") {
    // P_n(2 cos t) = sin(nt) / sin(t), evaluated through the stable recurrence.
    std::mt19937 rng(20240613);
    std::uniform_real_distribution<double> tdist(0.05, 3.05);
    for (int trial = 0; trial < 200; ++trial) {
        double t = tdist(rng);
        int n = 1 + (int)(rng() % 24);
        double lhs = ultra_double(n, 2.0 * std::cos(t));
        double rhs = std::sin(n * t) / std::sin(t);
        CAPTURE(n);
        CAPTURE(t);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    }
    // The expanded coefficient form agrees with the recurrence at a rational point.
    for (int n = 0; n <= 12; ++n) {
        Rat exact = eval_poly(QQ, ultraspherical(n), Rat(3, 2));
        CHECK(std::abs(exact.get_d() - ultra_double(n, 1.5)) <= 1e-9);
    }
}

TEST_CASE("matrix evaluation matches the power-sum oracle") {
    std::vector<MultiGraph> graphs = {cycle_graph(3), tadpole(2), path_graph(4), star_graph(3),
                                      single_vertex(2)};
    MultiGraph dbl(2);
    dbl.set(0, 1, 2);
    dbl.set(0, 0, 1);
    graphs.push_back(dbl);

    std::mt19937 rng(20240614);
    for (const MultiGraph& g : graphs) {
        for (int trial = 0; trial < 12; ++trial) {
            int deg = (int)(rng() % 7);
            std::vector<Int> cs;
            for (int i = 0; i <= deg; ++i) cs.push_back(Int((long)(rng() % 11) - 5));
            ZPoly p;
            p.c = cs;
            p.trim();
            CHECK(eval_poly_matrix(p, g) == power_sum_eval(p, g));
        }
    }

    // Frozen small facts.
    MultiGraph tri = cycle_graph(3);
    CHECK(eval_poly_matrix(ultraspherical(0), tri) == zero_mat(3));
    IntMat ident = eval_poly_matrix(ultraspherical(1), tri);
    CHECK(ident == power_sum_eval(ZPoly::from_ints({1}), tri));
    CHECK(eval_poly_matrix(ultraspherical(2), tri) == adjacency_matrix(tri)); // P_2 = x
    CHECK(imat_zero(eval_poly_matrix(ultraspherical(3), path_graph(2))));     // A^2 = I on an edge
    CHECK(imat_zero(eval_poly_matrix(ultraspherical(3), single_vertex(1))));  // P_3(1) = 0
    // P_4 = x^3 - 2x evaluates to -A on the edge graph.
    IntMat p4 = eval_poly_matrix(ultraspherical(4), path_graph(2));
    CHECK(p4[0][1] == -1);
    CHECK(p4[1][0] == -1);
    CHECK(p4[0][0] == 0);
}

TEST_CASE("named diagram table: ranks, Coxeter numbers, shapes") {
    struct Row {
        DynkinFamily fam;
        int rank;
        int coxeter;
        const char* name;
    };
    const std::vector<Row> table = {
        {DynkinFamily::A, 1, 2, "A_1"},   {DynkinFamily::A, 2, 3, "A_2"},
        {DynkinFamily::A, 4, 5, "A_4"},   {DynkinFamily::D, 4, 6, "D_4"},
        {DynkinFamily::D, 7, 12, "D_7"},  {DynkinFamily::E6, 6, 12, "E_6"},
        {DynkinFamily::E7, 7, 18, "E_7"}, {DynkinFamily::E8, 8, 30, "E_8"},
        {DynkinFamily::T, 1, 3, "T_1"},   {DynkinFamily::T, 3, 7, "T_3"},
    };
    for (const Row& row : table) {
        DynkinDiagram d = make_dynkin(row.fam, row.rank);
        CAPTURE(row.name);
        CHECK(d.rank == row.rank);
        CHECK(d.coxeter == row.coxeter);
        CHECK(d.graph.n == row.rank);
        CHECK(dynkin_name(d) == row.name);
        CHECK(is_connected(d.graph));
        CHECK(is_generalized_tree(d.graph));
    }

    // Shape spot checks against hand-built graphs.
    CHECK(canonical_form(make_dynkin(DynkinFamily::A, 3).graph) == canonical_form(path_graph(3)));
    CHECK(canonical_form(make_dynkin(DynkinFamily::D, 4).graph) == canonical_form(star_graph(3)));
    CHECK(canonical_form(make_dynkin(DynkinFamily::T, 3).graph) == canonical_form(tadpole(3)));
    CHECK(make_dynkin(DynkinFamily::T, 1).graph == single_vertex(1));
    // E_6: 5-path with one extra vertex under the middle.
    MultiGraph e6(6);
    for (int i = 0; i + 1 < 5; ++i) e6.set(i, i + 1, 1);
    e6.set(2, 5, 1);
    CHECK(canonical_form(make_dynkin(DynkinFamily::E6, 6).graph) == canonical_form(e6));

    CHECK_THROWS_AS(make_dynkin(DynkinFamily::A, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_dynkin(DynkinFamily::D, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_dynkin(DynkinFamily::E6, 5), std::invalid_argument);
    CHECK_THROWS_AS(make_dynkin(DynkinFamily::E8, 7), std::invalid_argument);
    CHECK_THROWS_AS(make_dynkin(DynkinFamily::T, 0), std::invalid_argument);
}

TEST_CASE("each named diagram is annihilated first at its Coxeter number") {
    std::vector<DynkinDiagram> sweep;
    for (int n = 1; n <= 29; ++n) sweep.push_back(make_dynkin(DynkinFamily::A, n));
    for (int n = 4; n <= 16; ++n) sweep.push_back(make_dynkin(DynkinFamily::D, n));
    sweep.push_back(make_dynkin(DynkinFamily::E6, 6));
    sweep.push_back(make_dynkin(DynkinFamily::E7, 7));
    sweep.push_back(make_dynkin(DynkinFamily::E8, 8));
    for (int n = 1; n <= 14; ++n) sweep.push_back(make_dynkin(DynkinFamily::T, n));

    for (const DynkinDiagram& d : sweep) {
        CAPTURE(dynkin_name(d));
        CHECK(d.coxeter <= 30);
        CHECK(imat_zero(eval_poly_matrix(ultraspherical(d.coxeter), d.graph)));
        // Detection finds the same diagram, and no smaller index annihilates.
        std::optional<AdetDetection> det = adet_detect(d.graph, 64);
        REQUIRE(det.has_value());
        CHECK(det->coxeter == d.coxeter);
        CHECK(det->diagram.coxeter == d.coxeter);
        CHECK(det->diagram.family == d.family);
        CHECK(det->diagram.rank == d.rank);
        CHECK(dynkin_name(det->diagram) == dynkin_name(d));
    }
}

TEST_CASE("detection: frozen examples and input validation") {
    std::optional<AdetDetection> det = adet_detect(path_graph(2));
    REQUIRE(det.has_value());
    CHECK(dynkin_name(det->diagram) == "A_2");
    CHECK(det->coxeter == 3);

    det = adet_detect(single_vertex(1));
    REQUIRE(det.has_value());
    CHECK(dynkin_name(det->diagram) == "T_1");
    CHECK(det->coxeter == 3);

    // Spectral radius >= 2: no ultraspherical polynomial ever vanishes.
    CHECK(!adet_detect(cycle_graph(3)).has_value());   // P_n(2) = n
    CHECK(!adet_detect(cycle_graph(4)).has_value());
    MultiGraph dbl(2);
    dbl.set(0, 1, 2);
    CHECK(!adet_detect(dbl).has_value());
    CHECK(!adet_detect(star_graph(4)).has_value());    // affine fork, eigenvalue 2
    CHECK(!adet_detect(single_vertex(2)).has_value());

    // The scan respects n_max.
    MultiGraph a4 = path_graph(4); // annihilated first at 5
    CHECK(!adet_detect(a4, 4).has_value());
    CHECK(adet_detect(a4, 5).has_value());

    CHECK_THROWS_AS(adet_detect(path_graph(2), 0), std::invalid_argument);
    CHECK_THROWS_AS(adet_detect(path_graph(2), 65), std::invalid_argument);
    MultiGraph disco(2); // no edges
    CHECK(code_of([&] { adet_detect(disco); }) == ErrorCode::DisconnectedGraph);
    CHECK(code_of([&] { nonneg_check(disco, 10); }) == ErrorCode::DisconnectedGraph);
}

TEST_CASE("entrywise nonnegativity scan") {
    CHECK(nonneg_check(cycle_graph(3), 50));
    CHECK(nonneg_check(cycle_graph(4), 50));
    CHECK(nonneg_check(single_vertex(2), 50)); // P_n(2) = n >= 0
    CHECK(nonneg_check(single_vertex(3), 50));
    MultiGraph dbl(2);
    dbl.set(0, 1, 2);
    CHECK(nonneg_check(dbl, 50));
    MultiGraph both_loops = path_graph(2);
    both_loops.set(0, 0, 1);
    both_loops.set(1, 1, 1);
    CHECK(nonneg_check(both_loops, 50));

    // Annihilated graphs go negative right after the vanishing index.
    CHECK(!nonneg_check(path_graph(2), 50));    // P_4(A) = -A
    CHECK(!nonneg_check(single_vertex(1), 50)); // P_4(1) = -1
    CHECK(!nonneg_check(tadpole(2), 50));
    CHECK(nonneg_check(path_graph(2), 3));      // but the prefix is clean

    CHECK_THROWS_AS(nonneg_check(path_graph(2), 0), std::invalid_argument);
}

TEST_CASE("small connected graphs split into annihilated and nonnegative classes") {
    const std::vector<std::set<std::string>> expected = {
        {"A_1", "T_1"},
        {"A_2", "T_2"},
        {"A_3", "T_3"},
        {"A_4", "T_4", "D_4"},
    };
    for (int n = 1; n <= 4; ++n) {
        std::set<std::string> detected;
        for (const MultiGraph& g : enumerate_connected_multigraphs(n, 3)) {
            std::optional<AdetDetection> det = adet_detect(g, 64);
            bool nonneg = nonneg_check(g, 50);
            CAPTURE(n);
            CAPTURE(graph_brief(g));
            CHECK((det.has_value() || nonneg));
            if (det) {
                detected.insert(dynkin_name(det->diagram));
                CHECK(!nonneg); // P_{h+1}(A) = -P_{h-1}(A) already has negative entries
            }
        }
        CHECK(detected == expected[(size_t)n - 1]);
    }
}

TEST_CASE("eigenvalues of named diagrams are ultraspherical roots") {
    std::vector<DynkinDiagram> sweep;
    for (int n = 1; n <= 10; ++n) sweep.push_back(make_dynkin(DynkinFamily::A, n));
    for (int n = 4; n <= 10; ++n) sweep.push_back(make_dynkin(DynkinFamily::D, n));
    sweep.push_back(make_dynkin(DynkinFamily::E6, 6));
    sweep.push_back(make_dynkin(DynkinFamily::E7, 7));
    sweep.push_back(make_dynkin(DynkinFamily::E8, 8));
    for (int n = 1; n <= 8; ++n) sweep.push_back(make_dynkin(DynkinFamily::T, n));

    const ZPoly x = ZPoly::from_ints({0, 1});
    for (const DynkinDiagram& d : sweep) {
        CAPTURE(dynkin_name(d));
        Spectrum sp = spectrum(d.graph);
        int mult_total = 0;
        for (const EigenvalueInfo& ev : sp.values) {
            mult_total += ev.multiplicity;
            // Exact: P_h(lambda) = 0 in the field generated by the eigenvalue.
            NumberFieldF K = field_of(ev.value);
            CHECK(K.is_zero(eval_poly(K, ultraspherical(d.coxeter), K.gen())));
            // Float pipeline agrees.
            double approx = ultra_double(d.coxeter, ev.value.to_double());
            CHECK(std::abs(approx) <= 1e-12);
        }
        CHECK(mult_total == d.rank);
    }
}

TEST_CASE("root-of-unity classification lists") {
    using V = std::vector<std::string>;
    CHECK(classify_names(3) == V{"A_2", "T_1"});
    CHECK(classify_names(4) == V{"A_1"});
    CHECK(classify_names(5) == V{"A_4", "T_2"});
    CHECK(classify_names(6) == V{"A_2"}); // T_1 dropped: even N excludes the loop family
    CHECK(classify_names(7) == V{"A_6", "T_3"});
    CHECK(classify_names(10) == V{"A_4"});
    CHECK(classify_names(12) == V{"A_5", "D_4"});
    CHECK(classify_names(24) == V{"A_11", "D_7", "E_6"});
    CHECK(classify_names(36) == V{"A_17", "D_10", "E_7"});
    CHECK(classify_names(60) == V{"A_29", "D_16", "E_8"});
    CHECK_THROWS_AS(classify_root_of_unity(2), std::invalid_argument);

    // Every listed diagram detects back with h = N*.
    for (int N : {3, 4, 5, 6, 7, 10, 12, 16, 21}) {
        for (const DynkinDiagram& d : classify_root_of_unity(N)) {
            CAPTURE(N);
            CAPTURE(dynkin_name(d));
            std::optional<AdetDetection> det = adet_detect(d.graph, 64);
            REQUIRE(det.has_value());
            CHECK(det->coxeter == (N % 2 == 1 ? N : N / 2));
            CHECK(dynkin_name(det->diagram) == dynkin_name(d));
        }
    }
}

TEST_CASE("diagram validation cross-checks spectra, solver, and projector images") {
    auto orders = [](const DiagramReport& r) {
        std::vector<int> out;
        for (const DiagramEigenRow& row : r.rows) out.push_back(row.q_order.value_or(-1));
        return out;
    };

    SUBCASE("A_2: both eigenvalues carry a vanishing projector image") {
        DiagramReport r = validate_diagram_solution(make_dynkin(DynkinFamily::A, 2));
        REQUIRE(r.rows.size() == 2);
        CHECK(r.rows[0].lambda.to_double() == doctest::Approx(-1.0));
        CHECK(r.rows[1].lambda.to_double() == doctest::Approx(1.0));
        CHECK(orders(r) == std::vector<int>{6, 3});
        for (const DiagramEigenRow& row : r.rows) {
            CHECK(row.multiplicity == 1);
            CHECK(row.nondegenerate);
            CHECK(row.solved);
            CHECK(!row.q_excluded);
            REQUIRE(row.jw_norm.has_value());
            CHECK(*row.jw_norm <= 1e-8);
        }
    }

    SUBCASE("T_1: the loop vertex at the third root order") {
        DiagramReport r = validate_diagram_solution(make_dynkin(DynkinFamily::T, 1));
        REQUIRE(r.rows.size() == 1);
        CHECK(r.rows[0].lambda.to_double() == doctest::Approx(1.0));
        CHECK(r.rows[0].q_order == 3);
        CHECK(r.rows[0].solved);
        REQUIRE(r.rows[0].jw_norm.has_value());
        CHECK(*r.rows[0].jw_norm <= 1e-8);
    }

    SUBCASE("T_2: only odd orders appear; the even-order values miss the spectrum") {
        DiagramReport r = validate_diagram_solution(make_dynkin(DynkinFamily::T, 2));
        REQUIRE(r.rows.size() == 2);
        CHECK(orders(r) == std::vector<int>{5, 5});
        for (const DiagramEigenRow& row : r.rows) {
            CHECK(row.solved);
            REQUIRE(row.jw_norm.has_value());
            CHECK(*row.jw_norm <= 1e-8);
            CHECK(*row.q_order % 2 == 1);
        }
        // A primitive 10th root of unity forces lambda in {-(1+sqrt5)/2, (sqrt5-1)/2},
        // and neither is an eigenvalue of the T_2 graph: the even case is excluded.
        MultiGraph t2 = tadpole(2);
        CHECK(code_of([&] { analyze_eigenvalue(t2, root_of({-1, 1, 1}, -2, -1)); }) ==
              ErrorCode::NotAnEigenvalue);
        CHECK(code_of([&] { analyze_eigenvalue(t2, root_of({-1, 1, 1}, 0, 1)); }) ==
              ErrorCode::NotAnEigenvalue);
    }

    SUBCASE("D_4: the double zero eigenvalue is degenerate and excluded") {
        DiagramReport r = validate_diagram_solution(make_dynkin(DynkinFamily::D, 4));
        REQUIRE(r.rows.size() == 3);
        CHECK(r.rows[0].lambda.to_double() == doctest::Approx(-std::sqrt(3.0)));
        CHECK(r.rows[1].lambda.to_double() == doctest::Approx(0.0));
        CHECK(r.rows[2].lambda.to_double() == doctest::Approx(std::sqrt(3.0)));
        CHECK(r.rows[1].multiplicity == 2);
        CHECK(r.rows[1].q_excluded);
        CHECK(!r.rows[1].nondegenerate);
        CHECK(!r.rows[1].solved);
        for (size_t i : {(size_t)0, (size_t)2}) {
            CHECK(r.rows[i].q_order == 12);
            CHECK(r.rows[i].solved);
            REQUIRE(r.rows[i].jw_norm.has_value());
            CHECK(*r.rows[i].jw_norm <= 1e-8);
        }
    }

    SUBCASE("A_4: orders alternate between 10 and 5 along the spectrum") {
        DiagramReport r = validate_diagram_solution(make_dynkin(DynkinFamily::A, 4));
        REQUIRE(r.rows.size() == 4);
        CHECK(orders(r) == std::vector<int>{10, 5, 10, 5});
        for (const DiagramEigenRow& row : r.rows) {
            CHECK(row.solved);
            REQUIRE(row.jw_norm.has_value());
            CHECK(*row.jw_norm <= 1e-8);
        }
    }

    SUBCASE("A_5: interior eigenvalues with small orders are degenerate") {
        DiagramReport r = validate_diagram_solution(make_dynkin(DynkinFamily::A, 5));
        REQUIRE(r.rows.size() == 5);
        const std::vector<bool> solved = {true, false, false, false, true};
        for (size_t i = 0; i < 5; ++i) {
            CAPTURE(i);
            CHECK(r.rows[i].solved == solved[i]);
            CHECK(r.rows[i].jw_norm.has_value() == solved[i]);
        }
        CHECK(r.rows[2].q_excluded); // lambda = 0
        CHECK(orders(r) == std::vector<int>{12, 6, -1, 3, 12});
    }

    SUBCASE("E_6: four primitive eigenvalues solve; the projector work is deferred") {
        DiagramReport r = validate_diagram_solution(make_dynkin(DynkinFamily::E6, 6));
        REQUIRE(r.rows.size() == 6);
        const std::vector<bool> solved = {true, false, true, true, false, true};
        for (size_t i = 0; i < 6; ++i) {
            CAPTURE(i);
            CHECK(r.rows[i].solved == solved[i]);
            CHECK(!r.rows[i].jw_norm.has_value()); // image on 11 strands: over budget
        }
        CHECK(orders(r) == std::vector<int>{24, 6, 24, 24, 3, 24});
    }

    SUBCASE("E_8: all eight eigenvalues are primitive at order 60") {
        DiagramReport r = validate_diagram_solution(make_dynkin(DynkinFamily::E8, 8));
        REQUIRE(r.rows.size() == 8);
        for (const DiagramEigenRow& row : r.rows) {
            CHECK(row.multiplicity == 1);
            CHECK(row.solved);
            CHECK(row.q_order == 60);
            CHECK(!row.jw_norm.has_value());
        }
    }

    SUBCASE("a zero work budget reports the rows but skips every projector") {
        DiagramReport r = validate_diagram_solution(make_dynkin(DynkinFamily::A, 2), 0.0);
        REQUIRE(r.rows.size() == 2);
        for (const DiagramEigenRow& row : r.rows) {
            CHECK(row.solved);
            CHECK(row.q_order.has_value());
            CHECK(!row.jw_norm.has_value());
        }
    }
}
