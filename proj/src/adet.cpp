#include "qmk/adet.hpp"

#include "qmk/solver.hpp"
#include "qmk/tl.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace qmk {

ZPoly ultraspherical(int n) {
    if (n < 0) throw std::invalid_argument("ultraspherical: n must be >= 0");
    ZPoly prev;                        // P_0 = 0
    ZPoly cur = ZPoly::from_ints({1}); // P_1 = 1
    if (n == 0) return prev;
    const ZPoly x = ZPoly::from_ints({0, 1});
    for (int k = 1; k < n; ++k) {
        ZPoly next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// ---- named diagrams ---------------------------------------------------------

namespace {

MultiGraph path_realization(int n) {
    MultiGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.set(i, i + 1, 1);
    return g;
}

// Vertex 0 is the branch point; each arm is a chain of `arm` fresh vertices.
MultiGraph fork_realization(int arm1, int arm2, int arm3) {
    MultiGraph g(1 + arm1 + arm2 + arm3);
    int next = 1;
    for (int arm : {arm1, arm2, arm3}) {
        int prev = 0;
        for (int s = 0; s < arm; ++s) {
            g.set(prev, next, 1);
            prev = next;
            ++next;
        }
    }
    return g;
}

} // namespace

DynkinDiagram make_dynkin(DynkinFamily family, int rank) {
    switch (family) {
    case DynkinFamily::A:
        if (rank < 1) throw std::invalid_argument("A_n requires n >= 1");
        return {family, rank, rank + 1, path_realization(rank)};
    case DynkinFamily::D:
        if (rank < 4) throw std::invalid_argument("D_n requires n >= 4");
        return {family, rank, 2 * rank - 2, fork_realization(1, 1, rank - 3)};
    case DynkinFamily::E6:
        if (rank != 6) throw std::invalid_argument("E_6 has rank 6");
        return {family, 6, 12, fork_realization(1, 2, 2)};
    case DynkinFamily::E7:
        if (rank != 7) throw std::invalid_argument("E_7 has rank 7");
        return {family, 7, 18, fork_realization(1, 2, 3)};
    case DynkinFamily::E8:
        if (rank != 8) throw std::invalid_argument("E_8 has rank 8");
        return {family, 8, 30, fork_realization(1, 2, 4)};
    case DynkinFamily::T: {
        if (rank < 1) throw std::invalid_argument("T_n requires n >= 1");
        MultiGraph g = path_realization(rank);
        g.set(rank - 1, rank - 1, 1);
        return {family, rank, 2 * rank + 1, g};
    }
    }
    throw std::invalid_argument("unknown diagram family");
}

const char* dynkin_family_name(DynkinFamily family) {
    switch (family) {
    case DynkinFamily::A: return "A";
    case DynkinFamily::D: return "D";
    case DynkinFamily::E6:
    case DynkinFamily::E7:
    case DynkinFamily::E8: return "E";
    case DynkinFamily::T: return "T";
    }
    return "?";
}

std::string dynkin_name(const DynkinDiagram& d) {
    return std::string(dynkin_family_name(d.family)) + "_" + std::to_string(d.rank);
}

// ---- exact integer matrices ---------------------------------------------------

namespace {

IntMat imat_zero(int n) { return IntMat((size_t)n, std::vector<Int>((size_t)n, Int(0))); }

IntMat imat_mul(const IntMat& a, const IntMat& b) {
    size_t n = a.size();
    IntMat r = imat_zero((int)n);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            const Int& aik = a[i][k];
            if (aik == 0) continue;
            for (size_t j = 0; j < n; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

bool imat_is_zero(const IntMat& m) {
    for (const auto& row : m)
        for (const Int& v : row)
            if (v != 0) return false;
    return true;
}

// Walks P_{k+1}(A) = A·P_k(A) - P_{k-1}(A) from P_0 = 0, P_1 = I.  Entries
// live in machine words while a certified bound fits and move to big integers
// (updated in place, no per-step allocation) only when they could overflow,
// which keeps sweeps over tens of thousands of graphs cheap.
class ChebyshevScan {
  public:
    explicit ChebyshevScan(const MultiGraph& g)
        : n_(g.n),
          adj_((size_t)(g.n * g.n)),
          wprev_((size_t)(g.n * g.n), 0),
          wcur_((size_t)(g.n * g.n), 0) {
        for (int i = 0; i < n_; ++i) {
            long row = 0;
            for (int j = 0; j < n_; ++j) {
                long v = g.at(i, j);
                adj_[(size_t)(i * n_ + j)] = v;
                row += v;
            }
            row_bound_ = std::max(row_bound_, row);
        }
        for (int i = 0; i < n_; ++i) wcur_[(size_t)(i * n_ + i)] = 1;
    }

    bool cur_is_zero() const {
        if (!wide_) return std::all_of(wcur_.begin(), wcur_.end(), [](long v) { return v == 0; });
        return std::all_of(zcur_.begin(), zcur_.end(), [](const Int& v) { return sgn(v) == 0; });
    }

    bool cur_is_nonneg() const {
        if (!wide_) return std::all_of(wcur_.begin(), wcur_.end(), [](long v) { return v >= 0; });
        return std::all_of(zcur_.begin(), zcur_.end(), [](const Int& v) { return sgn(v) >= 0; });
    }

    void step() {
        if (!wide_ && (__int128)row_bound_ * max_cur_ + max_prev_ >= ((__int128)1 << 62)) promote();
        if (!wide_) {
            // next = A·cur - prev, written into prev's storage, then swapped.
            long newmax = 0;
            for (int i = 0; i < n_; ++i) {
                const long* arow = &adj_[(size_t)(i * n_)];
                for (int j = 0; j < n_; ++j) {
                    long acc = 0;
                    for (int k = 0; k < n_; ++k)
                        if (arow[k]) acc += arow[k] * wcur_[(size_t)(k * n_ + j)];
                    long v = acc - wprev_[(size_t)(i * n_ + j)];
                    wprev_[(size_t)(i * n_ + j)] = v;
                    newmax = std::max(newmax, std::labs(v));
                }
            }
            wprev_.swap(wcur_);
            max_prev_ = max_cur_;
            max_cur_ = newmax;
            return;
        }
        for (int i = 0; i < n_; ++i) {
            const long* arow = &adj_[(size_t)(i * n_)];
            for (int j = 0; j < n_; ++j) {
                Int& slot = zprev_[(size_t)(i * n_ + j)];
                mpz_neg(slot.get_mpz_t(), slot.get_mpz_t());
                for (int k = 0; k < n_; ++k)
                    if (arow[k])
                        mpz_addmul_ui(slot.get_mpz_t(), zcur_[(size_t)(k * n_ + j)].get_mpz_t(),
                                      (unsigned long)arow[k]);
            }
        }
        zprev_.swap(zcur_);
    }

  private:
    void promote() {
        zprev_.assign(wprev_.begin(), wprev_.end());
        zcur_.assign(wcur_.begin(), wcur_.end());
        wide_ = true;
    }

    int n_;
    std::vector<long> adj_;        // row-major adjacency copy (entries >= 0)
    long row_bound_ = 0;           // max row sum, for the overflow check
    bool wide_ = false;
    std::vector<long> wprev_, wcur_;
    long max_prev_ = 0, max_cur_ = 1; // exact max |entry| of each word matrix
    std::vector<Int> zprev_, zcur_;
};

// True when a Rayleigh quotient on an easy test vector certifies a spectral
// value >= 2.  P_k(2) = k and P_k increases beyond 2, so P_k(A) then has a
// positive eigenvalue for every k >= 1 and can never vanish.
bool certified_radius_at_least_two(const MultiGraph& g) {
    long total = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) total += g.at(i, j);
    if (total >= 2L * g.n) return true; // all-ones vector
    for (int i = 0; i < g.n; ++i)
        if (g.at(i, i) >= 2) return true; // coordinate vector
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) {
            // Top eigenvalue of the 2x2 principal submatrix at {i, j}:
            // s/2 + sqrt((d/2)^2 + e^2) >= 2, compared in integers.
            long s = g.at(i, i) + g.at(j, j);
            if (s >= 4) return true;
            long d = g.at(i, i) - g.at(j, j);
            long e = g.at(i, j);
            if (d * d + 4 * e * e >= (4 - s) * (4 - s)) return true;
        }
    return false;
}

// All named diagrams with the given Coxeter number, in family order.
std::vector<DynkinDiagram> diagrams_with_coxeter(int h) {
    std::vector<DynkinDiagram> out;
    if (h >= 2) out.push_back(make_dynkin(DynkinFamily::A, h - 1));
    if (h >= 6 && h % 2 == 0) out.push_back(make_dynkin(DynkinFamily::D, (h + 2) / 2));
    if (h == 12) out.push_back(make_dynkin(DynkinFamily::E6, 6));
    if (h == 18) out.push_back(make_dynkin(DynkinFamily::E7, 7));
    if (h == 30) out.push_back(make_dynkin(DynkinFamily::E8, 8));
    if (h >= 3 && h % 2 == 1) out.push_back(make_dynkin(DynkinFamily::T, (h - 1) / 2));
    return out;
}

} // namespace

IntMat adjacency_matrix(const MultiGraph& g) {
    IntMat a = imat_zero(g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) a[(size_t)i][(size_t)j] = g.at(i, j);
    return a;
}

IntMat eval_poly_matrix(const ZPoly& p, const MultiGraph& g) {
    const IntMat a = adjacency_matrix(g);
    IntMat r = imat_zero(g.n);
    for (size_t i = p.c.size(); i-- > 0;) {
        if (!imat_is_zero(r)) r = imat_mul(r, a);
        for (int d = 0; d < g.n; ++d) r[(size_t)d][(size_t)d] += p.c[i];
    }
    return r;
}

std::optional<AdetDetection> adet_detect(const MultiGraph& g, int n_max) {
    if (n_max < 1 || n_max > 64)
        throw std::invalid_argument("adet_detect: n_max must lie in [1, 64]");
    if (!is_connected(g)) throw Error(ErrorCode::DisconnectedGraph, "adet_detect needs a connected graph");
    if (certified_radius_at_least_two(g)) return std::nullopt; // no P_n(A) can vanish
    ChebyshevScan scan(g);
    for (int n = 1; n <= n_max; ++n) {
        if (scan.cur_is_zero()) {
            // n is the smallest annihilating index; it must be the Coxeter
            // number of a uniquely determined named diagram.
            for (const DynkinDiagram& d : diagrams_with_coxeter(n)) {
                if (d.rank != g.n) continue;
                // (h, vertex count) pins down the family; confirm the shape.
                bool match = g.n <= 9 ? canonical_form(d.graph) == canonical_form(g)
                                      : char_poly(d.graph) == char_poly(g);
                if (match) return AdetDetection{d, n};
            }
            throw std::logic_error("adet_detect: annihilated matrix outside the recognized families");
        }
        if (n < n_max) scan.step();
    }
    return std::nullopt;
}

bool nonneg_check(const MultiGraph& g, int n_max) {
    if (n_max < 1) throw std::invalid_argument("nonneg_check: n_max must be >= 1");
    if (!is_connected(g)) throw Error(ErrorCode::DisconnectedGraph, "nonneg_check needs a connected graph");
    ChebyshevScan scan(g);
    for (int n = 1; n <= n_max; ++n) {
        if (!scan.cur_is_nonneg()) return false;
        if (n < n_max) scan.step();
    }
    return true;
}

std::vector<DynkinDiagram> classify_root_of_unity(int N) {
    if (N < 3) throw std::invalid_argument("classify_root_of_unity: N must be >= 3");
    std::vector<DynkinDiagram> out = diagrams_with_coxeter(n_star(N));
    if (N % 2 == 0)
        std::erase_if(out, [](const DynkinDiagram& d) { return d.family == DynkinFamily::T; });
    return out;
}

// ---- cross-module validation ----------------------------------------------

namespace {

// Coarse operation count for evaluating the ending projector on `strands`
// strands: (number of diagrams) x (path basis size)^2 x strands.
double jw_work_estimate(const MultiGraph& g, int strands) {
    if (strands > 30) return std::numeric_limits<double>::infinity();
    size_t n = (size_t)g.n;
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = g.at((int)i, (int)j);
    std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) p[i][i] = 1.0;
    for (int s = 0; s < strands; ++s) {
        std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k < n; ++k)
                for (size_t j = 0; j < n; ++j) q[i][j] += p[i][k] * a[k][j];
        p = std::move(q);
    }
    double dim = 0.0;
    for (const auto& row : p)
        for (double v : row) dim += v;
    return (double)catalan(strands) * dim * dim * std::max(strands, 1);
}

} // namespace

DiagramReport validate_diagram_solution(const DynkinDiagram& d, double work_budget) {
    DiagramReport report{d, {}};
    Spectrum sp = spectrum(d.graph);
    for (const EigenvalueInfo& ev : sp.values) {
        DiagramEigenRow row;
        row.lambda = ev.value;
        row.multiplicity = ev.multiplicity;
        row.nondegenerate = ev.nondegenerate;
        std::optional<ExactSolution> sol = solve_generalized_tree(d.graph, ev.value);
        row.solved = sol.has_value();
        if (row.solved != row.nondegenerate)
            throw std::logic_error("validate_diagram_solution: solver disagrees with the eigenspace analysis");
        QPair qp = lambda_to_q(ev.value);
        if (qp.excluded) {
            row.q_excluded = true;
        } else {
            row.q_order = q_root_of_unity_order(qp.q_plus, std::max(512, 4 * d.coxeter + 4));
            if (!row.q_order)
                throw std::logic_error("validate_diagram_solution: q is not a root of unity");
            if (row.solved && n_star(*row.q_order) != d.coxeter)
                throw std::logic_error("validate_diagram_solution: q order inconsistent with the Coxeter number");
        }
        if (row.solved && row.q_order) {
            int strands = n_star(*row.q_order) - 1;
            if (jw_work_estimate(d.graph, strands) <= work_budget) {
                GradedRep<NumberFieldF> rep = build_graded_rep(*sol);
                row.jw_norm = check_jw_vanishing(rep, *row.q_order);
                if (*row.jw_norm > 1e-8)
                    throw std::logic_error("validate_diagram_solution: ending projector image failed to vanish");
            }
        }
        report.rows.push_back(row);
    }
    return report;
}

} // namespace qmk
