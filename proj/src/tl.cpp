#include "qmk/tl.hpp"

#include "qmk/algebraic.hpp"
#include "qmk/spectra.hpp"

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>

namespace qmk {

bool is_planar_matching(const std::vector<int>& match) {
    const int m = (int)match.size();
    if (m % 2 != 0) return false;
    for (int p = 0; p < m; ++p) {
        int q = match[size_t(p)];
        if (q < 0 || q >= m || q == p || match[size_t(q)] != p) return false;
    }
    std::vector<int> open;
    for (int p = 0; p < m; ++p) {
        int q = match[size_t(p)];
        if (q > p) {
            open.push_back(p);
        } else {
            if (open.empty() || open.back() != q) return false;
            open.pop_back();
        }
    }
    return open.empty();
}

PlanarDiagram make_diagram(int k, int l, const std::vector<std::pair<int, int>>& pairs) {
    if (k < 0 || l < 0 || (k + l) % 2 != 0)
        throw std::invalid_argument("diagram needs a nonnegative even number of boundary points");
    const int m = k + l;
    if ((int)pairs.size() * 2 != m)
        throw std::invalid_argument("diagram needs exactly (k + l) / 2 strands");
    std::vector<int> match(size_t(m), -1);
    for (const auto& [p, q] : pairs) {
        if (p < 0 || p >= m || q < 0 || q >= m || p == q)
            throw std::invalid_argument("strand endpoints must be distinct boundary points");
        if (match[size_t(p)] != -1 || match[size_t(q)] != -1)
            throw std::invalid_argument("boundary point used by two strands");
        match[size_t(p)] = q;
        match[size_t(q)] = p;
    }
    if (!is_planar_matching(match)) throw std::invalid_argument("strands cross");
    PlanarDiagram d;
    d.k = k;
    d.l = l;
    d.match = std::move(match);
    return d;
}

PlanarDiagram identity_diagram(int n) {
    if (n < 0) throw std::invalid_argument("strand count must be nonnegative");
    PlanarDiagram d;
    d.k = d.l = n;
    d.match.assign(size_t(2 * n), -1);
    for (int t = 0; t < n; ++t) {
        d.match[size_t(t)] = 2 * n - 1 - t;
        d.match[size_t(2 * n - 1 - t)] = t;
    }
    return d;
}

PlanarDiagram cap_cup_diagram(int n, int i) {
    if (n < 2 || i < 1 || i > n - 1)
        throw std::invalid_argument("generator index must satisfy 1 <= i <= n - 1");
    PlanarDiagram d = identity_diagram(n);
    // cap joining inputs i-1, i; cup joining the outputs at positions i-1, i,
    // i.e. boundary numbers 2n - i and 2n - 1 - i.
    d.match[size_t(i - 1)] = i;
    d.match[size_t(i)] = i - 1;
    d.match[size_t(2 * n - i)] = 2 * n - 1 - i;
    d.match[size_t(2 * n - 1 - i)] = 2 * n - i;
    return d;
}

unsigned long catalan(int n) {
    if (n < 0 || n > 30) throw std::invalid_argument("catalan: n out of range");
    unsigned long c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * (unsigned long)i + 1) / ((unsigned long)i + 2);
    return c;
}

namespace {

// Non-crossing perfect matchings of the contiguous points [lo, hi).
void arc_matchings(int lo, int hi, std::vector<std::pair<int, int>>& acc,
                   std::vector<std::vector<std::pair<int, int>>>& out) {
    if (lo >= hi) {
        out.push_back(acc);
        return;
    }
    for (int q = lo + 1; q < hi; q += 2) {
        acc.push_back({lo, q});
        const size_t mark = acc.size();
        std::vector<std::vector<std::pair<int, int>>> inner;
        {
            std::vector<std::pair<int, int>> tmp;
            arc_matchings(lo + 1, q, tmp, inner);
        }
        for (const auto& in : inner) {
            acc.resize(mark);
            acc.insert(acc.end(), in.begin(), in.end());
            arc_matchings(q + 1, hi, acc, out);
        }
        acc.resize(mark - 1);
    }
}

} // namespace

std::vector<PlanarDiagram> enumerate_diagrams(int k, int l) {
    if (k < 0 || l < 0 || (k + l) % 2 != 0)
        throw std::invalid_argument("diagram needs a nonnegative even number of boundary points");
    std::vector<std::vector<std::pair<int, int>>> matchings;
    std::vector<std::pair<int, int>> acc;
    arc_matchings(0, k + l, acc, matchings);
    std::vector<PlanarDiagram> out;
    out.reserve(matchings.size());
    for (const auto& pairs : matchings) out.push_back(make_diagram(k, l, pairs));
    return out;
}

std::string diagram_str(const PlanarDiagram& d) {
    std::string s;
    for (int p = 0; p < d.k + d.l; ++p) {
        int q = d.match[size_t(p)];
        if (q < p) continue;
        if (!s.empty()) s += ' ';
        s += std::to_string(p) + "-" + std::to_string(q);
    }
    return s;
}

DiagramComposition compose_diagrams(const PlanarDiagram& a, const PlanarDiagram& b) {
    if (a.l != b.k)
        throw Error(ErrorCode::ArityMismatch,
                    "cannot stack a diagram with " + std::to_string(a.l) +
                        " outputs under one with " + std::to_string(b.k) + " inputs");
    const int k = a.k, l = a.l, m = b.l;
    const int an = k + l, bn = l + m;
    auto bid = [&](int t) { return an + t; };
    std::vector<int> glue(size_t(an + bn), -1);
    for (int s = 0; s < l; ++s) {
        int pa = k + (l - 1 - s); // a's output at position s
        glue[size_t(pa)] = bid(s);
        glue[size_t(bid(s))] = pa;
    }
    auto mate = [&](int x) { return x < an ? a.match[size_t(x)] : bid(b.match[size_t(x - an)]); };
    auto boundary_index = [&](int x) -> int {
        if (x < k) return x; // input of a
        if (x >= an + l) return k + (x - an - l); // output of b
        throw std::logic_error("strand ended at a glued point");
    };
    std::vector<char> visited(size_t(an + bn), 0);
    PlanarDiagram out;
    out.k = k;
    out.l = m;
    out.match.assign(size_t(k + m), -1);
    std::vector<int> starts;
    for (int x = 0; x < k; ++x) starts.push_back(x);
    for (int x = an + l; x < an + bn; ++x) starts.push_back(x);
    for (int start : starts) {
        if (visited[size_t(start)]) continue;
        visited[size_t(start)] = 1;
        int cur = mate(start);
        visited[size_t(cur)] = 1;
        while (glue[size_t(cur)] != -1) {
            cur = glue[size_t(cur)];
            visited[size_t(cur)] = 1;
            cur = mate(cur);
            visited[size_t(cur)] = 1;
        }
        int p = boundary_index(start), q = boundary_index(cur);
        out.match[size_t(p)] = q;
        out.match[size_t(q)] = p;
    }
    int loops = 0;
    for (int x = 0; x < an + bn; ++x) {
        if (visited[size_t(x)]) continue;
        ++loops;
        int cur = x;
        do {
            visited[size_t(cur)] = 1;
            cur = mate(cur);
            visited[size_t(cur)] = 1;
            cur = glue[size_t(cur)];
        } while (cur != x);
    }
    if (!is_planar_matching(out.match))
        throw std::logic_error("composition produced a crossing matching");
    return {std::move(out), loops};
}

PlanarDiagram strand_append(const PlanarDiagram& d) {
    PlanarDiagram r;
    r.k = d.k + 1;
    r.l = d.l + 1;
    const int n = d.k + d.l;
    r.match.assign(size_t(n + 2), -1);
    auto tr = [&](int p) { return p < d.k ? p : p + 2; };
    for (int p = 0; p < n; ++p) r.match[size_t(tr(p))] = tr(d.match[size_t(p)]);
    r.match[size_t(d.k)] = d.k + 1;
    r.match[size_t(d.k + 1)] = d.k;
    return r;
}

int n_star(int N) {
    if (N < 3) throw std::invalid_argument("root of unity order must be at least 3");
    return N % 2 == 1 ? N : N / 2;
}

std::vector<GradedPath> graded_paths(const MultiGraph& g, int strands, size_t dim_cap) {
    if (strands < 0) throw std::invalid_argument("strand count must be nonnegative");
    std::vector<GradedPath> cur;
    for (int v = 0; v < g.n; ++v) {
        GradedPath p;
        p.v.push_back(v);
        cur.push_back(std::move(p));
    }
    for (int s = 0; s < strands; ++s) {
        std::vector<GradedPath> next;
        for (const GradedPath& p : cur) {
            int u = p.v.back();
            for (int w = 0; w < g.n; ++w) {
                int a = g.at(u, w);
                for (int idx = 0; idx < a; ++idx) {
                    if (next.size() >= dim_cap)
                        throw Error(ErrorCode::SizeLimitExceeded,
                                    "graded tensor power dimension exceeds " +
                                        std::to_string(dim_cap));
                    GradedPath q = p;
                    q.v.push_back(w);
                    q.e.push_back(idx);
                    next.push_back(std::move(q));
                }
            }
        }
        cur = std::move(next);
    }
    if (cur.size() > dim_cap)
        throw Error(ErrorCode::SizeLimitExceeded,
                    "graded tensor power dimension exceeds " + std::to_string(dim_cap));
    return cur;
}

GradedRep<ComplexField> complex_rep(const GradedRep<NumberFieldF>& rep) {
    ComplexField c;
    const NumberFieldF& K = rep.field;
    GradedRep<ComplexField> out(c);
    out.graph = rep.graph;
    out.delta = {K.to_double(rep.delta), 0.0};
    auto conv = [&](const Mat<NumberFieldF>& m) {
        Mat<ComplexField> r(c, m.rows, m.cols);
        for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = {K.to_double(m.a[i]), 0.0};
        return r;
    };
    for (const auto& [key, m] : rep.pairing) out.pairing.emplace(key, conv(m));
    for (const auto& [key, m] : rep.copairing) out.copairing.emplace(key, conv(m));
    return out;
}

double mat_max_abs(const Mat<ComplexField>& m) {
    double r = 0.0;
    for (const auto& e : m.a) r = std::max(r, std::abs(e));
    return r;
}

AlgebraicReal rep_lambda(const GradedRep<NumberFieldF>& rep) {
    const NumberFieldF& K = rep.field;
    if (rep.delta.degree() <= 0)
        return AlgebraicReal::from_rational(rep.delta.is_zero() ? Rat(0) : rep.delta.c[0]);
    if (K.eq(rep.delta, K.gen()) && K.nf->root) return *K.nf->root;
    throw std::invalid_argument(
        "loop value must be a rational constant or the generator of an embedded field");
}

double jw_image_norm(const GradedRep<NumberFieldF>& rep, int n, size_t dim_cap) {
    if (n < 1) throw std::invalid_argument("projector needs at least one strand");
    TLElement<NumberFieldF> fn = jones_wenzl(rep.field, n, rep.delta);
    GradedRep<ComplexField> crep = complex_rep(rep);
    TLElement<ComplexField> fc;
    fc.k = fc.l = n;
    for (const auto& [d, v] : fn.terms)
        fc.terms.emplace(d, std::complex<double>(rep.field.to_double(v), 0.0));
    return mat_max_abs(rep_of_element(crep, fc, dim_cap));
}

double check_jw_vanishing(const GradedRep<NumberFieldF>& rep, int N) {
    if (N < 3) throw std::invalid_argument("root of unity order must be at least 3");
    AlgebraicReal lam = rep_lambda(rep);
    QPair qp = lambda_to_q(lam);
    if (qp.excluded)
        throw Error(ErrorCode::NotRootOfUnity, "loop value 0 lies outside the parameter set");
    std::optional<int> ord = q_root_of_unity_order(qp.q_plus, std::max(2 * N, 64));
    if (!ord)
        throw Error(ErrorCode::NotRootOfUnity,
                    "q is not a root of unity of order up to " + std::to_string(std::max(2 * N, 64)));
    if (*ord != N)
        throw Error(ErrorCode::NotRootOfUnity,
                    "q has order " + std::to_string(*ord) + ", not " + std::to_string(N));
    return jw_image_norm(rep, n_star(N) - 1);
}

} // namespace qmk
