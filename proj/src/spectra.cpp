#include "qmk/spectra.hpp"

#include "qmk/error.hpp"
#include "qmk/factor.hpp"
#include "qmk/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <stdexcept>

namespace qmk {

namespace {

// Trace of the integer matrix product a*b (both n x n, row-major).
Int product_trace(const std::vector<Int>& a, const std::vector<Int>& b, int n) {
    Int t = 0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) t += a[size_t(i) * n + k] * b[size_t(k) * n + i];
    return t;
}

} // namespace

ZPoly char_poly(const MultiGraph& g) {
    // Faddeev-LeVerrier recurrence: M_0 = I and, for k = 1..n,
    //   c_{n-k} = -tr(A M_{k-1}) / k,   M_k = A M_{k-1} + c_{n-k} I.
    // The divisions are exact over the integers.
    int n = g.n;
    std::vector<Int> A(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[size_t(i) * n + j] = g.at(i, j);

    std::vector<Int> coeff(size_t(n) + 1);
    coeff[n] = 1;
    std::vector<Int> M(size_t(n) * n, Int(0));
    for (int i = 0; i < n; ++i) M[size_t(i) * n + i] = 1;

    for (int k = 1; k <= n; ++k) {
        // AM = A * M
        std::vector<Int> AM(size_t(n) * n, Int(0));
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                if (A[size_t(i) * n + l] == 0) continue;
                for (int j = 0; j < n; ++j)
                    AM[size_t(i) * n + j] += A[size_t(i) * n + l] * M[size_t(l) * n + j];
            }
        Int tr = 0;
        for (int i = 0; i < n; ++i) tr += AM[size_t(i) * n + i];
        Int c;
        mpz_divexact(c.get_mpz_t(), Int(-tr).get_mpz_t(), Int(k).get_mpz_t());
        coeff[size_t(n) - k] = c;
        M = std::move(AM);
        for (int i = 0; i < n; ++i) M[size_t(i) * n + i] += c;
    }
    ZPoly p;
    p.c.assign(coeff.begin(), coeff.end());
    p.trim();
    return p;
}

EigenAnalysis analyze_eigenvalue(const MultiGraph& g, const AlgebraicReal& lambda) {
    ZPoly cp = char_poly(g);
    QPoly rem = q_mod(QPoly::from_z(cp), QPoly::from_z(lambda.minpoly));
    if (!rem.is_zero())
        throw Error(ErrorCode::NotAnEigenvalue,
                    "value with minimal polynomial " + z_poly_str(lambda.minpoly) +
                        " is not an eigenvalue of the graph");

    EigenAnalysis out;
    out.field = NumberField::make(lambda.minpoly, lambda);
    NumberFieldF K(out.field);

    int n = g.n;
    Mat<NumberFieldF> M(K, size_t(n), size_t(n));
    QPoly t = K.gen();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            QPoly e = K.from_rat(Rat(g.at(i, j)));
            if (i == j) e = K.sub(e, t);
            M.at(size_t(i), size_t(j)) = e;
        }

    std::vector<std::vector<QPoly>> basis = null_space(K, M);
    out.eigenspace_dim = int(basis.size());
    assert(!basis.empty());

    // Degenerate exactly when some coordinate vanishes on the whole eigenspace.
    for (int i = 0; i < n; ++i) {
        bool all_zero = true;
        for (const auto& b : basis)
            if (!K.is_zero(b[size_t(i)])) {
                all_zero = false;
                break;
            }
        if (all_zero) {
            out.nondegenerate = false;
            out.vanishing_coordinate = i;
            return out;
        }
    }

    // Witness: combination with coefficients 1, s, s^2, ... for the first
    // integer s >= 1 where every entry is nonzero. Each entry is a nonzero
    // polynomial in s of degree < dim, so small s suffice.
    for (Int s = 1;; ++s) {
        std::vector<QPoly> v(size_t(n), K.zero());
        QPoly pw = K.one();
        for (const auto& b : basis) {
            for (int i = 0; i < n; ++i)
                v[size_t(i)] = K.add(v[size_t(i)], K.mul(pw, b[size_t(i)]));
            pw = K.mul(pw, K.from_rat(Rat(s)));
        }
        bool ok = true;
        for (int i = 0; i < n; ++i)
            if (K.is_zero(v[size_t(i)])) {
                ok = false;
                break;
            }
        if (ok) {
            out.nondegenerate = true;
            out.witness = std::move(v);
            return out;
        }
    }
}

bool is_nondegenerate(const MultiGraph& g, const AlgebraicReal& lambda) {
    return analyze_eigenvalue(g, lambda).nondegenerate;
}

Spectrum spectrum(const MultiGraph& g) {
    if (!is_connected(g))
        throw Error(ErrorCode::DisconnectedGraph, "spectrum requires a connected graph");
    Spectrum sp;
    sp.cp = char_poly(g);
    ZFactorization fz = factor_z(sp.cp);
    int total = 0;
    for (const auto& fac : fz.factors) {
        std::vector<AlgebraicReal> roots = real_roots_irreducible(fac.poly);
        // A is symmetric, so every root of the characteristic polynomial is real.
        if (int(roots.size()) != fac.poly.degree())
            throw std::logic_error("characteristic polynomial has a non-real root");
        for (auto& r : roots) {
            EigenvalueInfo info;
            info.value = std::move(r);
            info.multiplicity = fac.mult;
            EigenAnalysis an = analyze_eigenvalue(g, info.value);
            info.nondegenerate = an.nondegenerate;
            info.witness = std::move(an.witness);
            info.vanishing_coordinate = an.vanishing_coordinate;
            info.eigenspace_dim = an.eigenspace_dim;
            total += info.multiplicity;
            sp.values.push_back(std::move(info));
        }
    }
    if (total != g.n) throw std::logic_error("eigenvalue multiplicities do not sum to |I|");
    std::sort(sp.values.begin(), sp.values.end(),
              [](const EigenvalueInfo& a, const EigenvalueInfo& b) {
                  return compare(a.value, b.value) < 0;
              });
    return sp;
}

AlgebraicReal frobenius_perron(const MultiGraph& g) {
    if (!is_connected(g))
        throw Error(ErrorCode::DisconnectedGraph, "largest eigenvalue requires a connected graph");
    bool zero = true;
    for (int v : g.mult)
        if (v != 0) {
            zero = false;
            break;
        }
    if (zero) throw Error(ErrorCode::ZeroGraph, "graph has no edges and no loops");

    ZPoly cp = char_poly(g);
    // Sweeps hit the same characteristic polynomial over and over; factoring
    // and root isolation are pure functions of it, so memoize the answer.
    static std::mutex cache_mutex;
    static std::map<ZPoly, AlgebraicReal> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(cp);
        if (it != cache.end()) return it->second;
    }
    ZFactorization fz = factor_z(cp);
    std::optional<AlgebraicReal> best;
    for (const auto& fac : fz.factors)
        for (auto& r : real_roots_irreducible(fac.poly)) {
            if (!best || compare(r, *best) > 0) best = std::move(r);
        }
    if (!best) throw std::logic_error("symmetric matrix with no real eigenvalue");
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache.emplace(cp, *best);
    }
    return *best;
}

namespace {

// x^2 + lambda*x + 1 as a primitive integer polynomial, for rational lambda.
ZPoly quadratic_for_rational(const Rat& r) {
    Int num = r.get_num(), den = r.get_den();
    ZPoly f;
    f.c = {den, num, den};
    return z_primitive(f);
}

// p(x) = x^d * m(-x - 1/x): integer polynomial vanishing at every q with
// -q - 1/q a root of m. Degree 2d, nonzero constant term.
ZPoly q_candidates_poly(const ZPoly& m) {
    int d = m.degree();
    ZPoly xsq1;
    xsq1.c = {Int(1), Int(0), Int(1)}; // x^2 + 1
    ZPoly p;
    ZPoly pw;
    pw.c = {Int(1)};
    for (int k = 0; k <= d; ++k) {
        Int ck = m.c[size_t(k)];
        if (k % 2 == 1) ck = -ck;
        if (ck != 0) p = p + (ck * (pw * z_xpow(size_t(d - k))));
        if (k < d) pw = pw * xsq1;
    }
    return p;
}

struct Box {
    Rat lo, hi;
};

// Enclosure of lambda^2 from an enclosure of lambda.
Box square_box(const Rat& a, const Rat& b) {
    Rat aa = a * a, bb = b * b;
    if (a >= 0) return {aa, bb};
    if (b <= 0) return {bb, aa};
    return {Rat(0), std::max(aa, bb)};
}

// Enclosure of sqrt(s) for s in [slo, shi], slo >= 0.
Box sqrt_box(const Rat& slo, const Rat& shi, unsigned prec) {
    auto lo = sqrt_bounds(slo, prec);
    auto hi = sqrt_bounds(shi, prec);
    return {lo.first, hi.second};
}

AlgebraicNumber identify_real_root(std::vector<AlgebraicReal>& cands, AlgebraicReal& lam,
                                   bool plus_branch) {
    // q = (-lam +- sqrt(lam^2 - 4)) / 2; shrink the arithmetic enclosure until
    // it isolates exactly one candidate root.
    unsigned prec = 64;
    for (int round = 0;; ++round) {
        Box sq = square_box(lam.lo, lam.hi);
        Rat slo = sq.lo - 4, shi = sq.hi - 4;
        if (slo >= 0) {
            Box rt = sqrt_box(slo, shi, prec);
            Rat qlo, qhi;
            if (plus_branch) {
                qlo = (-lam.hi + rt.lo) / 2;
                qhi = (-lam.lo + rt.hi) / 2;
            } else {
                qlo = (-lam.hi - rt.hi) / 2;
                qhi = (-lam.lo - rt.lo) / 2;
            }
            int hits = 0, which = -1;
            for (int i = 0; i < int(cands.size()); ++i)
                if (!(cands[size_t(i)].hi < qlo || qhi < cands[size_t(i)].lo)) {
                    ++hits;
                    which = i;
                }
            if (hits == 1) return AlgebraicNumber::from_real(cands[size_t(which)]);
            if (hits == 0) throw std::logic_error("real q enclosure missed every candidate");
        }
        lam.refine();
        for (auto& c : cands) c.refine();
        prec += 16;
    }
}

// Does f(q) = 0 hold exactly for both roots q of x^2 + lambda*x + 1, where
// lambda is the generator of K? Reduces f modulo the quadratic over K.
bool vanishes_on_q(const ZPoly& f, const NumberFieldF& K) {
    QPoly lam = K.gen();
    QPoly r1 = K.zero(), r0 = K.zero(); // remainder r1*y + r0
    for (int j = f.degree(); j >= 0; --j) {
        // multiply by y, reduce with y^2 = -lambda*y - 1, add coefficient
        QPoly new_r1 = K.sub(r0, K.mul(lam, r1));
        QPoly new_r0 = K.sub(K.from_rat(Rat(f.c[size_t(j)])), r1);
        r1 = std::move(new_r1);
        r0 = std::move(new_r0);
    }
    return K.is_zero(r1) && K.is_zero(r0);
}

} // namespace

QPair lambda_to_q(const AlgebraicReal& lambda) {
    QPair out;
    if (lambda.is_rational()) {
        Rat r = lambda.rational_value();
        if (r == 2 || r == -2) {
            Rat q = r == 2 ? Rat(-1) : Rat(1);
            out.q_plus = AlgebraicNumber::from_real(AlgebraicReal::from_rational(q));
            out.q_minus = out.q_plus;
            out.coincident = true;
            return out;
        }
        if (r == 0) {
            ZPoly f;
            f.c = {Int(1), Int(0), Int(1)};
            out.q_plus = AlgebraicNumber::from_certified_rect(f, Rat(0), Rat(0), Rat(1), Rat(1));
            out.q_minus = AlgebraicNumber::from_certified_rect(f, Rat(0), Rat(0), Rat(-1), Rat(-1));
            out.excluded = true;
            return out;
        }
        ZPoly quad = quadratic_for_rational(r);
        if (r > 2 || r < -2) {
            std::vector<AlgebraicReal> roots;
            for (const auto& fac : factor_z(quad).factors)
                for (auto& rt : real_roots_irreducible(fac.poly)) roots.push_back(std::move(rt));
            if (roots.size() != 2) throw std::logic_error("real quadratic in q must have 2 roots");
            if (compare(roots[0], roots[1]) > 0) std::swap(roots[0], roots[1]);
            out.q_minus = AlgebraicNumber::from_real(roots[0]);
            out.q_plus = AlgebraicNumber::from_real(roots[1]);
            return out;
        }
        // |r| < 2, r != 0: conjugate pair on the unit circle, quad irreducible.
        Rat sep = separation_lower_bound(quad);
        Rat target = sep / 4;
        unsigned prec = 64;
        for (;;) {
            Rat s = 4 - r * r; // > 0
            auto rt = sqrt_bounds(s, prec);
            if (rt.first > 0 && (rt.second - rt.first) / 2 < target) {
                out.q_plus = AlgebraicNumber::from_certified_rect(quad, -r / 2, -r / 2,
                                                                  rt.first / 2, rt.second / 2);
                out.q_minus = AlgebraicNumber::from_certified_rect(quad, -r / 2, -r / 2,
                                                                   -rt.second / 2, -rt.first / 2);
                return out;
            }
            prec += 32;
        }
    }

    // Irrational lambda: q is a root of p(x) = x^d m(-x - 1/x).
    ZPoly p = q_candidates_poly(lambda.minpoly);
    ZFactorization fz = factor_z(p);
    AlgebraicReal lam = lambda;

    int side = compare(lam, Rat(2)) > 0 ? 1 : (compare(lam, Rat(-2)) < 0 ? -1 : 0);
    if (side != 0) {
        // q real: locate both roots among the real roots of the factors.
        while (!(lam.lo > 2 || lam.hi < -2)) lam.refine();
        std::vector<AlgebraicReal> cands;
        for (const auto& fac : fz.factors)
            for (auto& rt : real_roots_irreducible(fac.poly)) cands.push_back(std::move(rt));
        std::vector<AlgebraicReal> c2 = cands;
        AlgebraicReal l2 = lam;
        out.q_plus = identify_real_root(cands, lam, true);
        out.q_minus = identify_real_root(c2, l2, false);
        return out;
    }

    // |lambda| < 2: q lies on the unit circle off the real axis. Find the factor
    // vanishing at q by exact reduction modulo y^2 + lambda*y + 1 over Q(lambda).
    auto Kf = NumberField::make(lambda.minpoly, lambda);
    NumberFieldF K(Kf);
    const ZPoly* match = nullptr;
    for (const auto& fac : fz.factors)
        if (vanishes_on_q(fac.poly, K)) {
            if (match) throw std::logic_error("two factors both vanish at q");
            match = &fac.poly;
        }
    if (!match) throw std::logic_error("no factor vanishes at q");
    const ZPoly& f = *match;

    Rat sep = separation_lower_bound(f);
    Rat target = sep / 4;
    while (!(lam.lo > -2 && lam.hi < 2)) lam.refine();
    unsigned prec = 64;
    for (;;) {
        Box sq = square_box(lam.lo, lam.hi);
        Rat slo = 4 - sq.hi, shi = 4 - sq.lo;
        if (slo > 0) {
            Box rt = sqrt_box(slo, shi, prec);
            Rat re_lo = -lam.hi / 2, re_hi = -lam.lo / 2;
            Rat im_lo = rt.lo / 2, im_hi = rt.hi / 2;
            if (rt.lo > 0 && re_hi - re_lo < target && im_hi - im_lo < target) {
                out.q_plus = AlgebraicNumber::from_certified_rect(f, re_lo, re_hi, im_lo, im_hi);
                out.q_minus = AlgebraicNumber::from_certified_rect(f, re_lo, re_hi, -im_hi, -im_lo);
                return out;
            }
        }
        lam.refine();
        prec += 16;
    }
}

std::optional<int> q_root_of_unity_order(const AlgebraicNumber& q, int max_order) {
    if (max_order < 1 || max_order > 512)
        throw std::invalid_argument("root-of-unity search bound must be in 1..512");
    const ZPoly& f = q.minpoly;
    int d = f.degree();
    if (d < 1) throw std::invalid_argument("invalid minimal polynomial");
    // Roots of unity are algebraic integers with constant coefficient +-1.
    if (!f.is_monic() || abs(f.c[0]) != 1) return std::nullopt;

    // r = x^N mod f, maintained incrementally; q^N = 1 iff f divides x^N - 1,
    // i.e. r == 1 (f is the minimal polynomial of q).
    std::vector<Int> r(size_t(d), Int(0));
    if (d == 1)
        r[0] = -f.c[0]; // x = -c0 mod (x + c0)
    else
        r[1] = 1;
    auto is_one = [&]() {
        if (r[0] != 1) return false;
        for (size_t i = 1; i < r.size(); ++i)
            if (r[i] != 0) return false;
        return true;
    };
    for (int N = 1; N <= max_order; ++N) {
        if (N > 1) {
            // r <- x * r mod f
            Int top = r[size_t(d) - 1];
            for (size_t i = r.size() - 1; i > 0; --i) r[i] = r[i - 1];
            r[0] = 0;
            if (top != 0)
                for (int i = 0; i < d; ++i) r[size_t(i)] -= top * f.c[size_t(i)];
        }
        if (is_one()) return N;
    }
    return std::nullopt;
}

} // namespace qmk
