#include "qmk/algebraic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qmk {

// ---- Sturm machinery -------------------------------------------------------

std::vector<QPoly> sturm_chain(const QPoly& f) {
    std::vector<QPoly> chain;
    if (f.is_zero()) return chain;
    chain.push_back(f);
    QPoly d = q_derivative(f);
    if (d.is_zero()) return chain;
    chain.push_back(d);
    while (true) {
        const QPoly& a = chain[chain.size() - 2];
        const QPoly& b = chain[chain.size() - 1];
        QPoly r = q_mod(a, b);
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

namespace {

int sign_variations(const std::vector<QPoly>& chain, const Rat& x) {
    int count = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sgn(p.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

} // namespace

int sturm_count(const std::vector<QPoly>& chain, const Rat& a, const Rat& b) {
    if (!(a < b)) return 0;
    return sign_variations(chain, a) - sign_variations(chain, b);
}

Rat root_bound(const ZPoly& f) {
    if (f.degree() < 1) return Rat(1);
    Int maxc = 0;
    for (size_t i = 0; i + 1 < f.c.size(); ++i) {
        Int a = abs(f.c[i]);
        if (a > maxc) maxc = a;
    }
    // Cauchy: |root| <= 1 + max|c_i| / |lc|
    return Rat(2) + make_rat(maxc, abs(f.lc()));
}

Rat separation_lower_bound(const ZPoly& f) {
    int d = f.degree();
    if (d < 2) return Rat(1);
    // Mahler: sep(f) > sqrt(3) * d^-(d+2)/2 * ||f||_2^-(d-1) for squarefree f
    // (|discriminant| >= 1 over the integers). Use integer ceilings of the
    // square roots for a safe rational underestimate.
    Int dn = ipow(Int(d), (unsigned long)d + 2);
    Int droot;
    mpz_sqrt(droot.get_mpz_t(), dn.get_mpz_t());
    droot += 1;
    Int norm2 = 0;
    for (const auto& x : f.c) norm2 += x * x;
    Int nroot;
    mpz_sqrt(nroot.get_mpz_t(), norm2.get_mpz_t());
    nroot += 1;
    return make_rat(Int(1), droot * ipow(nroot, (unsigned long)d - 1));
}

// ---- AlgebraicReal ---------------------------------------------------------

AlgebraicReal AlgebraicReal::from_rational(const Rat& r) {
    AlgebraicReal x;
    x.minpoly = q_to_z_primitive(QPoly({-r, Rat(1)}));
    x.lo = r;
    x.hi = r;
    return x;
}

AlgebraicReal AlgebraicReal::from_isolated(ZPoly f, Rat lo, Rat hi) {
    AlgebraicReal x;
    x.minpoly = std::move(f);
    if (x.minpoly.degree() == 1) {
        Rat r = make_rat(-x.minpoly.c[0], x.minpoly.c[1]);
        x.lo = r;
        x.hi = r;
        return x;
    }
    x.lo = std::move(lo);
    x.hi = std::move(hi);
    return x;
}

Rat AlgebraicReal::rational_value() const {
    if (!is_rational()) throw std::logic_error("rational_value: degree > 1");
    return lo;
}

void AlgebraicReal::refine() {
    if (is_rational()) return;
    Rat m = mid();
    QPoly f = QPoly::from_z(minpoly);
    int s_m = sgn(f.eval(m));
    int s_lo = sgn(f.eval(lo));
    // irreducible of degree >= 2 has no rational roots, so s_m != 0
    if (s_lo * s_m < 0)
        hi = m;
    else
        lo = m;
}

void AlgebraicReal::refine_below(const Rat& w) {
    while (width() >= w) {
        if (is_rational()) return;
        refine();
    }
}

int AlgebraicReal::sign() const {
    if (is_rational()) return sgn(lo);
    AlgebraicReal t = *this;
    while (true) {
        if (t.lo >= 0) return 1;
        if (t.hi <= 0) return -1;
        t.refine(); // terminates: 0 is rational, cannot be the root
    }
}

double AlgebraicReal::to_double() const {
    AlgebraicReal t = *this;
    t.refine_below(make_rat(1, 1L << 30) * make_rat(1, 1L << 24));
    return t.mid().get_d();
}

bool AlgebraicReal::operator==(const AlgebraicReal& o) const {
    if (minpoly != o.minpoly) return false;
    if (is_rational()) return lo == o.lo;
    Rat a = std::max(lo, o.lo), b = std::min(hi, o.hi);
    if (!(a < b)) return false;
    auto chain = sturm_chain(QPoly::from_z(minpoly));
    return sturm_count(chain, a, b) >= 1;
}

int compare(const AlgebraicReal& a, const AlgebraicReal& b) {
    if (a == b) return 0;
    AlgebraicReal x = a, y = b;
    // Distinct numbers: refine until the closed intervals separate strictly.
    while (!(x.hi < y.lo || y.hi < x.lo)) {
        if (x.is_rational() && y.is_rational()) return x.lo < y.lo ? -1 : 1;
        x.refine();
        y.refine();
    }
    return x.hi < y.lo ? -1 : 1;
}

int compare(const AlgebraicReal& a, const Rat& r) {
    return compare(a, AlgebraicReal::from_rational(r));
}

// ---- isolation -------------------------------------------------------------

std::vector<AlgebraicReal> real_roots_irreducible(const ZPoly& f) {
    std::vector<AlgebraicReal> out;
    int d = f.degree();
    if (d < 1) return out;
    if (d == 1) {
        out.push_back(AlgebraicReal::from_rational(make_rat(-f.c[0], f.c[1])));
        return out;
    }
    QPoly qf = QPoly::from_z(f);
    auto chain = sturm_chain(qf);
    Rat B = root_bound(f);
    struct Seg {
        Rat a, b;
        int count;
    };
    std::vector<Seg> work{{-B, B, sturm_count(chain, -B, B)}};
    std::vector<std::pair<Rat, Rat>> isolated;
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.count == 0) continue;
        if (s.count == 1) {
            isolated.emplace_back(s.a, s.b);
            continue;
        }
        Rat m = (s.a + s.b) / 2; // never a root: irreducible with degree >= 2
        int left = sturm_count(chain, s.a, m);
        work.push_back({s.a, m, left});
        work.push_back({m, s.b, s.count - left});
    }
    std::sort(isolated.begin(), isolated.end(),
              [](const auto& u, const auto& v) { return u.first < v.first; });
    for (auto& [a, b] : isolated) out.push_back(AlgebraicReal::from_isolated(f, a, b));
    return out;
}

std::vector<AlgebraicReal> real_roots(const ZPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("real_roots: degree < 1");
    auto fac = factor_z(f);
    std::vector<AlgebraicReal> out;
    for (const auto& [poly, mult] : fac.factors) {
        auto roots = real_roots_irreducible(poly);
        out.insert(out.end(), roots.begin(), roots.end());
    }
    std::sort(out.begin(), out.end(),
              [](const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) < 0; });
    return out;
}

int sign_at(const QPoly& g, AlgebraicReal& x) {
    if (g.is_zero()) return 0;
    if (x.is_rational()) return sgn(g.eval(x.lo));
    // nonzero at x is the caller's responsibility (reduce mod minpoly first)
    while (true) {
        auto [lo, hi] = q_eval_interval(g, x.lo, x.hi);
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        x.refine();
    }
}

std::string decimal_str(const AlgebraicReal& x, int digits) {
    AlgebraicReal t = x;
    Rat scale(1);
    for (int i = 0; i < digits + 2; ++i) scale = scale * 10;
    t.refine_below(make_rat(1, 1) / scale);
    // round midpoint to `digits` decimals
    Rat m = t.mid();
    bool neg = m < 0;
    if (neg) m = -m;
    Rat pow10(1);
    for (int i = 0; i < digits; ++i) pow10 = pow10 * 10;
    Int scaled;
    Rat v = m * pow10 + make_rat(1, 2);
    mpz_fdiv_q(scaled.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
    Int ip = scaled / Int(pow10.get_num());
    Int fp = scaled % Int(pow10.get_num());
    std::ostringstream os;
    if (neg && (ip != 0 || fp != 0)) os << '-';
    os << ip.get_str();
    std::string frac = fp.get_str();
    while ((int)frac.size() < digits) frac.insert(frac.begin(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) os << '.' << frac;
    return os.str();
}

// ---- AlgebraicNumber -------------------------------------------------------

AlgebraicNumber AlgebraicNumber::from_real(const AlgebraicReal& r) {
    AlgebraicNumber x;
    x.minpoly = r.minpoly;
    x.is_real = true;
    x.re_lo = r.lo;
    x.re_hi = r.hi;
    x.im_lo = 0;
    x.im_hi = 0;
    return x;
}

AlgebraicNumber AlgebraicNumber::from_certified_rect(ZPoly f, Rat re_lo, Rat re_hi, Rat im_lo,
                                                     Rat im_hi) {
    AlgebraicNumber x;
    x.minpoly = std::move(f);
    x.is_real = false;
    x.re_lo = std::move(re_lo);
    x.re_hi = std::move(re_hi);
    x.im_lo = std::move(im_lo);
    x.im_hi = std::move(im_hi);
    return x;
}

AlgebraicReal AlgebraicNumber::as_real() const {
    if (!is_real) throw std::logic_error("as_real: number is not real");
    return AlgebraicReal::from_isolated(minpoly, re_lo, re_hi);
}

std::complex<double> AlgebraicNumber::to_complex() const {
    if (is_real) return {as_real().to_double(), 0.0};
    std::complex<double> z(Rat((re_lo + re_hi) / 2).get_d(), Rat((im_lo + im_hi) / 2).get_d());
    // Polish the rectangle midpoint with Newton steps: the rectangle certifies
    // a unique simple root nearby, so this sharpens the estimate to double
    // precision. Guard against escaping far from the rectangle.
    double span = Rat(re_hi - re_lo + im_hi - im_lo).get_d() + 1e-30;
    std::complex<double> mid = z;
    for (int it = 0; it < 64; ++it) {
        std::complex<double> f = 0.0, df = 0.0;
        for (int k = minpoly.degree(); k >= 0; --k) {
            df = df * z + f;
            f = f * z + minpoly.c[size_t(k)].get_d();
        }
        if (df == 0.0) break;
        std::complex<double> step = f / df;
        z -= step;
        if (std::abs(z - mid) > 16 * span) return mid; // diverged, keep midpoint
        if (std::abs(step) < 1e-17 * (1.0 + std::abs(z))) break;
    }
    return z;
}

bool AlgebraicNumber::operator==(const AlgebraicNumber& o) const {
    if (minpoly != o.minpoly) return false;
    if (is_real != o.is_real) return false;
    if (is_real) return as_real() == o.as_real();
    // Certified rectangles have diameter < sep/2, so equality <=> overlap.
    return std::max(re_lo, o.re_lo) <= std::min(re_hi, o.re_hi) &&
           std::max(im_lo, o.im_lo) <= std::min(im_hi, o.im_hi);
}

std::string algebraic_str(const AlgebraicNumber& x) {
    std::ostringstream os;
    if (x.is_real) {
        AlgebraicReal r = x.as_real();
        if (r.is_rational()) {
            os << rat_str(r.lo);
        } else {
            os << decimal_str(r) << " (root of " << z_poly_str(x.minpoly) << ")";
        }
    } else {
        auto z = x.to_complex();
        os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i"
           << " (root of " << z_poly_str(x.minpoly) << ")";
    }
    return os.str();
}

} // namespace qmk
