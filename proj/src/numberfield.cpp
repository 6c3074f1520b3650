#include "qmk/numberfield.hpp"

#include <sstream>
#include <stdexcept>

namespace qmk {

RationalField::Elem RationalField::div(const Elem& a, const Elem& b) const {
    if (b == 0) throw std::domain_error("division by zero");
    return a / b;
}

std::shared_ptr<const NumberField> NumberField::make(ZPoly minpoly,
                                                     std::optional<AlgebraicReal> root) {
    if (minpoly.degree() < 1) throw std::invalid_argument("number field: constant polynomial");
    auto nf = std::make_shared<NumberField>();
    if (sgn(minpoly.lc()) < 0) minpoly = -minpoly;
    nf->minpoly = z_primitive(minpoly);
    nf->minpoly_monic = q_monic(QPoly::from_z(nf->minpoly));
    nf->root = std::move(root);
    return nf;
}

namespace {

// Least common multiple of the coefficient denominators.
Int denominator_lcm(const QPoly& a) {
    Int l(1);
    for (const Rat& r : a.c)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), mpq_denref(r.get_mpq_t()));
    return l;
}

// a * (den / denominator of each coefficient): integer coefficient vector.
std::vector<Int> scaled_integer_coeffs(const QPoly& a, const Int& den) {
    std::vector<Int> out(a.c.size());
    Int t;
    for (size_t i = 0; i < a.c.size(); ++i) {
        mpz_divexact(t.get_mpz_t(), den.get_mpz_t(), mpq_denref(a.c[i].get_mpq_t()));
        mpz_mul(out[i].get_mpz_t(), t.get_mpz_t(), mpq_numref(a.c[i].get_mpq_t()));
    }
    return out;
}

// In-place reduction of an integer coefficient vector by a monic integer
// polynomial; afterwards only the first deg(m) entries matter.
void reduce_by_monic(std::vector<Int>& c, const ZPoly& m) {
    const size_t d = (size_t)m.degree();
    for (size_t i = c.size(); i-- > d;) {
        if (sgn(c[i]) == 0) continue;
        for (size_t j = 0; j < d; ++j)
            if (sgn(m.c[j]) != 0)
                mpz_submul(c[i - d + j].get_mpz_t(), c[i].get_mpz_t(), m.c[j].get_mpz_t());
    }
}

// Rational coefficient vector num[0..count)/den, trimmed into a polynomial.
QPoly quotient_poly(const std::vector<Int>& num, const Int& den, size_t count) {
    std::vector<Rat> q(std::min(count, num.size()));
    for (size_t i = 0; i < q.size(); ++i) {
        Rat r(num[i], den);
        r.canonicalize();
        q[i] = std::move(r);
    }
    return QPoly(std::move(q));
}

} // namespace

NumberFieldF::Elem NumberFieldF::mul(const Elem& a, const Elem& b) const {
    if (a.is_zero() || b.is_zero()) return QPoly{};
    const ZPoly& mz = nf->minpoly;
    if (!mz.is_monic()) return reduce(a * b);
    // Integer core: scale the factors integral, convolve and reduce over the
    // integers (no per-operation rational canonicalization), then divide the
    // combined denominator back out once per output coefficient.
    Int da = denominator_lcm(a), db = denominator_lcm(b);
    std::vector<Int> A = scaled_integer_coeffs(a, da), B = scaled_integer_coeffs(b, db);
    std::vector<Int> c(A.size() + B.size() - 1, Int(0));
    for (size_t i = 0; i < A.size(); ++i) {
        if (sgn(A[i]) == 0) continue;
        for (size_t j = 0; j < B.size(); ++j)
            if (sgn(B[j]) != 0)
                mpz_addmul(c[i + j].get_mpz_t(), A[i].get_mpz_t(), B[j].get_mpz_t());
    }
    reduce_by_monic(c, mz);
    return quotient_poly(c, Int(da * db), (size_t)mz.degree());
}

NumberFieldF::Elem NumberFieldF::inv(const Elem& a) const {
    if (a.is_zero()) throw std::domain_error("division by zero");
    if (a.degree() == 0) return QPoly::constant(Rat(1) / a.c[0]);
    if (nf->minpoly_monic.degree() == 2) {
        // a = c0 + c1*t with t^2 = -p*t - q: conjugate over norm, one
        // rational division instead of a remainder cascade.
        const Rat& p = nf->minpoly_monic.c[1];
        const Rat& q = nf->minpoly_monic.c[0];
        const Rat& c0 = a.c[0];
        const Rat& c1 = a.c[1];
        Rat norm = c0 * c0 - c0 * c1 * p + c1 * c1 * q;
        if (norm == 0) throw std::logic_error("number field: defining polynomial not irreducible");
        QPoly out;
        out.c = {(c0 - c1 * p) / norm, -c1 / norm};
        out.trim();
        return out;
    }
    const ZPoly& mz = nf->minpoly;
    const int d = mz.degree();
    if (mz.is_monic() && (d == 3 || d == 4) && a.degree() < d) {
        // Cramer's rule on the multiplication-by-a matrix, over the integers:
        // column k of M holds a*t^k reduced mod the minimal polynomial, and
        // M v = e_0 makes v the coefficient vector of 1/a.  Everything stays
        // in integer arithmetic until one final division by det(M).
        Int da = denominator_lcm(a);
        std::vector<Int> col = scaled_integer_coeffs(a, da);
        col.resize((size_t)d, Int(0));
        std::vector<std::vector<Int>> M((size_t)d, std::vector<Int>((size_t)d));
        for (int k = 0;; ++k) {
            for (int r = 0; r < d; ++r) M[(size_t)r][(size_t)k] = col[(size_t)r];
            if (k == d - 1) break;
            Int top = col[(size_t)(d - 1)]; // col *= t, reduced by the monic minpoly
            for (int r = d - 1; r > 0; --r) col[(size_t)r] = col[(size_t)(r - 1)];
            col[0] = 0;
            if (sgn(top) != 0)
                for (int r = 0; r < d; ++r)
                    if (sgn(mz.c[(size_t)r]) != 0)
                        mpz_submul(col[(size_t)r].get_mpz_t(), top.get_mpz_t(),
                                   mz.c[(size_t)r].get_mpz_t());
        }
        auto det2 = [&](int r0, int r1, int c0, int c1) {
            Int v = M[(size_t)r0][(size_t)c0] * M[(size_t)r1][(size_t)c1] -
                    M[(size_t)r0][(size_t)c1] * M[(size_t)r1][(size_t)c0];
            return v;
        };
        // Signed first-row minors: v_i = (-1)^i minor_0i / det.
        std::vector<Int> minors((size_t)d);
        if (d == 3) {
            minors[0] = det2(1, 2, 1, 2);
            minors[1] = det2(1, 2, 0, 2);
            minors[2] = det2(1, 2, 0, 1);
        } else {
            auto det3 = [&](int c0, int c1, int c2) {
                Int v = M[1][(size_t)c0] * det2(2, 3, c1, c2) -
                        M[1][(size_t)c1] * det2(2, 3, c0, c2) +
                        M[1][(size_t)c2] * det2(2, 3, c0, c1);
                return v;
            };
            minors[0] = det3(1, 2, 3);
            minors[1] = det3(0, 2, 3);
            minors[2] = det3(0, 1, 3);
            minors[3] = det3(0, 1, 2);
        }
        Int det(0);
        std::vector<Int> nums((size_t)d);
        for (int i = 0; i < d; ++i) {
            if (i % 2) mpz_neg(minors[(size_t)i].get_mpz_t(), minors[(size_t)i].get_mpz_t());
            mpz_addmul(det.get_mpz_t(), M[0][(size_t)i].get_mpz_t(), minors[(size_t)i].get_mpz_t());
            nums[(size_t)i] = minors[(size_t)i] * da;
        }
        if (sgn(det) == 0)
            throw std::logic_error("number field: defining polynomial not irreducible");
        return quotient_poly(nums, det, (size_t)d);
    }
    // extended euclid: u*a + v*m = gcd = constant (minpoly irreducible)
    QPoly r0 = nf->minpoly_monic, r1 = a;
    QPoly u0, u1 = QPoly::constant(Rat(1)); // coefficients of `a`
    while (!r1.is_zero()) {
        auto [q, r2] = q_divrem(r0, r1);
        QPoly u2 = u0 - q * u1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (r0.degree() != 0)
        throw std::logic_error("number field: defining polynomial not irreducible");
    Rat c = r0.c[0];
    return reduce(make_rat(Int(1), Int(1)) / c * u0);
}

std::string NumberFieldF::str(const Elem& a) const {
    if (nf->degree() == 1 || a.degree() <= 0)
        return a.is_zero() ? "0" : rat_str(a.c[0]);
    return q_poly_str(a, "t");
}

int NumberFieldF::sign(const Elem& a) const {
    if (a.is_zero()) return 0;
    if (a.degree() == 0) return sgn(a.c[0]);
    if (!nf->root) throw std::logic_error("number field: sign requires a distinguished root");
    AlgebraicReal x = *nf->root;
    return sign_at(a, x); // a != 0 and deg a < deg minpoly, so a(x) != 0
}

double NumberFieldF::to_double(const Elem& a) const {
    if (a.is_zero()) return 0.0;
    if (a.degree() == 0) return a.c[0].get_d();
    if (!nf->root) throw std::logic_error("number field: embedding requires a distinguished root");
    AlgebraicReal x = *nf->root;
    x.refine_below(make_rat(1, 1L << 30) * make_rat(1, 1L << 24));
    return a.eval(x.mid()).get_d();
}

std::vector<Rat> NumberFieldF::coords(const Elem& a) const {
    std::vector<Rat> out((size_t)nf->degree(), Rat(0));
    for (size_t i = 0; i < a.c.size() && i < out.size(); ++i) out[i] = a.c[i];
    return out;
}

std::string ComplexField::str(const Elem& a) const {
    std::ostringstream os;
    os << a.real();
    if (a.imag() != 0.0) os << (a.imag() < 0 ? " - " : " + ") << std::abs(a.imag()) << "i";
    return os.str();
}

RatFunc::RatFunc(QPoly n, QPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::domain_error("rational function: zero denominator");
    if (num.is_zero()) {
        den = QPoly::constant(Rat(1));
        return;
    }
    QPoly g = q_gcd(num, den);
    if (g.degree() >= 1) {
        num = q_divrem(num, g).first;
        den = q_divrem(den, g).first;
    }
    Rat lead = den.lc();
    if (lead != 1) {
        Rat inv = Rat(1) / lead;
        num = inv * num;
        den = inv * den;
    }
}

FuncField::Elem FuncField::add(const Elem& a, const Elem& b) const {
    return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
}
FuncField::Elem FuncField::sub(const Elem& a, const Elem& b) const {
    return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
}
FuncField::Elem FuncField::mul(const Elem& a, const Elem& b) const {
    return RatFunc(a.num * b.num, a.den * b.den);
}
FuncField::Elem FuncField::div(const Elem& a, const Elem& b) const {
    if (b.num.is_zero()) throw std::domain_error("division by zero");
    return RatFunc(a.num * b.den, a.den * b.num);
}
std::string FuncField::str(const Elem& a) const {
    if (a.den == QPoly::constant(Rat(1))) return q_poly_str(a.num);
    return "(" + q_poly_str(a.num) + ")/(" + q_poly_str(a.den) + ")";
}

} // namespace qmk
