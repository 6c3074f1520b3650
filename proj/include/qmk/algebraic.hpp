#pragma once
#include "qmk/factor.hpp"
#include "qmk/poly.hpp"

#include <complex>
#include <string>
#include <vector>

namespace qmk {

// ---- Sturm machinery -------------------------------------------------------

// Sturm chain of a squarefree rational polynomial.
std::vector<QPoly> sturm_chain(const QPoly& f);

// Number of distinct real roots in the open interval (a, b); requires f(a) != 0
// and f(b) != 0.
int sturm_count(const std::vector<QPoly>& chain, const Rat& a, const Rat& b);

// B with every real root of f inside (-B, B).
Rat root_bound(const ZPoly& f);

// Rational s > 0 with s < minimal distance between distinct complex roots of a
// squarefree polynomial (trivially 1 when fewer than two roots).
Rat separation_lower_bound(const ZPoly& f);

// ---- Real algebraic numbers ------------------------------------------------

// Exact real number: irreducible primitive minimal polynomial (positive leading
// coefficient) plus an isolating interval. Degree-1 numbers are stored with
// lo == hi == the rational value; for degree >= 2 the interval satisfies
// lo < root < hi with sign(f(lo)) != sign(f(hi)), both nonzero.
struct AlgebraicReal {
    ZPoly minpoly;
    Rat lo, hi;

    AlgebraicReal() : minpoly(ZPoly::from_ints({0, 1})), lo(0), hi(0) {}
    static AlgebraicReal from_rational(const Rat& r);
    // Caller certifies (lo, hi) isolates exactly one root of the irreducible f.
    static AlgebraicReal from_isolated(ZPoly f, Rat lo, Rat hi);

    int degree() const { return minpoly.degree(); }
    bool is_rational() const { return minpoly.degree() == 1; }
    Rat rational_value() const;

    int sign() const;
    void refine();                    // halve the interval
    void refine_below(const Rat& w);  // until hi - lo < w
    Rat mid() const { return (lo + hi) / 2; }
    Rat width() const { return hi - lo; }
    double to_double() const;

    bool operator==(const AlgebraicReal& o) const;
    bool operator!=(const AlgebraicReal& o) const { return !(*this == o); }
};

// Three-way order: -1, 0, +1.
int compare(const AlgebraicReal& a, const AlgebraicReal& b);
int compare(const AlgebraicReal& a, const Rat& r);

// All distinct real roots, ascending. Input any nonzero polynomial of degree >= 1.
std::vector<AlgebraicReal> real_roots(const ZPoly& f);
// Same, input already irreducible (skips factoring).
std::vector<AlgebraicReal> real_roots_irreducible(const ZPoly& f);

// Sign of g evaluated at x, where g has rational coefficients and g(x) may be 0
// only if g is divisible by minpoly(x) (callers reduce first). Refines x as needed.
int sign_at(const QPoly& g, AlgebraicReal& x);

// Decimal rendering of an enclosure of x, correct to the shown digits.
std::string decimal_str(const AlgebraicReal& x, int digits = 8);

// ---- General algebraic numbers (real or complex) ---------------------------

// A root of an irreducible integer polynomial isolated inside an axis-aligned
// rectangle with rational corners. Real numbers carry a degenerate imaginary
// range [0, 0]. Complex rectangles are built only through certified
// constructors that guarantee the rectangle holds exactly one root and has
// diameter below half the root-separation bound of the minimal polynomial, so
// equality is decidable by rectangle overlap.
struct AlgebraicNumber {
    ZPoly minpoly;
    bool is_real = true;
    // real case: interval [re_lo, re_hi] as in AlgebraicReal; imaginary zero
    Rat re_lo, re_hi, im_lo, im_hi;

    AlgebraicNumber() : minpoly(ZPoly::from_ints({0, 1})) {}
    static AlgebraicNumber from_real(const AlgebraicReal& r);
    // Caller certifies: rect contains exactly one root of irreducible f and the
    // rect diameter is below separation_lower_bound(f) / 2.
    static AlgebraicNumber from_certified_rect(ZPoly f, Rat re_lo, Rat re_hi, Rat im_lo,
                                               Rat im_hi);

    AlgebraicReal as_real() const; // requires is_real
    std::complex<double> to_complex() const;

    bool operator==(const AlgebraicNumber& o) const;
    bool operator!=(const AlgebraicNumber& o) const { return !(*this == o); }
};

std::string algebraic_str(const AlgebraicNumber& x);

} // namespace qmk
