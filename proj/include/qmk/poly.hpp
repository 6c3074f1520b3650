#pragma once
#include "qmk/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qmk {

// Dense univariate polynomials, coefficient of x^i at index i, no trailing zeros.
// ZPoly over the integers, QPoly over the rationals.

struct QPoly;

struct ZPoly {
    std::vector<Int> c;

    ZPoly() = default;
    explicit ZPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }
    static ZPoly from_ints(std::initializer_list<long> coeffs);

    void trim();
    bool is_zero() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; } // -1 for zero
    const Int& lc() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }

    bool operator==(const ZPoly& o) const { return c == o.c; }
    bool operator!=(const ZPoly& o) const { return c != o.c; }
    bool operator<(const ZPoly& o) const; // lex on (degree, coeffs), for set keys

    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;
};

ZPoly operator+(const ZPoly& a, const ZPoly& b);
ZPoly operator-(const ZPoly& a, const ZPoly& b);
ZPoly operator*(const ZPoly& a, const ZPoly& b);
ZPoly operator-(const ZPoly& a);
ZPoly operator*(const Int& k, const ZPoly& a);

ZPoly z_derivative(const ZPoly& f);
Int z_content(const ZPoly& f);              // gcd of coeffs, >= 0
ZPoly z_primitive(const ZPoly& f);          // f / content, sign preserved
// Exact division; throws if not divisible.
ZPoly z_divexact(const ZPoly& f, const ZPoly& g);
bool z_divides(const ZPoly& g, const ZPoly& f); // g | f ?
ZPoly z_pow(const ZPoly& f, unsigned e);
// x^n
ZPoly z_xpow(unsigned n);
// Integer polynomial gcd (primitive, positive lc).
ZPoly z_gcd(const ZPoly& a, const ZPoly& b);
// Resultant via Sylvester matrix + Bareiss.
Int z_resultant(const ZPoly& a, const ZPoly& b);
// f(k*x) and k^(deg f - ?) scalings used by factorization.
ZPoly z_compose_scale(const ZPoly& f, const Int& k); // f(k*x)

std::string z_poly_str(const ZPoly& f, const std::string& var = "x");

struct QPoly {
    std::vector<Rat> c;

    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
    static QPoly from_z(const ZPoly& f);
    static QPoly constant(const Rat& r);

    void trim();
    bool is_zero() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; }
    const Rat& lc() const { return c.back(); }

    bool operator==(const QPoly& o) const { return c == o.c; }
    bool operator!=(const QPoly& o) const { return c != o.c; }

    Rat eval(const Rat& x) const;
};

QPoly operator+(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a, const QPoly& b);
QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a);
QPoly operator*(const Rat& k, const QPoly& a);

QPoly q_derivative(const QPoly& f);
// Division with remainder, g != 0.
std::pair<QPoly, QPoly> q_divrem(const QPoly& f, const QPoly& g);
QPoly q_mod(const QPoly& f, const QPoly& g);
// Monic gcd.
QPoly q_gcd(const QPoly& a, const QPoly& b);
QPoly q_monic(const QPoly& f);
// Clear denominators -> primitive integer polynomial with positive leading coeff.
ZPoly q_to_z_primitive(const QPoly& f);

// Interval evaluation: given x in [xlo, xhi], returns [lo, hi] containing f(x).
std::pair<Rat, Rat> q_eval_interval(const QPoly& f, const Rat& xlo, const Rat& xhi);

std::string q_poly_str(const QPoly& f, const std::string& var = "x");

} // namespace qmk
