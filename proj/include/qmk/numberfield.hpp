#pragma once
#include "qmk/algebraic.hpp"
#include "qmk/poly.hpp"

#include <complex>
#include <concepts>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qmk {

// ---- field concept ----------------------------------------------------------
// Generic algorithms (matrices, solving, diagram calculus) are templated over a
// field handle F with value type F::Elem. All handles are cheap to copy.

template <class F>
concept FieldLike = requires(const F f, const typename F::Elem& a, const typename F::Elem& b) {
    { f.zero() } -> std::convertible_to<typename F::Elem>;
    { f.one() } -> std::convertible_to<typename F::Elem>;
    { f.from_rat(Rat()) } -> std::convertible_to<typename F::Elem>;
    { f.add(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.sub(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.mul(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.div(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.neg(a) } -> std::convertible_to<typename F::Elem>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.eq(a, b) } -> std::same_as<bool>;
    { f.str(a) } -> std::convertible_to<std::string>;
};

// ---- rationals --------------------------------------------------------------

struct RationalField {
    using Elem = Rat;
    Elem zero() const { return Rat(0); }
    Elem one() const { return Rat(1); }
    Elem from_rat(const Rat& r) const { return r; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem div(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const { return -a; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string str(const Elem& a) const { return rat_str(a); }
};

// ---- number fields Q[x]/(m) ---------------------------------------------------

// Shared immutable field data: the defining irreducible polynomial and an
// optional distinguished real root used for numeric embedding and signs.
struct NumberField {
    ZPoly minpoly;              // irreducible, primitive, positive leading coefficient
    QPoly minpoly_monic;        // same roots, monic over Q
    std::optional<AlgebraicReal> root; // which root "x" denotes, when the field is embedded

    static std::shared_ptr<const NumberField> make(ZPoly minpoly,
                                                   std::optional<AlgebraicReal> root = {});
    int degree() const { return minpoly.degree(); }
};

// Elements are polynomials in the generator reduced to degree < deg(minpoly).
struct NumberFieldF {
    using Elem = QPoly;
    std::shared_ptr<const NumberField> nf;

    explicit NumberFieldF(std::shared_ptr<const NumberField> f) : nf(std::move(f)) {}

    Elem reduce(const QPoly& p) const { return q_mod(p, nf->minpoly_monic); }
    Elem zero() const { return QPoly(); }
    Elem one() const { return QPoly::constant(Rat(1)); }
    Elem from_rat(const Rat& r) const { return QPoly::constant(r); }
    Elem gen() const { return reduce(QPoly({Rat(0), Rat(1)})); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const; // fused multiply-and-reduce
    Elem inv(const Elem& a) const;
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    Elem neg(const Elem& a) const { return -a; }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string str(const Elem& a) const;

    // Sign of the element under the embedding given by the distinguished root.
    int sign(const Elem& a) const;
    double to_double(const Elem& a) const;
    // Coordinates in the power basis 1, x, ..., x^(deg-1).
    std::vector<Rat> coords(const Elem& a) const;
};

// ---- floating point complex --------------------------------------------------

struct ComplexField {
    using Elem = std::complex<double>;
    double tol = 1e-10;
    Elem zero() const { return {0.0, 0.0}; }
    Elem one() const { return {1.0, 0.0}; }
    Elem from_rat(const Rat& r) const { return {r.get_d(), 0.0}; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem div(const Elem& a, const Elem& b) const { return a / b; }
    Elem neg(const Elem& a) const { return -a; }
    bool is_zero(const Elem& a) const { return std::abs(a) <= tol; }
    bool eq(const Elem& a, const Elem& b) const { return std::abs(a - b) <= tol; }
    std::string str(const Elem& a) const;
};

// ---- rational function field Q(x) ---------------------------------------------

// Reduced fraction of polynomials: denominator monic, gcd(num, den) = 1.
struct RatFunc {
    QPoly num, den;
    RatFunc() : num(), den(QPoly::constant(Rat(1))) {}
    RatFunc(QPoly n, QPoly d);
    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
};

struct FuncField {
    using Elem = RatFunc;
    Elem zero() const { return RatFunc(); }
    Elem one() const { return RatFunc(QPoly::constant(Rat(1)), QPoly::constant(Rat(1))); }
    Elem from_rat(const Rat& r) const { return RatFunc(QPoly::constant(r), QPoly::constant(Rat(1))); }
    Elem gen() const { return RatFunc(QPoly({Rat(0), Rat(1)}), QPoly::constant(Rat(1))); }
    Elem from_poly(const QPoly& p) const { return RatFunc(p, QPoly::constant(Rat(1))); }
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem div(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const { return RatFunc(-a.num, a.den); }
    bool is_zero(const Elem& a) const { return a.num.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string str(const Elem& a) const;
};

static_assert(FieldLike<RationalField>);
static_assert(FieldLike<NumberFieldF>);
static_assert(FieldLike<ComplexField>);
static_assert(FieldLike<FuncField>);

} // namespace qmk
