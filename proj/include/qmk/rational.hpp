#pragma once
#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace qmk {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// "p", "-p", "p/q"
std::optional<Rat> parse_rat(const std::string& s);

std::string rat_str(const Rat& r);

Int ipow(const Int& base, unsigned long e);

// Rational enclosure [lo, hi] of sqrt(r) for r >= 0, with hi - lo <= 1/2^prec_bits * max(1, sqrt(r)).
std::pair<Rat, Rat> sqrt_bounds(const Rat& r, unsigned prec_bits = 64);

} // namespace qmk
