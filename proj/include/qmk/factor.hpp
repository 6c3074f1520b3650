#pragma once
#include "qmk/poly.hpp"

#include <vector>

namespace qmk {

struct ZFactor {
    ZPoly poly; // irreducible, primitive, positive leading coefficient
    int mult;
};

struct ZFactorization {
    int sign = 1;       // overall sign
    Int content{1};     // nonnegative content
    std::vector<ZFactor> factors; // sorted for determinism
};

// Full factorization over Z. Exact; factors certified irreducible.
ZFactorization factor_z(const ZPoly& f);

// Squarefree + primitive + degree >= 1 input; returns irreducible factors (mult 1 each).
std::vector<ZPoly> factor_squarefree_primitive(const ZPoly& f);

bool is_irreducible_z(const ZPoly& f);

} // namespace qmk
