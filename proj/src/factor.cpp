// Polynomial factorization over Z: squarefree split via gcd tower, Berlekamp
// mod a small prime, quadratic Hensel lifting, subset recombination.
#include "qmk/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace qmk {

namespace {

// ---- arithmetic mod a small prime p (coefficients as int64, reduced) ----

using PPoly = std::vector<int64_t>; // coeff of x^i, no trailing zeros

void ptrim(PPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int pdeg(const PPoly& f) { return (int)f.size() - 1; }

int64_t pinv(int64_t a, int64_t p) {
    int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    t %= p;
    if (t < 0) t += p;
    return t;
}

PPoly pmul(const PPoly& a, const PPoly& b, int64_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    ptrim(c);
    return c;
}

PPoly psub(const PPoly& a, const PPoly& b, int64_t p) {
    PPoly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] = ((c[i] - b[i]) % p + p) % p;
    ptrim(c);
    return c;
}

std::pair<PPoly, PPoly> pdivrem(PPoly f, const PPoly& g, int64_t p) {
    int dg = pdeg(g);
    if (pdeg(f) < dg) return {{}, std::move(f)};
    int64_t gl = pinv(g.back(), p);
    PPoly q((size_t)(pdeg(f) - dg + 1), 0);
    for (int i = pdeg(f); i >= dg; --i) {
        if (f[(size_t)i] == 0) continue;
        int64_t qi = f[(size_t)i] * gl % p;
        q[(size_t)(i - dg)] = qi;
        for (int j = 0; j <= dg; ++j)
            f[(size_t)(i - dg + j)] = ((f[(size_t)(i - dg + j)] - qi * g[(size_t)j]) % p + p) % p;
    }
    ptrim(f);
    return {std::move(q), std::move(f)};
}

PPoly pmod(const PPoly& f, const PPoly& g, int64_t p) { return pdivrem(f, g, p).second; }

PPoly pmonic(PPoly f, int64_t p) {
    if (f.empty()) return f;
    int64_t inv = pinv(f.back(), p);
    for (auto& x : f) x = x * inv % p;
    return f;
}

PPoly pgcd(PPoly a, PPoly b, int64_t p) {
    while (!b.empty()) {
        PPoly r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return pmonic(std::move(a), p);
}

PPoly pderiv(const PPoly& f, int64_t p) {
    if (f.size() <= 1) return {};
    PPoly d(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) d[i - 1] = (int64_t)i % p * f[i] % p;
    ptrim(d);
    return d;
}

PPoly ppowmod(PPoly base, int64_t e, const PPoly& m, int64_t p) {
    PPoly r{1};
    base = pmod(base, m, p);
    while (e > 0) {
        if (e & 1) r = pmod(pmul(r, base, p), m, p);
        base = pmod(pmul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

// Factor a monic squarefree f mod p into monic irreducibles (Berlekamp).
std::vector<PPoly> berlekamp(const PPoly& f, int64_t p) {
    int n = pdeg(f);
    if (n <= 1) return {f};
    // Row i of Q holds x^(i*p) mod f.
    std::vector<std::vector<int64_t>> Q((size_t)n, std::vector<int64_t>((size_t)n, 0));
    PPoly xp = ppowmod(PPoly{0, 1}, p, f, p);
    PPoly cur{1};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= pdeg(cur); ++j) Q[(size_t)i][(size_t)j] = cur[(size_t)j];
        cur = pmod(pmul(cur, xp, p), f, p);
    }
    for (int i = 0; i < n; ++i) Q[(size_t)i][(size_t)i] = (Q[(size_t)i][(size_t)i] + p - 1) % p;
    // Null space of (Q - I)^T: vectors v with v (Q - I) = 0, read as polynomials.
    std::vector<std::vector<int64_t>> M((size_t)n, std::vector<int64_t>((size_t)n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[(size_t)j][(size_t)i] = Q[(size_t)i][(size_t)j];
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (M[(size_t)r][(size_t)col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[(size_t)rank], M[(size_t)piv]);
        int64_t inv = pinv(M[(size_t)rank][(size_t)col], p);
        for (int j = 0; j < n; ++j) M[(size_t)rank][(size_t)j] = M[(size_t)rank][(size_t)j] * inv % p;
        for (int r = 0; r < n; ++r) {
            if (r == rank || M[(size_t)r][(size_t)col] == 0) continue;
            int64_t mfac = M[(size_t)r][(size_t)col];
            for (int j = 0; j < n; ++j)
                M[(size_t)r][(size_t)j] =
                    ((M[(size_t)r][(size_t)j] - mfac * M[(size_t)rank][(size_t)j]) % p + p) % p;
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot((size_t)n, false);
    for (int c : pivot_col) is_pivot[(size_t)c] = true;
    std::vector<PPoly> basis;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[(size_t)col]) continue;
        PPoly v((size_t)n, 0);
        v[(size_t)col] = 1;
        for (int r = 0; r < rank; ++r) {
            int64_t val = M[(size_t)r][(size_t)col];
            if (val) v[(size_t)pivot_col[(size_t)r]] = (p - val) % p;
        }
        ptrim(v);
        basis.push_back(std::move(v));
    }
    size_t nfactors = basis.size(); // dim of the fixed subalgebra = number of irreducible factors
    std::vector<PPoly> factors{f};
    if (nfactors <= 1) return factors;
    for (const auto& v : basis) {
        if (factors.size() >= nfactors) break;
        if (pdeg(v) < 1) continue; // constants split nothing
        std::vector<PPoly> next;
        for (auto& u : factors) {
            if (pdeg(u) <= 1) {
                next.push_back(std::move(u));
                continue;
            }
            PPoly rem = std::move(u);
            for (int64_t s = 0; s < p && pdeg(rem) > 0; ++s) {
                PPoly g = pgcd(rem, psub(v, PPoly{s}, p), p);
                if (pdeg(g) > 0 && pdeg(g) < pdeg(rem)) {
                    rem = pdivrem(rem, g, p).first;
                    next.push_back(std::move(g));
                }
            }
            if (pdeg(rem) > 0) next.push_back(pmonic(std::move(rem), p));
        }
        factors = std::move(next);
    }
    return factors;
}

// ---- coefficient vectors treated mod m (arbitrary precision) ----

std::vector<Int> zm_trimmed(std::vector<Int> c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

std::vector<Int> zm_mul(const std::vector<Int>& a, const std::vector<Int>& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    std::vector<Int> c(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    for (auto& x : c) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return zm_trimmed(std::move(c));
}

std::vector<Int> zm_sub(const std::vector<Int>& a, const std::vector<Int>& b, const Int& m) {
    std::vector<Int> c(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    for (auto& x : c) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return zm_trimmed(std::move(c));
}

std::vector<Int> zm_add(const std::vector<Int>& a, const std::vector<Int>& b, const Int& m) {
    std::vector<Int> c(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    for (auto& x : c) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return zm_trimmed(std::move(c));
}

// divrem by monic g, working mod m
std::pair<std::vector<Int>, std::vector<Int>> zm_divrem_monic(std::vector<Int> f,
                                                              const std::vector<Int>& g,
                                                              const Int& m) {
    int dg = (int)g.size() - 1;
    if ((int)f.size() - 1 < dg) return {{}, zm_trimmed(std::move(f))};
    std::vector<Int> q(f.size() - (size_t)dg, Int(0));
    for (int i = (int)f.size() - 1; i >= dg; --i) {
        Int qi = f[(size_t)i];
        if (qi == 0) continue;
        q[(size_t)(i - dg)] = qi;
        for (int j = 0; j <= dg; ++j) {
            f[(size_t)(i - dg + j)] -= qi * g[(size_t)j];
            mpz_mod(f[(size_t)(i - dg + j)].get_mpz_t(), f[(size_t)(i - dg + j)].get_mpz_t(),
                    m.get_mpz_t());
        }
    }
    return {zm_trimmed(std::move(q)), zm_trimmed(std::move(f))};
}

// One quadratic lifting step: given f = g*h and s*g + t*h = 1 (all mod m, g and h
// monic), update g, h, s, t so both congruences hold mod m^2.
void hensel_step(const std::vector<Int>& f, std::vector<Int>& g, std::vector<Int>& h,
                 std::vector<Int>& s, std::vector<Int>& t, const Int& m) {
    Int m2 = m * m;
    std::vector<Int> e = zm_sub(f, zm_mul(g, h, m2), m2);
    auto [q, r] = zm_divrem_monic(zm_mul(s, e, m2), h, m2);
    std::vector<Int> gstar = zm_add(zm_add(g, zm_mul(t, e, m2), m2), zm_mul(q, g, m2), m2);
    std::vector<Int> hstar = zm_add(h, r, m2);
    std::vector<Int> b = zm_sub(zm_add(zm_mul(s, gstar, m2), zm_mul(t, hstar, m2), m2),
                                std::vector<Int>{Int(1)}, m2);
    auto [c, d] = zm_divrem_monic(zm_mul(s, b, m2), hstar, m2);
    std::vector<Int> sstar = zm_sub(s, d, m2);
    std::vector<Int> tstar = zm_sub(zm_sub(t, zm_mul(t, b, m2), m2), zm_mul(c, gstar, m2), m2);
    g = std::move(gstar);
    h = std::move(hstar);
    s = std::move(sstar);
    t = std::move(tstar);
}

std::vector<Int> ppoly_to_int(const PPoly& f) {
    std::vector<Int> c(f.size());
    for (size_t i = 0; i < f.size(); ++i) c[i] = Int((long)f[i]);
    return c;
}

// extended euclid mod p: s*g + t*h = 1 for coprime g, h
void bezout_mod_p(const PPoly& g, const PPoly& h, int64_t p, PPoly& s, PPoly& t) {
    PPoly r0 = g, r1 = h, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r2] = pdivrem(r0, r1, p);
        PPoly s2 = psub(s0, pmul(q, s1, p), p);
        PPoly t2 = psub(t0, pmul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    int64_t inv = pinv(r0[0], p); // gcd is a nonzero constant
    for (auto& x : s0) x = x * inv % p;
    for (auto& x : t0) x = x * inv % p;
    s = std::move(s0);
    t = std::move(t0);
}

// Lift the factorization f = prod(factors) mod p until the modulus passes `target`,
// splitting the factor list in halves recursively. Returns factors reduced mod target.
std::vector<std::vector<Int>> hensel_lift_tree(const std::vector<Int>& f,
                                               const std::vector<PPoly>& factors, int64_t p,
                                               const Int& target) {
    if (factors.size() == 1) {
        std::vector<Int> r = f;
        for (auto& x : r) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), target.get_mpz_t());
        return {zm_trimmed(std::move(r))};
    }
    size_t half = factors.size() / 2;
    PPoly gp{1}, hp{1};
    for (size_t i = 0; i < half; ++i) gp = pmul(gp, factors[i], p);
    for (size_t i = half; i < factors.size(); ++i) hp = pmul(hp, factors[i], p);
    PPoly sp, tp;
    bezout_mod_p(gp, hp, p, sp, tp);
    std::vector<Int> g = ppoly_to_int(gp), h = ppoly_to_int(hp), s = ppoly_to_int(sp),
                     t = ppoly_to_int(tp);
    Int m((long)p);
    while (m < target) {
        hensel_step(f, g, h, s, t, m);
        m = m * m;
    }
    std::vector<PPoly> left(factors.begin(), factors.begin() + (long)half);
    std::vector<PPoly> right(factors.begin() + (long)half, factors.end());
    auto lifted = hensel_lift_tree(g, left, p, target);
    auto rg = hensel_lift_tree(h, right, p, target);
    lifted.insert(lifted.end(), rg.begin(), rg.end());
    return lifted;
}

// Map residues mod m into (-m/2, m/2].
ZPoly balanced(const std::vector<Int>& c, const Int& m) {
    Int half = m / 2;
    std::vector<Int> out(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        Int x = c[i];
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        if (x > half) x -= m;
        out[i] = x;
    }
    return ZPoly(std::move(out));
}

const int64_t kPrimes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,
                           43,  47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,
                           101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157,
                           163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227};

// Factor a monic squarefree polynomial with integer coefficients into monic
// irreducible factors over Z.
std::vector<ZPoly> factor_monic_squarefree(const ZPoly& f) {
    int d = f.degree();
    if (d == 1) return {f};
    int64_t p = 0;
    std::vector<PPoly> modular;
    for (int64_t cand : kPrimes) {
        PPoly fp(f.c.size());
        for (size_t i = 0; i < f.c.size(); ++i) {
            Int r;
            mpz_mod_ui(r.get_mpz_t(), f.c[i].get_mpz_t(), (unsigned long)cand);
            fp[i] = r.get_si();
        }
        ptrim(fp);
        if (pdeg(fp) != d) continue;
        if (pdeg(pgcd(fp, pderiv(fp, cand), cand)) == 0) {
            p = cand;
            modular = berlekamp(pmonic(std::move(fp), cand), cand);
            break;
        }
    }
    if (p == 0)
        throw std::runtime_error("factorization: input not squarefree at any probe prime");
    if (modular.size() == 1) return {f};

    // Factor-coefficient bound (Mignotte-style): any monic divisor of f has
    // coefficients bounded by 2^d * ||f||_2; lift past twice that so balanced
    // residues recover true coefficients exactly.
    Int norm2 = 0;
    for (const auto& x : f.c) norm2 += x * x;
    Int sq;
    mpz_sqrt(sq.get_mpz_t(), norm2.get_mpz_t());
    Int bound = (sq + 1) * ipow(2, (unsigned long)d + 1);
    Int target((long)p);
    while (target <= 2 * bound) target *= target;
    auto lifted = hensel_lift_tree(f.c, modular, p, target);

    // Subset recombination in increasing cardinality. After all subsets of size
    // <= half the live set fail, the remainder is irreducible.
    std::vector<ZPoly> result;
    std::vector<int> alive(lifted.size(), 1);
    ZPoly rem = f;
    auto live_indices = [&]() {
        std::vector<size_t> live;
        for (size_t i = 0; i < lifted.size(); ++i)
            if (alive[i]) live.push_back(i);
        return live;
    };
    auto try_subset = [&](const std::vector<size_t>& idx) -> bool {
        std::vector<Int> prod{Int(1)};
        for (size_t i : idx) prod = zm_mul(prod, lifted[i], target);
        ZPoly cand = balanced(prod, target);
        if (cand.is_zero() || !z_divides(cand, rem)) return false;
        result.push_back(cand);
        rem = z_divexact(rem, cand);
        for (size_t i : idx) alive[i] = 0;
        return true;
    };
    for (size_t card = 1;; ++card) {
        std::vector<size_t> live = live_indices();
        if (2 * card > live.size()) break;
        std::vector<size_t> comb(card);
        for (size_t i = 0; i < card; ++i) comb[i] = i;
        while (true) {
            std::vector<size_t> idx(card);
            for (size_t i = 0; i < card; ++i) idx[i] = live[comb[i]];
            if (try_subset(idx)) {
                live = live_indices();
                if (2 * card > live.size()) break;
                for (size_t i = 0; i < card; ++i) comb[i] = i;
                continue;
            }
            int i = (int)card - 1;
            while (i >= 0 && comb[(size_t)i] == live.size() - card + (size_t)i) --i;
            if (i < 0) break;
            ++comb[(size_t)i];
            for (size_t j = (size_t)i + 1; j < card; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    if (rem.degree() > 0) result.push_back(rem);
    std::sort(result.begin(), result.end());
    return result;
}

} // namespace

std::vector<ZPoly> factor_squarefree_primitive(const ZPoly& f0) {
    ZPoly f = f0;
    if (f.degree() < 1) throw std::invalid_argument("factor_squarefree_primitive: degree < 1");
    if (sgn(f.lc()) < 0) f = -f;
    if (f.is_monic()) return factor_monic_squarefree(f);
    // Monicize: F(y) = L^(d-1) * f(y/L) with L = lc(f); then y = L*x maps back.
    Int L = f.lc();
    int d = f.degree();
    std::vector<Int> C((size_t)d + 1);
    for (int i = 0; i < d; ++i) C[(size_t)i] = f.c[(size_t)i] * ipow(L, (unsigned long)(d - 1 - i));
    C[(size_t)d] = 1;
    auto sub = factor_monic_squarefree(ZPoly(std::move(C)));
    std::vector<ZPoly> out;
    out.reserve(sub.size());
    for (const auto& G : sub) {
        ZPoly g = z_primitive(z_compose_scale(G, L));
        if (sgn(g.lc()) < 0) g = -g;
        out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end());
    return out;
}

ZFactorization factor_z(const ZPoly& f0) {
    if (f0.is_zero()) throw std::invalid_argument("factor_z: zero polynomial");
    ZFactorization out;
    ZPoly f = f0;
    if (sgn(f.lc()) < 0) {
        out.sign = -1;
        f = -f;
    }
    out.content = z_content(f);
    f = z_primitive(f);
    if (f.degree() < 1) return out;
    int xmult = 0;
    while (f.c[0] == 0) {
        f.c.erase(f.c.begin());
        ++xmult;
    }
    if (xmult > 0) out.factors.push_back({ZPoly::from_ints({0, 1}), xmult});
    if (f.degree() >= 1) {
        // Squarefree tower: peel off the product of factors at each exact multiplicity.
        ZPoly g = z_gcd(f, z_derivative(f));
        ZPoly c = z_divexact(f, g);
        int mult = 1;
        while (c.degree() >= 1) {
            ZPoly d = z_gcd(c, g);
            ZPoly part = z_divexact(c, d);
            if (part.degree() >= 1)
                for (auto& irr : factor_squarefree_primitive(part))
                    out.factors.push_back({std::move(irr), mult});
            c = std::move(d);
            if (c.degree() >= 1) g = z_divexact(g, c);
            ++mult;
        }
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const ZFactor& a, const ZFactor& b) {
        if (a.poly < b.poly) return true;
        if (b.poly < a.poly) return false;
        return a.mult < b.mult;
    });
    return out;
}

bool is_irreducible_z(const ZPoly& f) {
    if (f.degree() < 1) return false;
    auto fac = factor_z(z_primitive(f));
    return fac.factors.size() == 1 && fac.factors[0].mult == 1;
}

} // namespace qmk
