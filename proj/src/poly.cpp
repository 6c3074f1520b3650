#include "qmk/poly.hpp"

#include <algorithm>
#include <sstream>

namespace qmk {

std::optional<Rat> parse_rat(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Int n(s);
            return Rat(n);
        }
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        if (ns.empty() || ds.empty()) return std::nullopt;
        Int n(ns), d(ds);
        if (d == 0) return std::nullopt;
        Rat r(n, d);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

std::pair<Rat, Rat> sqrt_bounds(const Rat& r, unsigned prec_bits) {
    if (sgn(r) < 0) throw std::invalid_argument("sqrt_bounds: negative input");
    if (sgn(r) == 0) return {Rat(0), Rat(0)};
    // sqrt(n/d) = sqrt(n*d)/d; scale by 4^prec_bits for precision.
    Int n = r.get_num(), d = r.get_den();
    Int scale = ipow(2, prec_bits);
    Int t = n * d * scale * scale;
    Int s;
    mpz_sqrt(s.get_mpz_t(), t.get_mpz_t()); // floor sqrt
    Rat lo = make_rat(s, d * scale);
    Rat hi = make_rat(s + 1, d * scale);
    return {lo, hi};
}

// ---------------- ZPoly ----------------

ZPoly ZPoly::from_ints(std::initializer_list<long> coeffs) {
    std::vector<Int> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return ZPoly(std::move(c));
}

void ZPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

bool ZPoly::operator<(const ZPoly& o) const {
    if (c.size() != o.c.size()) return c.size() < o.c.size();
    for (size_t i = c.size(); i-- > 0;) {
        int s = cmp(c[i], o.c[i]);
        if (s != 0) return s < 0;
    }
    return false;
}

Int ZPoly::eval(const Int& x) const {
    Int r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

Rat ZPoly::eval(const Rat& x) const {
    Rat r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + Rat(c[i]);
    return r;
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
    std::vector<Int> c(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
    return ZPoly(std::move(c));
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) {
    std::vector<Int> c(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
    return ZPoly(std::move(c));
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return ZPoly{};
    std::vector<Int> c(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    }
    return ZPoly(std::move(c));
}

ZPoly operator-(const ZPoly& a) {
    ZPoly r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

ZPoly operator*(const Int& k, const ZPoly& a) {
    if (k == 0) return ZPoly{};
    ZPoly r = a;
    for (auto& x : r.c) x *= k;
    return r;
}

ZPoly z_derivative(const ZPoly& f) {
    if (f.c.size() <= 1) return ZPoly{};
    std::vector<Int> c(f.c.size() - 1);
    for (size_t i = 1; i < f.c.size(); ++i) c[i - 1] = Int((long)i) * f.c[i];
    return ZPoly(std::move(c));
}

Int z_content(const ZPoly& f) {
    Int g = 0;
    for (const auto& x : f.c) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZPoly z_primitive(const ZPoly& f) {
    if (f.is_zero()) return f;
    Int g = z_content(f);
    ZPoly r = f;
    for (auto& x : r.c) x /= g;
    return r;
}

ZPoly z_divexact(const ZPoly& f, const ZPoly& g) {
    if (g.is_zero()) throw std::invalid_argument("z_divexact: zero divisor");
    if (f.is_zero()) return ZPoly{};
    std::vector<Int> rem = f.c, q(f.c.size() - g.c.size() + 1, Int(0));
    int dg = g.degree();
    for (int i = (int)rem.size() - 1; i >= dg; --i) {
        if (rem[i] == 0) continue;
        Int qi;
        if (!mpz_divisible_p(rem[i].get_mpz_t(), g.lc().get_mpz_t()))
            throw std::invalid_argument("z_divexact: not divisible");
        qi = rem[i] / g.lc();
        q[i - dg] = qi;
        for (int j = 0; j <= dg; ++j) rem[i - dg + j] -= qi * g.c[j];
    }
    for (const auto& x : rem)
        if (x != 0) throw std::invalid_argument("z_divexact: nonzero remainder");
    return ZPoly(std::move(q));
}

bool z_divides(const ZPoly& g, const ZPoly& f) {
    if (g.is_zero()) return f.is_zero();
    if (f.is_zero()) return true;
    if (f.degree() < g.degree()) return false;
    // rational division with remainder, then check remainder zero
    QPoly qf = QPoly::from_z(f), qg = QPoly::from_z(g);
    auto [q, r] = q_divrem(qf, qg);
    if (!r.is_zero()) return false;
    // also require integer (or at least f = q*g exactly over Q, which it is)
    return true;
}

ZPoly z_pow(const ZPoly& f, unsigned e) {
    ZPoly r = ZPoly::from_ints({1});
    ZPoly b = f;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

ZPoly z_xpow(unsigned n) {
    std::vector<Int> c(n + 1, Int(0));
    c[n] = 1;
    return ZPoly(std::move(c));
}

ZPoly z_gcd(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero()) return b.is_zero() ? ZPoly{} : (sgn(b.lc()) < 0 ? -b : b);
    if (b.is_zero()) return sgn(a.lc()) < 0 ? -a : a;
    Int cont = gcd(z_content(a), z_content(b));
    QPoly g = q_gcd(QPoly::from_z(z_primitive(a)), QPoly::from_z(z_primitive(b)));
    return cont * q_to_z_primitive(g);
}

static Int det_bareiss(std::vector<std::vector<Int>> m) {
    size_t n = m.size();
    if (n == 0) return Int(1);
    Int prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return Int(0);
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = t / prev; // exact
            }
        prev = m[k][k];
    }
    Int d = m[n - 1][n - 1];
    return sign < 0 ? Int(-d) : d;
}

Int z_resultant(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return Int(0);
    int da = a.degree(), db = b.degree();
    size_t n = (size_t)(da + db);
    if (n == 0) return Int(1);
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < db; ++i)
        for (int j = 0; j <= da; ++j) m[i][i + j] = a.c[da - j];
    for (int i = 0; i < da; ++i)
        for (int j = 0; j <= db; ++j) m[db + i][i + j] = b.c[db - j];
    return det_bareiss(std::move(m));
}

ZPoly z_compose_scale(const ZPoly& f, const Int& k) {
    ZPoly r = f;
    Int p(1);
    for (size_t i = 0; i < r.c.size(); ++i) {
        r.c[i] *= p;
        p *= k;
    }
    r.trim();
    return r;
}

std::string z_poly_str(const ZPoly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        const Int& a = f.c[i];
        if (a == 0) continue;
        Int mag = abs(a);
        if (first) {
            if (sgn(a) < 0) os << "-";
            first = false;
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
        }
        if (i == 0 || mag != 1) os << mag.get_str();
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---------------- QPoly ----------------

QPoly QPoly::from_z(const ZPoly& f) {
    std::vector<Rat> c;
    c.reserve(f.c.size());
    for (const auto& x : f.c) c.emplace_back(x);
    return QPoly(std::move(c));
}

QPoly QPoly::constant(const Rat& r) {
    if (sgn(r) == 0) return QPoly{};
    return QPoly(std::vector<Rat>{r});
}

void QPoly::trim() {
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

Rat QPoly::eval(const Rat& x) const {
    Rat r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rat> c(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
    return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
    std::vector<Rat> c(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
    return QPoly(std::move(c));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly{};
    std::vector<Rat> c(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (sgn(a.c[i]) == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    }
    return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a) {
    QPoly r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

QPoly operator*(const Rat& k, const QPoly& a) {
    if (sgn(k) == 0) return QPoly{};
    QPoly r = a;
    for (auto& x : r.c) x *= k;
    return r;
}

QPoly q_derivative(const QPoly& f) {
    if (f.c.size() <= 1) return QPoly{};
    std::vector<Rat> c(f.c.size() - 1);
    for (size_t i = 1; i < f.c.size(); ++i) c[i - 1] = Rat((long)i) * f.c[i];
    return QPoly(std::move(c));
}

std::pair<QPoly, QPoly> q_divrem(const QPoly& f, const QPoly& g) {
    if (g.is_zero()) throw std::invalid_argument("q_divrem: zero divisor");
    if (f.degree() < g.degree()) return {QPoly{}, f};
    std::vector<Rat> rem = f.c, q((size_t)(f.degree() - g.degree() + 1), Rat(0));
    int dg = g.degree();
    const bool monic = g.lc() == 1;
    for (int i = (int)rem.size() - 1; i >= dg; --i) {
        if (sgn(rem[i]) == 0) continue;
        Rat qi = monic ? rem[(size_t)i] : Rat(rem[(size_t)i] / g.lc());
        q[(size_t)(i - dg)] = qi;
        for (int j = 0; j < dg; ++j) rem[(size_t)(i - dg + j)] -= qi * g.c[(size_t)j];
        rem[(size_t)i] = 0; // the leading term cancels exactly
    }
    return {QPoly(std::move(q)), QPoly(std::move(rem))};
}

QPoly q_mod(const QPoly& f, const QPoly& g) { return q_divrem(f, g).second; }

QPoly q_monic(const QPoly& f) {
    if (f.is_zero()) return f;
    Rat inv = 1 / f.lc();
    return inv * f;
}

QPoly q_gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = q_mod(x, y);
        x = y;
        y = r;
    }
    return q_monic(x);
}

ZPoly q_to_z_primitive(const QPoly& f) {
    if (f.is_zero()) return ZPoly{};
    Int den(1);
    for (const auto& x : f.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<Int> c;
    c.reserve(f.c.size());
    for (const auto& x : f.c) c.push_back(Int(x.get_num() * (den / x.get_den())));
    ZPoly z(std::move(c));
    z = z_primitive(z);
    if (!z.is_zero() && sgn(z.lc()) < 0) z = -z;
    return z;
}

std::pair<Rat, Rat> q_eval_interval(const QPoly& f, const Rat& xlo, const Rat& xhi) {
    // Horner with interval coefficients.
    Rat lo = 0, hi = 0;
    for (size_t i = f.c.size(); i-- > 0;) {
        // [lo,hi] * [xlo,xhi]
        Rat a = lo * xlo, b = lo * xhi, c2 = hi * xlo, d = hi * xhi;
        Rat nlo = std::min(std::min(a, b), std::min(c2, d));
        Rat nhi = std::max(std::max(a, b), std::max(c2, d));
        lo = nlo + f.c[i];
        hi = nhi + f.c[i];
    }
    return {lo, hi};
}

std::string q_poly_str(const QPoly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        const Rat& a = f.c[(size_t)i];
        if (sgn(a) == 0) continue;
        Rat mag = abs(a);
        if (first) {
            if (sgn(a) < 0) os << "-";
            first = false;
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
        }
        if (i == 0 || mag != 1) os << mag;
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

} // namespace qmk
