#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "hopfore/errors.hpp"
#include "hopfore/expr.hpp"

namespace hopfore {

// ---------------------------------------------------------------------------
// Domains.  A scalar domain is one of
//   Rational                       exact arbitrary-precision rationals
//   PrimeField(p)                  residues mod a prime p
//   Poly(base, vars)               multivariate polynomials, base Rational or PrimeField
//   Fraction(Poly(base, vars))     the fraction field of such a polynomial ring
// Domains are immutable and compared structurally.
// ---------------------------------------------------------------------------

enum class domain_kind { rational, prime_field, poly, fraction };

class scalar_domain;
using domain_ptr = std::shared_ptr<const scalar_domain>;

namespace detail {
inline bool is_prime_ul(unsigned long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (unsigned long d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}
} // namespace detail

class scalar_domain {
public:
    static domain_ptr rational() {
        static domain_ptr d = std::shared_ptr<const scalar_domain>(
            new scalar_domain(domain_kind::rational, 0, {}));
        return d;
    }

    static domain_ptr prime_field(unsigned long p) {
        if (!detail::is_prime_ul(p)) throw error("PrimeField requires a prime modulus, got " + std::to_string(p));
        return std::shared_ptr<const scalar_domain>(new scalar_domain(domain_kind::prime_field, p, {}));
    }

    // base must be Rational or PrimeField; vars nonempty with distinct names.
    static domain_ptr poly(const domain_ptr& base, std::vector<std::string> vars) {
        if (!base || (base->kind() != domain_kind::rational && base->kind() != domain_kind::prime_field))
            throw error("Poly base must be Rational or a PrimeField");
        if (vars.empty()) throw error("Poly domain needs at least one variable");
        for (std::size_t i = 0; i < vars.size(); ++i)
            for (std::size_t j = i + 1; j < vars.size(); ++j)
                if (vars[i] == vars[j]) throw error("duplicate variable name '" + vars[i] + "'");
        return std::shared_ptr<const scalar_domain>(
            new scalar_domain(domain_kind::poly, base->characteristic(), std::move(vars)));
    }

    static domain_ptr fraction(const domain_ptr& poly_dom) {
        if (!poly_dom || poly_dom->kind() != domain_kind::poly)
            throw error("Fraction domain wraps a Poly domain");
        return std::shared_ptr<const scalar_domain>(
            new scalar_domain(domain_kind::fraction, poly_dom->characteristic(), poly_dom->vars()));
    }

    domain_kind kind() const { return kind_; }
    unsigned long characteristic() const { return p_; }
    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t var_count() const { return vars_.size(); }

    bool is_field() const { return kind_ != domain_kind::poly; }

    // base field of a poly/fraction domain
    domain_ptr base() const {
        return p_ == 0 ? rational() : prime_field(p_);
    }

    domain_ptr poly_part() const {
        if (kind_ == domain_kind::poly)
            throw error("poly_part: domain is already a Poly domain");
        if (kind_ != domain_kind::fraction) throw error("poly_part: not a Fraction domain");
        return poly(base(), vars_);
    }

    std::optional<std::size_t> var_index(std::string_view name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        return std::nullopt;
    }

    friend bool operator==(const scalar_domain& a, const scalar_domain& b) {
        return a.kind_ == b.kind_ && a.p_ == b.p_ && a.vars_ == b.vars_;
    }
    friend bool operator!=(const scalar_domain& a, const scalar_domain& b) { return !(a == b); }

    std::string str() const {
        switch (kind_) {
        case domain_kind::rational: return "Q";
        case domain_kind::prime_field: return "F_" + std::to_string(p_);
        case domain_kind::poly:
        case domain_kind::fraction: {
            std::string s = (p_ == 0 ? "Q[" : "F_" + std::to_string(p_) + "[");
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                if (i) s += ",";
                s += vars_[i];
            }
            s += "]";
            if (kind_ == domain_kind::fraction) s = "Frac(" + s + ")";
            return s;
        }
        }
        return "?";
    }

private:
    scalar_domain(domain_kind k, unsigned long p, std::vector<std::string> vars)
        : kind_(k), p_(p), vars_(std::move(vars)) {}

    domain_kind kind_;
    unsigned long p_; // 0 means characteristic zero
    std::vector<std::string> vars_;
};

inline bool same_domain(const domain_ptr& a, const domain_ptr& b) {
    return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// Monomials: exponent vectors under graded-lexicographic order.
// ---------------------------------------------------------------------------

using exp_vec = std::vector<std::uint32_t>;

inline unsigned long total_degree(const exp_vec& e) {
    unsigned long d = 0;
    for (auto x : e) d += x;
    return d;
}

// Graded lex: compare total degree first, then exponents left to right
// (earlier variables weigh more).
struct grlex_less {
    bool operator()(const exp_vec& a, const exp_vec& b) const {
        unsigned long da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

using term_map = std::map<exp_vec, mpq_class, grlex_less>;

namespace detail {

// --- coefficient arithmetic, characteristic-aware -------------------------
// Coefficients are mpq_class; for characteristic p they are integers in [0,p).

inline mpz_class zmod(const mpz_class& a, unsigned long p) {
    mpz_class r = a % p;
    if (r < 0) r += p;
    return r;
}

inline mpq_class cnorm(unsigned long p, const mpq_class& q) {
    if (p == 0) return q;
    return mpq_class(zmod(q.get_num(), p));
}

inline mpq_class cneg(unsigned long p, const mpq_class& a) {
    if (p == 0) return -a;
    if (a == 0) return a;
    return mpq_class(mpz_class(p) - a.get_num());
}

inline mpq_class cadd(unsigned long p, const mpq_class& a, const mpq_class& b) {
    return cnorm(p, a + b);
}

inline mpq_class cmul(unsigned long p, const mpq_class& a, const mpq_class& b) {
    return cnorm(p, a * b);
}

inline mpq_class cinv(unsigned long p, const mpq_class& a) {
    if (a == 0) throw division_by_zero("inverse of zero");
    if (p == 0) return 1 / a;
    mpz_class inv, mod(p);
    if (mpz_invert(inv.get_mpz_t(), a.get_num().get_mpz_t(), mod.get_mpz_t()) == 0)
        throw division_by_zero("residue not invertible");
    return mpq_class(inv);
}

// Rational -> F_p, failing when p divides the denominator.
inline mpq_class rational_mod_p(const mpq_class& q, unsigned long p) {
    mpz_class den = zmod(q.get_den(), p);
    if (den == 0)
        throw denominator_vanishes("denominator of " + q.get_str() + " vanishes mod " + std::to_string(p));
    mpz_class inv, mod(p);
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    return mpq_class(zmod(zmod(q.get_num(), p) * inv, p));
}

// --- term map arithmetic ---------------------------------------------------

inline void tm_add_term(unsigned long p, term_map& t, const exp_vec& e, const mpq_class& c) {
    if (c == 0) return;
    auto it = t.find(e);
    if (it == t.end()) {
        mpq_class v = cnorm(p, c);
        if (v != 0) t.emplace(e, std::move(v));
    } else {
        it->second = cadd(p, it->second, c);
        if (it->second == 0) t.erase(it);
    }
}

inline term_map tm_add(unsigned long p, const term_map& a, const term_map& b) {
    term_map r = a;
    for (const auto& [e, c] : b) tm_add_term(p, r, e, c);
    return r;
}

inline term_map tm_neg(unsigned long p, const term_map& a) {
    term_map r;
    for (const auto& [e, c] : a) r.emplace(e, cneg(p, c));
    return r;
}

inline term_map tm_scale(unsigned long p, const term_map& a, const mpq_class& c) {
    term_map r;
    if (c == 0) return r;
    for (const auto& [e, k] : a) {
        mpq_class v = cmul(p, k, c);
        if (v != 0) r.emplace(e, std::move(v));
    }
    return r;
}

inline exp_vec ev_add(const exp_vec& a, const exp_vec& b) {
    exp_vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline term_map tm_mul(unsigned long p, const term_map& a, const term_map& b) {
    term_map r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) tm_add_term(p, r, ev_add(ea, eb), cmul(p, ca, cb));
    return r;
}

inline term_map tm_const(std::size_t nvars, const mpq_class& c) {
    term_map r;
    if (c != 0) r.emplace(exp_vec(nvars, 0), c);
    return r;
}

inline bool tm_is_const(const term_map& a) {
    return a.empty() || (a.size() == 1 && total_degree(a.begin()->first) == 0);
}

// graded-lex leading term (largest)
inline const std::pair<const exp_vec, mpq_class>& tm_lead(const term_map& a) {
    return *a.rbegin();
}

// Exact division; throws hopfore::error when the division is not exact.
inline term_map tm_divexact(unsigned long p, const term_map& a, const term_map& b) {
    if (b.empty()) throw division_by_zero("polynomial division by zero");
    term_map q;
    term_map r = a;
    const auto& [eb, cb] = tm_lead(b);
    mpq_class cb_inv = cinv(p, cb);
    while (!r.empty()) {
        const auto& [er, cr] = tm_lead(r);
        exp_vec em(er.size());
        for (std::size_t i = 0; i < er.size(); ++i) {
            if (er[i] < eb[i]) throw error("inexact polynomial division");
            em[i] = er[i] - eb[i];
        }
        mpq_class cm = cmul(p, cr, cb_inv);
        tm_add_term(p, q, em, cm);
        // r -= cm * x^em * b
        for (const auto& [e2, c2] : b)
            tm_add_term(p, r, ev_add(em, e2), cneg(p, cmul(p, cm, c2)));
    }
    return q;
}

inline term_map tm_monic(unsigned long p, const term_map& a) {
    if (a.empty()) return a;
    const auto& lc = tm_lead(a).second;
    if (lc == 1) return a;
    return tm_scale(p, a, cinv(p, lc));
}

inline std::optional<std::size_t> tm_main_var(const term_map& a, const term_map& b) {
    std::optional<std::size_t> m;
    auto scan = [&](const term_map& t) {
        for (const auto& [e, c] : t)
            for (std::size_t i = e.size(); i-- > 0;)
                if (e[i] > 0 && (!m || i > *m)) m = i;
    };
    scan(a);
    scan(b);
    return m;
}

// univariate view in variable v: exponent of v -> coefficient (v zeroed out)
inline std::map<std::uint32_t, term_map> tm_univariate(const term_map& a, std::size_t v) {
    std::map<std::uint32_t, term_map> r;
    for (const auto& [e, c] : a) {
        exp_vec rest = e;
        std::uint32_t d = rest[v];
        rest[v] = 0;
        r[d].emplace(rest, c);
    }
    return r;
}

inline term_map tm_from_univariate(const std::map<std::uint32_t, term_map>& u, std::size_t v) {
    term_map r;
    for (const auto& [d, coef] : u)
        for (const auto& [e, c] : coef) {
            exp_vec full = e;
            full[v] = d;
            r.emplace(full, c);
        }
    return r;
}

term_map tm_gcd(unsigned long p, const term_map& a, const term_map& b);

// gcd of the coefficients of the univariate view (the content w.r.t. v)
inline term_map tm_content(unsigned long p, const term_map& a, std::size_t v) {
    auto u = tm_univariate(a, v);
    term_map g;
    for (const auto& [d, coef] : u) g = g.empty() ? tm_monic(p, coef) : tm_gcd(p, g, coef);
    return g;
}

inline std::uint32_t tm_degree_in(const term_map& a, std::size_t v) {
    std::uint32_t d = 0;
    for (const auto& [e, c] : a) d = std::max(d, e[v]);
    return d;
}

// leading coefficient w.r.t. variable v
inline term_map tm_lc_in(const term_map& a, std::size_t v) {
    std::uint32_t d = tm_degree_in(a, v);
    term_map r;
    for (const auto& [e, c] : a)
        if (e[v] == d) {
            exp_vec rest = e;
            rest[v] = 0;
            r.emplace(rest, c);
        }
    return r;
}

inline term_map tm_shift(const term_map& a, std::size_t v, std::uint32_t by) {
    term_map r;
    for (const auto& [e, c] : a) {
        exp_vec e2 = e;
        e2[v] += by;
        r.emplace(e2, c);
    }
    return r;
}

// pseudo-remainder of f by g w.r.t. variable v
inline term_map tm_prem(unsigned long p, term_map f, const term_map& g, std::size_t v) {
    std::uint32_t dg = tm_degree_in(g, v);
    term_map lg = tm_lc_in(g, v);
    while (!f.empty()) {
        std::uint32_t df = tm_degree_in(f, v);
        if (df < dg) break;
        term_map lf = tm_lc_in(f, v);
        // f = lg*f - lf * v^(df-dg) * g
        term_map t1 = tm_mul(p, lg, f);
        term_map t2 = tm_mul(p, lf, tm_shift(g, v, df - dg));
        f = tm_add(p, t1, tm_neg(p, t2));
    }
    return f;
}

// Multivariate gcd by primitive pseudo-remainder sequences.  Returns the
// graded-lex monic gcd, so the result is canonical.
inline term_map tm_gcd(unsigned long p, const term_map& a, const term_map& b) {
    if (a.empty()) return tm_monic(p, b);
    if (b.empty()) return tm_monic(p, a);
    auto mv = tm_main_var(a, b);
    if (!mv) return tm_const(a.begin()->first.size(), 1); // nonzero constants
    std::size_t v = *mv;
    term_map ca = tm_content(p, a, v), cb = tm_content(p, b, v);
    term_map f = tm_divexact(p, a, ca), g = tm_divexact(p, b, cb);
    if (tm_degree_in(f, v) < tm_degree_in(g, v)) std::swap(f, g);
    while (!g.empty()) {
        term_map r = tm_prem(p, f, g, v);
        f = std::move(g);
        if (r.empty()) {
            g = term_map{};
        } else {
            term_map cr = tm_content(p, r, v);
            g = tm_divexact(p, r, cr);
        }
    }
    term_map cg = tm_gcd(p, ca, cb);
    return tm_monic(p, tm_mul(p, cg, f));
}

inline term_map tm_lcm(unsigned long p, const term_map& a, const term_map& b) {
    if (a.empty() || b.empty()) return term_map{};
    term_map g = tm_gcd(p, a, b);
    return tm_monic(p, tm_mul(p, tm_divexact(p, a, g), b));
}

inline std::string coef_str(const mpq_class& c) { return c.get_str(); }

inline std::string tm_to_string(unsigned long p, const term_map& t, const std::vector<std::string>& vars) {
    if (t.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        const exp_vec& e = it->first;
        mpq_class c = it->second;
        bool negative = (p == 0 && c < 0);
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        if (negative) c = -c;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            out += coef_str(c);
        } else if (c == 1) {
            out += mono;
        } else {
            out += coef_str(c) + "*" + mono;
        }
        first = false;
    }
    return out;
}

struct frac_rep {
    term_map num, den;
    friend bool operator==(const frac_rep& a, const frac_rep& b) {
        return a.num == b.num && a.den == b.den;
    }
};

// canonical form: gcd-reduced, denominator graded-lex monic
inline frac_rep frac_normalize(unsigned long p, term_map num, term_map den) {
    if (den.empty()) throw division_by_zero("fraction with zero denominator");
    std::size_t nv = den.begin()->first.size();
    if (num.empty()) return frac_rep{term_map{}, tm_const(nv, 1)};
    term_map g = tm_gcd(p, num, den);
    if (!(tm_is_const(g) && !g.empty() && g.begin()->second == 1)) {
        num = tm_divexact(p, num, g);
        den = tm_divexact(p, den, g);
    }
    const mpq_class& lc = tm_lead(den).second;
    if (lc != 1) {
        mpq_class inv = cinv(p, lc);
        num = tm_scale(p, num, inv);
        den = tm_scale(p, den, inv);
    }
    return frac_rep{std::move(num), std::move(den)};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Scalar: an element of one of the four domains, kept in canonical form so
// that equality is payload identity.
// ---------------------------------------------------------------------------

class scalar {
public:
    scalar() = default; // empty scalar; unusable until assigned

    static scalar zero(const domain_ptr& d) { return from_rational(d, mpq_class(0)); }
    static scalar one(const domain_ptr& d) { return from_rational(d, mpq_class(1)); }

    static scalar from_integer(const domain_ptr& d, long v) { return from_rational(d, mpq_class(v)); }

    // Embeds a rational constant (reduced mod p in positive characteristic).
    static scalar from_rational(const domain_ptr& d, const mpq_class& q) {
        check_dom(d);
        mpq_class v = q;
        v.canonicalize();
        unsigned long p = d->characteristic();
        if (p != 0) v = detail::rational_mod_p(v, p);
        switch (d->kind()) {
        case domain_kind::rational:
        case domain_kind::prime_field: return scalar(d, std::move(v));
        case domain_kind::poly: return scalar(d, detail::tm_const(d->var_count(), v));
        case domain_kind::fraction:
            return scalar(d, detail::frac_rep{detail::tm_const(d->var_count(), v),
                                              detail::tm_const(d->var_count(), 1)});
        }
        throw error("unreachable");
    }

    static scalar variable(const domain_ptr& d, std::size_t index, std::uint32_t power = 1) {
        check_dom(d);
        if (d->kind() != domain_kind::poly && d->kind() != domain_kind::fraction)
            throw error("domain has no variables: " + d->str());
        if (index >= d->var_count()) throw error("variable index out of range");
        exp_vec e(d->var_count(), 0);
        e[index] = power;
        term_map t;
        t.emplace(std::move(e), mpq_class(1));
        return make_poly(d, std::move(t));
    }

    // Builds a poly-domain (or fraction-domain) scalar from a raw term map.
    static scalar make_poly(const domain_ptr& d, term_map t) {
        check_dom(d);
        if (d->kind() != domain_kind::poly && d->kind() != domain_kind::fraction)
            throw error("make_poly: domain " + d->str() + " is not polynomial");
        unsigned long p = d->characteristic();
        term_map clean;
        for (auto& [e, c] : t) {
            if (e.size() != d->var_count()) throw error("make_poly: exponent vector arity mismatch");
            mpq_class v = c;
            v.canonicalize();
            detail::tm_add_term(p, clean, e, v);
        }
        if (d->kind() == domain_kind::poly) return scalar(d, std::move(clean));
        return scalar(d, detail::frac_rep{std::move(clean), detail::tm_const(d->var_count(), 1)});
    }

    static scalar make_fraction(const domain_ptr& d, term_map num, term_map den) {
        check_dom(d);
        if (d->kind() != domain_kind::fraction) throw error("make_fraction: not a Fraction domain");
        return scalar(d, detail::frac_normalize(d->characteristic(), std::move(num), std::move(den)));
    }

    static scalar parse(const domain_ptr& d, std::string_view text) {
        return eval_node(d, expr::parse(text));
    }

    const domain_ptr& dom() const {
        if (!dom_) throw error("use of empty scalar");
        return dom_;
    }

    bool is_zero() const {
        switch (dom()->kind()) {
        case domain_kind::rational:
        case domain_kind::prime_field: return rat() == 0;
        case domain_kind::poly: return tm().empty();
        case domain_kind::fraction: return frac().num.empty();
        }
        return false;
    }

    bool is_one() const { return *this == one(dom()); }

    scalar operator-() const {
        unsigned long p = dom()->characteristic();
        switch (dom()->kind()) {
        case domain_kind::rational:
        case domain_kind::prime_field: return scalar(dom_, detail::cneg(p, rat()));
        case domain_kind::poly: return scalar(dom_, detail::tm_neg(p, tm()));
        case domain_kind::fraction:
            return scalar(dom_, detail::frac_rep{detail::tm_neg(p, frac().num), frac().den});
        }
        throw error("unreachable");
    }

    scalar operator+(const scalar& o) const {
        require_same(o);
        unsigned long p = dom()->characteristic();
        switch (dom()->kind()) {
        case domain_kind::rational:
        case domain_kind::prime_field: return scalar(dom_, detail::cadd(p, rat(), o.rat()));
        case domain_kind::poly: return scalar(dom_, detail::tm_add(p, tm(), o.tm()));
        case domain_kind::fraction: {
            const auto& a = frac();
            const auto& b = o.frac();
            term_map num = detail::tm_add(p, detail::tm_mul(p, a.num, b.den),
                                          detail::tm_mul(p, b.num, a.den));
            term_map den = detail::tm_mul(p, a.den, b.den);
            return scalar(dom_, detail::frac_normalize(p, std::move(num), std::move(den)));
        }
        }
        throw error("unreachable");
    }

    scalar operator-(const scalar& o) const { return *this + (-o); }

    scalar operator*(const scalar& o) const {
        require_same(o);
        unsigned long p = dom()->characteristic();
        switch (dom()->kind()) {
        case domain_kind::rational:
        case domain_kind::prime_field: return scalar(dom_, detail::cmul(p, rat(), o.rat()));
        case domain_kind::poly: return scalar(dom_, detail::tm_mul(p, tm(), o.tm()));
        case domain_kind::fraction: {
            const auto& a = frac();
            const auto& b = o.frac();
            return scalar(dom_, detail::frac_normalize(p, detail::tm_mul(p, a.num, b.num),
                                                       detail::tm_mul(p, a.den, b.den)));
        }
        }
        throw error("unreachable");
    }

    // Field division; for Poly domains this is exact division and throws on
    // an inexact quotient.
    scalar operator/(const scalar& o) const {
        require_same(o);
        if (o.is_zero()) throw division_by_zero("scalar division by zero");
        unsigned long p = dom()->characteristic();
        switch (dom()->kind()) {
        case domain_kind::rational:
        case domain_kind::prime_field:
            return scalar(dom_, detail::cmul(p, rat(), detail::cinv(p, o.rat())));
        case domain_kind::poly: return scalar(dom_, detail::tm_divexact(p, tm(), o.tm()));
        case domain_kind::fraction: {
            const auto& a = frac();
            const auto& b = o.frac();
            return scalar(dom_, detail::frac_normalize(p, detail::tm_mul(p, a.num, b.den),
                                                       detail::tm_mul(p, a.den, b.num)));
        }
        }
        throw error("unreachable");
    }

    scalar inverse() const {
        if (!dom()->is_field())
            throw not_a_field("inverse requires a field domain, got " + dom()->str());
        return one(dom_) / *this;
    }

    scalar divexact(const scalar& o) const { return *this / o; }

    scalar pow(std::uint64_t e) const {
        scalar r = one(dom());
        scalar b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const scalar& a, const scalar& b) {
        if (!a.dom_ && !b.dom_) return true;
        if (!a.dom_ || !b.dom_) return false;
        return same_domain(a.dom_, b.dom_) && a.v_ == b.v_;
    }
    friend bool operator!=(const scalar& a, const scalar& b) { return !(a == b); }

    // total order for use as map keys (domain assumed equal)
    friend bool operator<(const scalar& a, const scalar& b) { return a.str() < b.str(); }

    std::string str() const {
        switch (dom()->kind()) {
        case domain_kind::rational:
        case domain_kind::prime_field: return rat().get_str();
        case domain_kind::poly: return detail::tm_to_string(dom_->characteristic(), tm(), dom_->vars());
        case domain_kind::fraction: {
            const auto& f = frac();
            std::string den_one = detail::tm_to_string(dom_->characteristic(),
                                                       detail::tm_const(dom_->var_count(), 1), dom_->vars());
            std::string num = detail::tm_to_string(dom_->characteristic(), f.num, dom_->vars());
            if (f.den == detail::tm_const(dom_->var_count(), 1)) return num;
            (void)den_one;
            return "(" + num + ")/(" +
                   detail::tm_to_string(dom_->characteristic(), f.den, dom_->vars()) + ")";
        }
        }
        throw error("unreachable");
    }

    // Rational (or residue) value of a constant scalar.
    mpq_class rational_value() const {
        switch (dom()->kind()) {
        case domain_kind::rational:
        case domain_kind::prime_field: return rat();
        case domain_kind::poly:
            if (!detail::tm_is_const(tm())) throw error("rational_value: nonconstant polynomial");
            return tm().empty() ? mpq_class(0) : tm().begin()->second;
        case domain_kind::fraction: {
            const auto& f = frac();
            if (!detail::tm_is_const(f.num) || !detail::tm_is_const(f.den))
                throw error("rational_value: nonconstant fraction");
            mpq_class n = f.num.empty() ? mpq_class(0) : f.num.begin()->second;
            mpq_class d = f.den.begin()->second;
            mpq_class r = n / d;
            r.canonicalize();
            return r;
        }
        }
        throw error("unreachable");
    }

    // --- polynomial access ---------------------------------------------------

    const term_map& poly_terms() const {
        if (dom()->kind() != domain_kind::poly) throw error("poly_terms: not a Poly scalar");
        return tm();
    }

    const term_map& numerator_terms() const {
        if (dom()->kind() == domain_kind::poly) return tm();
        if (dom()->kind() == domain_kind::fraction) return frac().num;
        throw error("numerator_terms: not polynomial");
    }

    const term_map& denominator_terms() const {
        if (dom()->kind() != domain_kind::fraction) throw error("denominator_terms: not a Fraction scalar");
        return frac().den;
    }

    bool is_polynomial() const {
        if (dom()->kind() == domain_kind::poly) return true;
        if (dom()->kind() != domain_kind::fraction) return false;
        return frac().den == detail::tm_const(dom_->var_count(), 1);
    }

    std::uint32_t degree_in(std::size_t v) const {
        return detail::tm_degree_in(numerator_terms(), v);
    }

    unsigned long poly_total_degree() const {
        unsigned long d = 0;
        for (const auto& [e, c] : numerator_terms()) d = std::max(d, total_degree(e));
        return d;
    }

    // embed a Poly scalar into the matching Fraction domain
    scalar to_fraction(const domain_ptr& frac_dom) const {
        if (frac_dom->kind() != domain_kind::fraction || !same_domain(dom()->base(), frac_dom->base()) ||
            dom()->vars() != frac_dom->vars())
            throw domain_mismatch("to_fraction: incompatible domains");
        if (dom()->kind() == domain_kind::fraction) return *this;
        return scalar(frac_dom, detail::frac_rep{tm(), detail::tm_const(dom_->var_count(), 1)});
    }

    // extract a denominator-free Fraction scalar as a Poly scalar
    scalar fraction_as_poly(const domain_ptr& poly_dom) const {
        if (dom()->kind() != domain_kind::fraction) throw error("fraction_as_poly: not a fraction");
        if (!is_polynomial()) throw error("fraction_as_poly: denominator is not 1");
        return scalar(poly_dom, frac().num);
    }

private:
    using payload = std::variant<mpq_class, term_map, detail::frac_rep>;

    scalar(domain_ptr d, mpq_class v) : dom_(std::move(d)), v_(std::move(v)) {}
    scalar(domain_ptr d, term_map v) : dom_(std::move(d)), v_(std::move(v)) {}
    scalar(domain_ptr d, detail::frac_rep v) : dom_(std::move(d)), v_(std::move(v)) {}

    static void check_dom(const domain_ptr& d) {
        if (!d) throw error("null scalar domain");
    }

    void require_same(const scalar& o) const {
        if (!same_domain(dom(), o.dom()))
            throw domain_mismatch("scalar domains differ: " + dom()->str() + " vs " + o.dom()->str());
    }

    const mpq_class& rat() const { return std::get<mpq_class>(v_); }
    const term_map& tm() const { return std::get<term_map>(v_); }
    const detail::frac_rep& frac() const { return std::get<detail::frac_rep>(v_); }

    static scalar eval_node(const domain_ptr& d, const expr::node& n) {
        using K = expr::node::kind;
        switch (n.k) {
        case K::integer: return from_rational(d, mpq_class(n.value));
        case K::variable: {
            auto idx = d->var_index(n.name);
            if (!idx) throw parse_error("unknown variable '" + n.name + "' in domain " + d->str());
            return variable(d, *idx);
        }
        case K::negate: return -eval_node(d, n.children[0]);
        case K::sum: {
            scalar r = zero(d);
            for (const auto& c : n.children) r = r + eval_node(d, c);
            return r;
        }
        case K::product: {
            scalar r = one(d);
            for (const auto& c : n.children) r = r * eval_node(d, c);
            return r;
        }
        case K::power: return eval_node(d, n.children[0]).pow(n.exponent);
        case K::divide: return eval_node(d, n.children[0]) / eval_node(d, n.children[1]);
        }
        throw error("unreachable");
    }

    domain_ptr dom_;
    payload v_;
};

} // namespace hopfore
