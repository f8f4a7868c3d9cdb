#pragma once

#include <map>
#include <string>
#include <vector>

#include "hopfore/matrix.hpp"
#include "hopfore/ore.hpp"

namespace hopfore {

// ---------------------------------------------------------------------------
// Central subrings of derivation-type towers in characteristic p.  A central
// basis carries one generator per level, c_j monic of leading exponent
// D_j = p^{k_j} in x_j; the tower is free over B' = F[c_0 .. c_{n-1}] with
// monomial basis {x^e : e_j < D_j}.  Coordinates are polynomials in the
// substitution variables u_j standing for c_j.
// ---------------------------------------------------------------------------

struct central_basis {
    tower_ptr tower;
    std::size_t levels = 0; // generators cover levels < this
    std::vector<ore_element> generators;
    std::vector<unsigned long> exponents; // D_j
    std::vector<unsigned long> kexp;      // k_j, D_j = p^{k_j}
    domain_ptr u_domain;                  // Poly(F, u_0 .. u_{n-1}), n = tower levels
};

inline central_basis make_central_basis(const tower_ptr& tw, std::size_t levels,
                                        std::vector<ore_element> gens,
                                        std::vector<unsigned long> exps,
                                        std::vector<unsigned long> ks) {
    central_basis cb;
    cb.tower = tw;
    cb.levels = levels;
    cb.generators = std::move(gens);
    cb.exponents = std::move(exps);
    cb.kexp = std::move(ks);
    std::vector<std::string> unames;
    for (std::size_t j = 0; j < tw->levels(); ++j) unames.push_back("u" + std::to_string(j));
    cb.u_domain = scalar_domain::poly(tw->coeff, unames);
    return cb;
}

enum class reduction_strategy { max_term_first, min_term_first };

using btilde_map = std::map<exp_vec, scalar, grlex_less>; // basis monomial -> u-polynomial

namespace detail {

inline std::optional<std::size_t> reducible_level(const central_basis& cb, const exp_vec& e) {
    for (std::size_t j = cb.levels; j-- > 0;)
        if (e[j] >= cb.exponents[j]) return j;
    return std::nullopt;
}

} // namespace detail

// Division by the central generators: x^e with e_j >= D_j rewrites through
// c_j = x_j^{D_j} + r_j as c_j x^{e - D_j e_j} minus the r_j correction.
// The x_j-exponent of every correction term drops, so the worklist ends with
// all monomials inside the basis.
inline btilde_map to_btilde(const central_basis& cb, const ore_element& f,
                            reduction_strategy strat) {
    const tower_ptr& tw = cb.tower;
    if (!f.supported_below(cb.levels))
        throw variable_out_of_level("element not inside the covered levels");
    std::map<exp_vec, ore_element, grlex_less> work;
    work.emplace(exp_vec(tw->levels(), 0), f);
    btilde_map out;
    while (!work.empty()) {
        auto it = work.begin();
        exp_vec q = it->first;
        ore_element elem = it->second;
        const ore_terms& terms = elem.terms();
        std::optional<std::pair<exp_vec, scalar>> target;
        std::optional<std::size_t> level;
        if (strat == reduction_strategy::max_term_first) {
            for (auto t = terms.rbegin(); t != terms.rend(); ++t)
                if (auto j = detail::reducible_level(cb, t->first)) {
                    target = {t->first, t->second};
                    level = j;
                    break;
                }
        } else {
            for (auto t = terms.begin(); t != terms.end(); ++t)
                if (auto j = detail::reducible_level(cb, t->first)) {
                    target = {t->first, t->second};
                    level = j;
                    break;
                }
        }
        if (!target) {
            for (const auto& [e, c] : terms) {
                term_map mono;
                mono.emplace(q, c.rational_value());
                scalar add = scalar::make_poly(cb.u_domain, mono);
                auto slot = out.find(e);
                if (slot == out.end())
                    out.emplace(e, add);
                else {
                    slot->second = slot->second + add;
                    if (slot->second.is_zero()) out.erase(slot);
                }
            }
            work.erase(it);
            continue;
        }
        const auto& [e, c] = *target;
        std::size_t j = *level;
        elem = elem - ore_element::monomial(tw, e, c);
        exp_vec reduced = e;
        reduced[j] -= static_cast<std::uint32_t>(cb.exponents[j]);
        exp_vec q2 = q;
        q2[j] += 1;
        ore_element carry = ore_element::monomial(tw, reduced, c);
        // r_j = c_j - x_j^{D_j}
        exp_vec lead(tw->levels(), 0);
        lead[j] = static_cast<std::uint32_t>(cb.exponents[j]);
        ore_element rj = cb.generators[j] - ore_element::monomial(tw, lead, scalar::one(tw->coeff));
        if (!rj.is_zero()) {
            exp_vec low(tw->levels(), 0), rest(tw->levels(), 0);
            for (std::size_t v = 0; v < j; ++v) low[v] = e[v];
            rest[j] = reduced[j];
            for (std::size_t v = j + 1; v < tw->levels(); ++v) rest[v] = e[v];
            ore_element corr = ore_element::monomial(tw, low, scalar::one(tw->coeff)) * rj *
                               ore_element::monomial(tw, rest, scalar::one(tw->coeff));
            elem = elem - corr.scaled(c);
        }
        if (elem.is_zero())
            work.erase(it);
        else
            work.insert_or_assign(it, q, elem); // hint keeps position
        auto slot = work.find(q2);
        if (slot == work.end())
            work.emplace(q2, carry);
        else {
            slot->second = slot->second + carry;
            if (slot->second.is_zero()) work.erase(slot);
        }
    }
    return out;
}

// both strategies must land on the same coordinates
inline btilde_map to_btilde_checked(const central_basis& cb, const ore_element& f) {
    btilde_map a = to_btilde(cb, f, reduction_strategy::max_term_first);
    btilde_map b = to_btilde(cb, f, reduction_strategy::min_term_first);
    if (a != b)
        throw reduction_mismatch("division strategies disagree on " + f.str());
    return a;
}

// substitute u_j -> c_j in a coordinate polynomial
inline ore_element eval_upoly(const central_basis& cb, const scalar& upoly) {
    const tower_ptr& tw = cb.tower;
    ore_element out = ore_element::zero(tw);
    for (const auto& [q, coeff] : upoly.poly_terms()) {
        ore_element term = ore_element::constant(tw, scalar::from_rational(tw->coeff, coeff));
        for (std::size_t j = 0; j < q.size(); ++j)
            for (std::uint32_t t = 0; t < q[j]; ++t) term = term * cb.generators[j];
        out = out + term;
    }
    return out;
}

inline ore_element from_btilde(const central_basis& cb, const btilde_map& coords) {
    ore_element out = ore_element::zero(cb.tower);
    for (const auto& [e, upoly] : coords)
        out = out + eval_upoly(cb, upoly) *
                        ore_element::monomial(cb.tower, e, scalar::one(cb.tower->coeff));
    return out;
}

// the monomial basis {x^e : e_j < D_j} below cb.levels, graded order
inline std::vector<exp_vec> btilde_basis_monomials(const central_basis& cb) {
    std::vector<exp_vec> out;
    exp_vec cur(cb.tower->levels(), 0);
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == cb.levels) {
            out.push_back(cur);
            return;
        }
        for (unsigned long e = 0; e < cb.exponents[pos]; ++e) {
            cur[pos] = static_cast<std::uint32_t>(e);
            self(self, pos + 1);
        }
        cur[pos] = 0;
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), grlex_less{});
    return out;
}

// ---------------------------------------------------------------------------
// p-polynomials.  For the derivation d at `level` acting B'-linearly on the
// free module below, find the least k with
//   d^{p^k} = sum_{t<k} a_t d^{p^t},  a_t in B',
// giving the central witness Theta = x^{p^k} - sum a_t x^{p^t}.  d = 0 yields
// k = 0 and Theta = x.  Small modules are cross-checked through the
// characteristic polynomial of the derivation matrix.
// ---------------------------------------------------------------------------

struct p_polynomial {
    std::size_t k = 0;
    std::vector<scalar> coeffs; // a_0 .. a_{k-1} as u-polynomials
    ore_element witness;
};

namespace detail {

inline matrix derivation_matrix(const central_basis& cb, std::size_t level,
                                const std::vector<exp_vec>& basis) {
    std::map<exp_vec, std::size_t, grlex_less> index;
    for (std::size_t t = 0; t < basis.size(); ++t) index.emplace(basis[t], t);
    matrix M(cb.u_domain, basis.size(), basis.size());
    for (std::size_t colv = 0; colv < basis.size(); ++colv) {
        ore_element m =
            ore_element::monomial(cb.tower, basis[colv], scalar::one(cb.tower->coeff));
        btilde_map coords = to_btilde_checked(cb, apply_derivation(m, level));
        for (const auto& [e, upoly] : coords) {
            auto it = index.find(e);
            if (it == index.end()) throw not_free_over_base("derivation image left the basis");
            M.at(it->second, colv) = upoly;
        }
    }
    return M;
}

// solve rhs = sum_t lambda_t cols[t] over Frac(B'), polynomial solutions only
inline std::optional<std::vector<scalar>> polynomial_dependence(
    const domain_ptr& frac_dom, const std::vector<std::vector<scalar>>& cols,
    const std::vector<scalar>& rhs) {
    std::size_t rows = rhs.size();
    matrix A(frac_dom, rows, cols.size());
    std::vector<scalar> b;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t t = 0; t < cols.size(); ++t)
            A.at(r, t) = cols[t][r].to_fraction(frac_dom);
        b.push_back(rhs[r].to_fraction(frac_dom));
    }
    auto sol = solve_linear(A, b);
    if (!sol) return std::nullopt;
    std::vector<scalar> out;
    for (const auto& lam : sol->particular) {
        if (!lam.is_polynomial()) return std::nullopt;
        out.push_back(lam.fraction_as_poly(frac_dom->poly_part()));
    }
    return out;
}

inline std::vector<scalar> flatten(const matrix& M) {
    std::vector<scalar> v;
    for (std::size_t r = 0; r < M.rows(); ++r)
        for (std::size_t c = 0; c < M.cols(); ++c) v.push_back(M.at(r, c));
    return v;
}

inline ore_element build_witness(const central_basis& cb, std::size_t level, std::size_t k,
                                 const std::vector<scalar>& coeffs, unsigned long p) {
    const tower_ptr& tw = cb.tower;
    unsigned long top = 1;
    for (std::size_t t = 0; t < k; ++t) top *= p;
    exp_vec e(tw->levels(), 0);
    e[level] = static_cast<std::uint32_t>(top);
    ore_element w = ore_element::monomial(tw, e, scalar::one(tw->coeff));
    unsigned long pt = 1;
    for (std::size_t t = 0; t < k; ++t, pt *= p) {
        if (coeffs[t].is_zero()) continue;
        exp_vec et(tw->levels(), 0);
        et[level] = static_cast<std::uint32_t>(pt);
        w = w - eval_upoly(cb, coeffs[t]) *
                    ore_element::monomial(tw, et, scalar::one(tw->coeff));
    }
    return w;
}

// check sum-form annihilation d^{p^k} = sum a_t d^{p^t} on every basis
// monomial by literally iterating the derivation
inline void verify_annihilates(const central_basis& cb, std::size_t level, std::size_t k,
                               const std::vector<scalar>& coeffs,
                               const std::vector<exp_vec>& basis, unsigned long p) {
    std::vector<ore_element> acoeff;
    for (const auto& a : coeffs) acoeff.push_back(eval_upoly(cb, a));
    for (const auto& e : basis) {
        ore_element cur = ore_element::monomial(cb.tower, e, scalar::one(cb.tower->coeff));
        std::vector<ore_element> milestones; // d^{p^t} of the monomial
        unsigned long applied = 0, want = 1;
        for (std::size_t t = 0; t <= k; ++t) {
            while (applied < want) {
                cur = apply_derivation(cur, level);
                ++applied;
            }
            milestones.push_back(cur);
            want *= p;
        }
        ore_element acc = milestones[k];
        for (std::size_t t = 0; t < k; ++t)
            if (!coeffs[t].is_zero()) acc = acc - acoeff[t] * milestones[t];
        if (!acc.is_zero())
            throw centrality_failed("p-polynomial fails to annihilate " +
                                    ore_element::monomial(cb.tower, e,
                                                          scalar::one(cb.tower->coeff))
                                        .str());
    }
}

// remainder arithmetic modulo the monic characteristic polynomial
struct modpoly {
    const std::vector<scalar>* f; // ascending, monic, degree n
    domain_ptr dom;

    std::vector<scalar> reduce(std::vector<scalar> v) const {
        std::size_t n = f->size() - 1;
        for (std::size_t d = v.size(); d-- > n;) {
            if (v[d].is_zero()) continue;
            scalar c = v[d];
            for (std::size_t i = 0; i <= n; ++i) {
                scalar& slot = v[d - n + i];
                slot = slot - c * (*f)[i];
            }
        }
        v.resize(n, scalar::zero(dom));
        return v;
    }

    std::vector<scalar> mul(const std::vector<scalar>& a, const std::vector<scalar>& b) const {
        std::vector<scalar> v(a.size() + b.size() - 1, scalar::zero(dom));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.size(); ++j) v[i + j] = v[i + j] + a[i] * b[j];
        }
        return reduce(std::move(v));
    }
};

// independent route: remainders of z^{p^t} modulo the characteristic
// polynomial of the derivation matrix must admit their own polynomial
// dependence, and the resulting p-polynomial must annihilate d as well
inline void char_poly_cross_check(const central_basis& cb, std::size_t level,
                                  const matrix& Md, const std::vector<exp_vec>& basis,
                                  unsigned long p, unsigned long kmax) {
    std::vector<scalar> f = char_poly(Md);
    std::size_t n = f.size() - 1;
    modpoly ring{&f, cb.u_domain};
    std::vector<std::vector<scalar>> rs;
    std::vector<scalar> z(n, scalar::zero(cb.u_domain));
    if (n == 1)
        z[0] = -f[0];
    else
        z[1] = scalar::one(cb.u_domain);
    rs.push_back(z);
    domain_ptr frac = scalar_domain::fraction(cb.u_domain);
    for (unsigned long k2 = 1; k2 <= kmax; ++k2) {
        std::vector<scalar> nxt = rs.back();
        for (unsigned long t = 1; t < p; ++t) nxt = ring.mul(nxt, rs.back());
        rs.push_back(nxt);
        auto dep = polynomial_dependence(
            frac, std::vector<std::vector<scalar>>(rs.begin(), rs.end() - 1), rs.back());
        if (dep) {
            verify_annihilates(cb, level, k2, *dep, basis, p);
            return;
        }
    }
    throw p_polynomial_search_exceeded("characteristic polynomial route found no dependence");
}

} // namespace detail

inline p_polynomial p_polynomial_for_derivation(const central_basis& cb, std::size_t level,
                                                unsigned long kmax = 6) {
    const tower_ptr& tw = cb.tower;
    unsigned long p = tw->coeff->characteristic();
    if (p == 0) throw error("p-polynomials require positive characteristic");
    if (cb.levels != level) throw variable_out_of_level("central basis must cover exactly the levels below");
    p_polynomial out;
    if (tw->derivation_is_zero(level)) {
        out.k = 0;
        out.witness = ore_element::variable(tw, level);
        return out;
    }
    for (const auto& g : cb.generators)
        if (!apply_derivation(g, level).is_zero())
            throw centrality_failed("derivation does not annihilate the central subring");
    auto basis = btilde_basis_monomials(cb);
    matrix Md = detail::derivation_matrix(cb, level, basis);
    if (Md.is_zero()) {
        out.k = 0;
        out.witness = ore_element::variable(tw, level);
        return out;
    }
    std::vector<matrix> powers = {Md};
    domain_ptr frac = scalar_domain::fraction(cb.u_domain);
    for (unsigned long k = 1; k <= kmax; ++k) {
        matrix next = powers.back();
        for (unsigned long t = 1; t < p; ++t) next = next * powers.back();
        powers.push_back(next);
        std::vector<std::vector<scalar>> cols;
        for (unsigned long t = 0; t < k; ++t) cols.push_back(detail::flatten(powers[t]));
        auto dep = detail::polynomial_dependence(frac, cols, detail::flatten(powers[k]));
        if (!dep) continue;
        out.k = k;
        out.coeffs = *dep;
        out.witness = detail::build_witness(cb, level, k, out.coeffs, p);
        detail::verify_annihilates(cb, level, k, out.coeffs, basis, p);
        if (basis.size() <= 9) detail::char_poly_cross_check(cb, level, Md, basis, p, kmax);
        return out;
    }
    throw p_polynomial_search_exceeded("no p-polynomial of exponent <= p^" +
                                       std::to_string(kmax));
}

// ---------------------------------------------------------------------------
// The central tower.  Levels are processed in order; a level with nonzero
// derivation first Frobenius-powers every current generator (c -> c^p keeps
// centrality and is killed by any derivation), then contributes its own
// p-polynomial witness.  Commutative levels contribute the variable itself.
// ---------------------------------------------------------------------------

struct central_tower_data {
    central_basis basis;
    std::vector<p_polynomial> polys;
    mpz_class rank;
    unsigned long s = 0;
};

inline central_tower_data central_tower(const tower_ptr& tw, unsigned long kmax = 6) {
    unsigned long p = tw->coeff->characteristic();
    if (p == 0) throw error("central towers require positive characteristic");
    central_tower_data out;
    std::vector<ore_element> gens;
    std::vector<unsigned long> exps, ks;
    for (std::size_t i = 0; i < tw->levels(); ++i) {
        if (!tw->derivation_is_zero(i)) {
            for (std::size_t j = 0; j < gens.size(); ++j) {
                gens[j] = gens[j].pow(p);
                exps[j] *= p;
                ks[j] += 1;
            }
        }
        central_basis cb = make_central_basis(tw, i, gens, exps, ks);
        p_polynomial pp = p_polynomial_for_derivation(cb, i, kmax);
        unsigned long D = 1;
        for (std::size_t t = 0; t < pp.k; ++t) D *= p;
        gens.push_back(pp.witness);
        exps.push_back(D);
        ks.push_back(pp.k);
        out.polys.push_back(std::move(pp));
    }
    for (const auto& g : gens)
        if (!is_central(g))
            throw centrality_failed("generator " + g.str() + " is not central in the full tower");
    out.basis = make_central_basis(tw, tw->levels(), std::move(gens), std::move(exps),
                                   std::move(ks));
    out.rank = 1;
    for (unsigned long D : out.basis.exponents) out.rank *= D;
    for (unsigned long k : out.basis.kexp) out.s += k;
    return out;
}

// ---------------------------------------------------------------------------
// Freeness evidence: every monomial up to max_degree must divide into basis
// coordinates under both strategies and recompose exactly.
// ---------------------------------------------------------------------------

struct freeness_report {
    mpz_class rank;
    unsigned long s = 0;
    std::size_t monomials_checked = 0;
};

inline freeness_report verify_freeness_rank(const central_basis& cb, std::size_t max_degree) {
    freeness_report rep;
    rep.rank = 1;
    for (unsigned long D : cb.exponents) rep.rank *= D;
    for (unsigned long k : cb.kexp) rep.s += k;
    for (const auto& e : monomials_up_to_degree(cb.tower, max_degree, cb.levels)) {
        ore_element m = ore_element::monomial(cb.tower, e, scalar::one(cb.tower->coeff));
        btilde_map coords = to_btilde_checked(cb, m);
        for (const auto& [be, upoly] : coords)
            if (detail::reducible_level(cb, be))
                throw not_free_over_base("coordinates escaped the basis");
        if (from_btilde(cb, coords) != m)
            throw not_free_over_base("recomposition mismatch at " + m.str());
        ++rep.monomials_checked;
    }
    return rep;
}

} // namespace hopfore
