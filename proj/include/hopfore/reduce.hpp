#pragma once

#include <set>
#include <vector>

#include "hopfore/action.hpp"
#include "hopfore/charp.hpp"

namespace hopfore {

// ---------------------------------------------------------------------------
// Reduction of a rational input to prime characteristic.  The structure
// constants of the Hopf algebra, both normalized integrals, the action images
// and the derivation images generate a subring Z[1/N]; primes away from N
// transport the whole setup without loss.
// ---------------------------------------------------------------------------

struct structure_constant_ring {
    std::vector<mpq_class> values; // deduped nonzero structure scalars
    mpz_class denominator_lcm;     // N: the ring is Z[1/N]
};

inline structure_constant_ring make_structure_constant_ring(const action_spec& spec) {
    if (spec.hopf.dom->kind() != domain_kind::rational)
        throw error("structure constants are collected over the rationals");
    std::set<mpq_class> seen;
    auto put = [&](const scalar& s) {
        mpq_class v = s.rational_value();
        if (v != 0) seen.insert(v);
    };
    const hopf_data& h = spec.hopf;
    for (const auto& s : h.mult) put(s);
    for (const auto& s : h.comult) put(s);
    for (const auto& s : h.antipode) put(s);
    for (const auto& s : h.counit) put(s);
    for (const auto& s : h.unit) put(s);
    integral_result ir = find_left_integral(h);
    if (!ir.normalized) throw not_semisimple("no normalized left integral");
    for (const auto& s : *ir.normalized) put(s);
    integral_result dr = find_left_integral(dual_hopf(h));
    if (!dr.normalized) throw not_semisimple("dual side: no normalized left integral");
    for (const auto& s : *dr.normalized) put(s);
    for (const auto& row : spec.image)
        for (const auto& img : row)
            for (const auto& [e, c] : img.terms()) put(c);
    for (const auto& level : spec.tower->deriv)
        for (const auto& img : level)
            for (const auto& [e, c] : img) put(c);
    structure_constant_ring ring;
    ring.denominator_lcm = 1;
    for (const auto& v : seen) {
        ring.values.push_back(v);
        mpz_lcm(ring.denominator_lcm.get_mpz_t(), ring.denominator_lcm.get_mpz_t(),
                v.get_den().get_mpz_t());
    }
    return ring;
}

// first `count` primes p > floor, coprime to N and to every extra scalar
inline std::vector<unsigned long> good_primes(const structure_constant_ring& ring,
                                              std::size_t count, const mpz_class& floor,
                                              const std::vector<mpq_class>& extras = {}) {
    std::vector<unsigned long> out;
    mpz_class p = floor < 1 ? mpz_class(1) : floor;
    while (out.size() < count) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (!p.fits_ulong_p()) throw error("good prime search left the machine word range");
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), ring.denominator_lcm.get_mpz_t());
        if (g != 1) continue;
        bool ok = true;
        for (const auto& x : extras) {
            if (mpz_divisible_p(x.get_num().get_mpz_t(), p.get_mpz_t()) ||
                mpz_divisible_p(x.get_den().get_mpz_t(), p.get_mpz_t())) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(p.get_ui());
    }
    return out;
}

// --- transport to F_p ------------------------------------------------------

inline scalar reduce_scalar_mod_p(const scalar& s, const domain_ptr& fp) {
    return scalar::from_rational(fp, s.rational_value());
}

inline hopf_data reduce_hopf_mod_p(const hopf_data& h, unsigned long p) {
    if (h.dom->kind() != domain_kind::rational)
        throw error("reduction starts from a rational Hopf algebra");
    domain_ptr fp = scalar_domain::prime_field(p);
    hopf_data out = hopf_data::empty(fp, h.dim);
    out.basis_names = h.basis_names;
    auto conv = [&](const std::vector<scalar>& src, std::vector<scalar>& dst) {
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] = reduce_scalar_mod_p(src[i], fp);
    };
    conv(h.unit, out.unit);
    conv(h.mult, out.mult);
    conv(h.comult, out.comult);
    conv(h.antipode, out.antipode);
    conv(h.counit, out.counit);
    return out;
}

inline tower_ptr reduce_tower_mod_p(const tower_ptr& tw, unsigned long p) {
    if (tw->coeff->kind() != domain_kind::rational)
        throw error("reduction starts from a rational tower");
    domain_ptr fp = scalar_domain::prime_field(p);
    auto out = std::make_shared<ore_tower>();
    out->coeff = fp;
    out->vars = tw->vars;
    out->degree_bound = tw->degree_bound;
    out->deriv.resize(tw->deriv.size());
    for (std::size_t i = 0; i < tw->deriv.size(); ++i) {
        out->deriv[i].resize(tw->deriv[i].size());
        for (std::size_t j = 0; j < tw->deriv[i].size(); ++j)
            for (const auto& [e, c] : tw->deriv[i][j]) {
                scalar r = reduce_scalar_mod_p(c, fp);
                if (!r.is_zero()) out->deriv[i][j].emplace(e, r);
            }
    }
    return out;
}

inline action_spec reduce_action_mod_p(const action_spec& spec, unsigned long p) {
    action_spec out;
    out.hopf = reduce_hopf_mod_p(spec.hopf, p);
    out.tower = reduce_tower_mod_p(spec.tower, p);
    domain_ptr fp = out.hopf.dom;
    out.image.resize(spec.image.size());
    for (std::size_t i = 0; i < spec.image.size(); ++i)
        for (const auto& img : spec.image[i]) {
            ore_element r = ore_element::zero(out.tower);
            for (const auto& [e, c] : img.terms()) {
                scalar v = reduce_scalar_mod_p(c, fp);
                if (!v.is_zero()) r = r + ore_element::monomial(out.tower, e, v);
            }
            out.image[i].push_back(r);
        }
    return out;
}

// Transport of a faithfulness certificate: reduce the Gram matrix entrywise
// and take the determinant over F_p; this must agree with the rational
// determinant reduced directly.
inline scalar certificate_mod_p(const faithfulness_certificate& cert, unsigned long p) {
    domain_ptr fp = scalar_domain::prime_field(p);
    matrix g(fp, cert.gram.rows(), cert.gram.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            g.at(i, j) = reduce_scalar_mod_p(cert.gram.at(i, j), fp);
    scalar det = determinant(g);
    if (det != reduce_scalar_mod_p(cert.det_value, fp))
        throw reduction_mismatch("determinant transport disagrees mod " + std::to_string(p));
    return det;
}

// --- subdirect detection ---------------------------------------------------

// For each value, the first site where its residue is nonzero.  A family of
// good primes separates Z[1/N]: every nonzero value must be detected.
struct subdirect_report {
    std::vector<std::optional<std::size_t>> first_site;
    bool all_detected = true;
};

inline subdirect_report subdirect_injectivity_check(const std::vector<mpq_class>& values,
                                                    const std::vector<unsigned long>& sites) {
    subdirect_report rep;
    for (const auto& v : values) {
        std::optional<std::size_t> hit;
        if (v != 0)
            for (std::size_t s = 0; s < sites.size(); ++s) {
                if (mpz_divisible_ui_p(v.get_den().get_mpz_t(), sites[s])) continue;
                if (detail::rational_mod_p(v, sites[s]) != 0) {
                    hit = s;
                    break;
                }
            }
        rep.first_site.push_back(hit);
        if (v != 0 && !hit) rep.all_detected = false;
    }
    return rep;
}

} // namespace hopfore
