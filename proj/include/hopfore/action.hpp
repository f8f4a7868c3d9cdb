#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hopfore/hopf.hpp"
#include "hopfore/matrix.hpp"
#include "hopfore/ore.hpp"

namespace hopfore {

// ---------------------------------------------------------------------------
// A Hopf algebra acting on an Ore tower.  image[a][j] is b_a . x_j; the
// action extends to all normal-form monomials through the comultiplication,
//   b . (x_j m) = sum b_(1).x_j * b_(2).m,   b . 1 = eps(b) 1.
// ---------------------------------------------------------------------------

struct action_spec {
    hopf_data hopf;
    tower_ptr tower;
    std::vector<std::vector<ore_element>> image;
};

class action_evaluator {
  public:
    explicit action_evaluator(action_spec spec) : spec_(std::move(spec)) {
        if (!(*spec_.hopf.dom == *spec_.tower->coeff))
            throw domain_mismatch("Hopf algebra and tower have different coefficient fields");
        if (spec_.image.size() != spec_.hopf.dim)
            throw validation_error("action image table needs one row per basis element");
        for (const auto& row : spec_.image)
            if (row.size() != spec_.tower->levels())
                throw validation_error("action image row needs one entry per tower variable");
    }

    const action_spec& spec() const { return spec_; }

    // b_i applied to the normal-form monomial x^e, memoized
    const ore_element& act_basis(std::size_t i, const exp_vec& e) {
        auto key = std::make_pair(i, e);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        const hopf_data& h = spec_.hopf;
        ore_element out = ore_element::zero(spec_.tower);
        std::size_t j = 0;
        while (j < e.size() && e[j] == 0) ++j;
        if (j == e.size()) {
            out = ore_element::constant(spec_.tower, h.counit[i]);
        } else {
            exp_vec rest = e;
            rest[j] -= 1;
            for (std::size_t a = 0; a < h.dim; ++a)
                for (std::size_t b = 0; b < h.dim; ++b) {
                    const scalar& ci = h.c(i, a, b);
                    if (ci.is_zero()) continue;
                    const ore_element& tail = act_basis(b, rest);
                    if (tail.is_zero()) continue;
                    out = out + (spec_.image[a][j] * tail).scaled(ci);
                }
        }
        return memo_.emplace(std::move(key), std::move(out)).first->second;
    }

    ore_element act(const std::vector<scalar>& h, const ore_element& f) {
        ore_element out = ore_element::zero(spec_.tower);
        for (std::size_t i = 0; i < spec_.hopf.dim; ++i) {
            if (h[i].is_zero()) continue;
            for (const auto& [e, c] : f.terms()) out = out + act_basis(i, e).scaled(h[i] * c);
        }
        return out;
    }

  private:
    action_spec spec_;
    std::map<std::pair<std::size_t, exp_vec>, ore_element> memo_;
};

// ---------------------------------------------------------------------------
// Module-algebra validation on all monomials of degree <= max_degree:
//   1. the unit acts as the identity,
//   2. b_i . (b_j . m) = (b_i b_j) . m,
//   3. the action respects every Ore relation x_k x_j = x_j x_k + d_k(x_j).
// ---------------------------------------------------------------------------

inline std::vector<std::string> validate_module_algebra(action_evaluator& ev,
                                                        std::size_t max_degree) {
    std::vector<std::string> report;
    const action_spec& spec = ev.spec();
    const hopf_data& h = spec.hopf;
    const tower_ptr& tw = spec.tower;
    auto monos = monomials_up_to_degree(tw, max_degree, tw->levels());

    for (const auto& e : monos) {
        ore_element m = ore_element::monomial(tw, e, scalar::one(tw->coeff));
        if (ev.act(h.unit, m) != m) {
            report.push_back("unit: 1 does not fix " + m.str());
            break;
        }
    }

    for (std::size_t i = 0; i < h.dim; ++i) {
        bool stop = false;
        for (std::size_t j = 0; j < h.dim && !stop; ++j) {
            bool bad = false;
            for (const auto& e : monos) {
                ore_element lhs = ev.act(h.basis_vector(i), ev.act_basis(j, e));
                ore_element rhs = ore_element::zero(tw);
                for (std::size_t k = 0; k < h.dim; ++k)
                    if (!h.m(i, j, k).is_zero()) rhs = rhs + ev.act_basis(k, e).scaled(h.m(i, j, k));
                if (lhs != rhs) {
                    report.push_back("associativity: (b_" + std::to_string(i) + " b_" +
                                     std::to_string(j) + ") . " +
                                     ore_element::monomial(tw, e, scalar::one(tw->coeff)).str() +
                                     " disagrees with iterated action");
                    bad = true;
                    break;
                }
            }
            if (bad) stop = true;
        }
        if (stop) break;
    }

    for (std::size_t i = 0; i < h.dim; ++i) {
        bool bad = false;
        for (std::size_t k = 0; k < tw->levels() && !bad; ++k)
            for (std::size_t j = 0; j < k; ++j) {
                ore_element lhs = ore_element::zero(tw);
                ore_element rhs = ore_element::zero(tw);
                for (std::size_t a = 0; a < h.dim; ++a)
                    for (std::size_t b = 0; b < h.dim; ++b) {
                        const scalar& ci = h.c(i, a, b);
                        if (ci.is_zero()) continue;
                        lhs = lhs + (spec.image[a][k] * spec.image[b][j]).scaled(ci);
                        rhs = rhs + (spec.image[a][j] * spec.image[b][k]).scaled(ci);
                    }
                ore_element dk = ore_element::zero(tw);
                for (const auto& [e, c] : tw->deriv[k][j])
                    dk = dk + ore_element::monomial(tw, e, c);
                rhs = rhs + ev.act(h.basis_vector(i), dk);
                if (lhs != rhs) {
                    report.push_back("relation: b_" + std::to_string(i) + " . (" + tw->vars[k] +
                                     " " + tw->vars[j] + " relation) is not respected");
                    bad = true;
                    break;
                }
            }
        if (bad) break;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Annihilators of tensor powers.  The action on A^(x)m goes through the
// iterated comultiplication; tensors of normal-form monomials with all
// components of degree <= max_degree sample the module.
// ---------------------------------------------------------------------------

namespace detail {

using tensor_terms = std::map<std::vector<std::uint32_t>, scalar>;

struct tensor_act_cache {
    action_evaluator* ev;
    std::size_t power;
    const std::vector<exp_vec>* tuple;
    std::map<std::pair<std::size_t, std::size_t>, tensor_terms> memo; // (i, pos)

    const tensor_terms& run(std::size_t i, std::size_t pos) {
        auto key = std::make_pair(i, pos);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const hopf_data& h = ev->spec().hopf;
        tensor_terms out;
        if (pos + 1 == power) {
            for (const auto& [e, c] : ev->act_basis(i, (*tuple)[pos]).terms()) {
                std::vector<std::uint32_t> key1(e.begin(), e.end());
                out.emplace(std::move(key1), c);
            }
        } else {
            for (std::size_t a = 0; a < h.dim; ++a)
                for (std::size_t b = 0; b < h.dim; ++b) {
                    const scalar& ci = h.c(i, a, b);
                    if (ci.is_zero()) continue;
                    const ore_element& head = ev->act_basis(a, (*tuple)[pos]);
                    if (head.is_zero()) continue;
                    const tensor_terms& rest = run(b, pos + 1);
                    for (const auto& [e, c] : head.terms())
                        for (const auto& [re, rc] : rest) {
                            std::vector<std::uint32_t> k2(e.begin(), e.end());
                            k2.insert(k2.end(), re.begin(), re.end());
                            scalar v = ci * c * rc;
                            auto [slot, fresh] = out.emplace(std::move(k2), v);
                            if (!fresh) {
                                slot->second = slot->second + v;
                                if (slot->second.is_zero()) out.erase(slot);
                            }
                        }
                }
        }
        return memo.emplace(key, std::move(out)).first->second;
    }
};

// restrict the span of `start` to the vectors killing every m-tuple
inline std::vector<std::vector<scalar>> cut_by_tensor_power(
    action_evaluator& ev, std::size_t power, std::size_t max_degree,
    std::vector<std::vector<scalar>> basis) {
    const domain_ptr& dom = ev.spec().hopf.dom;
    const std::size_t d = ev.spec().hopf.dim;
    auto monos = monomials_up_to_degree(ev.spec().tower, max_degree, ev.spec().tower->levels());
    std::vector<std::size_t> pick(power, 0);
    while (!basis.empty()) {
        std::vector<exp_vec> tuple(power);
        for (std::size_t t = 0; t < power; ++t) tuple[t] = monos[pick[t]];
        tensor_act_cache cache{&ev, power, &tuple, {}};
        // images of the current basis vectors on this tuple
        std::vector<tensor_terms> vals(basis.size());
        bool any = false;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            for (std::size_t i = 0; i < d; ++i) {
                if (basis[b][i].is_zero()) continue;
                for (const auto& [k, c] : cache.run(i, 0)) {
                    auto [slot, fresh] = vals[b].emplace(k, basis[b][i] * c);
                    if (!fresh) {
                        slot->second = slot->second + basis[b][i] * c;
                        if (slot->second.is_zero()) vals[b].erase(slot);
                    }
                }
            }
            if (!vals[b].empty()) any = true;
        }
        if (any) {
            std::map<std::vector<std::uint32_t>, std::size_t> rows;
            for (const auto& v : vals)
                for (const auto& [k, c] : v) rows.emplace(k, rows.size());
            matrix A(dom, rows.size(), basis.size());
            for (std::size_t b = 0; b < basis.size(); ++b)
                for (const auto& [k, c] : vals[b]) A.at(rows.at(k), b) = c;
            auto combos = kernel_basis(A);
            std::vector<std::vector<scalar>> next;
            for (const auto& co : combos) {
                std::vector<scalar> v(d, scalar::zero(dom));
                for (std::size_t b = 0; b < basis.size(); ++b)
                    for (std::size_t i = 0; i < d; ++i) v[i] = v[i] + co[b] * basis[b][i];
                next.push_back(std::move(v));
            }
            basis = row_space_basis(dom, next);
        }
        std::size_t t = 0;
        while (t < power) {
            if (++pick[t] < monos.size()) break;
            pick[t] = 0;
            ++t;
        }
        if (t == power) break;
    }
    return basis;
}

} // namespace detail

inline std::vector<std::vector<scalar>> annihilator_of_tensor_power(action_evaluator& ev,
                                                                    std::size_t power,
                                                                    std::size_t max_degree) {
    std::vector<std::vector<scalar>> full;
    for (std::size_t i = 0; i < ev.spec().hopf.dim; ++i) full.push_back(ev.spec().hopf.basis_vector(i));
    return detail::cut_by_tensor_power(ev, power, max_degree, std::move(full));
}

// ---------------------------------------------------------------------------
// Inner-faithfulness radical: the stable annihilator across tensor powers.
// The chain K_m = ann(A^(x)1 .. A^(x)m) is decreasing; stabilization is
// confirmed at the doubled power and again with the degree bound raised by
// two, guarding against sampling artifacts.
// ---------------------------------------------------------------------------

struct radical_result {
    std::vector<std::vector<scalar>> basis;
    hopf_ideal_data ideal;
    std::size_t stabilized_at = 0;
    std::size_t degree_used = 0;
};

inline radical_result inner_faithful_radical(action_evaluator& ev, std::size_t max_degree) {
    const hopf_data& h = ev.spec().hopf;
    std::size_t deg = max_degree;
    for (int escalation = 0;; ++escalation) {
        std::vector<std::vector<scalar>> K;
        for (std::size_t i = 0; i < h.dim; ++i) K.push_back(h.basis_vector(i));
        std::size_t m = 0;
        std::size_t stable = 0;
        while (true) {
            auto next = detail::cut_by_tensor_power(ev, m + 1, deg, K);
            ++m;
            if (m > 1 && subspace_equal(h.dom, K, next)) {
                stable = m - 1;
                K = std::move(next);
                break;
            }
            K = std::move(next);
            if (K.empty()) {
                stable = m;
                break;
            }
            if (m > h.dim + 1)
                throw stabilization_not_reached("annihilator chain kept shrinking past dim H");
        }
        bool confirmed = true;
        if (!K.empty()) {
            auto doubled = detail::cut_by_tensor_power(ev, 2 * std::max<std::size_t>(stable, 1),
                                                       deg, K);
            if (!subspace_equal(h.dom, K, doubled)) confirmed = false;
            if (confirmed) {
                for (std::size_t mm = 1; mm <= stable + 1 && confirmed; ++mm) {
                    auto deeper = detail::cut_by_tensor_power(ev, mm, deg + 2, K);
                    if (!subspace_equal(h.dom, K, deeper)) confirmed = false;
                }
            }
        }
        if (confirmed) {
            radical_result out;
            out.basis = std::move(K);
            out.stabilized_at = stable;
            out.degree_used = deg;
            out.ideal = make_hopf_ideal(h, out.basis);
            if (!subspace_equal(h.dom, out.basis, out.ideal.basis))
                throw stabilization_not_reached("stable annihilator is not an ideal");
            return out;
        }
        deg += 2;
        if (escalation >= 2)
            throw stabilization_not_reached("annihilator unstable under degree escalation");
    }
}

// The radical acts by zero, so complement classes act by their original
// images; the quotient Hopf algebra inherits a well-defined module algebra.
inline action_spec quotient_action(const action_evaluator& ev, const quotient_result& qr) {
    action_spec out;
    out.hopf = qr.quotient;
    out.tower = ev.spec().tower;
    for (std::size_t c : qr.complement) out.image.push_back(ev.spec().image[c]);
    return out;
}

// ---------------------------------------------------------------------------
// Faithfulness certificate: an invertible matrix of evaluation coordinates
//   G[i][k] = weight_k * (coefficient of mu_k in b_i . w_k)
// with integer entries after clearing each column's denominators.  A nonzero
// determinant witnesses that the action separates H at the sampled degree,
// and the integer matrix transports to any prime not dividing the weights.
// ---------------------------------------------------------------------------

struct faithfulness_certificate {
    std::size_t degree_bound = 0;
    std::vector<exp_vec> witnesses;   // w_k
    std::vector<exp_vec> functionals; // mu_k (coefficient extraction)
    std::vector<mpz_class> weights;
    matrix gram;       // dim x dim, integer entries
    scalar det_value;  // det(gram), nonzero
};

inline faithfulness_certificate faithfulness_certificate_at(action_evaluator& ev,
                                                            std::size_t max_degree) {
    const hopf_data& h = ev.spec().hopf;
    const domain_ptr& dom = h.dom;
    if (dom->kind() != domain_kind::rational)
        throw error("faithfulness certificates are built over the rationals");
    const std::size_t d = h.dim;
    auto monos = monomials_up_to_degree(ev.spec().tower, max_degree, ev.spec().tower->levels());

    std::vector<std::vector<scalar>> columns;
    std::vector<exp_vec> wit, fun;
    matrix tracker(dom, 0, d);
    std::vector<std::vector<scalar>> tracked;
    for (const auto& w : monos) {
        if (columns.size() == d) break;
        std::map<exp_vec, std::vector<scalar>, grlex_less> by_mu;
        for (std::size_t i = 0; i < d; ++i)
            for (const auto& [e, c] : ev.act_basis(i, w).terms()) {
                auto it = by_mu.find(e);
                if (it == by_mu.end())
                    it = by_mu.emplace(e, std::vector<scalar>(d, scalar::zero(dom))).first;
                it->second[i] = c;
            }
        for (const auto& [mu, col] : by_mu) {
            if (columns.size() == d) break;
            auto trial = tracked;
            trial.push_back(col);
            if (row_space_basis(dom, trial).size() > tracked.size()) {
                tracked = row_space_basis(dom, trial);
                columns.push_back(col);
                wit.push_back(w);
                fun.push_back(mu);
            }
        }
    }
    if (columns.size() < d)
        throw not_faithful_at_bound("evaluation columns span only " +
                                    std::to_string(columns.size()) + " of " + std::to_string(d) +
                                    " dimensions at degree " + std::to_string(max_degree));

    faithfulness_certificate cert;
    cert.degree_bound = max_degree;
    cert.witnesses = std::move(wit);
    cert.functionals = std::move(fun);
    cert.gram = matrix(dom, d, d);
    for (std::size_t k = 0; k < d; ++k) {
        mpz_class w = 1;
        for (std::size_t i = 0; i < d; ++i) {
            mpq_class q = columns[k][i].rational_value();
            w = lcm(w, q.get_den());
        }
        cert.weights.push_back(w);
        scalar ws = scalar::from_rational(dom, mpq_class(w));
        for (std::size_t i = 0; i < d; ++i) cert.gram.at(i, k) = columns[k][i] * ws;
    }
    cert.det_value = determinant(cert.gram);
    if (cert.det_value.is_zero())
        throw not_faithful_at_bound("independent columns produced a singular matrix");
    return cert;
}

} // namespace hopfore
