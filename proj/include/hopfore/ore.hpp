#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hopfore/expr.hpp"
#include "hopfore/scalar.hpp"

namespace hopfore {

// ---------------------------------------------------------------------------
// Iterated Ore extensions of derivation type over a coefficient field:
//   A_0 = F,  A_{i+1} = A_i[x_i; d_i],  x_i a = a x_i + d_i(a) for a in A_i.
// Elements are kept in normal form, monomials x_0^{e_0} .. x_{n-1}^{e_{n-1}}
// with ascending variable index.  deriv[i][j] holds d_i(x_j) for j < i as a
// normal-form term map supported on variables below level i.
// ---------------------------------------------------------------------------

struct ore_tower;
using tower_ptr = std::shared_ptr<const ore_tower>;
using ore_terms = std::map<exp_vec, scalar, grlex_less>;

struct ore_tower {
    domain_ptr coeff;
    std::vector<std::string> vars;
    std::vector<std::vector<ore_terms>> deriv;
    std::size_t degree_bound = 24;

    std::size_t levels() const { return vars.size(); }

    std::optional<std::size_t> var_index(std::string_view name) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return i;
        return std::nullopt;
    }

    bool derivation_is_zero(std::size_t i) const {
        for (const auto& img : deriv[i])
            if (!img.empty()) return false;
        return true;
    }

    bool same_as(const ore_tower& o) const {
        return *coeff == *o.coeff && vars == o.vars && deriv == o.deriv;
    }
};

namespace detail {

inline void require_same_tower(const tower_ptr& a, const tower_ptr& b) {
    if (a == b) return;
    if (!a || !b || !a->same_as(*b)) throw tower_mismatch("elements live in different towers");
}

inline void ore_add_term(const ore_tower& tw, ore_terms& m, const exp_vec& e, const scalar& c) {
    if (c.is_zero()) return;
    if (total_degree(e) > tw.degree_bound)
        throw degree_bound_exceeded("monomial degree exceeds tower bound " +
                                    std::to_string(tw.degree_bound));
    auto it = m.find(e);
    if (it == m.end()) {
        m.emplace(e, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) m.erase(it);
}

inline void ore_add(const ore_tower& tw, ore_terms& dst, const ore_terms& src, const scalar& fac) {
    for (const auto& [e, c] : src) ore_add_term(tw, dst, e, fac * c);
}

inline ore_terms ore_mono_mul(const ore_tower& tw, const exp_vec& e, const ore_terms& f);

// d_i applied to the monomial x^e, supp(e) below i; Leibniz on the lowest
// variable keeps every recursive product strictly below level i
inline ore_terms ore_derive_monomial(const ore_tower& tw, std::size_t i, const exp_vec& e) {
    ore_terms out;
    std::size_t j = 0;
    while (j < e.size() && e[j] == 0) ++j;
    if (j == e.size()) return out; // constants die
    const ore_terms& img = tw.deriv[i][j];
    std::uint32_t a = e[j];
    exp_vec rest = e;
    rest[j] = 0;
    if (!img.empty()) {
        for (std::uint32_t t = 0; t < a; ++t) {
            // x_j^t * d_i(x_j) * x_j^{a-1-t} * x^rest
            exp_vec tail = rest;
            tail[j] += a - 1 - t;
            ore_terms acc;
            for (const auto& [me, mc] : img) {
                // img is supported below i; push its monomial onto x^tail
                ore_terms part = ore_mono_mul(tw, me, {{tail, scalar::one(tw.coeff)}});
                ore_add(tw, acc, part, mc);
            }
            if (t > 0) {
                exp_vec xjt(e.size(), 0);
                xjt[j] = t;
                acc = ore_mono_mul(tw, xjt, acc);
            }
            for (const auto& [ae, ac] : acc) ore_add_term(tw, out, ae, ac);
        }
    }
    ore_terms drest = ore_derive_monomial(tw, i, rest);
    if (!drest.empty()) {
        exp_vec xja(e.size(), 0);
        xja[j] = a;
        ore_terms part = ore_mono_mul(tw, xja, drest);
        for (const auto& [ae, ac] : part) ore_add_term(tw, out, ae, ac);
    }
    return out;
}

// x_i * f with f in normal form: insert x_i, plus d_i of the low part
inline ore_terms ore_gen_left(const ore_tower& tw, std::size_t i, const ore_terms& f) {
    ore_terms out;
    for (const auto& [e, c] : f) {
        exp_vec up = e;
        up[i] += 1;
        ore_add_term(tw, out, up, c);
        exp_vec low(e.size(), 0);
        bool has_low = false;
        for (std::size_t j = 0; j < i; ++j) {
            low[j] = e[j];
            if (e[j]) has_low = true;
        }
        if (!has_low) continue;
        ore_terms dlow = ore_derive_monomial(tw, i, low);
        for (const auto& [de, dc] : dlow) {
            exp_vec comb = de; // supported below i
            for (std::size_t j = i; j < e.size(); ++j) comb[j] = e[j];
            ore_add_term(tw, out, comb, c * dc);
        }
    }
    return out;
}

inline ore_terms ore_mono_mul(const ore_tower& tw, const exp_vec& e, const ore_terms& f) {
    ore_terms cur = f;
    for (std::size_t iu = e.size(); iu-- > 0;)
        for (std::uint32_t t = 0; t < e[iu] && !cur.empty(); ++t) cur = ore_gen_left(tw, iu, cur);
    return cur;
}

inline ore_terms ore_mul(const ore_tower& tw, const ore_terms& f, const ore_terms& g) {
    ore_terms out;
    for (const auto& [e, c] : f) {
        ore_terms part = ore_mono_mul(tw, e, g);
        ore_add(tw, out, part, c);
    }
    return out;
}

} // namespace detail

class ore_element {
  public:
    ore_element() = default;

    static ore_element zero(const tower_ptr& tw) { return ore_element(tw, {}); }

    static ore_element constant(const tower_ptr& tw, const scalar& c) {
        ore_terms m;
        if (!c.is_zero()) m.emplace(exp_vec(tw->levels(), 0), c);
        return ore_element(tw, std::move(m));
    }

    static ore_element one(const tower_ptr& tw) { return constant(tw, scalar::one(tw->coeff)); }

    static ore_element variable(const tower_ptr& tw, std::size_t i) {
        if (i >= tw->levels()) throw variable_out_of_level("variable index beyond tower");
        exp_vec e(tw->levels(), 0);
        e[i] = 1;
        return monomial(tw, e, scalar::one(tw->coeff));
    }

    static ore_element monomial(const tower_ptr& tw, const exp_vec& e, const scalar& c) {
        if (e.size() != tw->levels()) throw tower_mismatch("monomial length != tower levels");
        ore_terms m;
        detail::ore_add_term(*tw, m, e, c);
        return ore_element(tw, std::move(m));
    }

    const tower_ptr& tower() const { return tw_; }
    const ore_terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    scalar constant_value() const {
        if (terms_.empty()) return scalar::zero(tw_->coeff);
        if (!is_constant()) throw error("constant_value of a non-constant element");
        return terms_.begin()->second;
    }

    std::size_t degree() const {
        std::size_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    bool supported_below(std::size_t level) const {
        for (const auto& [e, c] : terms_)
            for (std::size_t j = level; j < e.size(); ++j)
                if (e[j]) return false;
        return true;
    }

    friend ore_element operator+(const ore_element& a, const ore_element& b) {
        detail::require_same_tower(a.tw_, b.tw_);
        ore_terms m = a.terms_;
        detail::ore_add(*a.tw_, m, b.terms_, scalar::one(a.tw_->coeff));
        return ore_element(a.tw_, std::move(m));
    }

    friend ore_element operator-(const ore_element& a, const ore_element& b) {
        detail::require_same_tower(a.tw_, b.tw_);
        ore_terms m = a.terms_;
        detail::ore_add(*a.tw_, m, b.terms_, -scalar::one(a.tw_->coeff));
        return ore_element(a.tw_, std::move(m));
    }

    ore_element operator-() const {
        ore_terms m;
        for (const auto& [e, c] : terms_) m.emplace(e, -c);
        return ore_element(tw_, std::move(m));
    }

    friend ore_element operator*(const ore_element& a, const ore_element& b) {
        detail::require_same_tower(a.tw_, b.tw_);
        return ore_element(a.tw_, detail::ore_mul(*a.tw_, a.terms_, b.terms_));
    }

    ore_element scaled(const scalar& c) const {
        ore_terms m;
        if (!c.is_zero())
            for (const auto& [e, tc] : terms_) {
                scalar v = tc * c;
                if (!v.is_zero()) m.emplace(e, v);
            }
        return ore_element(tw_, std::move(m));
    }

    ore_element pow(unsigned long k) const {
        ore_element r = one(tw_);
        for (unsigned long t = 0; t < k; ++t) r = r * *this;
        return r;
    }

    bool operator==(const ore_element& o) const {
        detail::require_same_tower(tw_, o.tw_);
        return terms_ == o.terms_;
    }
    bool operator!=(const ore_element& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            std::string cs = it->second.str();
            bool neg = !cs.empty() && cs[0] == '-';
            if (out.empty()) {
                if (neg) out += "-", cs = cs.substr(1);
            } else {
                out += neg ? " - " : " + ";
                if (neg) cs = cs.substr(1);
            }
            std::string mono;
            for (std::size_t j = 0; j < it->first.size(); ++j) {
                if (!it->first[j]) continue;
                if (!mono.empty()) mono += "*";
                mono += tw_->vars[j];
                if (it->first[j] > 1) mono += "^" + std::to_string(it->first[j]);
            }
            if (mono.empty())
                out += cs;
            else if (cs == "1")
                out += mono;
            else
                out += cs + "*" + mono;
        }
        return out;
    }

    static ore_element parse(const tower_ptr& tw, std::string_view text) {
        return eval_node(tw, expr::parse(text));
    }

  private:
    ore_element(tower_ptr tw, ore_terms terms) : tw_(std::move(tw)), terms_(std::move(terms)) {}

    static ore_element eval_node(const tower_ptr& tw, const expr::node& n) {
        using expr::node;
        switch (n.k) {
            case node::kind::integer:
                return constant(tw, scalar::from_rational(tw->coeff, mpq_class(n.value)));
            case node::kind::variable: {
                auto idx = tw->var_index(n.name);
                if (!idx) throw parse_error("unknown variable '" + n.name + "'");
                return variable(tw, *idx);
            }
            case node::kind::sum: {
                ore_element r = zero(tw);
                for (const auto& ch : n.children) r = r + eval_node(tw, ch);
                return r;
            }
            case node::kind::product: {
                ore_element r = one(tw);
                for (const auto& ch : n.children) r = r * eval_node(tw, ch);
                return r;
            }
            case node::kind::negate:
                return -eval_node(tw, n.children[0]);
            case node::kind::power:
                return eval_node(tw, n.children[0]).pow(n.exponent);
            case node::kind::divide: {
                ore_element num = eval_node(tw, n.children[0]);
                ore_element den = eval_node(tw, n.children[1]);
                if (!den.is_constant() || den.is_zero())
                    throw parse_error("division only by nonzero constants");
                return num.scaled(den.constant_value().inverse());
            }
        }
        throw parse_error("unreachable expression node");
    }

    tower_ptr tw_;
    ore_terms terms_;
};

// ---------------------------------------------------------------------------
// Construction: images[i] lists (j, text) pairs with j < i; texts are parsed
// level by level against the already-built lower tower, so they may use any
// normal-form expression in the lower variables.
// ---------------------------------------------------------------------------

inline tower_ptr make_ore_tower(const domain_ptr& coeff, const std::vector<std::string>& vars,
                                const std::vector<std::vector<std::pair<std::size_t, std::string>>>& images,
                                std::size_t degree_bound = 24) {
    if (coeff->kind() != domain_kind::rational && coeff->kind() != domain_kind::prime_field)
        throw error("tower coefficients must form a prime field or the rationals");
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j]) throw error("duplicate tower variable '" + vars[i] + "'");
    if (images.size() > vars.size()) throw error("more derivation levels than variables");
    auto work = std::make_shared<ore_tower>();
    work->coeff = coeff;
    work->vars = vars;
    work->degree_bound = degree_bound;
    work->deriv.resize(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) work->deriv[i].resize(i);
    for (std::size_t i = 0; i < images.size(); ++i)
        for (const auto& [j, text] : images[i]) {
            if (j >= i) throw variable_out_of_level("derivation image index must be below its level");
            // parse against the tower built so far; lower levels are final
            ore_element img = ore_element::parse(tower_ptr(work), text);
            if (!img.supported_below(i))
                throw variable_out_of_level("derivation image of level " + std::to_string(i) +
                                            " uses variables at or above that level");
            work->deriv[i][j] = img.terms();
        }
    return work;
}

inline ore_element apply_derivation(const ore_element& f, std::size_t level) {
    const tower_ptr& tw = f.tower();
    if (level >= tw->levels()) throw variable_out_of_level("derivation level beyond tower");
    if (!f.supported_below(level))
        throw variable_out_of_level("derivation applied above its level");
    ore_element out = ore_element::zero(tw);
    for (const auto& [e, c] : f.terms()) {
        ore_terms de = detail::ore_derive_monomial(*tw, level, e);
        for (const auto& [ee, cc] : de)
            out = out + ore_element::monomial(tw, ee, c * cc);
    }
    return out;
}

inline bool is_central(const ore_element& f) {
    const tower_ptr& tw = f.tower();
    for (std::size_t i = 0; i < tw->levels(); ++i) {
        ore_element xi = ore_element::variable(tw, i);
        if (xi * f != f * xi) return false;
    }
    return true;
}

// Checks that each d_i respects all relations below it:
//   d_i(d_k(x_j)) = [d_i(x_k), x_j] + [x_k, d_i(x_j)]  for j < k < i
inline std::vector<std::string> validate_tower(const tower_ptr& tw) {
    std::vector<std::string> report;
    for (std::size_t i = 0; i < tw->levels(); ++i) {
        if (tw->deriv[i].size() != i) {
            report.push_back("level " + std::to_string(i) + ": malformed derivation table");
            continue;
        }
        for (std::size_t j = 0; j < i; ++j) {
            ore_element img(ore_element::zero(tw));
            for (const auto& [e, c] : tw->deriv[i][j])
                img = img + ore_element::monomial(tw, e, c);
            if (!img.supported_below(i))
                report.push_back("level " + std::to_string(i) + ": image of " + tw->vars[j] +
                                 " uses variables at or above the level");
        }
    }
    if (!report.empty()) return report;
    for (std::size_t i = 0; i < tw->levels(); ++i)
        for (std::size_t k = 0; k < i; ++k)
            for (std::size_t j = 0; j < k; ++j) {
                ore_element dkxj = ore_element::zero(tw);
                for (const auto& [e, c] : tw->deriv[k][j])
                    dkxj = dkxj + ore_element::monomial(tw, e, c);
                ore_element lhs = apply_derivation(dkxj, i);
                ore_element dixk = ore_element::zero(tw);
                for (const auto& [e, c] : tw->deriv[i][k])
                    dixk = dixk + ore_element::monomial(tw, e, c);
                ore_element dixj = ore_element::zero(tw);
                for (const auto& [e, c] : tw->deriv[i][j])
                    dixj = dixj + ore_element::monomial(tw, e, c);
                ore_element xj = ore_element::variable(tw, j);
                ore_element xk = ore_element::variable(tw, k);
                ore_element rhs = (dixk * xj - xj * dixk) + (xk * dixj - dixj * xk);
                if (lhs != rhs)
                    report.push_back("level " + std::to_string(i) + ": d(" + tw->vars[k] + " " +
                                     tw->vars[j] + " relation) mismatch");
            }
    return report;
}

// all normal-form monomials with support below level_count and total degree
// at most max_degree, in ascending graded order
inline std::vector<exp_vec> monomials_up_to_degree(const tower_ptr& tw, std::size_t max_degree,
                                                   std::size_t level_count) {
    std::vector<exp_vec> out;
    exp_vec cur(tw->levels(), 0);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t remaining) -> void {
        if (pos == level_count) {
            out.push_back(cur);
            return;
        }
        for (std::uint32_t e = 0; e <= remaining; ++e) {
            cur[pos] = e;
            self(self, pos + 1, remaining - e);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, max_degree);
    std::sort(out.begin(), out.end(), grlex_less{});
    return out;
}

} // namespace hopfore
