#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfore/matrix.hpp"
#include "hopfore/scalar.hpp"

namespace hopfore {

// ---------------------------------------------------------------------------
// A finite-dimensional Hopf algebra given by structure-constant tables over a
// fixed basis b_0 .. b_{d-1}:
//   mult[(i*d+j)*d+k]   coefficient of b_k in b_i * b_j
//   comult[(k*d+i)*d+j] coefficient of b_i (x) b_j in Delta(b_k)
//   antipode[i*d+j]     coefficient of b_j in S(b_i)
//   counit[i]           eps(b_i)
//   unit                coefficient vector of 1_H (duals and quotients need a
//                       unit that is not a basis vector, so an index alone
//                       would not close the class under dual_hopf)
// ---------------------------------------------------------------------------

struct hopf_data {
    domain_ptr dom;
    std::size_t dim = 0;
    std::vector<std::string> basis_names;
    std::vector<scalar> unit;
    std::vector<scalar> mult;
    std::vector<scalar> comult;
    std::vector<scalar> antipode;
    std::vector<scalar> counit;

    const scalar& m(std::size_t i, std::size_t j, std::size_t k) const {
        return mult[(i * dim + j) * dim + k];
    }
    const scalar& c(std::size_t k, std::size_t i, std::size_t j) const {
        return comult[(k * dim + i) * dim + j];
    }
    const scalar& s(std::size_t i, std::size_t j) const { return antipode[i * dim + j]; }

    scalar& m(std::size_t i, std::size_t j, std::size_t k) { return mult[(i * dim + j) * dim + k]; }
    scalar& c(std::size_t k, std::size_t i, std::size_t j) { return comult[(k * dim + i) * dim + j]; }
    scalar& s(std::size_t i, std::size_t j) { return antipode[i * dim + j]; }

    static hopf_data empty(const domain_ptr& d, std::size_t dim) {
        hopf_data h;
        h.dom = d;
        h.dim = dim;
        h.basis_names.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) h.basis_names[i] = "b" + std::to_string(i);
        h.unit.assign(dim, scalar::zero(d));
        h.mult.assign(dim * dim * dim, scalar::zero(d));
        h.comult.assign(dim * dim * dim, scalar::zero(d));
        h.antipode.assign(dim * dim, scalar::zero(d));
        h.counit.assign(dim, scalar::zero(d));
        return h;
    }

    std::optional<std::size_t> unit_index() const {
        std::optional<std::size_t> idx;
        for (std::size_t i = 0; i < dim; ++i) {
            if (unit[i].is_zero()) continue;
            if (idx || !unit[i].is_one()) return std::nullopt;
            idx = i;
        }
        return idx;
    }

    // --- linear-algebra views ----------------------------------------------

    std::vector<scalar> mult_vec(const std::vector<scalar>& u, const std::vector<scalar>& v) const {
        std::vector<scalar> r(dim, scalar::zero(dom));
        for (std::size_t i = 0; i < dim; ++i) {
            if (u[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                if (v[j].is_zero()) continue;
                scalar uv = u[i] * v[j];
                for (std::size_t k = 0; k < dim; ++k) {
                    const scalar& mk = m(i, j, k);
                    if (!mk.is_zero()) r[k] = r[k] + uv * mk;
                }
            }
        }
        return r;
    }

    // coefficients of Delta(u) in H (x) H, indexed i*dim + j
    std::vector<scalar> comult_vec(const std::vector<scalar>& u) const {
        std::vector<scalar> r(dim * dim, scalar::zero(dom));
        for (std::size_t k = 0; k < dim; ++k) {
            if (u[k].is_zero()) continue;
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j) {
                    const scalar& ck = c(k, i, j);
                    if (!ck.is_zero()) r[i * dim + j] = r[i * dim + j] + u[k] * ck;
                }
        }
        return r;
    }

    std::vector<scalar> antipode_vec(const std::vector<scalar>& u) const {
        std::vector<scalar> r(dim, scalar::zero(dom));
        for (std::size_t i = 0; i < dim; ++i) {
            if (u[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                const scalar& sij = s(i, j);
                if (!sij.is_zero()) r[j] = r[j] + u[i] * sij;
            }
        }
        return r;
    }

    scalar counit_of(const std::vector<scalar>& u) const {
        scalar r = scalar::zero(dom);
        for (std::size_t i = 0; i < dim; ++i) r = r + u[i] * counit[i];
        return r;
    }

    // product in H (x) H of two coefficient vectors indexed i*dim + j
    std::vector<scalar> tensor_mult(const std::vector<scalar>& x, const std::vector<scalar>& y) const {
        std::vector<scalar> r(dim * dim, scalar::zero(dom));
        for (std::size_t a1 = 0; a1 < dim; ++a1)
            for (std::size_t b1 = 0; b1 < dim; ++b1) {
                const scalar& xc = x[a1 * dim + b1];
                if (xc.is_zero()) continue;
                for (std::size_t a2 = 0; a2 < dim; ++a2)
                    for (std::size_t b2 = 0; b2 < dim; ++b2) {
                        const scalar& yc = y[a2 * dim + b2];
                        if (yc.is_zero()) continue;
                        scalar xy = xc * yc;
                        for (std::size_t a = 0; a < dim; ++a) {
                            const scalar& ma = m(a1, a2, a);
                            if (ma.is_zero()) continue;
                            for (std::size_t b = 0; b < dim; ++b) {
                                const scalar& mb = m(b1, b2, b);
                                if (mb.is_zero()) continue;
                                r[a * dim + b] = r[a * dim + b] + xy * ma * mb;
                            }
                        }
                    }
            }
        return r;
    }

    std::vector<scalar> basis_vector(std::size_t i) const {
        std::vector<scalar> v(dim, scalar::zero(dom));
        v[i] = scalar::one(dom);
        return v;
    }

    matrix left_mult_matrix(std::size_t i) const {
        matrix L(dom, dim, dim);
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k) L.at(k, j) = m(i, j, k);
        return L;
    }
};

// Group algebra F[G] from a Cayley table: cayley[i][j] is the index of
// g_i g_j; index 0 must be the identity.
inline hopf_data group_algebra(const domain_ptr& dom, const std::vector<std::string>& names,
                               const std::vector<std::vector<std::size_t>>& cayley) {
    std::size_t n = names.size();
    if (cayley.size() != n) throw error("group_algebra: table size mismatch");
    for (std::size_t j = 0; j < n; ++j)
        if (cayley[0][j] != j || cayley[j][0] != j)
            throw error("group_algebra: index 0 is not an identity");
    hopf_data h = hopf_data::empty(dom, n);
    h.basis_names = names;
    h.unit[0] = scalar::one(dom);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (cayley[i][j] >= n) throw error("group_algebra: index out of range");
            h.m(i, j, cayley[i][j]) = scalar::one(dom);
        }
    for (std::size_t k = 0; k < n; ++k) {
        h.c(k, k, k) = scalar::one(dom);
        h.counit[k] = scalar::one(dom);
        std::optional<std::size_t> inv;
        for (std::size_t j = 0; j < n; ++j)
            if (cayley[k][j] == 0) inv = j;
        if (!inv) throw error("group_algebra: missing inverse");
        h.s(k, *inv) = scalar::one(dom);
    }
    return h;
}

// ---------------------------------------------------------------------------
// Axiom validation.  Categories are checked in a fixed order and at most one
// failure per category is reported, prefixed with its identifier:
//   unit, associativity, coassociativity, counit, bialgebra, antipode
// ---------------------------------------------------------------------------

inline std::vector<std::string> validate_hopf_axioms(const hopf_data& h) {
    std::vector<std::string> report;
    const std::size_t d = h.dim;
    const domain_ptr& dom = h.dom;
    if (h.unit.size() != d || h.mult.size() != d * d * d || h.comult.size() != d * d * d ||
        h.antipode.size() != d * d || h.counit.size() != d)
        return {"shape: table sizes do not match dim"};
    auto delta = [&](std::size_t i, std::size_t j) {
        return i == j ? scalar::one(dom) : scalar::zero(dom);
    };

    // unit laws
    [&] {
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                scalar left = scalar::zero(dom), right = scalar::zero(dom);
                for (std::size_t i = 0; i < d; ++i) {
                    left = left + h.unit[i] * h.m(i, j, k);
                    right = right + h.unit[i] * h.m(j, i, k);
                }
                if (left != delta(j, k)) {
                    report.push_back("unit: 1*b_" + std::to_string(j) + " has wrong b_" +
                                     std::to_string(k) + " coefficient");
                    return;
                }
                if (right != delta(j, k)) {
                    report.push_back("unit: b_" + std::to_string(j) + "*1 has wrong b_" +
                                     std::to_string(k) + " coefficient");
                    return;
                }
            }
    }();

    // associativity
    [&] {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k)
                    for (std::size_t l = 0; l < d; ++l) {
                        scalar lhs = scalar::zero(dom), rhs = scalar::zero(dom);
                        for (std::size_t t = 0; t < d; ++t) {
                            lhs = lhs + h.m(i, j, t) * h.m(t, k, l);
                            rhs = rhs + h.m(j, k, t) * h.m(i, t, l);
                        }
                        if (lhs != rhs) {
                            report.push_back("associativity: (b_" + std::to_string(i) + " b_" +
                                             std::to_string(j) + ") b_" + std::to_string(k) +
                                             " differs in b_" + std::to_string(l));
                            return;
                        }
                    }
    }();

    // coassociativity
    [&] {
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b)
                    for (std::size_t cc = 0; cc < d; ++cc) {
                        scalar lhs = scalar::zero(dom), rhs = scalar::zero(dom);
                        for (std::size_t t = 0; t < d; ++t) {
                            lhs = lhs + h.c(k, t, cc) * h.c(t, a, b);
                            rhs = rhs + h.c(k, a, t) * h.c(t, b, cc);
                        }
                        if (lhs != rhs) {
                            report.push_back("coassociativity: Delta(b_" + std::to_string(k) +
                                             ") fails at (" + std::to_string(a) + "," +
                                             std::to_string(b) + "," + std::to_string(cc) + ")");
                            return;
                        }
                    }
    }();

    // counit laws
    [&] {
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j < d; ++j) {
                scalar left = scalar::zero(dom), right = scalar::zero(dom);
                for (std::size_t i = 0; i < d; ++i) {
                    left = left + h.counit[i] * h.c(k, i, j);
                    right = right + h.c(k, j, i) * h.counit[i];
                }
                if (left != delta(k, j)) {
                    report.push_back("counit: (eps (x) id) Delta(b_" + std::to_string(k) +
                                     ") differs at b_" + std::to_string(j));
                    return;
                }
                if (right != delta(k, j)) {
                    report.push_back("counit: (id (x) eps) Delta(b_" + std::to_string(k) +
                                     ") differs at b_" + std::to_string(j));
                    return;
                }
            }
    }();

    // bialgebra compatibility: Delta and eps are algebra maps
    [&] {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                std::vector<scalar> lhs(d * d, scalar::zero(dom));
                for (std::size_t k = 0; k < d; ++k) {
                    if (h.m(i, j, k).is_zero()) continue;
                    for (std::size_t a = 0; a < d; ++a)
                        for (std::size_t b = 0; b < d; ++b)
                            lhs[a * d + b] = lhs[a * d + b] + h.m(i, j, k) * h.c(k, a, b);
                }
                std::vector<scalar> di(d * d, scalar::zero(dom)), dj(d * d, scalar::zero(dom));
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b) {
                        di[a * d + b] = h.c(i, a, b);
                        dj[a * d + b] = h.c(j, a, b);
                    }
                if (lhs != h.tensor_mult(di, dj)) {
                    report.push_back("bialgebra: Delta(b_" + std::to_string(i) + " b_" +
                                     std::to_string(j) + ") != Delta(b_" + std::to_string(i) +
                                     ") Delta(b_" + std::to_string(j) + ")");
                    return;
                }
                scalar el = scalar::zero(dom);
                for (std::size_t k = 0; k < d; ++k) el = el + h.m(i, j, k) * h.counit[k];
                if (el != h.counit[i] * h.counit[j]) {
                    report.push_back("bialgebra: eps(b_" + std::to_string(i) + " b_" +
                                     std::to_string(j) + ") != eps eps");
                    return;
                }
            }
        // Delta(1) = 1 (x) 1 and eps(1) = 1
        std::vector<scalar> d1 = h.comult_vec(h.unit);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                if (d1[a * d + b] != h.unit[a] * h.unit[b]) {
                    report.push_back("bialgebra: Delta(1) != 1 (x) 1");
                    return;
                }
        if (!h.counit_of(h.unit).is_one()) {
            report.push_back("bialgebra: eps(1) != 1");
            return;
        }
    }();

    // antipode axioms
    [&] {
        for (std::size_t k = 0; k < d; ++k) {
            std::vector<scalar> left(d, scalar::zero(dom)), right(d, scalar::zero(dom));
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    const scalar& ck = h.c(k, i, j);
                    if (ck.is_zero()) continue;
                    for (std::size_t t = 0; t < d; ++t) {
                        if (!h.s(i, t).is_zero())
                            for (std::size_t l = 0; l < d; ++l)
                                left[l] = left[l] + ck * h.s(i, t) * h.m(t, j, l);
                        if (!h.s(j, t).is_zero())
                            for (std::size_t l = 0; l < d; ++l)
                                right[l] = right[l] + ck * h.m(i, t, l) * h.s(j, t);
                    }
                }
            for (std::size_t l = 0; l < d; ++l) {
                scalar want = h.counit[k] * h.unit[l];
                if (left[l] != want) {
                    report.push_back("antipode: sum S(h1) h2 != eps(h) 1 at b_" + std::to_string(k));
                    return;
                }
                if (right[l] != want) {
                    report.push_back("antipode: sum h1 S(h2) != eps(h) 1 at b_" + std::to_string(k));
                    return;
                }
            }
        }
    }();

    return report;
}

// ---------------------------------------------------------------------------
// Left integrals: t with h t = eps(h) t for all h.  Semisimple iff some
// integral has eps(t) != 0 (then t is normalized to eps(t) = 1).
// ---------------------------------------------------------------------------

struct integral_result {
    std::vector<std::vector<scalar>> space_basis;
    std::optional<std::vector<scalar>> normalized;
    bool semisimple = false;
};

inline integral_result find_left_integral(const hopf_data& h) {
    const std::size_t d = h.dim;
    matrix M(h.dom, d * d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j < d; ++j) {
                scalar v = h.m(i, j, k);
                if (j == k) v = v - h.counit[i];
                M.at(i * d + k, j) = v;
            }
    integral_result res;
    res.space_basis = kernel_basis(M);
    for (const auto& v : res.space_basis) {
        scalar e = h.counit_of(v);
        if (!e.is_zero()) {
            std::vector<scalar> t(d);
            scalar inv = e.inverse();
            for (std::size_t j = 0; j < d; ++j) t[j] = v[j] * inv;
            res.normalized = std::move(t);
            break;
        }
    }
    res.semisimple = res.normalized.has_value();
    return res;
}

// Dual Hopf algebra on the dual basis; tables transpose into each other, so
// applying this twice reproduces the original tables on the nose.
inline hopf_data dual_hopf(const hopf_data& h) {
    const std::size_t d = h.dim;
    hopf_data g = hopf_data::empty(h.dom, d);
    for (std::size_t i = 0; i < d; ++i) g.basis_names[i] = h.basis_names[i] + "*";
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                g.m(i, j, k) = h.c(k, i, j);
                g.c(k, i, j) = h.m(i, j, k);
            }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g.s(i, j) = h.s(j, i);
    g.unit = h.counit;
    g.counit = h.unit;
    return g;
}

inline bool is_cocommutative(const hopf_data& h) {
    for (std::size_t k = 0; k < h.dim; ++k)
        for (std::size_t i = 0; i < h.dim; ++i)
            for (std::size_t j = i + 1; j < h.dim; ++j)
                if (h.c(k, i, j) != h.c(k, j, i)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Grouplike elements: x != 0 with Delta(x) = x (x) x and eps(x) = 1.  Over a
// prime field with p^dim <= 10^6 the whole space is enumerated; otherwise the
// caller must supply candidates to verify.
// ---------------------------------------------------------------------------

inline bool is_grouplike(const hopf_data& h, const std::vector<scalar>& x) {
    bool nonzero = false;
    for (const auto& c : x)
        if (!c.is_zero()) nonzero = true;
    if (!nonzero) return false;
    if (!h.counit_of(x).is_one()) return false;
    std::vector<scalar> dx = h.comult_vec(x);
    for (std::size_t i = 0; i < h.dim; ++i)
        for (std::size_t j = 0; j < h.dim; ++j)
            if (dx[i * h.dim + j] != x[i] * x[j]) return false;
    return true;
}

inline std::vector<std::vector<scalar>> grouplike_elements(
    const hopf_data& h, const std::vector<std::vector<scalar>>* candidates = nullptr) {
    std::vector<std::vector<scalar>> out;
    if (candidates) {
        for (const auto& x : *candidates)
            if (is_grouplike(h, x)) out.push_back(x);
        return out;
    }
    if (h.dom->kind() != domain_kind::prime_field)
        throw enumeration_too_large("grouplike enumeration needs a prime field (or candidates)");
    unsigned long p = h.dom->characteristic();
    double size = 1;
    for (std::size_t i = 0; i < h.dim; ++i) size *= static_cast<double>(p);
    if (size > 1e6)
        throw enumeration_too_large("grouplike enumeration space p^dim exceeds 10^6");
    std::vector<unsigned long> v(h.dim, 0);
    std::vector<scalar> consts(p, scalar::zero(h.dom));
    for (unsigned long c = 0; c < p; ++c) consts[c] = scalar::from_integer(h.dom, static_cast<long>(c));
    while (true) {
        std::vector<scalar> x(h.dim);
        for (std::size_t i = 0; i < h.dim; ++i) x[i] = consts[v[i]];
        if (is_grouplike(h, x)) out.push_back(x);
        std::size_t i = 0;
        while (i < h.dim) {
            if (++v[i] < p) break;
            v[i] = 0;
            ++i;
        }
        if (i == h.dim) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hopf ideals and quotients.
// ---------------------------------------------------------------------------

struct hopf_ideal_data {
    std::vector<std::vector<scalar>> generators;
    std::vector<std::vector<scalar>> basis; // canonical RREF basis of the ideal
    bool is_two_sided_ideal = false;
    bool is_coideal = false;
    bool is_antipode_stable = false;

    bool is_hopf_ideal() const { return is_two_sided_ideal && is_coideal && is_antipode_stable; }
};

namespace detail {

// reduction matrix modulo the RREF rows: complement coordinates of e_i
struct subspace_reduction {
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> complement;
    matrix red; // complement.size() x dim

    static subspace_reduction make(const domain_ptr& dom, std::size_t dim,
                                   const std::vector<std::vector<scalar>>& rref_rows) {
        subspace_reduction r;
        std::vector<bool> is_pivot(dim, false);
        for (const auto& row : rref_rows) {
            std::size_t c = 0;
            while (c < dim && row[c].is_zero()) ++c;
            if (c == dim) continue;
            r.pivots.push_back(c);
            is_pivot[c] = true;
        }
        for (std::size_t c = 0; c < dim; ++c)
            if (!is_pivot[c]) r.complement.push_back(c);
        r.red = matrix(dom, r.complement.size(), dim);
        for (std::size_t ci = 0; ci < r.complement.size(); ++ci)
            r.red.at(ci, r.complement[ci]) = scalar::one(dom);
        for (std::size_t ri = 0; ri < r.pivots.size(); ++ri)
            for (std::size_t ci = 0; ci < r.complement.size(); ++ci)
                r.red.at(ci, r.pivots[ri]) = -rref_rows[ri][r.complement[ci]];
        return r;
    }

    std::vector<scalar> reduce(const std::vector<scalar>& v) const {
        std::vector<scalar> out(complement.size(), scalar::zero(red.dom()));
        for (std::size_t ci = 0; ci < complement.size(); ++ci)
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!red.at(ci, j).is_zero()) out[ci] = out[ci] + red.at(ci, j) * v[j];
        return out;
    }
};

} // namespace detail

// Saturates the span of the generators to a two-sided ideal by repeated basis
// multiplication, then verifies the coideal and antipode conditions (the
// coideal test projects Delta(v) into (H/I) (x) (H/I) and requires zero).
inline hopf_ideal_data make_hopf_ideal(const hopf_data& h,
                                       const std::vector<std::vector<scalar>>& generators) {
    hopf_ideal_data ideal;
    ideal.generators = generators;
    auto basis = row_space_basis(h.dom, generators);
    while (true) {
        std::vector<std::vector<scalar>> next = basis;
        for (const auto& v : basis)
            for (std::size_t i = 0; i < h.dim; ++i) {
                next.push_back(h.mult_vec(h.basis_vector(i), v));
                next.push_back(h.mult_vec(v, h.basis_vector(i)));
            }
        auto closed = row_space_basis(h.dom, next);
        if (closed.size() == basis.size()) break;
        basis = std::move(closed);
    }
    ideal.basis = basis;

    ideal.is_two_sided_ideal = true;
    for (const auto& v : basis)
        for (std::size_t i = 0; i < h.dim && ideal.is_two_sided_ideal; ++i) {
            if (!subspace_contains(h.dom, basis, h.mult_vec(h.basis_vector(i), v)))
                ideal.is_two_sided_ideal = false;
            if (!subspace_contains(h.dom, basis, h.mult_vec(v, h.basis_vector(i))))
                ideal.is_two_sided_ideal = false;
        }

    auto red = detail::subspace_reduction::make(h.dom, h.dim, basis);
    ideal.is_coideal = true;
    for (const auto& v : basis) {
        if (!h.counit_of(v).is_zero()) {
            ideal.is_coideal = false;
            break;
        }
        std::vector<scalar> dv = h.comult_vec(v);
        // (pi (x) pi) Delta(v) = Red T Red^T with T the d x d coefficient table
        matrix T(h.dom, h.dim, h.dim);
        for (std::size_t i = 0; i < h.dim; ++i)
            for (std::size_t j = 0; j < h.dim; ++j) T.at(i, j) = dv[i * h.dim + j];
        matrix proj = red.red * T * red.red.transposed();
        if (!proj.is_zero()) {
            ideal.is_coideal = false;
            break;
        }
    }

    ideal.is_antipode_stable = true;
    for (const auto& v : basis)
        if (!subspace_contains(h.dom, basis, h.antipode_vec(v))) {
            ideal.is_antipode_stable = false;
            break;
        }
    return ideal;
}

struct quotient_result {
    hopf_data quotient;
    std::vector<std::size_t> complement; // surviving standard basis columns
    matrix red;                          // reduction map H -> H/I in those coordinates
};

inline quotient_result quotient_by_hopf_ideal(const hopf_data& h, const hopf_ideal_data& ideal) {
    if (!ideal.is_hopf_ideal()) {
        std::string why;
        if (!ideal.is_two_sided_ideal) why += " not-two-sided";
        if (!ideal.is_coideal) why += " not-coideal";
        if (!ideal.is_antipode_stable) why += " not-antipode-stable";
        throw not_a_hopf_ideal("quotient_by_hopf_ideal:" + why);
    }
    auto red = detail::subspace_reduction::make(h.dom, h.dim, ideal.basis);
    std::size_t q = red.complement.size();
    quotient_result out;
    out.complement = red.complement;
    out.red = red.red;
    hopf_data& g = out.quotient;
    g = hopf_data::empty(h.dom, q);
    for (std::size_t a = 0; a < q; ++a) g.basis_names[a] = "[" + h.basis_names[red.complement[a]] + "]";
    std::vector<scalar> u = red.reduce(h.unit);
    g.unit = u;
    for (std::size_t a = 0; a < q; ++a) {
        std::size_t ca = red.complement[a];
        g.counit[a] = h.counit[ca];
        std::vector<scalar> sv = red.reduce(h.antipode_vec(h.basis_vector(ca)));
        for (std::size_t b = 0; b < q; ++b) g.s(a, b) = sv[b];
        // comultiplication: reduce both tensor legs
        std::vector<scalar> dv = h.comult_vec(h.basis_vector(ca));
        matrix T(h.dom, h.dim, h.dim);
        for (std::size_t i = 0; i < h.dim; ++i)
            for (std::size_t j = 0; j < h.dim; ++j) T.at(i, j) = dv[i * h.dim + j];
        matrix Tq = red.red * T * red.red.transposed();
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = 0; j < q; ++j) g.c(a, i, j) = Tq.at(i, j);
        for (std::size_t b = 0; b < q; ++b) {
            std::size_t cb = red.complement[b];
            std::vector<scalar> mv =
                red.reduce(h.mult_vec(h.basis_vector(ca), h.basis_vector(cb)));
            for (std::size_t k = 0; k < q; ++k) g.m(a, b, k) = mv[k];
        }
    }
    auto rep = validate_hopf_axioms(g);
    if (!rep.empty())
        throw not_a_hopf_ideal("quotient fails Hopf axioms: " + rep.front());
    return out;
}

} // namespace hopfore
