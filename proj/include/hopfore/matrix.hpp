#pragma once

#include <optional>
#include <vector>

#include "hopfore/scalar.hpp"

namespace hopfore {

// Dense matrix over a single scalar domain.
class matrix {
public:
    matrix() = default;

    matrix(domain_ptr d, std::size_t rows, std::size_t cols)
        : dom_(std::move(d)), rows_(rows), cols_(cols), e_(rows * cols, scalar::zero(dom_)) {}

    static matrix identity(const domain_ptr& d, std::size_t n) {
        matrix m(d, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = scalar::one(d);
        return m;
    }

    static matrix column(const domain_ptr& d, const std::vector<scalar>& v) {
        matrix m(d, v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
        return m;
    }

    static matrix from_rows(const domain_ptr& d, const std::vector<std::vector<scalar>>& rows) {
        std::size_t c = rows.empty() ? 0 : rows.front().size();
        matrix m(d, rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw error("ragged rows");
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const domain_ptr& dom() const { return dom_; }

    scalar& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const scalar& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    matrix operator+(const matrix& o) const {
        check_shape(o);
        matrix r(dom_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
        return r;
    }

    matrix operator-(const matrix& o) const {
        check_shape(o);
        matrix r(dom_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
        return r;
    }

    matrix operator*(const matrix& o) const {
        if (cols_ != o.rows_) throw error("matrix product shape mismatch");
        if (!same_domain(dom_, o.dom_)) throw domain_mismatch("matrix domains differ");
        matrix r(dom_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const scalar& a = at(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const scalar& b = o.at(k, j);
                    if (b.is_zero()) continue;
                    r.at(i, j) = r.at(i, j) + a * b;
                }
            }
        return r;
    }

    matrix scaled(const scalar& c) const {
        matrix r(dom_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * c;
        return r;
    }

    matrix transposed() const {
        matrix r(dom_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    matrix pow(std::uint64_t e) const {
        if (rows_ != cols_) throw not_square("matrix power of a nonsquare matrix");
        matrix r = identity(dom_, rows_);
        matrix b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    bool is_zero() const {
        for (const auto& s : e_)
            if (!s.is_zero()) return false;
        return true;
    }

    friend bool operator==(const matrix& a, const matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && same_domain(a.dom_, b.dom_) && a.e_ == b.e_;
    }
    friend bool operator!=(const matrix& a, const matrix& b) { return !(a == b); }

    std::vector<scalar> row(std::size_t i) const {
        std::vector<scalar> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }

    std::vector<scalar> col(std::size_t j) const {
        std::vector<scalar> r(rows_);
        for (std::size_t i = 0; i < rows_; ++i) r[i] = at(i, j);
        return r;
    }

private:
    void check_shape(const matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw error("matrix shape mismatch");
        if (!same_domain(dom_, o.dom_)) throw domain_mismatch("matrix domains differ");
    }

    domain_ptr dom_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<scalar> e_;
};

// Reduced row echelon form in place (field domains only).  Returns the pivot
// column of each nonzero row, in order.
inline std::vector<std::size_t> rref_in_place(matrix& m) {
    if (!m.dom()->is_field()) throw not_a_field("row reduction requires a field domain");
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t sel = r;
        while (sel < m.rows() && m.at(sel, c).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
        scalar inv = m.at(r, c).inverse();
        for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            scalar f = m.at(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(matrix m) { return rref_in_place(m).size(); }

struct linear_solution {
    std::vector<scalar> particular;              // one solution of M x = b
    std::vector<std::vector<scalar>> nullspace;  // basis of ker M
};

// Exact solution of M x = b over a field domain; nullopt when inconsistent.
inline std::optional<linear_solution> solve_linear(const matrix& M, const std::vector<scalar>& b) {
    if (b.size() != M.rows()) throw error("solve_linear: rhs size mismatch");
    matrix aug(M.dom(), M.rows(), M.cols() + 1);
    for (std::size_t i = 0; i < M.rows(); ++i) {
        for (std::size_t j = 0; j < M.cols(); ++j) aug.at(i, j) = M.at(i, j);
        aug.at(i, M.cols()) = b[i];
    }
    auto pivots = rref_in_place(aug);
    for (auto c : pivots)
        if (c == M.cols()) return std::nullopt; // pivot in the rhs column
    linear_solution sol;
    sol.particular.assign(M.cols(), scalar::zero(M.dom()));
    std::vector<bool> is_pivot(M.cols(), false);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        is_pivot[pivots[r]] = true;
        sol.particular[pivots[r]] = aug.at(r, M.cols());
    }
    for (std::size_t c = 0; c < M.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<scalar> v(M.cols(), scalar::zero(M.dom()));
        v[c] = scalar::one(M.dom());
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -aug.at(r, c);
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

inline std::vector<std::vector<scalar>> kernel_basis(const matrix& M) {
    auto sol = solve_linear(M, std::vector<scalar>(M.rows(), scalar::zero(M.dom())));
    return sol->nullspace;
}

// Determinant: Gaussian elimination over fields, fraction-free Bareiss
// elimination over Poly domains (exact divisions only).
inline scalar determinant(const matrix& M) {
    if (M.rows() != M.cols()) throw not_square("determinant of a nonsquare matrix");
    std::size_t n = M.rows();
    const domain_ptr& d = M.dom();
    if (n == 0) return scalar::one(d);
    matrix a = M;
    bool negate = false;
    if (d->is_field()) {
        scalar det = scalar::one(d);
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t sel = c;
            while (sel < n && a.at(sel, c).is_zero()) ++sel;
            if (sel == n) return scalar::zero(d);
            if (sel != c) {
                negate = !negate;
                for (std::size_t j = 0; j < n; ++j) std::swap(a.at(sel, j), a.at(c, j));
            }
            det = det * a.at(c, c);
            scalar inv = a.at(c, c).inverse();
            for (std::size_t i = c + 1; i < n; ++i) {
                if (a.at(i, c).is_zero()) continue;
                scalar f = a.at(i, c) * inv;
                for (std::size_t j = c; j < n; ++j) a.at(i, j) = a.at(i, j) - f * a.at(c, j);
            }
        }
        return negate ? -det : det;
    }
    // Bareiss: previous pivot divides every 2x2 minor update exactly.
    scalar prev = scalar::one(d);
    for (std::size_t c = 0; c + 1 < n; ++c) {
        std::size_t sel = c;
        while (sel < n && a.at(sel, c).is_zero()) ++sel;
        if (sel == n) return scalar::zero(d);
        if (sel != c) {
            negate = !negate;
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(sel, j), a.at(c, j));
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                scalar num = a.at(i, j) * a.at(c, c) - a.at(i, c) * a.at(c, j);
                a.at(i, j) = num.divexact(prev);
            }
            a.at(i, c) = scalar::zero(d);
        }
        prev = a.at(c, c);
        if (prev.is_zero()) return scalar::zero(d);
    }
    scalar det = a.at(n - 1, n - 1);
    return negate ? -det : det;
}

namespace detail {

// Poly domain extending the entry domain by one fresh variable (for char_poly).
inline std::pair<domain_ptr, std::size_t> domain_with_fresh_var(const domain_ptr& d) {
    std::vector<std::string> vars;
    if (d->kind() == domain_kind::poly) vars = d->vars();
    std::string fresh = "z";
    auto taken = [&](const std::string& n) {
        for (const auto& v : vars)
            if (v == n) return true;
        return false;
    };
    for (int i = 0; taken(fresh); ++i) fresh = "z" + std::to_string(i);
    vars.push_back(fresh);
    domain_ptr base = (d->kind() == domain_kind::poly) ? d->base() : d;
    return {scalar_domain::poly(base, vars), vars.size() - 1};
}

inline scalar lift_entry(const scalar& s, const domain_ptr& big) {
    const domain_ptr& d = s.dom();
    if (d->kind() == domain_kind::rational || d->kind() == domain_kind::prime_field)
        return scalar::from_rational(big, s.rational_value());
    term_map t;
    for (const auto& [e, c] : s.poly_terms()) {
        exp_vec e2 = e;
        e2.push_back(0);
        t.emplace(std::move(e2), c);
    }
    return scalar::make_poly(big, std::move(t));
}

} // namespace detail

// Characteristic polynomial det(z I - M), returned as coefficients
// c_0 .. c_n (ascending, c_n = 1) over the entry domain.  Entries may lie in
// Rational, PrimeField, Poly, or Fraction domains.
inline std::vector<scalar> char_poly(const matrix& M) {
    if (M.rows() != M.cols()) throw not_square("char_poly of a nonsquare matrix");
    std::size_t n = M.rows();
    const domain_ptr& d = M.dom();

    if (d->kind() == domain_kind::fraction) {
        // clear denominators: M = N / delta, det(zI - M) = delta^-n f_N(delta z)
        domain_ptr pd = d->poly_part();
        unsigned long p = d->characteristic();
        term_map delta = detail::tm_const(d->var_count(), 1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                delta = detail::tm_lcm(p, delta, M.at(i, j).denominator_terms());
        scalar delta_f = scalar::make_fraction(d, delta, detail::tm_const(d->var_count(), 1));
        matrix N(pd, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                N.at(i, j) = (M.at(i, j) * delta_f).fraction_as_poly(pd);
        std::vector<scalar> cn = char_poly(N);
        std::vector<scalar> out(n + 1, scalar::zero(d));
        for (std::size_t k = 0; k <= n; ++k) {
            // c_k(M) = c_k(N) * delta^(k-n)
            scalar ck = cn[k].to_fraction(d);
            scalar dk = delta_f.pow(n - k);
            out[k] = ck / dk;
        }
        return out;
    }

    auto [big, zidx] = detail::domain_with_fresh_var(d);
    matrix A(big, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            scalar v = -detail::lift_entry(M.at(i, j), big);
            if (i == j) v = v + scalar::variable(big, zidx);
            A.at(i, j) = v;
        }
    scalar det = determinant(A);
    std::vector<term_map> coeff(n + 1);
    for (const auto& [e, c] : det.poly_terms()) {
        std::uint32_t k = e[zidx];
        exp_vec rest(e.begin(), e.end());
        rest[zidx] = 0;
        rest.pop_back(); // drop the fresh slot (it is last)
        if (d->kind() == domain_kind::poly) {
            coeff[k].emplace(std::move(rest), c);
        } else {
            coeff[k].emplace(exp_vec{}, c);
        }
    }
    std::vector<scalar> out(n + 1, scalar::zero(d));
    for (std::size_t k = 0; k <= n; ++k) {
        if (d->kind() == domain_kind::poly) {
            out[k] = scalar::make_poly(d, coeff[k]);
        } else if (!coeff[k].empty()) {
            out[k] = scalar::from_rational(d, coeff[k].begin()->second);
        }
    }
    return out;
}

// Horner evaluation of a scalar polynomial at a square matrix.
inline matrix eval_poly_at_matrix(const std::vector<scalar>& coeffs, const matrix& M) {
    if (M.rows() != M.cols()) throw not_square("eval_poly_at_matrix");
    matrix r(M.dom(), M.rows(), M.cols());
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        r = r * M;
        for (std::size_t i = 0; i < M.rows(); ++i) r.at(i, i) = r.at(i, i) + coeffs[k];
    }
    return r;
}

// ---------------------------------------------------------------------------
// Row-space helpers for subspace bookkeeping (canonical RREF bases).
// ---------------------------------------------------------------------------

inline std::vector<std::vector<scalar>> row_space_basis(const domain_ptr& d,
                                                        const std::vector<std::vector<scalar>>& rows) {
    if (rows.empty()) return {};
    matrix m = matrix::from_rows(d, rows);
    auto pivots = rref_in_place(m);
    std::vector<std::vector<scalar>> out;
    for (std::size_t r = 0; r < pivots.size(); ++r) out.push_back(m.row(r));
    return out;
}

inline bool subspace_contains(const domain_ptr& d, const std::vector<std::vector<scalar>>& basis,
                              const std::vector<scalar>& v) {
    std::vector<std::vector<scalar>> all = basis;
    all.push_back(v);
    return row_space_basis(d, all).size() == row_space_basis(d, basis).size();
}

inline bool subspace_equal(const domain_ptr& d, const std::vector<std::vector<scalar>>& a,
                           const std::vector<std::vector<scalar>>& b) {
    return row_space_basis(d, a) == row_space_basis(d, b);
}

} // namespace hopfore
