#pragma once

// Independent oracles used to freeze expected values in the tests.  These
// deliberately avoid the library's production code paths: determinants are
// cofactor expansions, solution sets come from exhaustive enumeration, and
// derivative coefficients come from falling factorials.

#include <cstdint>
#include <functional>
#include <vector>

#include "hopfore/matrix.hpp"
#include "hopfore/scalar.hpp"

namespace oracles {

using hopfore::matrix;
using hopfore::scalar;

// Laplace cofactor expansion along the first row; uses only + - *.
inline scalar cofactor_det(const matrix& m) {
    std::size_t n = m.rows();
    if (n == 0) return scalar::one(m.dom());
    if (n == 1) return m.at(0, 0);
    scalar det = scalar::zero(m.dom());
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        matrix minor(m.dom(), n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        scalar term = m.at(0, j) * cofactor_det(minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

// Every vector in F_p^n, via an odometer.
inline void enumerate_fp_vectors(unsigned long p, std::size_t n,
                                 const std::function<void(const std::vector<long>&)>& fn) {
    std::vector<long> v(n, 0);
    while (true) {
        fn(v);
        std::size_t i = 0;
        while (i < n) {
            if (++v[i] < static_cast<long>(p)) break;
            v[i] = 0;
            ++i;
        }
        if (i == n) return;
    }
}

// Falling factorial j (j-1) ... (j-k+1) as a plain integer.
inline mpz_class falling_factorial(unsigned long j, unsigned long k) {
    mpz_class r = 1;
    for (unsigned long t = 0; t < k; ++t) r *= mpz_class(j) - mpz_class(t);
    return r;
}

} // namespace oracles
