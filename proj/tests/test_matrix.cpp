#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "hopfore/matrix.hpp"
#include "oracles.hpp"

using namespace hopfore;

static matrix from_ints(const domain_ptr& d, std::vector<std::vector<long>> rows) {
    matrix m(d, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = scalar::from_integer(d, rows[i][j]);
    return m;
}

TEST_CASE("solve_linear matches exhaustive enumeration over F_3") {
    auto f3 = scalar_domain::prime_field(3);
    matrix M = from_ints(f3, {{1, 1}});
    auto sol = solve_linear(M, {scalar::zero(f3)});
    REQUIRE(sol.has_value());
    CHECK(sol->nullspace.size() == 1);

    // oracle: every solution of x + y = 0 over F_3
    std::set<std::pair<long, long>> expected;
    oracles::enumerate_fp_vectors(3, 2, [&](const std::vector<long>& v) {
        if ((v[0] + v[1]) % 3 == 0) expected.insert({v[0], v[1]});
    });
    CHECK(expected == std::set<std::pair<long, long>>{{0, 0}, {1, 2}, {2, 1}});

    // the solver's particular + span of nullspace reproduces exactly that set
    std::set<std::pair<long, long>> got;
    for (long t = 0; t < 3; ++t) {
        std::vector<scalar> v = sol->particular;
        for (std::size_t i = 0; i < 2; ++i)
            v[i] = v[i] + scalar::from_integer(f3, t) * sol->nullspace[0][i];
        got.insert({v[0].rational_value().get_num().get_si(), v[1].rational_value().get_num().get_si()});
    }
    CHECK(got == expected);
}

TEST_CASE("inconsistent systems return nullopt") {
    auto d = scalar_domain::rational();
    matrix M = from_ints(d, {{1, 1}, {1, 1}});
    auto sol = solve_linear(M, {scalar::zero(d), scalar::one(d)});
    CHECK(!sol.has_value());
}

TEST_CASE("determinant over F_5 matches cofactor oracle") {
    auto f5 = scalar_domain::prime_field(5);
    matrix M = from_ints(f5, {{0, 1}, {1, 0}});
    scalar expected = oracles::cofactor_det(M);
    CHECK(expected.str() == "4");
    CHECK(determinant(M) == expected);
}

TEST_CASE("Bareiss determinant over F_3[t]") {
    auto d = scalar_domain::poly(scalar_domain::prime_field(3), {"t"});
    matrix M(d, 2, 2);
    M.at(0, 0) = scalar::parse(d, "t");
    M.at(0, 1) = scalar::one(d);
    M.at(1, 1) = scalar::parse(d, "t");
    scalar expected = oracles::cofactor_det(M);
    CHECK(expected == scalar::parse(d, "t^2"));
    CHECK(determinant(M) == expected);
}

TEST_CASE("determinant is multiplicative") {
    std::mt19937_64 rng(4242);
    auto d = scalar_domain::rational();
    for (int it = 0; it < 30; ++it) {
        matrix A(d, 3, 3), B(d, 3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                A.at(i, j) = scalar::from_rational(d, mpq_class(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3));
                B.at(i, j) = scalar::from_integer(d, static_cast<long>(rng() % 7) - 3);
            }
        CHECK(determinant(A * B) == determinant(A) * determinant(B));
        CHECK(determinant(A) == oracles::cofactor_det(A));
    }
}

TEST_CASE("Bareiss and field elimination agree") {
    std::mt19937_64 rng(31337);
    auto q = scalar_domain::rational();
    auto qt = scalar_domain::poly(q, {"t"});
    for (int it = 0; it < 20; ++it) {
        matrix A(q, 4, 4);
        matrix Al(qt, 4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                long v = static_cast<long>(rng() % 11) - 5;
                A.at(i, j) = scalar::from_integer(q, v);
                Al.at(i, j) = scalar::from_integer(qt, v);
            }
        CHECK(determinant(Al).rational_value() == determinant(A).rational_value());
    }
}

TEST_CASE("char_poly of the nilpotent 2x2 over F_2") {
    auto f2 = scalar_domain::prime_field(2);
    matrix M = from_ints(f2, {{0, 1}, {0, 0}});
    auto c = char_poly(M);
    REQUIRE(c.size() == 3);
    CHECK(c[0].is_zero());
    CHECK(c[1].is_zero());
    CHECK(c[2].is_one());
}

TEST_CASE("char_poly of diag(a, b) over Q[a, b]") {
    auto d = scalar_domain::poly(scalar_domain::rational(), {"a", "b"});
    matrix M(d, 2, 2);
    M.at(0, 0) = scalar::parse(d, "a");
    M.at(1, 1) = scalar::parse(d, "b");
    auto c = char_poly(M);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == scalar::parse(d, "a*b"));
    CHECK(c[1] == scalar::parse(d, "-a - b"));
    CHECK(c[2].is_one());
}

TEST_CASE("char_poly over a fraction domain") {
    auto fd = scalar_domain::fraction(scalar_domain::poly(scalar_domain::rational(), {"a", "b"}));
    matrix M(fd, 2, 2);
    M.at(0, 0) = scalar::parse(fd, "a/b");
    M.at(1, 1) = scalar::parse(fd, "b");
    auto c = char_poly(M);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == scalar::parse(fd, "a"));
    CHECK(c[1] == -(scalar::parse(fd, "a/b") + scalar::parse(fd, "b")));
    CHECK(c[2].is_one());
}

TEST_CASE("Cayley-Hamilton on random matrices") {
    std::mt19937_64 rng(2024);
    auto f3 = scalar_domain::prime_field(3);
    auto q = scalar_domain::rational();
    for (int it = 0; it < 10; ++it) {
        for (const auto& d : {f3, q}) {
            matrix M(d, 4, 4);
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    M.at(i, j) = scalar::from_integer(d, static_cast<long>(rng() % 7) - 3);
            auto c = char_poly(M);
            CHECK(eval_poly_at_matrix(c, M).is_zero());
        }
    }
}

TEST_CASE("random solvable systems: back substitution verifies") {
    std::mt19937_64 rng(555);
    auto f7 = scalar_domain::prime_field(7);
    for (int it = 0; it < 30; ++it) {
        std::size_t n = 2 + rng() % 3, m = 2 + rng() % 3;
        matrix M(f7, n, m);
        std::vector<scalar> x(m);
        for (std::size_t j = 0; j < m; ++j) x[j] = scalar::from_integer(f7, static_cast<long>(rng() % 7));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) M.at(i, j) = scalar::from_integer(f7, static_cast<long>(rng() % 7));
        std::vector<scalar> b(n, scalar::zero(f7));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) b[i] = b[i] + M.at(i, j) * x[j];
        auto sol = solve_linear(M, b);
        REQUIRE(sol.has_value());
        // particular solution satisfies the system
        for (std::size_t i = 0; i < n; ++i) {
            scalar acc = scalar::zero(f7);
            for (std::size_t j = 0; j < m; ++j) acc = acc + M.at(i, j) * sol->particular[j];
            CHECK(acc == b[i]);
        }
        // nullspace vectors are killed by M, and rank-nullity holds
        for (const auto& v : sol->nullspace)
            for (std::size_t i = 0; i < n; ++i) {
                scalar acc = scalar::zero(f7);
                for (std::size_t j = 0; j < m; ++j) acc = acc + M.at(i, j) * v[j];
                CHECK(acc.is_zero());
            }
        CHECK(sol->nullspace.size() + rank(M) == m);
    }
}

TEST_CASE("row space helpers") {
    auto q = scalar_domain::rational();
    std::vector<std::vector<scalar>> a = {
        {scalar::from_integer(q, 1), scalar::from_integer(q, 2)},
        {scalar::from_integer(q, 2), scalar::from_integer(q, 4)},
    };
    auto basis = row_space_basis(q, a);
    CHECK(basis.size() == 1);
    CHECK(subspace_contains(q, basis, a[1]));
    std::vector<std::vector<scalar>> b = {{scalar::from_integer(q, 3), scalar::from_integer(q, 6)}};
    CHECK(subspace_equal(q, a, b));
}
