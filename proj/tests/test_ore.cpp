#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <hopfore/ore.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace hopfore;
using fixtures::heisenberg;
using fixtures::jordan;
using fixtures::weyl;

namespace {

ore_element random_poly(const tower_ptr& tw, std::size_t level_count, std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<std::uint32_t> expo(0, 2);
    ore_element f = ore_element::zero(tw);
    for (int t = 0; t < 4; ++t) {
        exp_vec e(tw->levels(), 0);
        for (std::size_t j = 0; j < level_count; ++j) e[j] = expo(rng);
        f = f + ore_element::monomial(tw, e, scalar::from_integer(tw->coeff, coeff(rng)));
    }
    return f;
}

} // namespace

TEST_CASE("normal form rewriting in the first Weyl algebra") {
    auto q = scalar_domain::rational();
    auto tw = weyl(q);
    ore_element x = ore_element::variable(tw, 1);
    ore_element y = ore_element::variable(tw, 0);
    CHECK((x * y).str() == "y*x + 1");
    CHECK(x * y == ore_element::parse(tw, "y*x + 1"));
    CHECK(y * x == ore_element::parse(tw, "y*x"));
    CHECK(x * y - y * x == ore_element::one(tw));
    // x y^2 = y^2 x + 2 y
    CHECK(x * (y * y) == ore_element::parse(tw, "y^2*x + 2*y"));
    // x^2 y = y x^2 + 2 x
    CHECK((x * x) * y == ore_element::parse(tw, "y*x^2 + 2*x"));
    CHECK((x * x) * y == x * (x * y));
    CHECK(ore_element::parse(tw, "x*y") == ore_element::parse(tw, "y*x + 1"));
}

TEST_CASE("Jordan plane relation") {
    auto q = scalar_domain::rational();
    auto tw = jordan(q);
    ore_element x = ore_element::variable(tw, 0);
    ore_element y = ore_element::variable(tw, 1);
    CHECK(y * x == ore_element::parse(tw, "x*y + x^2"));
    CHECK((y * x) * x == y * (x * x));
}

TEST_CASE("Heisenberg tower: z is central, x and y are not") {
    auto q = scalar_domain::rational();
    auto tw = heisenberg(q);
    CHECK(validate_tower(tw).empty());
    ore_element z = ore_element::variable(tw, 0);
    ore_element x = ore_element::variable(tw, 1);
    ore_element y = ore_element::variable(tw, 2);
    CHECK(y * x - x * y == z);
    CHECK(is_central(z));
    CHECK(is_central(z * z + ore_element::one(tw)));
    CHECK(!is_central(x));
    CHECK(!is_central(y));
}

TEST_CASE("defining relation x_i a = a x_i + d_i(a) on random elements") {
    auto q = scalar_domain::rational();
    std::mt19937 rng(77);
    for (auto tw : {weyl(q), heisenberg(q)}) {
        std::size_t top = tw->levels() - 1;
        ore_element xt = ore_element::variable(tw, top);
        for (int trial = 0; trial < 20; ++trial) {
            ore_element a = random_poly(tw, top, rng);
            CHECK(xt * a == a * xt + apply_derivation(a, top));
        }
    }
}

TEST_CASE("derivations satisfy the Leibniz rule on random products") {
    auto f3 = scalar_domain::prime_field(3);
    auto tw = heisenberg(f3);
    std::mt19937 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        ore_element f = random_poly(tw, 2, rng);
        ore_element g = random_poly(tw, 2, rng);
        ore_element lhs = apply_derivation(f * g, 2);
        ore_element rhs = apply_derivation(f, 2) * g + f * apply_derivation(g, 2);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("iterated derivative of y^a matches falling factorials") {
    auto q = scalar_domain::rational();
    auto tw = weyl(q);
    ore_element y = ore_element::variable(tw, 0);
    for (unsigned long a = 0; a <= 6; ++a)
        for (unsigned long k = 1; k <= 3; ++k) {
            ore_element cur = y.pow(a);
            for (unsigned long t = 0; t < k; ++t) cur = apply_derivation(cur, 1);
            ore_element expect = ore_element::zero(tw);
            if (a >= k) {
                scalar c = scalar::from_rational(q, mpq_class(oracles::falling_factorial(a, k)));
                expect = y.pow(a - k).scaled(c);
            }
            CHECK(cur == expect);
        }
}

TEST_CASE("characteristic p collapses iterated derivatives") {
    auto f3 = scalar_domain::prime_field(3);
    auto q = scalar_domain::rational();
    // d^3 = 0 on F_3[y] since a(a-1)(a-2) = 0 mod 3
    auto tw3 = weyl(f3);
    ore_element y3 = ore_element::variable(tw3, 0);
    for (unsigned long a = 3; a <= 7; ++a) {
        ore_element cur = y3.pow(a);
        for (int t = 0; t < 3; ++t) cur = apply_derivation(cur, 1);
        CHECK(cur.is_zero());
    }
    // over Q the same derivative of y^5 is 60 y^2
    auto twq = weyl(q);
    ore_element yq = ore_element::variable(twq, 0);
    ore_element cur = yq.pow(5);
    for (int t = 0; t < 3; ++t) cur = apply_derivation(cur, 1);
    CHECK(cur == yq.pow(2).scaled(scalar::from_integer(q, 60)));

    // Jordan: d(x) = x^2 gives d^2(x) = 2 x^3, d^3(x) = 6 x^4 = 0 mod 3
    auto tj = jordan(f3);
    ore_element x = ore_element::variable(tj, 0);
    ore_element d2 = apply_derivation(apply_derivation(x, 1), 1);
    CHECK(d2 == x.pow(3).scaled(scalar::from_integer(f3, 2)));
    CHECK(apply_derivation(d2, 1).is_zero());
}

TEST_CASE("p-th powers are central exactly in characteristic p") {
    auto f3 = scalar_domain::prime_field(3);
    auto tw = weyl(f3);
    CHECK(is_central(ore_element::variable(tw, 0).pow(3)));
    CHECK(is_central(ore_element::variable(tw, 1).pow(3)));
    CHECK(!is_central(ore_element::variable(tw, 0)));
    auto twq = weyl(scalar_domain::rational());
    CHECK(!is_central(ore_element::variable(twq, 0).pow(3)));
}

TEST_CASE("invalid towers are reported by the relation check") {
    auto q = scalar_domain::rational();
    // w with d(x) = x cannot extend the Weyl relation y x - x y = 1
    auto bad = make_ore_tower(q, {"x", "y", "w"}, {{}, {{0, "1"}}, {{0, "x"}}});
    auto report = validate_tower(bad);
    REQUIRE(!report.empty());
    CHECK(report.front().find("level 2") != std::string::npos);
    // sending x to y instead is compatible
    auto good = make_ore_tower(q, {"x", "y", "w"}, {{}, {{0, "1"}}, {{0, "y"}}});
    CHECK(validate_tower(good).empty());
    CHECK(validate_tower(weyl(q)).empty());
    CHECK(validate_tower(jordan(q)).empty());
    CHECK(validate_tower(jordan(scalar_domain::prime_field(5))).empty());
}

TEST_CASE("degree bound guards runaway growth") {
    auto q = scalar_domain::rational();
    auto tw = weyl(q, 5);
    ore_element y = ore_element::variable(tw, 0);
    CHECK(y.pow(5).degree() == 5);
    CHECK_THROWS_AS(y.pow(6), degree_bound_exceeded);
    // the Jordan derivation raises degree, so repeated relations overflow too
    auto tj = jordan(q, 6);
    ore_element x = ore_element::variable(tj, 0);
    ore_element yy = ore_element::variable(tj, 1);
    CHECK_THROWS_AS(yy * (yy * (yy * x.pow(4))), degree_bound_exceeded);
}

TEST_CASE("construction and parse errors") {
    auto q = scalar_domain::rational();
    CHECK_THROWS_AS(make_ore_tower(q, {"x", "x"}, {}), error);
    CHECK_THROWS_AS(make_ore_tower(q, {"x", "y"}, {{}, {{0, "y"}}}), variable_out_of_level);
    CHECK_THROWS_AS(make_ore_tower(q, {"x", "y"}, {{}, {{1, "x"}}}), variable_out_of_level);
    auto tw = weyl(q);
    CHECK_THROWS_AS(ore_element::parse(tw, "q + 1"), parse_error);
    CHECK_THROWS_AS(ore_element::parse(tw, "1/x"), parse_error);
    CHECK(ore_element::parse(tw, "x/2") ==
          ore_element::variable(tw, 1).scaled(scalar::parse(q, "1/2")));
    auto other = jordan(q);
    CHECK_THROWS_AS(ore_element::one(tw) + ore_element::one(other), tower_mismatch);
    ore_element x = ore_element::variable(tw, 1);
    CHECK_THROWS_AS(apply_derivation(x, 1), variable_out_of_level);
}

TEST_CASE("parse and str round trip") {
    auto q = scalar_domain::rational();
    auto tw = heisenberg(q);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 15; ++trial) {
        ore_element f = random_poly(tw, 3, rng);
        CHECK(ore_element::parse(tw, f.str()) == f);
    }
    CHECK(ore_element::zero(tw).str() == "0");
    CHECK(ore_element::parse(tw, "-2*x*y + z - 1").str() == "-2*x*y + z - 1");
}

TEST_CASE("monomial enumeration is graded and complete") {
    auto q = scalar_domain::rational();
    auto tw = heisenberg(q);
    auto all2 = monomials_up_to_degree(tw, 3, 2);
    CHECK(all2.size() == 10); // C(3+2, 2)
    for (const auto& e : all2) CHECK(e[2] == 0);
    for (std::size_t t = 1; t < all2.size(); ++t) CHECK(grlex_less{}(all2[t - 1], all2[t]));
    auto all3 = monomials_up_to_degree(tw, 4, 3);
    CHECK(all3.size() == 35); // C(4+3, 3)
    auto just1 = monomials_up_to_degree(tw, 6, 1);
    CHECK(just1.size() == 7);
}
