#pragma once

#include <array>

#include <hopfore/action.hpp>

// Shared example algebras: small group algebras, the Sweedler algebra, the
// standard derivation-type towers, and the actions used across the suites.
namespace fixtures {

using namespace hopfore;

inline hopf_data c2(const domain_ptr& dom) {
    return group_algebra(dom, {"1", "g"}, {{0, 1}, {1, 0}});
}

inline hopf_data c3(const domain_ptr& dom) {
    return group_algebra(dom, {"1", "g", "gg"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
}

inline hopf_data c2xc2(const domain_ptr& dom) {
    return group_algebra(dom, {"1", "g", "h", "gh"},
                         {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
}

inline hopf_data s3(const domain_ptr& dom) {
    std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    auto compose = [](const std::array<int, 3>& f, const std::array<int, 3>& g) {
        return std::array<int, 3>{f[g[0]], f[g[1]], f[g[2]]};
    };
    std::vector<std::vector<std::size_t>> cayley(6, std::vector<std::size_t>(6));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            auto fg = compose(perms[i], perms[j]);
            for (std::size_t k = 0; k < 6; ++k)
                if (perms[k] == fg) cayley[i][j] = k;
        }
    return group_algebra(dom, {"e", "r", "rr", "s", "sr", "srr"}, cayley);
}

// 4-dimensional algebra on {1, g, x, gx}: g^2 = 1, x^2 = 0, x g = -g x,
// Delta(x) = x (x) 1 + g (x) x; not semisimple in any characteristic
inline hopf_data sweedler(const domain_ptr& dom) {
    hopf_data h = hopf_data::empty(dom, 4);
    h.basis_names = {"1", "g", "x", "gx"};
    scalar one = scalar::one(dom);
    h.unit[0] = one;
    auto set_m = [&](std::size_t i, std::size_t j, std::size_t k, long v) {
        h.m(i, j, k) = scalar::from_integer(dom, v);
    };
    for (std::size_t j = 0; j < 4; ++j) {
        set_m(0, j, j, 1);
        if (j != 0) set_m(j, 0, j, 1);
    }
    set_m(1, 1, 0, 1);
    set_m(1, 2, 3, 1);
    set_m(2, 1, 3, -1);
    set_m(1, 3, 2, 1);
    set_m(3, 1, 2, -1);
    h.c(0, 0, 0) = one;
    h.c(1, 1, 1) = one;
    h.c(2, 2, 0) = one;
    h.c(2, 1, 2) = one;
    h.c(3, 3, 1) = one;
    h.c(3, 0, 3) = one;
    h.counit[0] = one;
    h.counit[1] = one;
    h.s(0, 0) = one;
    h.s(1, 1) = one;
    h.s(2, 3) = -one;
    h.s(3, 2) = one;
    return h;
}

// F[y][x; d/dy]: x y = y x + 1
inline tower_ptr weyl(const domain_ptr& dom, std::size_t bound = 24) {
    return make_ore_tower(dom, {"y", "x"}, {{}, {{0, "1"}}}, bound);
}

// F[x][y; x^2 d/dx]: y x = x y + x^2
inline tower_ptr jordan(const domain_ptr& dom, std::size_t bound = 24) {
    return make_ore_tower(dom, {"x", "y"}, {{}, {{0, "x^2"}}}, bound);
}

// F[z][x][y; d], d(x) = z, d(z) = 0: y x = x y + z with z central
inline tower_ptr heisenberg(const domain_ptr& dom, std::size_t bound = 24) {
    return make_ore_tower(dom, {"z", "x", "y"}, {{}, {}, {{1, "z"}}}, bound);
}

inline tower_ptr polyx(const domain_ptr& dom, std::size_t bound = 24) {
    return make_ore_tower(dom, {"x"}, {}, bound);
}

// F[x][y; x d/dx]: y x = x y + x
inline tower_ptr euler(const domain_ptr& dom, std::size_t bound = 24) {
    return make_ore_tower(dom, {"x", "y"}, {{}, {{0, "x"}}}, bound);
}

// F[x][y; x^3 d/dx]: y x = x y + x^3
inline tower_ptr cubic(const domain_ptr& dom, std::size_t bound = 24) {
    return make_ore_tower(dom, {"x", "y"}, {{}, {{0, "x^3"}}}, bound);
}

// two independent Weyl pairs stacked into one tower
inline tower_ptr weyl2(const domain_ptr& dom, std::size_t bound = 24) {
    return make_ore_tower(dom, {"y1", "x1", "y2", "x2"}, {{}, {{0, "1"}}, {}, {{2, "1"}}},
                          bound);
}

inline action_spec sign_weyl(const domain_ptr& dom) {
    action_spec spec;
    spec.hopf = c2(dom);
    spec.tower = weyl(dom);
    ore_element y = ore_element::variable(spec.tower, 0);
    ore_element x = ore_element::variable(spec.tower, 1);
    spec.image = {{y, x}, {-y, -x}};
    return spec;
}

inline action_spec sign_jordan(const domain_ptr& dom) {
    action_spec spec;
    spec.hopf = c2(dom);
    spec.tower = jordan(dom);
    ore_element x = ore_element::variable(spec.tower, 0);
    ore_element y = ore_element::variable(spec.tower, 1);
    spec.image = {{x, y}, {-x, -y}};
    return spec;
}

// z sits in degree two of the commutator filtration, so the sign action
// fixes it
inline action_spec sign_heisenberg(const domain_ptr& dom) {
    action_spec spec;
    spec.hopf = c2(dom);
    spec.tower = heisenberg(dom);
    ore_element z = ore_element::variable(spec.tower, 0);
    ore_element x = ore_element::variable(spec.tower, 1);
    ore_element y = ore_element::variable(spec.tower, 2);
    spec.image = {{z, x, y}, {z, -x, -y}};
    return spec;
}

inline action_spec trivial_polyx(const domain_ptr& dom) {
    action_spec spec;
    spec.hopf = c2(dom);
    spec.tower = polyx(dom);
    ore_element x = ore_element::variable(spec.tower, 0);
    spec.image = {{x}, {x}};
    return spec;
}

// classic Sweedler module algebra on F[x]: g flips the sign of x and the
// skew primitive is the g-twisted derivative sending x to 1
inline action_spec sweedler_polyx(const domain_ptr& dom) {
    action_spec spec;
    spec.hopf = sweedler(dom);
    spec.tower = polyx(dom);
    ore_element x = ore_element::variable(spec.tower, 0);
    ore_element one = ore_element::one(spec.tower);
    spec.image = {{x}, {-x}, {one}, {one}};
    return spec;
}

// C3 inside SL2 acting on the Weyl algebra: g has matrix [[0,-1],[1,-1]]
// on (y, x), which preserves [x, y] = 1 and has order three
inline action_spec rotation_c3_weyl(const domain_ptr& dom) {
    action_spec spec;
    spec.hopf = c3(dom);
    spec.tower = weyl(dom);
    ore_element y = ore_element::variable(spec.tower, 0);
    ore_element x = ore_element::variable(spec.tower, 1);
    spec.image = {{y, x}, {-x, y - x}, {x - y, -y}};
    return spec;
}

// C2 x C2 acting through its first factor: h acts trivially, g by sign
inline action_spec factor_c2c2_weyl(const domain_ptr& dom) {
    action_spec spec;
    spec.hopf = c2xc2(dom);
    spec.tower = weyl(dom);
    ore_element y = ore_element::variable(spec.tower, 0);
    ore_element x = ore_element::variable(spec.tower, 1);
    spec.image = {{y, x}, {-y, -x}, {y, x}, {-y, -x}};
    return spec;
}

} // namespace fixtures
