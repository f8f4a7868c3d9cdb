// Acceptance gate: one line per criterion, exact arithmetic throughout.
// Usage: acceptance <corpus-dir>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <hopfore/hopfore.hpp>

#include "fixtures.hpp"

using namespace hopfore;

namespace {

std::string g_corpus;

const std::vector<std::string> corpus_files = {
    "weyl_c2.json",          "polyx_c2_trivial.json", "c2c2_factor_weyl.json",
    "jordan_c2.json",        "heisenberg_c2.json",    "rotation_c3_weyl.json",
};

struct check_failed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void req(bool ok, const std::string& what) {
    if (!ok) throw check_failed(what);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string category(const std::string& issue) { return issue.substr(0, issue.find(':')); }

scalar eps_of(const hopf_data& h, const std::vector<scalar>& v) {
    scalar acc = scalar::zero(h.dom);
    for (std::size_t i = 0; i < h.dim; ++i) acc = acc + h.counit[i] * v[i];
    return acc;
}

std::vector<scalar> mat_apply(const matrix& A, const std::vector<scalar>& x) {
    std::vector<scalar> out(A.rows(), scalar::zero(A.dom()));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) out[i] = out[i] + A.at(i, j) * x[j];
    return out;
}

// --- criterion bodies --------------------------------------------------------

void axiom_suite() {
    auto q = scalar_domain::rational();
    auto f3 = scalar_domain::prime_field(3);
    for (const hopf_data& h : {fixtures::c2(q), fixtures::s3(q), fixtures::c3(f3)}) {
        auto t0 = std::chrono::steady_clock::now();
        req(validate_hopf_axioms(h).empty(), "a clean algebra failed validation");
        req(seconds_since(t0) < 1.0, "validation exceeded one second");
    }

    auto expect_first = [&](hopf_data h, const std::string& axiom) {
        auto issues = validate_hopf_axioms(h);
        req(!issues.empty(), "perturbation for " + axiom + " went unnoticed");
        req(category(issues.front()) == axiom,
            "perturbation for " + axiom + " was first reported as " + issues.front());
        return issues;
    };

    hopf_data h1 = fixtures::c2(q); // 1 * g := -g
    h1.m(0, 1, 1) = scalar::from_integer(q, -1);
    expect_first(h1, "unit");

    hopf_data h2 = fixtures::c3(q); // g * gg := g
    h2.m(1, 2, 0) = scalar::zero(q);
    h2.m(1, 2, 1) = scalar::one(q);
    expect_first(h2, "associativity");

    hopf_data h3 = fixtures::c2(q); // Delta(g) := g (x) g + 1 (x) 1
    h3.c(1, 0, 0) = scalar::one(q);
    expect_first(h3, "coassociativity");

    hopf_data h4 = fixtures::c2(q); // Delta(g) := g (x) 1
    h4.c(1, 1, 1) = scalar::zero(q);
    h4.c(1, 1, 0) = scalar::one(q);
    expect_first(h4, "counit");

    hopf_data h5 = fixtures::c2(q); // g * g := 2 - g
    h5.m(1, 1, 0) = scalar::from_integer(q, 2);
    h5.m(1, 1, 1) = scalar::from_integer(q, -1);
    expect_first(h5, "bialgebra");

    hopf_data h6 = fixtures::c2(q); // S(g) := 1
    h6.s(1, 1) = scalar::zero(q);
    h6.s(1, 0) = scalar::one(q);
    auto r6 = expect_first(h6, "antipode");
    req(r6.size() == 1, "the antipode perturbation tripped another axiom");
}

void integral_suite() {
    auto q = scalar_domain::rational();
    integral_result res = find_left_integral(fixtures::c2(q));
    req(res.semisimple, "Q[C2] should be semisimple");
    std::vector<scalar> half2 = {scalar::parse(q, "1/2"), scalar::parse(q, "1/2")};
    req(res.normalized.has_value() && *res.normalized == half2,
        "normalized integral of Q[C2] is not (1+g)/2");
    req(eps_of(fixtures::c2(q), *res.normalized).is_one(), "eps(t) != 1");

    integral_result bad = find_left_integral(fixtures::c2(scalar_domain::prime_field(2)));
    req(!bad.semisimple && bad.space_basis.size() == 1, "F2[C2] should not be semisimple");
    req(!find_left_integral(fixtures::sweedler(q)).semisimple,
        "the Sweedler algebra should not be semisimple");
}

void central_suite() {
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        auto t0 = std::chrono::steady_clock::now();
        auto fp = scalar_domain::prime_field(p);
        auto check = [&](const tower_ptr& tw, const std::vector<std::size_t>& var_order,
                         unsigned long expect_s) {
            central_tower_data ct = central_tower(tw);
            req(ct.basis.generators.size() == var_order.size(), "wrong generator count");
            for (std::size_t i = 0; i < var_order.size(); ++i) {
                ore_element expect = ore_element::variable(tw, var_order[i]).pow(p);
                req(ct.basis.generators[i] == expect, "generator " + std::to_string(i) +
                                                          " is not the p-th power of " +
                                                          tw->vars[var_order[i]]);
                // centrality by exact commutators against every variable
                for (std::size_t v = 0; v < tw->levels(); ++v) {
                    ore_element xv = ore_element::variable(tw, v);
                    req((ct.basis.generators[i] * xv - xv * ct.basis.generators[i]).is_zero(),
                        "generator fails to commute with " + tw->vars[v]);
                }
            }
            mpz_class want;
            mpz_ui_pow_ui(want.get_mpz_t(), p, expect_s);
            req(ct.rank == want && ct.s == expect_s, "rank is not p^" + std::to_string(expect_s));
            req(verify_freeness_rank(ct.basis, 6).rank == want, "division-reduction rank");
            return ct;
        };

        tower_ptr weyl = fixtures::weyl(fp);
        central_tower_data weyl_ct = check(weyl, {0, 1}, 2);
        req(!weyl_ct.polys.empty() && weyl_ct.polys.back().k == 1 &&
                weyl_ct.polys.back().witness == ore_element::variable(weyl, 1).pow(p),
            "the Weyl p-polynomial witness is not x^p");
        check(fixtures::jordan(fp), {0, 1}, 2);
        check(fixtures::heisenberg(fp), {0, 1, 2}, 3);
        if (p == 5) req(seconds_since(t0) < 30.0, "p = 5 exceeded thirty seconds");
    }
}

void p_power_suite() {
    auto p_power = [](const mpz_class& rank, unsigned long p, unsigned long s) {
        mpz_class want, rest;
        mpz_ui_pow_ui(want.get_mpz_t(), p, s);
        mpz_class pz(p);
        mpz_remove(rest.get_mpz_t(), rank.get_mpz_t(), pz.get_mpz_t());
        return rank == want && rest == 1;
    };

    for (const std::string& f : corpus_files) {
        action_spec spec = action_from_file(g_corpus + "/" + f);
        for (unsigned long p : {2ul, 3ul, 5ul}) {
            central_tower_data ct = central_tower(reduce_tower_mod_p(spec.tower, p));
            req(p_power(ct.rank, p, ct.s), f + ": rank is not a p-power at p=" + std::to_string(p));
        }
    }

    std::mt19937 rng(20250817);
    auto pick = [&](unsigned long bound) { return static_cast<unsigned long>(rng() % bound); };
    for (int trial = 0; trial < 20; ++trial) {
        unsigned long p = (trial % 2 == 0) ? 2 : 3;
        auto fp = scalar_domain::prime_field(p);
        std::size_t n = 1 + pick(3);
        std::vector<std::string> vars;
        for (std::size_t i = 0; i < n; ++i) vars.push_back("t" + std::to_string(i));
        std::vector<std::vector<std::pair<std::size_t, std::string>>> derivs(n);
        if (n >= 2) {
            std::size_t level = 1 + pick(n - 1);
            std::size_t target = pick(level);
            unsigned long c = 1 + pick(p - 1);
            std::string img = std::to_string(c);
            switch (pick(4)) {
            case 0: img.clear(); break; // commutative tower
            case 1: break;
            case 2: img += "*" + vars[target]; break;
            default: img += "*" + vars[target] + "^2";
            }
            if (!img.empty()) derivs[level] = {{target, img}};
        }
        central_tower_data ct = central_tower(make_ore_tower(fp, vars, derivs, 24), 6);
        req(p_power(ct.rank, p, ct.s),
            "random tower " + std::to_string(trial) + ": rank is not a p-power");
        req(verify_freeness_rank(ct.basis, 4).rank == ct.rank,
            "random tower " + std::to_string(trial) + ": freeness check");
    }
}

void radical_suite() {
    auto q = scalar_domain::rational();
    auto vec = [&](std::initializer_list<int> entries) {
        std::vector<scalar> v;
        for (int e : entries) v.push_back(scalar::from_integer(q, e));
        return v;
    };

    action_spec sign = fixtures::sign_weyl(q);
    action_evaluator ev(sign);
    req(annihilator_of_tensor_power(ev, 1, 1).empty(), "sign action: K_1 != 0 at degree 1");
    req(inner_faithful_radical(ev, 4).basis.empty(), "sign action: radical != 0");

    action_evaluator evt(fixtures::trivial_polyx(q));
    radical_result rt = inner_faithful_radical(evt, 4);
    req(subspace_equal(q, rt.basis, {vec({-1, 1})}), "trivial action: radical != <g-1>");

    action_evaluator evf(fixtures::factor_c2c2_weyl(q));
    radical_result rf = inner_faithful_radical(evf, 4);
    req(subspace_equal(q, rf.basis, {vec({-1, 0, 1, 0}), vec({0, -1, 0, 1})}),
        "factor action: radical != <h-1>");

    for (const std::string& f : corpus_files) {
        action_spec spec = action_from_file(g_corpus + "/" + f);
        action_evaluator e(spec);
        auto prev = annihilator_of_tensor_power(e, 1, 3);
        for (std::size_t m = 2; m <= 4; ++m) {
            auto next = annihilator_of_tensor_power(e, m, 3);
            for (const auto& row : next)
                req(subspace_contains(spec.hopf.dom, prev, row),
                    f + ": K_" + std::to_string(m) + " escapes K_" + std::to_string(m - 1));
            prev = std::move(next);
        }
    }
}

void certificate_suite() {
    auto q = scalar_domain::rational();
    action_spec spec = fixtures::sign_weyl(q);
    action_evaluator ev(spec);
    faithfulness_certificate cert = faithfulness_certificate_at(ev, 4);
    req(!cert.det_value.is_zero(), "certificate determinant vanishes over Q");

    structure_constant_ring ring = make_structure_constant_ring(spec);
    for (unsigned long p : good_primes(ring, 10, 2, {cert.det_value.rational_value()}))
        req(!certificate_mod_p(cert, p).is_zero(),
            "certificate vanishes at good prime " + std::to_string(p));

    std::vector<unsigned long> sites = good_primes(ring, 25, 2);
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<long> num(-1000000, 1000000);
    std::uniform_int_distribution<unsigned long> den_exp(0, 20);
    std::vector<mpq_class> sample;
    while (sample.size() < 50) {
        long n = num(rng);
        if (n == 0) continue;
        mpq_class v(n, mpz_class(1) << den_exp(rng));
        v.canonicalize();
        sample.push_back(v);
    }
    req(subdirect_injectivity_check(sample, sites).all_detected,
        "a nonzero sample evaded the first 25 sites");
}

void pipeline_suite() {
    auto t0 = std::chrono::steady_clock::now();
    action_spec spec = action_from_file(g_corpus + "/weyl_c2.json");
    reduction_report rep = run_pipeline(spec);
    req(rep.verdict == pipeline_verdict::factors_through_group_algebra,
        "verdict is not FactorsThroughGroupAlgebra");
    req(rep.primes == std::vector<unsigned long>{3, 5, 7, 11, 13}, "unexpected prime family");
    for (const prime_record& r : rep.records) {
        std::string at = " at p=" + std::to_string(r.p);
        req(r.transported && r.hopf_valid && r.tower_valid && r.module_valid,
            "a validator failed" + at);
        req(r.semisimple && r.cosemisimple, "semisimplicity failed" + at);
        req(!r.certificate_residue.empty() && r.certificate_nonzero,
            "certificate vanished" + at);
        req(r.central_rank == std::to_string(r.p * r.p) && r.s == 2, "rank is not p^2" + at);
        req(r.rank_coprime_to_group_order, "gcd(p^2, 2!) != 1" + at);
        req(r.cocommutative, "reduction is not cocommutative" + at);
        req(r.grouplike_count && *r.grouplike_count == 2, "grouplike census != 2" + at);
    }
    std::string first = emit_report(rep, "json");
    reduction_report again = run_pipeline(spec);
    req(emit_report(again, "json") == first, "repeated runs differ byte for byte");
    req(seconds_since(t0) < 120.0, "pipeline exceeded two minutes");
}

void transport_suite() {
    for (const std::string& f : corpus_files) {
        action_spec spec = action_from_file(g_corpus + "/" + f);
        structure_constant_ring ring = make_structure_constant_ring(spec);
        mpz_class fact = 1;
        for (std::size_t t = 2; t <= spec.hopf.dim; ++t) fact *= static_cast<unsigned long>(t);
        for (unsigned long p : good_primes(ring, 3, fact)) {
            std::string at = f + " at p=" + std::to_string(p);
            action_spec red = reduce_action_mod_p(spec, p);
            req(validate_hopf_axioms(red.hopf).empty(), "hopf axioms broke: " + at);
            req(validate_tower(red.tower).empty(), "tower broke: " + at);
            action_evaluator ev(red);
            req(validate_module_algebra(ev, 3).empty(), "module axioms broke: " + at);
            integral_result ir = find_left_integral(red.hopf);
            req(ir.normalized.has_value(), "no normalized integral: " + at);
            req(eps_of(red.hopf, *ir.normalized).is_one(), "eps(t) != 1: " + at);
        }
    }
}

void kernel_suite() {
    auto q = scalar_domain::rational();
    auto f3 = scalar_domain::prime_field(3);
    std::mt19937 rng(424243);
    std::uniform_int_distribution<int> small(-9, 9);
    auto rnd = [&](const domain_ptr& d) { return scalar::from_integer(d, small(rng)); };
    auto rnd_matrix = [&](const domain_ptr& d, std::size_t n) {
        matrix m(d, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rnd(d);
        return m;
    };

    for (int t = 0; t < 100; ++t) {
        for (const domain_ptr& d : {f3, q}) {
            matrix A = rnd_matrix(d, 4);
            req(eval_poly_at_matrix(char_poly(A), A).is_zero(),
                "Cayley-Hamilton failed on trial " + std::to_string(t));
        }
    }

    for (int t = 0; t < 100; ++t) {
        const domain_ptr& d = (t % 2 == 0) ? q : f3;
        matrix A = rnd_matrix(d, 3), B = rnd_matrix(d, 3);
        req(determinant(A * B) == determinant(A) * determinant(B),
            "det multiplicativity failed on trial " + std::to_string(t));
    }

    for (int t = 0; t < 100; ++t) {
        const domain_ptr& d = (t % 2 == 0) ? q : f3;
        matrix A = rnd_matrix(d, 4);
        std::vector<scalar> x0;
        for (int i = 0; i < 4; ++i) x0.push_back(rnd(d));
        std::vector<scalar> b = mat_apply(A, x0);
        auto sol = solve_linear(A, b);
        req(sol.has_value(), "a consistent system was reported unsolvable");
        std::vector<scalar> back = mat_apply(A, sol->particular);
        for (int i = 0; i < 4; ++i)
            req(back[i] == b[i], "back-substitution mismatch on trial " + std::to_string(t));
        for (const auto& v : sol->nullspace) {
            std::vector<scalar> z = mat_apply(A, v);
            for (int i = 0; i < 4; ++i)
                req(z[i].is_zero(), "nullspace vector fails on trial " + std::to_string(t));
        }
    }
}

int g_failures = 0;

void criterion(int n, const std::string& title, const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string issue;
    try {
        body();
    } catch (const std::exception& e) {
        issue = e.what();
    }
    std::ostringstream line;
    line << "criterion " << n << ": " << (issue.empty() ? "PASS" : "FAIL") << "  " << title;
    if (!issue.empty()) {
        line << "  [" << issue << "]";
        ++g_failures;
    }
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(2);
    t << seconds_since(t0);
    std::cout << line.str() << "  (" << t.str() << "s)\n";
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <corpus-dir>\n";
        return 2;
    }
    g_corpus = argv[1];

    criterion(1, "hopf axiom suite and targeted perturbations", axiom_suite);
    criterion(2, "left integrals and semisimplicity detection", integral_suite);
    criterion(3, "central subrings of the standard towers at p = 2, 3, 5", central_suite);
    criterion(4, "central ranks are p-powers across corpus and random towers", p_power_suite);
    criterion(5, "inner-faithfulness radicals and annihilator chains", radical_suite);
    criterion(6, "faithfulness certificates and subdirect detection", certificate_suite);
    criterion(7, "end-to-end pipeline on the sign action with deterministic report",
              pipeline_suite);
    criterion(8, "reduction transport preserves every validator and integral", transport_suite);
    criterion(9, "matrix kernel self-tests (Cayley-Hamilton, det, solve)", kernel_suite);

    if (g_failures == 0) {
        std::cout << "acceptance: all 9 criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criteria failed\n";
    return 1;
}
