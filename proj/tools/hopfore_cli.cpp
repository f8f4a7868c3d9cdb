// command line front end: validate inputs, compute integrals and central
// subrings, transport actions to finite characteristic, and run the full
// reduction pipeline.  Exit codes: 0 a definite verdict was reached (even a
// negative one), 1 the result is inconclusive at the configured bounds,
// 2 the input could not be used.
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <hopfore/hopfore.hpp>

using namespace hopfore;

namespace {

enum class file_kind { action, hopf, tower };

file_kind detect_kind(const json& j) {
    if (j.contains("action") || (j.contains("hopf") && j.contains("tower")))
        return file_kind::action;
    if (j.contains("mult")) return file_kind::hopf;
    if (j.contains("vars")) return file_kind::tower;
    throw parse_error("unrecognized input shape: expected an action, hopf, or tower file");
}

hopf_data load_hopf(const json& j) {
    file_kind k = detect_kind(j);
    if (k == file_kind::action) return action_from_json(j).hopf;
    if (k == file_kind::hopf) return hopf_from_json(j);
    throw parse_error("this command needs a hopf algebra, but the file only has a tower");
}

tower_ptr load_tower(const json& j) {
    file_kind k = detect_kind(j);
    if (k == file_kind::action) return action_from_json(j).tower;
    if (k == file_kind::tower) return tower_from_json(j);
    throw parse_error("this command needs a tower, but the file only has a hopf algebra");
}

std::string format_vector(const hopf_data& h, const std::vector<scalar>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (v[i].is_one())
            out += h.basis_names[i];
        else
            out += v[i].str() + "*" + h.basis_names[i];
    }
    return out.empty() ? "0" : out;
}

std::string format_monomial(const tower_ptr& tw, const exp_vec& e) {
    return ore_element::monomial(tw, e, scalar::one(tw->coeff)).str();
}

int report_issues(const std::string& what, const std::vector<std::string>& issues) {
    if (issues.empty()) {
        std::cout << what << ": ok\n";
        return 0;
    }
    std::cout << what << ": " << issues.size() << " issue(s)\n";
    for (const auto& s : issues) std::cout << "  - " << s << "\n";
    return 1;
}

int run_validate(const std::string& path) {
    json j = parse_json_file(path);
    int bad = 0;
    switch (detect_kind(j)) {
    case file_kind::action: {
        action_spec spec = action_from_json(j);
        std::cout << "input digest: " << action_digest(spec) << "\n";
        bad += report_issues("hopf algebra", validate_hopf_axioms(spec.hopf));
        bad += report_issues("ore tower", validate_tower(spec.tower));
        action_evaluator ev(spec);
        bad += report_issues("module algebra action", validate_module_algebra(ev, 6));
        break;
    }
    case file_kind::hopf:
        bad += report_issues("hopf algebra", validate_hopf_axioms(hopf_from_json(j)));
        break;
    case file_kind::tower: bad += report_issues("ore tower", validate_tower(tower_from_json(j)));
    }
    std::cout << (bad == 0 ? "valid\n" : "invalid\n");
    return 0;
}

int run_integral(const std::string& path) {
    hopf_data h = load_hopf(parse_json_file(path));
    auto describe = [&](const char* what, const hopf_data& target) {
        integral_result res = find_left_integral(target);
        std::cout << what << ": integral space dimension " << res.space_basis.size() << "\n";
        if (res.normalized)
            std::cout << what << ": normalized left integral "
                      << format_vector(target, *res.normalized) << "\n";
        else
            std::cout << what << ": no normalized integral (not semisimple)\n";
    };
    describe("hopf", h);
    describe("dual", dual_hopf(h));
    return 0;
}

int run_center(const std::string& path, unsigned long p, unsigned long kmax) {
    tower_ptr tw = load_tower(parse_json_file(path));
    if (tw->coeff->characteristic() == 0) {
        tw = reduce_tower_mod_p(tw, p);
    } else if (tw->coeff->characteristic() != p) {
        throw error("the tower already lives in characteristic " +
                    std::to_string(tw->coeff->characteristic()));
    }
    central_tower_data ct;
    try {
        ct = central_tower(tw, kmax);
    } catch (const p_polynomial_search_exceeded& e) {
        std::cout << "inconclusive: " << e.what() << " (raise --kmax)\n";
        return 1;
    }
    for (std::size_t i = 0; i < ct.basis.generators.size(); ++i)
        std::cout << "central generator: " << ct.basis.generators[i].str()
                  << "  (degree " << ct.basis.exponents[i] << " = p^" << ct.basis.kexp[i]
                  << ")\n";
    freeness_report fr = verify_freeness_rank(ct.basis, 6);
    std::cout << "free of rank " << ct.rank.get_str() << " = " << p << "^" << ct.s << " ("
              << fr.monomials_checked << " monomials recompose)\n";
    return 0;
}

int run_reduce(const std::string& path, unsigned long p) {
    action_spec spec = action_from_file(path);
    action_spec reduced = reduce_action_mod_p(spec, p);
    auto warn = [](const std::string& what, const std::vector<std::string>& issues) {
        for (const auto& s : issues) std::cerr << what << ": " << s << "\n";
    };
    warn("hopf", validate_hopf_axioms(reduced.hopf));
    warn("tower", validate_tower(reduced.tower));
    action_evaluator ev(reduced);
    warn("action", validate_module_algebra(ev, 4));
    std::cout << action_to_json(reduced).dump(2) << "\n";
    return 0;
}

int run_faithful(const std::string& path, std::size_t degree) {
    action_spec spec = action_from_file(path);
    action_evaluator ev(spec);
    faithfulness_certificate cert;
    try {
        cert = faithfulness_certificate_at(ev, degree);
    } catch (const not_faithful_at_bound& e) {
        std::cout << "inconclusive: " << e.what() << " (raise --degree)\n";
        return 1;
    }
    for (std::size_t i = 0; i < cert.witnesses.size(); ++i)
        std::cout << "witness " << format_monomial(spec.tower, cert.witnesses[i])
                  << ", functional " << format_monomial(spec.tower, cert.functionals[i])
                  << ", weight " << cert.weights[i].get_str() << "\n";
    std::cout << "certificate determinant: " << cert.det_value.str() << " (degree bound "
              << cert.degree_bound << ")\n";
    return 0;
}

int run_pipeline_cmd(const std::string& path, const pipeline_config& cfg,
                     const std::string& format, const std::string& output) {
    action_spec spec = action_from_file(path);
    reduction_report rep = run_pipeline(spec, cfg);
    std::string rendered = emit_report(rep, format);
    if (output.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream os(output, std::ios::binary);
        if (!os) throw error("cannot write " + output);
        os << rendered;
    }
    return rep.verdict == pipeline_verdict::inconclusive ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic reduction of Hopf algebra actions on Ore towers"};
    app.require_subcommand(1);

    std::string file;
    unsigned long prime = 0;
    unsigned long kmax = 4;
    std::size_t degree = 6;
    std::size_t prime_count = 5;
    std::string floor_str, format = "text", output;

    CLI::App* c_validate = app.add_subcommand("validate", "check every axiom of an input file");
    c_validate->add_option("file", file)->required();

    CLI::App* c_integral =
        app.add_subcommand("integral", "compute left integrals of a hopf algebra and its dual");
    c_integral->add_option("file", file)->required();

    CLI::App* c_center =
        app.add_subcommand("center", "build the central subring of a tower modulo a prime");
    c_center->add_option("file", file)->required();
    c_center->add_option("--prime", prime, "characteristic to reduce to")->required();
    c_center->add_option("--kmax", kmax, "largest p-power exponent to search");

    CLI::App* c_reduce =
        app.add_subcommand("reduce", "transport an action modulo a prime and print it");
    c_reduce->add_option("file", file)->required();
    c_reduce->add_option("--prime", prime, "prime to reduce modulo")->required();

    CLI::App* c_faithful =
        app.add_subcommand("faithful", "search for a faithfulness certificate");
    c_faithful->add_option("file", file)->required();
    c_faithful->add_option("--degree", degree, "monomial degree bound for witnesses");

    CLI::App* c_pipeline =
        app.add_subcommand("pipeline", "run the whole reduction pipeline and report");
    c_pipeline->add_option("file", file)->required();
    c_pipeline->add_option("--primes", prime_count, "number of good primes to examine");
    c_pipeline->add_option("--q", floor_str, "examine only primes above this bound");
    c_pipeline->add_option("--degree", degree, "validation and certificate degree bound");
    c_pipeline->add_option("--kmax", kmax, "largest p-power exponent to search");
    c_pipeline->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    c_pipeline->add_option("--output", output, "write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_validate) return run_validate(file);
        if (*c_integral) return run_integral(file);
        if (*c_center) return run_center(file, prime, kmax);
        if (*c_reduce) return run_reduce(file, prime);
        if (*c_faithful) return run_faithful(file, degree);
        if (*c_pipeline) {
            pipeline_config cfg;
            cfg.prime_count = prime_count;
            cfg.degree = degree;
            cfg.kmax = kmax;
            if (!floor_str.empty()) cfg.prime_floor = mpz_class(floor_str);
            return run_pipeline_cmd(file, cfg, format, output);
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
