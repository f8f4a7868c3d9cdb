#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfore/json_io.hpp"
#include "hopfore/reduce.hpp"

namespace hopfore {

// ---------------------------------------------------------------------------
// End-to-end check: take a rational Hopf action on a derivation-type tower,
// split off the inner-faithfulness radical, verify the semisimplicity
// hypotheses, and transport everything to a family of good primes.  At each
// prime the central tower must have p-power rank coprime to the group order
// bound and the reduced Hopf algebra must be cocommutative; together with a
// nonvanishing faithfulness certificate this is the evidence that the reduced
// action factors through a group algebra.
// ---------------------------------------------------------------------------

struct pipeline_config {
    std::vector<unsigned long> primes; // explicit sites; empty means search
    std::size_t prime_count = 5;
    std::optional<mpz_class> prime_floor; // default: quotient dimension factorial
    std::size_t degree = 6;              // validation, radical, and certificate depth
    unsigned long kmax = 4;
};

struct prime_record {
    unsigned long p = 0;
    bool transported = false;
    bool hopf_valid = false;
    bool tower_valid = false;
    bool module_valid = false;
    bool semisimple = false;
    bool cosemisimple = false;
    bool certificate_nonzero = false;
    std::string certificate_residue;
    std::string central_rank; // p^s as a decimal string
    unsigned long s = 0;
    bool rank_coprime_to_group_order = false;
    bool cocommutative = false;
    std::optional<std::size_t> grouplike_count;
    std::string note; // first failure detail

    bool hypotheses_hold() const {
        return transported && hopf_valid && tower_valid && module_valid && semisimple &&
               cosemisimple;
    }
    bool conclusion_holds() const {
        return hypotheses_hold() && certificate_nonzero && rank_coprime_to_group_order &&
               cocommutative;
    }
    friend bool operator==(const prime_record&, const prime_record&) = default;
};

enum class pipeline_verdict { factors_through_group_algebra, hypothesis_failed, inconclusive };

inline std::string verdict_name(pipeline_verdict v) {
    switch (v) {
    case pipeline_verdict::factors_through_group_algebra: return "factors_through_group_algebra";
    case pipeline_verdict::hypothesis_failed: return "hypothesis_failed";
    default: return "inconclusive";
    }
}

inline pipeline_verdict verdict_from_name(const std::string& n) {
    if (n == "factors_through_group_algebra")
        return pipeline_verdict::factors_through_group_algebra;
    if (n == "hypothesis_failed") return pipeline_verdict::hypothesis_failed;
    if (n == "inconclusive") return pipeline_verdict::inconclusive;
    throw parse_error("unknown verdict " + n);
}

struct reduction_report {
    std::string input_digest;
    std::size_t hopf_dim = 0;
    std::size_t radical_dim = 0;
    std::size_t radical_stabilized_at = 0;
    std::size_t radical_degree_used = 0;
    std::size_t quotient_dim = 0;
    bool quotient_cocommutative = false; // ground truth over Q
    std::string group_order_bound;       // quotient dimension factorial
    std::string ring_denominator_lcm;    // N, the structure constants live in Z[1/N]
    std::size_t ring_generators = 0;
    std::string certificate_determinant; // empty when no certificate was found
    std::size_t certificate_degree = 0;
    std::vector<unsigned long> primes;
    std::vector<prime_record> records;
    bool subdirect_all_detected = false;
    pipeline_verdict verdict = pipeline_verdict::inconclusive;
    std::string reason;

    friend bool operator==(const reduction_report&, const reduction_report&) = default;
};

namespace detail {

inline prime_record examine_prime(const action_spec& qspec, const faithfulness_certificate& cert,
                                  const mpz_class& group_order_bound, unsigned long p,
                                  const pipeline_config& cfg) {
    prime_record r;
    r.p = p;
    action_spec rspec;
    try {
        rspec = reduce_action_mod_p(qspec, p);
        r.transported = true;
    } catch (const denominator_vanishes& e) {
        r.note = e.what();
        return r;
    }
    auto first = [&](const std::vector<std::string>& issues) {
        if (!issues.empty() && r.note.empty())
            r.note = "p=" + std::to_string(p) + ": " + issues.front();
        return issues.empty();
    };
    r.hopf_valid = first(validate_hopf_axioms(rspec.hopf));
    r.tower_valid = first(validate_tower(rspec.tower));
    action_evaluator rev(rspec);
    r.module_valid = first(validate_module_algebra(rev, cfg.degree));
    r.semisimple = find_left_integral(rspec.hopf).normalized.has_value();
    r.cosemisimple = find_left_integral(dual_hopf(rspec.hopf)).normalized.has_value();
    if (!r.semisimple && r.note.empty())
        r.note = "p=" + std::to_string(p) + ": no normalized integral";
    if (!r.cosemisimple && r.note.empty())
        r.note = "p=" + std::to_string(p) + ": dual has no normalized integral";

    scalar residue = certificate_mod_p(cert, p);
    r.certificate_nonzero = !residue.is_zero();
    r.certificate_residue = residue.str();
    if (!r.certificate_nonzero && r.note.empty())
        r.note = "p=" + std::to_string(p) + ": faithfulness certificate vanishes";

    std::optional<central_tower_data> ct;
    try {
        ct = central_tower(rspec.tower, cfg.kmax);
        // rank by counting: divisions must recompose below the configured degree
        freeness_report fr = verify_freeness_rank(ct->basis, cfg.degree);
        if (fr.rank != ct->rank) throw error("freeness rank disagrees with the exponent product");
    } catch (const error& e) {
        ct.reset();
        if (r.note.empty()) r.note = "p=" + std::to_string(p) + ": " + e.what();
    }
    if (ct) {
        r.central_rank = ct->rank.get_str();
        r.s = ct->s;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), ct->rank.get_mpz_t(), group_order_bound.get_mpz_t());
        r.rank_coprime_to_group_order = g == 1;
        // rank is p^s, so coprimality to n! is exactly p > n once s >= 1
        if (ct->s >= 1 &&
            r.rank_coprime_to_group_order != (mpz_class(p) > mpz_class(qspec.hopf.dim)))
            throw error("rank coprimality disagrees with the prime bound");
        if (!r.rank_coprime_to_group_order && r.note.empty())
            r.note = "p=" + std::to_string(p) +
                     ": central rank shares a factor with the group order bound";
    }

    r.cocommutative = is_cocommutative(rspec.hopf);
    if (!r.cocommutative && r.note.empty())
        r.note = "p=" + std::to_string(p) + ": reduced Hopf algebra is not cocommutative";

    mpz_class census = 1;
    mpz_ui_pow_ui(census.get_mpz_t(), p, static_cast<unsigned long>(rspec.hopf.dim));
    if (census <= 1000000) r.grouplike_count = grouplike_elements(rspec.hopf).size();
    return r;
}

} // namespace detail

inline reduction_report run_pipeline(const action_spec& spec, const pipeline_config& cfg = {}) {
    if (spec.hopf.dom->kind() != domain_kind::rational)
        throw error("the pipeline starts from a rational input");
    reduction_report rep;
    rep.input_digest = action_digest(spec);
    rep.hopf_dim = spec.hopf.dim;
    auto fail = [&](std::string why) {
        rep.verdict = pipeline_verdict::hypothesis_failed;
        rep.reason = std::move(why);
        return rep;
    };
    auto inconclusive = [&](std::string why) {
        rep.verdict = pipeline_verdict::inconclusive;
        rep.reason = std::move(why);
        return rep;
    };

    auto hv = validate_hopf_axioms(spec.hopf);
    if (!hv.empty()) return fail("hopf axioms fail: " + hv.front());
    auto tv = validate_tower(spec.tower);
    if (!tv.empty()) return fail("tower is inconsistent: " + tv.front());
    action_evaluator ev(spec);
    auto mv = validate_module_algebra(ev, cfg.degree);
    if (!mv.empty()) return fail("module algebra axioms fail: " + mv.front());

    // from here on a module error is exhausted evidence, not an input problem
    try {
    radical_result rad = inner_faithful_radical(ev, cfg.degree);
    rep.radical_dim = rad.basis.size();
    rep.radical_stabilized_at = rad.stabilized_at;
    rep.radical_degree_used = rad.degree_used;
    quotient_result qr = quotient_by_hopf_ideal(spec.hopf, rad.ideal);
    action_spec qspec = quotient_action(ev, qr);
    rep.quotient_dim = qspec.hopf.dim;
    action_evaluator qev(qspec);

    if (!find_left_integral(qspec.hopf).normalized)
        return fail("inner-faithful quotient is not semisimple");
    if (!find_left_integral(dual_hopf(qspec.hopf)).normalized)
        return fail("inner-faithful quotient is not cosemisimple");
    rep.quotient_cocommutative = is_cocommutative(qspec.hopf);

    structure_constant_ring ring = make_structure_constant_ring(qspec);
    rep.ring_denominator_lcm = ring.denominator_lcm.get_str();
    rep.ring_generators = ring.values.size();
    mpz_class fact = 1;
    for (std::size_t t = 2; t <= qspec.hopf.dim; ++t) fact *= static_cast<unsigned long>(t);
    rep.group_order_bound = fact.get_str();

    faithfulness_certificate cert;
    try {
        cert = faithfulness_certificate_at(qev, cfg.degree);
    } catch (const not_faithful_at_bound& e) {
        return inconclusive(std::string("no faithfulness certificate: ") + e.what());
    }
    rep.certificate_determinant = cert.det_value.str();
    rep.certificate_degree = cert.degree_bound;

    std::vector<unsigned long> primes = cfg.primes;
    if (primes.empty())
        primes = good_primes(ring, cfg.prime_count, cfg.prime_floor.value_or(fact),
                             {cert.det_value.rational_value()});
    if (primes.empty()) return inconclusive("no usable primes found");
    rep.primes = primes;

    for (unsigned long p : primes)
        rep.records.push_back(detail::examine_prime(qspec, cert, fact, p, cfg));

    // every rational cocommutativity defect must be visible at some site
    std::vector<mpq_class> defects;
    const hopf_data& qh = qspec.hopf;
    for (std::size_t k = 0; k < qh.dim; ++k)
        for (std::size_t i = 0; i < qh.dim; ++i)
            for (std::size_t j = i + 1; j < qh.dim; ++j) {
                mpq_class d = qh.c(k, i, j).rational_value() - qh.c(k, j, i).rational_value();
                if (d != 0) defects.push_back(d);
            }
    rep.subdirect_all_detected = subdirect_injectivity_check(defects, primes).all_detected;

    for (const auto& r : rep.records)
        if (!r.hypotheses_hold())
            return fail(r.note.empty() ? "hypotheses fail at p=" + std::to_string(r.p) : r.note);
    // semisimple + cosemisimple + faithful + coprime rank forces cocommutativity,
    // so a reduction violating it can only mean a broken input or implementation
    for (const auto& r : rep.records)
        if (r.certificate_nonzero && r.rank_coprime_to_group_order && !r.cocommutative)
            return fail("consistency: every hypothesis holds at p=" + std::to_string(r.p) +
                        " yet the reduction is not cocommutative");
    for (const auto& r : rep.records)
        if (!r.conclusion_holds())
            return inconclusive(r.note.empty() ? "p=" + std::to_string(r.p) + " is inconclusive"
                                               : r.note);
    if (!rep.subdirect_all_detected)
        return inconclusive("cocommutativity defects evade every chosen prime");
    // the verdict's ground truth is the rational quotient, not the finitely
    // many reductions
    if (!rep.quotient_cocommutative)
        return inconclusive("quotient is not cocommutative over the rationals");

    rep.verdict = pipeline_verdict::factors_through_group_algebra;
    rep.reason = "all hypotheses and conclusions verified at " +
                 std::to_string(primes.size()) + " primes";
    return rep;
    } catch (const error& e) {
        return inconclusive(std::string("aborted: ") + e.what());
    }
}

// --- serialization -----------------------------------------------------------

inline ordered_json report_to_json(const reduction_report& rep) {
    ordered_json out;
    out["input_digest"] = rep.input_digest;
    out["hopf_dim"] = rep.hopf_dim;
    out["radical"] = ordered_json{{"dim", rep.radical_dim},
                                  {"stabilized_at", rep.radical_stabilized_at},
                                  {"degree_used", rep.radical_degree_used}};
    out["quotient"] = ordered_json{{"dim", rep.quotient_dim},
                                   {"cocommutative", rep.quotient_cocommutative},
                                   {"group_order_bound", rep.group_order_bound}};
    out["structure_ring"] = ordered_json{{"denominator_lcm", rep.ring_denominator_lcm},
                                         {"generators", rep.ring_generators}};
    out["certificate"] = ordered_json{{"degree", rep.certificate_degree},
                                      {"determinant", rep.certificate_determinant}};
    out["primes"] = rep.primes;
    ordered_json recs = ordered_json::array();
    for (const auto& r : rep.records) {
        ordered_json jr;
        jr["p"] = r.p;
        jr["transported"] = r.transported;
        jr["hopf_valid"] = r.hopf_valid;
        jr["tower_valid"] = r.tower_valid;
        jr["module_valid"] = r.module_valid;
        jr["semisimple"] = r.semisimple;
        jr["cosemisimple"] = r.cosemisimple;
        jr["certificate_nonzero"] = r.certificate_nonzero;
        jr["certificate_residue"] = r.certificate_residue;
        jr["central_rank"] = r.central_rank;
        jr["s"] = r.s;
        jr["rank_coprime_to_group_order"] = r.rank_coprime_to_group_order;
        jr["cocommutative"] = r.cocommutative;
        if (r.grouplike_count)
            jr["grouplike_count"] = *r.grouplike_count;
        else
            jr["grouplike_count"] = nullptr;
        jr["note"] = r.note;
        recs.push_back(jr);
    }
    out["records"] = recs;
    out["subdirect_all_detected"] = rep.subdirect_all_detected;
    out["verdict"] = verdict_name(rep.verdict);
    out["reason"] = rep.reason;
    return out;
}

inline reduction_report report_from_json(const json& j) {
    reduction_report rep;
    try {
        rep.input_digest = j.at("input_digest").get<std::string>();
        rep.hopf_dim = j.at("hopf_dim").get<std::size_t>();
        rep.radical_dim = j.at("radical").at("dim").get<std::size_t>();
        rep.radical_stabilized_at = j.at("radical").at("stabilized_at").get<std::size_t>();
        rep.radical_degree_used = j.at("radical").at("degree_used").get<std::size_t>();
        rep.quotient_dim = j.at("quotient").at("dim").get<std::size_t>();
        rep.quotient_cocommutative = j.at("quotient").at("cocommutative").get<bool>();
        rep.group_order_bound = j.at("quotient").at("group_order_bound").get<std::string>();
        rep.ring_denominator_lcm =
            j.at("structure_ring").at("denominator_lcm").get<std::string>();
        rep.ring_generators = j.at("structure_ring").at("generators").get<std::size_t>();
        rep.certificate_degree = j.at("certificate").at("degree").get<std::size_t>();
        rep.certificate_determinant = j.at("certificate").at("determinant").get<std::string>();
        rep.primes = j.at("primes").get<std::vector<unsigned long>>();
        for (const auto& jr : j.at("records")) {
            prime_record r;
            r.p = jr.at("p").get<unsigned long>();
            r.transported = jr.at("transported").get<bool>();
            r.hopf_valid = jr.at("hopf_valid").get<bool>();
            r.tower_valid = jr.at("tower_valid").get<bool>();
            r.module_valid = jr.at("module_valid").get<bool>();
            r.semisimple = jr.at("semisimple").get<bool>();
            r.cosemisimple = jr.at("cosemisimple").get<bool>();
            r.certificate_nonzero = jr.at("certificate_nonzero").get<bool>();
            r.certificate_residue = jr.at("certificate_residue").get<std::string>();
            r.central_rank = jr.at("central_rank").get<std::string>();
            r.s = jr.at("s").get<unsigned long>();
            r.rank_coprime_to_group_order = jr.at("rank_coprime_to_group_order").get<bool>();
            r.cocommutative = jr.at("cocommutative").get<bool>();
            if (!jr.at("grouplike_count").is_null())
                r.grouplike_count = jr.at("grouplike_count").get<std::size_t>();
            r.note = jr.at("note").get<std::string>();
            rep.records.push_back(std::move(r));
        }
        rep.subdirect_all_detected = j.at("subdirect_all_detected").get<bool>();
        rep.verdict = verdict_from_name(j.at("verdict").get<std::string>());
        rep.reason = j.at("reason").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("report: ") + e.what());
    }
    return rep;
}

inline std::string emit_report(const reduction_report& rep, const std::string& format) {
    if (format == "json") return report_to_json(rep).dump(2) + "\n";
    if (format != "text") throw error("unknown report format " + format);
    std::ostringstream os;
    os << "input digest:      " << rep.input_digest << "\n";
    os << "hopf dimension:    " << rep.hopf_dim << "\n";
    os << "radical dimension: " << rep.radical_dim << " (stabilized at power "
       << rep.radical_stabilized_at << ", degree " << rep.radical_degree_used << ")\n";
    os << "quotient:          dimension " << rep.quotient_dim << ", "
       << (rep.quotient_cocommutative ? "cocommutative" : "not cocommutative")
       << ", group order bound " << rep.group_order_bound << "\n";
    if (!rep.ring_denominator_lcm.empty())
        os << "structure ring:    Z[1/" << rep.ring_denominator_lcm << "], "
           << rep.ring_generators << " generators\n";
    if (!rep.certificate_determinant.empty())
        os << "certificate:       degree " << rep.certificate_degree << ", determinant "
           << rep.certificate_determinant << "\n";
    if (!rep.primes.empty()) {
        os << "primes:           ";
        for (unsigned long p : rep.primes) os << " " << p;
        os << "\n";
    }
    for (const auto& r : rep.records) {
        os << "  p=" << r.p << ":";
        if (!r.transported) {
            os << " transport failed (" << r.note << ")\n";
            continue;
        }
        os << (r.hopf_valid && r.tower_valid && r.module_valid ? " valid" : " INVALID");
        os << (r.semisimple ? ", semisimple" : ", NOT semisimple");
        os << (r.cosemisimple ? ", cosemisimple" : ", NOT cosemisimple");
        os << ", certificate " << r.certificate_residue;
        if (!r.central_rank.empty()) {
            os << ", central rank " << r.central_rank << " = p^" << r.s;
            os << (r.rank_coprime_to_group_order ? " (coprime to group order)"
                                                 : " (NOT coprime to group order)");
        }
        os << (r.cocommutative ? ", cocommutative" : ", NOT cocommutative");
        if (r.grouplike_count) os << ", " << *r.grouplike_count << " grouplikes";
        os << "\n";
    }
    switch (rep.verdict) {
    case pipeline_verdict::factors_through_group_algebra:
        os << "verdict: the reduced action factors through a group algebra at every checked "
              "prime ("
           << rep.reason << ")\n";
        break;
    case pipeline_verdict::hypothesis_failed:
        os << "verdict: hypothesis failed (" << rep.reason << ")\n";
        break;
    default: os << "verdict: inconclusive (" << rep.reason << ")\n";
    }
    return os.str();
}

} // namespace hopfore
