#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hopfore/action.hpp"

namespace hopfore {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// JSON input format.  A Hopf algebra is a table file
//   {"field": "Q", "dim": 2, "basis": ["1","g"], "unit": 0,
//    "mult": [[i,j,k,"c"], ...], "comult": [[k,i,j,"c"], ...],
//    "antipode": [[i,j,"c"], ...], "counit": ["1","1"]}
// with sparse 0-based index triples and scalars written as strings.  "unit"
// is either a basis index or a dense coefficient vector.  A tower is
//   {"coeff_field": "Q", "vars": ["y","x"], "derivations": {"x": {"y": "1"}}}
// and an action file combines both with a row per basis element:
//   {"hopf": {...}, "tower": {...}, "action": {"g": {"y": "-y", "x": "-x"}}}
// The row of the unit basis element may be omitted and defaults to the
// identity; omitting any other row is an error.
// ---------------------------------------------------------------------------

namespace detail {

inline const json& need(const json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end())
        throw parse_error(std::string(what) + ": missing key \"" + key + "\"");
    return *it;
}

inline std::size_t need_index(const json& j, std::size_t bound, const char* what) {
    if (!j.is_number_unsigned() || j.get<std::size_t>() >= bound)
        throw parse_error(std::string(what) + ": index " + j.dump() + " out of range");
    return j.get<std::size_t>();
}

inline scalar need_scalar(const domain_ptr& dom, const json& j, const char* what) {
    if (!j.is_string()) throw parse_error(std::string(what) + ": scalar must be a string");
    try {
        return scalar::parse(dom, j.get<std::string>());
    } catch (const error& e) {
        throw parse_error(std::string(what) + ": " + e.what());
    }
}

} // namespace detail

inline domain_ptr field_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "Q") return scalar_domain::rational();
    if (j.is_object() && j.contains("Fp") && j["Fp"].is_number_unsigned())
        return scalar_domain::prime_field(j["Fp"].get<unsigned long>());
    throw parse_error("field must be \"Q\" or {\"Fp\": p}, got " + j.dump());
}

inline ordered_json field_to_json(const domain_ptr& dom) {
    if (dom->kind() == domain_kind::rational) return "Q";
    return ordered_json{{"Fp", dom->characteristic()}};
}

inline hopf_data hopf_from_json(const json& j) {
    domain_ptr dom =
        j.contains("field") ? field_from_json(j["field"]) : scalar_domain::rational();
    const json& jd = detail::need(j, "dim", "hopf");
    if (!jd.is_number_unsigned() || jd.get<std::size_t>() == 0)
        throw parse_error("hopf: dim must be a positive integer");
    std::size_t d = jd.get<std::size_t>();
    hopf_data h = hopf_data::empty(dom, d);
    const json& jb = detail::need(j, "basis", "hopf");
    if (!jb.is_array() || jb.size() != d) throw parse_error("hopf: basis must list dim names");
    h.basis_names.clear();
    for (const auto& n : jb) h.basis_names.push_back(n.get<std::string>());

    const json& ju = detail::need(j, "unit", "hopf");
    if (ju.is_number_unsigned())
        h.unit[detail::need_index(ju, d, "hopf unit")] = scalar::one(dom);
    else if (ju.is_array() && ju.size() == d)
        for (std::size_t i = 0; i < d; ++i) h.unit[i] = detail::need_scalar(dom, ju[i], "hopf unit");
    else
        throw parse_error("hopf: unit must be an index or a coefficient vector");

    auto fill3 = [&](const char* key, auto&& set) {
        for (const auto& row : detail::need(j, key, "hopf")) {
            if (!row.is_array() || row.size() != 4)
                throw parse_error(std::string("hopf ") + key + ": rows are [i,j,k,\"c\"]");
            std::size_t a = detail::need_index(row[0], d, key);
            std::size_t b = detail::need_index(row[1], d, key);
            std::size_t c = detail::need_index(row[2], d, key);
            set(a, b, c, detail::need_scalar(dom, row[3], key));
        }
    };
    fill3("mult", [&](std::size_t i, std::size_t jj, std::size_t k, scalar v) {
        h.m(i, jj, k) = std::move(v);
    });
    fill3("comult", [&](std::size_t k, std::size_t i, std::size_t jj, scalar v) {
        h.c(k, i, jj) = std::move(v);
    });
    for (const auto& row : detail::need(j, "antipode", "hopf")) {
        if (!row.is_array() || row.size() != 3)
            throw parse_error("hopf antipode: rows are [i,j,\"c\"]");
        std::size_t a = detail::need_index(row[0], d, "antipode");
        std::size_t b = detail::need_index(row[1], d, "antipode");
        h.s(a, b) = detail::need_scalar(dom, row[2], "antipode");
    }
    const json& jc = detail::need(j, "counit", "hopf");
    if (!jc.is_array() || jc.size() != d)
        throw parse_error("hopf: counit must be a dense coefficient vector");
    for (std::size_t i = 0; i < d; ++i) h.counit[i] = detail::need_scalar(dom, jc[i], "counit");
    return h;
}

inline tower_ptr tower_from_json(const json& j) {
    domain_ptr dom = field_from_json(detail::need(j, "coeff_field", "tower"));
    const json& jv = detail::need(j, "vars", "tower");
    if (!jv.is_array() || jv.empty()) throw parse_error("tower: vars must be a nonempty array");
    std::vector<std::string> vars;
    for (const auto& v : jv) vars.push_back(v.get<std::string>());
    std::size_t bound = 24;
    if (j.contains("degree_bound")) bound = j["degree_bound"].get<std::size_t>();

    std::vector<std::vector<std::pair<std::size_t, std::string>>> images(vars.size());
    auto var_index = [&](const std::string& name, const char* what) {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return i;
        throw parse_error(std::string(what) + ": unknown variable " + name);
    };
    if (j.contains("derivations")) {
        const json& jder = j["derivations"];
        if (!jder.is_object()) throw parse_error("tower: derivations must be an object");
        for (const auto& [var, row] : jder.items()) {
            std::size_t i = var_index(var, "tower derivations");
            if (!row.is_object()) throw parse_error("tower derivations: rows are objects");
            for (const auto& [lower, poly] : row.items()) {
                std::size_t lj = var_index(lower, "tower derivations");
                if (!poly.is_string())
                    throw parse_error("tower derivations: images must be strings");
                images[i].emplace_back(lj, poly.get<std::string>());
            }
        }
    }
    try {
        return make_ore_tower(dom, vars, images, bound);
    } catch (const parse_error&) {
        throw;
    } catch (const error& e) {
        throw parse_error(std::string("tower: ") + e.what());
    }
}

inline action_spec action_from_json(const json& j) {
    action_spec spec;
    spec.hopf = hopf_from_json(detail::need(j, "hopf", "action file"));
    spec.tower = tower_from_json(detail::need(j, "tower", "action file"));
    if (!(*spec.hopf.dom == *spec.tower->coeff))
        throw parse_error("action file: hopf and tower coefficient fields differ");
    const json& ja = detail::need(j, "action", "action file");
    if (!ja.is_object()) throw parse_error("action: must map basis names to rows");
    std::optional<std::size_t> unit = spec.hopf.unit_index();
    std::size_t n = spec.tower->levels();
    spec.image.resize(spec.hopf.dim);
    for (std::size_t b = 0; b < spec.hopf.dim; ++b) {
        const std::string& name = spec.hopf.basis_names[b];
        auto row = ja.find(name);
        if (row == ja.end()) {
            if (unit && *unit == b) {
                for (std::size_t v = 0; v < n; ++v)
                    spec.image[b].push_back(ore_element::variable(spec.tower, v));
                continue;
            }
            throw parse_error("action: missing row for basis element " + name);
        }
        if (!row->is_object()) throw parse_error("action: rows are objects keyed by variable");
        for (std::size_t v = 0; v < n; ++v) {
            auto img = row->find(spec.tower->vars[v]);
            if (img == row->end())
                throw parse_error("action: row " + name + " misses variable " +
                                  spec.tower->vars[v]);
            if (!img->is_string()) throw parse_error("action: images must be strings");
            try {
                spec.image[b].push_back(ore_element::parse(spec.tower, img->get<std::string>()));
            } catch (const error& e) {
                throw parse_error("action row " + name + ": " + e.what());
            }
        }
    }
    return spec;
}

// --- canonical writers (stable key and entry order) -------------------------

inline ordered_json hopf_to_json(const hopf_data& h) {
    ordered_json out;
    out["field"] = field_to_json(h.dom);
    out["dim"] = h.dim;
    out["basis"] = h.basis_names;
    if (auto u = h.unit_index())
        out["unit"] = *u;
    else {
        ordered_json uv = ordered_json::array();
        for (const auto& s : h.unit) uv.push_back(s.str());
        out["unit"] = uv;
    }
    auto table3 = [&](const std::vector<scalar>& t) {
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < h.dim; ++i)
            for (std::size_t jj = 0; jj < h.dim; ++jj)
                for (std::size_t k = 0; k < h.dim; ++k) {
                    const scalar& v = t[(i * h.dim + jj) * h.dim + k];
                    if (!v.is_zero()) rows.push_back({i, jj, k, v.str()});
                }
        return rows;
    };
    out["mult"] = table3(h.mult);
    out["comult"] = table3(h.comult);
    ordered_json srows = ordered_json::array();
    for (std::size_t i = 0; i < h.dim; ++i)
        for (std::size_t jj = 0; jj < h.dim; ++jj)
            if (!h.s(i, jj).is_zero()) srows.push_back({i, jj, h.s(i, jj).str()});
    out["antipode"] = srows;
    ordered_json crow = ordered_json::array();
    for (const auto& s : h.counit) crow.push_back(s.str());
    out["counit"] = crow;
    return out;
}

inline ordered_json tower_to_json(const tower_ptr& tw) {
    ordered_json out;
    out["coeff_field"] = field_to_json(tw->coeff);
    out["vars"] = tw->vars;
    ordered_json der = ordered_json::object();
    for (std::size_t i = 0; i < tw->levels(); ++i) {
        if (tw->derivation_is_zero(i)) continue;
        ordered_json row = ordered_json::object();
        for (std::size_t j = 0; j < i; ++j) {
            if (tw->deriv[i][j].empty()) continue;
            ore_element img = ore_element::zero(tw);
            for (const auto& [e, c] : tw->deriv[i][j])
                img = img + ore_element::monomial(tw, e, c);
            row[tw->vars[j]] = img.str();
        }
        der[tw->vars[i]] = row;
    }
    out["derivations"] = der;
    out["degree_bound"] = tw->degree_bound;
    return out;
}

inline ordered_json action_to_json(const action_spec& spec) {
    ordered_json out;
    out["hopf"] = hopf_to_json(spec.hopf);
    out["tower"] = tower_to_json(spec.tower);
    ordered_json rows = ordered_json::object();
    for (std::size_t b = 0; b < spec.hopf.dim; ++b) {
        ordered_json row = ordered_json::object();
        for (std::size_t v = 0; v < spec.tower->levels(); ++v)
            row[spec.tower->vars[v]] = spec.image[b][v].str();
        rows[spec.hopf.basis_names[b]] = row;
    }
    out["action"] = rows;
    return out;
}

// --- file helpers ------------------------------------------------------------

inline json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
}

inline action_spec action_from_file(const std::string& path) {
    return action_from_json(parse_json_file(path));
}

// FNV-1a 64-bit digest of the canonical serialization, as fixed-width hex
inline std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

inline std::string action_digest(const action_spec& spec) {
    return fnv1a_digest(action_to_json(spec).dump());
}

} // namespace hopfore
