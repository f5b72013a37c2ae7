#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "json.hpp"

#include "collatz/bounds.hpp"
#include "collatz/errors.hpp"
#include "collatz/polynomial.hpp"
#include "collatz/roots.hpp"
#include "collatz/trajectory.hpp"

namespace collatz {

inline std::string variant_name(Variant v) {
    return v == Variant::Standard ? "standard" : "alternative";
}

inline Variant variant_from_name(const std::string& s) {
    if (s == "standard" || s == "std") return Variant::Standard;
    if (s == "alternative" || s == "alt") return Variant::Alternative;
    throw Error("unknown variant name: " + s);
}

/// {"N": decimal string, "variant": name, "coeffs": decimal strings
/// ascending}.  Strings keep unbounded integers intact across round-trips.
inline nlohmann::json to_json(const CollatzPolynomial& p) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const mpz_class& c : p.coeffs) coeffs.push_back(c.get_str());
    return nlohmann::json{{"N", p.number.get_str()},
                          {"variant", variant_name(p.variant)},
                          {"degree", p.degree()},
                          {"coeffs", std::move(coeffs)}};
}

inline CollatzPolynomial polynomial_from_json(const nlohmann::json& j) {
    CollatzPolynomial p;
    p.number = mpz_class(j.at("N").get<std::string>());
    p.variant = variant_from_name(j.at("variant").get<std::string>());
    for (const auto& c : j.at("coeffs")) p.coeffs.emplace_back(c.get<std::string>());
    if (p.coeffs.empty()) throw Error("polynomial_from_json: empty coefficient list");
    return p;
}

/// Roots as [re, im] pairs, already sorted by (modulus, argument) inside
/// RootSet, so serialization is deterministic.
inline nlohmann::json to_json(const RootSet& rs) {
    nlohmann::json roots = nlohmann::json::array();
    for (const std::complex<double>& z : rs.roots)
        roots.push_back(nlohmann::json::array({z.real(), z.imag()}));
    return nlohmann::json{{"roots", std::move(roots)},
                          {"residuals", rs.residuals},
                          {"iterations", rs.iterations},
                          {"converged", rs.converged},
                          {"max_modulus", rs.max_modulus},
                          {"min_modulus", rs.min_modulus}};
}

/// Doubles are emitted as JSON numbers at shortest round-trip precision, so
/// every value survives parse → dump exactly; u_m keys are the decimal m.
inline nlohmann::json to_json(const BoundReport& rep) {
    nlohmann::json j{{"N", rep.number.get_str()},
                     {"variant", variant_name(rep.variant)},
                     {"degree", rep.degree},
                     {"base", rep.base},
                     {"h_proven", rep.h_proven},
                     {"fujiwara_modified", rep.fujiwara_modified},
                     {"fujiwara_classical", rep.fujiwara_classical},
                     {"lower", rep.lower}};
    if (rep.h_t) j["h_t"] = *rep.h_t;
    if (rep.alt_bound) j["alt_bound"] = *rep.alt_bound;
    nlohmann::json um = nlohmann::json::object();
    for (const auto& [m, u] : rep.u_m) um[std::to_string(m)] = u;
    j["u_m"] = std::move(um);
    if (rep.sun_hsieh_bound) j["sun_hsieh"] = *rep.sun_hsieh_bound;
    if (rep.empirical_max_modulus) j["empirical_max_modulus"] = *rep.empirical_max_modulus;
    if (rep.empirical_min_modulus) j["empirical_min_modulus"] = *rep.empirical_min_modulus;
    if (rep.empirical_max_modulus && rep.empirical_min_modulus)
        j["containment_violations"] = containment_violations(rep);
    return j;
}

}  // namespace collatz
