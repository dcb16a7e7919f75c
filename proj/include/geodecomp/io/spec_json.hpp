#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "geodecomp/errors.hpp"
#include "geodecomp/fields.hpp"
#include "geodecomp/geometry.hpp"
#include "geodecomp/polyfield.hpp"
#include "geodecomp/rational.hpp"

namespace geodecomp::io {

using nlohmann::json;

/// Parsed form of a system spec file: a geometric structure plus a vector
/// field, everything rational-exact. Rationals travel as "p/q" strings.
struct SystemSpec {
    int dimension = 0;

    std::string structure_kind;                    // euclidean | symplectic | minkowski | custom
    std::optional<Matrix<Rational>> gram;          // present iff custom

    std::string field_kind;                        // builtin | polynomial
    std::string builtin_name;                      // lotka_volterra | rikitake | linear
    std::map<std::string, Rational> params;        // builtin parameters
    std::optional<PolyVectorField> polynomial;     // present iff polynomial

    GeometricStructure<Rational> structure_exact() const {
        if (structure_kind == "euclidean") return GeometricStructure<Rational>::euclidean(dimension);
        if (structure_kind == "symplectic") return GeometricStructure<Rational>::symplectic(dimension);
        if (structure_kind == "minkowski") return GeometricStructure<Rational>::minkowski(dimension);
        if (structure_kind == "custom") return GeometricStructure<Rational>::custom(*gram);
        throw SpecParseError("unknown structure kind '" + structure_kind + "'");
    }

    GeometricStructure<double> structure_numeric() const {
        if (structure_kind == "euclidean") return GeometricStructure<double>::euclidean(dimension);
        if (structure_kind == "symplectic") return GeometricStructure<double>::symplectic(dimension);
        if (structure_kind == "minkowski") return GeometricStructure<double>::minkowski(dimension);
        if (structure_kind == "custom") {
            Matrix<double> g(dimension, dimension);
            for (int i = 0; i < dimension; ++i)
                for (int j = 0; j < dimension; ++j) g(i, j) = to_double((*gram)(i, j));
            return GeometricStructure<double>::custom(std::move(g));
        }
        throw SpecParseError("unknown structure kind '" + structure_kind + "'");
    }

    Rational param(const std::string& name) const {
        auto it = params.find(name);
        if (it == params.end()) throw SpecParseError("missing builtin parameter '" + name + "'");
        return it->second;
    }

    /// Every supported field is polynomial; this is the exact form.
    PolyVectorField field_exact() const {
        if (field_kind == "polynomial") return *polynomial;
        if (builtin_name == "lotka_volterra")
            return lotka_volterra_poly(param("alpha"), param("beta"), param("gamma"), param("delta"));
        if (builtin_name == "rikitake") return rikitake_poly(param("mu"), param("a"));
        if (builtin_name == "linear") {
            Matrix<Rational> a(dimension, dimension);
            for (int i = 0; i < dimension; ++i)
                for (int j = 0; j < dimension; ++j)
                    a(i, j) = param("a" + std::to_string(i + 1) + std::to_string(j + 1));
            return linear_poly(a);
        }
        throw SpecParseError("unknown builtin field '" + builtin_name + "'");
    }

    NumericVectorField field_numeric() const {
        if (field_kind == "polynomial") return to_numeric(*polynomial, "polynomial");
        if (builtin_name == "lotka_volterra")
            return lotka_volterra(to_double(param("alpha")), to_double(param("beta")),
                                  to_double(param("gamma")), to_double(param("delta")));
        if (builtin_name == "rikitake") return rikitake(to_double(param("mu")), to_double(param("a")));
        if (builtin_name == "linear") {
            Mat a(dimension, dimension);
            for (int i = 0; i < dimension; ++i)
                for (int j = 0; j < dimension; ++j)
                    a(i, j) = to_double(param("a" + std::to_string(i + 1) + std::to_string(j + 1)));
            return linear_field(std::move(a));
        }
        throw SpecParseError("unknown builtin field '" + builtin_name + "'");
    }
};

namespace detail {

inline Rational rational_from_json(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw SpecParseError("rationals must be \"p/q\" strings (or integers)");
}

inline const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SpecParseError(std::string("missing key '") + key + "'");
    return *it;
}

}  // namespace detail

inline Poly poly_from_json(const json& terms, int dimension) {
    if (!terms.is_array()) throw SpecParseError("polynomial component must be an array of terms");
    Poly p(dimension);
    for (const json& term : terms) {
        const Rational c = detail::rational_from_json(detail::require(term, "c"));
        const json& ej = detail::require(term, "e");
        if (!ej.is_array() || static_cast<int>(ej.size()) != dimension)
            throw SpecParseError("term exponent list must have one entry per variable");
        Exponents e(dimension);
        for (int i = 0; i < dimension; ++i) {
            if (!ej[i].is_number_integer() || ej[i].get<long long>() < 0)
                throw SpecParseError("exponents must be nonnegative integers");
            e[i] = static_cast<uint32_t>(ej[i].get<long long>());
        }
        try {
            p.add_term(std::move(e), c);
        } catch (const DegreeLimitExceeded&) {
            throw SpecParseError("polynomial term exceeds the maximum total degree");
        }
    }
    return p;
}

inline json poly_to_json(const Poly& p) {
    json terms = json::array();
    const auto& map = p.terms();
    for (auto it = map.rbegin(); it != map.rend(); ++it) {
        json term;
        term["c"] = to_string(it->second);
        term["e"] = it->first;
        terms.push_back(std::move(term));
    }
    return terms;
}

inline SystemSpec parse_spec(const json& j) {
    SystemSpec spec;
    const json& dim = detail::require(j, "dimension");
    if (!dim.is_number_integer() || dim.get<int>() <= 0)
        throw SpecParseError("dimension must be a positive integer");
    spec.dimension = dim.get<int>();

    const json& st = detail::require(j, "structure");
    spec.structure_kind = detail::require(st, "kind").get<std::string>();
    if (spec.structure_kind == "custom") {
        const json& gj = detail::require(st, "gram");
        if (!gj.is_array() || static_cast<int>(gj.size()) != spec.dimension)
            throw SpecParseError("gram must be an n x n matrix");
        Matrix<Rational> g(spec.dimension, spec.dimension);
        for (int i = 0; i < spec.dimension; ++i) {
            if (!gj[i].is_array() || static_cast<int>(gj[i].size()) != spec.dimension)
                throw SpecParseError("gram must be an n x n matrix");
            for (int k = 0; k < spec.dimension; ++k) g(i, k) = detail::rational_from_json(gj[i][k]);
        }
        spec.gram = std::move(g);
    } else if (spec.structure_kind == "euclidean" || spec.structure_kind == "symplectic" ||
               spec.structure_kind == "minkowski") {
        if (st.contains("gram")) throw SpecParseError("gram is only allowed for custom structures");
    } else {
        throw SpecParseError("unknown structure kind '" + spec.structure_kind + "'");
    }

    const json& fd = detail::require(j, "field");
    spec.field_kind = detail::require(fd, "kind").get<std::string>();
    if (spec.field_kind == "builtin") {
        spec.builtin_name = detail::require(fd, "name").get<std::string>();
        if (fd.contains("params")) {
            for (const auto& [key, value] : fd.at("params").items())
                spec.params.emplace(key, detail::rational_from_json(value));
        }
        int expected = spec.dimension;
        if (spec.builtin_name == "lotka_volterra") expected = 2;
        else if (spec.builtin_name == "rikitake") expected = 3;
        else if (spec.builtin_name != "linear")
            throw SpecParseError("unknown builtin field '" + spec.builtin_name + "'");
        if (expected != spec.dimension)
            throw SpecParseError("builtin '" + spec.builtin_name + "' requires dimension " +
                                 std::to_string(expected));
    } else if (spec.field_kind == "polynomial") {
        const json& comps = detail::require(fd, "components");
        if (!comps.is_array() || static_cast<int>(comps.size()) != spec.dimension)
            throw SpecParseError("polynomial field needs one component per dimension");
        PolyVectorField f(spec.dimension);
        for (int i = 0; i < spec.dimension; ++i) f.components[i] = poly_from_json(comps[i], spec.dimension);
        spec.polynomial = std::move(f);
    } else {
        throw SpecParseError("unknown field kind '" + spec.field_kind + "'");
    }

    // eager validation: structure must construct (nondegenerate etc.)
    spec.structure_exact();
    if (spec.field_kind == "builtin") spec.field_exact();
    return spec;
}

inline SystemSpec parse_spec_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SpecParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_spec(j);
}

inline json serialize_spec(const SystemSpec& spec) {
    json j;
    j["dimension"] = spec.dimension;
    json st;
    st["kind"] = spec.structure_kind;
    if (spec.gram) {
        json rows = json::array();
        for (int i = 0; i < spec.dimension; ++i) {
            json row = json::array();
            for (int k = 0; k < spec.dimension; ++k) row.push_back(to_string((*spec.gram)(i, k)));
            rows.push_back(std::move(row));
        }
        st["gram"] = std::move(rows);
    }
    j["structure"] = std::move(st);
    json fd;
    fd["kind"] = spec.field_kind;
    if (spec.field_kind == "builtin") {
        fd["name"] = spec.builtin_name;
        json params;
        for (const auto& [key, value] : spec.params) params[key] = to_string(value);
        fd["params"] = std::move(params);
    } else {
        json comps = json::array();
        for (const Poly& p : spec.polynomial->components) comps.push_back(poly_to_json(p));
        fd["components"] = std::move(comps);
    }
    j["field"] = std::move(fd);
    return j;
}

}  // namespace geodecomp::io
