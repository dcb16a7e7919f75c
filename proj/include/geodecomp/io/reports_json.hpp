#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "geodecomp/conjugacy.hpp"
#include "geodecomp/decomp.hpp"
#include "geodecomp/flow.hpp"
#include "geodecomp/io/spec_json.hpp"
#include "geodecomp/poincare.hpp"
#include "geodecomp/polyfield.hpp"

namespace geodecomp::io {

inline constexpr int kSchemaVersion = 1;

inline json point_decomposition_to_json(const PointDecomposition& d) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["point"] = d.point;
    j["H"] = d.H;
    j["H_star"] = d.H_star;
    j["grad_H"] = d.grad_H;
    j["grad_H_star"] = d.grad_H_star;
    j["u"] = d.u;
    j["u_star"] = d.u_star;
    j["orthogonality_residual"] = {{"right", d.residual_right}, {"left", d.residual_left}};
    return j;
}

inline json exact_decomposition_to_json(const ExactDecomposition& d, const std::string& side) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["side"] = side;
    j["potential"] = {{"text", d.potential.str()}, {"terms", poly_to_json(d.potential)}};
    json comps_text = json::array(), comps_terms = json::array();
    for (const Poly& p : d.orthogonal.components) {
        comps_text.push_back(p.str());
        comps_terms.push_back(poly_to_json(p));
    }
    j["orthogonal"] = {{"text", comps_text}, {"terms", comps_terms}};
    return j;
}

inline json solvability_to_json(const SolvabilityReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["side"] = side_name(r.side);
    j["verdict"] = r.verdict;
    j["max_residual"] = r.max_residual;
    j["threshold"] = r.threshold;
    j["exact_mode"] = r.exact_mode;
    j["sample_count"] = r.sample_points.size();
    if (!r.worst_point.empty()) j["worst_point"] = r.worst_point;
    return j;
}

inline json hypothesis_to_json(const HypothesisReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["structure_admissible"] = r.structure_admissible;
    if (!r.structure_rationale.empty()) j["structure_rationale"] = r.structure_rationale;
    j["origin_is_equilibrium"] = r.origin_is_equilibrium;
    j["origin_residual"] = r.origin_residual;
    j["unique_equilibrium_in_box"] = r.unique_equilibrium_in_box;
    j["equilibria_found"] = r.equilibria_found;
    json eq = json::array();
    for (const Vec& e : r.equilibria) eq.push_back(e);
    j["equilibria"] = std::move(eq);
    j["attraction"] = attraction_name(r.attraction);
    j["trials"] = {{"total", r.trials_total},
                   {"attracted", r.trials_attracted},
                   {"repelled", r.trials_repelled}};
    j["criterion_applicable"] = r.criterion_applicable;
    return j;
}

inline json pair_to_json(const PairReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["first"] = hypothesis_to_json(r.first);
    j["second"] = hypothesis_to_json(r.second);
    j["reduction_valid"] = r.reduction_valid;
    auto drift_stats = [](const std::vector<FlowTrace>& traces) {
        json arr = json::array();
        for (const FlowTrace& tr : traces) {
            double drift = 0.0;
            if (!tr.states.empty()) {
                double n0 = 0.0;
                for (double c : tr.states.front()) n0 += c * c;
                for (const Vec& s : tr.states) {
                    double ns = 0.0;
                    for (double c : s) ns += c * c;
                    drift = std::max(drift, std::fabs(ns - n0));
                }
            }
            arr.push_back({{"steps", tr.stats.accepted}, {"norm2_drift", drift}});
        }
        return arr;
    };
    j["sphere_traces"] = {{"first", drift_stats(r.sphere_traces_first)},
                          {"second", drift_stats(r.sphere_traces_second)}};
    return j;
}

/// CSV with the fixed header `t,x1,...,xn`, full double precision.
inline std::string trace_to_csv(const FlowTrace& tr) {
    std::string out = "t";
    const int n = tr.states.empty() ? 0 : static_cast<int>(tr.states.front().size());
    for (int i = 1; i <= n; ++i) out += ",x" + std::to_string(i);
    out += '\n';
    char buf[64];
    for (size_t k = 0; k < tr.times.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", tr.times[k]);
        out += buf;
        for (double c : tr.states[k]) {
            std::snprintf(buf, sizeof buf, ",%.17g", c);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace geodecomp::io
