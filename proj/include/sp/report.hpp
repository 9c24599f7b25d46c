#pragma once

#include <fstream>

#include <json.hpp>

#include "sp/apps.hpp"

namespace sp {

inline json to_json(const HypothesisReport& h) {
    json j;
    j["regularity"] = {{"sup_a", h.regularity.sup_a},
                       {"sup_grad_a", h.regularity.sup_grad_a},
                       {"sup_a1", h.regularity.sup_a1},
                       {"sup_a0", h.regularity.sup_a0},
                       {"finite", h.regularity.finite}};
    j["ellipticity"] = {{"C_sigma", h.ellipticity.C_sigma},
                        {"argmin_node", h.ellipticity.argmin_node},
                        {"elliptic", h.ellipticity.elliptic}};
    j["omega"] = {{"A3", h.omega.omega_A3}, {"A4", h.omega.omega_A4},
                  {"A5", h.omega.omega_A5}, {"C1", h.omega.C1},
                  {"node_A3", h.omega.node_A3}, {"node_A4", h.omega.node_A4},
                  {"node_A5", h.omega.node_A5}};
    if (h.has_witness) {
        j["witness"] = {{"c", h.witness_c},
                        {"M", h.witness_M},
                        {"c_joint", h.witness_c_joint},
                        {"M_joint", h.witness_M_joint}};
    }
    if (h.window_contractivity_ok) {
        j["window"] = {{"a_lo", h.window_lo},      {"a_hi", h.window_hi},
                       {"C0", h.window_C0},        {"C1", h.window_C1},
                       {"omega", h.window_omega},  {"strict", h.window_ok}};
    }
    j["certified"] = h.certified();
    if (!h.first_failure.empty()) j["first_failure"] = h.first_failure;
    return j;
}

inline json to_json(const SectorReport& s) {
    json j;
    j["dense"] = s.dense;
    if (s.dense) {
        j["min_real"] = s.min_real;
        json evs = json::array();
        for (const auto& e : s.eigenvalues) evs.push_back({e.real(), e.imag()});
        j["eigenvalues"] = evs;
    }
    json samples = json::array();
    for (const auto& r : s.samples)
        samples.push_back({{"mu", {r.mu.real(), r.mu.imag()}},
                           {"bound_k0", r.bound_k0},
                           {"bound_k1", r.bound_k1}});
    j["samples"] = samples;
    j["thetas"] = s.thetas;
    j["E_bound"] = s.E_bound;
    j["pass"] = s.pass;
    return j;
}

inline json to_json(const RunReport& r) {
    json j;
    j["name"] = r.name;
    j["certified"] = r.certified;
    j["route"] = r.route_used;
    j["hypotheses"] = to_json(r.hyp);
    if (r.ran_contractivity) {
        j["contractivity"] = {{"trials", r.contractivity.trials},
                              {"steps", r.contractivity.steps},
                              {"violations", r.contractivity.violations.size()}};
    }
    if (r.ran_sector) j["sector"] = to_json(r.sector);
    if (r.ran_stationary) j["stationary_ratio"] = r.stationary_ratio;
    if (r.ran_trace) {
        j["evolution"] = {{"steps", r.trace.times.empty() ? 0 : r.trace.times.size() - 1},
                          {"violations", r.trace.violations.size()}};
    }
    if (r.ran_sensitivity) j["truncation_sensitivity"] = r.sensitivity;
    if (r.ran_mms) {
        json rows = json::array();
        for (const auto& row : r.mms.rows)
            rows.push_back({{"level", row.level},
                            {"n", row.n},
                            {"dt", row.dt},
                            {"error", row.error},
                            {"order", row.order}});
        j["mms"] = {{"rows", rows},
                    {"final_order", r.mms.final_order},
                    {"monotone", r.mms.monotone}};
    }
    j["regularity_growth"] = r.regularity_growth;
    if (r.equiv_sup > 0) j["distance_equivalence"] = {{"inf", r.equiv_inf}, {"sup", r.equiv_sup}};
    j["wall_seconds"] = r.wall_seconds;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

/// Manifold summary for the geometry export interface.
inline json manifold_summary(const ModelManifold& M) {
    json j;
    const char* kinds[] = {"cusp-interval", "pipe",         "cone",
                           "domain-with-holes", "punctured-domain", "heston-strip",
                           "degenerate-interval"};
    j["kind"] = kinds[static_cast<int>(M.kind)];
    j["dim"] = M.dim();
    j["nodes"] = M.size();
    j["interior"] = M.grid.count(NodeKind::Interior);
    j["dirichlet"] = M.grid.count(NodeKind::Dirichlet);
    j["truncation"] = M.grid.count(NodeKind::Truncation);
    j["eps"] = M.eps;
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0;
    for (Index p = 0; p < M.size(); ++p) {
        if (!M.grid.active(p)) continue;
        rmin = std::min(rmin, M.rho[p]);
        rmax = std::max(rmax, M.rho[p]);
    }
    j["rho_min"] = rmin;
    j["rho_max"] = rmax;
    if (M.cuspR) {
        j["cusp"] = {{"name", M.cuspR->name},
                     {"class", to_string(M.cusp_report.cls)},
                     {"inf_dR", M.cusp_report.inf_dR},
                     {"sup_dR", M.cusp_report.sup_dR},
                     {"sup_ddR", M.cusp_report.sup_absddR},
                     {"integral_divergent", M.cusp_report.integral_divergent}};
    }
    return j;
}

inline void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    require(out.good(), "cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

}  // namespace sp
