#pragma once

#include <chrono>
#include <filesystem>
#include <string>

#include "sp/config.hpp"
#include "sp/conjugate.hpp"
#include "sp/field_io.hpp"
#include "sp/hypotheses.hpp"
#include "sp/mms.hpp"
#include "sp/probes.hpp"

namespace sp {

struct ProblemConfig;
struct MmsTable;
inline MmsTable run_mms(const ProblemConfig& cfg, const std::string& solution, int levels);

struct RunReport {
    std::string name;
    HypothesisReport hyp;
    bool certified = false;
    std::string route_used;
    ContractivityReport contractivity;
    bool ran_contractivity = false;
    SectorReport sector;
    bool ran_sector = false;
    double stationary_ratio = 0;
    bool ran_stationary = false;
    MmsTable mms;
    bool ran_mms = false;
    EvolutionTrace trace;            // the driver's own initial value problem
    bool ran_trace = false;
    double sensitivity = 0;          // truncation sensitivity (relative change)
    bool ran_sensitivity = false;
    double regularity_growth = 0;   // sup growth factor on grid doubling
    double equiv_sup = 0, equiv_inf = 0;  // measured a^{1/(2-lambda)} ~ d constants
    double wall_seconds = 0;
    std::vector<std::string> notes;
};

namespace detail {

/// Smooth initial datum: product of per-axis half-sine profiles.
inline Field bump_datum(const ModelManifold& M) {
    Field u(M.size());
    for (Index p = 0; p < M.size(); ++p) {
        double v = 1.0;
        for (int k = 0; k < M.dim(); ++k) {
            const Axis& ax = M.grid.axis(k);
            if (ax.periodic) continue;
            const double a = ax.x.front(), b = ax.x.back();
            v *= std::sin(kPi * (M.grid.coord(k, p) - a) / (b - a));
        }
        u[p] = v;
    }
    return u;
}

/// Linear interpolation of a full-lattice field at a point (tensor grids).
inline cplx interp_field(const ModelManifold& M, const Field& u, double x, double y) {
    auto bracket = [](const Axis& ax, double v, Index& i, double& w) {
        const auto& xs = ax.x;
        if (v <= xs.front()) { i = 0; w = 0; return; }
        if (v >= xs.back()) { i = ax.n() - 2; w = 1; return; }
        Index lo = 0, hi = ax.n() - 1;
        while (hi - lo > 1) {
            const Index mid = (lo + hi) / 2;
            (xs[mid] <= v ? lo : hi) = mid;
        }
        i = lo;
        w = (v - xs[lo]) / (xs[lo + 1] - xs[lo]);
    };
    Index i, j = 0;
    double wx, wy = 0;
    bracket(M.grid.axis(0), x, i, wx);
    if (M.dim() == 1) return (1 - wx) * u[i] + wx * u[i + 1];
    bracket(M.grid.axis(1), y, j, wy);
    return (1 - wx) * (1 - wy) * u[M.grid.idx(i, j)] + wx * (1 - wy) * u[M.grid.idx(i + 1, j)] +
           (1 - wx) * wy * u[M.grid.idx(i, j + 1)] + wx * wy * u[M.grid.idx(i + 1, j + 1)];
}

inline double time_factor_value(const std::string& name, double t) {
    if (name == "sin") return 1.0 + 0.5 * std::sin(2.0 * kPi * t);
    return 1.0;
}

/// Full certification pipeline shared by the drivers.
inline HypothesisReport certify(const ProblemConfig& cfg, const ModelManifold& M,
                                const WeightedMeasure& meas, const DiscreteCalculus& calc,
                                const OperatorSpec& spec, std::string* route_used = nullptr) {
    HypothesisReport rep;
    rep.regularity = check_regularity(spec, M, calc);
    rep.regular_flag = rep.regularity.finite;
    if (!rep.regular_flag && rep.first_failure.empty()) rep.first_failure = "(A1) regularity";

    rep.ellipticity = check_ellipticity(spec, M);
    rep.elliptic_flag = rep.ellipticity.elliptic;
    if (!rep.elliptic_flag && rep.first_failure.empty()) rep.first_failure = "(A2) ellipticity";

    if (rep.elliptic_flag) {
        rep.omega = omega_bound(spec, M, calc, rep.ellipticity.C_sigma, cfg.op.C1);
    }

    std::string route = cfg.op.route;
    bool hl_ok = false;
    if (route == "hlambda" || route == "auto") {
        try {
            SingularityFunction S = singularity_function(M);
            double Mw = cfg.op.witness_M;
            WindowReport win;
            HLambdaReport pinch;
            if (Mw <= 0) {
                auto search = find_min_witness_scale(M, S, spec.lambda, spec.lambda_prime,
                                                     spec.coeffs, cfg.op.region_rho_max,
                                                     /*strict=*/false);
                if (search.ok) {
                    Mw = search.M;
                    win = search.window;
                    HWitness W = h_witness(M, spec.lambda, Mw, cfg.op.region_rho_max);
                    pinch = check_hlambda(M, S, W);
                }
            } else {
                HWitness W = h_witness(M, spec.lambda, Mw, cfg.op.region_rho_max);
                pinch = check_hlambda(M, S, W);
                if (pinch.ok)
                    win = hlambda_window(M, S, W, pinch, spec.coeffs, spec.lambda,
                                         spec.lambda_prime);
            }
            if (pinch.ok) {
                rep.has_witness = true;
                rep.witness_c = pinch.c;
                rep.witness_M = pinch.M;
                rep.witness_c_joint = pinch.c_joint;
                rep.witness_M_joint = pinch.M_joint;
            }
            if (win.contractivity_ok) {
                rep.window_ok = win.ok;
                rep.window_contractivity_ok = true;
                rep.window_lo = win.a_lo;
                rep.window_hi = win.a_hi;
                rep.window_C0 = win.C0;
                rep.window_C1 = win.C1;
                rep.window_omega = win.omega;
                hl_ok = true;
            }
        } catch (const ConfigError&) {
            // witness not admissible for these parameters (e.g. lambda = 1 or m)
        }
        if (route == "hlambda" && !hl_ok && rep.first_failure.empty())
            rep.first_failure = rep.has_witness ? "(H3) window" : "(H-lambda) pinch";
    }
    bool omega_ok = false;
    if (route == "omega" || (route == "auto" && !hl_ok)) {
        const double need =
            std::max({rep.omega.omega_A3, rep.omega.omega_A4, rep.omega.omega_A5});
        omega_ok = rep.elliptic_flag && spec.omega > need;
        if (!omega_ok && rep.first_failure.empty())
            rep.first_failure = "(A3)-(A5) compensation: omega <= omega_A";
    }
    if (route_used) *route_used = hl_ok ? "hlambda" : (omega_ok ? "omega" : "none");
    return rep;
}

/// Rothe-style stepping with per-step coefficient snapshots: the lower-order
/// coefficients are modulated by the configured time factor and the operator
/// is reassembled and refactored every step.
inline EvolutionTrace evolve_frozen(const ProblemConfig& cfg, const ModelManifold& M,
                                    const WeightedMeasure& meas, const DiscreteCalculus& calc,
                                    const Field& u0, const StepperConfig& sc) {
    sc.validate();
    const auto steps = static_cast<Index>(std::llround(sc.T / sc.dt));
    EvolutionTrace tr;
    tr.norms.resize(sc.monitors.size());
    Field u = u0;
    OperatorSpec base = build_operator(cfg.op, M);
    DiscreteOperator A0 = assemble(base, M, meas, calc);
    auto record = [&](const DiscreteOperator& A, double t, bool check) {
        tr.times.push_back(t);
        for (size_t m = 0; m < sc.monitors.size(); ++m) {
            double acc = 0;
            if (std::isinf(sc.monitors[m].p)) {
                for (Index r = 0; r < u.size(); ++r)
                    acc = std::max(acc,
                                   std::pow(A.rho()[r], sc.monitors[m].theta) * std::abs(u[r]));
            } else {
                for (Index r = 0; r < u.size(); ++r)
                    acc += A.weights()[r] *
                           std::pow(std::pow(A.rho()[r], sc.monitors[m].theta) * std::abs(u[r]),
                                    sc.monitors[m].p);
                acc = std::pow(acc, 1.0 / sc.monitors[m].p);
            }
            if (check && !tr.norms[m].empty() &&
                acc > tr.norms[m].back() * (1.0 + sc.violation_tol) + 1e-300)
                tr.violations.push_back({int(m), (Index)tr.norms[m].size(),
                                         tr.norms[m].back(), acc});
            tr.norms[m].push_back(acc);
        }
        if (sc.keep_snapshots) tr.snapshots.push_back(u);
    };
    record(A0, 0.0, false);
    for (Index st = 1; st <= steps; ++st) {
        const double t1 = double(st) * sc.dt;
        const double ph = time_factor_value(cfg.op.time_factor, t1);
        OperatorSpec spec = base;
        if (spec.coeffs.a1_0.size()) spec.coeffs.a1_0 *= ph;
        if (spec.coeffs.a1_1.size()) spec.coeffs.a1_1 *= ph;
        if (spec.coeffs.a0.size()) spec.coeffs.a0 *= ph;
        DiscreteOperator A = assemble(spec, M, meas, calc);
        ShiftedSolver solver(A.matrix(), cplx(1.0 / sc.dt));
        u = solver.solve(Field(u / sc.dt), 1e-8);
        record(A, t1, true);
    }
    return tr;
}

/// Relative change of the stationary solution when the truncation parameters
/// move (eps halved; for the strip also the width doubled), measured on the
/// monitored interior region of the base grid.
inline double truncation_sensitivity(const ProblemConfig& cfg, const ModelManifold& M,
                                     const WeightedMeasure& meas, const DiscreteCalculus& calc,
                                     const DiscreteOperator& A) {
    Field f0 = bump_datum(M);
    Field u0 = A.prolong(resolvent_apply(A, cplx(0), A.restrict_to(f0)));

    GeometryConfig gc = cfg.geometry;
    gc.eps = cfg.geometry.eps / 2.0;
    if (gc.kind == "heston-strip") gc.X = 2.0 * cfg.geometry.X;
    // refine the perturbed grid so interpolation error does not read as
    // truncation sensitivity
    gc.n = 2 * gc.n - 1;
    gc.n2 = 2 * gc.n2 - 1;
    ModelManifold M2 = build_geometry(gc);
    WeightedMeasure meas2 = WeightedMeasure::of(M2);
    DiscreteCalculus calc2(M2, meas2);
    OperatorSpec spec2 = build_operator(cfg.op, M2);
    DiscreteOperator A2 = assemble(spec2, M2, meas2, calc2);
    Field f2 = bump_datum(M2);
    // the datum is geometry-bound; sample the base profile on the fine grid
    for (Index p = 0; p < M2.size(); ++p) {
        const double x = M2.grid.coord(0, p);
        const double y = (M2.dim() == 2) ? M2.grid.coord(1, p) : 0.0;
        f2[p] = interp_field(M, f0, x, y);
    }
    Field u2 = A2.prolong(resolvent_apply(A2, cplx(0), A2.restrict_to(f2)));

    // monitored region: clear of the singular truncation and of the far-field
    // edges whose placement the perturbation moves
    double num = 0, den = 0;
    for (Index p = 0; p < M.size(); ++p) {
        if (!M.grid.interior(p)) continue;
        if (M.rho[p] < 4.0 * cfg.geometry.eps) continue;
        const double x = M.grid.coord(0, p);
        const double y = (M.dim() == 2) ? M.grid.coord(1, p) : 0.0;
        if (gc.kind == "heston-strip" &&
            (std::abs(x) > 0.7 * cfg.geometry.X || y > 0.85 * cfg.geometry.Y))
            continue;
        const cplx v2 = interp_field(M2, u2, x, y);
        num += meas.w[p] * std::norm(u0[p] - v2);
        den += meas.w[p] * std::norm(u0[p]);
    }
    return den > 0 ? std::sqrt(num / den) : 0.0;
}

inline double mms_error(const ModelManifold& M, const WeightedMeasure& meas,
                        const ManufacturedSolution& ms, const Field& uh_full, double T,
                        double lambda_prime) {
    Field ue = ms.exact(M, T);
    double acc = 0;
    for (Index p = 0; p < M.size(); ++p) {
        if (!M.grid.interior(p)) continue;
        const double chi = ms.interior_weight(M, p);
        const double w = meas.w[p] * chi * std::pow(M.rho[p], 2.0 * lambda_prime);
        acc += w * std::norm(uh_full[p] - ue[p]);
    }
    return std::sqrt(acc);
}

}  // namespace detail

/// Hypothesis checklist only; never evolves.
inline RunReport run_hypotheses(const ProblemConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.name = cfg.name;
    ModelManifold M = build_geometry(cfg.geometry);
    WeightedMeasure meas = WeightedMeasure::of(M);
    DiscreteCalculus calc(M, meas);
    OperatorSpec spec = build_operator(cfg.op, M);
    spec.validate(M);
    rep.hyp = detail::certify(cfg, M, meas, calc, spec, &rep.route_used);

    // refinement stability of the regularity sups
    {
        ModelManifold M2 = build_geometry(cfg.geometry, 1);
        WeightedMeasure meas2 = WeightedMeasure::of(M2);
        DiscreteCalculus calc2(M2, meas2);
        OperatorSpec spec2 = build_operator(cfg.op, M2);
        RegularityReport r2 = check_regularity(spec2, M2, calc2);
        const double base = std::max({rep.hyp.regularity.sup_a, rep.hyp.regularity.sup_grad_a,
                                      rep.hyp.regularity.sup_a1, rep.hyp.regularity.sup_a0, 1e-14});
        const double fine = std::max({r2.sup_a, r2.sup_grad_a, r2.sup_a1, r2.sup_a0, 1e-14});
        rep.regularity_growth = fine / base;
        if (rep.regularity_growth > 1.10) {
            rep.hyp.regular_flag = false;
            if (rep.hyp.first_failure.empty())
                rep.hyp.first_failure = "(A1) regularity sups grow under refinement";
        }
    }
    // collar geometries: report the largest collar width still certifying
    // the pinch conditions (no claim that it matches any sharp constant)
    if (cfg.geometry.kind == "domain-with-holes" || cfg.geometry.kind == "punctured-domain" ||
        cfg.geometry.kind == "degenerate-interval" || cfg.geometry.kind == "degenerate-disk") {
        double largest = 0;
        for (double r = cfg.geometry.collar; r <= 8.1 * cfg.geometry.collar; r *= 2.0) {
            try {
                GeometryConfig gc = cfg.geometry;
                gc.collar = r;
                ModelManifold Mr = build_geometry(gc);
                SingularityFunction Sr = singularity_function(Mr);
                auto pr = check_hlambda(Mr, Sr,
                                        h_witness(Mr, spec.lambda, 1.0, cfg.op.region_rho_max));
                if (pr.ok) largest = r;
            } catch (const std::exception&) {
                break;  // collars overlap or leave the domain
            }
        }
        if (largest > 0)
            rep.notes.push_back("largest certifying collar width: " + std::to_string(largest));
    }
    rep.certified = rep.hyp.certified();
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

/// Shared driver body: certify, probe, evolve, report.
inline RunReport run_driver(const ProblemConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.name = cfg.name;

    ModelManifold M = build_geometry(cfg.geometry);
    WeightedMeasure meas = WeightedMeasure::of(M);
    DiscreteCalculus calc(M, meas);
    OperatorSpec spec = build_operator(cfg.op, M);
    spec.validate(M);

    rep.hyp = detail::certify(cfg, M, meas, calc, spec, &rep.route_used);
    rep.certified = rep.hyp.certified();
    if (!rep.certified)
        throw ConfigError("certification failed before evolution: " + rep.hyp.first_failure);

    DiscreteOperator A = assemble(spec, M, meas, calc);

    auto has_probe = [&](const std::string& p) {
        return std::find(cfg.run.probes.begin(), cfg.run.probes.end(), p) != cfg.run.probes.end();
    };
    if (has_probe("contractivity")) {
        StepperConfig sc;
        sc.scheme = cfg.run.scheme;
        sc.dt = cfg.run.dt;
        sc.T = cfg.run.T;
        sc.monitors = cfg.run.monitors;
        rep.contractivity = contractivity_probe(A, cfg.run.trials, sc, cfg.run.seed);
        rep.ran_contractivity = true;
    }
    if (has_probe("sector")) {
        if (cfg.run.sector_coarse_n > 0) {
            GeometryConfig gc = cfg.geometry;
            gc.n = cfg.run.sector_coarse_n;
            gc.n2 = std::max<Index>(8, cfg.run.sector_coarse_n / 2);
            ModelManifold Ms = build_geometry(gc);
            WeightedMeasure meass = WeightedMeasure::of(Ms);
            DiscreteCalculus calcs(Ms, meass);
            OperatorSpec specs = build_operator(cfg.op, Ms);
            DiscreteOperator As = assemble(specs, Ms, meass, calcs);
            rep.sector = sector_probe(As, calcs, meass, spec.lambda_prime, cfg.run.sector_thetas,
                                      cfg.run.sector_samples);
        } else {
            rep.sector = sector_probe(A, calc, meas, spec.lambda_prime, cfg.run.sector_thetas,
                                      cfg.run.sector_samples);
        }
        rep.ran_sector = true;
    }
    if (has_probe("stationary")) {
        Field f(A.n());
        for (Index r = 0; r < A.n(); ++r)
            f[r] = std::pow(A.rho()[r], std::max(0.0, spec.lambda - 1.0));
        auto st = stationary_solve(A, calc, meas, f);
        rep.stationary_ratio = st.graph_ratio;
        rep.ran_stationary = true;
    }

    // the actual initial value problem: smooth bump datum, zero forcing,
    // frozen-coefficient stepping when the coefficients depend on time
    {
        StepperConfig sc;
        sc.scheme = cfg.run.scheme;
        sc.dt = cfg.run.dt;
        sc.T = cfg.run.T;
        sc.monitors = cfg.run.monitors;
        Field u0 = A.restrict_to(detail::bump_datum(M));
        if (cfg.op.time_factor.empty() || cfg.op.time_factor == "none") {
            rep.trace = evolve(A, u0, nullptr, sc);
        } else {
            rep.trace = detail::evolve_frozen(cfg, M, meas, calc, u0, sc);
        }
        rep.ran_trace = true;
    }

    if (has_probe("sensitivity")) {
        rep.sensitivity = detail::truncation_sensitivity(cfg, M, meas, calc, A);
        rep.ran_sensitivity = true;
        if (rep.sensitivity > 0.01)
            rep.notes.push_back("truncation sensitivity above 1%: tighten eps or enlarge the strip");
    }

    if (cfg.run.mms_levels >= 3) {
        rep.mms = run_mms(cfg, cfg.run.mms_solution, cfg.run.mms_levels);
        rep.ran_mms = true;
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

/// Manufactured-solution convergence study over >= 3 refinement levels.
inline MmsTable run_mms(const ProblemConfig& cfg, const std::string& solution, int levels) {
    require(levels >= 3, "mms: need at least 3 refinement levels");
    MmsTable table;
    for (int lvl = 0; lvl < levels; ++lvl) {
        ModelManifold M = build_geometry(cfg.geometry, lvl);
        WeightedMeasure meas = WeightedMeasure::of(M);
        DiscreteCalculus calc(M, meas);
        OperatorSpec spec = build_operator(cfg.op, M);
        DiscreteOperator A = assemble(spec, M, meas, calc);
        ManufacturedSolution ms = manufactured_solution(M, solution);

        Field Aphi = ms.apply_A_profile(M, spec);
        Field phi(M.size());
        for (Index p = 0; p < M.size(); ++p) phi[p] = ms.profile(M, p);
        auto forcing = [&](double t) {
            Field f(A.n());
            const double g = ms.time_factor(t), gd = ms.time_factor_dt(t);
            for (Index r = 0; r < A.n(); ++r) {
                const Index p = A.interior_nodes()[r];
                f[r] = gd * phi[p] + g * Aphi[p];
            }
            return f;
        };
        StepperConfig sc;
        sc.scheme = cfg.run.scheme;
        sc.dt = cfg.run.dt / double(Index(1) << lvl);
        sc.T = cfg.run.T;
        sc.monitors = {{2.0, cfg.op.lambda_prime}};
        sc.violation_tol = 1e9;  // convergence study, not a monotonicity probe
        sc.keep_snapshots = true;
        Field u0 = A.restrict_to(ms.exact(M, 0.0));
        EvolutionTrace tr = evolve(A, u0, forcing, sc);
        Field ufin = A.prolong(tr.snapshots.back());

        MmsRow row;
        row.level = lvl;
        row.n = A.n();
        row.dt = sc.dt;
        row.error = detail::mms_error(M, meas, ms, ufin, sc.T, cfg.op.lambda_prime);
        if (!table.rows.empty()) {
            row.order = std::log2(table.rows.back().error / row.error);
            if (row.error > table.rows.back().error) table.monotone = false;
        }
        table.rows.push_back(row);
    }
    // least-squares slope of log2(error) against level
    const auto n = table.rows.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double x = double(i), y = -std::log2(table.rows[i].error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    table.final_order = (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
    return table;
}

/// Heat flow on a domain with holes or a punctured domain (H-lambda route).
inline RunReport run_heat_on_holes(const ProblemConfig& cfg) {
    ProblemConfig c = cfg;
    require(c.geometry.kind == "domain-with-holes" || c.geometry.kind == "punctured-domain",
            "heat-on-holes: geometry must be domain-with-holes or punctured-domain");
    require(c.op.preset == "laplace-beltrami", "heat-on-holes: operator preset is laplace-beltrami");
    c.op.lambda = 2.0;
    if (c.op.route == "auto") c.op.route = "hlambda";
    // rejection of lambda = m for removed points happens in h_witness
    return run_driver(c);
}

/// Degenerate/singular problems on an interval or disk with compact boundary.
inline RunReport run_degenerate_domain(const ProblemConfig& cfg) {
    ProblemConfig c = cfg;
    require(c.geometry.kind == "degenerate-interval" || c.geometry.kind == "degenerate-disk",
            "degenerate-domain: geometry must be degenerate-interval or degenerate-disk");
    if (std::abs(c.op.lambda - 1.0) < 1e-12)
        throw ConfigError("degenerate-domain: lambda = 1 is excluded");
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    if (std::abs(c.op.lambda - 2.0) > 1e-12) {
        // measured equivalence constants of a(x)^{1/(2-lambda)} against the distance
        ModelManifold M = build_geometry(c.geometry);
        OperatorSpec spec = build_operator(c.op, M);
        for (Index p = 0; p < M.size(); ++p) {
            if (!M.grid.active(p) || !M.on_collar_plateau(p)) continue;
            const double a = spec.coeffs.A00[p] / M.metric.ginv0[p];
            const double q = std::pow(a, 1.0 / (2.0 - c.op.lambda)) / M.rho[p];
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        if (!(hi > 0) || hi / lo > 4.0)
            throw ConfigError("degenerate-domain: a^{1/(2-lambda)} is not comparable to the distance");
    } else {
        lo = hi = 1.0;
    }
    RunReport main = run_driver(c);
    main.equiv_inf = lo;
    main.equiv_sup = hi;
    return main;
}

/// Generalized Heston problem on the truncated strip.
inline RunReport run_heston(const ProblemConfig& cfg) {
    ProblemConfig c = cfg;
    require(c.geometry.kind == "heston-strip", "heston: geometry must be heston-strip");
    require(c.op.preset == "heston", "heston: operator preset is heston");
    c.op.heston.validate();  // rejects alpha = 1 and |corr| >= 1
    c.op.lambda = c.op.heston.lambda();
    if (c.op.route == "auto") c.op.route = "omega";
    return run_driver(c);
}

/// Dispatch by the configured driver name.
inline RunReport run_config(const ProblemConfig& cfg) {
    if (cfg.driver == "heat-on-holes") return run_heat_on_holes(cfg);
    if (cfg.driver == "degenerate-domain") return run_degenerate_domain(cfg);
    if (cfg.driver == "heston") return run_heston(cfg);
    if (cfg.driver == "hypotheses") return run_hypotheses(cfg);
    return run_driver(cfg);
}

}  // namespace sp
