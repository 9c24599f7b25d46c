#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sp/norms.hpp"
#include "sp/solver.hpp"

namespace sp {

enum class Scheme { ImplicitEuler, CrankNicolson };

struct Monitor {
    double p = 2.0;       // infinity() for the sup norm
    double theta = 0.0;   // weight exponent lambda'
};

struct StepperConfig {
    Scheme scheme = Scheme::ImplicitEuler;
    double dt = 1e-2;
    double T = 1.0;
    std::vector<Monitor> monitors{{2.0, 0.0}};
    bool keep_snapshots = false;
    double violation_tol = 1e-10;  // relative per-step increase that counts as a violation

    void validate() const {
        require(dt > 0 && T > 0 && dt <= T, "stepper: need 0 < dt <= T");
        require(!monitors.empty(), "stepper: monitor list must be nonempty");
    }
};

struct Violation {
    int monitor = 0;
    Index step = 0;
    double before = 0, after = 0;
};

struct EvolutionTrace {
    std::vector<double> times;
    std::vector<std::vector<double>> norms;  // norms[m][step]
    std::vector<Field> snapshots;            // reduced fields, when requested
    std::vector<Violation> violations;

    bool monotone() const { return violations.empty(); }
};

namespace detail {

inline double reduced_norm(const DiscreteOperator& op, const Field& u, const Monitor& m) {
    if (std::isinf(m.p)) {
        double v = 0;
        for (Index r = 0; r < u.size(); ++r)
            v = std::max(v, std::pow(op.rho()[r], m.theta) * std::abs(u[r]));
        return v;
    }
    double acc = 0;
    for (Index r = 0; r < u.size(); ++r)
        acc += op.weights()[r] *
               std::pow(std::pow(op.rho()[r], m.theta) * std::abs(u[r]), m.p);
    return std::pow(acc, 1.0 / m.p);
}

}  // namespace detail

/**
 * Fixed-step evolution of u' + A u = f with implicit Euler or Crank-Nicolson.
 * Monitored weighted norms are recorded every step; an increase beyond the
 * relative tolerance is logged (never thrown).
 */
inline EvolutionTrace evolve(const DiscreteOperator& op, const Field& u0,
                             const std::function<Field(double)>& forcing,
                             const StepperConfig& cfg) {
    cfg.validate();
    const Index n = op.n();
    require(u0.size() == n, "evolve: initial datum has wrong size");

    const double dt = cfg.dt;
    const auto steps = static_cast<Index>(std::llround(cfg.T / dt));
    const cplx shift = (cfg.scheme == Scheme::ImplicitEuler) ? cplx(1.0 / dt) : cplx(2.0 / dt);
    // (1/dt + A) u_{n+1} = ... ; scaled form keeps the factorization well conditioned
    ShiftedSolver solver(op.matrix(), shift);

    EvolutionTrace tr;
    tr.norms.resize(cfg.monitors.size());
    Field u = u0;
    auto record = [&](double t, bool check) {
        tr.times.push_back(t);
        for (size_t m = 0; m < cfg.monitors.size(); ++m) {
            const double v = detail::reduced_norm(op, u, cfg.monitors[m]);
            if (check && !tr.norms[m].empty()) {
                const double prev = tr.norms[m].back();
                if (v > prev * (1.0 + cfg.violation_tol) + 1e-300)
                    tr.violations.push_back({int(m), static_cast<Index>(tr.norms[m].size()), prev, v});
            }
            tr.norms[m].push_back(v);
        }
        if (cfg.keep_snapshots) tr.snapshots.push_back(u);
    };
    record(0.0, false);

    for (Index s = 1; s <= steps; ++s) {
        const double t1 = double(s) * dt;
        Field rhs;
        if (cfg.scheme == Scheme::ImplicitEuler) {
            rhs = u / dt;
            if (forcing) rhs += forcing(t1);
        } else {
            rhs = 2.0 / dt * u - op.apply(u);
            if (forcing) rhs += 2.0 * forcing(t1 - 0.5 * dt);
        }
        try {
            u = solver.solve(rhs, 1e-8);
        } catch (const SolverError& e) {
            throw SolverError("evolve: step " + std::to_string(s) + ": " + e.what(),
                              e.condition_estimate);
        }
        record(t1, true);
    }
    return tr;
}

}  // namespace sp
