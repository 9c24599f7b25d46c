#pragma once

#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "sp/stepper.hpp"

namespace sp {

struct ContractivityReport {
    int trials = 0;
    Index steps = 0;
    std::vector<Monitor> monitors;
    std::vector<Violation> violations;  // annotated with trial via the step field ordering
    std::vector<int> violation_trial;
    bool contractive() const { return violations.empty(); }
};

/// Random compactly supported initial datum on the reduced index set.
inline Field random_reduced_field(const DiscreteOperator& op, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Field u(op.n());
    for (Index r = 0; r < op.n(); ++r) u[r] = cplx(g(rng), g(rng));
    return u;
}

/**
 * Homogeneous evolutions from seeded random data; asserts every monitored
 * weighted norm is non-increasing within the stepper tolerance. Violations
 * are reported with trial, monitor and step; the probe never throws on them.
 */
inline ContractivityReport contractivity_probe(const DiscreteOperator& op, int trials,
                                               const StepperConfig& cfg, std::uint64_t seed) {
    ContractivityReport rep;
    rep.trials = trials;
    rep.monitors = cfg.monitors;
    rep.steps = static_cast<Index>(std::llround(cfg.T / cfg.dt));
    for (int t = 0; t < trials; ++t) {
        Field u0 = random_reduced_field(op, seed + 0x9e3779b97f4a7c15ULL * (t + 1));
        EvolutionTrace tr = evolve(op, u0, nullptr, cfg);
        for (const auto& v : tr.violations) {
            rep.violations.push_back(v);
            rep.violation_trial.push_back(t);
        }
    }
    return rep;
}

struct RaySample {
    cplx mu;
    double bound_k0 = 0;  // |mu| * ||(mu+A)^{-1}||_{2,lambda'}
    double bound_k1 = 0;  // sampled graph-norm bound
};

struct SectorReport {
    std::vector<cplx> eigenvalues;  // sorted by real part (dense path only)
    double min_real = 0;
    bool dense = false;
    std::vector<double> thetas;
    std::vector<RaySample> samples;
    double E_bound = 0;  // sup over samples of bound_k0 and bound_k1
    bool pass = false;
};

/**
 * Spectrum and resolvent-ray probe. Dense eigensolve for n <= dense_limit,
 * resolvent sampling along the rays arg(mu) = +-(pi - theta) in any case.
 * The k=1 bound measures the solution in the order-2 weighted norm at
 * exponent lambda'-lambda against the datum at lambda'.
 */
inline SectorReport sector_probe(const DiscreteOperator& op, const DiscreteCalculus& calc,
                                 const WeightedMeasure& meas, double lambda_prime,
                                 const std::vector<double>& theta_list, int samples_per_ray,
                                 Index dense_limit = 2000) {
    SectorReport rep;
    rep.thetas = theta_list;
    const Index n = op.n();
    const double anorm = op.matrix().norm();

    if (n <= dense_limit) {
        Eigen::MatrixXcd dense(op.matrix());
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(dense, false);
        if (es.info() == Eigen::Success) {
            rep.dense = true;
            rep.eigenvalues.assign(es.eigenvalues().data(),
                                   es.eigenvalues().data() + es.eigenvalues().size());
            std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
                      [](cplx a, cplx b) { return a.real() < b.real(); });
            rep.min_real = rep.eigenvalues.front().real();
        }
    }

    const ModelManifold& M = op.manifold();
    const double lambda = op.spec().lambda;
    bool all_finite = true;
    for (double th : theta_list) {
        for (int sgn : {+1, -1}) {
            const double arg = sgn * (kPi - th);
            for (int k = 0; k < samples_per_ray; ++k) {
                const double r = anorm * std::pow(10.0, -3.0 + 6.0 * double(k) /
                                                              double(std::max(samples_per_ray - 1, 1)));
                const cplx mu = r * std::exp(cplx(0, arg));
                RaySample s;
                s.mu = mu;
                try {
                    ShiftedSolver solver(op.matrix(), mu);
                    s.bound_k0 = std::abs(mu) * resolvent_norm_weighted(solver, op.weights(),
                                                                        op.rho(), lambda_prime);
                    // sampled k=1 bound from a fixed probe datum
                    Field f(n);
                    for (Index i = 0; i < n; ++i) f[i] = cplx(std::sin(0.7 * double(i) + 0.3), 0.2);
                    Field u = solver.solve(f, 1e-6);
                    Field uf = op.prolong(u), ff = op.prolong(f);
                    const double nu = weighted_sobolev_norm(
                        uf, {2.0, lambda_prime - lambda, 2}, M.rho, meas, calc);
                    const double nf = weighted_lp_norm(ff, {2.0, lambda_prime, 0}, M.rho, meas);
                    s.bound_k1 = (nf > 0) ? nu / nf : 0.0;
                } catch (const SolverError&) {
                    all_finite = false;
                    s.bound_k0 = std::numeric_limits<double>::infinity();
                }
                rep.E_bound = std::max({rep.E_bound, s.bound_k0, s.bound_k1});
                rep.samples.push_back(s);
            }
        }
    }
    rep.pass = all_finite && std::isfinite(rep.E_bound) && (!rep.dense || rep.min_real > 0);
    return rep;
}

struct StationaryResult {
    Field solution;     // reduced
    double graph_ratio; // ||u||_{2,2;lambda'-lambda} / ||f||_{0,2;lambda'}
};

/// Solves A u = f and reports the discrete isomorphism ratio.
inline StationaryResult stationary_solve(const DiscreteOperator& op, const DiscreteCalculus& calc,
                                         const WeightedMeasure& meas, const Field& f) {
    StationaryResult out;
    out.solution = resolvent_apply(op, cplx(0), f);
    const ModelManifold& M = op.manifold();
    const double lp = op.spec().lambda_prime, l = op.spec().lambda;
    Field uf = op.prolong(out.solution), ff = op.prolong(f);
    const double nu = weighted_sobolev_norm(uf, {2.0, lp - l, 2}, M.rho, meas, calc);
    const double nf = weighted_lp_norm(ff, {2.0, lp, 0}, M.rho, meas);
    out.graph_ratio = (nf > 0) ? nu / nf : 0.0;
    return out;
}

/**
 * Discrete sufficient conditions for weighted sup/1-norm contractivity of the
 * implicit Euler step: sign pattern plus the action of A on rho^{-theta} and
 * of the measure-adjoint on rho^{theta}. Used as a shipping-time preflight.
 */
struct MMatrixWeightedCheck {
    bool sign_pattern = false;
    double min_row_action = 0;  // min over rows of rho^{theta} (A rho^{-theta})
    double min_col_action = 0;  // min over cols of the weighted column condition
    bool sufficient() const {
        return sign_pattern && min_row_action > -1e-10 && min_col_action > -1e-10;
    }
};

inline MMatrixWeightedCheck weighted_mmatrix_check(const DiscreteOperator& op, double theta) {
    MMatrixWeightedCheck out;
    out.sign_pattern = true;
    const SpMat& A = op.matrix();
    for (Index k = 0; k < A.outerSize(); ++k) {
        for (SpMat::InnerIterator it(A, k); it; ++it) {
            if (std::abs(it.value().imag()) > 1e-12) out.sign_pattern = false;
            if (it.row() != it.col() && it.value().real() > 1e-12) out.sign_pattern = false;
        }
    }
    const Index n = op.n();
    Field rm(n), rp(n);
    for (Index r = 0; r < n; ++r) {
        rm[r] = std::pow(op.rho()[r], -theta);
        rp[r] = std::pow(op.rho()[r], theta);
    }
    Field row = A * rm;
    out.min_row_action = std::numeric_limits<double>::infinity();
    for (Index r = 0; r < n; ++r)
        out.min_row_action =
            std::min(out.min_row_action, (row[r] * std::pow(op.rho()[r], theta)).real());
    // column condition: (A^T w rho^theta) >= 0 nodewise, normalized by w rho^theta
    Field wr(n);
    for (Index r = 0; r < n; ++r) wr[r] = op.weights()[r] * rp[r];
    Field col = A.transpose() * wr;
    out.min_col_action = std::numeric_limits<double>::infinity();
    for (Index r = 0; r < n; ++r)
        out.min_col_action = std::min(out.min_col_action, (col[r] / wr[r]).real());
    return out;
}

}  // namespace sp
