#pragma once

#include <cmath>
#include <string>

#include "sp/adjoint.hpp"
#include "sp/assemble.hpp"
#include "sp/core.hpp"

namespace sp {

struct RegularityReport {
    double sup_a = 0;        // sup rho^{lambda-2} |a|_g
    double sup_grad_a = 0;   // sup rho^{lambda-1} |nabla a|_g
    double sup_a1 = 0;       // sup rho^{lambda-1} |a1|_g
    double sup_a0 = 0;       // sup rho^{lambda} |a0|
    bool finite = false;
};

namespace detail {

// (1,1)-tensor components a^i_j = A^{ik} g_{kj} at a node (diagonal metric).
inline void mixed_components(const ModelManifold& M, const CoefficientSet& c, Index p,
                             double a[2][2]) {
    const double a01 = (c.A01.size() && M.dim() == 2) ? c.A01[p] : 0.0;
    a[0][0] = c.A00[p] * M.metric.g0[p];
    if (M.dim() == 2) {
        a[0][1] = a01 * M.metric.g1[p];
        a[1][0] = a01 * M.metric.g0[p];
        a[1][1] = c.A11[p] * M.metric.g1[p];
    } else {
        a[0][1] = a[1][0] = a[1][1] = 0;
    }
}

}  // namespace detail

/// Weighted sups of the coefficient fields ((rho,lambda)-regularity data).
inline RegularityReport check_regularity(const OperatorSpec& spec, const ModelManifold& M,
                                         const DiscreteCalculus& calc) {
    RegularityReport rep;
    const int d = M.dim();
    const Index n = M.size();
    const CoefficientSet& c = spec.coeffs;

    // |a|_g via orthonormal-frame Frobenius: entries A^{ij} sqrt(g_ii g_jj)
    for (Index p = 0; p < n; ++p) {
        if (!M.grid.active(p)) continue;
        double fro = c.A00[p] * M.metric.g0[p];  // A^{00} sqrt(g00 g00)
        fro *= fro;
        if (d == 2) {
            const double a01 = c.A01.size() ? c.A01[p] : 0.0;
            const double e01 = a01 * std::sqrt(M.metric.g0[p] * M.metric.g1[p]);
            const double e11 = c.A11[p] * M.metric.g1[p];
            fro += 2 * e01 * e01 + e11 * e11;
        }
        rep.sup_a = std::max(rep.sup_a,
                             std::pow(M.rho[p], spec.lambda - 2.0) * std::sqrt(fro));
    }

    // covariant derivative of the mixed components by finite differences
    {
        RealField comp[2][2];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) comp[i][j].resize(n);
        for (Index p = 0; p < n; ++p) {
            double a[2][2];
            detail::mixed_components(M, c, p, a);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) comp[i][j][p] = a[i][j];
        }
        Field dcomp[2][2][2];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    dcomp[k][i][j] = calc.partial(k, comp[i][j].cast<cplx>());
        for (Index p = 0; p < n; ++p) {
            if (!M.grid.interior(p)) continue;
            double a[2][2];
            detail::mixed_components(M, c, p, a);
            double s = 0;
            for (int k = 0; k < d; ++k) {
                for (int i = 0; i < d; ++i) {
                    for (int j = 0; j < d; ++j) {
                        double v = dcomp[k][i][j][p].real();
                        if (M.has_christoffel) {
                            const double t = M.grid.coord(0, p);
                            // Gamma^0_{11} = -t, Gamma^1_{01} = Gamma^1_{10} = 1/t
                            auto Gam = [&](int up, int lo1, int lo2) -> double {
                                if (up == 0 && lo1 == 1 && lo2 == 1) return -t;
                                if (up == 1 && ((lo1 == 0 && lo2 == 1) || (lo1 == 1 && lo2 == 0)))
                                    return 1.0 / t;
                                return 0.0;
                            };
                            for (int m = 0; m < d; ++m)
                                v += Gam(i, k, m) * a[m][j] - Gam(m, k, j) * a[i][m];
                        }
                        const double gi = (i == 0) ? M.metric.g0[p] : M.metric.g1[p];
                        const double gjinv = (j == 0) ? M.metric.ginv0[p] : M.metric.ginv1[p];
                        const double gkinv = (k == 0) ? M.metric.ginv0[p] : M.metric.ginv1[p];
                        s += gi * gjinv * gkinv * v * v;
                    }
                }
            }
            rep.sup_grad_a = std::max(rep.sup_grad_a,
                                      std::pow(M.rho[p], spec.lambda - 1.0) * std::sqrt(s));
        }
    }

    for (Index p = 0; p < n; ++p) {
        if (!M.grid.active(p)) continue;
        if (c.a1_0.size()) {
            double s = M.metric.g0[p] * std::norm(c.a1_0[p]);
            if (d == 2 && c.a1_1.size()) s += M.metric.g1[p] * std::norm(c.a1_1[p]);
            rep.sup_a1 = std::max(rep.sup_a1,
                                  std::pow(M.rho[p], spec.lambda - 1.0) * std::sqrt(s));
        }
        if (c.a0.size())
            rep.sup_a0 = std::max(rep.sup_a0, std::pow(M.rho[p], spec.lambda) * std::abs(c.a0[p]));
    }
    rep.finite = std::isfinite(rep.sup_a) && std::isfinite(rep.sup_grad_a) &&
                 std::isfinite(rep.sup_a1) && std::isfinite(rep.sup_a0);
    return rep;
}

/// Smallest generalized eigenvalue of the principal symbol against
/// rho^{2-lambda} |xi|_g^2; positive means (rho,lambda)-singular elliptic.
struct EllipticityReport {
    double C_sigma = 0;
    Index argmin_node = -1;
    bool elliptic = false;
};

inline EllipticityReport check_ellipticity(const OperatorSpec& spec, const ModelManifold& M) {
    EllipticityReport rep;
    rep.C_sigma = std::numeric_limits<double>::infinity();
    for (Index p = 0; p < M.size(); ++p) {
        if (!M.grid.active(p)) continue;
        // S = G^{1/2} A G^{1/2}, smallest eigenvalue over rho^{2-lambda}
        double lmin;
        if (M.dim() == 1) {
            lmin = spec.coeffs.A00[p] * M.metric.g0[p];
        } else {
            const double s00 = spec.coeffs.A00[p] * M.metric.g0[p];
            const double s11 = spec.coeffs.A11[p] * M.metric.g1[p];
            const double a01 = spec.coeffs.A01.size() ? spec.coeffs.A01[p] : 0.0;
            const double s01 = a01 * std::sqrt(M.metric.g0[p] * M.metric.g1[p]);
            const double tr = 0.5 * (s00 + s11);
            const double disc = std::sqrt(0.25 * (s00 - s11) * (s00 - s11) + s01 * s01);
            lmin = tr - disc;
        }
        const double val = lmin / std::pow(M.rho[p], 2.0 - spec.lambda);
        if (val < rep.C_sigma) {
            rep.C_sigma = val;
            rep.argmin_node = p;
        }
    }
    rep.elliptic = rep.C_sigma > 0;
    return rep;
}

/// Compensation bounds for the coercivity conditions; one entry per condition.
struct OmegaBound {
    double omega_A3 = 0, omega_A4 = 0, omega_A5 = 0;
    Index node_A3 = -1, node_A4 = -1, node_A5 = -1;
    double C1 = 1.99;
};

namespace detail {

inline double drift_weighted_norm(const ModelManifold& M, const VectorField& Y, Index p,
                                  double lambda) {
    double s = M.metric.g0[p] * std::norm(Y.c0[p]);
    if (M.dim() == 2) s += M.metric.g1[p] * std::norm(Y.c1[p]);
    return std::pow(M.rho[p], lambda - 1.0) * std::sqrt(s);
}

// discrete-divergence rows within two cells of a boundary carry the
// one-sided gradient stencils; certification sups sample rows clear of them
inline bool clear_of_boundary(const ModelManifold& M, Index p, Index margin) {
    const Grid& g = M.grid;
    const Index i = g.i0(p), j = g.i1(p);
    const Index n0 = g.n(0), n1 = (g.dim() == 2) ? g.n(1) : 1;
    for (Index di = -margin; di <= margin; ++di) {
        for (Index dj = -margin; dj <= margin; ++dj) {
            if (g.dim() == 1 && dj != 0) continue;
            Index ii = i + di, jj = j + dj;
            if (g.dim() == 2 && g.axis(1).periodic) jj = (jj + n1) % n1;
            if (ii < 0 || ii >= n0 || jj < 0 || jj >= n1) return false;
            if (!g.interior(g.idx(ii, jj))) return false;
        }
    }
    return true;
}

// max over sampled nodes of (v/C1)^2/C_sig - Re(rho^lambda pot)
inline std::pair<double, Index> omega_for(const ModelManifold& M, const VectorField& Y,
                                          const Field& pot, double lambda, double C1,
                                          double C_sig, Index margin = 0) {
    double best = -std::numeric_limits<double>::infinity();
    Index arg = -1;
    for (Index p = 0; p < M.size(); ++p) {
        if (!M.grid.interior(p)) continue;
        if (margin > 0 && !clear_of_boundary(M, p, margin)) continue;
        const double v = drift_weighted_norm(M, Y, p, lambda);
        const double re = std::pow(M.rho[p], lambda) *
                          (pot.size() ? pot[p].real() : 0.0);
        const double w = (v / C1) * (v / C1) / C_sig - re;
        if (w > best) {
            best = w;
            arg = p;
        }
    }
    return {best, arg};
}

}  // namespace detail

inline OmegaBound omega_bound(const OperatorSpec& spec, const ModelManifold& M,
                              const DiscreteCalculus& calc, double C_sig, double C1 = 1.99) {
    require(C1 > 0 && C1 < 2, "omega bound: C1 must lie in (0,2)");
    require(C_sig > 0, "omega bound: needs a positive ellipticity constant");
    OmegaBound ob;
    ob.C1 = C1;
    const double lp = spec.lambda_prime;
    const CoefficientSet& c = spec.coeffs;

    // (A3): drift variants {2 lp, 2 lp - lambda} against potential a0
    {
        Field a0 = c.a0.size() ? c.a0 : Field(Field::Zero(M.size()));
        auto r1 = detail::omega_for(M, detail::drift_variant(M, c, 2 * lp, false), a0,
                                    spec.lambda, C1, C_sig);
        auto r2 = detail::omega_for(M, detail::drift_variant(M, c, 2 * lp - spec.lambda, false),
                                    a0, spec.lambda, C1, C_sig);
        ob.omega_A3 = std::max(r1.first, r2.first);
        ob.node_A3 = (r1.first >= r2.first) ? r1.second : r2.second;
    }
    // (A4): drift 2 lp against both b(lp) and b~(lp); the potentials carry a
    // discrete divergence, so the sups sample rows clear of one-sided stencils
    {
        VectorField Y = detail::drift_variant(M, c, 2 * lp, false);
        auto r1 = detail::omega_for(M, Y, adjoint_potential_b(M, calc, c, lp), spec.lambda, C1,
                                    C_sig, 3);
        auto r2 = detail::omega_for(M, Y, adjoint_potential_b_tilde(M, calc, c, lp), spec.lambda,
                                    C1, C_sig, 3);
        ob.omega_A4 = std::max(r1.first, r2.first);
        ob.node_A4 = (r1.first >= r2.first) ? r1.second : r2.second;
    }
    // (A5): drift 2 lp - lambda against b(lp) and b~(lp - lambda)
    {
        VectorField Y = detail::drift_variant(M, c, 2 * lp - spec.lambda, false);
        auto r1 = detail::omega_for(M, Y, adjoint_potential_b(M, calc, c, lp), spec.lambda, C1,
                                    C_sig, 3);
        auto r2 = detail::omega_for(M, Y,
                                    adjoint_potential_b_tilde(M, calc, c, lp - spec.lambda),
                                    spec.lambda, C1, C_sig, 3);
        ob.omega_A5 = std::max(r1.first, r2.first);
        ob.node_A5 = (r1.first >= r2.first) ? r1.second : r2.second;
    }
    return ob;
}

/// Aggregated certification results; every constant reproduces across runs.
struct HypothesisReport {
    RegularityReport regularity;
    EllipticityReport ellipticity;
    OmegaBound omega;
    bool has_witness = false;
    double witness_c = 0, witness_M = 0;                 // headline pinch pair
    double witness_c_joint = 0, witness_M_joint = 0;     // single pair for the window
    double window_lo = 0, window_hi = 0;                 // certified Re(z) interval
    double window_C0 = 0, window_C1 = 0, window_omega = 0;
    bool window_ok = false;               // strict two-branch window
    bool window_contractivity_ok = false; // 2 lambda' branch window
    bool regular_flag = false, elliptic_flag = false;
    std::string first_failure;

    bool certified() const { return first_failure.empty(); }
};

}  // namespace sp
