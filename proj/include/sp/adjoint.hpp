#pragma once

#include <cmath>

#include "sp/assemble.hpp"
#include "sp/calculus.hpp"
#include "sp/core.hpp"

namespace sp {

namespace detail {

/// Contravariant field (t * a.grad(log rho) + a1) for a drift variant t.
inline VectorField drift_variant(const ModelManifold& M, const CoefficientSet& c, double t,
                                 bool conj_a1) {
    const Index n = M.size();
    VectorField Y = VectorField::zero(n, M.dim());
    for (Index p = 0; p < n; ++p) {
        const double d0 = M.drho0[p] / M.rho[p];
        const double d1 = (M.dim() == 2) ? M.drho1[p] / M.rho[p] : 0.0;
        // (a . X)^k = A^{km} dX_m for covariant X
        double y0 = c.A00[p] * d0;
        double y1 = 0;
        if (M.dim() == 2) {
            const double a01 = c.A01.size() ? c.A01[p] : 0.0;
            y0 += a01 * d1;
            y1 = a01 * d0 + c.A11[p] * d1;
        }
        cplx a10 = c.a1_0.size() ? c.a1_0[p] : cplx(0);
        cplx a11 = c.a1_1.size() ? c.a1_1[p] : cplx(0);
        if (conj_a1) {
            a10 = std::conj(a10);
            a11 = std::conj(a11);
        }
        Y.c0[p] = t * y0 + a10;
        if (M.dim() == 2) Y.c1[p] = t * y1 + a11;
    }
    return Y;
}

/// (Y | grad log rho)_g pointwise.
inline Field pair_grad_log_rho(const ModelManifold& M, const VectorField& Y) {
    Field out(M.size());
    for (Index p = 0; p < M.size(); ++p) {
        const double g0 = M.metric.ginv0[p] * M.drho0[p] / M.rho[p];
        cplx s = M.metric.g0[p] * Y.c0[p] * g0;
        if (M.dim() == 2) {
            const double g1 = M.metric.ginv1[p] * M.drho1[p] / M.rho[p];
            s += M.metric.g1[p] * Y.c1[p] * g1;
        }
        out[p] = s;
    }
    return out;
}

}  // namespace detail

/**
 * Potential of the adjoint with respect to <.|.>_{2,lambda'/2}:
 *   b(l', a) = conj(a0) - div(l' a.grad log rho + conj(a1))
 *              - l' (l' a.grad log rho + conj(a1) | grad log rho)_g,
 * with the divergence taken by the discrete SBP operator.
 */
inline Field adjoint_potential_b(const ModelManifold& M, const DiscreteCalculus& calc,
                                 const CoefficientSet& c, double lp) {
    VectorField Y = detail::drift_variant(M, c, lp, /*conj_a1=*/true);
    Field divY = calc.div(Y);
    Field pairing = detail::pair_grad_log_rho(M, Y);
    Field out(M.size());
    for (Index p = 0; p < M.size(); ++p) {
        const cplx a0 = c.a0.size() ? std::conj(c.a0[p]) : cplx(0);
        out[p] = a0 - divY[p] - lp * pairing[p];
    }
    return out;
}

/// Dual potential b~(l', a) = a0 + div(l' a.grad log rho) - l'(l' a.grad log rho + a1|grad log rho)_g.
inline Field adjoint_potential_b_tilde(const ModelManifold& M, const DiscreteCalculus& calc,
                                       const CoefficientSet& c, double lp) {
    VectorField Ydiv = detail::drift_variant(M, c, lp, false);
    for (Index p = 0; p < M.size(); ++p) {
        Ydiv.c0[p] -= c.a1_0.size() ? c.a1_0[p] : cplx(0);  // div term carries only l' a.grad log rho
        if (M.dim() == 2) Ydiv.c1[p] -= c.a1_1.size() ? c.a1_1[p] : cplx(0);
    }
    Field divY = calc.div(Ydiv);
    VectorField Yfull = detail::drift_variant(M, c, lp, false);
    Field pairing = detail::pair_grad_log_rho(M, Yfull);
    Field out(M.size());
    for (Index p = 0; p < M.size(); ++p) {
        const cplx a0 = c.a0.size() ? c.a0[p] : cplx(0);
        out[p] = a0 + divY[p] - lp * pairing[p];
    }
    return out;
}

/// Coefficients of the adjoint operator A*(l'): same diffusion, reversed
/// drift -(2 l' a.grad log rho + conj(a1)), potential b(l',a) + w rho^{-lambda}.
inline OperatorSpec adjoint_spec(const OperatorSpec& spec, const ModelManifold& M,
                                 const DiscreteCalculus& calc) {
    OperatorSpec out = spec;
    VectorField Y = detail::drift_variant(M, spec.coeffs, 2.0 * spec.lambda_prime, true);
    out.coeffs.a1_0 = -Y.c0;
    if (M.dim() == 2) out.coeffs.a1_1 = -Y.c1;
    out.coeffs.a0 = adjoint_potential_b(M, calc, spec.coeffs, spec.lambda_prime);
    out.drift = DriftScheme::Centered;
    return out;
}

/// Coefficients of the dual operator A(l') = (A*(l'))^* w.r.t. L_2: drift
/// +(2 l' a.grad log rho + a1), potential b~(l',a) + w rho^{-lambda}.
inline OperatorSpec dual_spec(const OperatorSpec& spec, const ModelManifold& M,
                              const DiscreteCalculus& calc) {
    OperatorSpec out = spec;
    VectorField Y = detail::drift_variant(M, spec.coeffs, 2.0 * spec.lambda_prime, false);
    out.coeffs.a1_0 = Y.c0;
    if (M.dim() == 2) out.coeffs.a1_1 = Y.c1;
    out.coeffs.a0 = adjoint_potential_b_tilde(M, calc, spec.coeffs, spec.lambda_prime);
    out.drift = DriftScheme::Centered;
    return out;
}

/**
 * Exact matrix adjoint with respect to <u|v>_{2,lambda'/2} on interior nodes:
 * M* = D^{-1} A^H D with D = diag(w rho^{lambda'}). Satisfies
 * <A u|v> = <u|M* v> to rounding for every reduced pair.
 */
inline SpMat adjoint_matrix(const SpMat& A, const RealField& w, const RealField& rho,
                            double lambda_prime) {
    const Index n = A.rows();
    RealField d(n);
    for (Index r = 0; r < n; ++r) d[r] = w[r] * std::pow(rho[r], lambda_prime);
    SpMat Ah = A.adjoint();
    SpMat out =
        (d.cwiseInverse().cast<cplx>().asDiagonal() * Ah) * d.cast<cplx>().asDiagonal();
    return out;
}

inline SpMat adjoint_matrix(const DiscreteOperator& op, double lambda_prime) {
    return adjoint_matrix(op.matrix(), op.weights(), op.rho(), lambda_prime);
}

}  // namespace sp
