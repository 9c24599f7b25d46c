#pragma once

#include <cmath>

#include "sp/core.hpp"
#include "sp/manifold.hpp"

namespace sp {

/**
 * Coefficient fields of the divergence-form operator
 *   A u = -div(a.grad u) + C(grad u, a1) + a0 u.
 * The diffusion tensor is stored in contravariant form: flux^k = A^{kl} d_l u,
 * with A^{kl} = a^k_m g^{ml}; symmetry of the (1,1)-tensor a is equivalent to
 * symmetry of A^{kl}.
 */
struct CoefficientSet {
    RealField A00, A01, A11;  // contravariant diffusion (A01 empty => diagonal)
    Field a1_0, a1_1;         // contravariant drift components
    Field a0;                 // complex potential
    double holder_exponent = 0;  // recorded time regularity of coefficient data

    bool has_mixed() const { return A01.size() > 0 && A01.cwiseAbs().maxCoeff() > 0; }

    void validate(Index n, int dim) const {
        require(A00.size() == n, "coefficients: A00 size mismatch");
        if (dim == 2) require(A11.size() == n, "coefficients: A11 size mismatch");
        auto finite = [](const auto& f) {
            for (Index i = 0; i < f.size(); ++i)
                if (!std::isfinite(std::abs(f[i]))) return false;
            return true;
        };
        if (!finite(A00) || (dim == 2 && !finite(A11)) || (A01.size() && !finite(A01)))
            throw ValidationError("coefficients: non-finite diffusion entry");
        if (a1_0.size() && !finite(a1_0)) throw ValidationError("coefficients: non-finite drift");
        if (a1_1.size() && !finite(a1_1)) throw ValidationError("coefficients: non-finite drift");
        if (a0.size() && !finite(a0)) throw ValidationError("coefficients: non-finite potential");
    }
};

/// Builds coefficients from full per-node 2x2 matrices, rejecting asymmetry.
inline CoefficientSet coefficients_from_matrix(const RealField& a00, const RealField& a01,
                                               const RealField& a10, const RealField& a11) {
    for (Index i = 0; i < a01.size(); ++i)
        if (std::abs(a01[i] - a10[i]) > 1e-12 * (1.0 + std::abs(a01[i])))
            throw ValidationError("diffusion tensor must be symmetric");
    CoefficientSet c;
    c.A00 = a00;
    c.A01 = a01;
    c.A11 = a11;
    return c;
}

/// a = rho^{2-lambda} * (metric raise): the power-law diffusion family.
inline CoefficientSet coeffs_power(const ModelManifold& M, double lambda) {
    CoefficientSet c;
    const Index n = M.size();
    c.A00.resize(n);
    if (M.dim() == 2) c.A11.resize(n);
    for (Index p = 0; p < n; ++p) {
        const double f = std::pow(M.rho[p], 2.0 - lambda);
        c.A00[p] = f * M.metric.ginv0[p];
        if (M.dim() == 2) c.A11[p] = f * M.metric.ginv1[p];
    }
    c.a1_0 = Field::Zero(n);
    if (M.dim() == 2) c.a1_1 = Field::Zero(n);
    c.a0 = Field::Zero(n);
    return c;
}

/// a = identity raise: A u = -div(grad u) = -Laplace-Beltrami (lambda = 2).
inline CoefficientSet coeffs_laplace_beltrami(const ModelManifold& M) {
    return coeffs_power(M, 2.0);
}

struct HestonParams {
    double alpha = 0.5;  // degeneracy exponent, lambda = 2 - alpha
    double sigma = 1.0;
    double rho_corr = 0.0;  // correlation in (-1,1)
    // drift b^j = b0^j + y*b1^j, potential c = c0 + y*c1 + y^2*c2
    double b0[2] = {0, 0}, b1[2] = {0, 0};
    double c0 = 0, c1 = 0, c2 = 0;

    void validate() const {
        if (std::abs(alpha - 1.0) < 1e-12)
            throw ConfigError("heston: alpha = 1 is the classical Heston case and is not handled here");
        require(alpha <= 2.0, "heston: alpha must lie in (-inf,1) u (1,2]");
        require(sigma > 0, "heston: sigma must be positive");
        if (!(rho_corr > -1.0 && rho_corr < 1.0))
            throw ConfigError("heston: correlation must satisfy -1 < rho < 1");
    }
    double lambda() const { return 2.0 - alpha; }
};

/// Generalized Heston coefficients on the strip (Euclidean metric, rho = y).
inline CoefficientSet coeffs_heston(const ModelManifold& M, const HestonParams& hp) {
    hp.validate();
    require(M.kind == ManifoldKind::HestonStrip, "heston coefficients need a heston strip");
    const Index n = M.size();
    CoefficientSet c;
    c.A00.resize(n);
    c.A01.resize(n);
    c.A11.resize(n);
    c.a1_0.resize(n);
    c.a1_1.resize(n);
    c.a0.resize(n);
    const double axx = 0.5, axy = 0.5 * hp.rho_corr * hp.sigma, ayy = 0.5 * hp.sigma * hp.sigma;
    for (Index p = 0; p < n; ++p) {
        const double y = M.rho[p];
        const double ya = std::pow(y, hp.alpha);
        c.A00[p] = ya * axx;
        c.A01[p] = ya * axy;
        c.A11[p] = ya * ayy;
        const double yd = std::pow(y, hp.alpha - 1.0);
        c.a1_0[p] = yd * (hp.b0[0] + y * hp.b1[0]);
        c.a1_1[p] = yd * (hp.b0[1] + y * hp.b1[1]);
        c.a0[p] = std::pow(y, hp.alpha - 2.0) * (hp.c0 + y * hp.c1 + y * y * hp.c2);
    }
    return c;
}

/**
 * Degenerate-domain coefficients (A u = -a Lap u + a1.grad u + a0 u) rewritten
 * in divergence form: diffusion a*raise, drift a1 + grad a. The scalar a is
 * rho^{2-lambda} of the distance blend, so grad a is analytic.
 */
inline CoefficientSet coeffs_degenerate_domain(const ModelManifold& M, double lambda,
                                               double a1_const = 0.0, cplx a0_const = 0.0) {
    CoefficientSet c = coeffs_power(M, lambda);
    const Index n = M.size();
    for (Index p = 0; p < n; ++p) {
        const double da = (2.0 - lambda) * std::pow(M.rho[p], 1.0 - lambda);
        c.a1_0[p] += M.metric.ginv0[p] * da * M.drho0[p] + a1_const;
        if (M.dim() == 2) c.a1_1[p] += M.metric.ginv1[p] * da * M.drho1[p];
        c.a0[p] += a0_const;
    }
    return c;
}

}  // namespace sp
