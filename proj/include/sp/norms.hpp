#pragma once

#include <cmath>
#include <limits>

#include "sp/calculus.hpp"
#include "sp/core.hpp"
#include "sp/manifold.hpp"

namespace sp {

/// Weighted norm selector: order k in {0,1,2}, exponent theta, p in [1,inf].
struct NormSpec {
    double p = 2.0;  // use infinity() for the sup norm
    double theta = 0.0;
    int k = 0;

    static constexpr double inf = std::numeric_limits<double>::infinity();

    void validate() const {
        require(p >= 1.0, "norm: p must be >= 1");
        require(k >= 0 && k <= 2, "norm: derivative order must be 0, 1 or 2");
    }
};

/// ( sum_i w_i |rho_i^theta u_i|^p )^(1/p); for p=inf the weighted sup without measure.
inline double weighted_lp_norm(const Field& u, const NormSpec& spec, const RealField& rho,
                               const WeightedMeasure& meas) {
    NormSpec s = spec;
    s.k = 0;
    s.validate();
    if (std::isinf(s.p)) {
        double m = 0;
        for (Index i = 0; i < u.size(); ++i)
            if (meas.w[i] > 0) m = std::max(m, std::pow(rho[i], s.theta) * std::abs(u[i]));
        return m;
    }
    double acc = 0;
    for (Index i = 0; i < u.size(); ++i)
        if (meas.w[i] > 0)
            acc += meas.w[i] * std::pow(std::pow(rho[i], s.theta) * std::abs(u[i]), s.p);
    return std::pow(acc, 1.0 / s.p);
}

inline double weighted_lp_norm(const RealField& u, const NormSpec& spec, const RealField& rho,
                               const WeightedMeasure& meas) {
    return weighted_lp_norm(Field(u.cast<cplx>()), spec, rho, meas);
}

/**
 * p-sum over derivative orders i=0..k of the order-i magnitude with weight
 * exponent theta+i. Order 1 uses the metric gradient norm, order 2 the
 * covariant Hessian magnitude.
 */
inline double weighted_sobolev_norm(const Field& u, const NormSpec& spec, const RealField& rho,
                                    const WeightedMeasure& meas, const DiscreteCalculus& calc) {
    spec.validate();
    std::vector<RealField> mags;
    mags.push_back(u.cwiseAbs());
    if (spec.k >= 1) mags.push_back(calc.norm_g(calc.grad(u)));
    if (spec.k >= 2) mags.push_back(calc.hessian_norm(u));

    if (std::isinf(spec.p)) {
        double m = 0;
        for (int i = 0; i <= spec.k; ++i) {
            NormSpec s{spec.p, spec.theta + i, 0};
            m = std::max(m, weighted_lp_norm(mags[i], s, rho, meas));
        }
        return m;
    }
    double acc = 0;
    for (int i = 0; i <= spec.k; ++i) {
        NormSpec s{spec.p, spec.theta + i, 0};
        acc += std::pow(weighted_lp_norm(mags[i], s, rho, meas), spec.p);
    }
    return std::pow(acc, 1.0 / spec.p);
}

/// <u|v>_{2,theta'} = sum w rho^{2 theta'} u conj(v).
inline cplx inner_product_weighted(const Field& u, const Field& v, double theta,
                                   const RealField& rho, const WeightedMeasure& meas) {
    cplx s = 0;
    for (Index i = 0; i < u.size(); ++i)
        if (meas.w[i] > 0) s += meas.w[i] * std::pow(rho[i], 2.0 * theta) * u[i] * std::conj(v[i]);
    return s;
}

/// Pointwise weight map u -> rho^theta u.
inline Field mul_weight(const Field& u, double theta, const RealField& rho) {
    Field out(u.size());
    for (Index i = 0; i < u.size(); ++i) out[i] = std::pow(rho[i], theta) * u[i];
    return out;
}

struct InterpolationCheck {
    double lhs = 0, rhs = 0, p_theta = 0;
    bool pass = false;
};

/// Riesz-Thorin inequality for the weighted L_p scale:
/// ||f||_{p_theta} <= ||f||_{p0}^{1-theta} ||f||_{p1}^theta, exact for discrete measures.
inline InterpolationCheck interpolation_check(const Field& f, double p0, double p1, double theta,
                                              double wexp, const RealField& rho,
                                              const WeightedMeasure& meas) {
    require(p0 >= 1.0 && p1 > p0, "interpolation: need 1 <= p0 < p1");
    require(theta > 0 && theta < 1, "interpolation: theta must lie in (0,1)");
    InterpolationCheck out;
    const double ip = (1.0 - theta) / p0 + (std::isinf(p1) ? 0.0 : theta / p1);
    out.p_theta = 1.0 / ip;
    const double n0 = weighted_lp_norm(f, {p0, wexp, 0}, rho, meas);
    const double n1 = weighted_lp_norm(f, {p1, wexp, 0}, rho, meas);
    out.lhs = weighted_lp_norm(f, {out.p_theta, wexp, 0}, rho, meas);
    out.rhs = std::pow(n0, 1.0 - theta) * std::pow(n1, theta);
    out.pass = out.lhs <= out.rhs * (1.0 + 1e-12);
    return out;
}

}  // namespace sp
