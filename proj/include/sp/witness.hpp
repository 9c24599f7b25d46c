#pragma once

#include <cmath>
#include <vector>

#include "sp/calculus.hpp"
#include "sp/core.hpp"
#include "sp/manifold.hpp"

namespace sp {

/**
 * Candidate conjugation function h together with the claimed certification
 * region. For every model geometry h = M * sgn * log(rho) with sgn chosen by
 * the degeneracy order (and by the dimension for removed points).
 */
struct HWitness {
    RealField h;
    double M = 1.0;
    double lambda = 0.0;
    double sgn = 1.0;                 // sign(1-lambda), or sign(m-lambda) for punctures
    std::vector<std::uint8_t> region; // nodes where the pinch conditions are claimed
};

inline HWitness h_witness(const ModelManifold& M, double lambda, double Mparam,
                          double region_rho_max = 0.0) {
    require(Mparam > 0, "h witness: M must be positive");
    require(lambda >= 0, "h witness: lambda must be nonnegative");
    double sgn;
    if (M.kind == ManifoldKind::PuncturedDomain) {
        const double m = double(M.dim());
        if (std::abs(lambda - m) < 1e-12)
            throw ConfigError("h witness: lambda = m is excluded for removed points");
        sgn = sign(m - lambda);
    } else {
        if (std::abs(lambda - 1.0) < 1e-12)
            throw ConfigError("h witness: lambda = 1 is excluded");
        sgn = sign(1.0 - lambda);
    }

    HWitness W;
    W.M = Mparam;
    W.lambda = lambda;
    W.sgn = sgn;
    W.h.resize(M.size());
    for (Index p = 0; p < M.size(); ++p) W.h[p] = Mparam * sgn * std::log(M.rho[p]);

    W.region.assign(M.size(), 0);
    const bool collar_geometry = (M.kind == ManifoldKind::DomainWithHoles ||
                                  M.kind == ManifoldKind::PuncturedDomain ||
                                  M.kind == ManifoldKind::DegenerateInterval);
    for (Index p = 0; p < M.size(); ++p) {
        if (!M.grid.active(p)) continue;
        bool in;
        if (collar_geometry) {
            in = M.on_collar_plateau(p) &&
                 (region_rho_max <= 0 || M.rho[p] <= region_rho_max);
        } else if (region_rho_max > 0) {
            in = M.rho[p] <= region_rho_max;
        } else {
            in = true;
        }
        W.region[p] = in ? 1 : 0;
    }
    return W;
}

/**
 * Certification report for the pinch conditions
 *   v1 = rho |grad h|_g,   v2 = rho^lambda div(rho^{2-lambda} grad h).
 * Per-field pinch constants measure each field's own oscillation
 * (c = sqrt(sup/inf), M = sqrt(sup*inf)); the joint pair covers both fields
 * with a single (c,M) and feeds the conjugation window.
 */
struct HLambdaReport {
    bool ok = false;
    std::string failure;
    Index violating_node = -1;

    double inf_v1 = 0, sup_v1 = 0, inf_v2 = 0, sup_v2 = 0;
    double M1 = 0, c1 = 0, M2 = 0, c2 = 0;  // per-field pinch
    double M = 0, c = 0;                    // headline: level of v1, worst oscillation
    double M_joint = 0, c_joint = 0;        // single pair covering both fields
};

/// Evaluates v1, v2 over the witness region from analytic singularity data.
inline HLambdaReport check_hlambda(const ModelManifold& Mf, const SingularityFunction& S,
                                   const HWitness& W) {
    HLambdaReport rep;
    double i1 = std::numeric_limits<double>::infinity(), s1 = 0;
    double i2 = std::numeric_limits<double>::infinity(), s2 = -i2;
    Index worst = -1;
    Index count = 0;
    for (Index p = 0; p < Mf.size(); ++p) {
        if (!W.region[p]) continue;
        ++count;
        const double gr = Mf.grad_rho_norm(p);
        const double v1 = W.M * gr;
        // h = M sgn log(rho) gives v2 = M sgn ((1-lambda)|grad rho|^2 + rho lap rho)
        const double v2 =
            W.M * W.sgn * ((1.0 - W.lambda) * gr * gr + Mf.rho[p] * S.lap[p]);
        if (v2 <= 0 && worst < 0) worst = p;
        i2 = std::min(i2, v2);
        s2 = std::max(s2, v2);
        i1 = std::min(i1, v1);
        s1 = std::max(s1, v1);
    }
    if (count == 0) {
        rep.failure = "empty certification region";
        return rep;
    }
    rep.inf_v1 = i1;
    rep.sup_v1 = s1;
    rep.inf_v2 = i2;
    rep.sup_v2 = s2;
    if (i1 <= 0) {
        rep.failure = "rho |grad h| vanishes on the region";
        rep.violating_node = worst;
        return rep;
    }
    if (i2 <= 0) {
        rep.failure = "rho^l div(rho^{2-l} grad h) changes sign on the region";
        rep.violating_node = worst;
        return rep;
    }
    rep.M1 = std::sqrt(s1 * i1);
    rep.c1 = std::sqrt(s1 / i1);
    rep.M2 = std::sqrt(s2 * i2);
    rep.c2 = std::sqrt(s2 / i2);
    rep.M = rep.M1;
    rep.c = std::max(rep.c1, rep.c2);
    rep.M_joint = std::sqrt(rep.M1 * rep.M2);
    rep.c_joint = std::max({rep.sup_v1 / rep.M_joint, rep.M_joint / rep.inf_v1,
                            rep.sup_v2 / rep.M_joint, rep.M_joint / rep.inf_v2});
    rep.c_joint = std::max(rep.c_joint, 1.0);
    rep.ok = true;
    return rep;
}

/// Same checker driven by the discrete operators (cross-check path).
inline HLambdaReport check_hlambda_discrete(const ModelManifold& Mf, const DiscreteCalculus& calc,
                                            const HWitness& W) {
    Field h = W.h.cast<cplx>();
    VectorField gh = calc.grad(h);
    RealField v1f = calc.norm_g(gh);
    VectorField flux = gh;
    for (Index p = 0; p < Mf.size(); ++p) {
        const double f = std::pow(Mf.rho[p], 2.0 - W.lambda);
        flux.c0[p] *= f;
        if (Mf.dim() == 2) flux.c1[p] *= f;
    }
    Field divf = calc.div(flux);

    // adjoint-divergence rows within two cells of a boundary are polluted by
    // the one-sided gradient rows there; keep a margin
    auto deep_interior = [&](Index p) {
        const Grid& g = Mf.grid;
        const Index i = g.i0(p), j = g.i1(p);
        const Index n0 = g.n(0), n1 = (g.dim() == 2) ? g.n(1) : 1;
        for (Index di = -2; di <= 2; ++di) {
            for (Index dj = -2; dj <= 2; ++dj) {
                Index ii = i + di, jj = j + dj;
                if (g.dim() == 2 && g.axis(1).periodic) jj = (jj + n1) % n1;
                if (g.dim() == 1 && dj != 0) continue;
                if (ii < 0 || ii >= n0 || jj < 0 || jj >= n1) return false;
                if (!g.interior(g.idx(ii, jj))) return false;
            }
        }
        return true;
    };

    HLambdaReport rep;
    double i1 = std::numeric_limits<double>::infinity(), s1 = 0;
    double i2 = i1, s2 = -i1;
    Index worst = -1, count = 0;
    for (Index p = 0; p < Mf.size(); ++p) {
        if (!W.region[p] || !deep_interior(p)) continue;
        ++count;
        const double v1 = Mf.rho[p] * v1f[p];
        const double v2 = std::pow(Mf.rho[p], W.lambda) * divf[p].real();
        i1 = std::min(i1, v1);
        s1 = std::max(s1, v1);
        if (v2 <= 0 && worst < 0) worst = p;
        i2 = std::min(i2, v2);
        s2 = std::max(s2, v2);
    }
    if (count == 0) {
        rep.failure = "empty certification region";
        return rep;
    }
    rep.inf_v1 = i1;
    rep.sup_v1 = s1;
    rep.inf_v2 = i2;
    rep.sup_v2 = s2;
    if (i2 <= 0 || i1 <= 0) {
        rep.failure = "pinch field not positive (discrete)";
        rep.violating_node = worst;
        return rep;
    }
    rep.M1 = std::sqrt(s1 * i1);
    rep.c1 = std::sqrt(s1 / i1);
    rep.M2 = std::sqrt(s2 * i2);
    rep.c2 = std::sqrt(s2 / i2);
    rep.M = rep.M1;
    rep.c = std::max(rep.c1, rep.c2);
    rep.M_joint = std::sqrt(rep.M1 * rep.M2);
    rep.c_joint = std::max({rep.sup_v1 / rep.M_joint, rep.M_joint / rep.inf_v1,
                            rep.sup_v2 / rep.M_joint, rep.M_joint / rep.inf_v2});
    rep.c_joint = std::max(rep.c_joint, 1.0);
    rep.ok = true;
    return rep;
}

}  // namespace sp
