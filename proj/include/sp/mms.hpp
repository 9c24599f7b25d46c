#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "sp/assemble.hpp"
#include "sp/norms.hpp"
#include "sp/stepper.hpp"

namespace sp {

/**
 * Manufactured space-time solution u*(t,x): profile, time factor, and the
 * forcing f = u*_t + A u* evaluated from closed forms. Profiles vanish on the
 * Dirichlet boundaries of their geometry (quadratically on curved ones, so
 * staircase boundary nodes carry O(h^2) data).
 */
struct ManufacturedSolution {
    std::string name;
    std::function<double(const ModelManifold&, Index)> profile;      // phi at node
    std::function<double(double)> time_factor;                       // g(t)
    std::function<double(double)> time_factor_dt;                    // g'(t)
    std::function<Field(const ModelManifold&, const OperatorSpec&)> apply_A_profile;
    // interior weight for error norms: smooth cutoff vanishing near boundaries
    std::function<double(const ModelManifold&, Index)> interior_weight;

    Field exact(const ModelManifold& M, double t) const {
        Field u(M.size());
        const double g = time_factor(t);
        for (Index p = 0; p < M.size(); ++p) u[p] = g * profile(M, p);
        return u;
    }
};

namespace detail {

inline double annulus_profile(const ModelManifold& M, Index p, double r_in, double r_out) {
    const double x = M.grid.coord(0, p), y = M.grid.coord(1, p);
    const double rr = x * x + y * y;
    const double a = rr - r_in * r_in, b = r_out * r_out - rr;
    if (a <= 0 || b <= 0) return 0.0;
    return a * a * b * b;  // vanishes quadratically on both circles
}

// Laplacian of (r^2-ri^2)^2 (ro^2-r^2)^2 in the plane, via q = r^2:
// phi(q) = (q-qi)^2 (qo-q)^2, Lap phi = 4 phi'(q) + 4 q phi''(q).
inline double annulus_profile_lap(const ModelManifold& M, Index p, double r_in, double r_out) {
    const double x = M.grid.coord(0, p), y = M.grid.coord(1, p);
    const double q = x * x + y * y, qi = r_in * r_in, qo = r_out * r_out;
    if (q <= qi || q >= qo) return 0.0;
    const double d1 = 2.0 * (q - qi) * (qo - q) * (qo - q) - 2.0 * (q - qi) * (q - qi) * (qo - q);
    const double d2 = 2.0 * (qo - q) * (qo - q) - 8.0 * (q - qi) * (qo - q) +
                      2.0 * (q - qi) * (q - qi);
    return 4.0 * d1 + 4.0 * q * d2;
}

}  // namespace detail

/// Catalog keyed by geometry kind; "default" picks the natural profile.
inline ManufacturedSolution manufactured_solution(const ModelManifold& M,
                                                  const std::string& name) {
    ManufacturedSolution ms;
    if (M.kind == ManifoldKind::DegenerateInterval || M.kind == ManifoldKind::CuspInterval) {
        // u* = sin(pi (x-a)/(b-a)) e^{-t} on the interval [a,b]
        const double a = M.grid.axis(0).x.front(), b = M.grid.axis(0).x.back();
        ms.name = name.empty() ? "interval-sine" : name;
        ms.profile = [a, b](const ModelManifold& m, Index p) {
            return std::sin(kPi * (m.grid.coord(0, p) - a) / (b - a));
        };
        if (name == "heat-eigenmode") {
            // decays at the first Dirichlet eigenrate: the forcing vanishes
            // identically when the operator is the flat Laplacian
            const double mu = kPi * kPi / ((b - a) * (b - a));
            ms.time_factor = [mu](double t) { return std::exp(-mu * t); };
            ms.time_factor_dt = [mu](double t) { return -mu * std::exp(-mu * t); };
        } else {
            ms.time_factor = [](double t) { return std::exp(-t); };
            ms.time_factor_dt = [](double t) { return -std::exp(-t); };
        }
        ms.apply_A_profile = [a, b](const ModelManifold& m, const OperatorSpec& spec) {
            // A phi = -d/dx(A00 phi') + a1 phi' + a0 phi, with phi = sin(k(x-a))
            const double k = kPi / (b - a);
            Field out(m.size());
            for (Index p = 0; p < m.size(); ++p) {
                const double x = m.grid.coord(0, p);
                const double s = std::sin(k * (x - a)), c = std::cos(k * (x - a));
                const double A = spec.coeffs.A00[p];
                // dA/dx from the blend: A = rho^{2-lambda}, dA = (2-l) rho^{1-l} rho'
                const double dA = (2.0 - spec.lambda) *
                                  std::pow(m.rho[p], 1.0 - spec.lambda) * m.drho0[p];
                cplx v = -(dA * k * c - A * k * k * s);
                if (spec.coeffs.a1_0.size()) v += spec.coeffs.a1_0[p] * (k * c);
                if (spec.coeffs.a0.size()) v += spec.coeffs.a0[p] * s;
                v += spec.omega * std::pow(m.rho[p], -spec.lambda) * s;
                out[p] = v;
            }
            return out;
        };
        ms.interior_weight = [a, b](const ModelManifold& m, Index p) {
            const double x = m.grid.coord(0, p);
            const double d = std::min(x - a, b - x) / (0.15 * (b - a));
            return std::min(1.0, std::max(0.0, d));
        };
        return ms;
    }
    if (M.kind == ManifoldKind::DomainWithHoles && !M.holes.empty()) {
        const double ri = M.holes[0].radius + M.eps, ro = M.outer_size;
        ms.name = name.empty() ? "annulus-bump" : name;
        ms.profile = [ri, ro](const ModelManifold& m, Index p) {
            return detail::annulus_profile(m, p, ri, ro);
        };
        ms.time_factor = [](double t) { return std::exp(-t); };
        ms.time_factor_dt = [](double t) { return -std::exp(-t); };
        ms.apply_A_profile = [ri, ro](const ModelManifold& m, const OperatorSpec& spec) {
            Field out(m.size());
            for (Index p = 0; p < m.size(); ++p) {
                cplx v = -detail::annulus_profile_lap(m, p, ri, ro);  // -Lap phi
                if (spec.coeffs.a0.size())
                    v += spec.coeffs.a0[p] * detail::annulus_profile(m, p, ri, ro);
                v += spec.omega * std::pow(m.rho[p], -spec.lambda) *
                     detail::annulus_profile(m, p, ri, ro);
                out[p] = v;
            }
            return out;
        };
        ms.interior_weight = [ri, ro](const ModelManifold& m, Index p) {
            const double x = m.grid.coord(0, p), y = m.grid.coord(1, p);
            const double r = std::sqrt(x * x + y * y);
            const double d = std::min(r - ri, ro - r) / (0.15 * (ro - ri));
            return std::min(1.0, std::max(0.0, d));
        };
        return ms;
    }
    if (M.kind == ManifoldKind::HestonStrip) {
        const double x0 = M.grid.axis(0).x.front(), x1 = M.grid.axis(0).x.back();
        const double y0 = M.grid.axis(1).x.front(), y1 = M.grid.axis(1).x.back();
        ms.name = name.empty() ? "strip-sine" : name;
        const double kx = kPi / (x1 - x0), ky = kPi / (y1 - y0);
        ms.profile = [=](const ModelManifold& m, Index p) {
            return std::sin(kx * (m.grid.coord(0, p) - x0)) *
                   std::sin(ky * (m.grid.coord(1, p) - y0));
        };
        ms.time_factor = [](double t) { return std::exp(-t); };
        ms.time_factor_dt = [](double t) { return -std::exp(-t); };
        ms.apply_A_profile = [=](const ModelManifold& m, const OperatorSpec& spec) {
            Field out(m.size());
            for (Index p = 0; p < m.size(); ++p) {
                const double x = m.grid.coord(0, p) - x0, y = m.grid.coord(1, p) - y0;
                const double sx = std::sin(kx * x), cx = std::cos(kx * x);
                const double sy = std::sin(ky * y), cy = std::cos(ky * y);
                const double yv = m.rho[p];
                const double alpha = 2.0 - spec.lambda;
                const double ya = std::pow(yv, alpha);
                const double dya = alpha * std::pow(yv, alpha - 1.0);
                // A = -dx(A00 ux) - dx(A01 uy) - dy(A01 ux) - dy(A11 uy) + a1.grad + a0
                const double A00 = spec.coeffs.A00[p] / ya, A01v = spec.coeffs.A01[p] / ya,
                             A11 = spec.coeffs.A11[p] / ya;
                const double ux = kx * cx * sy, uy = ky * sx * cy;
                const double uxx = -kx * kx * sx * sy, uyy = -ky * ky * sx * sy,
                             uxy = kx * ky * cx * cy;
                cplx v = -(ya * A00 * uxx + 2.0 * ya * A01v * uxy + ya * A11 * uyy) -
                         (dya * A01v * ux + dya * A11 * uy);
                if (spec.coeffs.a1_0.size()) v += spec.coeffs.a1_0[p] * ux;
                if (spec.coeffs.a1_1.size()) v += spec.coeffs.a1_1[p] * uy;
                if (spec.coeffs.a0.size()) v += spec.coeffs.a0[p] * sx * sy;
                v += spec.omega * std::pow(yv, -spec.lambda) * sx * sy;
                out[p] = v;
            }
            return out;
        };
        ms.interior_weight = [=](const ModelManifold& m, Index p) {
            const double dx = std::min(m.grid.coord(0, p) - x0, x1 - m.grid.coord(0, p));
            const double dy = std::min(m.grid.coord(1, p) - y0, y1 - m.grid.coord(1, p));
            const double d = std::min(dx / (0.15 * (x1 - x0)), dy / (0.15 * (y1 - y0)));
            return std::min(1.0, std::max(0.0, d));
        };
        return ms;
    }
    throw ConfigError("no manufactured solution catalogued for this geometry");
}

struct MmsRow {
    int level = 0;
    Index n = 0;
    double dt = 0;
    double error = 0;
    double order = 0;  // slope against the previous level
};

struct MmsTable {
    std::vector<MmsRow> rows;
    bool monotone = true;
    double final_order = 0;  // least-squares slope over all levels
};

}  // namespace sp
