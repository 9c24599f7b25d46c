#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sp/core.hpp"
#include "sp/cusp.hpp"
#include "sp/grid.hpp"
#include "sp/shapes.hpp"

namespace sp {

/// Diagonal per-node metric with density and inverse.
struct MetricData {
    RealField g0, g1;      // diagonal entries (g1 unused when dim==1)
    RealField sqrtg;       // sqrt(det g)
    RealField ginv0, ginv1;

    void validate(Index n, int dim) const {
        for (Index i = 0; i < n; ++i) {
            require(g0[i] > 0 && sqrtg[i] > 0, "metric not SPD");
            require(std::abs(ginv0[i] * g0[i] - 1.0) < 1e-12, "metric inverse mismatch");
            if (dim == 2) {
                require(g1[i] > 0, "metric not SPD");
                require(std::abs(ginv1[i] * g1[i] - 1.0) < 1e-12, "metric inverse mismatch");
            }
        }
    }
};

enum class ManifoldKind {
    CuspInterval,
    Pipe,
    Cone,
    DomainWithHoles,
    PuncturedDomain,
    HestonStrip,
    DegenerateInterval,
};

enum class Provenance { Analytic, FiniteDifference };

struct Hole {
    double cx = 0, cy = 0, radius = 0;
};

enum class OuterShape { Box, Disk };

/**
 * Model singular geometry: lattice, metric, singularity function rho with
 * analytic first and second derivative data, and the truncation parameter.
 * Immutable after construction.
 */
struct ModelManifold {
    ManifoldKind kind;
    Grid grid;
    MetricData metric;
    double eps = 0;  // truncation distance from the singular end

    RealField rho;
    RealField drho0, drho1;  // coordinate partials of rho
    RealField lap_rho;       // Laplace-Beltrami of rho
    Provenance provenance = Provenance::Analytic;

    // geometry payload
    std::optional<CuspCharacteristic> cuspR;
    CuspReport cusp_report;
    std::vector<Hole> holes;      // holes / punctured points (radius 0)
    OuterShape outer = OuterShape::Box;
    double outer_size = 1.0;      // half-width of box or disk radius
    double collar = 0;            // collar width r of the distance blend
    bool outer_singular = false;  // degenerate-domain mode: rho measures distance to the outer boundary
    bool has_christoffel = false; // cone carries Gamma^t_{tt}=0, Gamma^t_{qq}=-t, Gamma^q_{tq}=1/t

    int dim() const { return grid.dim(); }
    Index size() const { return grid.size(); }

    /// |grad rho|_g at node p (contravariant magnitude).
    double grad_rho_norm(Index p) const {
        double s = metric.ginv0[p] * drho0[p] * drho0[p];
        if (dim() == 2) s += metric.ginv1[p] * drho1[p] * drho1[p];
        return std::sqrt(s);
    }

    /// Nodes where rho equals the raw distance function (collar plateau),
    /// used as the certification region for distance-based geometries.
    bool on_collar_plateau(Index p) const {
        if (collar <= 0) return false;
        return rho[p] <= 0.5 * collar * (1.0 - 1e-12);
    }

    void validate() const {
        grid.validate();
        metric.validate(size(), dim());
        double min_rho_all = std::numeric_limits<double>::infinity();
        double min_rho_trunc = std::numeric_limits<double>::infinity();
        bool has_trunc = false;
        for (Index p = 0; p < size(); ++p) {
            if (!grid.active(p)) continue;
            require(rho[p] > 0, "rho must be positive on active nodes");
            min_rho_all = std::min(min_rho_all, rho[p]);
            if (grid.kind(p) == NodeKind::Truncation) {
                has_trunc = true;
                min_rho_trunc = std::min(min_rho_trunc, rho[p]);
            }
        }
        if (has_trunc)
            require(min_rho_trunc <= min_rho_all * (1.0 + 1e-9),
                    "rho must attain its minimum on the truncation boundary");
    }
};

namespace detail {

// Septic smoothstep: 0 on s<=0, 1 on s>=1, C^3 across the junctions, so
// second-derivative finite differences of blended fields keep second order.
inline double smoothstep5(double s) {
    if (s <= 0) return 0;
    if (s >= 1) return 1;
    const double s2 = s * s;
    return s2 * s2 * (35.0 + s * (-84.0 + s * (70.0 - 20.0 * s)));
}
inline double smoothstep5_d(double s) {
    if (s <= 0 || s >= 1) return 0;
    const double s2 = s * s;
    return s2 * s * (140.0 + s * (-420.0 + s * (420.0 - 140.0 * s)));
}
inline double smoothstep5_dd(double s) {
    if (s <= 0 || s >= 1) return 0;
    const double s2 = s * s;
    return s2 * (420.0 + s * (-1680.0 + s * (2100.0 - 840.0 * s)));
}

// Integral of the septic smoothstep.
inline double smoothstep5_I(double s) {
    if (s <= 0) return 0;
    if (s >= 1) return 0.5 + (s - 1.0);
    const double s2 = s * s;
    return s2 * s2 * s * (7.0 + s * (-14.0 + s * (10.0 - 2.5 * s)));
}

/**
 * Distance blend: rho(d) = d on the plateau [0, r/2]; on [r/2, r] the slope
 * ramps smoothly from 1 to 0 (rho' = 1 - smoothstep); constant 3r/4 beyond.
 * Blending the slope rather than the value keeps |rho''| = O(1/r), so the
 * blended function satisfies uniform singularity-datum derivative bounds and
 * the certification sups stay tame.
 */
struct Blend {
    double v, d1, d2;
};
inline Blend distance_blend(double d, double r) {
    if (d <= 0.5 * r) return {d, 1.0, 0.0};
    const double w = 0.5 * r;
    if (d >= r) return {w * (2.0 - smoothstep5_I(1.0)), 0.0, 0.0};  // cap 3r/4
    const double s = (d - w) / w;
    return {w + w * (s - smoothstep5_I(s)), 1.0 - smoothstep5(s), -smoothstep5_d(s) / w};
}

/// Saturation value of the distance blend ("rho comparable to one" level).
inline double blend_cap(double r) { return 0.75 * r; }

inline MetricData flat_metric(Index n, int dim) {
    MetricData m;
    m.g0 = RealField::Ones(n);
    m.ginv0 = RealField::Ones(n);
    m.sqrtg = RealField::Ones(n);
    if (dim == 2) {
        m.g1 = RealField::Ones(n);
        m.ginv1 = RealField::Ones(n);
    }
    return m;
}

}  // namespace detail

/**
 * Interval [eps,1] with metric dt^2 and rho = R(t). Cells are graded so that
 * adjacent rho values stay within a bounded ratio.
 */
inline ModelManifold build_cusp_interval(const CuspCharacteristic& Rin, Index n, double eps,
                                         Grading::Kind grading = Grading::Kind::GeometricTowardStart) {
    require(eps > 0 && eps <= 0.25, "cusp interval: eps must lie in (0, 1/4]");
    require(n >= 16, "cusp interval: need at least 16 nodes");
    CuspCharacteristic R = Rin;
    R.cls = check_cusp_characteristic(R).cls;
    if (R.cls == CuspClass::General)
        throw GeometryError("cusp characteristic must be at least mild");

    Axis ax = (grading == Grading::Kind::Uniform) ? uniform_axis(eps, 1.0, n)
                                                  : geometric_axis(eps, 1.0, n);
    ModelManifold M;
    M.kind = ManifoldKind::CuspInterval;
    M.grid = Grid::make_1d(std::move(ax));
    M.grid.set_kind(0, NodeKind::Truncation);
    M.grid.set_kind(n - 1, NodeKind::Dirichlet);
    M.metric = detail::flat_metric(n, 1);
    M.eps = eps;
    M.cuspR = R;
    M.cusp_report = check_cusp_characteristic(R);

    M.rho.resize(n);
    M.drho0.resize(n);
    M.lap_rho.resize(n);
    for (Index i = 0; i < n; ++i) {
        const double t = M.grid.coord(0, i);
        M.rho[i] = R.R(t);
        if (M.rho[i] <= 0) throw GeometryError("R not positive on [eps,1]");
        M.drho0[i] = R.dR(t);
        M.lap_rho[i] = R.ddR(t);
    }
    // adjacent rho comparability (S4-style, per cell)
    for (Index i = 0; i + 1 < n; ++i) {
        const double q = M.rho[i + 1] / M.rho[i];
        if (q > 2.5 || q < 0.4)
            throw GeometryError("grid too coarse: adjacent rho values not comparable");
    }
    M.validate();
    return M;
}

/// Product grid (t, theta) with metric dt^2 + dtheta^2 and rho = R(t).
inline ModelManifold build_pipe(const CuspCharacteristic& Rin, Index n_t, Index n_theta,
                                double eps,
                                Grading::Kind grading = Grading::Kind::GeometricTowardStart) {
    require(eps > 0 && eps <= 0.25, "pipe: eps must lie in (0, 1/4]");
    require(n_t >= 16 && n_theta >= 8, "pipe: grid too small");
    CuspCharacteristic R = Rin;
    R.cls = check_cusp_characteristic(R).cls;
    if (R.cls == CuspClass::General) throw GeometryError("pipe characteristic must be at least mild");

    Axis at = (grading == Grading::Kind::Uniform) ? uniform_axis(eps, 1.0, n_t)
                                                  : geometric_axis(eps, 1.0, n_t);
    ModelManifold M;
    M.kind = ManifoldKind::Pipe;
    M.grid = Grid::make_2d(std::move(at), circle_axis(n_theta));
    for (Index j = 0; j < n_theta; ++j) {
        M.grid.set_kind(M.grid.idx(0, j), NodeKind::Truncation);
        M.grid.set_kind(M.grid.idx(n_t - 1, j), NodeKind::Dirichlet);
    }
    const Index N = M.grid.size();
    M.metric = detail::flat_metric(N, 2);
    M.eps = eps;
    M.cuspR = R;
    M.cusp_report = check_cusp_characteristic(R);

    M.rho.resize(N);
    M.drho0.resize(N);
    M.drho1 = RealField::Zero(N);
    M.lap_rho.resize(N);
    for (Index p = 0; p < N; ++p) {
        const double t = M.grid.coord(0, p);
        M.rho[p] = R.R(t);
        if (M.rho[p] <= 0) throw GeometryError("R not positive on [eps,1]");
        M.drho0[p] = R.dR(t);
        M.lap_rho[p] = R.ddR(t);
    }
    M.validate();
    return M;
}

/// Cone [eps,1] x S^1 with metric diag(1, t^2), density t, rho = t.
inline ModelManifold build_cone(Index n_t, Index n_theta, double eps) {
    require(n_t >= 8 && n_theta >= 8, "cone: grid too small");
    require(eps > 0 && eps <= 0.25, "cone: eps must lie in (0, 1/4]");

    ModelManifold M;
    M.kind = ManifoldKind::Cone;
    M.grid = Grid::make_2d(uniform_axis(eps, 1.0, n_t), circle_axis(n_theta));
    for (Index j = 0; j < n_theta; ++j) {
        M.grid.set_kind(M.grid.idx(0, j), NodeKind::Truncation);
        M.grid.set_kind(M.grid.idx(n_t - 1, j), NodeKind::Dirichlet);
    }
    const Index N = M.grid.size();
    M.metric.g0 = RealField::Ones(N);
    M.metric.ginv0 = RealField::Ones(N);
    M.metric.g1.resize(N);
    M.metric.ginv1.resize(N);
    M.metric.sqrtg.resize(N);
    M.rho.resize(N);
    M.drho0 = RealField::Ones(N);
    M.drho1 = RealField::Zero(N);
    M.lap_rho.resize(N);
    for (Index p = 0; p < N; ++p) {
        const double t = M.grid.coord(0, p);
        M.metric.g1[p] = t * t;
        M.metric.ginv1[p] = 1.0 / (t * t);
        M.metric.sqrtg[p] = t;
        M.rho[p] = t;
        M.lap_rho[p] = 1.0 / t;  // (1/t) d/dt (t * 1)
    }
    M.eps = eps;
    M.has_christoffel = true;
    M.validate();
    return M;
}

namespace detail {

struct DistanceData {
    double d;        // distance to the nearest singular set component
    double gx, gy;   // unit gradient of d
    double lap;      // Laplacian of d
};

// Distance to the boundary circle of a hole (or to a removed point for radius 0).
inline DistanceData hole_distance(const Hole& h, double x, double y) {
    const double rx = x - h.cx, ry = y - h.cy;
    const double rr = std::sqrt(rx * rx + ry * ry);
    DistanceData D;
    D.d = rr - h.radius;
    D.gx = rx / rr;
    D.gy = ry / rr;
    D.lap = 1.0 / rr;  // Laplacian of |x - c| in the plane
    return D;
}

}  // namespace detail

/**
 * Planar domain (box or disk) minus circular holes; Euclidean metric.
 * rho equals the distance to the nearest hole boundary inside each collar
 * and blends to 1 outside. With outer_singular the outer boundary is the
 * singular set instead (degenerate-domain geometry; no holes).
 */
inline ModelManifold build_domain_with_holes(OuterShape outer, double outer_size,
                                             std::vector<Hole> holes, Index n, double collar_r,
                                             double eps, bool outer_singular = false,
                                             double cluster = 0.0) {
    require(collar_r > 0 && eps > 0 && eps < 0.5 * collar_r,
            "holes: need 0 < eps < collar/2");
    require(n >= 16, "holes: need at least 16 nodes per axis");
    for (size_t a = 0; a < holes.size(); ++a) {
        for (size_t b = a + 1; b < holes.size(); ++b) {
            const double dx = holes[a].cx - holes[b].cx, dy = holes[a].cy - holes[b].cy;
            if (std::sqrt(dx * dx + dy * dy) <
                holes[a].radius + holes[b].radius + 2 * collar_r)
                throw GeometryError("holes: collars overlap");
        }
    }
    for (const auto& h : holes) {
        const double rc = std::sqrt(h.cx * h.cx + h.cy * h.cy);
        const double margin = (outer == OuterShape::Disk)
                                  ? outer_size - (rc + h.radius)
                                  : outer_size - std::max(std::abs(h.cx), std::abs(h.cy)) - h.radius;
        if (margin < 2 * collar_r) throw GeometryError("holes: hole too close to outer boundary");
    }
    if (outer_singular) require(holes.empty(), "degenerate-domain mode takes no holes");

    // Optionally cluster axis nodes toward hole centers (smooth tanh-bump map).
    auto build_axis = [&](double a, double b, std::vector<double> centers) {
        if (cluster <= 0 || centers.empty()) return uniform_axis(a, b, n);
        Axis ax;
        ax.x.resize(n);
        std::vector<double> s(n);
        for (Index i = 0; i < n; ++i) {
            const double u = a + (b - a) * double(i) / double(n - 1);
            double w = 1.0;
            for (double c : centers) w += cluster * std::exp(-8.0 * (u - c) * (u - c));
            s[i] = w;
        }
        // integrate inverse density to get the map
        std::vector<double> cum(n, 0.0);
        for (Index i = 1; i < n; ++i) cum[i] = cum[i - 1] + 2.0 / (s[i] + s[i - 1]);
        ax.x[0] = a;
        for (Index i = 1; i < n; ++i) ax.x[i] = a + (b - a) * cum[i] / cum[n - 1];
        ax.x[n - 1] = b;
        ax.grading = {Grading::Kind::Uniform, 1.0};
        return ax;
    };
    std::vector<double> cx, cy;
    for (const auto& h : holes) { cx.push_back(h.cx); cy.push_back(h.cy); }

    ModelManifold M;
    M.kind = ManifoldKind::DomainWithHoles;
    M.grid = Grid::make_2d(build_axis(-outer_size, outer_size, cx),
                           build_axis(-outer_size, outer_size, cy));
    M.metric = detail::flat_metric(M.grid.size(), 2);
    M.eps = eps;
    M.holes = holes;
    M.outer = outer;
    M.outer_size = outer_size;
    M.collar = collar_r;
    M.outer_singular = outer_singular;

    const Index N = M.grid.size();
    M.rho.resize(N);
    M.drho0.resize(N);
    M.drho1.resize(N);
    M.lap_rho.resize(N);

    std::vector<bool> inside(N, false);
    for (Index p = 0; p < N; ++p) {
        const double x = M.grid.coord(0, p), y = M.grid.coord(1, p);
        bool in = (outer == OuterShape::Disk) ? (x * x + y * y < outer_size * outer_size)
                                              : (std::abs(x) < outer_size && std::abs(y) < outer_size);
        double dmin = std::numeric_limits<double>::infinity();
        detail::DistanceData Dmin{};
        bool have = false;
        if (outer_singular) {
            if (outer == OuterShape::Disk) {
                const double rr = std::sqrt(x * x + y * y);
                Dmin = {outer_size - rr, -x / std::max(rr, 1e-300), -y / std::max(rr, 1e-300),
                        -1.0 / std::max(rr, 1e-300)};
            } else {
                // box distance (valid away from the diagonals; used for tests only)
                const double dx = outer_size - std::abs(x), dy = outer_size - std::abs(y);
                Dmin = (dx < dy) ? detail::DistanceData{dx, -sign(x), 0.0, 0.0}
                                 : detail::DistanceData{dy, 0.0, -sign(y), 0.0};
            }
            dmin = Dmin.d;
            have = true;
        } else {
            for (const auto& h : holes) {
                auto D = detail::hole_distance(h, x, y);
                if (D.d < dmin) { dmin = D.d; Dmin = D; have = true; }
            }
        }
        if (in && have && dmin < eps) in = false;  // excise the truncation layer
        if (!have) { Dmin = {1.0, 0, 0, 0}; dmin = 1.0; }
        inside[p] = in;
        auto B = detail::distance_blend(dmin, collar_r);
        M.rho[p] = B.v;
        M.drho0[p] = B.d1 * Dmin.gx;
        M.drho1[p] = B.d1 * Dmin.gy;
        M.lap_rho[p] = B.d2 + B.d1 * Dmin.lap;
        if (!in) M.grid.set_kind(p, NodeKind::Excised);
    }
    // flag active nodes adjacent to excised / lattice edge
    const Index n0 = M.grid.n(0), n1 = M.grid.n(1);
    for (Index i = 0; i < n0; ++i) {
        for (Index j = 0; j < n1; ++j) {
            const Index p = M.grid.idx(i, j);
            if (!inside[p]) continue;
            bool cut = (i == 0 || i == n0 - 1 || j == 0 || j == n1 - 1);
            if (!cut) {
                cut = !inside[M.grid.idx(i - 1, j)] || !inside[M.grid.idx(i + 1, j)] ||
                      !inside[M.grid.idx(i, j - 1)] || !inside[M.grid.idx(i, j + 1)];
            }
            if (cut) {
                // near a hole (or the singular outer boundary) this is the truncation
                // layer, otherwise the genuine outer boundary
                const bool near_singular = M.rho[p] < 0.45 * collar_r;
                M.grid.set_kind(p, near_singular ? NodeKind::Truncation : NodeKind::Dirichlet);
            }
        }
    }
    // clip quadrature cells against the outer disk and the excision circles
    std::vector<double> clipped(N, 0.0);
    auto clipped_area = [&](Index i, Index j) {
        const Index p = M.grid.idx(i, j);
        const double x = M.grid.coord(0, p), y = M.grid.coord(1, p);
        const double hx = M.grid.axis(0).dual(i), hy = M.grid.axis(1).dual(j);
        const double x0 = x - hx / 2, x1 = x + hx / 2, y0 = y - hy / 2, y1 = y + hy / 2;
        double area = hx * hy;
        if (outer == OuterShape::Disk)
            area = rect_disk_area(x0, x1, y0, y1, 0, 0,
                                  outer_singular ? outer_size - eps : outer_size);
        for (const auto& h : holes)
            area -= rect_disk_area(x0, x1, y0, y1, h.cx, h.cy, h.radius + eps);
        return std::max(area, 0.0);
    };
    for (Index i = 0; i < n0; ++i)
        for (Index j = 0; j < n1; ++j) clipped[M.grid.idx(i, j)] = clipped_area(i, j);
    // domain slivers under the dual cells of excised nodes are handed to an
    // active 4-neighbor so the total quadrature reproduces the exact area
    for (Index i = 0; i < n0; ++i) {
        for (Index j = 0; j < n1; ++j) {
            const Index p = M.grid.idx(i, j);
            if (M.grid.active(p) || clipped[p] <= 0) continue;
            const Index nb[4] = {(i > 0) ? M.grid.idx(i - 1, j) : Index(-1),
                                 (i + 1 < n0) ? M.grid.idx(i + 1, j) : Index(-1),
                                 (j > 0) ? M.grid.idx(i, j - 1) : Index(-1),
                                 (j + 1 < n1) ? M.grid.idx(i, j + 1) : Index(-1)};
            for (Index q : nb) {
                if (q >= 0 && M.grid.active(q)) {
                    clipped[q] += clipped[p];
                    break;
                }
            }
            clipped[p] = 0.0;
        }
    }
    for (Index p = 0; p < N; ++p)
        M.grid.set_cell(p, M.grid.active(p) ? std::max(clipped[p], 1e-14) : 0.0);
    M.validate();
    return M;
}

/// Domain minus small balls around removed points (2-d Euclidean).
inline ModelManifold build_punctured_domain(std::vector<std::pair<double, double>> points,
                                            double eps, Index n, double collar_r,
                                            double outer_size = 1.0) {
    require(eps > 0, "punctured domain: eps must be positive");
    std::vector<Hole> holes;
    for (auto& p : points) holes.push_back({p.first, p.second, 0.0});
    auto M = build_domain_with_holes(OuterShape::Box, outer_size, holes, n, collar_r, eps);
    M.kind = ManifoldKind::PuncturedDomain;
    return M;
}

/// Strip [-X,X] x [eps,Y], Euclidean metric, rho = y.
inline ModelManifold build_heston_strip(double X, double Y, double eps, Index n_x, Index n_y,
                                        Grading::Kind grading = Grading::Kind::GeometricTowardStart) {
    require(X > 0 && Y > 0, "heston strip: X, Y must be positive");
    require(eps > 0 && eps < Y / 4, "heston strip: eps must lie in (0, Y/4)");
    require(n_x >= 8 && n_y >= 8, "heston strip: grid too small");

    Axis ay = (grading == Grading::Kind::Uniform) ? uniform_axis(eps, Y, n_y)
                                                  : geometric_axis(eps, Y, n_y);
    ModelManifold M;
    M.kind = ManifoldKind::HestonStrip;
    M.grid = Grid::make_2d(uniform_axis(-X, X, n_x), std::move(ay));
    const Index n0 = n_x, n1 = n_y;
    for (Index i = 0; i < n0; ++i) {
        M.grid.set_kind(M.grid.idx(i, 0), NodeKind::Truncation);       // singular side y=eps
        M.grid.set_kind(M.grid.idx(i, n1 - 1), NodeKind::Truncation);  // far field y=Y
    }
    for (Index j = 0; j < n1; ++j) {
        M.grid.set_kind(M.grid.idx(0, j), NodeKind::Truncation);
        M.grid.set_kind(M.grid.idx(n0 - 1, j), NodeKind::Truncation);
    }
    const Index N = M.grid.size();
    M.metric = detail::flat_metric(N, 2);
    M.eps = eps;
    M.rho.resize(N);
    M.drho0 = RealField::Zero(N);
    M.drho1 = RealField::Ones(N);
    M.lap_rho = RealField::Zero(N);
    for (Index p = 0; p < N; ++p) M.rho[p] = M.grid.coord(1, p);
    M.validate();
    return M;
}

/// Interval (0,1) with rho blended from the distance to both endpoints.
inline ModelManifold build_degenerate_interval(Index n, double eps, double collar_r,
                                               Grading::Kind grading = Grading::Kind::Uniform) {
    require(eps > 0 && eps < 0.5 * collar_r, "degenerate interval: need 0 < eps < collar/2");
    require(collar_r <= 0.25, "degenerate interval: collar too wide");
    require(n >= 16, "degenerate interval: need at least 16 nodes");

    Axis ax;
    if (grading == Grading::Kind::Uniform) {
        ax = uniform_axis(eps, 1.0 - eps, n);
    } else {
        // symmetric grading toward both ends
        ax.x.resize(n);
        for (Index i = 0; i < n; ++i) {
            const double s = double(i) / double(n - 1);
            const double u = 0.5 * (1.0 + std::tanh(2.5 * (2 * s - 1)) / std::tanh(2.5));
            ax.x[i] = eps + (1.0 - 2 * eps) * u;
        }
        ax.grading = {Grading::Kind::Uniform, 1.0};
    }
    ModelManifold M;
    M.kind = ManifoldKind::DegenerateInterval;
    M.grid = Grid::make_1d(std::move(ax));
    M.grid.set_kind(0, NodeKind::Truncation);
    M.grid.set_kind(n - 1, NodeKind::Truncation);
    M.metric = detail::flat_metric(n, 1);
    M.eps = eps;
    M.collar = collar_r;
    M.outer_singular = true;

    M.rho.resize(n);
    M.drho0.resize(n);
    M.lap_rho.resize(n);
    for (Index i = 0; i < n; ++i) {
        const double x = M.grid.coord(0, i);
        const double d = std::min(x, 1.0 - x);
        const double gsgn = (x <= 0.5) ? 1.0 : -1.0;
        auto B = detail::distance_blend(d, collar_r);
        M.rho[i] = B.v;
        M.drho0[i] = B.d1 * gsgn;
        M.lap_rho[i] = B.d2;
    }
    M.validate();
    return M;
}

/// Per-node rho together with derivative data and provenance.
struct SingularityFunction {
    RealField rho;
    RealField grad0, grad1;  // contravariant components of grad rho
    RealField lap;           // Laplace-Beltrami of rho
    Provenance provenance = Provenance::Analytic;
};

inline SingularityFunction singularity_function(const ModelManifold& M) {
    SingularityFunction S;
    S.rho = M.rho;
    S.grad0 = M.metric.ginv0.cwiseProduct(M.drho0);
    if (M.dim() == 2) S.grad1 = M.metric.ginv1.cwiseProduct(M.drho1);
    S.lap = M.lap_rho;
    S.provenance = M.provenance;
    return S;
}

/// Quadrature weights w = cell volume * sqrt(det g).
struct WeightedMeasure {
    RealField w;
    double total = 0;

    static WeightedMeasure of(const ModelManifold& M) {
        WeightedMeasure m;
        m.w.resize(M.size());
        for (Index p = 0; p < M.size(); ++p) {
            m.w[p] = M.grid.active(p) ? M.grid.cell(p) * M.metric.sqrtg[p] : 0.0;
            m.total += m.w[p];
        }
        return m;
    }
};

}  // namespace sp
