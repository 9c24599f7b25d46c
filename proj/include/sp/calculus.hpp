#pragma once

#include <array>
#include <vector>

#include "sp/core.hpp"
#include "sp/manifold.hpp"

namespace sp {

/// Contravariant vector field on the lattice.
struct VectorField {
    Field c0, c1;  // components; c1 empty for 1-d

    static VectorField zero(Index n, int dim) {
        VectorField X;
        X.c0 = Field::Zero(n);
        if (dim == 2) X.c1 = Field::Zero(n);
        return X;
    }
};

/**
 * Node-based gradient/divergence pair. The gradient uses three-point
 * finite-difference stencils (centered where both neighbors exist, one-sided
 * at boundaries and staircase cuts) raised by the inverse metric. The
 * divergence is defined as the exact negative adjoint of the gradient under
 * the weighted inner product, so the discrete divergence theorem holds to
 * rounding on every geometry.
 */
class DiscreteCalculus {
  public:
    DiscreteCalculus(const ModelManifold& M, const WeightedMeasure& meas)
        : M_(&M), w_(meas.w) {
        build_partial(0);
        if (M.dim() == 2) build_partial(1);
        build_second(0);
        if (M.dim() == 2) build_second(1);
    }

    const ModelManifold& manifold() const { return *M_; }
    const RealField& weights() const { return w_; }

    /// Coordinate partial derivative along axis k.
    Field partial(int k, const Field& u) const { return P_[k] * u; }

    /// Contravariant gradient.
    VectorField grad(const Field& u) const {
        VectorField X;
        X.c0 = M_->metric.ginv0.cast<cplx>().cwiseProduct(P_[0] * u);
        if (M_->dim() == 2) X.c1 = M_->metric.ginv1.cast<cplx>().cwiseProduct(P_[1] * u);
        return X;
    }

    /// Metric divergence: exact negative adjoint of grad under the measure.
    Field div(const VectorField& X) const {
        Field acc = Pt_[0] * w_.cast<cplx>().cwiseProduct(X.c0);
        if (M_->dim() == 2) acc += Pt_[1] * w_.cast<cplx>().cwiseProduct(X.c1);
        Field out = Field::Zero(acc.size());
        for (Index p = 0; p < acc.size(); ++p)
            if (w_[p] > 0) out[p] = -acc[p] / w_[p];
        return out;
    }

    Field laplacian(const Field& u) const { return div(grad(u)); }

    /// Pointwise metric norm |X|_g of a contravariant field.
    RealField norm_g(const VectorField& X) const {
        RealField out(X.c0.size());
        for (Index p = 0; p < X.c0.size(); ++p) {
            double s = M_->metric.g0[p] * std::norm(X.c0[p]);
            if (M_->dim() == 2) s += M_->metric.g1[p] * std::norm(X.c1[p]);
            out[p] = std::sqrt(s);
        }
        return out;
    }

    /// Covariant pairing (X|Y)_g summed against the measure (second slot conjugated).
    cplx pair_g(const VectorField& X, const VectorField& Y) const {
        cplx s = 0;
        for (Index p = 0; p < X.c0.size(); ++p) {
            cplx v = M_->metric.g0[p] * X.c0[p] * std::conj(Y.c0[p]);
            if (M_->dim() == 2) v += M_->metric.g1[p] * X.c1[p] * std::conj(Y.c1[p]);
            s += w_[p] * v;
        }
        return s;
    }

    cplx pair_scalar(const Field& u, const Field& v) const {
        cplx s = 0;
        for (Index p = 0; p < u.size(); ++p) s += w_[p] * u[p] * std::conj(v[p]);
        return s;
    }

    /// Covariant Hessian magnitude |nabla^2 u|_g (Christoffel-corrected on the cone).
    RealField hessian_norm(const Field& u) const {
        const int d = M_->dim();
        Field du0 = P_[0] * u;
        Field h00 = P2_[0] * u;
        if (d == 1) {
            RealField out(u.size());
            for (Index p = 0; p < u.size(); ++p) {
                const double gi = M_->metric.ginv0[p];
                out[p] = gi * std::abs(h00[p]);
            }
            return out;
        }
        Field du1 = P_[1] * u;
        Field h11 = P2_[1] * u;
        Field h01 = P_[0] * du1;
        if (M_->has_christoffel) {
            for (Index p = 0; p < u.size(); ++p) {
                const double t = M_->grid.coord(0, p);
                h11[p] += t * du0[p];        // - Gamma^t_{qq} du_t, Gamma^t_{qq} = -t
                h01[p] -= du1[p] / t;        // - Gamma^q_{tq} du_q
            }
        }
        RealField out(u.size());
        for (Index p = 0; p < u.size(); ++p) {
            const double a = M_->metric.ginv0[p], b = M_->metric.ginv1[p];
            const double s = a * a * std::norm(h00[p]) + b * b * std::norm(h11[p]) +
                             2.0 * a * b * std::norm(h01[p]);
            out[p] = std::sqrt(s);
        }
        return out;
    }

  private:
    struct Nbr {
        bool ok = false;
        Index p = 0;
        double h = 0;
    };

    Nbr neighbor(int axis, Index i, Index j, int step) const {
        const Grid& g = M_->grid;
        const Axis& ax = g.axis(axis);
        const Index n = ax.n();
        Index a = (axis == 0) ? i : j;
        Nbr nb;
        Index an = a + step;
        double h;
        if (ax.periodic) {
            an = (an + n) % n;
            // coordinate difference with wrap
            double d = ax.x[(a + step + n) % n] - ax.x[a];
            if (step > 0 && d <= 0) d += ax.period;
            if (step < 0 && d >= 0) d -= ax.period;
            h = d;
        } else {
            if (an < 0 || an >= n) return nb;
            h = ax.x[an] - ax.x[a];
        }
        const Index q = (axis == 0) ? g.idx(an, j) : g.idx(i, an);
        if (!g.active(q)) return nb;
        nb.ok = true;
        nb.p = q;
        nb.h = h;
        return nb;
    }

    void build_partial(int axis) {
        const Grid& g = M_->grid;
        std::vector<Triplet> trips;
        const Index n0 = g.n(0), n1 = (g.dim() == 2) ? g.n(1) : 1;
        for (Index i = 0; i < n0; ++i) {
            for (Index j = 0; j < n1; ++j) {
                const Index p = g.idx(i, j);
                if (!g.active(p)) continue;
                auto L = neighbor(axis, i, j, -1), R = neighbor(axis, i, j, +1);
                if (L.ok && R.ok) {
                    const double hl = -L.h, hr = R.h;
                    trips.emplace_back(p, L.p, cplx(-hr / (hl * (hl + hr))));
                    trips.emplace_back(p, p, cplx((hr - hl) / (hl * hr)));
                    trips.emplace_back(p, R.p, cplx(hl / (hr * (hl + hr))));
                } else if (R.ok) {
                    auto R2 = neighbor(axis, (axis == 0) ? g.i0(R.p) : i,
                                       (axis == 0) ? j : g.i1(R.p), +1);
                    const double h1 = R.h;
                    if (R2.ok) {
                        const double h2 = R2.h;
                        trips.emplace_back(p, p, cplx(-(2 * h1 + h2) / (h1 * (h1 + h2))));
                        trips.emplace_back(p, R.p, cplx((h1 + h2) / (h1 * h2)));
                        trips.emplace_back(p, R2.p, cplx(-h1 / (h2 * (h1 + h2))));
                    } else {
                        trips.emplace_back(p, p, cplx(-1.0 / h1));
                        trips.emplace_back(p, R.p, cplx(1.0 / h1));
                    }
                } else if (L.ok) {
                    auto L2 = neighbor(axis, (axis == 0) ? g.i0(L.p) : i,
                                       (axis == 0) ? j : g.i1(L.p), -1);
                    const double h1 = -L.h;
                    if (L2.ok) {
                        const double h2 = -L2.h;
                        trips.emplace_back(p, p, cplx((2 * h1 + h2) / (h1 * (h1 + h2))));
                        trips.emplace_back(p, L.p, cplx(-(h1 + h2) / (h1 * h2)));
                        trips.emplace_back(p, L2.p, cplx(h1 / (h2 * (h1 + h2))));
                    } else {
                        trips.emplace_back(p, p, cplx(1.0 / h1));
                        trips.emplace_back(p, L.p, cplx(-1.0 / h1));
                    }
                }
            }
        }
        P_[axis].resize(g.size(), g.size());
        P_[axis].setFromTriplets(trips.begin(), trips.end());
        Pt_[axis] = P_[axis].transpose();
    }

    void build_second(int axis) {
        const Grid& g = M_->grid;
        std::vector<Triplet> trips;
        const Index n0 = g.n(0), n1 = (g.dim() == 2) ? g.n(1) : 1;
        for (Index i = 0; i < n0; ++i) {
            for (Index j = 0; j < n1; ++j) {
                const Index p = g.idx(i, j);
                if (!g.active(p)) continue;
                auto L = neighbor(axis, i, j, -1), R = neighbor(axis, i, j, +1);
                if (L.ok && R.ok) {
                    const double hl = -L.h, hr = R.h;
                    trips.emplace_back(p, L.p, cplx(2.0 / (hl * (hl + hr))));
                    trips.emplace_back(p, p, cplx(-2.0 / (hl * hr)));
                    trips.emplace_back(p, R.p, cplx(2.0 / (hr * (hl + hr))));
                } else if (R.ok) {
                    auto R2 = neighbor(axis, (axis == 0) ? g.i0(R.p) : i,
                                       (axis == 0) ? j : g.i1(R.p), +1);
                    if (R2.ok) {
                        const double h1 = R.h, h2 = R2.h;
                        trips.emplace_back(p, p, cplx(2.0 / (h1 * (h1 + h2))));
                        trips.emplace_back(p, R.p, cplx(-2.0 / (h1 * h2)));
                        trips.emplace_back(p, R2.p, cplx(2.0 / (h2 * (h1 + h2))));
                    }
                } else if (L.ok) {
                    auto L2 = neighbor(axis, (axis == 0) ? g.i0(L.p) : i,
                                       (axis == 0) ? j : g.i1(L.p), -1);
                    if (L2.ok) {
                        const double h1 = -L.h, h2 = -L2.h;
                        trips.emplace_back(p, p, cplx(2.0 / (h1 * (h1 + h2))));
                        trips.emplace_back(p, L.p, cplx(-2.0 / (h1 * h2)));
                        trips.emplace_back(p, L2.p, cplx(2.0 / (h2 * (h1 + h2))));
                    }
                }
            }
        }
        P2_[axis].resize(g.size(), g.size());
        P2_[axis].setFromTriplets(trips.begin(), trips.end());
    }

    const ModelManifold* M_;
    RealField w_;
    std::array<SpMat, 2> P_, Pt_, P2_;
};

}  // namespace sp
