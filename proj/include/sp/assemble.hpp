#pragma once

#include <cmath>
#include <vector>

#include "sp/calculus.hpp"
#include "sp/core.hpp"
#include "sp/manifold.hpp"
#include "sp/operator_spec.hpp"

namespace sp {

namespace detail {

/// Flux face between adjacent active nodes along an axis.
struct Face {
    Index p, q;     // full-lattice endpoints, q on the + side
    double s;       // coordinate distance
    double tau;     // transverse dual width
    double K;       // harmonic mean of sqrtg * A^{kk}
};

/// Cell for the mixed (off-diagonal) diffusion term; all four corners active.
struct MixedCell {
    Index n00, n10, n01, n11;
    double sx, sy, vol;
    double K;  // arithmetic mean of sqrtg * A^{01}
};

/// One entry of the first-order drift stencil at an interior node.
struct DriftEntry {
    Index row, col;
    cplx coef;
};

inline double harmonic(double a, double b) {
    if (a <= 0 || b <= 0) return 0.5 * (a + b);  // fall back for sign-indefinite data
    return 2.0 * a * b / (a + b);
}

}  // namespace detail

/**
 * Assembled divergence-form operator over interior nodes (Dirichlet and
 * truncation rows eliminated). The diffusion part is a conservative face-flux
 * scheme with harmonic face averaging of sqrtg*A^{kk}; the mixed term is a
 * nine-point cell scheme with arithmetic averaging. Both are derived from a
 * symmetric energy so that the sesquilinear form of FormHandle reproduces
 * <A u | v> exactly.
 */
class DiscreteOperator {
  public:
    DiscreteOperator() = default;

    DiscreteOperator(const ModelManifold& M, const WeightedMeasure& meas, const OperatorSpec& spec,
                     const DiscreteCalculus& calc)
        : M_(&M), spec_(spec) {
        spec.validate(M);
        build_index_maps(M);
        collect_faces(M, spec);
        collect_cells(M, spec);
        collect_drift(M, spec);
        w_full_ = meas.w;
        assemble_matrix(M, spec);
    }

    const ModelManifold& manifold() const { return *M_; }
    const OperatorSpec& spec() const { return spec_; }
    const SpMat& matrix() const { return A_; }
    Index n() const { return A_.rows(); }
    bool upwinded() const { return spec_.drift == DriftScheme::Upwind; }

    const std::vector<Index>& interior_nodes() const { return red2full_; }
    Index reduced_index(Index full) const { return full2red_[full]; }

    /// Quadrature weight and rho restricted to interior nodes.
    const RealField& weights() const { return w_red_; }
    const RealField& rho() const { return rho_red_; }

    /// Restrict a full-lattice field to interior nodes.
    Field restrict_to(const Field& u) const {
        Field v(n());
        for (Index r = 0; r < n(); ++r) v[r] = u[red2full_[r]];
        return v;
    }

    /// Extend a reduced field by zero to the full lattice.
    Field prolong(const Field& v) const {
        Field u = Field::Zero(M_->size());
        for (Index r = 0; r < n(); ++r) u[red2full_[r]] = v[r];
        return u;
    }

    Field apply(const Field& v_reduced) const { return A_ * v_reduced; }

    /// <u|v>_{2,theta} on the reduced index set.
    cplx inner(const Field& u, const Field& v, double theta) const {
        cplx s = 0;
        for (Index r = 0; r < n(); ++r)
            s += w_red_[r] * std::pow(rho_red_[r], 2.0 * theta) * u[r] * std::conj(v[r]);
        return s;
    }

    double norm2(const Field& u, double theta) const {
        return std::sqrt(std::abs(inner(u, u, theta)));
    }

    /// Nonpositive off-diagonals, positive diagonal, nonnegative row sums.
    bool is_m_matrix(double tol = 1e-10) const {
        for (Index k = 0; k < A_.outerSize(); ++k) {
            for (SpMat::InnerIterator it(A_, k); it; ++it) {
                if (std::abs(it.value().imag()) > tol) return false;
                if (it.row() == it.col()) {
                    if (it.value().real() <= 0) return false;
                } else if (it.value().real() > tol) {
                    return false;
                }
            }
        }
        SpMat At = A_.transpose();
        for (Index r = 0; r < n(); ++r) {
            cplx s = 0;
            for (SpMat::InnerIterator it(At, r); it; ++it) s += it.value();
            if (s.real() < -tol * std::abs(A_.coeff(r, r))) return false;
        }
        return true;
    }

    const std::vector<detail::Face>& faces() const { return faces_; }
    const std::vector<detail::MixedCell>& cells() const { return cells_; }
    const std::vector<detail::DriftEntry>& drift_entries() const { return drift_; }
    const RealField& full_weights() const { return w_full_; }

  private:
    void build_index_maps(const ModelManifold& M) {
        full2red_.assign(M.size(), -1);
        for (Index p = 0; p < M.size(); ++p) {
            if (M.grid.interior(p)) {
                full2red_[p] = static_cast<Index>(red2full_.size());
                red2full_.push_back(p);
            }
        }
        require(!red2full_.empty(), "operator: no interior nodes");
    }

    void collect_faces(const ModelManifold& M, const OperatorSpec& spec) {
        const Grid& g = M.grid;
        const Index n0 = g.n(0), n1 = (g.dim() == 2) ? g.n(1) : 1;
        auto K_of = [&](int axis, Index p) {
            const double A = (axis == 0) ? spec.coeffs.A00[p] : spec.coeffs.A11[p];
            return M.metric.sqrtg[p] * A;
        };
        for (int axis = 0; axis < g.dim(); ++axis) {
            const Axis& ax = g.axis(axis);
            const Index na = ax.n();
            const Index nfaces = ax.periodic ? na : na - 1;
            const Index nother = (axis == 0) ? n1 : n0;
            for (Index a = 0; a < nfaces; ++a) {
                const Index b = ax.periodic ? (a + 1) % na : a + 1;
                double s = ax.x[b % na] - ax.x[a];
                if (ax.periodic && s <= 0) s += ax.period;
                for (Index o = 0; o < nother; ++o) {
                    const Index p = (axis == 0) ? g.idx(a, o) : g.idx(o, a);
                    const Index q = (axis == 0) ? g.idx(b, o) : g.idx(o, b);
                    if (!g.active(p) || !g.active(q)) continue;
                    if (!g.interior(p) && !g.interior(q)) continue;
                    detail::Face f;
                    f.p = p;
                    f.q = q;
                    f.s = s;
                    f.tau = (g.dim() == 2) ? g.axis(axis == 0 ? 1 : 0).dual(o) : 1.0;
                    f.K = detail::harmonic(K_of(axis, p), K_of(axis, q));
                    faces_.push_back(f);
                }
            }
        }
    }

    void collect_cells(const ModelManifold& M, const OperatorSpec& spec) {
        if (M.dim() != 2 || !spec.coeffs.has_mixed()) return;
        const Grid& g = M.grid;
        const Axis& ax = g.axis(0);
        const Axis& ay = g.axis(1);
        const Index nx = ax.n(), ny = ay.n();
        const Index cfx = ax.periodic ? nx : nx - 1;
        const Index cfy = ay.periodic ? ny : ny - 1;
        for (Index i = 0; i < cfx; ++i) {
            const Index i2 = ax.periodic ? (i + 1) % nx : i + 1;
            double sx = ax.x[i2 % nx] - ax.x[i];
            if (ax.periodic && sx <= 0) sx += ax.period;
            for (Index j = 0; j < cfy; ++j) {
                const Index j2 = ay.periodic ? (j + 1) % ny : j + 1;
                double sy = ay.x[j2 % ny] - ay.x[j];
                if (ay.periodic && sy <= 0) sy += ay.period;
                detail::MixedCell c;
                c.n00 = g.idx(i, j);
                c.n10 = g.idx(i2, j);
                c.n01 = g.idx(i, j2);
                c.n11 = g.idx(i2, j2);
                if (!g.active(c.n00) || !g.active(c.n10) || !g.active(c.n01) || !g.active(c.n11))
                    continue;
                if (!g.interior(c.n00) && !g.interior(c.n10) && !g.interior(c.n01) &&
                    !g.interior(c.n11))
                    continue;
                c.sx = sx;
                c.sy = sy;
                c.vol = sx * sy;
                c.K = 0.25 * (M.metric.sqrtg[c.n00] * spec.coeffs.A01[c.n00] +
                              M.metric.sqrtg[c.n10] * spec.coeffs.A01[c.n10] +
                              M.metric.sqrtg[c.n01] * spec.coeffs.A01[c.n01] +
                              M.metric.sqrtg[c.n11] * spec.coeffs.A01[c.n11]);
                cells_.push_back(c);
            }
        }
    }

    void collect_drift(const ModelManifold& M, const OperatorSpec& spec) {
        if (!spec.coeffs.a1_0.size()) return;
        const Grid& g = M.grid;
        const bool upwind = (spec.drift == DriftScheme::Upwind);
        const Index n0 = g.n(0), n1 = (g.dim() == 2) ? g.n(1) : 1;
        for (Index i = 0; i < n0; ++i) {
            for (Index j = 0; j < n1; ++j) {
                const Index p = g.idx(i, j);
                if (!g.interior(p)) continue;
                for (int axis = 0; axis < g.dim(); ++axis) {
                    const cplx a = (axis == 0) ? spec.coeffs.a1_0[p] : spec.coeffs.a1_1[p];
                    if (a == cplx(0)) continue;
                    const Axis& ax = g.axis(axis);
                    const Index na = ax.n();
                    const Index c = (axis == 0) ? i : j;
                    auto at = [&](Index cc) {
                        const Index m = ax.periodic ? (cc + na) % na : cc;
                        return (axis == 0) ? g.idx(m, j) : g.idx(i, m);
                    };
                    auto hstep = [&](Index c0, Index c1) {
                        double d = ax.x[(c1 + na) % na] - ax.x[(c0 + na) % na];
                        if (ax.periodic) {
                            if (c1 > c0 && d <= 0) d += ax.period;
                            if (c1 < c0 && d >= 0) d -= ax.period;
                        }
                        return d;
                    };
                    const bool has_m = ax.periodic || c > 0;
                    const bool has_p = ax.periodic || c < na - 1;
                    if (upwind) {
                        if (a.real() > 0 && has_m) {
                            const double h = hstep(c - 1, c);
                            drift_.push_back({p, p, a / h});
                            drift_.push_back({p, at(c - 1), -a / h});
                            continue;
                        }
                        if (a.real() < 0 && has_p) {
                            const double h = hstep(c, c + 1);
                            drift_.push_back({p, at(c + 1), a / h});
                            drift_.push_back({p, p, -a / h});
                            continue;
                        }
                        if (a.real() == 0 && has_m && has_p) {
                            // purely imaginary drift has no upwind side; use centered
                        } else if (!has_m || !has_p) {
                            const int dir = has_p ? +1 : -1;
                            const double h = hstep(std::min(c, c + dir), std::max(c, c + dir));
                            drift_.push_back({p, at(c + dir), a * double(dir) / h});
                            drift_.push_back({p, p, -a * double(dir) / h});
                            continue;
                        }
                    }
                    // centered three-point stencil (same as the calculus gradient)
                    if (has_m && has_p) {
                        const double hl = hstep(c - 1, c), hr = hstep(c, c + 1);
                        drift_.push_back({p, at(c - 1), a * (-hr / (hl * (hl + hr)))});
                        drift_.push_back({p, p, a * ((hr - hl) / (hl * hr))});
                        drift_.push_back({p, at(c + 1), a * (hl / (hr * (hl + hr)))});
                    } else {
                        const int dir = has_p ? +1 : -1;
                        const double h = hstep(std::min<Index>(c, c + dir), std::max<Index>(c, c + dir));
                        drift_.push_back({p, at(c + dir), a * double(dir) / h});
                        drift_.push_back({p, p, -a * double(dir) / h});
                    }
                }
            }
        }
    }

    void assemble_matrix(const ModelManifold& M, const OperatorSpec& spec) {
        std::vector<Triplet> trips;
        auto add = [&](Index pf, Index qf, cplx v) {
            const Index r = full2red_[pf];
            if (r < 0) return;
            const Index c = full2red_[qf];
            if (c < 0) return;  // homogeneous Dirichlet column eliminated
            trips.emplace_back(r, c, v / w_full_[pf]);
        };
        for (const auto& f : faces_) {
            const double k = f.K * f.tau / f.s;
            add(f.p, f.p, k);
            add(f.p, f.q, -k);
            add(f.q, f.q, k);
            add(f.q, f.p, -k);
        }
        for (const auto& c : cells_) {
            // energy K * vol * (Dx u)(Dy v) + (Dy u)(Dx v) with edge-averaged gradients
            const Index nd[4] = {c.n00, c.n10, c.n01, c.n11};
            const double gx[4] = {-1.0 / (2 * c.sx), 1.0 / (2 * c.sx), -1.0 / (2 * c.sx),
                                  1.0 / (2 * c.sx)};
            const double gy[4] = {-1.0 / (2 * c.sy), -1.0 / (2 * c.sy), 1.0 / (2 * c.sy),
                                  1.0 / (2 * c.sy)};
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    add(nd[a], nd[b], c.K * c.vol * (gy[a] * gx[b] + gx[a] * gy[b]));
        }
        for (const auto& d : drift_) {
            const Index r = full2red_[d.row];
            const Index cc = full2red_[d.col];
            if (r >= 0 && cc >= 0) trips.emplace_back(r, cc, d.coef);
        }
        for (Index r = 0; r < static_cast<Index>(red2full_.size()); ++r) {
            const Index p = red2full_[r];
            cplx pot = spec.coeffs.a0.size() ? spec.coeffs.a0[p] : cplx(0);
            pot += spec.omega * std::pow(M.rho[p], -spec.lambda);
            if (pot != cplx(0)) trips.emplace_back(r, r, pot);
        }
        A_.resize(red2full_.size(), red2full_.size());
        A_.setFromTriplets(trips.begin(), trips.end());

        w_red_.resize(red2full_.size());
        rho_red_.resize(red2full_.size());
        for (Index r = 0; r < static_cast<Index>(red2full_.size()); ++r) {
            w_red_[r] = w_full_[red2full_[r]];
            rho_red_[r] = M.rho[red2full_[r]];
        }
    }

    const ModelManifold* M_ = nullptr;
    OperatorSpec spec_;
    SpMat A_;
    std::vector<Index> red2full_;
    std::vector<Index> full2red_;
    RealField w_full_, w_red_, rho_red_;
    std::vector<detail::Face> faces_;
    std::vector<detail::MixedCell> cells_;
    std::vector<detail::DriftEntry> drift_;
};

inline DiscreteOperator assemble(const OperatorSpec& spec, const ModelManifold& M,
                                 const WeightedMeasure& meas, const DiscreteCalculus& calc) {
    return DiscreteOperator(M, meas, spec, calc);
}

/**
 * Sesquilinear form evaluator at weight lambda'. The three terms are the
 * diffusion pairing, the drift term (the lambda'-weight commutator realized by
 * the exact face/cell product rule, plus the a1 stencil), and the potential
 * term. Their sum reproduces <A u | v>_{2,lambda'} to rounding for fields
 * supported on interior nodes.
 */
class FormHandle {
  public:
    FormHandle(const DiscreteOperator& op) : op_(&op) {}

    struct Terms {
        cplx diffusion{}, drift{}, potential{};
        cplx total() const { return diffusion + drift + potential; }
    };

    /// Evaluates the three form terms on full-lattice fields.
    Terms terms(const Field& u, const Field& v) const {
        const ModelManifold& M = op_->manifold();
        const OperatorSpec& spec = op_->spec();
        const double lp = spec.lambda_prime;
        auto P = [&](Index p) { return std::pow(M.rho[p], 2.0 * lp); };

        Terms T;
        for (const auto& f : op_->faces()) {
            const double k = f.K * f.tau / f.s;
            const cplx du = u[f.q] - u[f.p];
            const cplx dvb = std::conj(v[f.q] - v[f.p]);
            const double pm = 0.5 * (P(f.p) + P(f.q));
            const double dp = P(f.q) - P(f.p);
            const cplx mvb = 0.5 * std::conj(v[f.p] + v[f.q]);
            T.diffusion += k * pm * du * dvb;
            T.drift += k * dp * du * mvb;
        }
        for (const auto& c : op_->cells()) {
            const Index nd[4] = {c.n00, c.n10, c.n01, c.n11};
            const double gx[4] = {-1.0 / (2 * c.sx), 1.0 / (2 * c.sx), -1.0 / (2 * c.sx),
                                  1.0 / (2 * c.sx)};
            const double gy[4] = {-1.0 / (2 * c.sy), -1.0 / (2 * c.sy), 1.0 / (2 * c.sy),
                                  1.0 / (2 * c.sy)};
            cplx Dxu = 0, Dyu = 0;
            for (int a = 0; a < 4; ++a) {
                Dxu += gx[a] * u[nd[a]];
                Dyu += gy[a] * u[nd[a]];
            }
            // Dy(P v) over the two x-edges and Dx(P v) over the two y-edges,
            // split exactly into P-mean and P-difference parts
            cplx DyPv_mean = 0, DyPv_diff = 0, DxPv_mean = 0, DxPv_diff = 0;
            auto edge = [&](Index a, Index b, double inv_s, cplx& mean_part, cplx& diff_part) {
                const double pm = 0.5 * (P(a) + P(b));
                const double dp = P(b) - P(a);
                const cplx dv = std::conj(v[b] - v[a]);
                const cplx mv = 0.5 * std::conj(v[a] + v[b]);
                mean_part += 0.5 * inv_s * pm * dv;
                diff_part += 0.5 * inv_s * dp * mv;
            };
            edge(c.n00, c.n01, 1.0 / c.sy, DyPv_mean, DyPv_diff);
            edge(c.n10, c.n11, 1.0 / c.sy, DyPv_mean, DyPv_diff);
            edge(c.n00, c.n10, 1.0 / c.sx, DxPv_mean, DxPv_diff);
            edge(c.n01, c.n11, 1.0 / c.sx, DxPv_mean, DxPv_diff);
            T.diffusion += c.K * c.vol * (Dxu * DyPv_mean + Dyu * DxPv_mean);
            T.drift += c.K * c.vol * (Dxu * DyPv_diff + Dyu * DxPv_diff);
        }
        for (const auto& d : op_->drift_entries())
            T.drift += op_->full_weights()[d.row] * P(d.row) * d.coef * u[d.col] *
                       std::conj(v[d.row]);
        for (Index r = 0; r < op_->n(); ++r) {
            const Index p = op_->interior_nodes()[r];
            cplx pot = spec.coeffs.a0.size() ? spec.coeffs.a0[p] : cplx(0);
            pot += spec.omega * std::pow(M.rho[p], -spec.lambda);
            T.potential += op_->full_weights()[p] * P(p) * pot * u[p] * std::conj(v[p]);
        }
        return T;
    }

    cplx operator()(const Field& u, const Field& v) const { return terms(u, v).total(); }

  private:
    const DiscreteOperator* op_;
};

inline FormHandle assemble_form(const DiscreteOperator& op) { return FormHandle(op); }

}  // namespace sp
