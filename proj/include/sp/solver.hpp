#pragma once

#include <memory>

#include <Eigen/SparseLU>

#include "sp/assemble.hpp"
#include "sp/core.hpp"

namespace sp {

/// Sparse direct factorization of (mu I + A), reusable across solves.
class ShiftedSolver {
  public:
    ShiftedSolver(const SpMat& A, cplx mu) : A_(A), mu_(mu) {
        SpMat I(A.rows(), A.cols());
        I.setIdentity();
        SpMat S = A + SpMat(mu * I);
        lu_.compute(S);
        if (lu_.info() != Eigen::Success)
            throw SolverError("shifted system is singular or near-singular", 0.0);
        S_ = std::move(S);
    }

    Field solve(const Field& f, double rel_tol = 1e-10) const {
        Field u = lu_.solve(f);
        const double resid = (S_ * u - f).norm();
        const double scale = f.norm();
        if (scale > 0 && resid > rel_tol * scale) {
            throw SolverError("resolvent solve exceeded residual tolerance",
                              u.norm() * (std::abs(mu_) + A_.norm()) / scale);
        }
        return u;
    }

    /// Solve with the conjugate-transposed matrix (for norm estimation).
    Field solve_adjoint(const Field& f) const {
        if (!luH_) {
            luH_ = std::make_unique<Eigen::SparseLU<SpMat>>();
            SpMat SH = S_.adjoint();
            luH_->compute(SH);
            if (luH_->info() != Eigen::Success)
                throw SolverError("adjoint factorization failed", 0.0);
        }
        return luH_->solve(f);
    }

    const SpMat& matrix() const { return S_; }

  private:
    SpMat A_, S_;
    cplx mu_;
    Eigen::SparseLU<SpMat> lu_;
    mutable std::unique_ptr<Eigen::SparseLU<SpMat>> luH_;
};

/// u = (mu + A)^{-1} f on the reduced index set.
inline Field resolvent_apply(const DiscreteOperator& op, cplx mu, const Field& f,
                             double rel_tol = 1e-10) {
    ShiftedSolver s(op.matrix(), mu);
    return s.solve(f, rel_tol);
}

/**
 * Weighted operator norm ||(mu+A)^{-1}||_{2,theta} estimated by power
 * iteration on the similarity-transformed resolvent (deterministic start).
 */
inline double resolvent_norm_weighted(const ShiftedSolver& s, const RealField& w,
                                      const RealField& rho, double theta, int iters = 40) {
    const Index n = w.size();
    RealField d(n);
    for (Index r = 0; r < n; ++r) d[r] = std::sqrt(w[r]) * std::pow(rho[r], theta);
    Field x(n);
    for (Index r = 0; r < n; ++r) x[r] = cplx(1.0 + 0.3 * std::sin(double(r)), 0.1);
    x /= x.norm();
    double sigma = 0;
    for (int it = 0; it < iters; ++it) {
        // y = C x with C = D (mu+A)^{-1} D^{-1}
        Field y = s.solve(Field(x.cwiseQuotient(d.cast<cplx>())), 1e-6);
        y = y.cwiseProduct(d.cast<cplx>());
        // x <- C^H y
        Field t = s.solve_adjoint(Field(y.cwiseProduct(d.cast<cplx>())));
        t = t.cwiseQuotient(d.cast<cplx>());
        sigma = std::sqrt(t.norm());
        if (t.norm() == 0) break;
        x = t / t.norm();
    }
    return sigma;
}

}  // namespace sp
