#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace sp {

using cplx = std::complex<double>;
using Field = Eigen::VectorXcd;       // complex scalar field over lattice nodes
using RealField = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<cplx>;
using Triplet = Eigen::Triplet<cplx>;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;

/// Configuration/parameter problems (bad n, epsilon out of range, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

/// Geometry construction failures (non-positive R, overlapping collars, ...).
struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& m) : std::runtime_error(m) {}
};

/// Coefficient/operator validation failures (asymmetric diffusion tensor, NaN, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& m) : std::runtime_error(m) {}
};

/// Linear solver failures; carries a rough conditioning indicator when available.
struct SolverError : std::runtime_error {
    double condition_estimate;
    explicit SolverError(const std::string& m, double cond = 0.0)
        : std::runtime_error(m), condition_estimate(cond) {}
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

inline double sign(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

}  // namespace sp
