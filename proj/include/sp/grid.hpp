#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sp/core.hpp"

namespace sp {

enum class NodeKind : std::uint8_t {
    Interior = 0,
    Dirichlet = 1,    // genuine boundary of the model geometry
    Truncation = 2,   // artificial cut near a singular end / far field
    Excised = 3,      // outside the computational domain, carries no value
};

struct Grading {
    enum class Kind { Uniform, GeometricTowardStart };
    Kind kind = Kind::Uniform;
    double ratio = 1.0;  // realized adjacent-spacing ratio, in (0,1]
};

struct Axis {
    std::vector<double> x;
    bool periodic = false;
    double period = 0.0;
    Grading grading;

    Index n() const { return static_cast<Index>(x.size()); }

    // Dual (midpoint) cell length at node i.
    double dual(Index i) const {
        const Index m = n();
        if (periodic) {
            const double xm = (i == 0) ? x[m - 1] - period : x[i - 1];
            const double xp = (i == m - 1) ? x[0] + period : x[i + 1];
            return 0.5 * (xp - xm);
        }
        if (i == 0) return 0.5 * (x[1] - x[0]);
        if (i == m - 1) return 0.5 * (x[m - 1] - x[m - 2]);
        return 0.5 * (x[i + 1] - x[i - 1]);
    }
};

/// Uniform axis on [a,b] with n nodes.
inline Axis uniform_axis(double a, double b, Index n) {
    Axis ax;
    ax.x.resize(n);
    for (Index i = 0; i < n; ++i) ax.x[i] = a + (b - a) * double(i) / double(n - 1);
    ax.grading = {Grading::Kind::Uniform, 1.0};
    return ax;
}

/// Geometrically graded axis on [a,b], spacing shrinking toward a.
/// Nodes follow the smooth map a*(b/a)^s, so adjacent spacings have a
/// constant ratio and adjacent coordinate values stay comparable.
inline Axis geometric_axis(double a, double b, Index n) {
    require(a > 0 && b > a, "geometric_axis: need 0 < a < b");
    Axis ax;
    ax.x.resize(n);
    const double q = b / a;
    for (Index i = 0; i < n; ++i) ax.x[i] = a * std::pow(q, double(i) / double(n - 1));
    ax.x.front() = a;
    ax.x.back() = b;
    ax.grading = {Grading::Kind::GeometricTowardStart, std::pow(q, -1.0 / double(n - 1))};
    return ax;
}

/// Periodic axis for the unit circle: n nodes on [0, 2*pi).
inline Axis circle_axis(Index n) {
    Axis ax;
    ax.periodic = true;
    ax.period = 2.0 * kPi;
    ax.x.resize(n);
    for (Index i = 0; i < n; ++i) ax.x[i] = ax.period * double(i) / double(n);
    ax.grading = {Grading::Kind::Uniform, 1.0};
    return ax;
}

/**
 * Tensor-product lattice carrying node kinds and quadrature cell volumes.
 * Node order is lexicographic: idx = i*n1 + j (axis 0 major).
 */
class Grid {
  public:
    Grid() = default;

    static Grid make_1d(Axis ax) {
        Grid g;
        g.dim_ = 1;
        g.ax_[0] = std::move(ax);
        g.kind_.assign(g.size(), NodeKind::Interior);
        g.init_cells();
        return g;
    }

    static Grid make_2d(Axis a0, Axis a1) {
        Grid g;
        g.dim_ = 2;
        g.ax_[0] = std::move(a0);
        g.ax_[1] = std::move(a1);
        g.kind_.assign(g.size(), NodeKind::Interior);
        g.init_cells();
        return g;
    }

    int dim() const { return dim_; }
    const Axis& axis(int k) const { return ax_[k]; }
    Index n(int k) const { return ax_[k].n(); }
    Index size() const { return dim_ == 1 ? ax_[0].n() : ax_[0].n() * ax_[1].n(); }

    Index idx(Index i, Index j = 0) const { return dim_ == 1 ? i : i * ax_[1].n() + j; }
    Index i0(Index idx) const { return dim_ == 1 ? idx : idx / ax_[1].n(); }
    Index i1(Index idx) const { return dim_ == 1 ? 0 : idx % ax_[1].n(); }

    double coord(int k, Index idx) const {
        return k == 0 ? ax_[0].x[i0(idx)] : ax_[1].x[i1(idx)];
    }

    NodeKind kind(Index idx) const { return kind_[idx]; }
    void set_kind(Index idx, NodeKind k) { kind_[idx] = k; }
    bool active(Index idx) const { return kind_[idx] != NodeKind::Excised; }
    bool interior(Index idx) const { return kind_[idx] == NodeKind::Interior; }

    /// Coordinate cell volume (dual cell, possibly clipped against curved boundaries).
    double cell(Index idx) const { return cell_[idx]; }
    void set_cell(Index idx, double v) { cell_[idx] = v; }

    Index count(NodeKind k) const {
        return std::count(kind_.begin(), kind_.end(), k);
    }

    void validate() const {
        for (int k = 0; k < dim_; ++k) {
            const auto& x = ax_[k].x;
            require(x.size() >= 3, "grid axis needs at least 3 nodes");
            for (size_t i = 1; i < x.size(); ++i)
                require(x[i] > x[i - 1], "grid axis coordinates must be strictly increasing");
            require(ax_[k].grading.ratio > 0 && ax_[k].grading.ratio <= 1.0 + 1e-12,
                    "grading ratio must lie in (0,1]");
        }
        require(count(NodeKind::Interior) >= 1, "grid has no interior node");
        for (Index i = 0; i < size(); ++i)
            if (active(i)) require(cell_[i] > 0, "active node with non-positive cell volume");
    }

  private:
    void init_cells() {
        cell_.assign(size(), 0.0);
        for (Index p = 0; p < size(); ++p) {
            double v = ax_[0].dual(i0(p));
            if (dim_ == 2) v *= ax_[1].dual(i1(p));
            cell_[p] = v;
        }
    }

    int dim_ = 1;
    Axis ax_[2];
    std::vector<NodeKind> kind_;
    std::vector<double> cell_;
};

}  // namespace sp
