#pragma once

#include <algorithm>
#include <cmath>

#include "sp/core.hpp"

namespace sp {

namespace detail {

// Antiderivative of sqrt(R^2 - u^2).
inline double circ_prim(double u, double R) {
    u = std::clamp(u, -R, R);
    return 0.5 * (u * std::sqrt(std::max(R * R - u * u, 0.0)) + R * R * std::asin(u / R));
}

// Area of {(u,v): u <= x, v <= y} intersected with the disk of radius R at the origin.
inline double disk_corner_area(double x, double y, double R) {
    if (x <= -R || y <= -R) return 0.0;
    x = std::min(x, R);
    y = std::min(y, R);
    const double s = std::sqrt(std::max(R * R - y * y, 0.0));
    double area = 0.0;
    if (y >= 0) {
        // |u| >= s: chord fully below y (height 2t); |u| < s: height t + y
        const double p1b = std::min(x, -s);
        if (p1b > -R) area += 2.0 * (circ_prim(p1b, R) - circ_prim(-R, R));
        const double p2a = std::max(-R, -s), p2b = std::min(x, s);
        if (p2b > p2a) area += (circ_prim(p2b, R) - circ_prim(p2a, R)) + y * (p2b - p2a);
        const double p3a = std::max(-R, s);
        if (x > p3a) area += 2.0 * (circ_prim(x, R) - circ_prim(p3a, R));
    } else {
        const double p2a = std::max(-R, -s), p2b = std::min(x, s);
        if (p2b > p2a) area += (circ_prim(p2b, R) - circ_prim(p2a, R)) + y * (p2b - p2a);
    }
    return area;
}

}  // namespace detail

/// Exact area of the intersection of an axis-aligned rectangle with a disk.
inline double rect_disk_area(double x0, double x1, double y0, double y1,
                             double cx, double cy, double R) {
    using detail::disk_corner_area;
    return disk_corner_area(x1 - cx, y1 - cy, R) - disk_corner_area(x0 - cx, y1 - cy, R) -
           disk_corner_area(x1 - cx, y0 - cy, R) + disk_corner_area(x0 - cx, y0 - cy, R);
}

}  // namespace sp
