#pragma once

// Exact group operations, left-invariant frame and Carnot gauge for the
// 3-dimensional Heisenberg group in exponential coordinates: (a,b,c) stands
// for exp(aX + bY + cZ) with [X,Y] = Z the only nontrivial bracket.

#include <cmath>

namespace heis {

struct Point {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Components in the coordinate basis (dx, dy, dz) at some base point.
struct TangentVector {
    double dx = 0.0;
    double dy = 0.0;
    double dz = 0.0;
};

/// A point (0, y, z) of the vertical subgroup N, viewed abstractly.
struct NPoint {
    double y = 0.0;
    double z = 0.0;
};

/// BCH product for a step-2 group: z picks up half the symplectic form.
inline Point group_mul(const Point& p, const Point& q) {
    return {p.x + q.x, p.y + q.y, p.z + q.z + 0.5 * (p.x * q.y - q.x * p.y)};
}

inline Point group_inv(const Point& p) {
    return {-p.x, -p.y, -p.z};
}

/// Rotation about the z-axis; an isometry of both gauge and CC metrics.
inline Point rotate_z(const Point& p, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y, p.z};
}

/// Carnot dilation with degree vector (1, 1, 2).
inline Point dilate(const Point& p, double r) {
    return {r * p.x, r * p.y, r * r * p.z};
}

/// ||(a,b,c)|| = ((a^2+b^2)^2 + c^2)^(1/4)
inline double gauge_norm(const Point& p) {
    const double rr = p.x * p.x + p.y * p.y;
    return std::pow(rr * rr + p.z * p.z, 0.25);
}

inline double gauge_dist(const Point& p, const Point& q) {
    return gauge_norm(group_mul(group_inv(p), q));
}

/// d_N((y1,z1),(y2,z2)) = ((y1-y2)^4 + (z1-z2)^2)^(1/4); this is exactly the
/// gauge distance of the corresponding points on the x = 0 slice.
inline double dN(const NPoint& p, const NPoint& q) {
    const double dy = p.y - q.y, dz = p.z - q.z;
    return std::pow(dy * dy * dy * dy + dz * dz, 0.25);
}

// Left-invariant frame evaluated at p, in coordinate components.
inline TangentVector frame_x(const Point& p) { return {1.0, 0.0, -0.5 * p.y}; }
inline TangentVector frame_y(const Point& p) { return {0.0, 1.0, 0.5 * p.x}; }
inline TangentVector frame_z(const Point&) { return {0.0, 0.0, 1.0}; }

/// Differential of left translation by p applied to a coordinate vector at q.
inline TangentVector push_forward_left(const Point& p, const Point& q, const TangentVector& v) {
    (void)q;  // the z-column is constant; only p enters the Jacobian
    return {v.dx, v.dy, v.dz + 0.5 * (p.x * v.dy - p.y * v.dx)};
}

}  // namespace heis
