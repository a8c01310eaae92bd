#pragma once

// Test-only brute-force oracle for the Carnot-Caratheodory distance from the
// identity: minimize the Euclidean length of a planar polygonal path with
// fixed endpoints, subject to the signed-area constraint that realizes the
// z-increment of the lift. Augmented-Lagrangian gradient descent on the
// vertex positions; completely independent of the production geodesic solve.

#include <array>
#include <cmath>
#include <vector>

#include "heis/geometry.hpp"

namespace heis_test {

namespace detail {

using Vertex = std::array<double, 2>;

inline double path_length(const std::vector<Vertex>& v) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        len += std::hypot(v[i + 1][0] - v[i][0], v[i + 1][1] - v[i][1]);
    return len;
}

inline double signed_area(const std::vector<Vertex>& v) {
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        area += v[i][0] * v[i + 1][1] - v[i + 1][0] * v[i][1];
    return 0.5 * area;
}

}  // namespace detail

inline double cc_path_oracle(const heis::Point& target, int segments = 96) {
    using detail::Vertex;
    const double chord = std::hypot(target.x, target.y);
    const double z = target.z;
    const int N = segments;

    if (chord < 1e-14 && std::fabs(z) < 1e-14) return 0.0;

    std::vector<Vertex> v(N + 1);
    if (chord < 1e-12) {
        // Closed loop through the origin: start from a square of area |z|
        // and let the descent round it off.
        const double s = std::sqrt(std::fabs(z));
        const double sign = z >= 0.0 ? 1.0 : -1.0;
        const Vertex corners[5] = {{0, 0}, {s, 0}, {s, sign * s}, {0, sign * s}, {0, 0}};
        for (int i = 0; i <= N; ++i) {
            const double t = 4.0 * i / N;  // position along the square perimeter
            const int edge = std::min(3, static_cast<int>(t));
            const double u = t - edge;
            v[i] = {corners[edge][0] + u * (corners[edge + 1][0] - corners[edge][0]),
                    corners[edge][1] + u * (corners[edge + 1][1] - corners[edge][1])};
        }
    } else {
        // Straight chord plus a normal sine bump sized to roughly enclose z.
        const double nx = -target.y / chord, ny = target.x / chord;
        const double amp = z * 3.14159265358979323846 / (2.0 * chord);
        for (int i = 0; i <= N; ++i) {
            const double t = static_cast<double>(i) / N;
            const double bump = amp * std::sin(3.14159265358979323846 * t);
            v[i] = {t * target.x + bump * nx, t * target.y + bump * ny};
        }
    }

    const double scale = std::max(chord, std::sqrt(std::fabs(z))) + 1e-12;

    // Newton projection back onto the constraint {signed_area = z}, moving
    // interior vertices along the area gradient.
    std::vector<Vertex> grad(N + 1);
    auto project_area = [&] {
        for (int pass = 0; pass < 4; ++pass) {
            const double defect = detail::signed_area(v) - z;
            if (std::fabs(defect) <= 1e-12 * scale * scale) return;
            double norm2 = 0.0;
            for (int i = 1; i < N; ++i) {
                grad[i] = {0.5 * (v[i + 1][1] - v[i - 1][1]),
                           0.5 * (v[i - 1][0] - v[i + 1][0])};
                norm2 += grad[i][0] * grad[i][0] + grad[i][1] * grad[i][1];
            }
            if (norm2 < 1e-20) return;
            const double coef = defect / norm2;
            for (int i = 1; i < N; ++i) {
                v[i][0] -= coef * grad[i][0];
                v[i][1] -= coef * grad[i][1];
            }
        }
    };

    // Constrained curve shortening: a length-gradient step (the discrete
    // curvature direction, bounded by 2 per vertex) followed by the area
    // projection, with a decaying step size.
    const int iters = 20000;
    for (int iter = 0; iter < iters; ++iter) {
        const double step =
            0.5 * (detail::path_length(v) / N) * (1.0 - 0.95 * iter / iters);
        for (int i = 1; i < N; ++i) {
            Vertex g{0.0, 0.0};
            for (int k : {-1, 1}) {
                const double dx = v[i][0] - v[i + k][0], dy = v[i][1] - v[i + k][1];
                const double d = std::hypot(dx, dy);
                if (d > 1e-14) {
                    g[0] += dx / d;
                    g[1] += dy / d;
                }
            }
            grad[i] = g;
        }
        for (int i = 1; i < N; ++i) {
            v[i][0] -= step * grad[i][0];
            v[i][1] -= step * grad[i][1];
        }
        project_area();
    }
    return detail::path_length(v);
}

}  // namespace heis_test
