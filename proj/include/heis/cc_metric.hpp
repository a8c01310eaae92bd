#pragma once

// Numerical Carnot-Caratheodory distance. A horizontal curve's CC length
// equals the Euclidean length of its xy-projection, and its z-increment is
// the signed-area functional of that projection. Geodesics from the identity
// therefore lift circular arcs, and the distance reduces to a scalar root
// solve on the arc angle.

#include "heis/geometry.hpp"

namespace heis {

struct CcOptions {
    double tol = 1e-10;   // target absolute accuracy of the arc-angle solve
    int max_iter = 200;
};

/// CC distance from the identity to m.
double cc_norm(const Point& m, const CcOptions& opts = {});

/// CC distance between p and q; left-invariant by construction.
/// Throws NumericError if the scalar solve does not converge.
double cc_dist(const Point& p, const Point& q, double tol = 1e-10);

}  // namespace heis
