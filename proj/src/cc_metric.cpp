#include "heis/cc_metric.hpp"

#include <cmath>

#include "heis/util.hpp"

namespace heis {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Area-to-chord ratio of a circular arc with turning angle theta:
//   g(theta) = (theta - sin theta) / (8 sin^2(theta/2)),
// strictly increasing from 0 (theta -> 0) to +inf (theta -> 2*pi).
double arc_area_ratio(double theta) {
    const double s = std::sin(0.5 * theta);
    return (theta - std::sin(theta)) / (8.0 * s * s);
}

}  // namespace

double cc_norm(const Point& m, const CcOptions& opts) {
    if (!(std::isfinite(m.x) && std::isfinite(m.y) && std::isfinite(m.z)))
        throw NumericError("cc_norm: non-finite input");

    const double r = std::hypot(m.x, m.y);
    const double az = std::fabs(m.z);

    if (az == 0.0) return r;
    // Near-vertical displacement: the chord is negligible against the area
    // and the isoperimetric formula applies directly.
    if (r * r <= 1e-14 * az) return 2.0 * std::sqrt(kPi * az);

    const double target = az / (r * r);

    // Bisection on theta in (0, 2*pi); arc_area_ratio is monotone.
    double lo = 0.0;                       // ratio -> 0
    double hi = 2.0 * kPi * (1.0 - 1e-15); // ratio -> huge
    if (arc_area_ratio(hi) < target)
        throw NumericError("cc_norm: arc-angle bracket exhausted");

    double theta = 0.0;
    for (int i = 0; i < opts.max_iter; ++i) {
        theta = 0.5 * (lo + hi);
        if (arc_area_ratio(theta) < target)
            lo = theta;
        else
            hi = theta;
        if (hi - lo <= opts.tol * 1e-4) break;
    }
    theta = 0.5 * (lo + hi);

    // Length of the lifted arc: R*theta with R = r / (2 sin(theta/2)).
    return r * theta / (2.0 * std::sin(0.5 * theta));
}

double cc_dist(const Point& p, const Point& q, double tol) {
    if (tol <= 0.0) throw DomainError("cc_dist: tol must be positive");
    CcOptions opts;
    opts.tol = tol;
    return cc_norm(group_mul(group_inv(p), q), opts);
}

}  // namespace heis
