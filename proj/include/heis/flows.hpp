#pragma once

// The horizontal tangential vector field V = -(Yf/Xf) X + Y on the level set
// f = 0, integral curves theta_q(y), and characteristic-point detection.

#include <optional>
#include <utility>
#include <vector>

#include "heis/expr.hpp"
#include "heis/geometry.hpp"

namespace heis {

struct FlowCurve {
    Point base;                                   // q = theta_q(0)
    std::vector<std::pair<double, Point>> samples; // (y, point), y strictly monotone
    double step = 0.0;
    double level_residual_max = 0.0;              // max |f| seen over samples

    const Point& endpoint() const { return samples.back().second; }
};

struct CharScanResult {
    std::vector<Point> hits;
    double grid_spacing = 0.0;
    double tolerance = 0.0;
};

struct Box {
    double x_min = -1.0, x_max = 1.0;
    double y_min = -1.0, y_max = 1.0;
    double z_min = -1.0, z_max = 1.0;
};

/// Optional working-region constraint for flows: integration stops (with
/// RegionExitError) when the curve leaves C1 = {|x|<=a, |y|<=a,
/// -a-xy/2 <= z <= a-xy/2} or Xf drops below K/2.
struct FlowRegion {
    double a = 0.0;
    double K = 0.0;
};

/// Coordinate components of V at p. Throws CharacteristicPointError when
/// |Xf(p)| < char_tol.
TangentVector v_field(const Surface& s, const Point& p, double char_tol = 1e-9);

bool is_characteristic(const Surface& s, const Point& p, double tol);

/// Classical RK4 in the parameter y, with a Newton projection along the
/// x-coordinate after every step to pin |f| <= level_tol.
FlowCurve flow_theta(const Surface& s, const Point& q, double y_target, double step,
                     double level_tol, const std::optional<FlowRegion>& region = std::nullopt,
                     double char_tol = 1e-9);

/// Grid scan of the surface patch inside `box` for points with
/// max(|Xf|,|Yf|) <= tol, refined by Newton iteration on (f, Xf, Yf).
CharScanResult char_locus_scan(const Surface& s, const Box& box, int grid_n, double tol);

}  // namespace heis
