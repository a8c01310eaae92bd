#pragma once

// Chart construction: normalization of the defining function, region
// constants on the compact box C1, the seed curve phi(z) on the y = 0 plane,
// the parameterization Psi(y, z) = theta_phi(z)(y), and the Lipschitz
// constants A2, A1, A.

#include <cstdint>
#include <vector>

#include "heis/expr.hpp"
#include "heis/flows.hpp"
#include "heis/geometry.hpp"

namespace heis {

struct RegionConstants {
    double a = 0.0;  // half-width of C1
    double K = 0.0;  // lower bound on Xf over C1
    double L = 0.0;  // upper bound on |fx|, |fy|, |fz| over C1
    double M = 0.0;  // upper bound on |Yf/Xf| over C1
    double n = 0.0;  // half-width of the domain box C; n = K/(2L)
    int grid_n = 0;  // sampling resolution used
    double margin = 0.0;  // conservative margin applied to the grid extrema
};

struct LipschitzConstants {
    double B = 0.0;
    double A2 = 0.0;
    double A1 = 0.0;
    double A = 0.0;
};

struct ChartParams {
    double step = 1e-3;
    double level_tol = 1e-9;
    double bisection_tol = 1e-12;
    double region_margin = 0.05;
    int grid_n = 64;
    double char_tol = 1e-9;
};

/// Compose f with the left translation by `base` and the z-rotation that
/// makes the new function vanish at the origin with Xf(0) > 0, Yf(0) = 0.
ExprPtr normalize_surface(const ExprPtr& f, const Point& base, double char_tol = 1e-9);

/// Grid estimate of K, L, M over C1 with a conservative margin. Throws
/// DomainError when the grid minimum of Xf is not positive (characteristic
/// point inside the region); the caller is expected to shrink a.
RegionConstants estimate_region_constants(const Surface& s, double a, int grid_n,
                                          double margin = 0.05);

/// A2, A1 = max(A2, sqrt(1+M^2)), A = A1 * 2^(3/4) * B, with A2 evaluated at
/// the domain worst case |z2 - z1| = 2n.
LipschitzConstants lipschitz_constants(const RegionConstants& consts, double B);

/// Upper bound A2 for the z-leg estimate, from the region constants alone.
double a2_bound(const RegionConstants& consts);

/// Empirical gauge/CC comparability constant on a box: 1.05 times the largest
/// sampled value of max(gauge/cc, cc/gauge). Deterministic given rng_seed.
double estimate_B(const Box& box, int samples, std::uint64_t rng_seed);

class Chart {
public:
    /// Normalizes f at `base`, estimates region constants (halving a up to
    /// 8 times if the K > 0 check rejects the region), and tabulates the
    /// seed curve.
    Chart(const ExprPtr& f, const Point& base, double a, const ChartParams& params = {});

    const Surface& surface() const { return surface_; }
    const RegionConstants& constants() const { return consts_; }
    const ChartParams& params() const { return params_; }

    /// Valid seed-curve range: |z| <= (K/L) * a.
    double seed_z_max() const { return consts_.K / consts_.L * consts_.a; }

    /// phi(z) = (x*, 0, z) with f(x*, 0, z) = 0, by bisection. Unique because
    /// dx f >= K on the slice.
    Point seed_curve_phi(double z) const;

    /// Psi(0, y, z) = theta_phi(z)(y). Requires |y| <= n and |z| <= n.
    Point psi(const NPoint& p) const;

    /// Full flow curve behind psi; used by the estimate checks.
    FlowCurve flow_from_seed(double z, double y_target) const;

    const std::vector<std::pair<double, double>>& seed_cache() const { return seed_cache_; }

private:
    Surface surface_;
    RegionConstants consts_;
    ChartParams params_;
    std::vector<std::pair<double, double>> seed_cache_;  // (z, x) table, z ascending
};

}  // namespace heis
