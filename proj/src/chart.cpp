#include "heis/chart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heis/cc_metric.hpp"
#include "heis/util.hpp"

namespace heis {

ExprPtr normalize_surface(const ExprPtr& f, const Point& base, double char_tol) {
    Surface s(f);
    if (std::fabs(s.value(base)) > 1e-9)
        throw DomainError("normalize_surface: base point is not on the level set f = 0");
    const HorizontalDerivs d = s.derivs(base);
    if (std::hypot(d.Xf, d.Yf) < char_tol)
        throw CharacteristicPointError(
            "normalize_surface: base point is characteristic (Xf = Yf = 0), "
            "so no region C1 can satisfy the K > 0 check");

    const double angle = std::atan2(d.Yf, d.Xf);
    const double c = std::cos(angle), sn = std::sin(angle);

    // Old coordinates of base * R_angle(p) in terms of the new coordinates.
    const ExprPtr x = make_var(Axis::x), y = make_var(Axis::y), z = make_var(Axis::z);
    const ExprPtr u = make_sub(make_mul(make_const(c), x), make_mul(make_const(sn), y));
    const ExprPtr v = make_add(make_mul(make_const(sn), x), make_mul(make_const(c), y));
    const ExprPtr x_old = make_add(make_const(base.x), u);
    const ExprPtr y_old = make_add(make_const(base.y), v);
    const ExprPtr z_old = make_add(
        make_const(base.z),
        make_add(z, make_mul(make_const(0.5),
                             make_sub(make_mul(make_const(base.x), v),
                                      make_mul(u, make_const(base.y))))));
    return substitute(f, x_old, y_old, z_old);
}

RegionConstants estimate_region_constants(const Surface& s, double a, int grid_n, double margin) {
    if (a <= 0.0) throw DomainError("estimate_region_constants: a must be positive");
    if (grid_n < 2) throw DomainError("estimate_region_constants: grid_n must be >= 2");

    double min_Xf = std::numeric_limits<double>::infinity();
    double max_partial = 0.0;
    double max_ratio = 0.0;

    // C1 = {|x| <= a, |y| <= a, -a - xy/2 <= z <= a - xy/2}; the z axis of
    // the grid follows the twisted slab.
    const double h = 2.0 * a / (grid_n - 1);
    for (int i = 0; i < grid_n; ++i) {
        const double x = -a + i * h;
        for (int j = 0; j < grid_n; ++j) {
            const double y = -a + j * h;
            const double z_shift = -0.5 * x * y;
            for (int k = 0; k < grid_n; ++k) {
                const Point p{x, y, z_shift - a + k * h};
                const HorizontalDerivs d = s.derivs(p);
                min_Xf = std::min(min_Xf, d.Xf);
                max_partial = std::max({max_partial, std::fabs(d.grad.fx),
                                        std::fabs(d.grad.fy), std::fabs(d.grad.fz)});
                if (d.Xf > 0.0)
                    max_ratio = std::max(max_ratio, std::fabs(d.Yf / d.Xf));
            }
        }
    }

    if (min_Xf <= 0.0)
        throw DomainError("estimate_region_constants: K <= 0 (characteristic point in C1)");

    RegionConstants out;
    out.a = a;
    out.grid_n = grid_n;
    out.margin = margin;
    out.K = min_Xf * (1.0 - margin);
    out.L = max_partial * (1.0 + margin);
    out.M = max_ratio * (1.0 + margin);
    // n = K/(2L), additionally capped by the seed-curve range (K/L) a so the
    // whole box C stays reachable when a < 1/2.
    out.n = std::min(out.K / (2.0 * out.L), out.K / out.L * a);
    return out;
}

double a2_bound(const RegionConstants& c) {
    const double sqrt_e = std::exp(0.5);
    const double ratio = c.L / c.K;
    const double t1 = std::exp(2.0) * ratio * ratio * ratio * ratio * (2.0 * c.n) * (2.0 * c.n);
    const double t2 = 1.0 + 0.75 * sqrt_e;
    return std::pow(t1 + t2 * t2, 0.25);
}

LipschitzConstants lipschitz_constants(const RegionConstants& consts, double B) {
    if (B < 1.0) throw DomainError("lipschitz_constants: B must be >= 1");
    LipschitzConstants out;
    out.B = B;
    out.A2 = a2_bound(consts);
    out.A1 = std::max(out.A2, std::sqrt(1.0 + consts.M * consts.M));
    out.A = out.A1 * std::pow(2.0, 0.75) * B;
    return out;
}

double estimate_B(const Box& box, int samples, std::uint64_t rng_seed) {
    if (samples < 2) throw DomainError("estimate_B: samples must be >= 2");
    Rng rng(rng_seed);
    double worst = 1.0;
    for (int i = 0; i < samples; ++i) {
        const Point p{rng.uniform(box.x_min, box.x_max), rng.uniform(box.y_min, box.y_max),
                      rng.uniform(box.z_min, box.z_max)};
        const Point q{rng.uniform(box.x_min, box.x_max), rng.uniform(box.y_min, box.y_max),
                      rng.uniform(box.z_min, box.z_max)};
        const double g = gauge_dist(p, q);
        if (g < 1e-12) continue;  // degenerate pair
        const double cc = cc_dist(p, q, 1e-10);
        worst = std::max({worst, g / cc, cc / g});
    }
    return worst * 1.05;
}

// ---------------------------------------------------------------------------

Chart::Chart(const ExprPtr& f, const Point& base, double a, const ChartParams& params)
    : surface_(normalize_surface(f, base, params.char_tol)), params_(params) {
    // The requested a is only a candidate; the K > 0 check validates it,
    // with automatic halving on rejection.
    double a_try = a;
    for (int attempt = 0;; ++attempt) {
        try {
            consts_ = estimate_region_constants(surface_, a_try, params.grid_n,
                                                params.region_margin);
            break;
        } catch (const DomainError&) {
            if (attempt >= 8) throw;
            a_try *= 0.5;
            HEIS_LOG_INFO("region rejected (K <= 0); retrying with a = %g", a_try);
        }
    }

    const double z_max = seed_z_max();
    const double spacing = 1e-3;
    for (double z = -z_max; z <= z_max + 0.5 * spacing; z += spacing) {
        const double zc = std::min(z, z_max);
        seed_cache_.emplace_back(zc, seed_curve_phi(zc).x);
    }
}

Point Chart::seed_curve_phi(double z) const {
    const RegionConstants& c = consts_;
    if (std::fabs(z) > c.K / c.L * c.a + 1e-12)
        throw DomainError("seed_curve_phi: z outside the seed-curve range");

    const double pad = 1e-9;
    const double half = std::min(c.a, c.L / c.K * std::fabs(z) + pad);
    auto slice = [&](double x) { return surface_.value({x, 0.0, z}); };

    double lo = -half, hi = half;
    double flo = slice(lo), fhi = slice(hi);
    if (flo == 0.0) return {lo, 0.0, z};
    if (fhi == 0.0) return {hi, 0.0, z};
    if ((flo > 0.0) == (fhi > 0.0))
        throw DomainError("seed_curve_phi: no sign change in bracket (bad region constants)");

    double mid = 0.5 * (lo + hi);
    while (hi - lo > params_.bisection_tol) {
        mid = 0.5 * (lo + hi);
        const double fm = slice(mid);
        if (fm == 0.0) return {mid, 0.0, z};
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    mid = 0.5 * (lo + hi);

    // Newton polish so the residual clears level_tol with room to spare.
    double x = mid;
    for (int it = 0; it < 3; ++it) {
        const double fv = slice(x);
        if (std::fabs(fv) <= 0.01 * params_.level_tol) break;
        const double fx = eval(surface_.fx(), {x, 0.0, z});
        if (fx == 0.0) break;
        x -= fv / fx;
    }
    return {x, 0.0, z};
}

FlowCurve Chart::flow_from_seed(double z, double y_target) const {
    const Point seed = seed_curve_phi(z);
    const FlowRegion region{consts_.a, consts_.K};
    return flow_theta(surface_, seed, y_target, params_.step, params_.level_tol, region,
                      params_.char_tol);
}

Point Chart::psi(const NPoint& p) const {
    if (std::fabs(p.y) > consts_.n + 1e-12 || std::fabs(p.z) > consts_.n + 1e-12)
        throw DomainError("psi: (y, z) outside the domain box C");
    return flow_from_seed(p.z, p.y).endpoint();
}

}  // namespace heis
