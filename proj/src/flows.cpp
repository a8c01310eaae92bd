#include "heis/flows.hpp"

#include <algorithm>
#include <cmath>

#include "heis/util.hpp"

namespace heis {
namespace {

bool in_region_c1(const Point& p, double a) {
    const double zc = p.z + 0.5 * p.x * p.y;  // recenters the twisted z-slab
    return std::fabs(p.x) <= a && std::fabs(p.y) <= a && std::fabs(zc) <= a;
}

struct Slope {
    double dx;
    double dz;
};

// Right-hand side of the flow ODE in the parameter y:
//   x'(y) = -Yf/Xf,   z'(y) = (y/2)(Yf/Xf) + x/2.
Slope slope_at(const Surface& s, double x, double y, double z, double char_tol) {
    const HorizontalDerivs d = s.derivs({x, y, z});
    if (std::fabs(d.Xf) < char_tol)
        throw CharacteristicPointError("flow hit a characteristic point (|Xf| < char_tol)");
    const double ratio = d.Yf / d.Xf;
    return {-ratio, 0.5 * y * ratio + 0.5 * x};
}

}  // namespace

TangentVector v_field(const Surface& s, const Point& p, double char_tol) {
    const HorizontalDerivs d = s.derivs(p);
    if (std::fabs(d.Xf) < char_tol)
        throw CharacteristicPointError("v_field: |Xf| below characteristic cutoff");
    const double ratio = d.Yf / d.Xf;
    // -(Yf/Xf) X + Y in coordinate components
    return {-ratio, 1.0, 0.5 * p.y * ratio + 0.5 * p.x};
}

bool is_characteristic(const Surface& s, const Point& p, double tol) {
    const HorizontalDerivs d = s.derivs(p);
    return std::max(std::fabs(d.Xf), std::fabs(d.Yf)) <= tol;
}

FlowCurve flow_theta(const Surface& s, const Point& q, double y_target, double step,
                     double level_tol, const std::optional<FlowRegion>& region, double char_tol) {
    if (step <= 0.0) throw DomainError("flow_theta: step must be positive");
    if (level_tol <= 0.0) throw DomainError("flow_theta: level_tol must be positive");
    if (std::fabs(s.value(q)) > level_tol)
        throw DomainError("flow_theta: base point is not on the level set");
    if (std::fabs(s.derivs(q).Xf) < char_tol)
        throw CharacteristicPointError("flow_theta: base point is characteristic");

    FlowCurve curve;
    curve.base = q;
    curve.step = step;
    curve.samples.emplace_back(q.y, q);

    double x = q.x, y = q.y, z = q.z;
    const double span = y_target - q.y;
    if (span == 0.0) return curve;
    const double dir = span > 0.0 ? 1.0 : -1.0;
    const long n_steps = static_cast<long>(std::ceil(std::fabs(span) / step - 1e-12));

    for (long i = 0; i < n_steps; ++i) {
        const double y_next = (i + 1 == n_steps) ? y_target : q.y + dir * step * (i + 1);
        const double h = y_next - y;

        const Slope k1 = slope_at(s, x, y, z, char_tol);
        const Slope k2 = slope_at(s, x + 0.5 * h * k1.dx, y + 0.5 * h, z + 0.5 * h * k1.dz, char_tol);
        const Slope k3 = slope_at(s, x + 0.5 * h * k2.dx, y + 0.5 * h, z + 0.5 * h * k2.dz, char_tol);
        const Slope k4 = slope_at(s, x + h * k3.dx, y_next, z + h * k3.dz, char_tol);

        x += h / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
        z += h / 6.0 * (k1.dz + 2.0 * k2.dz + 2.0 * k3.dz + k4.dz);
        y = y_next;

        // Newton projection along x restores the level set; dx f = Xf + (y/2)Zf
        // is bounded away from zero on the working region.
        bool projected = false;
        for (int it = 0; it < 12; ++it) {
            const double fv = s.value({x, y, z});
            if (std::fabs(fv) <= level_tol) {
                projected = true;
                curve.level_residual_max = std::max(curve.level_residual_max, std::fabs(fv));
                break;
            }
            const double fx = eval(s.fx(), {x, y, z});
            if (fx == 0.0) break;
            x -= fv / fx;
        }
        if (!projected) throw NumericError("flow_theta: level-set projection failed");

        const Point p{x, y, z};
        if (region) {
            if (!in_region_c1(p, region->a))
                throw RegionExitError("flow_theta: curve left the working region C1");
            if (s.derivs(p).Xf < 0.5 * region->K)
                throw RegionExitError("flow_theta: Xf fell below K/2");
        }
        curve.samples.emplace_back(y, p);
    }
    return curve;
}

// ---------------------------------------------------------------------------

namespace {

// Solve a 3x3 linear system by Cramer's rule. Returns false when singular.
bool solve3(const double J[3][3], const double r[3], double out[3]) {
    const double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                       J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                       J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    if (std::fabs(det) < 1e-14) return false;
    double M[3][3];
    for (int col = 0; col < 3; ++col) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M[i][j] = (j == col) ? r[i] : J[i][j];
        out[col] = (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                    M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                    M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])) /
                   det;
    }
    return true;
}

}  // namespace

CharScanResult char_locus_scan(const Surface& s, const Box& box, int grid_n, double tol) {
    if (grid_n < 2) throw DomainError("char_locus_scan: grid_n must be >= 2");
    if (tol <= 0.0) throw DomainError("char_locus_scan: tol must be positive");

    const double hx = (box.x_max - box.x_min) / (grid_n - 1);
    const double hy = (box.y_max - box.y_min) / (grid_n - 1);
    const double hz = (box.z_max - box.z_min) / (grid_n - 1);
    const double spacing = std::max({hx, hy, hz});

    CharScanResult result;
    result.grid_spacing = spacing;
    result.tolerance = tol;

    // The system F = (f, Xf, Yf) and its symbolic Jacobian.
    const ExprPtr half_y = make_mul(make_const(0.5), make_var(Axis::y));
    const ExprPtr half_x = make_mul(make_const(0.5), make_var(Axis::x));
    const ExprPtr Xf_e = make_sub(s.fx(), make_mul(half_y, s.fz()));
    const ExprPtr Yf_e = make_add(s.fy(), make_mul(half_x, s.fz()));
    const ExprPtr F[3] = {s.expr(), Xf_e, Yf_e};
    ExprPtr Jac[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Jac[i][j] = diff(F[i], static_cast<Axis>(j));

    const double coarse = std::max(tol, spacing);

    auto try_candidate = [&](Point p) {
        // Newton on (f, Xf, Yf) = 0.
        for (int it = 0; it < 50; ++it) {
            double r[3], J[3][3], d[3];
            bool ok = true;
            try {
                for (int i = 0; i < 3; ++i) r[i] = eval(F[i], p);
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) J[i][j] = eval(Jac[i][j], p);
            } catch (const DomainError&) {
                return;
            }
            if (std::fabs(r[0]) <= tol && std::fabs(r[1]) <= tol && std::fabs(r[2]) <= tol) {
                // converged; keep if inside the (slightly padded) box
                if (p.x < box.x_min - spacing || p.x > box.x_max + spacing ||
                    p.y < box.y_min - spacing || p.y > box.y_max + spacing ||
                    p.z < box.z_min - spacing || p.z > box.z_max + spacing)
                    return;
                for (const Point& h : result.hits) {
                    if (std::fabs(h.x - p.x) <= spacing && std::fabs(h.y - p.y) <= spacing &&
                        std::fabs(h.z - p.z) <= spacing)
                        return;  // duplicate of an existing hit
                }
                result.hits.push_back(p);
                return;
            }
            if (!solve3(J, r, d)) { ok = false; }
            if (!ok) return;
            p.x -= d[0];
            p.y -= d[1];
            p.z -= d[2];
        }
    };

    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            for (int k = 0; k < grid_n; ++k) {
                Point p{box.x_min + i * hx, box.y_min + j * hy, box.z_min + k * hz};
                // Project onto the surface along the steepest coordinate.
                bool on_surface = false;
                try {
                    for (int it = 0; it < 25; ++it) {
                        const double fv = s.value(p);
                        if (std::fabs(fv) <= 1e-10) {
                            on_surface = true;
                            break;
                        }
                        const HorizontalDerivs d = s.derivs(p);
                        const double ax = std::fabs(d.grad.fx), ay = std::fabs(d.grad.fy),
                                     az = std::fabs(d.grad.fz);
                        if (ax >= ay && ax >= az && ax > 1e-12)
                            p.x -= fv / d.grad.fx;
                        else if (ay >= az && ay > 1e-12)
                            p.y -= fv / d.grad.fy;
                        else if (az > 1e-12)
                            p.z -= fv / d.grad.fz;
                        else
                            break;
                    }
                    if (!on_surface) continue;
                    const HorizontalDerivs d = s.derivs(p);
                    if (std::max(std::fabs(d.Xf), std::fabs(d.Yf)) > coarse) continue;
                } catch (const DomainError&) {
                    continue;
                }
                try_candidate(p);
            }
        }
    }
    return result;
}

}  // namespace heis
