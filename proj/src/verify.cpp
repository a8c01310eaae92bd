#include "heis/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "heis/cc_metric.hpp"
#include "heis/util.hpp"

namespace heis {

const char* to_string(PairStatus s) {
    switch (s) {
        case PairStatus::ok: return "ok";
        case PairStatus::flow_exit: return "flow-exit";
        case PairStatus::solver_fail: return "solver-fail";
        case PairStatus::characteristic: return "characteristic";
        case PairStatus::projection_fail: return "projection-fail";
    }
    return "unknown";
}

const char* to_string(BoundCheck::Name n) {
    switch (n) {
        case BoundCheck::Name::claim2: return "claim2";
        case BoundCheck::Name::lemma: return "lemma";
        case BoundCheck::Name::gronwall: return "gronwall";
        case BoundCheck::Name::eta3: return "eta3";
        case BoundCheck::Name::claim3: return "claim3";
    }
    return "unknown";
}

LipschitzReport verify_lipschitz(const Chart& chart, const LipschitzConstants& lips, int samples,
                                 std::uint64_t rng_seed, double margin) {
    if (samples < 0) throw DomainError("verify_lipschitz: samples must be >= 0");

    LipschitzReport report;
    report.constants = lips;
    report.rng_seed = rng_seed;
    report.margin = margin;
    report.pairs.reserve(samples);

    const double n = chart.constants().n;
    Rng rng(rng_seed);

    for (int i = 0; i < samples; ++i) {
        NPoint p, q;
        // The ratio is ill-conditioned near the diagonal; reject tiny d_N.
        do {
            p = {rng.uniform(-n, n), rng.uniform(-n, n)};
            q = {rng.uniform(-n, n), rng.uniform(-n, n)};
        } while (dN(p, q) < 1e-6);

        PairRecord rec;
        rec.id = i;
        rec.p = p;
        rec.q = q;
        rec.d_N = dN(p, q);
        try {
            const Point ip = chart.psi(p);
            const Point iq = chart.psi(q);
            rec.d_gauge = gauge_dist(ip, iq);
            rec.d_cc = cc_dist(ip, iq, 1e-6);
            rec.ratio_gauge = rec.d_gauge / rec.d_N;
            rec.ratio_cc = rec.d_cc / rec.d_N;
            report.max_ratio_cc = std::max(report.max_ratio_cc, rec.ratio_cc);
            report.max_ratio_gauge = std::max(report.max_ratio_gauge, rec.ratio_gauge);
        } catch (const CharacteristicPointError&) {
            rec.status = PairStatus::characteristic;
        } catch (const RegionExitError&) {
            rec.status = PairStatus::flow_exit;
        } catch (const DomainError&) {
            rec.status = PairStatus::flow_exit;
        } catch (const NumericError&) {
            rec.status = PairStatus::solver_fail;
        }
        if (rec.status != PairStatus::ok) ++report.failures;
        report.pairs.push_back(rec);
    }

    const bool ratio_ok = report.max_ratio_cc <= lips.A * (1.0 + margin);
    const bool failures_ok =
        samples == 0 || report.failures <= static_cast<int>(0.01 * samples);
    report.pass = ratio_ok && failures_ok;
    return report;
}

BoundCheck check_claim2(const Chart& chart, double y1, double y2, double z, double margin) {
    const RegionConstants& c = chart.constants();
    if (std::fabs(y1) > c.n + 1e-12 || std::fabs(y2) > c.n + 1e-12 || std::fabs(z) > c.n + 1e-12)
        throw DomainError("check_claim2: arguments outside the box C");

    BoundCheck check;
    check.name = BoundCheck::Name::claim2;
    check.margin = margin;
    check.rhs = std::fabs(y1 - y2) * std::sqrt(1.0 + c.M * c.M);

    if (y1 == y2) {
        check.lhs = 0.0;
        check.pass = true;
        return check;
    }

    // Curve from phi(z), restricted to [y1, y2]: flow to y1, then sample on
    // the way to y2. Length integrand sqrt(1 + gamma1'^2) by trapezoid, with
    // gamma1' = -Yf/Xf evaluated at the samples.
    const Point start = chart.flow_from_seed(z, y1).endpoint();
    const FlowRegion region{c.a, c.K};
    const FlowCurve leg = flow_theta(chart.surface(), start, y2, chart.params().step,
                                     chart.params().level_tol, region, chart.params().char_tol);

    double length = 0.0;
    double prev_y = leg.samples.front().first;
    double prev_integrand = 0.0;
    bool first = true;
    for (const auto& [yv, pt] : leg.samples) {
        const HorizontalDerivs d = chart.surface().derivs(pt);
        const double slope = -d.Yf / d.Xf;
        const double integrand = std::sqrt(1.0 + slope * slope);
        if (!first) length += 0.5 * (prev_integrand + integrand) * std::fabs(yv - prev_y);
        first = false;
        prev_y = yv;
        prev_integrand = integrand;
    }
    check.lhs = length;

    const double d_cc = cc_dist(start, leg.endpoint(), 1e-8);
    const bool length_dominates = d_cc <= check.lhs * (1.0 + margin) + 1e-12;
    check.pass = check.lhs <= check.rhs * (1.0 + margin) + 1e-12 && length_dominates;
    return check;
}

std::vector<BoundCheck> check_claim3_bounds(const Chart& chart, double y, double z1, double z2,
                                            double margin) {
    const RegionConstants& c = chart.constants();
    if (std::fabs(y) > c.n + 1e-12)
        throw DomainError("check_claim3_bounds: |y| > n");
    if (std::fabs(z1) > c.n + 1e-12 || std::fabs(z2) > c.n + 1e-12)
        throw DomainError("check_claim3_bounds: z outside the box C");

    const FlowCurve gamma = chart.flow_from_seed(z1, y);
    const FlowCurve eta = chart.flow_from_seed(z2, y);
    const Point pg = gamma.endpoint(), pe = eta.endpoint();

    const double d1 = pe.x - pg.x;          // eta1 - gamma1
    const double d3 = pe.z - pg.z;          // eta3 - gamma3
    const double dz = std::fabs(z2 - z1);
    const double sqrt_e = std::exp(0.5);
    const double abs_slack = 1e-12;

    std::vector<BoundCheck> out;

    BoundCheck lemma;
    lemma.name = BoundCheck::Name::lemma;
    lemma.margin = margin;
    lemma.lhs = std::fabs(d1);
    lemma.rhs = c.L / c.K * std::fabs(d3 + 0.5 * y * d1);
    lemma.pass = lemma.lhs <= lemma.rhs * (1.0 + margin) + abs_slack;
    out.push_back(lemma);

    BoundCheck gronwall;
    gronwall.name = BoundCheck::Name::gronwall;
    gronwall.margin = margin;
    gronwall.lhs = std::fabs(d1);
    gronwall.rhs = c.L / c.K * sqrt_e * dz;
    gronwall.pass = gronwall.lhs <= gronwall.rhs * (1.0 + margin) + abs_slack;
    out.push_back(gronwall);

    BoundCheck eta3;
    eta3.name = BoundCheck::Name::eta3;
    eta3.margin = margin;
    eta3.lhs = std::fabs(d3);
    eta3.rhs = (1.0 + 0.75 * sqrt_e) * dz;
    eta3.pass = eta3.lhs <= eta3.rhs * (1.0 + margin) + abs_slack;
    out.push_back(eta3);

    // The z-leg estimate is stated for the gauge of the image displacement;
    // the CC distance is logged alongside for reference.
    BoundCheck claim3;
    claim3.name = BoundCheck::Name::claim3;
    claim3.margin = margin;
    claim3.lhs = gauge_dist(pg, pe);
    claim3.rhs = a2_bound(c) * std::sqrt(dz);
    claim3.pass = claim3.lhs <= claim3.rhs * (1.0 + margin) + abs_slack;
    out.push_back(claim3);
    HEIS_LOG_DEBUG("claim3 at (y=%g, z1=%g, z2=%g): gauge=%.9g cc=%.9g rhs=%.9g", y, z1, z2,
                   claim3.lhs, cc_dist(pg, pe, 1e-8), claim3.rhs);

    return out;
}

std::vector<BoxCountRow> hausdorff_box_count(const std::vector<Point>& points,
                                             const std::vector<double>& scales) {
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (scales[i] <= 0.0)
            throw DomainError("hausdorff_box_count: scales must be positive");
        if (i > 0 && scales[i] >= scales[i - 1])
            throw DomainError("hausdorff_box_count: scales must be decreasing");
    }

    std::vector<BoxCountRow> rows;
    rows.reserve(scales.size());
    for (double r : scales) {
        // Gauge-adapted cells: side r in x and y, r^2 in z.
        std::map<std::tuple<long, long, long>, bool> cells;
        for (const Point& p : points) {
            cells[{static_cast<long>(std::floor(p.x / r)), static_cast<long>(std::floor(p.y / r)),
                   static_cast<long>(std::floor(p.z / (r * r)))}] = true;
        }
        BoxCountRow row;
        row.scale = r;
        row.count = static_cast<long>(cells.size());
        row.h3_estimate = static_cast<double>(row.count) * r * r * r;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace heis
