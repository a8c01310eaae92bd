#pragma once

// Empirical verification of the Lipschitz inequality and the intermediate
// estimates (the claim2, lemma, gronwall, eta3 and claim3 checks),
// plus a box-counting Hausdorff-measure estimate for characteristic loci.

#include <cstdint>
#include <string>
#include <vector>

#include "heis/chart.hpp"
#include "heis/geometry.hpp"

namespace heis {

enum class PairStatus { ok, flow_exit, solver_fail, characteristic, projection_fail };

const char* to_string(PairStatus s);

struct PairRecord {
    int id = 0;
    NPoint p, q;
    double d_N = 0.0;
    double d_gauge = 0.0;
    double d_cc = 0.0;
    double ratio_gauge = 0.0;
    double ratio_cc = 0.0;
    PairStatus status = PairStatus::ok;
};

struct LipschitzReport {
    std::vector<PairRecord> pairs;
    LipschitzConstants constants;
    double max_ratio_cc = 0.0;
    double max_ratio_gauge = 0.0;
    int failures = 0;
    bool pass = true;
    std::uint64_t rng_seed = 0;
    double margin = 0.0;
};

/// Samples pairs uniformly in C = [-n,n]^2 (rejecting d_N < 1e-6 pairs),
/// evaluates Psi at both, and checks max d_cc/d_N against A. Per-pair
/// failures are recorded, excluded from the max, and counted; more than 1%
/// failures fails the run.
LipschitzReport verify_lipschitz(const Chart& chart, const LipschitzConstants& lips, int samples,
                                 std::uint64_t rng_seed, double margin = 1e-3);

struct BoundCheck {
    enum class Name { claim2, lemma, gronwall, eta3, claim3 };
    Name name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = false;
};

const char* to_string(BoundCheck::Name n);

/// lhs = discrete horizontal length of theta_phi(z) between y1 and y2,
/// rhs = |y1-y2| sqrt(1+M^2). Also requires d_cc of the endpoints to be
/// dominated by the length (distance <= length).
BoundCheck check_claim2(const Chart& chart, double y1, double y2, double z, double margin = 1e-3);

/// Flows gamma (seed z1) and eta (seed z2) to parameter y and emits the
/// lemma, gronwall, eta3 and claim3 checks of the z-leg estimate.
std::vector<BoundCheck> check_claim3_bounds(const Chart& chart, double y, double z1, double z2,
                                            double margin = 1e-3);

struct BoxCountRow {
    double scale = 0.0;
    long count = 0;
    double h3_estimate = 0.0;
};

/// Covers the cloud by gauge-adapted boxes (x, y cells of side r, z cells of
/// side r^2) and reports count(r) * r^3 per scale. Scales must be positive
/// and decreasing.
std::vector<BoxCountRow> hausdorff_box_count(const std::vector<Point>& points,
                                             const std::vector<double>& scales);

}  // namespace heis
