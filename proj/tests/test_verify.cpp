#include <cmath>
#include <cstdio>
#include <vector>

#include <doctest.h>

#include "heis/cc_metric.hpp"
#include "heis/reports.hpp"
#include "heis/util.hpp"
#include "heis/verify.hpp"

using namespace heis;

namespace {

const BoundCheck& find_check(const std::vector<BoundCheck>& checks, BoundCheck::Name name) {
    for (const BoundCheck& c : checks)
        if (c.name == name) return c;
    REQUIRE(false);
    return checks.front();
}

}  // namespace

TEST_CASE("claim 2 length matches quadrature for f = x + y^2") {
    // Along theta(y) = (-y^2, y, *) the horizontal speed is sqrt(1 + 4y^2);
    // the antiderivative (y/2) sqrt(1+4y^2) + (1/4) asinh(2y) gives
    // integral over [0, 0.4] = 0.439292033509...
    Chart chart(parse("x + y^2"), {0, 0, 0}, 0.5);
    const BoundCheck c = check_claim2(chart, 0.0, 0.4, 0.0);
    CHECK(c.name == BoundCheck::Name::claim2);
    const double quadrature = 0.2 * std::sqrt(1.64) + 0.25 * std::asinh(0.8);
    CHECK(quadrature == doctest::Approx(0.439292033509).epsilon(1e-9));
    CHECK(c.lhs == doctest::Approx(quadrature).epsilon(1e-6));
    // rhs = |dy| sqrt(1 + M^2) with M = 1.05.
    CHECK(c.rhs == doctest::Approx(0.4 * std::sqrt(1 + 1.05 * 1.05)).epsilon(1e-12));
    CHECK(c.pass);
}

TEST_CASE("claim 2 holds across the domain for a generic surface") {
    Chart chart(parse("x + y*z"), {0, 0, 0}, 0.5);
    const double n = chart.constants().n;
    for (double y2 : {-n, -0.3 * n, 0.25 * n, n}) {
        for (double z : {-0.5 * n, 0.0, 0.8 * n}) {
            const BoundCheck c = check_claim2(chart, 0.0, y2, z);
            CAPTURE(y2);
            CAPTURE(z);
            CHECK(c.pass);
            CHECK(c.lhs <= c.rhs * (1 + c.margin));
        }
    }
}

TEST_CASE("claim 3 chain for f = x + y^2: z-independent slope degenerates") {
    // The x-slope -2y does not depend on z, so gamma1 = eta1 for any two
    // seeds and the lemma/gronwall left sides vanish; eta3 separation stays
    // exactly |z2 - z1|.
    Chart chart(parse("x + y^2"), {0, 0, 0}, 0.5);
    const double n = chart.constants().n;
    const std::vector<BoundCheck> checks = check_claim3_bounds(chart, 0.8 * n, -0.2 * n, 0.3 * n);
    REQUIRE(checks.size() == 4);

    const BoundCheck& lemma = find_check(checks, BoundCheck::Name::lemma);
    CHECK(lemma.pass);
    CHECK(lemma.lhs < 1e-8);

    const BoundCheck& gronwall = find_check(checks, BoundCheck::Name::gronwall);
    CHECK(gronwall.pass);
    CHECK(gronwall.lhs < 1e-8);

    const BoundCheck& eta3 = find_check(checks, BoundCheck::Name::eta3);
    CHECK(eta3.pass);
    CHECK(eta3.lhs == doctest::Approx(0.5 * n).epsilon(1e-6));
    CHECK(eta3.rhs == doctest::Approx((1 + 0.75 * std::sqrt(std::exp(1.0))) * 0.5 * n));

    const BoundCheck& claim3 = find_check(checks, BoundCheck::Name::claim3);
    CHECK(claim3.pass);
    CHECK(claim3.rhs == doctest::Approx(a2_bound(chart.constants()) * std::sqrt(0.5 * n)));
}

TEST_CASE("claim 3 chain for f = x + y*z: genuinely coupled flows") {
    Chart chart(parse("x + y*z"), {0, 0, 0}, 0.5);
    const double n = chart.constants().n;
    for (double y : {-n, 0.5 * n, n}) {
        const std::vector<BoundCheck> checks = check_claim3_bounds(chart, y, -0.4 * n, 0.4 * n);
        for (const BoundCheck& c : checks) {
            CAPTURE(y);
            CAPTURE(to_string(c.name));
            CAPTURE(c.lhs);
            CAPTURE(c.rhs);
            CHECK(c.pass);
        }
        // The coupled case has a genuinely positive lemma left side.
        CHECK(find_check(checks, BoundCheck::Name::lemma).lhs > 0.0);
    }
}

TEST_CASE("triangle decomposition dominates the full CC displacement") {
    // d_cc(Psi(p), Psi(q)) <= claim2 leg at fixed z plus claim3 leg at fixed
    // y, with the z-leg controlled through B * A2 * sqrt(|dz|).
    Chart chart(parse("x + y*z"), {0, 0, 0}, 0.5);
    const double n = chart.constants().n;
    const double b = estimate_B(Box{}, 2000, Rng::substream(7, 1));
    const double a2 = a2_bound(chart.constants());
    const double m = chart.constants().M;

    Rng rng(55);
    for (int i = 0; i < 25; ++i) {
        const NPoint p{rng.uniform(-n, n), rng.uniform(-n, n)};
        const NPoint q{rng.uniform(-n, n), rng.uniform(-n, n)};
        const double d = cc_dist(chart.psi(p), chart.psi(q), 1e-8);
        const double leg_y = std::fabs(p.y - q.y) * std::sqrt(1 + m * m);
        const double leg_z = b * a2 * std::sqrt(std::fabs(p.z - q.z));
        CHECK(d <= leg_y + leg_z + 1e-6);
    }
}

TEST_CASE("verify_lipschitz passes for the plane and for curved surfaces") {
    for (const char* src : {"x", "x + y^2", "x + y*z"}) {
        Chart chart(parse(src), {0, 0, 0}, 0.5);
        const double b = estimate_B(Box{}, 2000, Rng::substream(3, 1));
        const LipschitzConstants lips = lipschitz_constants(chart.constants(), b);
        const LipschitzReport report =
            verify_lipschitz(chart, lips, 300, Rng::substream(3, 2));
        CAPTURE(src);
        CHECK(report.pass);
        CHECK(report.failures == 0);
        CHECK(report.max_ratio_cc <= lips.A * (1 + report.margin));
        CHECK(static_cast<int>(report.pairs.size()) == 300);
        for (const PairRecord& r : report.pairs) {
            CHECK(r.status == PairStatus::ok);
            CHECK(r.d_N >= 1e-6);
        }
    }
}

TEST_CASE("verify_lipschitz with zero samples passes vacuously") {
    Chart chart(parse("x"), {0, 0, 0}, 0.5);
    const LipschitzConstants lips = lipschitz_constants(chart.constants(), 1.0);
    const LipschitzReport report = verify_lipschitz(chart, lips, 0, 1);
    CHECK(report.pass);
    CHECK(report.pairs.empty());
    CHECK(report.max_ratio_cc == 0.0);
}

TEST_CASE("verify_lipschitz is deterministic in the seed") {
    Chart chart(parse("x + y^2"), {0, 0, 0}, 0.5);
    const LipschitzConstants lips = lipschitz_constants(chart.constants(), 3.8);
    const LipschitzReport a = verify_lipschitz(chart, lips, 100, 42);
    const LipschitzReport b = verify_lipschitz(chart, lips, 100, 42);
    REQUIRE(a.pairs.size() == b.pairs.size());
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
        CHECK(a.pairs[i].p.y == b.pairs[i].p.y);
        CHECK(a.pairs[i].d_cc == b.pairs[i].d_cc);
        CHECK(a.pairs[i].ratio_cc == b.pairs[i].ratio_cc);
    }
    const LipschitzReport c = verify_lipschitz(chart, lips, 100, 43);
    CHECK(c.pairs[0].p.y != a.pairs[0].p.y);
}

TEST_CASE("box counting: points on a horizontal segment scale like a curve") {
    // N(r) ~ 1/r for a horizontal line, so count * r^3 ~ r^2 -> 0.
    std::vector<Point> pts;
    for (int i = 0; i <= 10000; ++i) pts.push_back({i / 10000.0, 0, 0});
    const std::vector<double> scales{0.1, 0.05, 0.025, 0.0125};
    const std::vector<BoxCountRow> rows = hausdorff_box_count(pts, scales);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].count == doctest::Approx(1.0 / scales[i]).epsilon(0.2));
        CHECK(rows[i].h3_estimate ==
              doctest::Approx(scales[i] * scales[i]).epsilon(0.25));
    }
    // The estimate decays by ~4x per halving.
    CHECK(rows[3].h3_estimate < 0.05 * rows[0].h3_estimate);
}

TEST_CASE("box counting: a single point has vanishing estimate") {
    const std::vector<BoxCountRow> rows =
        hausdorff_box_count({{0.3, 0.3, 0.3}}, {0.1, 0.01});
    CHECK(rows[0].count == 1);
    CHECK(rows[1].count == 1);
    CHECK(rows[1].h3_estimate < rows[0].h3_estimate);
}

TEST_CASE("box counting: a full surface patch has a stable positive estimate") {
    // Sample the plane x = 0 over [0,1]^2 in (y,z). Cells of x-width r,
    // y-width r, z-width r^2 give N ~ (1/r)(1/r^2) = r^-3, so count * r^3
    // stays near the patch area.
    std::vector<Point> pts;
    Rng rng(77);
    for (int i = 0; i < 200000; ++i)
        pts.push_back({0.0, rng.uniform(), rng.uniform()});
    const std::vector<BoxCountRow> rows = hausdorff_box_count(pts, {0.2, 0.1, 0.05});
    REQUIRE(rows.size() == 3);
    for (const BoxCountRow& row : rows) {
        CHECK(row.h3_estimate > 0.5);
        CHECK(row.h3_estimate < 2.0);
    }
}

TEST_CASE("box counting validates its scales") {
    CHECK_THROWS_AS(hausdorff_box_count({{0, 0, 0}}, {0.1, 0.2}), DomainError);
    CHECK_THROWS_AS(hausdorff_box_count({{0, 0, 0}}, {0.0}), DomainError);
}

TEST_CASE("CSV and JSON writers are stable") {
    Chart chart(parse("x + y^2"), {0, 0, 0}, 0.5);
    const LipschitzConstants lips = lipschitz_constants(chart.constants(), 3.8);
    const LipschitzReport report = verify_lipschitz(chart, lips, 20, 9);

    const std::string dir = "test_verify_out";
    write_pairs_csv(dir + "/pairs.csv", report);
    write_report_json(dir + "/report.json", "x + y^2", chart.constants(), report);
    write_pairs_csv(dir + "/pairs2.csv", report);

    auto slurp = [](const std::string& path) {
        std::FILE* fp = std::fopen(path.c_str(), "rb");
        REQUIRE(fp != nullptr);
        std::string out;
        char buf[4096];
        std::size_t got;
        while ((got = std::fread(buf, 1, sizeof buf, fp)) > 0) out.append(buf, got);
        std::fclose(fp);
        return out;
    };
    const std::string a = slurp(dir + "/pairs.csv");
    CHECK(a == slurp(dir + "/pairs2.csv"));
    CHECK(a.rfind("pair_id,y1,z1,y2,z2,d_N,d_gauge,d_cc,ratio_cc,status", 0) == 0);
    const std::string json = slurp(dir + "/report.json");
    CHECK(json.find("\"max_ratio_cc\"") != std::string::npos);
    CHECK(json.find("\"verdict\"") != std::string::npos);
}
