// heisrect: build and verify Lipschitz parameterizations of level-set
// surfaces in the Heisenberg group from the vertical subgroup N.
//
// Subcommands: constants, param, verify, char-locus, cc-dist.
// Exit codes: 0 success/pass, 1 verification or domain failure,
// 2 configuration/parse error.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "heis/cc_metric.hpp"
#include "heis/chart.hpp"
#include "heis/expr.hpp"
#include "heis/reports.hpp"
#include "heis/util.hpp"
#include "heis/verify.hpp"

namespace {

struct RunConfig {
    std::string surface;
    heis::Point base_point{0.0, 0.0, 0.0};
    double a = 0.5;
    int grid_n = 64;
    double step = 1e-3;
    double level_tol = 1e-9;
    double bisection_tol = 1e-12;
    int samples = 10000;
    std::uint64_t rng_seed = 1;
    double margin = 1e-3;
    std::string output_dir = ".";
    double char_scan_tol = 1e-6;
};

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw heis::Error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    if (j.contains("surface")) cfg.surface = j["surface"].get<std::string>();
    if (j.contains("base_point")) {
        auto v = j["base_point"];
        cfg.base_point = {v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()};
    }
    if (j.contains("a")) cfg.a = j["a"].get<double>();
    if (j.contains("grid_n")) cfg.grid_n = j["grid_n"].get<int>();
    if (j.contains("step")) cfg.step = j["step"].get<double>();
    if (j.contains("level_tol")) cfg.level_tol = j["level_tol"].get<double>();
    if (j.contains("bisection_tol")) cfg.bisection_tol = j["bisection_tol"].get<double>();
    if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
    if (j.contains("rng_seed")) cfg.rng_seed = j["rng_seed"].get<std::uint64_t>();
    if (j.contains("margin")) cfg.margin = j["margin"].get<double>();
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("char_scan_tol")) cfg.char_scan_tol = j["char_scan_tol"].get<double>();
}

void validate(const RunConfig& cfg, bool needs_surface) {
    if (needs_surface && cfg.surface.empty())
        throw heis::Error("config error: missing surface field");
    if (cfg.step <= 0 || cfg.level_tol <= 0 || cfg.bisection_tol <= 0 || cfg.margin < 0)
        throw heis::Error("config error: tolerances must be positive");
    if (cfg.samples < 0) throw heis::Error("config error: samples must be >= 0");
    if (needs_surface) heis::parse(cfg.surface);  // surface must parse
}

heis::ChartParams chart_params(const RunConfig& cfg) {
    heis::ChartParams p;
    p.step = cfg.step;
    p.level_tol = cfg.level_tol;
    p.bisection_tol = cfg.bisection_tol;
    p.grid_n = cfg.grid_n;
    return p;
}

heis::Chart build_chart(const RunConfig& cfg) {
    return heis::Chart(heis::parse(cfg.surface), cfg.base_point, cfg.a, chart_params(cfg));
}

heis::LipschitzConstants full_constants(const RunConfig& cfg, const heis::Chart& chart) {
    const heis::Box box;  // [-1,1]^2 x [-1,1]
    // B needs its own sample floor; samples = 0 still means a vacuous verify.
    const double B = heis::estimate_B(box, std::max(cfg.samples, 2),
                                      heis::Rng::substream(cfg.rng_seed, 1));
    return heis::lipschitz_constants(chart.constants(), B);
}

int cmd_constants(const RunConfig& cfg) {
    const heis::Chart chart = build_chart(cfg);
    const heis::RegionConstants& c = chart.constants();
    const heis::LipschitzConstants lips = full_constants(cfg, chart);
    std::printf("a  = %.17g\nK  = %.17g\nL  = %.17g\nM  = %.17g\nn  = %.17g\n", c.a, c.K, c.L,
                c.M, c.n);
    std::printf("B  = %.17g\nA2 = %.17g\nA1 = %.17g\nA  = %.17g\n", lips.B, lips.A2, lips.A1,
                lips.A);
    heis::write_constants_json(std::filesystem::path(cfg.output_dir) / "constants.json",
                               cfg.surface, c, lips);
    return 0;
}

int cmd_param(const RunConfig& cfg, double y, double z) {
    const heis::Chart chart = build_chart(cfg);
    const heis::Point p = chart.psi({y, z});
    const double residual = std::fabs(chart.surface().value(p));
    std::printf("psi(%.17g, %.17g) = (%.17g, %.17g, %.17g)\n|f(psi)| = %.17g\n", y, z, p.x, p.y,
                p.z, residual);
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const heis::Chart chart = build_chart(cfg);
    const heis::LipschitzConstants lips = full_constants(cfg, chart);
    const heis::LipschitzReport report = heis::verify_lipschitz(
        chart, lips, cfg.samples, heis::Rng::substream(cfg.rng_seed, 2), cfg.margin);

    const std::filesystem::path out_dir(cfg.output_dir);
    heis::write_report_json(out_dir / "report.json", cfg.surface, chart.constants(), report);
    heis::write_pairs_csv(out_dir / "pairs.csv", report);

    std::printf("pairs = %zu, failures = %d, max d_cc/d_N = %.17g, A = %.17g\nverdict: %s\n",
                report.pairs.size(), report.failures, report.max_ratio_cc, lips.A,
                report.pass ? "pass" : "fail");
    return report.pass ? 0 : 1;
}

int cmd_charlocus(const RunConfig& cfg) {
    const heis::Surface surface(heis::parse(cfg.surface));
    const heis::Box box;  // scan patch [-1,1]^3
    const heis::CharScanResult scan =
        heis::char_locus_scan(surface, box, cfg.grid_n, cfg.char_scan_tol);
    const std::vector<double> scales{0.2, 0.1, 0.05, 0.025};
    const auto rows = heis::hausdorff_box_count(scan.hits, scales);

    const std::filesystem::path out_dir(cfg.output_dir);
    heis::write_charlocus_csv(out_dir / "charlocus.csv", scan);
    heis::write_measure_csv(out_dir / "measure.csv", rows);

    std::printf("hits = %zu (grid spacing %.6g, tolerance %.6g)\n", scan.hits.size(),
                scan.grid_spacing, scan.tolerance);
    for (const auto& r : rows)
        std::printf("scale %.6g: count %ld, H3 estimate %.6g\n", r.scale, r.count, r.h3_estimate);
    return 0;
}

int cmd_ccdist(const heis::Point& p, const heis::Point& q) {
    const double cc = heis::cc_dist(p, q, 1e-10);
    const double gauge = heis::gauge_dist(p, q);
    const double ratio = cc == 0.0 && gauge == 0.0 ? 1.0 : gauge / cc;  // p = q by convention
    std::printf("cc    = %.17g\ngauge = %.17g\ngauge/cc = %.17g\n", cc, gauge, ratio);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lipschitz parameterization of level sets in the Heisenberg group"};
    app.require_subcommand(1);

    std::string config_path;
    RunConfig cfg;
    bool seed_set = false, samples_set = false, out_set = false;
    std::uint64_t seed_flag = 0;
    int samples_flag = 0;
    std::string out_flag;

    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--seed", seed_flag, "RNG seed override")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_option("--samples", samples_flag, "sample count override")
        ->each([&](const std::string&) { samples_set = true; });
    app.add_option("--out", out_flag, "output directory override")
        ->each([&](const std::string&) { out_set = true; });

    auto* c_constants = app.add_subcommand("constants", "region and Lipschitz constants");
    auto* c_param = app.add_subcommand("param", "evaluate the parameterization at (y, z)");
    double arg_y = 0.0, arg_z = 0.0;
    c_param->add_option("y", arg_y, "y coordinate in N")->required();
    c_param->add_option("z", arg_z, "z coordinate in N")->required();
    auto* c_verify = app.add_subcommand("verify", "sampled Lipschitz verification");
    auto* c_charloc = app.add_subcommand("char-locus", "characteristic locus scan + box count");
    auto* c_ccdist = app.add_subcommand("cc-dist", "CC and gauge distance between two points");
    std::vector<double> coords;
    c_ccdist->add_option("coords", coords, "px py pz qx qy qz")->expected(6);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) load_config_file(config_path, cfg);
        if (seed_set) cfg.rng_seed = seed_flag;
        if (samples_set) cfg.samples = samples_flag;
        if (out_set) cfg.output_dir = out_flag;

        if (c_ccdist->parsed())
            return cmd_ccdist({coords[0], coords[1], coords[2]}, {coords[3], coords[4], coords[5]});

        validate(cfg, true);
        if (c_constants->parsed()) return cmd_constants(cfg);
        if (c_param->parsed()) return cmd_param(cfg, arg_y, arg_z);
        if (c_verify->parsed()) return cmd_verify(cfg);
        if (c_charloc->parsed()) return cmd_charlocus(cfg);
        return 2;
    } catch (const heis::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const heis::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const heis::NumericError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const heis::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
}
