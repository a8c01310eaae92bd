#include "heis/reports.hpp"

#include <fstream>

#include <json.hpp>

#include "heis/util.hpp"

namespace heis {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path.string());
    return out;
}

nlohmann::ordered_json constants_node(const RegionConstants& c) {
    return {{"a", c.a},     {"K", c.K},           {"L", c.L},
            {"M", c.M},     {"n", c.n},           {"grid_n", c.grid_n},
            {"margin", c.margin}};
}

nlohmann::ordered_json lipschitz_node(const LipschitzConstants& l) {
    return {{"B", l.B}, {"A2", l.A2}, {"A1", l.A1}, {"A", l.A}};
}

}  // namespace

void write_pairs_csv(const std::filesystem::path& path, const LipschitzReport& report) {
    std::ofstream out = open_out(path);
    out << "pair_id,y1,z1,y2,z2,d_N,d_gauge,d_cc,ratio_cc,status\n";
    for (const PairRecord& r : report.pairs) {
        out << r.id << ',' << fmt_double(r.p.y) << ',' << fmt_double(r.p.z) << ','
            << fmt_double(r.q.y) << ',' << fmt_double(r.q.z) << ',' << fmt_double(r.d_N) << ','
            << fmt_double(r.d_gauge) << ',' << fmt_double(r.d_cc) << ','
            << fmt_double(r.ratio_cc) << ',' << to_string(r.status) << '\n';
    }
}

void write_report_json(const std::filesystem::path& path, const std::string& surface_src,
                       const RegionConstants& consts, const LipschitzReport& report) {
    nlohmann::ordered_json j;
    j["surface"] = surface_src;
    j["region_constants"] = constants_node(consts);
    j["lipschitz_constants"] = lipschitz_node(report.constants);
    j["samples"] = report.pairs.size();
    j["rng_seed"] = report.rng_seed;
    j["margin"] = report.margin;
    j["max_ratio_cc"] = report.max_ratio_cc;
    j["max_ratio_gauge"] = report.max_ratio_gauge;
    j["failures"] = report.failures;
    j["verdict"] = report.pass ? "pass" : "fail";
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_constants_json(const std::filesystem::path& path, const std::string& surface_src,
                          const RegionConstants& consts, const LipschitzConstants& lips) {
    nlohmann::ordered_json j;
    j["surface"] = surface_src;
    j["region_constants"] = constants_node(consts);
    j["lipschitz_constants"] = lipschitz_node(lips);
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_charlocus_csv(const std::filesystem::path& path, const CharScanResult& scan) {
    std::ofstream out = open_out(path);
    out << "x,y,z\n";
    for (const Point& p : scan.hits)
        out << fmt_double(p.x) << ',' << fmt_double(p.y) << ',' << fmt_double(p.z) << '\n';
}

void write_measure_csv(const std::filesystem::path& path, const std::vector<BoxCountRow>& rows) {
    std::ofstream out = open_out(path);
    out << "scale,count,H3_estimate\n";
    for (const BoxCountRow& r : rows)
        out << fmt_double(r.scale) << ',' << r.count << ',' << fmt_double(r.h3_estimate) << '\n';
}

}  // namespace heis
