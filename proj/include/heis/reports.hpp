#pragma once

// Deterministic CSV/JSON emission. Identical inputs produce byte-identical
// files; floats are printed with 17 significant digits.

#include <filesystem>
#include <string>

#include "heis/chart.hpp"
#include "heis/flows.hpp"
#include "heis/verify.hpp"

namespace heis {

void write_pairs_csv(const std::filesystem::path& path, const LipschitzReport& report);

void write_report_json(const std::filesystem::path& path, const std::string& surface_src,
                       const RegionConstants& consts, const LipschitzReport& report);

void write_constants_json(const std::filesystem::path& path, const std::string& surface_src,
                          const RegionConstants& consts, const LipschitzConstants& lips);

void write_charlocus_csv(const std::filesystem::path& path, const CharScanResult& scan);

void write_measure_csv(const std::filesystem::path& path, const std::vector<BoxCountRow>& rows);

}  // namespace heis
