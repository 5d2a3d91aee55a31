#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fiiss/empirical.hpp"
#include "fiiss/grid_path.hpp"
#include "fiiss/stats.hpp"

#include "json.hpp"

namespace fiiss {

inline constexpr const char* kVersion = "0.1.0";

// Shortest decimal that round-trips a double (17 significant digits).
std::string format_g17(double v);

// Provenance embedded in every artifact so any number in any output is
// reproducible from its own metadata.
struct RunMeta {
  std::uint64_t seed = 0;
  int streams = 0;
  std::vector<std::pair<std::string, std::string>> params;  // ordered
};

// CSV with '#'-prefixed metadata lines, a header row, and one row per grid
// node: `<index_name>,value`.
void write_grid_path_csv(const std::filesystem::path& file, const GridPath& path,
                         const std::string& index_name, const RunMeta& meta);

// Single-column CSV of sample draws.
void write_sample_csv(const std::filesystem::path& file, const EmpiricalSample& sample,
                      const RunMeta& meta);

nlohmann::ordered_json meta_json(const RunMeta& meta);

nlohmann::ordered_json report_json(const VerificationReport& report, const RunMeta& meta);

void write_json(const std::filesystem::path& file, const nlohmann::ordered_json& doc);

}  // namespace fiiss
