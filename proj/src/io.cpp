#include "fiiss/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fiiss {
namespace {

std::ofstream open_out(const std::filesystem::path& file) {
  if (file.has_parent_path()) {
    std::filesystem::create_directories(file.parent_path());
  }
  std::ofstream out(file, std::ios::binary);  // binary keeps '\n' endings everywhere
  if (!out) throw std::runtime_error("cannot open output file: " + file.string());
  return out;
}

void write_meta_comments(std::ofstream& out, const RunMeta& meta) {
  out << "# fiiss " << kVersion << "\n";
  out << "# seed=" << meta.seed << "\n";
  out << "# streams=" << meta.streams << "\n";
  for (const auto& [key, value] : meta.params) {
    out << "# " << key << "=" << value << "\n";
  }
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_grid_path_csv(const std::filesystem::path& file, const GridPath& path,
                         const std::string& index_name, const RunMeta& meta) {
  auto out = open_out(file);
  write_meta_comments(out, meta);
  out << index_name << ",value\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    out << format_g17(path.point(i)) << ',' << format_g17(path.values[i]) << "\n";
  }
}

void write_sample_csv(const std::filesystem::path& file, const EmpiricalSample& sample,
                      const RunMeta& meta) {
  auto out = open_out(file);
  write_meta_comments(out, meta);
  out << "value\n";
  for (double v : sample.values) out << format_g17(v) << "\n";
}

nlohmann::ordered_json meta_json(const RunMeta& meta) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["seed"] = meta.seed;
  j["streams"] = meta.streams;
  nlohmann::ordered_json params;
  for (const auto& [key, value] : meta.params) params[key] = value;
  j["params"] = std::move(params);
  return j;
}

nlohmann::ordered_json report_json(const VerificationReport& report, const RunMeta& meta) {
  nlohmann::ordered_json j = meta_json(meta);
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    nlohmann::ordered_json entry;
    entry["name"] = e.name;
    entry["statistic"] = e.statistic;
    entry["threshold"] = e.threshold;
    entry["relation"] = e.relation;
    entry["pass"] = e.pass;
    entry["n"] = e.n;
    entry["seed"] = e.seed;
    entry["params"] = e.params;
    entries.push_back(std::move(entry));
  }
  j["entries"] = std::move(entries);
  j["all_pass"] = report.all_pass();
  return j;
}

void write_json(const std::filesystem::path& file, const nlohmann::ordered_json& doc) {
  auto out = open_out(file);
  out << doc.dump(2) << "\n";
}

}  // namespace fiiss
