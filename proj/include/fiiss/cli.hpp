#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fiiss {

enum class Command { Simulate, Figure1, Verify, Converge, Tail, Lil, Diverge };

enum class OutputFormat { Csv, Json };

// Exit codes shared by the CLI and the in-process runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResourceCap = 3;

struct RunConfig {
  Command command = Command::Simulate;
  double alpha = 0.5;
  double beta = 0.0;
  std::uint64_t seed = 12345;
  int streams = 0;       // worker count; 0 = all available
  std::size_t n = 10000; // replicas (draws or paths, per command)

  double t_step = 1e-3;
  double u_step = 1e-2;
  double u_max = 1.0;   // simulate/figure1 horizon in u
  double u = 1.0;       // marginal location (converge)

  std::vector<double> t_ladder = {1e2, 1e3, 1e4};               // converge
  double ks_threshold = 0.1;                                    // converge, final rung

  double x_lo = 2.0, x_hi = 3.5;                                // tail window
  double tail_tolerance = 0.15;                                 // relative slope error

  double u_lo = 10.0, u_hi = 1e4;                               // lil scan range
  std::size_t u_points = 100;
  double lil_lo_factor = 0.3, lil_hi_factor = 3.0;              // envelope, pilot-calibrated

  std::vector<std::size_t> refinement_ladder = {1024, 2048, 4096, 8192, 16384};  // diverge
  double diverge_lo = 0.25, diverge_hi = 0.75;
  double ratio_tolerance = 0.1;  // diverge, stabilization band for beta > -alpha

  double eps = 1e-4;  // jump truncation for the exponential functional

  std::string output = ".";
  OutputFormat format = OutputFormat::Csv;  // sample exports; reports are JSON
  bool export_samples = false;              // converge: write the compared samples
};

// Runs one command, writing artifacts under config.output.  Returns
// kExitOk / kExitCheckFailed; throws on invalid configuration
// (std::domain_error, std::invalid_argument) or resource caps
// (resource_error); the CLI maps those to kExitUsage / kExitResourceCap.
int run_command(const RunConfig& config);

}  // namespace fiiss
