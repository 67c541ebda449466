#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "rip/oracle.hpp"
#include "rip/polynomial.hpp"

namespace rip::cli {

enum class Mode { rank, stable, normalized, verify, bench };

/// Exit codes of rip-select.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNotCertified = 2;

struct RunConfig {
  std::optional<std::filesystem::path> matrix_path;
  std::optional<std::filesystem::path> weights_path;
  Mode mode = Mode::rank;
  std::optional<std::size_t> k;
  std::optional<std::size_t> r;
  std::optional<double> epsilon;
  std::uint64_t seed = 1;
  /// bench mode: "flat", "decay", "spiked" or "all".
  std::string spectrum = "all";
  std::size_t bench_rows = 6;
  std::size_t bench_cols = 8;
  double imag_tol = kDefaultImagTol;
  double rank_tol = kDefaultRankTol;
  /// Caps every exhaustive enumeration in verify mode when set.
  std::optional<std::uint64_t> budget;
};

/// Runs one configuration, writing the JSON report to out and diagnostics to
/// err. Returns kExitOk, kExitInputError or kExitNotCertified.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses command-line flags and dispatches to run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rip::cli
