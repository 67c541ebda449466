#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <vector>

#include "rip/linalg.hpp"

namespace rip::io {

/// Malformed or unreadable input file.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Plain CSV: one matrix row per line, comma-separated decimal floats.
/// Blank lines are skipped.
DenseMatrix parse_matrix_csv(std::istream& in);
DenseMatrix read_matrix_csv(const std::filesystem::path& path);

/// One weight per line.
std::vector<double> parse_weights(std::istream& in);
std::vector<double> read_weights(const std::filesystem::path& path);

}  // namespace rip::io
