#include "rip/matrix_io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace rip::io {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& field, std::size_t line) {
  const std::string text = trim(field);
  if (text.empty()) {
    throw InputError("line " + std::to_string(line) + ": empty field");
  }
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE) {
    throw InputError("line " + std::to_string(line) + ": cannot parse '" + text + "' as a number");
  }
  return value;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

}  // namespace

DenseMatrix parse_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) row.push_back(parse_number(field, line_no));
    if (!line.empty() && line.back() == ',') {
      throw InputError("line " + std::to_string(line_no) + ": trailing comma");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(rows.front().size()) + " columns, found " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("matrix file has no rows");
  try {
    return DenseMatrix::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

DenseMatrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_matrix_csv(in);
}

std::vector<double> parse_weights(std::istream& in) {
  std::vector<double> weights;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    weights.push_back(parse_number(line, line_no));
  }
  if (weights.empty()) throw InputError("weights file is empty");
  return weights;
}

std::vector<double> read_weights(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_weights(in);
}

}  // namespace rip::io
