/// @file io.hpp
/// @brief CSV, JSON and binary snapshot output.
///
/// Numbers are written with "%.17g" and must be finite; a non-finite value
/// raises NonFiniteError instead of reaching a file.
///
/// Snapshot layout (little-endian): 32-byte header
///   [0,4) "MLS2"  [4,8) uint32 N  [8,16) f64 L  [16,24) f64 t
///   [24,28) uint32 component count  [28,32) reserved, zero
/// followed by each component as N*N f64 values in row-major order (x1 slow).
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlsim/conservation.hpp"
#include "mlsim/field.hpp"
#include "mlsim/jacobian.hpp"

namespace mlsim::app {

class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_number(double x);

class CsvWriter {
 public:
  CsvWriter(std::string path, std::vector<std::string> header);
  void row(const std::vector<double>& values);
  // Writes the file; rows are buffered so a failed run leaves no partial CSV.
  void close();
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::size_t ncols_;
  std::string buffer_;
};

extern const std::vector<std::string> kTrajectoryColumns;
extern const std::vector<std::string> kAtlasColumns;
extern const std::vector<std::string> kJacobianColumns;

std::vector<double> trajectory_row(const analysis::TrajectorySample& s);
std::vector<double> jacobian_row(const analysis::JacobianTable& t);

struct Snapshot {
  int N = 0;
  double L = 0.0;
  double t = 0.0;
  std::vector<RArray> components;
};

void write_snapshot(const std::string& path, const Grid& g, double t,
                    const std::vector<RArray>& components);
Snapshot read_snapshot(const std::string& path);

void write_text(const std::string& path, const std::string& text);

}  // namespace mlsim::app
