#include "mlsim/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace mlsim::app {

static_assert(std::endian::native == std::endian::little, "snapshot writer assumes little-endian");

std::string format_number(double x) {
  if (!std::isfinite(x)) throw NonFiniteError("non-finite value in output");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(std::string path, std::vector<std::string> header)
    : path_(std::move(path)), ncols_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) buffer_ += (i ? "," : "") + header[i];
  buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != ncols_) throw std::logic_error("CsvWriter: wrong column count for " + path_);
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) line += (i ? "," : "") + format_number(values[i]);
  buffer_ += line;
  buffer_ += '\n';
}

void CsvWriter::close() { write_text(path_, buffer_); }

const std::vector<std::string> kTrajectoryColumns = {
    "t",         "q1", "q2", "qdot1", "qdot2",    "phi",      "phidot",
    "H_reduced", "E_lab", "P1", "P2", "M", "divA_max", "divPi_max"};

const std::vector<std::string> kAtlasColumns = {"v1", "v2",      "omega", "P1",          "P2",
                                                "M",  "h1dot_A", "l2_Pi", "jacobian_det"};

const std::vector<std::string> kJacobianColumns = {
    "v",        "omega",     "dP1_dv1", "dP1_dv2", "dP1_domega", "dP2_dv1",
    "dP2_dv2",  "dP2_domega", "dM_dv1", "dM_dv2",  "dM_domega",  "det",
    "det_axis", "positive",  "structural_zero_max"};

std::vector<double> trajectory_row(const analysis::TrajectorySample& s) {
  return {s.t,         s.q.x,   s.q.y, s.qdot.x, s.qdot.y, s.phi,      s.phidot,
          s.H_reduced, s.E_lab, s.P.x, s.P.y,    s.M,      s.divA_max, s.divPi_max};
}

std::vector<double> jacobian_row(const analysis::JacobianTable& t) {
  std::vector<double> r = {t.v, t.omega};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.push_back(t.d(i, j));
  r.push_back(t.det);
  r.push_back(t.det_axis);
  r.push_back(t.positive ? 1.0 : 0.0);
  r.push_back(t.structural_zero_max);
  return r;
}

void write_snapshot(const std::string& path, const Grid& g, double t,
                    const std::vector<RArray>& components) {
  for (const auto& c : components) {
    if (c.size() != g.size()) throw std::invalid_argument("write_snapshot: component size");
    for (double x : c)
      if (!std::isfinite(x)) throw NonFiniteError("non-finite value in snapshot " + path);
  }
  char header[32] = {};
  std::memcpy(header, "MLS2", 4);
  const std::uint32_t N = static_cast<std::uint32_t>(g.N());
  const double L = g.L();
  const std::uint32_t nc = static_cast<std::uint32_t>(components.size());
  std::memcpy(header + 4, &N, 4);
  std::memcpy(header + 8, &L, 8);
  std::memcpy(header + 16, &t, 8);
  std::memcpy(header + 24, &nc, 4);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f.write(header, 32);
  for (const auto& c : components)
    f.write(reinterpret_cast<const char*>(c.data()), static_cast<std::streamsize>(c.size() * 8));
  if (!f) throw std::runtime_error("write failed: " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  char header[32];
  f.read(header, 32);
  if (!f || std::memcmp(header, "MLS2", 4) != 0) throw std::runtime_error("bad snapshot header: " + path);
  Snapshot s;
  std::uint32_t N, nc;
  std::memcpy(&N, header + 4, 4);
  std::memcpy(&s.L, header + 8, 8);
  std::memcpy(&s.t, header + 16, 8);
  std::memcpy(&nc, header + 24, 4);
  s.N = static_cast<int>(N);
  s.components.assign(nc, RArray(static_cast<std::size_t>(N) * N));
  for (auto& c : s.components)
    f.read(reinterpret_cast<char*>(c.data()), static_cast<std::streamsize>(c.size() * 8));
  if (!f) throw std::runtime_error("truncated snapshot: " + path);
  return s;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace mlsim::app
