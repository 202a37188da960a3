#include "mlsim/config.hpp"

#include <openssl/evp.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mlsim/errors.hpp"

namespace mlsim::app {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), out);
  return r.ec == std::errc() && r.ptr == t.data() + t.size();
}

template <class T>
bool parse_integer(const std::string& s, T& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), out);
  return r.ec == std::errc() && r.ptr == t.data() + t.size();
}

bool parse_list(const std::string& s, std::vector<double>& out) {
  out.clear();
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double x;
    if (!parse_double(item, x)) return false;
    out.push_back(x);
  }
  return !out.empty();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_list(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + fmt(xs[i]);
  return s;
}

using Setter = std::function<bool(ExperimentConfig&, const std::string&)>;

Setter dbl(double ExperimentConfig::*f) {
  return [f](ExperimentConfig& c, const std::string& s) { return parse_double(s, c.*f); };
}
Setter vec_comp(Vec2 ExperimentConfig::*f, int i) {
  return [f, i](ExperimentConfig& c, const std::string& s) { return parse_double(s, (c.*f)[i]); };
}
Setter integer(int ExperimentConfig::*f) {
  return [f](ExperimentConfig& c, const std::string& s) { return parse_integer(s, c.*f); };
}
Setter str(std::string ExperimentConfig::*f) {
  return [f](ExperimentConfig& c, const std::string& s) {
    c.*f = trim(s);
    return !(c.*f).empty();
  };
}
Setter list(std::vector<double> ExperimentConfig::*f) {
  return [f](ExperimentConfig& c, const std::string& s) { return parse_list(s, c.*f); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> m = {
      {"grid.L", dbl(&ExperimentConfig::L)},
      {"grid.N", integer(&ExperimentConfig::N)},
      {"rho.shape", str(&ExperimentConfig::shape)},
      {"rho.sigma", dbl(&ExperimentConfig::sigma)},
      {"rho.amplitude", dbl(&ExperimentConfig::amplitude)},
      {"particle.kind", str(&ExperimentConfig::kind)},
      {"particle.m", dbl(&ExperimentConfig::m)},
      {"particle.I", dbl(&ExperimentConfig::I)},
      {"soliton.v1", vec_comp(&ExperimentConfig::v, 0)},
      {"soliton.v2", vec_comp(&ExperimentConfig::v, 1)},
      {"soliton.omega", dbl(&ExperimentConfig::omega)},
      {"momenta.P1", vec_comp(&ExperimentConfig::P, 0)},
      {"momenta.P2", vec_comp(&ExperimentConfig::P, 1)},
      {"momenta.M", dbl(&ExperimentConfig::M)},
      {"integrator.scheme", str(&ExperimentConfig::scheme)},
      {"integrator.dt",
       [](ExperimentConfig& c, const std::string& s) {
         double x;
         if (!parse_double(s, x)) return false;
         c.dt = x;
         return true;
       }},
      {"integrator.T", dbl(&ExperimentConfig::T)},
      {"integrator.stride", integer(&ExperimentConfig::stride)},
      {"experiment.tag", str(&ExperimentConfig::tag)},
      {"experiment.seed",
       [](ExperimentConfig& c, const std::string& s) { return parse_integer(s, c.seed); }},
      {"perturbation.delta", dbl(&ExperimentConfig::delta)},
      {"perturbation.samples", integer(&ExperimentConfig::samples)},
      {"perturbation.amp_min", dbl(&ExperimentConfig::amp_min)},
      {"perturbation.amp_max", dbl(&ExperimentConfig::amp_max)},
      {"perturbation.sigma_p", dbl(&ExperimentConfig::sigma_p)},
      {"perturbation.directions", integer(&ExperimentConfig::directions)},
      {"sweep.v", list(&ExperimentConfig::sweep_v)},
      {"sweep.omega", list(&ExperimentConfig::sweep_omega)},
      {"sweep.fd_h", dbl(&ExperimentConfig::fd_h)},
  };
  return m;
}

}  // namespace

std::string ExperimentConfig::canonical() const {
  std::map<std::string, std::string> kv = {
      {"grid.L", fmt(L)},
      {"grid.N", std::to_string(N)},
      {"rho.shape", shape},
      {"rho.sigma", fmt(sigma)},
      {"rho.amplitude", fmt(amplitude)},
      {"particle.kind", kind},
      {"particle.m", fmt(m)},
      {"particle.I", fmt(I)},
      {"soliton.v1", fmt(v.x)},
      {"soliton.v2", fmt(v.y)},
      {"soliton.omega", fmt(omega)},
      {"integrator.scheme", scheme},
      {"integrator.dt", fmt(effective_dt())},
      {"integrator.T", fmt(T)},
      {"integrator.stride", std::to_string(stride)},
      {"experiment.tag", tag},
      {"experiment.seed", std::to_string(seed)},
      {"perturbation.delta", fmt(delta)},
      {"perturbation.samples", std::to_string(samples)},
      {"perturbation.amp_min", fmt(amp_min)},
      {"perturbation.amp_max", fmt(amp_max)},
      {"perturbation.sigma_p", fmt(sigma_p)},
      {"perturbation.directions", std::to_string(directions)},
      {"sweep.v", fmt_list(sweep_v)},
      {"sweep.omega", fmt_list(sweep_omega)},
      {"sweep.fd_h", fmt(fd_h)},
  };
  if (has_momenta) {
    kv["momenta.P1"] = fmt(P.x);
    kv["momenta.P2"] = fmt(P.y);
    kv["momenta.M"] = fmt(M);
  }
  std::string out;
  for (const auto& [k, val] : kv) out += k + " = " + val + "\n";
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.message() + " at line " +
                      std::to_string(e.line()));
  }
  ExperimentConfig c;
  std::vector<std::string> errors;
  bool momenta_seen = false;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      if (!body.data().empty()) errors.push_back(section + ": key outside of a section");
      continue;
    }
    for (const auto& [key, node] : body) {
      const std::string path = section + "." + key;
      const auto it = setters().find(path);
      if (it == setters().end()) {
        errors.push_back(path + ": unknown key");
        continue;
      }
      if (!it->second(c, node.data())) errors.push_back(path + ": cannot parse '" + node.data() + "'");
      if (section == "momenta") momenta_seen = true;
    }
  }
  c.has_momenta = momenta_seen;
  if (momenta_seen && tree.get_child_optional("soliton"))
    errors.push_back("momenta: give either [soliton] or [momenta], not both");
  if (!errors.empty()) {
    std::string msg;
    for (const auto& e : errors) msg += e + "\n";
    throw ConfigError(msg);
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::vector<std::string> validate(const ExperimentConfig& c) {
  std::vector<std::string> e;
  auto finite = [&](double x, const char* path) {
    if (!std::isfinite(x)) e.push_back(std::string(path) + ": must be finite");
    return std::isfinite(x);
  };
  if (finite(c.L, "grid.L") && !(c.L > 0.0)) e.push_back("grid.L: must be positive");
  if (c.N < 16 || (c.N & (c.N - 1)) != 0) e.push_back("grid.N: must be a power of two >= 16");
  const double dx = c.L / std::max(c.N, 1);
  if (c.shape != "laplacian-gaussian" && c.shape != "polynomial-bump")
    e.push_back("rho.shape: expected 'laplacian-gaussian' or 'polynomial-bump'");
  if (finite(c.sigma, "rho.sigma")) {
    if (c.sigma < 4.0 * dx) e.push_back("rho.sigma: unresolved, must be >= 4*dx = " + fmt(4.0 * dx));
    if (c.sigma > c.L / 8.0) e.push_back("rho.sigma: must be <= L/8 = " + fmt(c.L / 8.0));
  }
  finite(c.amplitude, "rho.amplitude");
  if (c.kind != "nonrelativistic" && c.kind != "relativistic")
    e.push_back("particle.kind: expected 'nonrelativistic' or 'relativistic'");
  if (finite(c.m, "particle.m") && !(c.m > 0.0)) e.push_back("particle.m: must be positive");
  if (finite(c.I, "particle.I") && !(c.I > 0.0)) e.push_back("particle.I: must be positive");
  if (finite(c.v.x, "soliton.v1") && finite(c.v.y, "soliton.v2") && !(norm(c.v) < 1.0))
    e.push_back("soliton.v: v outside Sigma, need |v| < 1");
  finite(c.omega, "soliton.omega");
  if (c.has_momenta) {
    finite(c.P.x, "momenta.P1");
    finite(c.P.y, "momenta.P2");
    finite(c.M, "momenta.M");
  }
  if (c.scheme != "rk4" && c.scheme != "split")
    e.push_back("integrator.scheme: expected 'rk4' or 'split'");
  const double dt = c.effective_dt();
  if (finite(dt, "integrator.dt")) {
    if (!(dt > 0.0)) e.push_back("integrator.dt: must be positive");
    if (dt > 0.5 * dx * (1.0 + 1e-12))
      e.push_back("integrator.dt: exceeds CFL bound 0.5*dx = " + fmt(0.5 * dx));
  }
  if (finite(c.T, "integrator.T")) {
    if (!(c.T >= 0.0)) e.push_back("integrator.T: must be >= 0");
    if (c.T > 0.5 * c.L * (1.0 + 1e-12))
      e.push_back("integrator.T: must be <= L/2 = " + fmt(0.5 * c.L) + " (one light crossing)");
  }
  if (c.stride < 1) e.push_back("integrator.stride: must be >= 1");
  if (finite(c.delta, "perturbation.delta") && !(c.delta >= 0.0))
    e.push_back("perturbation.delta: must be >= 0");
  if (c.samples < 1) e.push_back("perturbation.samples: must be >= 1");
  if (finite(c.amp_min, "perturbation.amp_min") && finite(c.amp_max, "perturbation.amp_max") &&
      !(c.amp_min > 0.0 && c.amp_min <= c.amp_max))
    e.push_back("perturbation.amp_min: need 0 < amp_min <= amp_max");
  if (finite(c.sigma_p, "perturbation.sigma_p") && !(c.sigma_p > 0.0))
    e.push_back("perturbation.sigma_p: must be positive");
  if (c.directions < 1) e.push_back("perturbation.directions: must be >= 1");
  for (double x : c.sweep_v)
    if (!(x >= 0.0 && x < 1.0)) {
      e.push_back("sweep.v: entries must lie in [0, 1)");
      break;
    }
  for (double x : c.sweep_omega)
    if (!std::isfinite(x)) {
      e.push_back("sweep.omega: entries must be finite");
      break;
    }
  if (finite(c.fd_h, "sweep.fd_h") && !(c.fd_h > 0.0)) e.push_back("sweep.fd_h: must be positive");
  return e;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

}  // namespace mlsim::app
