#include "mlsim/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "mlsim/errors.hpp"

namespace mlsim {

namespace {
// FFTW planning is not thread safe; execution with new-array interfaces is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Grid::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~Plans() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

Grid::Grid(double L, int N) : L_(L), N_(N) {
  if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("grid.L must be positive");
  if (N < 16 || (N & (N - 1)) != 0) throw ConfigError("grid.N must be a power of two >= 16");

  const double dk = 2.0 * std::numbers::pi / L;
  const double dx = L / N;
  x_.resize(N);
  k_.resize(N);
  kd_.resize(N);
  for (int n = 0; n < N; ++n) {
    const int s = n < N / 2 ? n : n - N;
    x_[n] = s * dx;
    k_[n] = s * dk;
    kd_[n] = n == N / 2 ? 0.0 : k_[n];
  }

  const std::size_t sz = size();
  k1_.resize(sz);
  k2_.resize(sz);
  ksq_.resize(sz);
  kabs_.resize(sz);
  active_.resize(sz);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const std::size_t id = static_cast<std::size_t>(i) * N + j;
      k1_[id] = kd_[i];
      k2_[id] = kd_[j];
      ksq_[id] = kd_[i] * kd_[i] + kd_[j] * kd_[j];
      kabs_[id] = std::hypot(k_[i], k_[j]);
      active_[id] = (i == N / 2 || j == N / 2 || (i == 0 && j == 0)) ? 0 : 1;
    }
  }

  plans_ = std::make_unique<Plans>();
  std::vector<fftw_complex> in(sz), out(sz);
  std::lock_guard<std::mutex> lock(plan_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->fwd = fftw_plan_dft_2d(N, N, in.data(), out.data(), FFTW_FORWARD, flags);
  plans_->bwd = fftw_plan_dft_2d(N, N, in.data(), out.data(), FFTW_BACKWARD, flags);
  if (!plans_->fwd || !plans_->bwd) throw std::runtime_error("FFTW planning failed");
}

Grid::~Grid() = default;

double Grid::dk() const { return 2.0 * std::numbers::pi / L_; }

CArray Grid::forward(const RArray& f) const {
  const std::size_t sz = size();
  if (f.size() != sz) throw std::invalid_argument("Grid::forward: size mismatch");
  CArray in(sz), out(sz);
  for (std::size_t i = 0; i < sz; ++i) in[i] = f[i];
  fftw_execute_dft(plans_->fwd, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double s = dx() * dx();
  for (auto& c : out) c *= s;
  return out;
}

RArray Grid::inverse(const CArray& fh) const {
  const std::size_t sz = size();
  if (fh.size() != sz) throw std::invalid_argument("Grid::inverse: size mismatch");
  CArray in(fh), out(sz);
  fftw_execute_dft(plans_->bwd, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  RArray f(sz);
  const double s = weight();
  for (std::size_t i = 0; i < sz; ++i) f[i] = out[i].real() * s;
  return f;
}

GridPtr make_grid(double L, int N) { return std::make_shared<const Grid>(L, N); }

}  // namespace mlsim
