/// @file grid.hpp
/// @brief Periodic N x N grid, wavenumber tables and the 2D FFT.
///
/// Arrays are row-major with flat index i*N + j, i along x1 and j along x2,
/// stored in FFT order (origin at index 0). Fourier coefficients use the
/// continuous-transform normalisation f^(k) = dx^2 * sum f(x) e^{-ik.x}, so that
/// f(x) = L^{-2} sum_k f^(k) e^{ik.x} and <f, g> = L^{-2} sum_k Re f^ conj(g^).
#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace mlsim {

using cplx = std::complex<double>;
using CArray = std::vector<cplx>;
using RArray = std::vector<double>;

class Grid {
 public:
  Grid(double L, int N);
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  double L() const { return L_; }
  int N() const { return N_; }
  double dx() const { return L_ / N_; }
  double dk() const;
  std::size_t size() const { return static_cast<std::size_t>(N_) * N_; }
  // Weight turning a Fourier sum into an L^2 inner product.
  double weight() const { return 1.0 / (L_ * L_); }

  // Per-axis tables of length N.
  const RArray& x_axis() const { return x_; }
  const RArray& k_axis() const { return k_; }    // includes -N/2 mode
  const RArray& kd_axis() const { return kd_; }  // Nyquist entry zeroed

  // Per-mode tables of length N*N. k1, k2, ksq are derivative wavenumbers
  // (Nyquist zeroed); kabs is the true |k|.
  const RArray& k1() const { return k1_; }
  const RArray& k2() const { return k2_; }
  const RArray& ksq() const { return ksq_; }
  const RArray& kabs() const { return kabs_; }
  // 0 for k = 0 and for the two Nyquist lines, 1 elsewhere.
  const std::vector<unsigned char>& active() const { return active_; }

  CArray forward(const RArray& f) const;
  RArray inverse(const CArray& fh) const;

 private:
  struct Plans;
  double L_;
  int N_;
  RArray x_, k_, kd_;
  RArray k1_, k2_, ksq_, kabs_;
  std::vector<unsigned char> active_;
  std::unique_ptr<Plans> plans_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(double L, int N);

}  // namespace mlsim
