/// @file kernels.hpp
/// @brief Inner loops over Fourier modes.
///
/// Every kernel exists twice with identical signatures: `serial` is the
/// reference implementation, `omp` the OpenMP one used by the library. The
/// OpenMP reductions accumulate one partial sum per grid row and add the rows
/// in order afterwards, so results do not depend on the thread count.
#pragma once

#include <cstddef>

#include "mlsim/grid.hpp"
#include "mlsim/vec2.hpp"

namespace mlsim::kernels {

struct Modes {
  int N;
  const double* k1;
  const double* k2;
  const double* ksq;
  const unsigned char* active;

  std::size_t size() const { return static_cast<std::size_t>(N) * N; }
};

Modes modes_of(const Grid& g);

// Unweighted Fourier sums; multiply by Grid::weight() for L^2 pairings.
struct FieldMoments {
  double pi_grad_a[2];  // sum k_j Im(Pi . conj A)  -> <Pi, d_j A>
  double a_rho[2];      // sum Re(A_j conj rho)
  double a_s;           // sum Re(A . conj S)
};

// Extra pairings needed by the lab-frame Newton and torque equations.
struct LabMoments {
  double b_rho;          // <B, rho_q>
  double b_y[2];         // <B, Y_j>
  double da_rho[2][2];   // [l][j] <d_l A_j, rho_q>
  double da_s[2];        // [l] <d_l A, S_q>
};

#define MLSIM_KERNEL_DECLS                                                                 \
  double inner(std::size_t n, const cplx* a, const cplx* b);                              \
  double weighted_norm2(std::size_t n, const double* w, const cplx* a);                   \
  void axpy(std::size_t n, double alpha, const cplx* x, cplx* y);                         \
  void project(const Modes& m, cplx* a1, cplx* a2);                                       \
  FieldMoments field_moments(const Modes& m, const cplx* a1, const cplx* a2,              \
                             const cplx* pi1, const cplx* pi2, const cplx* rho,           \
                             const cplx* s1, const cplx* s2);                             \
  LabMoments lab_moments(const Modes& m, const cplx* a1, const cplx* a2, const cplx* rho, \
                         const cplx* y1, const cplx* y2, const cplx* s1, const cplx* s2); \
  void field_rhs(const Modes& m, Vec2 advect, Vec2 qdot, double phidot, const cplx* a1,   \
                 const cplx* a2, const cplx* pi1, const cplx* pi2, const cplx* rho,       \
                 const cplx* s1, const cplx* s2, cplx* da1, cplx* da2, cplx* dpi1,        \
                 cplx* dpi2);                                                             \
  void wave_propagate(const Modes& m, double tau, cplx* a, cplx* pi);                     \
  void phase_multiply(int N, const cplx* e1, const cplx* e2, const cplx* in, cplx* out);

namespace serial {
MLSIM_KERNEL_DECLS
}
namespace omp {
MLSIM_KERNEL_DECLS
}

#undef MLSIM_KERNEL_DECLS

// Caps the OpenMP team size; reads MLSIM_THREADS when n <= 0.
void configure_threads(int n = 0);
int thread_count();

}  // namespace mlsim::kernels
