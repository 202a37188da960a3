// Serial reference kernels against their OpenMP counterparts.
// Thread count follows MLSIM_THREADS (or the OpenMP default).
#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <random>

#include "mlsim/charge_density.hpp"
#include "mlsim/kernels.hpp"

using namespace mlsim;

namespace {

struct Data {
  GridPtr g;
  kernels::Modes m;
  ChargeDensity rho;
  CArray a1, a2, p1, p2, o1, o2, o3, o4;

  explicit Data(int N)
      : g(make_grid(32.0, N)),
        m(kernels::modes_of(*g)),
        rho(make_charge_density("laplacian-gaussian", 1.0, 1.0, g)) {
    std::mt19937_64 gen(1);
    std::normal_distribution<double> nd;
    for (CArray* c : {&a1, &a2, &p1, &p2}) {
      c->resize(g->size());
      for (auto& x : *c) x = {nd(gen), nd(gen)};
    }
    for (CArray* c : {&o1, &o2, &o3, &o4}) c->assign(g->size(), {});
  }
};

Data& data(int N) {
  static std::map<int, std::unique_ptr<Data>> cache;
  auto& d = cache[N];
  if (!d) d = std::make_unique<Data>(N);
  return *d;
}

template <bool Omp>
void BM_field_moments(benchmark::State& st) {
  auto& d = data(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto r = Omp ? kernels::omp::field_moments(d.m, d.a1.data(), d.a2.data(), d.p1.data(), d.p2.data(),
                                               d.rho.rho_hat.data(), d.rho.s_hat[0].data(),
                                               d.rho.s_hat[1].data())
                 : kernels::serial::field_moments(d.m, d.a1.data(), d.a2.data(), d.p1.data(),
                                                  d.p2.data(), d.rho.rho_hat.data(),
                                                  d.rho.s_hat[0].data(), d.rho.s_hat[1].data());
    benchmark::DoNotOptimize(r);
  }
}

template <bool Omp>
void BM_lab_moments(benchmark::State& st) {
  auto& d = data(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto r = Omp ? kernels::omp::lab_moments(d.m, d.a1.data(), d.a2.data(), d.rho.rho_hat.data(),
                                             d.rho.y_hat[0].data(), d.rho.y_hat[1].data(),
                                             d.rho.s_hat[0].data(), d.rho.s_hat[1].data())
                 : kernels::serial::lab_moments(d.m, d.a1.data(), d.a2.data(), d.rho.rho_hat.data(),
                                                d.rho.y_hat[0].data(), d.rho.y_hat[1].data(),
                                                d.rho.s_hat[0].data(), d.rho.s_hat[1].data());
    benchmark::DoNotOptimize(r);
  }
}

template <bool Omp>
void BM_field_rhs(benchmark::State& st) {
  auto& d = data(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    (Omp ? kernels::omp::field_rhs : kernels::serial::field_rhs)(
        d.m, {0.3, 0.0}, {0.3, 0.0}, 1.0, d.a1.data(), d.a2.data(), d.p1.data(), d.p2.data(),
        d.rho.rho_hat.data(), d.rho.s_hat[0].data(), d.rho.s_hat[1].data(), d.o1.data(),
        d.o2.data(), d.o3.data(), d.o4.data());
    benchmark::ClobberMemory();
  }
}

template <bool Omp>
void BM_wave_propagate(benchmark::State& st) {
  auto& d = data(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    (Omp ? kernels::omp::wave_propagate : kernels::serial::wave_propagate)(d.m, 1e-3, d.a1.data(),
                                                                           d.p1.data());
    benchmark::ClobberMemory();
  }
}

template <bool Omp>
void BM_project(benchmark::State& st) {
  auto& d = data(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    (Omp ? kernels::omp::project : kernels::serial::project)(d.m, d.a1.data(), d.a2.data());
    benchmark::ClobberMemory();
  }
}

}  // namespace

#define MLSIM_BENCH_PAIR(fn)                                          \
  BENCHMARK(fn<false>)->Name(#fn "/serial")->Arg(128)->Arg(256)->Arg(512); \
  BENCHMARK(fn<true>)->Name(#fn "/omp")->Arg(128)->Arg(256)->Arg(512)

MLSIM_BENCH_PAIR(BM_field_moments);
MLSIM_BENCH_PAIR(BM_lab_moments);
MLSIM_BENCH_PAIR(BM_field_rhs);
MLSIM_BENCH_PAIR(BM_wave_propagate);
MLSIM_BENCH_PAIR(BM_project);

int main(int argc, char** argv) {
  kernels::configure_threads();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
