// Compares the serial reference kernels against the OpenMP versions at the
// matrix shapes the LSTM actually trains with, then times a full
// forward+backward pass. Run with OMP_NUM_THREADS to vary the thread count.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "compolang/kernels.hpp"
#include "compolang/net.hpp"
#include "compolang/rng.hpp"

using namespace compolang;

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return best;
}

template <typename T>
void bench_gemm(const char* label, int m, int k, int n, int inner_iters) {
  Rng rng(42);
  std::vector<T> a(static_cast<std::size_t>(m) * k), b(static_cast<std::size_t>(k) * n),
      c(static_cast<std::size_t>(m) * n, T(0));
  for (auto& v : a) v = static_cast<T>(rng.uniform(-1, 1));
  for (auto& v : b) v = static_cast<T>(rng.uniform(-1, 1));

  const double flops = 2.0 * m * k * n * inner_iters;
  const double t_serial = time_best_of(3, [&] {
    for (int it = 0; it < inner_iters; ++it) kernels::serial::gemm(a.data(), b.data(), c.data(), m, k, n);
  });
  const double t_omp = time_best_of(3, [&] {
    for (int it = 0; it < inner_iters; ++it) kernels::gemm(a.data(), b.data(), c.data(), m, k, n);
  });
  std::printf("%-28s %4dx%4dx%4d  serial %7.2f GF/s   omp %7.2f GF/s   speedup %.2fx\n", label, m, k,
              n, flops / t_serial / 1e9, flops / t_omp / 1e9, t_serial / t_omp);
}

template <typename T>
void bench_bptt(const char* label, int batch, int len, int iters) {
  Rng rng(7);
  auto params = init_params<T>(Architecture::Lstm, 11, 32, 256, 4, rng);
  auto grads = zeros_like(params);
  Batch b;
  b.size = batch;
  b.len = len;
  b.ids.resize(static_cast<std::size_t>(batch) * len);
  for (auto& id : b.ids) id = rng.uniform_int(11);
  b.labels.resize(batch);
  for (auto& label_ : b.labels) label_ = rng.uniform_int(4);

  const double t = time_best_of(3, [&] {
    for (int it = 0; it < iters; ++it) loss_and_grad(params, b, grads);
  });
  // fwd ~2*(D+H)*4H per token, bwd ~2x fwd.
  const double flops_per_token = 6.0 * (params.embed + params.hidden) * 4.0 * params.hidden;
  const double flops = flops_per_token * batch * len * iters;
  std::printf("%-28s batch=%2d len=%2d  %7.2f GF/s  (%6.2f ms/batch)\n", label, batch, len,
              flops / t / 1e9, t / iters * 1e3);
}

}  // namespace

int main() {
  std::printf("threads: %d\n\n", omp_get_max_threads());

  std::printf("-- gemm (x @ w_x then h @ w_h shapes, float) --\n");
  bench_gemm<float>("gemm f32", 32, 32, 1024, 400);
  bench_gemm<float>("gemm f32", 32, 256, 1024, 100);
  bench_gemm<float>("gemm f32 (weight grad)", 256, 32, 1024, 100);
  std::printf("\n-- gemm (double) --\n");
  bench_gemm<double>("gemm f64", 32, 256, 1024, 50);

  std::printf("\n-- full LSTM loss+BPTT (H=256, d=32) --\n");
  bench_bptt<float>("bptt f32", 32, 13, 20);
  bench_bptt<float>("bptt f32", 32, 19, 20);
  bench_bptt<double>("bptt f64", 32, 13, 10);
  return 0;
}
