#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <vector>

#include "compolang/kernels.hpp"
#include "compolang/rng.hpp"

using namespace compolang;

namespace {

template <typename T>
std::vector<T> random_matrix(Rng& rng, int rows, int cols) {
  std::vector<T> m(static_cast<std::size_t>(rows) * cols);
  for (auto& v : m) v = static_cast<T>(rng.uniform(-1, 1));
  return m;
}

template <typename T>
void check_close(const std::vector<T>& a, const std::vector<T>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double denom = std::max(1.0, std::abs(static_cast<double>(a[i])));
    CHECK(std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i])) / denom < tol);
  }
}

template <typename T>
void compare_all(int m, int k, int n, double tol, std::uint64_t seed) {
  Rng rng(seed);
  const auto a = random_matrix<T>(rng, m, k);
  const auto b = random_matrix<T>(rng, k, n);
  const auto base = random_matrix<T>(rng, m, n);

  auto c1 = base, c2 = base;
  kernels::gemm(a.data(), b.data(), c1.data(), m, k, n);
  kernels::serial::gemm(a.data(), b.data(), c2.data(), m, k, n);
  check_close(c1, c2, tol);

  // A^T B: a plays [m x k], output [k x n].
  const auto bt = random_matrix<T>(rng, m, n);
  auto d1 = random_matrix<T>(rng, k, n);
  auto d2 = d1;
  kernels::gemm_at_b(a.data(), bt.data(), d1.data(), m, k, n);
  kernels::serial::gemm_at_b(a.data(), bt.data(), d2.data(), m, k, n);
  check_close(d1, d2, tol);

  // A B^T: a2 [m x n], b2 [k x n], output [m x k].
  const auto a2 = random_matrix<T>(rng, m, n);
  const auto b2 = random_matrix<T>(rng, k, n);
  auto e1 = random_matrix<T>(rng, m, k);
  auto e2 = e1;
  kernels::gemm_a_bt(a2.data(), b2.data(), e1.data(), m, k, n);
  kernels::serial::gemm_a_bt(a2.data(), b2.data(), e2.data(), m, k, n);
  check_close(e1, e2, tol);
}

}  // namespace

TEST_CASE("parallel kernels agree with the serial reference") {
  // Shapes straddle the parallel grain threshold, including training shapes.
  const int shapes[][3] = {{1, 1, 1},   {3, 2, 5},    {32, 32, 1024}, {32, 256, 1024},
                           {7, 19, 33}, {256, 32, 64}, {64, 256, 256}};
  std::uint64_t seed = 100;
  for (const auto& s : shapes) {
    compare_all<double>(s[0], s[1], s[2], 1e-11, seed++);
    compare_all<float>(s[0], s[1], s[2], 2e-4, seed++);
  }
}

TEST_CASE("gemm accumulates into the output") {
  // C starts nonzero; one gemm call adds exactly A*B once.
  Rng rng(5);
  const int m = 4, k = 3, n = 6;
  const auto a = random_matrix<double>(rng, m, k);
  const auto b = random_matrix<double>(rng, k, n);
  std::vector<double> c(m * n, 1.0);
  kernels::gemm(a.data(), b.data(), c.data(), m, k, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      double want = 1.0;
      for (int r = 0; r < k; ++r) want += a[i * k + r] * b[r * n + j];
      CHECK(c[i * n + j] == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("kernel results do not depend on the number of threads") {
  // The same call with the parallel grain forced on and a single thread must
  // be bitwise identical: each output element is owned by one thread.
  const int m = 48, k = 64, n = 96;
  Rng rng(9);
  const auto a = random_matrix<double>(rng, m, k);
  const auto b = random_matrix<double>(rng, k, n);
  std::vector<double> c1(static_cast<std::size_t>(m) * n, 0.0), c2 = c1;

  kernels::gemm(a.data(), b.data(), c1.data(), m, k, n);
  int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  kernels::gemm(a.data(), b.data(), c2.data(), m, k, n);
  omp_set_num_threads(saved);
  CHECK(c1 == c2);
}
