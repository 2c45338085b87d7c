#pragma once

// Dense row-major kernels used by the recurrent cells and BPTT.
//
// The OpenMP versions split work across *output rows only*: every output
// element is accumulated by a single thread in a fixed loop order, so results
// are bitwise identical for any thread count (including 1). The `serial`
// namespace holds naive reference implementations used by tests and the
// benchmark; they accumulate in the same mathematical order but without
// pragmas, so they agree with the parallel kernels up to vectorization
// rounding.

namespace compolang::kernels {

// Work threshold below which the parallel kernels stay single-threaded.
inline constexpr long kParallelGrain = 1 << 15;

template <typename T>
inline T dot(const T* __restrict a, const T* __restrict b, int n) {
  T s = 0;
#pragma omp simd reduction(+ : s)
  for (int j = 0; j < n; ++j) s += a[j] * b[j];
  return s;
}

template <typename T>
inline void axpy(T alpha, const T* __restrict x, T* __restrict y, int n) {
#pragma omp simd
  for (int j = 0; j < n; ++j) y[j] += alpha * x[j];
}

// C[m x n] += A[m x k] * B[k x n]
template <typename T>
void gemm(const T* __restrict a, const T* __restrict b, T* __restrict c, int m, int k, int n) {
  const long work = static_cast<long>(m) * k * n;
#pragma omp parallel for schedule(static) if (work > kParallelGrain)
  for (int i = 0; i < m; ++i) {
    const T* ai = a + static_cast<long>(i) * k;
    T* ci = c + static_cast<long>(i) * n;
    for (int r = 0; r < k; ++r) axpy(ai[r], b + static_cast<long>(r) * n, ci, n);
  }
}

// C[k x n] += A^T * B with A [m x k], B [m x n]
template <typename T>
void gemm_at_b(const T* __restrict a, const T* __restrict b, T* __restrict c, int m, int k, int n) {
  const long work = static_cast<long>(m) * k * n;
#pragma omp parallel for schedule(static) if (work > kParallelGrain)
  for (int r = 0; r < k; ++r) {
    T* cr = c + static_cast<long>(r) * n;
    for (int i = 0; i < m; ++i) axpy(a[static_cast<long>(i) * k + r], b + static_cast<long>(i) * n, cr, n);
  }
}

// C[m x k] += A * B^T with A [m x n], B [k x n]
template <typename T>
void gemm_a_bt(const T* __restrict a, const T* __restrict b, T* __restrict c, int m, int k, int n) {
  const long work = static_cast<long>(m) * k * n;
#pragma omp parallel for schedule(static) if (work > kParallelGrain)
  for (int i = 0; i < m; ++i) {
    const T* ai = a + static_cast<long>(i) * n;
    T* ci = c + static_cast<long>(i) * k;
    for (int r = 0; r < k; ++r) ci[r] += dot(ai, b + static_cast<long>(r) * n, n);
  }
}

namespace serial {

template <typename T>
void gemm(const T* a, const T* b, T* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      T s = c[static_cast<long>(i) * n + j];
      for (int r = 0; r < k; ++r) s += a[static_cast<long>(i) * k + r] * b[static_cast<long>(r) * n + j];
      c[static_cast<long>(i) * n + j] = s;
    }
}

template <typename T>
void gemm_at_b(const T* a, const T* b, T* c, int m, int k, int n) {
  for (int r = 0; r < k; ++r)
    for (int j = 0; j < n; ++j) {
      T s = c[static_cast<long>(r) * n + j];
      for (int i = 0; i < m; ++i) s += a[static_cast<long>(i) * k + r] * b[static_cast<long>(i) * n + j];
      c[static_cast<long>(r) * n + j] = s;
    }
}

template <typename T>
void gemm_a_bt(const T* a, const T* b, T* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i)
    for (int r = 0; r < k; ++r) {
      T s = c[static_cast<long>(i) * k + r];
      for (int j = 0; j < n; ++j) s += a[static_cast<long>(i) * n + j] * b[static_cast<long>(r) * n + j];
      c[static_cast<long>(i) * k + r] = s;
    }
}

}  // namespace serial
}  // namespace compolang::kernels
