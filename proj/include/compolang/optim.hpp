#pragma once

#include <cmath>
#include <cstdint>

#include "compolang/error.hpp"
#include "compolang/net.hpp"

namespace compolang {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// First and second moment estimates, shape-congruent with the parameters.
template <typename T>
struct AdamState {
  explicit AdamState(const Parameters<T>& params, AdamConfig config = {})
      : m(zeros_like(params)), v(zeros_like(params)), t(0), config(config) {}

  Gradients<T> m, v;
  std::int64_t t;
  AdamConfig config;
};

namespace detail {
template <typename T>
void check_congruent(const Parameters<T>& params, const Gradients<T>& grads) {
  if (params.arch != grads.arch || params.count() != grads.count())
    throw Error("parameter/gradient shape mismatch");
}
}  // namespace detail

// p <- p - lr * g
template <typename T>
void sgd_step(Parameters<T>& params, const Gradients<T>& grads, double lr) {
  if (lr <= 0) throw ConfigError("learning rate must be positive");
  detail::check_congruent(params, grads);
  auto pv = params.tensors();
  auto gv = grads.tensors();
  for (std::size_t k = 0; k < pv.size(); ++k) {
    auto& p = *pv[k].data;
    const auto& g = *gv[k].data;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] -= static_cast<T>(lr) * g[i];
  }
}

// Standard Adam recursion with bias correction.
template <typename T>
void adam_step(Parameters<T>& params, const Gradients<T>& grads, AdamState<T>& state) {
  detail::check_congruent(params, grads);
  detail::check_congruent(params, state.m);
  state.t += 1;
  const double b1 = state.config.beta1;
  const double b2 = state.config.beta2;
  const auto corr1 = static_cast<T>(1.0 - std::pow(b1, static_cast<double>(state.t)));
  const auto corr2 = static_cast<T>(1.0 - std::pow(b2, static_cast<double>(state.t)));
  const auto lr = static_cast<T>(state.config.lr);
  const auto eps = static_cast<T>(state.config.eps);
  const auto tb1 = static_cast<T>(b1);
  const auto tb2 = static_cast<T>(b2);

  auto pv = params.tensors();
  auto gv = grads.tensors();
  auto mv = state.m.tensors();
  auto vv = state.v.tensors();
  for (std::size_t k = 0; k < pv.size(); ++k) {
    auto& p = *pv[k].data;
    const auto& g = *gv[k].data;
    auto& m = *mv[k].data;
    auto& v = *vv[k].data;
    for (std::size_t i = 0; i < p.size(); ++i) {
      m[i] = tb1 * m[i] + (T(1) - tb1) * g[i];
      v[i] = tb2 * v[i] + (T(1) - tb2) * g[i] * g[i];
      const T m_hat = m[i] / corr1;
      const T v_hat = v[i] / corr2;
      p[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
    }
  }
}

}  // namespace compolang
