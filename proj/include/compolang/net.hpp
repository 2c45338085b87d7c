#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "compolang/rng.hpp"

namespace compolang {

enum class Architecture { VanillaRnn, Lstm };
const char* to_string(Architecture a);

// All trainable weights of one classifier. The recurrent block is stored
// gate-fused: for the LSTM, w_x / w_h / b hold the four gates side by side
// in the column order [input | forget | cell | output], each `hidden` wide;
// the vanilla RNN uses a single block. Row-major throughout.
template <typename T>
struct Parameters {
  Architecture arch = Architecture::Lstm;
  int vocab = 0, embed = 0, hidden = 0, classes = 0;

  std::vector<T> embedding;  // vocab x embed
  std::vector<T> w_x;        // embed x gates*hidden
  std::vector<T> w_h;        // hidden x gates*hidden
  std::vector<T> b;          // gates*hidden
  std::vector<T> w_out;      // hidden x classes
  std::vector<T> b_out;      // classes

  int gates() const { return arch == Architecture::Lstm ? 4 : 1; }
  std::size_t count() const;

  struct TensorView {
    const char* name;
    std::vector<T>* data;
    int rows, cols;
  };
  struct ConstTensorView {
    const char* name;
    const std::vector<T>* data;
    int rows, cols;
  };
  std::array<TensorView, 6> tensors();
  std::array<ConstTensorView, 6> tensors() const;
};

template <typename T>
using Gradients = Parameters<T>;

// Weights uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)] where fan_in is the
// input width of each matrix (vocab for the embedding). Biases zero, except
// the LSTM forget gate bias which starts at 1.
template <typename T>
Parameters<T> init_params(Architecture arch, int vocab, int embed, int hidden, int classes, Rng& rng);

template <typename T>
Gradients<T> zeros_like(const Parameters<T>& params);

// A fixed-length batch: ids is batch x len row-major.
struct Batch {
  int size = 0;
  int len = 0;
  std::vector<int> ids;
  std::vector<int> labels;
};

// Validates uniform sequence length; throws InputError otherwise.
Batch make_batch(const std::vector<std::vector<int>>& sequences, const std::vector<int>& labels);

// Final-state logits for one sequence, zero initial state.
template <typename T>
std::vector<T> forward(const Parameters<T>& params, std::span<const int> token_ids);

// Argmax of forward, ties broken toward the lowest class index.
template <typename T>
int predict(const Parameters<T>& params, std::span<const int> token_ids);

// Predicted class per batch row.
template <typename T>
std::vector<int> predict_batch(const Parameters<T>& params, const Batch& batch);

// Mean cross-entropy over the batch plus exact gradients via full
// backpropagation through time. `grads` is overwritten.
template <typename T>
double loss_and_grad(const Parameters<T>& params, const Batch& batch, Gradients<T>& grads);

template <typename T>
std::vector<T> softmax(std::span<const T> logits);

// Compares analytic gradients against central finite differences over every
// parameter of a small seeded model; returns the maximum relative error.
// Always runs in double precision.
struct GradCheckDims {
  int vocab = 11, embed = 4, hidden = 8, classes = 4, len = 5, batch = 3;
};
double grad_check(Architecture arch, const GradCheckDims& dims, std::uint64_t seed, double epsilon);

// Versioned JSON checkpoint: shape metadata plus row-major payloads.
template <typename T>
void save_checkpoint(const Parameters<T>& params, const std::string& path);
template <typename T>
Parameters<T> load_checkpoint(const std::string& path);

}  // namespace compolang
