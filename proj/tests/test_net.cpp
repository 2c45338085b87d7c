#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <vector>

#include "compolang/error.hpp"
#include "compolang/net.hpp"

using namespace compolang;

namespace {

// Straight-line restatement of the cell equations, one sequence at a time,
// no shared code with the library path. Gate invariants are asserted on the
// way through.
std::vector<double> oracle_forward(const Parameters<double>& p, const std::vector<int>& ids,
                                   bool check_gates = false) {
  const int H = p.hidden, D = p.embed, U = p.classes;
  const int G = p.gates() * H;
  std::vector<double> h(H, 0.0), c(H, 0.0);
  for (int id : ids) {
    const double* x = p.embedding.data() + static_cast<std::size_t>(id) * D;
    std::vector<double> pre(G);
    for (int j = 0; j < G; ++j) {
      double s = p.b[j];
      for (int e = 0; e < D; ++e) s += x[e] * p.w_x[static_cast<std::size_t>(e) * G + j];
      for (int k = 0; k < H; ++k) s += h[k] * p.w_h[static_cast<std::size_t>(k) * G + j];
      pre[j] = s;
    }
    if (p.arch == Architecture::Lstm) {
      std::vector<double> hn(H), cn(H);
      for (int j = 0; j < H; ++j) {
        const double i = 1.0 / (1.0 + std::exp(-pre[j]));
        const double f = 1.0 / (1.0 + std::exp(-pre[H + j]));
        const double g = std::tanh(pre[2 * H + j]);
        const double o = 1.0 / (1.0 + std::exp(-pre[3 * H + j]));
        if (check_gates) {
          CHECK(i > 0.0);
          CHECK(i < 1.0);
          CHECK(f > 0.0);
          CHECK(f < 1.0);
          CHECK(o > 0.0);
          CHECK(o < 1.0);
          CHECK(g > -1.0);
          CHECK(g < 1.0);
        }
        cn[j] = f * c[j] + i * g;
        hn[j] = o * std::tanh(cn[j]);
        if (check_gates) {
          CHECK(hn[j] > -1.0);
          CHECK(hn[j] < 1.0);
        }
      }
      h = hn;
      c = cn;
    } else {
      std::vector<double> hn(H);
      for (int j = 0; j < H; ++j) hn[j] = std::tanh(pre[j]);
      h = hn;
    }
  }
  std::vector<double> logits(U);
  for (int u = 0; u < U; ++u) {
    double s = p.b_out[u];
    for (int k = 0; k < H; ++k) s += h[k] * p.w_out[static_cast<std::size_t>(k) * U + u];
    logits[u] = s;
  }
  return logits;
}

Parameters<double> zero_model(Architecture arch) {
  Rng rng(0);
  auto params = init_params<double>(arch, 11, 8, 16, 4, rng);
  return zeros_like(params);
}

}  // namespace

TEST_CASE("parameter counts match the declared shapes") {
  Rng rng(1);
  const auto lstm = init_params<double>(Architecture::Lstm, 11, 32, 256, 4, rng);
  CHECK(lstm.count() == 11 * 32 + 4 * (32 * 256 + 256 * 256 + 256) + 256 * 4 + 4);
  CHECK(lstm.count() == 297316);

  Rng rng2(1);
  const auto rnn = init_params<double>(Architecture::VanillaRnn, 11, 32, 256, 4, rng2);
  CHECK(rnn.count() == 11 * 32 + (32 * 256 + 256 * 256 + 256) + 256 * 4 + 4);
}

TEST_CASE("initialization: bounds, forget-gate bias, determinism") {
  Rng rng(42);
  const auto p = init_params<double>(Architecture::Lstm, 11, 32, 64, 4, rng);

  const double embed_bound = 1.0 / std::sqrt(11.0);
  for (double v : p.embedding) {
    CHECK(v >= -embed_bound);
    CHECK(v <= embed_bound);
  }
  const double wh_bound = 1.0 / std::sqrt(64.0);
  for (double v : p.w_h) {
    CHECK(v >= -wh_bound);
    CHECK(v <= wh_bound);
  }
  for (int j = 0; j < 64; ++j) {
    CHECK(p.b[j] == 0.0);            // input gate
    CHECK(p.b[64 + j] == 1.0);       // forget gate
    CHECK(p.b[2 * 64 + j] == 0.0);   // cell candidate
    CHECK(p.b[3 * 64 + j] == 0.0);   // output gate
  }
  for (double v : p.b_out) CHECK(v == 0.0);

  Rng rng_a(7), rng_b(7);
  const auto a = init_params<float>(Architecture::Lstm, 11, 8, 16, 4, rng_a);
  const auto b = init_params<float>(Architecture::Lstm, 11, 8, 16, 4, rng_b);
  CHECK(a.embedding == b.embedding);
  CHECK(a.w_x == b.w_x);
  CHECK(a.w_h == b.w_h);
  CHECK(a.w_out == b.w_out);

  Rng bad(1);
  CHECK_THROWS_AS(init_params<double>(Architecture::Lstm, 0, 8, 16, 4, bad), ConfigError);
  CHECK_THROWS_AS(init_params<double>(Architecture::Lstm, 11, 8, -1, 4, bad), ConfigError);
}

TEST_CASE("zero parameters give uniform predictions and ln(4) loss") {
  for (auto arch : {Architecture::Lstm, Architecture::VanillaRnn}) {
    auto p = zero_model(arch);
    const std::vector<int> input = {0, 8, 4};
    const auto logits = forward(p, std::span(input));
    for (double v : logits) CHECK(v == 0.0);

    const auto probs = softmax<double>(std::span(logits));
    for (double v : probs) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));

    CHECK(predict(p, std::span(input)) == 0);  // tie-break toward class 0

    Batch batch = make_batch({{0, 8, 4}, {1, 8, 5}}, {2, 3});
    auto grads = zeros_like(p);
    const double loss = loss_and_grad(p, batch, grads);
    CHECK(loss == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  }
}

TEST_CASE("forward matches a straight-line restatement of the cell equations") {
  for (auto arch : {Architecture::Lstm, Architecture::VanillaRnn}) {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      Rng rng(seed);
      const auto p = init_params<double>(arch, 11, 8, 16, 4, rng);
      for (const auto& ids :
           {std::vector<int>{0, 8, 4}, std::vector<int>{3}, std::vector<int>{9, 6, 10, 9, 4, 10, 2}}) {
        const auto got = forward(p, std::span(ids));
        const auto want = oracle_forward(p, ids, /*check_gates=*/true);
        REQUIRE(got.size() == want.size());
        for (std::size_t u = 0; u < got.size(); ++u)
          CHECK(std::abs(got[u] - want[u]) < 1e-10);
      }
    }
  }
}

TEST_CASE("a single token applies exactly one recurrent step") {
  Rng rng(3);
  const auto p = init_params<double>(Architecture::Lstm, 11, 8, 16, 4, rng);
  const std::vector<int> one = {5};
  const auto got = forward(p, std::span(one));
  const auto want = oracle_forward(p, one);
  for (std::size_t u = 0; u < got.size(); ++u) CHECK(got[u] == doctest::Approx(want[u]).epsilon(1e-12));
}

TEST_CASE("duplicating every batch element changes neither loss nor gradients") {
  Rng rng(17);
  const auto p = init_params<double>(Architecture::Lstm, 11, 8, 16, 4, rng);
  const auto batch = make_batch({{0, 8, 4}, {1, 8, 7}}, {1, 2});
  const auto doubled = make_batch({{0, 8, 4}, {1, 8, 7}, {0, 8, 4}, {1, 8, 7}}, {1, 2, 1, 2});

  auto g1 = zeros_like(p);
  auto g2 = zeros_like(p);
  const double l1 = loss_and_grad(p, batch, g1);
  const double l2 = loss_and_grad(p, doubled, g2);
  CHECK(l1 == doctest::Approx(l2).epsilon(1e-12));
  auto v1 = g1.tensors();
  auto v2 = g2.tensors();
  for (std::size_t k = 0; k < v1.size(); ++k) {
    REQUIRE(v1[k].data->size() == v2[k].data->size());
    for (std::size_t i = 0; i < v1[k].data->size(); ++i)
      CHECK((*v1[k].data)[i] == doctest::Approx((*v2[k].data)[i]).epsilon(1e-11));
  }
}

TEST_CASE("analytic gradients agree with central differences") {
  for (auto arch : {Architecture::Lstm, Architecture::VanillaRnn}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      GradCheckDims dims;
      dims.len = 1 + static_cast<int>(seed * 3 % 9);
      const double err = grad_check(arch, dims, seed, 1e-5);
      CHECK_MESSAGE(err < 1e-4, to_string(arch), " seed ", seed, " err ", err);
    }
  }
  CHECK_THROWS_AS(grad_check(Architecture::Lstm, GradCheckDims{}, 1, 0.0), ConfigError);
}

TEST_CASE("softmax rows sum to one") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> logits(4);
    for (auto& v : logits) v = rng.uniform(-30, 30);
    const auto probs = softmax<double>(std::span(logits));
    double sum = 0;
    for (double v : probs) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("prediction is shift invariant and breaks ties low") {
  Rng rng(29);
  auto p = init_params<double>(Architecture::Lstm, 11, 8, 16, 4, rng);
  const std::vector<int> input = {2, 8, 6};
  const int before = predict(p, std::span(input));
  for (auto& v : p.b_out) v += 3.5;  // constant shift on all logits
  CHECK(predict(p, std::span(input)) == before);

  // argmax on explicit logits
  const std::vector<double> logits = {0.1, 2.0, -1.0, 0.0};
  const auto probs = softmax<double>(std::span(logits));
  CHECK(std::max_element(probs.begin(), probs.end()) - probs.begin() == 1);
}

TEST_CASE("malformed inputs are rejected") {
  Rng rng(31);
  const auto p = init_params<double>(Architecture::Lstm, 11, 8, 16, 4, rng);

  CHECK_THROWS_AS(forward(p, std::span<const int>()), InputError);
  const std::vector<int> bad_id = {0, 11};
  CHECK_THROWS_AS(forward(p, std::span(bad_id)), InputError);
  const std::vector<int> negative = {-1};
  CHECK_THROWS_AS(forward(p, std::span(negative)), InputError);

  CHECK_THROWS_AS(make_batch({{1, 2}, {1, 2, 3}}, {0, 1}), InputError);
  CHECK_THROWS_AS(make_batch({}, {}), InputError);
  CHECK_THROWS_AS(make_batch({{1, 2}}, {0, 1}), InputError);

  auto grads = zeros_like(p);
  auto batch = make_batch({{0, 1}}, {4});
  CHECK_THROWS_AS(loss_and_grad(p, batch, grads), InputError);
}

TEST_CASE("checkpoints round trip bitwise") {
  const auto dir = std::filesystem::temp_directory_path();
  {
    Rng rng(37);
    const auto p = init_params<double>(Architecture::Lstm, 11, 8, 16, 4, rng);
    const auto path = (dir / "compolang_ckpt_f64.json").string();
    save_checkpoint(p, path);
    const auto q = load_checkpoint<double>(path);
    std::filesystem::remove(path);
    CHECK(q.arch == p.arch);
    CHECK(q.embedding == p.embedding);
    CHECK(q.w_x == p.w_x);
    CHECK(q.w_h == p.w_h);
    CHECK(q.b == p.b);
    CHECK(q.w_out == p.w_out);
    CHECK(q.b_out == p.b_out);
  }
  {
    Rng rng(38);
    const auto p = init_params<float>(Architecture::VanillaRnn, 7, 4, 8, 3, rng);
    const auto path = (dir / "compolang_ckpt_f32.json").string();
    save_checkpoint(p, path);
    const auto q = load_checkpoint<float>(path);
    std::filesystem::remove(path);
    CHECK(q.w_h == p.w_h);
    CHECK(q.b == p.b);
  }
}
