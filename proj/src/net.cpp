#include "compolang/net.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "compolang/error.hpp"
#include "compolang/kernels.hpp"

namespace compolang {

const char* to_string(Architecture a) { return a == Architecture::Lstm ? "lstm" : "rnn"; }

template <typename T>
std::size_t Parameters<T>::count() const {
  return embedding.size() + w_x.size() + w_h.size() + b.size() + w_out.size() + b_out.size();
}

template <typename T>
std::array<typename Parameters<T>::TensorView, 6> Parameters<T>::tensors() {
  const int gh = gates() * hidden;
  return {{{"embedding", &embedding, vocab, embed},
           {"w_x", &w_x, embed, gh},
           {"w_h", &w_h, hidden, gh},
           {"b", &b, 1, gh},
           {"w_out", &w_out, hidden, classes},
           {"b_out", &b_out, 1, classes}}};
}

template <typename T>
std::array<typename Parameters<T>::ConstTensorView, 6> Parameters<T>::tensors() const {
  const int gh = gates() * hidden;
  return {{{"embedding", &embedding, vocab, embed},
           {"w_x", &w_x, embed, gh},
           {"w_h", &w_h, hidden, gh},
           {"b", &b, 1, gh},
           {"w_out", &w_out, hidden, classes},
           {"b_out", &b_out, 1, classes}}};
}

template <typename T>
Parameters<T> init_params(Architecture arch, int vocab, int embed, int hidden, int classes, Rng& rng) {
  if (vocab < 1 || embed < 1 || hidden < 1 || classes < 1)
    throw ConfigError("model dimensions must be positive");

  Parameters<T> p;
  p.arch = arch;
  p.vocab = vocab;
  p.embed = embed;
  p.hidden = hidden;
  p.classes = classes;
  const int gh = p.gates() * hidden;
  p.embedding.resize(static_cast<std::size_t>(vocab) * embed);
  p.w_x.resize(static_cast<std::size_t>(embed) * gh);
  p.w_h.resize(static_cast<std::size_t>(hidden) * gh);
  p.b.assign(gh, T(0));
  p.w_out.resize(static_cast<std::size_t>(hidden) * classes);
  p.b_out.assign(classes, T(0));

  auto fill_uniform = [&rng](std::vector<T>& w, int fan_in) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (auto& v : w) v = static_cast<T>(rng.uniform(-bound, bound));
  };
  fill_uniform(p.embedding, vocab);
  fill_uniform(p.w_x, embed);
  fill_uniform(p.w_h, hidden);
  fill_uniform(p.w_out, hidden);

  if (arch == Architecture::Lstm)
    for (int j = hidden; j < 2 * hidden; ++j) p.b[j] = T(1);  // forget gate

  return p;
}

template <typename T>
Gradients<T> zeros_like(const Parameters<T>& params) {
  Gradients<T> g;
  g.arch = params.arch;
  g.vocab = params.vocab;
  g.embed = params.embed;
  g.hidden = params.hidden;
  g.classes = params.classes;
  g.embedding.assign(params.embedding.size(), T(0));
  g.w_x.assign(params.w_x.size(), T(0));
  g.w_h.assign(params.w_h.size(), T(0));
  g.b.assign(params.b.size(), T(0));
  g.w_out.assign(params.w_out.size(), T(0));
  g.b_out.assign(params.b_out.size(), T(0));
  return g;
}

Batch make_batch(const std::vector<std::vector<int>>& sequences, const std::vector<int>& labels) {
  if (sequences.empty()) throw InputError("batch must not be empty");
  if (sequences.size() != labels.size()) throw InputError("one label per sequence required");
  Batch batch;
  batch.size = static_cast<int>(sequences.size());
  batch.len = static_cast<int>(sequences.front().size());
  if (batch.len < 1) throw InputError("sequences must not be empty");
  batch.ids.reserve(static_cast<std::size_t>(batch.size) * batch.len);
  for (const auto& seq : sequences) {
    if (static_cast<int>(seq.size()) != batch.len)
      throw InputError("all sequences in a batch must have the same length");
    batch.ids.insert(batch.ids.end(), seq.begin(), seq.end());
  }
  batch.labels = labels;
  return batch;
}

namespace {

template <typename T>
T sigmoid(T x) {
  return T(1) / (T(1) + std::exp(-x));
}

template <typename T>
struct Workspace {
  // Per-step activations, each x.size() = len slots of a [batch x width] block.
  std::vector<T> x;       // len x batch x embed
  std::vector<T> h;       // (len+1) x batch x hidden
  std::vector<T> c;       // (len+1) x batch x hidden
  std::vector<T> gates;   // len x batch x gates*hidden, activated
  std::vector<T> tanh_c;  // len x batch x hidden
  std::vector<T> logits;  // batch x classes
  std::vector<T> probs;   // batch x classes
  // Backward scratch.
  std::vector<T> da, dh, dc, dx;

  void resize(const Parameters<T>& p, int batch, int len, bool keep_history) {
    const auto b = static_cast<std::size_t>(batch);
    const std::size_t steps = keep_history ? static_cast<std::size_t>(len) : 1;
    const std::size_t hsteps = keep_history ? static_cast<std::size_t>(len) + 1 : 2;
    x.resize(steps * b * p.embed);
    h.resize(hsteps * b * p.hidden);
    c.resize(hsteps * b * p.hidden);
    gates.resize(steps * b * p.gates() * p.hidden);
    tanh_c.resize(steps * b * p.hidden);
    logits.resize(b * p.classes);
    probs.resize(b * p.classes);
    // Zero initial state; every other slot is fully overwritten per step.
    std::fill(h.begin(), h.begin() + b * p.hidden, T(0));
    std::fill(c.begin(), c.begin() + b * p.hidden, T(0));
  }
};

template <typename T>
Workspace<T>& workspace() {
  static thread_local Workspace<T> ws;
  return ws;
}

template <typename T>
void check_ids(const Parameters<T>& p, const int* ids, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (ids[i] < 0 || ids[i] >= p.vocab)
      throw InputError("token id out of range: " + std::to_string(ids[i]));
}

// One recurrent step over the whole batch. Reads h/c at `from`, writes at
// `to`; x_t / gates_t / tanh_c_t index into the workspace step buffers.
template <typename T>
void step(const Parameters<T>& p, Workspace<T>& ws, const int* ids_t, int batch, std::size_t x_t,
          std::size_t from, std::size_t to, std::size_t act_t) {
  const int H = p.hidden;
  const int D = p.embed;
  const int GH = p.gates() * H;
  const auto bsz = static_cast<std::size_t>(batch);

  T* x = ws.x.data() + x_t * bsz * D;
  for (int r = 0; r < batch; ++r)
    std::memcpy(x + static_cast<std::size_t>(r) * D, p.embedding.data() + static_cast<std::size_t>(ids_t[r]) * D,
                sizeof(T) * D);

  T* a = ws.gates.data() + act_t * bsz * GH;
  for (int r = 0; r < batch; ++r)
    std::memcpy(a + static_cast<std::size_t>(r) * GH, p.b.data(), sizeof(T) * GH);
  kernels::gemm(x, p.w_x.data(), a, batch, D, GH);
  kernels::gemm(ws.h.data() + from * bsz * H, p.w_h.data(), a, batch, H, GH);

  const T* h_prev = ws.h.data() + from * bsz * H;
  T* h_next = ws.h.data() + to * bsz * H;

  if (p.arch == Architecture::VanillaRnn) {
    (void)h_prev;
    for (int r = 0; r < batch; ++r) {
      T* ar = a + static_cast<std::size_t>(r) * GH;
      T* hr = h_next + static_cast<std::size_t>(r) * H;
      for (int j = 0; j < H; ++j) {
        ar[j] = std::tanh(ar[j]);
        hr[j] = ar[j];
      }
    }
    return;
  }

  const T* c_prev = ws.c.data() + from * bsz * H;
  T* c_next = ws.c.data() + to * bsz * H;
  T* tc = ws.tanh_c.data() + act_t * bsz * H;
  for (int r = 0; r < batch; ++r) {
    T* ar = a + static_cast<std::size_t>(r) * GH;
    const T* cp = c_prev + static_cast<std::size_t>(r) * H;
    T* cn = c_next + static_cast<std::size_t>(r) * H;
    T* hr = h_next + static_cast<std::size_t>(r) * H;
    T* tr = tc + static_cast<std::size_t>(r) * H;
    for (int j = 0; j < H; ++j) {
      const T i = sigmoid(ar[j]);
      const T f = sigmoid(ar[H + j]);
      const T g = std::tanh(ar[2 * H + j]);
      const T o = sigmoid(ar[3 * H + j]);
      ar[j] = i;
      ar[H + j] = f;
      ar[2 * H + j] = g;
      ar[3 * H + j] = o;
      cn[j] = f * cp[j] + i * g;
      tr[j] = std::tanh(cn[j]);
      hr[j] = o * tr[j];
    }
  }
}

template <typename T>
void head_logits(const Parameters<T>& p, Workspace<T>& ws, int batch, std::size_t h_at) {
  const auto bsz = static_cast<std::size_t>(batch);
  for (int r = 0; r < batch; ++r)
    std::memcpy(ws.logits.data() + static_cast<std::size_t>(r) * p.classes, p.b_out.data(),
                sizeof(T) * p.classes);
  kernels::gemm(ws.h.data() + h_at * bsz * p.hidden, p.w_out.data(), ws.logits.data(), batch, p.hidden,
                p.classes);
}

// Runs the recurrence over the batch. With keep_history the workspace stores
// every step for BPTT; otherwise h/c ping-pong between two slots.
template <typename T>
void forward_batch(const Parameters<T>& p, Workspace<T>& ws, const int* ids, int batch, int len,
                   bool keep_history) {
  if (len < 1) throw InputError("input sequence must not be empty");
  if (batch < 1) throw InputError("batch must not be empty");
  check_ids(p, ids, static_cast<std::size_t>(batch) * len);
  ws.resize(p, batch, len, keep_history);

  std::vector<int> ids_t(batch);
  for (int t = 0; t < len; ++t) {
    for (int r = 0; r < batch; ++r) ids_t[r] = ids[static_cast<std::size_t>(r) * len + t];
    const std::size_t from = keep_history ? t : (t % 2);
    const std::size_t to = keep_history ? t + 1 : ((t + 1) % 2);
    const std::size_t slot = keep_history ? t : 0;
    step(p, ws, ids_t.data(), batch, slot, from, to, slot);
  }
  head_logits(p, ws, batch, keep_history ? len : (len % 2));
}

template <typename T>
void softmax_rows(const T* logits, T* probs, int rows, int cols) {
  for (int r = 0; r < rows; ++r) {
    const T* in = logits + static_cast<std::size_t>(r) * cols;
    T* out = probs + static_cast<std::size_t>(r) * cols;
    T mx = in[0];
    for (int j = 1; j < cols; ++j) mx = std::max(mx, in[j]);
    T sum = 0;
    for (int j = 0; j < cols; ++j) {
      out[j] = std::exp(in[j] - mx);
      sum += out[j];
    }
    for (int j = 0; j < cols; ++j) out[j] /= sum;
  }
}

template <typename T>
int argmax_row(const T* v, int n) {
  int best = 0;
  for (int j = 1; j < n; ++j)
    if (v[j] > v[best]) best = j;
  return best;
}

}  // namespace

template <typename T>
std::vector<T> softmax(std::span<const T> logits) {
  std::vector<T> out(logits.size());
  if (!logits.empty()) softmax_rows(logits.data(), out.data(), 1, static_cast<int>(logits.size()));
  return out;
}

template <typename T>
std::vector<T> forward(const Parameters<T>& params, std::span<const int> token_ids) {
  if (token_ids.empty()) throw InputError("input sequence must not be empty");
  auto& ws = workspace<T>();
  forward_batch(params, ws, token_ids.data(), 1, static_cast<int>(token_ids.size()), false);
  return std::vector<T>(ws.logits.begin(), ws.logits.begin() + params.classes);
}

template <typename T>
int predict(const Parameters<T>& params, std::span<const int> token_ids) {
  auto logits = forward(params, token_ids);
  return argmax_row(logits.data(), params.classes);
}

template <typename T>
std::vector<int> predict_batch(const Parameters<T>& params, const Batch& batch) {
  auto& ws = workspace<T>();
  forward_batch(params, ws, batch.ids.data(), batch.size, batch.len, false);
  std::vector<int> out(batch.size);
  for (int r = 0; r < batch.size; ++r)
    out[r] = argmax_row(ws.logits.data() + static_cast<std::size_t>(r) * params.classes, params.classes);
  return out;
}

template <typename T>
double loss_and_grad(const Parameters<T>& params, const Batch& batch, Gradients<T>& grads) {
  const int B = batch.size;
  const int L = batch.len;
  const int H = params.hidden;
  const int D = params.embed;
  const int U = params.classes;
  const int GH = params.gates() * H;
  const auto bsz = static_cast<std::size_t>(B);

  if (B < 1) throw InputError("batch must not be empty");
  if (static_cast<std::size_t>(B) * L != batch.ids.size()) throw InputError("ragged batch");
  for (int label : batch.labels)
    if (label < 0 || label >= U) throw InputError("label out of range");

  if (grads.count() != params.count() || grads.arch != params.arch) grads = zeros_like(params);
  for (auto view : grads.tensors()) std::fill(view.data->begin(), view.data->end(), T(0));

  auto& ws = workspace<T>();
  forward_batch(params, ws, batch.ids.data(), B, L, true);
  softmax_rows(ws.logits.data(), ws.probs.data(), B, U);

  double loss = 0;
  for (int r = 0; r < B; ++r) {
    const T p_true = ws.probs[static_cast<std::size_t>(r) * U + batch.labels[r]];
    loss -= std::log(std::max(static_cast<double>(p_true), 1e-300));
  }
  loss /= B;

  // dlogits = (probs - onehot) / B
  std::vector<T>& dlogits = ws.probs;
  const T inv_b = T(1) / static_cast<T>(B);
  for (int r = 0; r < B; ++r) {
    T* row = dlogits.data() + static_cast<std::size_t>(r) * U;
    row[batch.labels[r]] -= T(1);
    for (int j = 0; j < U; ++j) row[j] *= inv_b;
  }

  kernels::gemm_at_b(ws.h.data() + static_cast<std::size_t>(L) * bsz * H, dlogits.data(),
                     grads.w_out.data(), B, H, U);
  for (int r = 0; r < B; ++r)
    kernels::axpy(T(1), dlogits.data() + static_cast<std::size_t>(r) * U, grads.b_out.data(), U);

  ws.dh.assign(bsz * H, T(0));
  kernels::gemm_a_bt(dlogits.data(), params.w_out.data(), ws.dh.data(), B, H, U);
  ws.dc.assign(bsz * H, T(0));
  ws.da.assign(bsz * GH, T(0));
  ws.dx.assign(bsz * D, T(0));

  std::vector<int> ids_t(B);
  for (int t = L - 1; t >= 0; --t) {
    const T* act = ws.gates.data() + static_cast<std::size_t>(t) * bsz * GH;
    T* da = ws.da.data();
    T* dh = ws.dh.data();
    T* dc = ws.dc.data();

    if (params.arch == Architecture::Lstm) {
      const T* c_prev = ws.c.data() + static_cast<std::size_t>(t) * bsz * H;
      const T* tc = ws.tanh_c.data() + static_cast<std::size_t>(t) * bsz * H;
      for (int r = 0; r < B; ++r) {
        const T* ar = act + static_cast<std::size_t>(r) * GH;
        const T* cp = c_prev + static_cast<std::size_t>(r) * H;
        const T* tr = tc + static_cast<std::size_t>(r) * H;
        T* dhr = dh + static_cast<std::size_t>(r) * H;
        T* dcr = dc + static_cast<std::size_t>(r) * H;
        T* dar = da + static_cast<std::size_t>(r) * GH;
        for (int j = 0; j < H; ++j) {
          const T i = ar[j], f = ar[H + j], g = ar[2 * H + j], o = ar[3 * H + j];
          const T d_o = dhr[j] * tr[j];
          const T dcj = dcr[j] + dhr[j] * o * (T(1) - tr[j] * tr[j]);
          dar[j] = dcj * g * i * (T(1) - i);
          dar[H + j] = dcj * cp[j] * f * (T(1) - f);
          dar[2 * H + j] = dcj * i * (T(1) - g * g);
          dar[3 * H + j] = d_o * o * (T(1) - o);
          dcr[j] = dcj * f;  // carried to t-1
        }
      }
    } else {
      const T* h_next = ws.h.data() + static_cast<std::size_t>(t + 1) * bsz * H;
      for (int r = 0; r < B; ++r) {
        const T* hn = h_next + static_cast<std::size_t>(r) * H;
        T* dhr = dh + static_cast<std::size_t>(r) * H;
        T* dar = da + static_cast<std::size_t>(r) * GH;
        for (int j = 0; j < H; ++j) dar[j] = dhr[j] * (T(1) - hn[j] * hn[j]);
      }
    }

    const T* x_t = ws.x.data() + static_cast<std::size_t>(t) * bsz * D;
    const T* h_prev = ws.h.data() + static_cast<std::size_t>(t) * bsz * H;
    kernels::gemm_at_b(x_t, da, grads.w_x.data(), B, D, GH);
    kernels::gemm_at_b(h_prev, da, grads.w_h.data(), B, H, GH);
    for (int r = 0; r < B; ++r)
      kernels::axpy(T(1), da + static_cast<std::size_t>(r) * GH, grads.b.data(), GH);

    std::fill(ws.dh.begin(), ws.dh.end(), T(0));
    kernels::gemm_a_bt(da, params.w_h.data(), ws.dh.data(), B, H, GH);

    std::fill(ws.dx.begin(), ws.dx.end(), T(0));
    kernels::gemm_a_bt(da, params.w_x.data(), ws.dx.data(), B, D, GH);
    for (int r = 0; r < B; ++r) {
      const int id = batch.ids[static_cast<std::size_t>(r) * L + t];
      kernels::axpy(T(1), ws.dx.data() + static_cast<std::size_t>(r) * D,
                    grads.embedding.data() + static_cast<std::size_t>(id) * D, D);
    }
  }

  return loss;
}

// ---------------------------------------------------------------------------
// Gradient checking
// ---------------------------------------------------------------------------

double grad_check(Architecture arch, const GradCheckDims& dims, std::uint64_t seed, double epsilon) {
  if (epsilon <= 0) throw ConfigError("finite-difference epsilon must be positive");

  Rng rng(seed);
  auto init_rng = rng.split(1);
  auto params = init_params<double>(arch, dims.vocab, dims.embed, dims.hidden, dims.classes, init_rng);

  auto data_rng = rng.split(2);
  Batch batch;
  batch.size = dims.batch;
  batch.len = dims.len;
  batch.ids.resize(static_cast<std::size_t>(dims.batch) * dims.len);
  for (auto& id : batch.ids) id = data_rng.uniform_int(dims.vocab);
  batch.labels.resize(dims.batch);
  for (auto& label : batch.labels) label = data_rng.uniform_int(dims.classes);

  auto grads = zeros_like(params);
  loss_and_grad(params, batch, grads);

  auto loss_only = [&](const Parameters<double>& p) {
    auto& ws = workspace<double>();
    forward_batch(p, ws, batch.ids.data(), batch.size, batch.len, false);
    softmax_rows(ws.logits.data(), ws.probs.data(), batch.size, params.classes);
    double loss = 0;
    for (int r = 0; r < batch.size; ++r)
      loss -= std::log(ws.probs[static_cast<std::size_t>(r) * params.classes + batch.labels[r]]);
    return loss / batch.size;
  };

  double max_rel = 0;
  auto param_views = params.tensors();
  auto grad_views = grads.tensors();
  for (std::size_t v = 0; v < param_views.size(); ++v) {
    auto& values = *param_views[v].data;
    const auto& analytic = *grad_views[v].data;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + epsilon;
      const double up = loss_only(params);
      values[i] = saved - epsilon;
      const double down = loss_only(params);
      values[i] = saved;
      const double numeric = (up - down) / (2 * epsilon);
      const double denom = std::max({1.0, std::abs(analytic[i]), std::abs(numeric)});
      max_rel = std::max(max_rel, std::abs(analytic[i] - numeric) / denom);
    }
  }
  return max_rel;
}

// ---------------------------------------------------------------------------
// Checkpoints
// ---------------------------------------------------------------------------

namespace {
template <typename T>
const char* scalar_name() {
  return sizeof(T) == 4 ? "float32" : "float64";
}
}  // namespace

template <typename T>
void save_checkpoint(const Parameters<T>& params, const std::string& path) {
  nlohmann::json doc;
  doc["format_version"] = 1;
  doc["arch"] = to_string(params.arch);
  doc["scalar"] = scalar_name<T>();
  doc["dims"] = {{"vocab", params.vocab},
                 {"embed", params.embed},
                 {"hidden", params.hidden},
                 {"classes", params.classes}};
  nlohmann::json tensors = nlohmann::json::array();
  for (auto view : params.tensors()) {
    tensors.push_back({{"name", view.name},
                       {"rows", view.rows},
                       {"cols", view.cols},
                       {"data", *view.data}});
  }
  doc["tensors"] = std::move(tensors);

  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << doc.dump() << '\n';
  if (!out) throw IoError("write failed: " + path);
}

template <typename T>
Parameters<T> load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  if (doc.at("format_version").get<int>() != 1) throw IoError("unsupported checkpoint version");

  const auto arch_name = doc.at("arch").get<std::string>();
  Architecture arch;
  if (arch_name == "lstm")
    arch = Architecture::Lstm;
  else if (arch_name == "rnn")
    arch = Architecture::VanillaRnn;
  else
    throw IoError("unknown architecture in checkpoint: " + arch_name);

  Parameters<T> p;
  p.arch = arch;
  p.vocab = doc.at("dims").at("vocab").get<int>();
  p.embed = doc.at("dims").at("embed").get<int>();
  p.hidden = doc.at("dims").at("hidden").get<int>();
  p.classes = doc.at("dims").at("classes").get<int>();

  auto views = p.tensors();
  for (const auto& t : doc.at("tensors")) {
    const auto name = t.at("name").get<std::string>();
    bool found = false;
    for (auto& view : views) {
      if (name != view.name) continue;
      if (t.at("rows").get<int>() != view.rows || t.at("cols").get<int>() != view.cols)
        throw IoError("checkpoint tensor shape mismatch for " + name);
      *view.data = t.at("data").get<std::vector<T>>();
      if (view.data->size() != static_cast<std::size_t>(view.rows) * view.cols)
        throw IoError("checkpoint tensor payload size mismatch for " + name);
      found = true;
      break;
    }
    if (!found) throw IoError("unexpected tensor in checkpoint: " + name);
  }
  for (auto& view : p.tensors())
    if (view.data->size() != static_cast<std::size_t>(view.rows) * view.cols)
      throw IoError("checkpoint is missing tensor " + std::string(view.name));
  return p;
}

// Explicit instantiations.
template struct Parameters<float>;
template struct Parameters<double>;
template Parameters<float> init_params<float>(Architecture, int, int, int, int, Rng&);
template Parameters<double> init_params<double>(Architecture, int, int, int, int, Rng&);
template Gradients<float> zeros_like<float>(const Parameters<float>&);
template Gradients<double> zeros_like<double>(const Parameters<double>&);
template std::vector<float> forward<float>(const Parameters<float>&, std::span<const int>);
template std::vector<double> forward<double>(const Parameters<double>&, std::span<const int>);
template int predict<float>(const Parameters<float>&, std::span<const int>);
template int predict<double>(const Parameters<double>&, std::span<const int>);
template std::vector<int> predict_batch<float>(const Parameters<float>&, const Batch&);
template std::vector<int> predict_batch<double>(const Parameters<double>&, const Batch&);
template double loss_and_grad<float>(const Parameters<float>&, const Batch&, Gradients<float>&);
template double loss_and_grad<double>(const Parameters<double>&, const Batch&, Gradients<double>&);
template std::vector<float> softmax<float>(std::span<const float>);
template std::vector<double> softmax<double>(std::span<const double>);
template void save_checkpoint<float>(const Parameters<float>&, const std::string&);
template void save_checkpoint<double>(const Parameters<double>&, const std::string&);
template Parameters<float> load_checkpoint<float>(const std::string&);
template Parameters<double> load_checkpoint<double>(const std::string&);

}  // namespace compolang
