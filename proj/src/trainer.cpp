#include "compolang/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "compolang/error.hpp"
#include "compolang/report.hpp"

namespace compolang {

const char* to_string(CurriculumPolicy c) {
  switch (c) {
    case CurriculumPolicy::Default: return "default";
    case CurriculumPolicy::Slow: return "slow";
    case CurriculumPolicy::NoCurriculum: return "none";
  }
  return "?";
}

const char* to_string(Precision p) { return p == Precision::Float32 ? "float32" : "float64"; }

OptimizerSpec make_adam(double lr) {
  OptimizerSpec spec;
  spec.kind = OptimizerSpec::Kind::Adam;
  spec.lr = lr;
  spec.adam.lr = lr;
  return spec;
}

OptimizerSpec make_sgd(double lr) {
  OptimizerSpec spec;
  spec.kind = OptimizerSpec::Kind::Sgd;
  spec.lr = lr;
  return spec;
}

int admitted_complexity(CurriculumPolicy policy, int epoch, int max_complexity) {
  if (epoch < 0) throw ConfigError("epoch must be non-negative");
  switch (policy) {
    case CurriculumPolicy::Default: return std::min(max_complexity, 2 + epoch / 10);
    case CurriculumPolicy::Slow: return std::min(max_complexity, 2 + epoch / 20);
    case CurriculumPolicy::NoCurriculum: return max_complexity;
  }
  return max_complexity;
}

namespace {

// Batches of up to `cap` examples per complexity level (uniform length).
struct BatchPlan {
  std::vector<std::vector<int>> batches;  // indices into the train vector
};

BatchPlan plan_epoch(const std::vector<LabeledExample>& train, int admitted, int cap, Rng& shuffle_rng) {
  std::map<int, std::vector<int>> by_level;
  for (int i = 0; i < static_cast<int>(train.size()); ++i)
    if (train[i].complexity <= admitted) by_level[train[i].complexity].push_back(i);

  BatchPlan plan;
  for (auto& [level, indices] : by_level) {
    shuffle_rng.shuffle(indices);
    for (std::size_t at = 0; at < indices.size(); at += cap) {
      const auto end = std::min(indices.size(), at + cap);
      plan.batches.emplace_back(indices.begin() + at, indices.begin() + end);
    }
  }
  shuffle_rng.shuffle(plan.batches);
  return plan;
}

Batch gather_batch(const std::vector<LabeledExample>& train, const std::vector<int>& indices) {
  Batch batch;
  batch.size = static_cast<int>(indices.size());
  batch.len = static_cast<int>(train[indices.front()].token_ids.size());
  batch.ids.reserve(static_cast<std::size_t>(batch.size) * batch.len);
  batch.labels.reserve(indices.size());
  for (int idx : indices) {
    const auto& ex = train[idx];
    if (static_cast<int>(ex.token_ids.size()) != batch.len)
      throw InputError("level batching produced mixed lengths");
    batch.ids.insert(batch.ids.end(), ex.token_ids.begin(), ex.token_ids.end());
    batch.labels.push_back(ex.label);
  }
  return batch;
}

template <typename T>
void clip_gradients(Gradients<T>& grads, double max_norm) {
  double sq = 0;
  for (auto view : grads.tensors())
    for (T v : *view.data) sq += static_cast<double>(v) * static_cast<double>(v);
  const double norm = std::sqrt(sq);
  if (norm <= max_norm || norm == 0) return;
  const T scale = static_cast<T>(max_norm / norm);
  for (auto view : grads.tensors())
    for (T& v : *view.data) v *= scale;
}

template <typename T>
Parameters<double> to_double(const Parameters<T>& p) {
  Parameters<double> out;
  out.arch = p.arch;
  out.vocab = p.vocab;
  out.embed = p.embed;
  out.hidden = p.hidden;
  out.classes = p.classes;
  auto src = p.tensors();
  auto dst = out.tensors();
  for (std::size_t k = 0; k < src.size(); ++k)
    dst[k].data->assign(src[k].data->begin(), src[k].data->end());
  return out;
}

template <typename T>
RunResult run_impl(const TrainConfig& config, const DatasetSplit& data,
                   Parameters<double>* checkpoint_out) {
  if (config.max_epochs < 1) throw ConfigError("max_epochs must be at least 1");
  if (config.patience < 1) throw ConfigError("patience must be at least 1");
  if (config.batch_size < 1) throw ConfigError("batch_size must be at least 1");
  if (data.train.empty()) throw InputError("training split must not be empty");

  auto init_rng = Rng(config.seed).split(1);
  auto shuffle_rng = Rng(config.seed).split(2);
  auto params = init_params<T>(config.arch, data.vocab.size(), config.embed_dim, config.hidden,
                               data.num_classes, init_rng);
  auto grads = zeros_like(params);
  AdamState<T> adam(params, config.optimizer.adam);

  RunResult result;
  result.seed = config.seed;

  Parameters<T> best_params = params;
  double best_dev = -1.0;
  int epochs_without_improvement = 0;

  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    const int admitted = admitted_complexity(config.curriculum, epoch, data.max_complexity);
    auto plan = plan_epoch(data.train, admitted, config.batch_size, shuffle_rng);

    double loss_sum = 0;
    long long seen = 0;
    for (const auto& indices : plan.batches) {
      auto batch = gather_batch(data.train, indices);
      const double loss = loss_and_grad(params, batch, grads);
      if (config.grad_clip > 0) clip_gradients(grads, config.grad_clip);
      if (config.optimizer.kind == OptimizerSpec::Kind::Adam)
        adam_step(params, grads, adam);
      else
        sgd_step(params, grads, config.optimizer.lr);
      loss_sum += loss * batch.size;
      seen += batch.size;
    }
    result.trained_examples += seen;

    const double dev_acc = data.dev.empty() ? 0.0 : evaluate(params, std::span(data.dev));

    EpochRecord record;
    record.epoch = epoch;
    record.admitted_complexity = admitted;
    record.train_loss = seen > 0 ? loss_sum / static_cast<double>(seen) : 0.0;
    record.dev_accuracy = dev_acc;
    result.epochs.push_back(record);
    result.stopping_epoch = epoch;

    const bool improved = dev_acc > best_dev;
    if (dev_acc >= best_dev) best_params = params;  // ties keep the later weights
    if (improved) best_dev = dev_acc;

    // Dev holds only max-complexity items, so the stall counter runs only
    // once the curriculum admits that level.
    if (admitted >= data.max_complexity) {
      if (improved)
        epochs_without_improvement = 0;
      else
        ++epochs_without_improvement;
      if (epochs_without_improvement >= config.patience) break;
    }
  }

  result.best_dev_accuracy = std::max(best_dev, 0.0);
  auto [correct, total] = evaluate_count(best_params, std::span(data.test));
  result.test_correct = correct;
  result.test_size = total;
  result.test_accuracy = total > 0 ? static_cast<double>(correct) / total : 0.0;
  if (checkpoint_out != nullptr) *checkpoint_out = to_double(best_params);
  return result;
}

}  // namespace

template <typename T>
std::pair<int, int> evaluate_count(const Parameters<T>& params, std::span<const LabeledExample> examples) {
  if (examples.empty()) return {0, 0};
  constexpr int kEvalBatch = 256;

  // Bucket by sequence length to keep batches rectangular.
  std::map<int, std::vector<int>> by_len;
  for (int i = 0; i < static_cast<int>(examples.size()); ++i)
    by_len[static_cast<int>(examples[i].token_ids.size())].push_back(i);

  int correct = 0;
  for (const auto& [len, indices] : by_len) {
    for (std::size_t at = 0; at < indices.size(); at += kEvalBatch) {
      const auto end = std::min(indices.size(), at + kEvalBatch);
      Batch batch;
      batch.size = static_cast<int>(end - at);
      batch.len = len;
      batch.ids.reserve(static_cast<std::size_t>(batch.size) * len);
      batch.labels.reserve(batch.size);
      for (std::size_t k = at; k < end; ++k) {
        const auto& ex = examples[indices[k]];
        batch.ids.insert(batch.ids.end(), ex.token_ids.begin(), ex.token_ids.end());
        batch.labels.push_back(ex.label);
      }
      const auto predicted = predict_batch(params, batch);
      for (int r = 0; r < batch.size; ++r)
        if (predicted[r] == batch.labels[r]) ++correct;
    }
  }
  return {correct, static_cast<int>(examples.size())};
}

template <typename T>
double evaluate(const Parameters<T>& params, std::span<const LabeledExample> examples) {
  if (examples.empty()) throw InputError("cannot evaluate an empty example list");
  auto [correct, total] = evaluate_count(params, examples);
  return static_cast<double>(correct) / total;
}

RunResult train_run(const TrainConfig& config, const DatasetSplit& data) {
  return train_run_checkpoint(config, data, nullptr);
}

RunResult train_run_checkpoint(const TrainConfig& config, const DatasetSplit& data,
                               Parameters<double>* checkpoint_out) {
  return config.precision == Precision::Float32 ? run_impl<float>(config, data, checkpoint_out)
                                                : run_impl<double>(config, data, checkpoint_out);
}

std::string to_json(const TrainConfig& config) {
  nlohmann::json doc{{"arch", to_string(config.arch)},
                     {"hidden", config.hidden},
                     {"embed_dim", config.embed_dim},
                     {"optimizer", config.optimizer.kind == OptimizerSpec::Kind::Adam ? "adam" : "sgd"},
                     {"lr", config.optimizer.lr},
                     {"max_epochs", config.max_epochs},
                     {"patience", config.patience},
                     {"batch_size", config.batch_size},
                     {"curriculum", to_string(config.curriculum)},
                     {"precision", to_string(config.precision)},
                     {"grad_clip", config.grad_clip},
                     {"seed", config.seed}};
  if (config.optimizer.kind == OptimizerSpec::Kind::Adam) {
    doc["adam"] = {{"beta1", config.optimizer.adam.beta1},
                   {"beta2", config.optimizer.adam.beta2},
                   {"eps", config.optimizer.adam.eps}};
  }
  return doc.dump(2);
}

std::string to_json(const RunResult& result, const TrainConfig& config) {
  nlohmann::json epochs = nlohmann::json::array();
  for (const auto& e : result.epochs)
    epochs.push_back({{"epoch", e.epoch},
                      {"admitted_complexity", e.admitted_complexity},
                      {"train_loss", e.train_loss},
                      {"dev_accuracy", e.dev_accuracy}});
  nlohmann::json doc{{"config", nlohmann::json::parse(to_json(config))},
                     {"seed", result.seed},
                     {"best_dev_accuracy", result.best_dev_accuracy},
                     {"stopping_epoch", result.stopping_epoch},
                     {"test_accuracy", result.test_accuracy},
                     {"test_correct", result.test_correct},
                     {"test_size", result.test_size},
                     {"trained_examples", result.trained_examples},
                     {"epochs", std::move(epochs)}};
  return doc.dump(2);
}

void write_trace_csv(const RunResult& result, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << "epoch,admitted_complexity,train_loss,dev_acc\n";
  for (const auto& e : result.epochs)
    out << e.epoch << ',' << e.admitted_complexity << ',' << format_double(e.train_loss) << ','
        << format_double(e.dev_accuracy) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

template double evaluate<float>(const Parameters<float>&, std::span<const LabeledExample>);
template double evaluate<double>(const Parameters<double>&, std::span<const LabeledExample>);
template std::pair<int, int> evaluate_count<float>(const Parameters<float>&,
                                                   std::span<const LabeledExample>);
template std::pair<int, int> evaluate_count<double>(const Parameters<double>&,
                                                    std::span<const LabeledExample>);

}  // namespace compolang
