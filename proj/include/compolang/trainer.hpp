#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "compolang/dataset.hpp"
#include "compolang/net.hpp"
#include "compolang/optim.hpp"

namespace compolang {

// Which training examples are admitted at a given epoch. Admission starts at
// complexity 2 (levels 1 and 2 together) and grows one level per pace
// interval; NoCurriculum admits everything from epoch 0.
enum class CurriculumPolicy { Default, Slow, NoCurriculum };
const char* to_string(CurriculumPolicy c);

enum class Precision { Float32, Float64 };
const char* to_string(Precision p);

struct OptimizerSpec {
  enum class Kind { Sgd, Adam };
  Kind kind = Kind::Adam;
  double lr = 1e-3;    // SGD default is 0.1, set by make_sgd
  AdamConfig adam;     // lr mirrored from `lr`
};
OptimizerSpec make_adam(double lr = 1e-3);
OptimizerSpec make_sgd(double lr = 0.1);

struct TrainConfig {
  Architecture arch = Architecture::Lstm;
  int hidden = 256;
  int embed_dim = 32;
  OptimizerSpec optimizer = make_adam();
  int max_epochs = 100;
  int patience = 22;
  int batch_size = 32;
  CurriculumPolicy curriculum = CurriculumPolicy::Default;
  Precision precision = Precision::Float64;
  double grad_clip = 0.0;  // max global norm; 0 disables
  std::uint64_t seed = 0;
};

struct EpochRecord {
  int epoch = 0;
  int admitted_complexity = 0;
  double train_loss = 0.0;
  double dev_accuracy = 0.0;
};

struct RunResult {
  std::vector<EpochRecord> epochs;
  double best_dev_accuracy = 0.0;
  int stopping_epoch = 0;  // index of the last executed epoch
  double test_accuracy = 0.0;
  int test_correct = 0;
  int test_size = 0;
  std::uint64_t seed = 0;
  long long trained_examples = 0;  // total examples consumed by updates
};

int admitted_complexity(CurriculumPolicy policy, int epoch, int max_complexity);

// Fraction of examples whose prediction matches the stored label.
template <typename T>
double evaluate(const Parameters<T>& params, std::span<const LabeledExample> examples);
template <typename T>
std::pair<int, int> evaluate_count(const Parameters<T>& params, std::span<const LabeledExample> examples);

// The full loop: curriculum-gated admission, per-level shuffled batches,
// optimizer updates, dev evaluation, best-dev checkpointing, early stopping
// once dev accuracy stalls for `patience` epochs (counted only after the
// final curriculum level is admitted), test accuracy from the checkpoint.
RunResult train_run(const TrainConfig& config, const DatasetSplit& data);

// As train_run, but also hands back the best-dev checkpoint (always in
// double precision) when `checkpoint_out` is non-null.
RunResult train_run_checkpoint(const TrainConfig& config, const DatasetSplit& data,
                               Parameters<double>* checkpoint_out);

std::string to_json(const TrainConfig& config);
std::string to_json(const RunResult& result, const TrainConfig& config);

// Per-epoch CSV trace: epoch, admitted_complexity, train_loss, dev_acc.
void write_trace_csv(const RunResult& result, const std::filesystem::path& path);

}  // namespace compolang
