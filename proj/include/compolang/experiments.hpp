#pragma once

#include <cstdint>
#include <vector>

#include "compolang/dataset.hpp"
#include "compolang/report.hpp"
#include "compolang/trainer.hpp"

namespace compolang {

struct GridRowSpec {
  Branching branching = Branching::Left;
  CurriculumPolicy curriculum = CurriculumPolicy::Default;
};

// The four reported conditions: left/default, right/default, left/slow,
// left/none. exp_branching_grid accepts any subset of the full
// branching x curriculum product.
std::vector<GridRowSpec> default_grid_rows();
std::vector<GridRowSpec> full_grid_rows();

struct ExperimentOptions {
  std::uint64_t master_seed = 1;
  int runs = 10;
  int parallel = 0;  // concurrent runs; 0 = hardware parallelism
  bool verbose = true;

  // Model/training knobs, shared by every run of an experiment.
  Precision precision = Precision::Float32;
  int hidden = 256;
  int embed_dim = 32;
  int max_epochs = 100;
  int patience = 22;
  int batch_size = 32;
  double adam_lr = 1e-3;

  // World/data knobs.
  FunctionConstraint world_constraint = FunctionConstraint::AnyTotal;
  double train_fraction_at_max = 0.8;
  double dev_test_ratio = 0.5;
  Branching sweep_branching = Branching::Left;  // recursion/seed/length studies

  // Condition grids.
  std::vector<int> complexities = {3, 4, 5, 6, 7};
  std::vector<GridRowSpec> rows = default_grid_rows();
  std::vector<double> fractions = {0.0, 0.2, 0.4, 0.6, 0.8};
};

// Accuracy grid over (branching, curriculum) rows and test complexities;
// every run trains an Adam LSTM on a freshly sampled world.
ExperimentReport exp_branching_grid(const ExperimentOptions& options);

// Recursion-fraction sweep at max complexity 3.
ExperimentReport exp_recursion_sweep(const ExperimentOptions& options);

// The fraction-0 condition across many seeds; reports the distribution of
// test-correct counts.
ExperimentReport exp_seed_sweep(const ExperimentOptions& options, int n_seeds);

// Train on everything up to complexity 3, test on all of complexity 4. Dev
// is a 10% sample of the complexity-3 level kept inside the training set,
// used only for early stopping.
ExperimentReport exp_length_generalization(const ExperimentOptions& options);

// The split used by exp_length_generalization; exposed for tests.
DatasetSplit build_length_generalization_split(const WorldModel& world, Branching branching, Rng& rng);

}  // namespace compolang
