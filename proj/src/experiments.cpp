#include "compolang/experiments.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "compolang/error.hpp"

namespace compolang {

std::vector<GridRowSpec> default_grid_rows() {
  return {{Branching::Left, CurriculumPolicy::Default},
          {Branching::Right, CurriculumPolicy::Default},
          {Branching::Left, CurriculumPolicy::Slow},
          {Branching::Left, CurriculumPolicy::NoCurriculum}};
}

std::vector<GridRowSpec> full_grid_rows() {
  std::vector<GridRowSpec> rows;
  for (auto branching : {Branching::Left, Branching::Right})
    for (auto curriculum :
         {CurriculumPolicy::Default, CurriculumPolicy::Slow, CurriculumPolicy::NoCurriculum})
      rows.push_back({branching, curriculum});
  return rows;
}

namespace {

using Clock = std::chrono::steady_clock;

struct RunOutcome {
  double accuracy = 0.0;
  int test_correct = 0;
  int test_size = 0;
  std::uint64_t seed = 0;
  double seconds = 0.0;
};

TrainConfig base_config(const ExperimentOptions& options) {
  TrainConfig config;
  config.arch = Architecture::Lstm;
  config.hidden = options.hidden;
  config.embed_dim = options.embed_dim;
  config.optimizer = make_adam(options.adam_lr);
  config.max_epochs = options.max_epochs;
  config.patience = options.patience;
  config.batch_size = options.batch_size;
  config.precision = options.precision;
  return config;
}

std::uint64_t run_seed(std::uint64_t master, const std::string& cell_key, int run_index) {
  return Rng::mix(master, Rng::mix(Rng::hash_str(cell_key), static_cast<std::uint64_t>(run_index)));
}

// Executes `count` independent tasks, at most `parallel` at a time. Results
// land by index, so reports never depend on scheduling. A single-threaded
// pool skips the parallel region entirely, which leaves the nested kernel
// parallelism available to that one run.
std::vector<RunOutcome> run_pool(int count, int parallel,
                                 const std::function<RunOutcome(int)>& task) {
  const int hw = omp_get_max_threads();
  const int threads = std::min(count, parallel > 0 ? parallel : hw);
  std::vector<RunOutcome> outcomes(count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) outcomes[i] = task(i);
    return outcomes;
  }
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int i = 0; i < count; ++i) outcomes[i] = task(i);
  return outcomes;
}

void log_progress(const ExperimentOptions& options, const std::string& cell_key, int run_index,
                  const RunOutcome& outcome) {
  if (!options.verbose) return;
#pragma omp critical(compolang_progress)
  std::fprintf(stderr, "[exp] %-40s run %2d  acc=%.4f  (%d/%d correct, %.1fs)\n", cell_key.c_str(),
               run_index, outcome.accuracy, outcome.test_correct, outcome.test_size, outcome.seconds);
}

nlohmann::json options_json(const ExperimentOptions& options) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : options.rows)
    rows.push_back({{"branching", to_string(row.branching)}, {"curriculum", to_string(row.curriculum)}});
  return nlohmann::json{{"master_seed", options.master_seed},
                        {"runs", options.runs},
                        {"parallel", options.parallel},
                        {"precision", options.precision == Precision::Float32 ? "float32" : "float64"},
                        {"hidden", options.hidden},
                        {"embed_dim", options.embed_dim},
                        {"max_epochs", options.max_epochs},
                        {"patience", options.patience},
                        {"batch_size", options.batch_size},
                        {"adam_lr", options.adam_lr},
                        {"world_constraint", to_string(options.world_constraint)},
                        {"train_fraction_at_max", options.train_fraction_at_max},
                        {"dev_test_ratio", options.dev_test_ratio},
                        {"sweep_branching", to_string(options.sweep_branching)},
                        {"complexities", options.complexities},
                        {"rows", std::move(rows)},
                        {"fractions", options.fractions}};
}

struct Aggregate {
  int n_runs = 0;
  double mean = 0.0;
  double perfect_share = 0.0;
  double zero_correct_share = 0.0;
  int max_test_correct = 0;
};

Aggregate aggregate_outcomes(const std::vector<RunOutcome>& outcomes) {
  Aggregate agg;
  agg.n_runs = static_cast<int>(outcomes.size());
  for (const auto& o : outcomes) {
    agg.mean += o.accuracy;
    if (o.accuracy == 1.0) agg.perfect_share += 1;
    if (o.test_correct == 0) agg.zero_correct_share += 1;
    agg.max_test_correct = std::max(agg.max_test_correct, o.test_correct);
  }
  if (agg.n_runs > 0) {
    agg.mean /= agg.n_runs;
    agg.perfect_share /= agg.n_runs;
    agg.zero_correct_share /= agg.n_runs;
  }
  return agg;
}

// One grid/sweep run: fresh world, fresh split, seeded training.
RunOutcome execute_run(const ExperimentOptions& options, const std::string& cell_key, int run_index,
                       const std::function<DatasetSplit(const WorldModel&, Rng&)>& make_split,
                       const TrainConfig& config_template) {
  const auto started = Clock::now();
  const std::uint64_t seed = run_seed(options.master_seed, cell_key, run_index);
  Rng root(seed);

  auto world_rng = root.split(10);
  auto world = sample_world_model(4, kDefaultNames, kDefaultNouns, options.world_constraint, world_rng);
  auto split_rng = root.split(11);
  auto data = make_split(world, split_rng);

  TrainConfig config = config_template;
  config.seed = Rng::mix(seed, 12);
  const auto result = train_run(config, data);

  RunOutcome outcome;
  outcome.accuracy = result.test_accuracy;
  outcome.test_correct = result.test_correct;
  outcome.test_size = result.test_size;
  outcome.seed = seed;
  outcome.seconds = std::chrono::duration<double>(Clock::now() - started).count();
  log_progress(options, cell_key, run_index, outcome);
  return outcome;
}

void append_cell_rows(ExperimentReport& report, const std::vector<RunOutcome>& outcomes,
                      const ReportRow& prototype) {
  for (int i = 0; i < static_cast<int>(outcomes.size()); ++i) {
    ReportRow row = prototype;
    row.row_type = "run";
    row.run_index = i;
    row.seed = outcomes[i].seed;
    row.accuracy = outcomes[i].accuracy;
    row.test_correct = outcomes[i].test_correct;
    row.test_size = outcomes[i].test_size;
    report.rows.push_back(std::move(row));
  }
  const auto agg = aggregate_outcomes(outcomes);
  ReportRow row = prototype;
  row.row_type = "aggregate";
  row.n_runs = agg.n_runs;
  row.mean_accuracy = agg.mean;
  row.perfect_share = agg.perfect_share;
  report.rows.push_back(std::move(row));
}

}  // namespace

ExperimentReport exp_branching_grid(const ExperimentOptions& options) {
  if (options.runs < 1) throw ConfigError("runs per cell must be at least 1");
  const auto started = Clock::now();

  ExperimentReport report;
  report.experiment_id = "branching_grid";
  report.config = options_json(options);

  for (const auto& row_spec : options.rows) {
    for (int n : options.complexities) {
      const std::string cell_key = std::string("branching_grid/") + to_string(row_spec.branching) + "/" +
                                   to_string(row_spec.curriculum) + "/n=" + std::to_string(n);
      TrainConfig config = base_config(options);
      config.curriculum = row_spec.curriculum;

      auto make_split = [&options, &row_spec, n](const WorldModel& world, Rng& rng) {
        return build_splits(world, row_spec.branching, n, options.train_fraction_at_max,
                            options.dev_test_ratio, rng);
      };
      auto outcomes = run_pool(options.runs, options.parallel, [&](int i) {
        return execute_run(options, cell_key, i, make_split, config);
      });

      ReportRow prototype;
      prototype.branching = to_string(row_spec.branching);
      prototype.curriculum = to_string(row_spec.curriculum);
      prototype.max_complexity = n;
      append_cell_rows(report, outcomes, prototype);
    }
  }
  report.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return report;
}

ExperimentReport exp_recursion_sweep(const ExperimentOptions& options) {
  if (options.runs < 1) throw ConfigError("runs per fraction must be at least 1");
  const auto started = Clock::now();

  ExperimentReport report;
  report.experiment_id = "recursion_sweep";
  report.config = options_json(options);

  for (double fraction : options.fractions) {
    if (fraction < 0.0 || fraction >= 1.0)
      throw ConfigError("recursion fractions must lie in [0, 1)");
    const std::string cell_key =
        std::string("recursion_sweep/") + to_string(options.sweep_branching) + "/fraction=" +
        format_double(fraction);
    TrainConfig config = base_config(options);

    auto make_split = [&options, fraction](const WorldModel& world, Rng& rng) {
      return build_recursion_split(world, options.sweep_branching, fraction, rng);
    };
    auto outcomes = run_pool(options.runs, options.parallel, [&](int i) {
      return execute_run(options, cell_key, i, make_split, config);
    });

    ReportRow prototype;
    prototype.branching = to_string(options.sweep_branching);
    prototype.curriculum = to_string(CurriculumPolicy::Default);
    prototype.max_complexity = 3;
    prototype.fraction = fraction;
    append_cell_rows(report, outcomes, prototype);
  }
  report.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return report;
}

ExperimentReport exp_seed_sweep(const ExperimentOptions& options, int n_seeds) {
  if (n_seeds < 1) throw ConfigError("seed sweep needs at least one seed");
  const auto started = Clock::now();

  ExperimentReport report;
  report.experiment_id = "seed_sweep";
  report.config = options_json(options);
  report.config["n_seeds"] = n_seeds;

  const std::string cell_key =
      std::string("seed_sweep/") + to_string(options.sweep_branching) + "/fraction=0";
  TrainConfig config = base_config(options);

  auto make_split = [&options](const WorldModel& world, Rng& rng) {
    return build_recursion_split(world, options.sweep_branching, 0.0, rng);
  };
  auto outcomes = run_pool(n_seeds, options.parallel, [&](int i) {
    return execute_run(options, cell_key, i, make_split, config);
  });

  ReportRow prototype;
  prototype.branching = to_string(options.sweep_branching);
  prototype.curriculum = to_string(CurriculumPolicy::Default);
  prototype.max_complexity = 3;
  prototype.fraction = 0.0;
  for (int i = 0; i < static_cast<int>(outcomes.size()); ++i) {
    ReportRow row = prototype;
    row.row_type = "run";
    row.run_index = i;
    row.seed = outcomes[i].seed;
    row.accuracy = outcomes[i].accuracy;
    row.test_correct = outcomes[i].test_correct;
    row.test_size = outcomes[i].test_size;
    report.rows.push_back(std::move(row));
  }
  const auto agg = aggregate_outcomes(outcomes);
  ReportRow row = prototype;
  row.row_type = "aggregate";
  row.n_runs = agg.n_runs;
  row.mean_accuracy = agg.mean;
  row.perfect_share = agg.perfect_share;
  row.zero_correct_share = agg.zero_correct_share;
  row.max_test_correct = agg.max_test_correct;
  report.rows.push_back(std::move(row));

  report.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return report;
}

DatasetSplit build_length_generalization_split(const WorldModel& world, Branching branching, Rng& rng) {
  DatasetSplit split;
  split.max_complexity = 3;  // training regime; the test level sits above it
  split.branching = branching;
  split.num_classes = world.universe_size();
  split.vocab = Vocabulary::for_world(world);

  auto push = [&](std::vector<LabeledExample>& dst, const Expression& expr) {
    LabeledExample ex;
    ex.tokens = surface(expr, branching);
    ex.token_ids = encode(ex.tokens, split.vocab);
    ex.label = interpret(expr, world);
    ex.complexity = expr.complexity();
    dst.push_back(std::move(ex));
  };

  for (int c = 1; c <= 3; ++c)
    for (const auto& expr : enumerate_expressions(c, world)) push(split.train, expr);

  // Dev: 10% of the complexity-3 level, duplicated from train (early
  // stopping signal only; the model legitimately trains on these).
  auto top = enumerate_expressions(3, world);
  std::vector<int> order(top.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  rng.shuffle(order);
  const auto n_dev = static_cast<std::size_t>(0.1 * static_cast<double>(top.size()));
  for (std::size_t i = 0; i < n_dev; ++i) push(split.dev, top[order[i]]);

  for (const auto& expr : enumerate_expressions(4, world)) push(split.test, expr);
  return split;
}

ExperimentReport exp_length_generalization(const ExperimentOptions& options) {
  if (options.runs < 1) throw ConfigError("runs must be at least 1");
  const auto started = Clock::now();

  ExperimentReport report;
  report.experiment_id = "length_generalization";
  report.config = options_json(options);

  const std::string cell_key =
      std::string("length_generalization/") + to_string(options.sweep_branching);
  TrainConfig config = base_config(options);

  auto make_split = [&options](const WorldModel& world, Rng& rng) {
    return build_length_generalization_split(world, options.sweep_branching, rng);
  };
  auto outcomes = run_pool(options.runs, options.parallel, [&](int i) {
    return execute_run(options, cell_key, i, make_split, config);
  });

  ReportRow prototype;
  prototype.branching = to_string(options.sweep_branching);
  prototype.curriculum = to_string(CurriculumPolicy::Default);
  prototype.max_complexity = 3;
  append_cell_rows(report, outcomes, prototype);

  report.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return report;
}

}  // namespace compolang
