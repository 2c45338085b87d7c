#include "compolang/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "compolang/dataset.hpp"
#include "compolang/error.hpp"
#include "compolang/experiments.hpp"
#include "compolang/net.hpp"
#include "compolang/report.hpp"
#include "compolang/trainer.hpp"

namespace compolang {
namespace {

const std::map<std::string, Branching> kBranchingNames{{"left", Branching::Left},
                                                       {"right", Branching::Right}};
const std::map<std::string, FunctionConstraint> kConstraintNames{
    {"any_total", FunctionConstraint::AnyTotal},
    {"permutation", FunctionConstraint::Permutation},
    {"inverse_pairs", FunctionConstraint::InversePairs}};
const std::map<std::string, CurriculumPolicy> kCurriculumNames{
    {"default", CurriculumPolicy::Default},
    {"slow", CurriculumPolicy::Slow},
    {"none", CurriculumPolicy::NoCurriculum}};
const std::map<std::string, Architecture> kArchNames{{"lstm", Architecture::Lstm},
                                                     {"rnn", Architecture::VanillaRnn}};
const std::map<std::string, Precision> kPrecisionNames{{"float32", Precision::Float32},
                                                       {"float64", Precision::Float64}};

std::uint64_t default_master_seed() {
  if (const char* env = std::getenv("COMPOLANG_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("COMPOLANG_SEED is not a valid seed: ") + env);
    }
  }
  return 1;
}

// A JSON object of long-option names (dashes or underscores) applied as
// defaults; explicit command-line flags win.
std::vector<std::string> expand_config_file(const std::vector<std::string>& args) {
  std::optional<std::string> config_path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a file path");
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!config_path) return rest;
  if (rest.empty()) throw ConfigError("--config requires a subcommand");

  std::ifstream in(*config_path);
  if (!in) throw ConfigError("cannot open config file: " + *config_path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(*config_path + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(*config_path + ": config must be a JSON object");

  // Insert config-derived flags right after the subcommand name so that any
  // explicit flag that follows overrides them.
  std::vector<std::string> expanded;
  expanded.push_back(rest.front());
  for (const auto& [key, value] : doc.items()) {
    std::string flag = key;
    for (auto& ch : flag)
      if (ch == '_') ch = '-';
    expanded.push_back("--" + flag);
    if (value.is_boolean()) {
      if (!value.get<bool>()) expanded.back() = "--no-" + flag;
      continue;
    }
    expanded.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  expanded.insert(expanded.end(), rest.begin() + 1, rest.end());
  return expanded;
}

struct WorldFlags {
  std::uint64_t seed = default_master_seed();
  FunctionConstraint constraint = FunctionConstraint::AnyTotal;
  Branching branching = Branching::Left;
  int max_complexity = 3;
  double train_fraction = 0.8;
  double dev_test_ratio = 0.5;
};

void add_world_flags(CLI::App* cmd, WorldFlags& flags) {
  cmd->add_option("--seed", flags.seed, "Master seed (env COMPOLANG_SEED is the fallback)");
  cmd->add_option("--constraint", flags.constraint, "Noun function sampling constraint")
      ->transform(CLI::CheckedTransformer(kConstraintNames, CLI::ignore_case));
  cmd->add_option("--branching", flags.branching, "Surface branching direction")
      ->transform(CLI::CheckedTransformer(kBranchingNames, CLI::ignore_case));
  cmd->add_option("--max-complexity", flags.max_complexity, "Highest content-word count");
  cmd->add_option("--train-fraction", flags.train_fraction,
                  "Share of the top complexity level kept for training");
  cmd->add_option("--dev-test-ratio", flags.dev_test_ratio, "Dev share of the held-out remainder");
}

DatasetSplit build_from_flags(const WorldFlags& flags) {
  Rng root(flags.seed);
  auto world_rng = root.split(10);
  auto world = sample_world_model(4, kDefaultNames, kDefaultNouns, flags.constraint, world_rng);
  auto split_rng = root.split(11);
  return build_splits(world, flags.branching, flags.max_complexity, flags.train_fraction,
                      flags.dev_test_ratio, split_rng);
}

void write_sidecar(const std::string& path, const nlohmann::json& config) {
  std::ofstream out(path + ".config.json");
  if (!out) throw IoError("cannot open for writing: " + path + ".config.json");
  out << config.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_gen(const WorldFlags& flags, const std::string& out_path) {
  auto split = build_from_flags(flags);
  write_jsonl(split, out_path);
  write_sidecar(out_path, {{"command", "gen"},
                           {"seed", flags.seed},
                           {"constraint", to_string(flags.constraint)},
                           {"branching", to_string(flags.branching)},
                           {"max_complexity", flags.max_complexity},
                           {"train_fraction", flags.train_fraction},
                           {"dev_test_ratio", flags.dev_test_ratio}});
  std::fprintf(stderr, "wrote %zu records to %s\n",
               split.train.size() + split.dev.size() + split.test.size(), out_path.c_str());
  return 0;
}

struct TrainFlags {
  WorldFlags world;
  TrainConfig config;
  std::string optimizer = "adam";
  double lr = -1;  // sentinel: optimizer default
  std::string data_path, out_path, trace_path, checkpoint_path;
};

int cmd_train(const TrainFlags& flags) {
  TrainConfig config = flags.config;
  if (flags.optimizer == "adam")
    config.optimizer = make_adam(flags.lr > 0 ? flags.lr : 1e-3);
  else
    config.optimizer = make_sgd(flags.lr > 0 ? flags.lr : 0.1);
  config.seed = Rng::mix(flags.world.seed, 12);

  DatasetSplit data;
  if (!flags.data_path.empty()) {
    auto world = example_universe();  // default symbol set for the vocabulary
    data = read_jsonl(flags.data_path, Vocabulary::for_world(world));
  } else {
    data = build_from_flags(flags.world);
  }

  Parameters<double> checkpoint;
  const auto result = train_run_checkpoint(config, data, &checkpoint);

  const auto result_json = to_json(result, config);
  if (flags.out_path.empty()) {
    std::printf("%s\n", result_json.c_str());
  } else {
    std::ofstream out(flags.out_path);
    if (!out) throw IoError("cannot open for writing: " + flags.out_path);
    out << result_json << '\n';
  }
  if (!flags.trace_path.empty()) write_trace_csv(result, flags.trace_path);
  if (!flags.checkpoint_path.empty()) save_checkpoint(checkpoint, flags.checkpoint_path);
  std::fprintf(stderr, "test accuracy %.4f (%d/%d), stopped after epoch %d\n", result.test_accuracy,
               result.test_correct, result.test_size, result.stopping_epoch);
  return 0;
}

struct GradCheckFlags {
  std::string arch = "both";
  int seeds = 10;
  double epsilon = 1e-5;
  double threshold = 1e-4;
  GradCheckDims dims;
};

int cmd_grad_check(const GradCheckFlags& flags) {
  std::vector<Architecture> archs;
  if (flags.arch == "both") {
    archs = {Architecture::Lstm, Architecture::VanillaRnn};
  } else {
    archs = {kArchNames.at(flags.arch)};
  }
  double worst = 0;
  for (auto arch : archs) {
    for (int s = 0; s < flags.seeds; ++s) {
      GradCheckDims dims = flags.dims;
      dims.len = 1 + (s % 9);  // sweep lengths 1..9 across seeds
      const double err = grad_check(arch, dims, 1000 + static_cast<std::uint64_t>(s), flags.epsilon);
      worst = std::max(worst, err);
      std::printf("%s seed=%d len=%d max_rel_err=%.3e\n", to_string(arch), s, dims.len, err);
    }
  }
  std::printf("worst max_rel_err=%.3e threshold=%.3e -> %s\n", worst, flags.threshold,
              worst < flags.threshold ? "ok" : "FAIL");
  return worst < flags.threshold ? 0 : 1;
}

struct ExpFlags {
  ExperimentOptions options;
  std::string out_path;
  std::string rows_spec = "left:default,right:default,left:slow,left:none";
  int n_seeds = 100;
};

std::vector<GridRowSpec> parse_rows(const std::string& spec) {
  if (spec == "all") return full_grid_rows();
  std::vector<GridRowSpec> rows;
  std::size_t at = 0;
  while (at <= spec.size()) {
    auto comma = spec.find(',', at);
    if (comma == std::string::npos) comma = spec.size();
    const auto item = spec.substr(at, comma - at);
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ConfigError("row spec entries look like 'left:default': " + item);
    const auto branching = item.substr(0, colon);
    const auto curriculum = item.substr(colon + 1);
    if (!kBranchingNames.count(branching)) throw ConfigError("unknown branching: " + branching);
    if (!kCurriculumNames.count(curriculum)) throw ConfigError("unknown curriculum: " + curriculum);
    rows.push_back({kBranchingNames.at(branching), kCurriculumNames.at(curriculum)});
    at = comma + 1;
  }
  if (rows.empty()) throw ConfigError("row spec must not be empty");
  return rows;
}

void add_exp_flags(CLI::App* cmd, ExpFlags& flags) {
  flags.options.master_seed = default_master_seed();
  cmd->add_option("--seed", flags.options.master_seed, "Master seed");
  cmd->add_option("--runs", flags.options.runs, "Training runs per condition");
  cmd->add_option("--parallel", flags.options.parallel,
                  "Concurrent runs (0 = hardware parallelism)");
  cmd->add_option("--precision", flags.options.precision, "Training precision")
      ->transform(CLI::CheckedTransformer(kPrecisionNames, CLI::ignore_case));
  cmd->add_option("--hidden", flags.options.hidden, "Hidden units");
  cmd->add_option("--embed-dim", flags.options.embed_dim, "Embedding width");
  cmd->add_option("--max-epochs", flags.options.max_epochs, "Epoch cap per run");
  cmd->add_option("--patience", flags.options.patience, "Early-stopping patience");
  cmd->add_option("--batch-size", flags.options.batch_size, "Batch size");
  cmd->add_option("--lr", flags.options.adam_lr, "Adam learning rate");
  cmd->add_option("--constraint", flags.options.world_constraint, "Noun function constraint")
      ->transform(CLI::CheckedTransformer(kConstraintNames, CLI::ignore_case));
  cmd->add_flag("--quiet,!--verbose", [&flags](std::int64_t count) { flags.options.verbose = count <= 0; },
                "Suppress per-run progress lines");
  cmd->add_option("--out", flags.out_path, "Report CSV path")->required();
}

int finish_experiment(ExperimentReport report, const std::string& out_path) {
  write_report(report, out_path);
  std::fprintf(stderr, "wrote %s (%zu rows, %.1fs)\n", out_path.c_str(), report.rows.size(),
               report.wall_seconds);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

int run_cli(const std::vector<std::string>& raw_args) {
  CLI::App app{"Toy interpreted languages and recurrent classifiers trained from scratch"};
  app.require_subcommand(1);

  // gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a labeled dataset as JSON lines");
  WorldFlags gen_flags;
  std::string gen_out;
  add_world_flags(gen, gen_flags);
  gen->add_option("--out", gen_out, "Output JSONL path")->required();

  // train --------------------------------------------------------------
  auto* train = app.add_subcommand("train", "One seeded training run");
  TrainFlags train_flags;
  add_world_flags(train, train_flags.world);
  train->add_option("--arch", train_flags.config.arch, "Network architecture")
      ->transform(CLI::CheckedTransformer(kArchNames, CLI::ignore_case));
  train->add_option("--curriculum", train_flags.config.curriculum, "Admission schedule")
      ->transform(CLI::CheckedTransformer(kCurriculumNames, CLI::ignore_case));
  train->add_option("--optimizer", train_flags.optimizer, "adam or sgd")
      ->check(CLI::IsMember({"adam", "sgd"}));
  train->add_option("--lr", train_flags.lr, "Learning rate (defaults: adam 1e-3, sgd 0.1)");
  train->add_option("--hidden", train_flags.config.hidden, "Hidden units");
  train->add_option("--embed-dim", train_flags.config.embed_dim, "Embedding width");
  train->add_option("--epochs", train_flags.config.max_epochs, "Epoch cap");
  train->add_option("--patience", train_flags.config.patience, "Early-stopping patience");
  train->add_option("--batch-size", train_flags.config.batch_size, "Batch size");
  train->add_option("--precision", train_flags.config.precision, "float32 or float64")
      ->transform(CLI::CheckedTransformer(kPrecisionNames, CLI::ignore_case));
  train->add_option("--grad-clip", train_flags.config.grad_clip, "Max gradient norm (0 = off)");
  train->add_option("--data", train_flags.data_path, "Train from an existing JSONL dataset");
  train->add_option("--out", train_flags.out_path, "Run result JSON path (stdout if omitted)");
  train->add_option("--trace", train_flags.trace_path, "Per-epoch CSV trace path");
  train->add_option("--checkpoint", train_flags.checkpoint_path, "Best-dev parameter checkpoint path");

  // grad-check ----------------------------------------------------------
  auto* gc = app.add_subcommand("grad-check", "Verify gradients against finite differences");
  GradCheckFlags gc_flags;
  gc->add_option("--arch", gc_flags.arch, "lstm, rnn, or both")
      ->check(CLI::IsMember({"lstm", "rnn", "both"}));
  gc->add_option("--seeds", gc_flags.seeds, "Number of seeded checks per architecture");
  gc->add_option("--epsilon", gc_flags.epsilon, "Central difference step");
  gc->add_option("--threshold", gc_flags.threshold, "Pass threshold on the max relative error");
  gc->add_option("--vocab", gc_flags.dims.vocab, "Vocabulary size");
  gc->add_option("--embed-dim", gc_flags.dims.embed, "Embedding width");
  gc->add_option("--hidden", gc_flags.dims.hidden, "Hidden units");
  gc->add_option("--classes", gc_flags.dims.classes, "Output classes");
  gc->add_option("--batch", gc_flags.dims.batch, "Batch size");

  // experiments ----------------------------------------------------------
  auto* t4 = app.add_subcommand("exp-table4", "Branching x curriculum accuracy grid");
  ExpFlags t4_flags;
  add_exp_flags(t4, t4_flags);
  t4->add_option("--rows", t4_flags.rows_spec,
                 "Comma list of branching:curriculum rows, or 'all'");
  t4->add_option("--complexities", t4_flags.options.complexities, "Test complexity levels")
      ->delimiter(',');

  auto* t5 = app.add_subcommand("exp-table5", "Recursion-fraction sweep at complexity 3");
  ExpFlags t5_flags;
  add_exp_flags(t5, t5_flags);
  t5->add_option("--fractions", t5_flags.options.fractions, "Complexity-3 shares kept in training")
      ->delimiter(',');
  t5->add_option("--branching", t5_flags.options.sweep_branching, "Surface branching")
      ->transform(CLI::CheckedTransformer(kBranchingNames, CLI::ignore_case));

  auto* sweep = app.add_subcommand("exp-seed-sweep", "Fraction-0 condition across many seeds");
  ExpFlags sweep_flags;
  add_exp_flags(sweep, sweep_flags);
  sweep->add_option("--n-seeds", sweep_flags.n_seeds, "Number of seeded runs");
  sweep->add_option("--branching", sweep_flags.options.sweep_branching, "Surface branching")
      ->transform(CLI::CheckedTransformer(kBranchingNames, CLI::ignore_case));

  auto* lg = app.add_subcommand("exp-length-gen", "Train to complexity 3, test on complexity 4");
  ExpFlags lg_flags;
  add_exp_flags(lg, lg_flags);
  lg->add_option("--branching", lg_flags.options.sweep_branching, "Surface branching")
      ->transform(CLI::CheckedTransformer(kBranchingNames, CLI::ignore_case));

  try {
    auto args = expand_config_file(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);

    if (gen->parsed()) return cmd_gen(gen_flags, gen_out);
    if (train->parsed()) return cmd_train(train_flags);
    if (gc->parsed()) return cmd_grad_check(gc_flags);
    if (t4->parsed()) {
      t4_flags.options.rows = parse_rows(t4_flags.rows_spec);
      return finish_experiment(exp_branching_grid(t4_flags.options), t4_flags.out_path);
    }
    if (t5->parsed()) return finish_experiment(exp_recursion_sweep(t5_flags.options), t5_flags.out_path);
    if (sweep->parsed())
      return finish_experiment(exp_seed_sweep(sweep_flags.options, sweep_flags.n_seeds),
                               sweep_flags.out_path);
    if (lg->parsed())
      return finish_experiment(exp_length_generalization(lg_flags.options), lg_flags.out_path);
    std::fprintf(stderr, "no subcommand given\n");
    return 2;
  } catch (const CLI::CallForHelp& e) {
    std::printf("%s", app.help().c_str());
    return 0;
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace compolang
