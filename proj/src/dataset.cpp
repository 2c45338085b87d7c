#include "compolang/dataset.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "compolang/error.hpp"

namespace compolang {

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  for (int i = 0; i < static_cast<int>(tokens_.size()); ++i) {
    if (!ids_.emplace(tokens_[i], i).second) throw ConfigError("duplicate token: " + tokens_[i]);
  }
}

Vocabulary Vocabulary::for_world(const WorldModel& world) {
  std::vector<std::string> tokens;
  tokens.reserve(world.names().size() + world.nouns().size() + 3);
  tokens.insert(tokens.end(), world.names().begin(), world.names().end());
  tokens.insert(tokens.end(), world.nouns().begin(), world.nouns().end());
  tokens.push_back(kPossessive);
  tokens.push_back(kThe);
  tokens.push_back(kOf);
  return Vocabulary(std::move(tokens));
}

int Vocabulary::id(const std::string& token) const {
  auto it = ids_.find(token);
  if (it == ids_.end()) throw EncodingError("token not in vocabulary: " + token);
  return it->second;
}

const std::string& Vocabulary::token(int id) const {
  if (id < 0 || id >= size()) throw EncodingError("token id out of range: " + std::to_string(id));
  return tokens_[id];
}

std::vector<int> encode(const TokenSequence& tokens, const Vocabulary& vocab) {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(vocab.id(t));
  return ids;
}

namespace {

LabeledExample make_example(const Expression& expr, const WorldModel& world, Branching branching,
                            const Vocabulary& vocab) {
  LabeledExample ex;
  ex.tokens = surface(expr, branching);
  ex.token_ids = encode(ex.tokens, vocab);
  ex.label = interpret(expr, world);
  ex.complexity = expr.complexity();
  return ex;
}

}  // namespace

DatasetSplit build_splits(const WorldModel& world, Branching branching, int max_complexity,
                          double train_fraction_at_max, double dev_test_ratio, Rng& rng) {
  if (max_complexity < 2) throw ConfigError("max complexity must be at least 2");
  if (train_fraction_at_max < 0.0 || train_fraction_at_max > 1.0)
    throw ConfigError("train fraction at max complexity must lie in [0, 1]");
  if (dev_test_ratio < 0.0 || dev_test_ratio > 1.0)
    throw ConfigError("dev/test ratio must lie in [0, 1]");

  DatasetSplit split;
  split.max_complexity = max_complexity;
  split.branching = branching;
  split.num_classes = world.universe_size();
  split.vocab = Vocabulary::for_world(world);

  for (int c = 1; c < max_complexity; ++c)
    for (const auto& expr : enumerate_expressions(c, world))
      split.train.push_back(make_example(expr, world, branching, split.vocab));

  auto top = enumerate_expressions(max_complexity, world);
  std::vector<int> order(top.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  rng.shuffle(order);

  const auto n_train = static_cast<std::size_t>(train_fraction_at_max * static_cast<double>(top.size()));
  const std::size_t remainder = top.size() - n_train;
  const auto n_dev = static_cast<std::size_t>(dev_test_ratio * static_cast<double>(remainder));

  for (std::size_t i = 0; i < top.size(); ++i) {
    auto ex = make_example(top[order[i]], world, branching, split.vocab);
    if (i < n_train)
      split.train.push_back(std::move(ex));
    else if (i < n_train + n_dev)
      split.dev.push_back(std::move(ex));
    else
      split.test.push_back(std::move(ex));
  }
  return split;
}

DatasetSplit build_recursion_split(const WorldModel& world, Branching branching, double fraction,
                                   Rng& rng) {
  if (fraction >= 1.0) throw ConfigError("recursion fraction 1 would leave the test set empty");
  return build_splits(world, branching, 3, fraction, 0.5, rng);
}

// ---------------------------------------------------------------------------
// JSON-lines round trip
// ---------------------------------------------------------------------------

void write_jsonl(const DatasetSplit& split, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  auto dump = [&out](const std::vector<LabeledExample>& part, const char* tag) {
    for (const auto& ex : part) {
      nlohmann::json rec{
          {"tokens", ex.tokens}, {"label", ex.label}, {"complexity", ex.complexity}, {"split", tag}};
      out << rec.dump() << '\n';
    }
  };
  dump(split.train, "train");
  dump(split.dev, "dev");
  dump(split.test, "test");
  if (!out) throw IoError("write failed: " + path.string());
}

DatasetSplit read_jsonl(const std::filesystem::path& path, const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());

  DatasetSplit split;
  split.vocab = vocab;
  bool saw_right_marker = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    LabeledExample ex;
    ex.tokens = rec.at("tokens").get<TokenSequence>();
    ex.label = rec.at("label").get<int>();
    ex.complexity = rec.at("complexity").get<int>();
    ex.token_ids = encode(ex.tokens, vocab);
    for (const auto& t : ex.tokens)
      if (t == kThe || t == kOf) saw_right_marker = true;

    split.max_complexity = std::max(split.max_complexity, ex.complexity);
    split.num_classes = std::max(split.num_classes, ex.label + 1);
    const auto tag = rec.at("split").get<std::string>();
    if (tag == "train")
      split.train.push_back(std::move(ex));
    else if (tag == "dev")
      split.dev.push_back(std::move(ex));
    else if (tag == "test")
      split.test.push_back(std::move(ex));
    else
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": unknown split tag '" + tag + "'");
  }
  split.branching = saw_right_marker ? Branching::Right : Branching::Left;
  return split;
}

}  // namespace compolang
