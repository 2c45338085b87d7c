#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "compolang/language.hpp"
#include "compolang/rng.hpp"

namespace compolang {

// Token <-> id table. Ids are contiguous from 0 in declaration order:
// names, nouns, then 's / the / of.
class Vocabulary {
 public:
  explicit Vocabulary(std::vector<std::string> tokens);
  static Vocabulary for_world(const WorldModel& world);

  int size() const { return static_cast<int>(tokens_.size()); }
  int id(const std::string& token) const;
  const std::string& token(int id) const;
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

std::vector<int> encode(const TokenSequence& tokens, const Vocabulary& vocab);

struct LabeledExample {
  TokenSequence tokens;
  std::vector<int> token_ids;
  Individual label = 0;
  int complexity = 0;
};

struct DatasetSplit {
  std::vector<LabeledExample> train, dev, test;
  int max_complexity = 0;
  Branching branching = Branching::Left;
  int num_classes = 0;
  Vocabulary vocab{std::vector<std::string>{}};
};

// Everything below max_complexity goes to train; the max level is shuffled
// and divided train / dev / test. Rounding: floor for the train share, then
// floor(dev_test_ratio * remainder) for dev, the rest for test.
DatasetSplit build_splits(const WorldModel& world, Branching branching, int max_complexity,
                          double train_fraction_at_max, double dev_test_ratio, Rng& rng);

// The max_complexity=3 variant used by the recursion-fraction sweep; dev and
// test split the held-out complexity-3 items evenly. fraction must be < 1.
DatasetSplit build_recursion_split(const WorldModel& world, Branching branching, double fraction,
                                   Rng& rng);

// JSON-lines export/import: one record per example with fields
// tokens (array of strings), label (int), complexity (int), split (string).
void write_jsonl(const DatasetSplit& split, const std::filesystem::path& path);
DatasetSplit read_jsonl(const std::filesystem::path& path, const Vocabulary& vocab);

}  // namespace compolang
