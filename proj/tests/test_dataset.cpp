#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <set>
#include <string>

#include "compolang/dataset.hpp"
#include "compolang/error.hpp"

using namespace compolang;

namespace {

std::string key_of(const LabeledExample& ex) {
  std::string k;
  for (const auto& t : ex.tokens) k += t + "|";
  return k;
}

std::set<std::string> keys_of(const std::vector<LabeledExample>& part) {
  std::set<std::string> keys;
  for (const auto& ex : part) keys.insert(key_of(ex));
  return keys;
}

}  // namespace

TEST_CASE("default vocabulary ordering and encoding") {
  const auto world = example_universe();
  const auto vocab = Vocabulary::for_world(world);
  REQUIRE(vocab.size() == 11);
  CHECK(vocab.id("Ann") == 0);
  CHECK(vocab.id("George") == 3);
  CHECK(vocab.id("child") == 4);
  CHECK(vocab.id("enemy") == 7);
  CHECK(vocab.id("'s") == 8);
  CHECK(vocab.id("the") == 9);
  CHECK(vocab.id("of") == 10);

  CHECK(encode({"Ann", "'s", "child"}, vocab) == std::vector<int>{0, 8, 4});
  CHECK(encode({"the", "child", "of", "Ann"}, vocab) == std::vector<int>{9, 4, 10, 0});
  CHECK(encode({}, vocab).empty());
  CHECK_THROWS_AS(encode({"Ann", "lawyer"}, vocab), EncodingError);
  CHECK_THROWS_AS(vocab.token(11), EncodingError);
  CHECK(vocab.token(8) == "'s");
}

TEST_CASE("split construction at complexity 3 with the default proportions") {
  const auto world = example_universe();
  auto rng = Rng(7);
  const auto split = build_splits(world, Branching::Left, 3, 0.8, 0.5, rng);

  CHECK(split.train.size() == 4 + 16 + 51);
  CHECK(split.dev.size() == 6);
  CHECK(split.test.size() == 7);
  CHECK(split.max_complexity == 3);
  CHECK(split.num_classes == 4);

  // All non-maximal examples are in train; dev/test hold only the top level.
  int below_max = 0;
  for (const auto& ex : split.train) {
    CHECK(ex.complexity <= 3);
    if (ex.complexity < 3) ++below_max;
  }
  CHECK(below_max == 20);
  for (const auto& ex : split.dev) CHECK(ex.complexity == 3);
  for (const auto& ex : split.test) CHECK(ex.complexity == 3);
}

TEST_CASE("splits partition the corpus without leakage") {
  const auto world = example_universe();
  auto rng = Rng(3);
  const auto split = build_splits(world, Branching::Right, 4, 0.8, 0.5, rng);

  const auto train_keys = keys_of(split.train);
  const auto dev_keys = keys_of(split.dev);
  const auto test_keys = keys_of(split.test);
  CHECK(train_keys.size() == split.train.size());

  for (const auto& k : dev_keys) CHECK(!train_keys.count(k));
  for (const auto& k : test_keys) {
    CHECK(!train_keys.count(k));
    CHECK(!dev_keys.count(k));
  }

  std::size_t expected_total = 0;
  for (int c = 1; c <= 4; ++c) expected_total += enumerate_expressions(c, world).size();
  CHECK(train_keys.size() + dev_keys.size() + test_keys.size() == expected_total);
}

TEST_CASE("every stored label agrees with the interpreter") {
  const auto world = example_universe();
  auto rng = Rng(11);
  const auto split = build_splits(world, Branching::Left, 3, 0.5, 0.5, rng);
  auto check_part = [&](const std::vector<LabeledExample>& part) {
    for (const auto& ex : part) {
      const auto expr = parse(ex.tokens, Branching::Left, world);
      CHECK(ex.label == interpret(expr, world));
      CHECK(ex.token_ids == encode(ex.tokens, split.vocab));
      CHECK(ex.complexity == expr.complexity());
    }
  };
  check_part(split.train);
  check_part(split.dev);
  check_part(split.test);
}

TEST_CASE("split construction is deterministic under a fixed seed") {
  const auto world = example_universe();
  auto rng1 = Rng(99);
  auto rng2 = Rng(99);
  const auto a = build_splits(world, Branching::Left, 3, 0.8, 0.5, rng1);
  const auto b = build_splits(world, Branching::Left, 3, 0.8, 0.5, rng2);
  REQUIRE(a.test.size() == b.test.size());
  for (std::size_t i = 0; i < a.test.size(); ++i) CHECK(a.test[i].tokens == b.test[i].tokens);
  for (std::size_t i = 0; i < a.train.size(); ++i) CHECK(a.train[i].tokens == b.train[i].tokens);
}

TEST_CASE("recursion splits cover the sweep fractions") {
  const auto world = example_universe();

  auto rng = Rng(1);
  const auto at80 = build_recursion_split(world, Branching::Left, 0.8, rng);
  int recursive_in_train = 0;
  for (const auto& ex : at80.train)
    if (ex.complexity == 3) ++recursive_in_train;
  CHECK(recursive_in_train == 51);

  auto rng0 = Rng(2);
  const auto at0 = build_recursion_split(world, Branching::Left, 0.0, rng0);
  CHECK(at0.train.size() == 20);
  CHECK(at0.dev.size() == 32);
  CHECK(at0.test.size() == 32);
  for (const auto& ex : at0.train) CHECK(ex.complexity < 3);

  auto rng_bad = Rng(3);
  CHECK_THROWS_AS(build_recursion_split(world, Branching::Left, 1.0, rng_bad), ConfigError);
}

TEST_CASE("fractions outside the unit interval are rejected") {
  const auto world = example_universe();
  auto rng = Rng(4);
  CHECK_THROWS_AS(build_splits(world, Branching::Left, 3, -0.1, 0.5, rng), ConfigError);
  CHECK_THROWS_AS(build_splits(world, Branching::Left, 3, 0.5, 1.5, rng), ConfigError);
  CHECK_THROWS_AS(build_splits(world, Branching::Left, 1, 0.5, 0.5, rng), ConfigError);
}

TEST_CASE("a full-depth corpus counts 21844 examples") {
  const auto world = example_universe();
  auto rng = Rng(5);
  const auto split = build_splits(world, Branching::Left, 7, 0.8, 0.5, rng);
  CHECK(split.train.size() + split.dev.size() + split.test.size() == 21844);
}

TEST_CASE("JSONL export and import round trip") {
  const auto world = example_universe();
  auto rng = Rng(21);
  const auto split = build_splits(world, Branching::Right, 3, 0.8, 0.5, rng);

  const auto path = std::filesystem::temp_directory_path() / "compolang_split_test.jsonl";
  write_jsonl(split, path);
  const auto loaded = read_jsonl(path, split.vocab);
  std::filesystem::remove(path);

  CHECK(loaded.branching == Branching::Right);
  CHECK(loaded.max_complexity == 3);
  CHECK(loaded.num_classes == 4);
  REQUIRE(loaded.train.size() == split.train.size());
  REQUIRE(loaded.dev.size() == split.dev.size());
  REQUIRE(loaded.test.size() == split.test.size());
  for (std::size_t i = 0; i < split.train.size(); ++i) {
    CHECK(loaded.train[i].tokens == split.train[i].tokens);
    CHECK(loaded.train[i].label == split.train[i].label);
    CHECK(loaded.train[i].token_ids == split.train[i].token_ids);
  }
}
