#pragma once

#include <memory>
#include <string>
#include <vector>

#include "compolang/rng.hpp"

namespace compolang {

// Individuals are identifiers in [0, universe_size).
using Individual = int;

enum class Branching { Left, Right };

// How noun denotations are drawn when sampling a world.
//   AnyTotal     - each noun is an independent uniform draw over all total
//                  functions on the universe.
//   Permutation  - each noun is an independent uniform bijection.
//   InversePairs - consecutive noun pairs (0,1), (2,3), ... are a random
//                  bijection and its inverse; an unpaired trailing noun is a
//                  bijection on its own.
enum class FunctionConstraint { AnyTotal, Permutation, InversePairs };

const char* to_string(Branching b);
const char* to_string(FunctionConstraint c);

// A universe of individuals, a name for each of them, and one total function
// per relational noun. Immutable after construction.
class WorldModel {
 public:
  WorldModel(int universe_size, std::vector<std::string> names, std::vector<std::string> nouns,
             std::vector<Individual> name_denotation, std::vector<std::vector<Individual>> noun_denotation);

  int universe_size() const { return universe_size_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::string>& nouns() const { return nouns_; }

  bool is_name(const std::string& symbol) const;
  bool is_noun(const std::string& symbol) const;

  Individual name_denotation(const std::string& name) const;
  Individual apply_noun(const std::string& noun, Individual arg) const;

  const std::vector<Individual>& noun_function(const std::string& noun) const;

 private:
  int index_of_name(const std::string& name) const;
  int index_of_noun(const std::string& noun) const;

  int universe_size_;
  std::vector<std::string> names_;
  std::vector<std::string> nouns_;
  std::vector<Individual> name_denotation_;                // by name index
  std::vector<std::vector<Individual>> noun_denotation_;   // [noun index][individual]
};

extern const std::vector<std::string> kDefaultNames;   // Ann Bill Dick George
extern const std::vector<std::string> kDefaultNouns;   // child parent friend enemy
extern const std::string kPossessive;                  // 's
extern const std::string kThe;
extern const std::string kOf;

// The fixed demonstration universe: parent = {A->B, B->G, D->A, G->D},
// child = parent^-1, friend = {A<->D, B<->G}, enemy = {A<->G, B<->D}.
WorldModel example_universe();

WorldModel sample_world_model(int universe_size, std::vector<std::string> names,
                              std::vector<std::string> nouns, FunctionConstraint constraint, Rng& rng);

// A noun phrase: either a bare name or a noun applied to an inner phrase.
// Value type with immutable shared structure; copies are O(1).
class Expression {
 public:
  static Expression leaf(std::string name);
  static Expression apply(std::string noun, Expression inner);

  bool is_leaf() const { return node_->inner == nullptr; }
  // The name for a leaf, the outermost noun otherwise.
  const std::string& symbol() const { return node_->symbol; }
  Expression inner() const;

  // Content-word count: 1 for a leaf, 1 + complexity(inner) otherwise.
  int complexity() const;

  bool operator==(const Expression& other) const;

 private:
  struct Node {
    std::string symbol;
    std::shared_ptr<const Node> inner;
  };
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using TokenSequence = std::vector<std::string>;

Individual interpret(const Expression& expr, const WorldModel& world);

// All expressions of exactly the given complexity, ordered lexicographically
// by (outermost noun, ..., innermost noun, name) with symbols compared by
// their declared index. Count = |names| * |nouns|^(complexity-1).
std::vector<Expression> enumerate_expressions(int complexity, const WorldModel& world);

// Left:  surface(apply(f, e)) = surface(e) ++ ["'s", f]      (2n-1 tokens)
// Right: surface(apply(f, e)) = ["the", f, "of"] ++ surface(e)  (3n-2 tokens)
TokenSequence surface(const Expression& expr, Branching branching);

// Inverse of surface; throws ParseError with the offending 0-based position.
Expression parse(const TokenSequence& tokens, Branching branching, const WorldModel& world);

int complexity(const Expression& expr);

}  // namespace compolang
