#include "compolang/language.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "compolang/error.hpp"

namespace compolang {

const std::vector<std::string> kDefaultNames = {"Ann", "Bill", "Dick", "George"};
const std::vector<std::string> kDefaultNouns = {"child", "parent", "friend", "enemy"};
const std::string kPossessive = "'s";
const std::string kThe = "the";
const std::string kOf = "of";

const char* to_string(Branching b) { return b == Branching::Left ? "left" : "right"; }

const char* to_string(FunctionConstraint c) {
  switch (c) {
    case FunctionConstraint::AnyTotal: return "any_total";
    case FunctionConstraint::Permutation: return "permutation";
    case FunctionConstraint::InversePairs: return "inverse_pairs";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// WorldModel
// ---------------------------------------------------------------------------

WorldModel::WorldModel(int universe_size, std::vector<std::string> names, std::vector<std::string> nouns,
                       std::vector<Individual> name_denotation,
                       std::vector<std::vector<Individual>> noun_denotation)
    : universe_size_(universe_size),
      names_(std::move(names)),
      nouns_(std::move(nouns)),
      name_denotation_(std::move(name_denotation)),
      noun_denotation_(std::move(noun_denotation)) {
  if (universe_size_ < 1) throw ConfigError("universe size must be at least 1");
  if (names_.size() != static_cast<std::size_t>(universe_size_))
    throw ConfigError("need exactly one name per individual");
  if (name_denotation_.size() != names_.size()) throw ConfigError("name denotation size mismatch");
  if (noun_denotation_.size() != nouns_.size()) throw ConfigError("noun denotation size mismatch");

  std::unordered_set<std::string> seen;
  for (const auto& s : names_)
    if (!seen.insert(s).second) throw ConfigError("duplicate symbol: " + s);
  for (const auto& s : nouns_)
    if (!seen.insert(s).second) throw ConfigError("duplicate symbol: " + s);
  for (const auto& s : {kPossessive, kThe, kOf})
    if (seen.count(s)) throw ConfigError("symbol collides with a grammatical token: " + s);

  std::vector<bool> hit(universe_size_, false);
  for (Individual v : name_denotation_) {
    if (v < 0 || v >= universe_size_) throw ConfigError("name denotation out of universe");
    hit[v] = true;
  }
  if (!std::all_of(hit.begin(), hit.end(), [](bool x) { return x; }))
    throw ConfigError("name denotation is not a bijection onto the universe");
  for (const auto& fn : noun_denotation_) {
    if (fn.size() != static_cast<std::size_t>(universe_size_))
      throw ConfigError("noun denotation must be total on the universe");
    for (Individual v : fn)
      if (v < 0 || v >= universe_size_) throw ConfigError("noun denotation out of universe");
  }
}

int WorldModel::index_of_name(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InterpretError("unknown name: " + name);
  return static_cast<int>(it - names_.begin());
}

int WorldModel::index_of_noun(const std::string& noun) const {
  auto it = std::find(nouns_.begin(), nouns_.end(), noun);
  if (it == nouns_.end()) throw InterpretError("unknown noun: " + noun);
  return static_cast<int>(it - nouns_.begin());
}

bool WorldModel::is_name(const std::string& symbol) const {
  return std::find(names_.begin(), names_.end(), symbol) != names_.end();
}

bool WorldModel::is_noun(const std::string& symbol) const {
  return std::find(nouns_.begin(), nouns_.end(), symbol) != nouns_.end();
}

Individual WorldModel::name_denotation(const std::string& name) const {
  return name_denotation_[index_of_name(name)];
}

Individual WorldModel::apply_noun(const std::string& noun, Individual arg) const {
  if (arg < 0 || arg >= universe_size_) throw InterpretError("argument outside the universe");
  return noun_denotation_[index_of_noun(noun)][arg];
}

const std::vector<Individual>& WorldModel::noun_function(const std::string& noun) const {
  return noun_denotation_[index_of_noun(noun)];
}

WorldModel example_universe() {
  // Individuals: Ann=0 Bill=1 Dick=2 George=3.
  std::vector<std::vector<Individual>> fns = {
      {2, 0, 3, 1},  // child  = parent^-1
      {1, 3, 0, 2},  // parent
      {2, 3, 0, 1},  // friend
      {3, 2, 1, 0},  // enemy
  };
  return WorldModel(4, kDefaultNames, kDefaultNouns, {0, 1, 2, 3}, std::move(fns));
}

WorldModel sample_world_model(int universe_size, std::vector<std::string> names,
                              std::vector<std::string> nouns, FunctionConstraint constraint, Rng& rng) {
  if (universe_size < 1) throw ConfigError("universe size must be at least 1");
  if (names.size() != static_cast<std::size_t>(universe_size))
    throw ConfigError("need exactly one name per individual");

  auto random_permutation = [&rng, universe_size]() {
    std::vector<Individual> p(universe_size);
    std::iota(p.begin(), p.end(), 0);
    rng.shuffle(p);
    return p;
  };

  std::vector<Individual> name_denotation = random_permutation();

  std::vector<std::vector<Individual>> noun_denotation(nouns.size());
  switch (constraint) {
    case FunctionConstraint::AnyTotal:
      for (auto& fn : noun_denotation) {
        fn.resize(universe_size);
        for (auto& v : fn) v = rng.uniform_int(universe_size);
      }
      break;
    case FunctionConstraint::Permutation:
      for (auto& fn : noun_denotation) fn = random_permutation();
      break;
    case FunctionConstraint::InversePairs:
      for (std::size_t i = 0; i + 1 < nouns.size(); i += 2) {
        auto p = random_permutation();
        std::vector<Individual> inv(universe_size);
        for (int x = 0; x < universe_size; ++x) inv[p[x]] = x;
        noun_denotation[i] = std::move(p);
        noun_denotation[i + 1] = std::move(inv);
      }
      if (nouns.size() % 2 == 1) noun_denotation.back() = random_permutation();
      break;
  }

  return WorldModel(universe_size, std::move(names), std::move(nouns), std::move(name_denotation),
                    std::move(noun_denotation));
}

// ---------------------------------------------------------------------------
// Expression
// ---------------------------------------------------------------------------

Expression Expression::leaf(std::string name) {
  return Expression(std::make_shared<const Node>(Node{std::move(name), nullptr}));
}

Expression Expression::apply(std::string noun, Expression inner) {
  return Expression(std::make_shared<const Node>(Node{std::move(noun), std::move(inner.node_)}));
}

Expression Expression::inner() const {
  if (is_leaf()) throw InputError("leaf expressions have no inner phrase");
  return Expression(node_->inner);
}

int Expression::complexity() const {
  int n = 1;
  for (const Node* p = node_.get(); p->inner != nullptr; p = p->inner.get()) ++n;
  return n;
}

bool Expression::operator==(const Expression& other) const {
  const Node* a = node_.get();
  const Node* b = other.node_.get();
  while (a && b) {
    if (a == b) return true;
    if (a->symbol != b->symbol) return false;
    a = a->inner.get();
    b = b->inner.get();
  }
  return a == b;
}

int complexity(const Expression& expr) { return expr.complexity(); }

Individual interpret(const Expression& expr, const WorldModel& world) {
  if (expr.is_leaf()) return world.name_denotation(expr.symbol());
  return world.apply_noun(expr.symbol(), interpret(expr.inner(), world));
}

std::vector<Expression> enumerate_expressions(int complexity, const WorldModel& world) {
  if (complexity < 1) throw ConfigError("expression complexity must be at least 1");
  std::vector<Expression> level;
  for (const auto& name : world.names()) level.push_back(Expression::leaf(name));
  for (int c = 2; c <= complexity; ++c) {
    std::vector<Expression> next;
    next.reserve(world.nouns().size() * level.size());
    for (const auto& noun : world.nouns())
      for (const auto& inner : level) next.push_back(Expression::apply(noun, inner));
    level = std::move(next);
  }
  return level;
}

TokenSequence surface(const Expression& expr, Branching branching) {
  TokenSequence out;
  if (branching == Branching::Left) {
    // Innermost name first: e 's f.
    std::vector<const std::string*> chain;
    Expression e = expr;
    while (!e.is_leaf()) {
      chain.push_back(&e.symbol());
      e = e.inner();
    }
    out.push_back(e.symbol());
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      out.push_back(kPossessive);
      out.push_back(**it);
    }
  } else {
    // Outermost noun first: the f of e.
    Expression e = expr;
    while (!e.is_leaf()) {
      out.push_back(kThe);
      out.push_back(e.symbol());
      out.push_back(kOf);
      e = e.inner();
    }
    out.push_back(e.symbol());
  }
  return out;
}

namespace {

[[noreturn]] void fail_at(std::size_t pos, const std::string& what) { throw ParseError(pos, what); }

Expression parse_left(const TokenSequence& t, const WorldModel& world) {
  if (t.empty()) fail_at(0, "expected a name, got end of input");
  if (!world.is_name(t[0])) fail_at(0, "expected a name, got '" + t[0] + "'");
  Expression e = Expression::leaf(t[0]);
  std::size_t p = 1;
  while (p < t.size()) {
    if (t[p] != kPossessive) fail_at(p, "expected '" + kPossessive + "', got '" + t[p] + "'");
    if (p + 1 >= t.size()) fail_at(p + 1, "expected a noun, got end of input");
    if (!world.is_noun(t[p + 1])) fail_at(p + 1, "expected a noun, got '" + t[p + 1] + "'");
    e = Expression::apply(t[p + 1], std::move(e));
    p += 2;
  }
  return e;
}

Expression parse_right(const TokenSequence& t, const WorldModel& world) {
  // Collect "the N of" prefixes, then a name, then nothing.
  std::vector<std::string> nouns_outer_first;
  std::size_t p = 0;
  while (true) {
    if (p >= t.size()) fail_at(p, "expected a name or 'the', got end of input");
    if (world.is_name(t[p])) {
      if (p + 1 != t.size()) fail_at(p + 1, "unexpected token '" + t[p + 1] + "' after the name");
      Expression e = Expression::leaf(t[p]);
      for (auto it = nouns_outer_first.rbegin(); it != nouns_outer_first.rend(); ++it)
        e = Expression::apply(*it, std::move(e));
      return e;
    }
    if (t[p] != kThe) fail_at(p, "expected a name or 'the', got '" + t[p] + "'");
    if (p + 1 >= t.size()) fail_at(p + 1, "expected a noun, got end of input");
    if (!world.is_noun(t[p + 1])) fail_at(p + 1, "expected a noun, got '" + t[p + 1] + "'");
    if (p + 2 >= t.size()) fail_at(p + 2, "expected 'of', got end of input");
    if (t[p + 2] != kOf) fail_at(p + 2, "expected 'of', got '" + t[p + 2] + "'");
    nouns_outer_first.push_back(t[p + 1]);
    p += 3;
  }
}

}  // namespace

Expression parse(const TokenSequence& tokens, Branching branching, const WorldModel& world) {
  return branching == Branching::Left ? parse_left(tokens, world) : parse_right(tokens, world);
}

}  // namespace compolang
