#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "csa/disorder.hpp"

namespace csa::order {

enum class Verdict { Preferred, LessPreferred, Indifferent };

struct PairJudgment {
  DisorderId first;
  DisorderId second;
  Verdict verdict = Verdict::Preferred;

  bool operator==(const PairJudgment&) const = default;
};

/// The strict preference relation ">" over a disorder set, stored as a dense
/// adjacency grid indexed by insertion position.
class StrictRelation {
 public:
  StrictRelation() = default;
  explicit StrictRelation(DisorderSet universe);

  /// Builds from explicit (x, y) pairs meaning x > y. Throws UnknownDisorder
  /// and SelfPair. No asymmetry requirement: a relation may be invalid as an
  /// order, which is what the axiom checks are for.
  StrictRelation(DisorderSet universe,
                 const std::vector<std::pair<DisorderId, DisorderId>>& pairs);

  const DisorderSet& universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return universe_.size(); }

  bool prefers(std::size_t x, std::size_t y) const { return grid_[x * size() + y] != 0; }
  bool indifferent(std::size_t x, std::size_t y) const {
    return !prefers(x, y) && !prefers(y, x);
  }

  void add(std::size_t x, std::size_t y);

  /// Ordered pairs (x, y) with x > y, row-major in insertion order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  std::size_t pair_count() const;

 private:
  DisorderSet universe_;
  std::vector<char> grid_;
};

/// PREFERRED(x,y) adds x > y, LESS_PREFERRED(x,y) adds y > x, INDIFFERENT adds
/// nothing. Throws UnknownDisorder, DuplicatePair, SelfPair.
StrictRelation build_relation(const DisorderSet& universe,
                              const std::vector<PairJudgment>& judgments);

/// Unordered pairs of the universe with no judgment at all, in insertion order.
std::vector<std::pair<DisorderId, DisorderId>> unjudged_pairs(
    const DisorderSet& universe, const std::vector<PairJudgment>& judgments);

/// Unordered pairs {x, y}, x != y, with neither x > y nor y > x. Each pair is
/// stored with the lower insertion index first.
struct IndifferenceRelation {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  bool contains(std::size_t x, std::size_t y) const;
};

IndifferenceRelation derive_indifference(const StrictRelation& rel);

enum class Axiom {
  Asymmetric,
  Transitive,
  WeaklyComplete,
  NegativeTransitive,
  Ferrers,
  Semitransitive,
};

std::string_view to_string(Axiom axiom);
/// Throws UnknownProperty.
Axiom parse_axiom(std::string_view name);

inline constexpr std::size_t kCounterexampleCap = 20;

/// Witness tuples by axiom:
///   Asymmetric          (x, y)          x > y and y > x
///   Transitive          (x, y, z)       x > y, y > z, not x > z
///   WeaklyComplete      (x, y)          x != y, neither direction
///   NegativeTransitive  (x, y, z)       not x > y, not y > z, but x > z
///   Ferrers             (x, x', y, y')  x > x', y > y', not x > y', not y > x'
///   Semitransitive      (x, x', x'', y) x > x' > x'', not x > y, not y > x''
struct AxiomReport {
  Axiom property = Axiom::Asymmetric;
  bool holds = true;
  std::vector<std::vector<std::size_t>> counterexamples;
};

AxiomReport check_axiom(const StrictRelation& rel, Axiom property,
                        std::size_t cap = kCounterexampleCap);

/// True when the witness genuinely violates the axiom. Used to re-check
/// reported counterexamples.
bool violates(const StrictRelation& rel, Axiom property,
              const std::vector<std::size_t>& witness);

enum class OrderClass { Linear, Weak, Semiorder, Unclassified };

std::string_view to_string(OrderClass cls);

bool is_linear(const StrictRelation& rel);
bool is_weak(const StrictRelation& rel);
bool is_semiorder(const StrictRelation& rel);

/// Most specific of LINEAR, WEAK, SEMIORDER, else UNCLASSIFIED.
OrderClass classify(const StrictRelation& rel);

enum class Link { Strict, Tie };

/// A displayed chain such as d1 > d2 ~ d3 > d5. links.size() == elements.size() - 1.
struct PresentationChain {
  std::vector<std::size_t> elements;
  std::vector<Link> links;

  bool operator==(const PresentationChain&) const = default;
};

/// Checks every PresentationChain invariant against the relation, including
/// the canonical orientation of ties (lower insertion index first).
bool is_valid_chain(const StrictRelation& rel, const PresentationChain& chain);

enum class RankingKind { Chain, RankedPartition, ChainSet };

struct Ranking {
  RankingKind kind = RankingKind::Chain;
  std::vector<std::size_t> chain;
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<PresentationChain> chains;
};

std::string_view to_string(RankingKind kind);

/// Throws NotLinear.
Ranking rank_linear(const StrictRelation& rel);

/// Throws NotWeak.
Ranking rank_weak(const StrictRelation& rel);

/// All maximal presentation chains, sorted lexicographically by insertion
/// index. Throws NotSemiorder.
Ranking enumerate_semiorder_chains(const StrictRelation& rel);

/// Dispatches on classify(): CHAIN for linear, RANKED_PARTITION for weak,
/// CHAIN_SET for semiorders. Returns nullopt for UNCLASSIFIED.
std::optional<Ranking> rank(const StrictRelation& rel);

}  // namespace csa::order
