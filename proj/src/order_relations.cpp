#include "csa/order_relations.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>

#include "csa/error.hpp"

namespace csa::order {

StrictRelation::StrictRelation(DisorderSet universe)
    : universe_(std::move(universe)), grid_(universe_.size() * universe_.size(), 0) {}

StrictRelation::StrictRelation(DisorderSet universe,
                               const std::vector<std::pair<DisorderId, DisorderId>>& pairs)
    : StrictRelation(std::move(universe)) {
  for (const auto& [x, y] : pairs) {
    add(universe_.index_of(x), universe_.index_of(y));
  }
}

void StrictRelation::add(std::size_t x, std::size_t y) {
  if (x == y) {
    throw Error(ErrorCode::SelfPair, "relation cannot relate '" + universe_[x].id + "' to itself",
                {{"id", universe_[x].id}});
  }
  grid_[x * size() + y] = 1;
}

std::vector<std::pair<std::size_t, std::size_t>> StrictRelation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y = 0; y < size(); ++y)
      if (prefers(x, y)) out.emplace_back(x, y);
  return out;
}

std::size_t StrictRelation::pair_count() const {
  return static_cast<std::size_t>(std::count(grid_.begin(), grid_.end(), 1));
}

StrictRelation build_relation(const DisorderSet& universe,
                              const std::vector<PairJudgment>& judgments) {
  StrictRelation rel(universe);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& j : judgments) {
    const auto x = universe.index_of(j.first);
    const auto y = universe.index_of(j.second);
    if (x == y) {
      throw Error(ErrorCode::SelfPair, "judgment compares '" + j.first + "' with itself",
                  {{"id", j.first}});
    }
    if (!seen.emplace(std::min(x, y), std::max(x, y)).second) {
      throw Error(ErrorCode::DuplicatePair,
                  "pair {" + j.first + ", " + j.second + "} judged more than once",
                  {{"first", j.first}, {"second", j.second}});
    }
    switch (j.verdict) {
      case Verdict::Preferred: rel.add(x, y); break;
      case Verdict::LessPreferred: rel.add(y, x); break;
      case Verdict::Indifferent: break;
    }
  }
  return rel;
}

std::vector<std::pair<DisorderId, DisorderId>> unjudged_pairs(
    const DisorderSet& universe, const std::vector<PairJudgment>& judgments) {
  std::set<std::pair<std::size_t, std::size_t>> judged;
  for (const auto& j : judgments) {
    auto x = universe.find(j.first);
    auto y = universe.find(j.second);
    if (x && y) judged.emplace(std::min(*x, *y), std::max(*x, *y));
  }
  std::vector<std::pair<DisorderId, DisorderId>> out;
  for (std::size_t x = 0; x < universe.size(); ++x)
    for (std::size_t y = x + 1; y < universe.size(); ++y)
      if (!judged.count({x, y})) out.emplace_back(universe[x].id, universe[y].id);
  return out;
}

bool IndifferenceRelation::contains(std::size_t x, std::size_t y) const {
  const std::pair<std::size_t, std::size_t> key{std::min(x, y), std::max(x, y)};
  return std::find(pairs.begin(), pairs.end(), key) != pairs.end();
}

IndifferenceRelation derive_indifference(const StrictRelation& rel) {
  IndifferenceRelation out;
  for (std::size_t x = 0; x < rel.size(); ++x)
    for (std::size_t y = x + 1; y < rel.size(); ++y)
      if (rel.indifferent(x, y)) out.pairs.emplace_back(x, y);
  return out;
}

std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::Asymmetric: return "ASYMMETRIC";
    case Axiom::Transitive: return "TRANSITIVE";
    case Axiom::WeaklyComplete: return "WEAKLY_COMPLETE";
    case Axiom::NegativeTransitive: return "NEGATIVE_TRANSITIVE";
    case Axiom::Ferrers: return "FERRERS";
    case Axiom::Semitransitive: return "SEMITRANSITIVE";
  }
  return "";
}

Axiom parse_axiom(std::string_view name) {
  for (auto a : {Axiom::Asymmetric, Axiom::Transitive, Axiom::WeaklyComplete,
                 Axiom::NegativeTransitive, Axiom::Ferrers, Axiom::Semitransitive}) {
    if (to_string(a) == name) return a;
  }
  throw Error(ErrorCode::UnknownProperty, "unknown axiom '" + std::string(name) + "'",
              {{"property", std::string(name)}});
}

bool violates(const StrictRelation& rel, Axiom property,
              const std::vector<std::size_t>& w) {
  auto p = [&](std::size_t a, std::size_t b) { return rel.prefers(a, b); };
  switch (property) {
    case Axiom::Asymmetric:
      return w.size() == 2 && p(w[0], w[1]) && p(w[1], w[0]);
    case Axiom::Transitive:
      return w.size() == 3 && p(w[0], w[1]) && p(w[1], w[2]) && !p(w[0], w[2]);
    case Axiom::WeaklyComplete:
      return w.size() == 2 && w[0] != w[1] && !p(w[0], w[1]) && !p(w[1], w[0]);
    case Axiom::NegativeTransitive:
      return w.size() == 3 && !p(w[0], w[1]) && !p(w[1], w[2]) && p(w[0], w[2]);
    case Axiom::Ferrers:
      return w.size() == 4 && p(w[0], w[1]) && p(w[2], w[3]) && !p(w[0], w[3]) &&
             !p(w[2], w[1]);
    case Axiom::Semitransitive:
      return w.size() == 4 && p(w[0], w[1]) && p(w[1], w[2]) && !p(w[0], w[3]) &&
             !p(w[3], w[2]);
  }
  return false;
}

namespace {

// Visits index tuples of the given arity in lexicographic order until the
// callback returns false.
void for_each_tuple(std::size_t n, std::size_t arity,
                    const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (n == 0) return;
  std::vector<std::size_t> t(arity, 0);
  while (true) {
    if (!fn(t)) return;
    std::size_t k = arity;
    while (k > 0) {
      --k;
      if (++t[k] < n) break;
      t[k] = 0;
      if (k == 0) return;
    }
  }
}

std::size_t arity_of(Axiom a) {
  switch (a) {
    case Axiom::Asymmetric:
    case Axiom::WeaklyComplete:
      return 2;
    case Axiom::Transitive:
    case Axiom::NegativeTransitive:
      return 3;
    case Axiom::Ferrers:
    case Axiom::Semitransitive:
      return 4;
  }
  return 0;
}

bool holds(const StrictRelation& rel, Axiom a) {
  return check_axiom(rel, a, 1).holds;
}

}  // namespace

AxiomReport check_axiom(const StrictRelation& rel, Axiom property, std::size_t cap) {
  AxiomReport report;
  report.property = property;
  const bool unordered = property == Axiom::Asymmetric || property == Axiom::WeaklyComplete;
  for_each_tuple(rel.size(), arity_of(property), [&](const std::vector<std::size_t>& t) {
    if (unordered && t[0] >= t[1]) return true;
    if (violates(rel, property, t)) {
      report.holds = false;
      if (report.counterexamples.size() < cap) report.counterexamples.push_back(t);
      return report.counterexamples.size() < cap;
    }
    return true;
  });
  return report;
}

std::string_view to_string(OrderClass cls) {
  switch (cls) {
    case OrderClass::Linear: return "LINEAR";
    case OrderClass::Weak: return "WEAK";
    case OrderClass::Semiorder: return "SEMIORDER";
    case OrderClass::Unclassified: return "UNCLASSIFIED";
  }
  return "";
}

bool is_linear(const StrictRelation& rel) {
  return holds(rel, Axiom::Asymmetric) && holds(rel, Axiom::Transitive) &&
         holds(rel, Axiom::WeaklyComplete);
}

bool is_weak(const StrictRelation& rel) {
  return holds(rel, Axiom::Asymmetric) && holds(rel, Axiom::NegativeTransitive);
}

bool is_semiorder(const StrictRelation& rel) {
  return holds(rel, Axiom::Asymmetric) && holds(rel, Axiom::Ferrers) &&
         holds(rel, Axiom::Semitransitive);
}

OrderClass classify(const StrictRelation& rel) {
  if (is_linear(rel)) return OrderClass::Linear;
  if (is_weak(rel)) return OrderClass::Weak;
  if (is_semiorder(rel)) return OrderClass::Semiorder;
  return OrderClass::Unclassified;
}

std::string_view to_string(RankingKind kind) {
  switch (kind) {
    case RankingKind::Chain: return "CHAIN";
    case RankingKind::RankedPartition: return "RANKED_PARTITION";
    case RankingKind::ChainSet: return "CHAIN_SET";
  }
  return "";
}

namespace {

std::vector<std::size_t> dominance_counts(const StrictRelation& rel) {
  std::vector<std::size_t> counts(rel.size(), 0);
  for (std::size_t x = 0; x < rel.size(); ++x)
    for (std::size_t y = 0; y < rel.size(); ++y)
      if (rel.prefers(x, y)) ++counts[x];
  return counts;
}

}  // namespace

Ranking rank_linear(const StrictRelation& rel) {
  if (!is_linear(rel)) {
    throw Error(ErrorCode::NotLinear, "relation is not a linear order",
                {{"class", std::string(to_string(classify(rel)))}});
  }
  // In a linear order the element beating k others sits at position n-1-k.
  const auto counts = dominance_counts(rel);
  Ranking r;
  r.kind = RankingKind::Chain;
  r.chain.assign(rel.size(), 0);
  for (std::size_t x = 0; x < rel.size(); ++x) r.chain[rel.size() - 1 - counts[x]] = x;
  return r;
}

Ranking rank_weak(const StrictRelation& rel) {
  if (!is_weak(rel)) {
    throw Error(ErrorCode::NotWeak, "relation is not a weak order",
                {{"class", std::string(to_string(classify(rel)))}});
  }
  const auto n = rel.size();
  std::vector<bool> placed(n, false);
  Ranking r;
  r.kind = RankingKind::RankedPartition;
  for (std::size_t x = 0; x < n; ++x) {
    if (placed[x]) continue;
    std::vector<std::size_t> block{x};
    placed[x] = true;
    for (std::size_t y = x + 1; y < n; ++y) {
      if (!placed[y] && rel.indifferent(x, y)) {
        block.push_back(y);
        placed[y] = true;
      }
    }
    r.blocks.push_back(std::move(block));
  }
  const auto counts = dominance_counts(rel);
  std::stable_sort(r.blocks.begin(), r.blocks.end(), [&](const auto& a, const auto& b) {
    return counts[a.front()] > counts[b.front()];
  });
  return r;
}

bool is_valid_chain(const StrictRelation& rel, const PresentationChain& chain) {
  const auto& e = chain.elements;
  if (e.empty() || chain.links.size() != e.size() - 1) return false;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] >= rel.size()) return false;
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (e[i] == e[j]) return false;
      if (j > i + 1 && !rel.prefers(e[i], e[j])) return false;
    }
  }
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    if (chain.links[i] == Link::Strict) {
      if (!rel.prefers(e[i], e[i + 1])) return false;
    } else {
      if (!rel.indifferent(e[i], e[i + 1]) || e[i] > e[i + 1]) return false;
      if (i > 0 && chain.links[i - 1] == Link::Tie) return false;
    }
  }
  return true;
}

namespace {

// The link that may join `last` to `next` at the end of a chain whose final
// link is `prev` (nullopt for a one-element chain), or nullopt if none.
std::optional<Link> joining_link(const StrictRelation& rel, std::size_t last, std::size_t next,
                                 std::optional<Link> prev) {
  if (rel.prefers(last, next)) return Link::Strict;
  if (rel.indifferent(last, next) && last < next && prev != Link::Tie) return Link::Tie;
  return std::nullopt;
}

bool can_append(const StrictRelation& rel, const PresentationChain& c, std::size_t f,
                const std::vector<bool>& used) {
  if (used[f]) return false;
  const auto& e = c.elements;
  std::optional<Link> prev;
  if (!c.links.empty()) prev = c.links.back();
  if (!joining_link(rel, e.back(), f, prev)) return false;
  for (std::size_t i = 0; i + 1 < e.size(); ++i)
    if (!rel.prefers(e[i], f)) return false;
  return true;
}

bool can_prepend(const StrictRelation& rel, const PresentationChain& c, std::size_t f,
                 const std::vector<bool>& used) {
  if (used[f]) return false;
  const auto& e = c.elements;
  std::optional<Link> next;
  if (!c.links.empty()) next = c.links.front();
  if (!joining_link(rel, f, e.front(), next)) return false;
  for (std::size_t i = 1; i < e.size(); ++i)
    if (!rel.prefers(f, e[i])) return false;
  return true;
}

}  // namespace

Ranking enumerate_semiorder_chains(const StrictRelation& rel) {
  if (!is_semiorder(rel)) {
    throw Error(ErrorCode::NotSemiorder, "relation is not a semiorder",
                {{"class", std::string(to_string(classify(rel)))}});
  }
  const auto n = rel.size();
  if (n > 64) {
    throw Error(ErrorCode::BadParameters, "chain enumeration supports at most 64 disorders",
                {{"size", n}});
  }

  // Every valid chain extends at its ends to one that cannot be extended
  // further, so end-maximal chains are the only candidates for maximality.
  std::vector<PresentationChain> candidates;
  std::vector<std::uint64_t> masks;
  PresentationChain current;
  std::vector<bool> used(n, false);

  std::function<void()> extend = [&]() {
    bool extended = false;
    for (std::size_t f = 0; f < n; ++f) {
      if (!can_append(rel, current, f, used)) continue;
      extended = true;
      std::optional<Link> prev;
      if (!current.links.empty()) prev = current.links.back();
      const Link link = *joining_link(rel, current.elements.back(), f, prev);
      current.elements.push_back(f);
      current.links.push_back(link);
      used[f] = true;
      extend();
      used[f] = false;
      current.elements.pop_back();
      current.links.pop_back();
    }
    if (extended) return;
    for (std::size_t f = 0; f < n; ++f)
      if (can_prepend(rel, current, f, used)) return;
    std::uint64_t mask = 0;
    for (auto x : current.elements) mask |= std::uint64_t{1} << x;
    candidates.push_back(current);
    masks.push_back(mask);
  };

  for (std::size_t s = 0; s < n; ++s) {
    current = PresentationChain{{s}, {}};
    used.assign(n, false);
    used[s] = true;
    extend();
  }

  Ranking r;
  r.kind = RankingKind::ChainSet;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < candidates.size() && !dominated; ++j) {
      dominated = masks[j] != masks[i] && (masks[i] & masks[j]) == masks[i];
    }
    if (!dominated) r.chains.push_back(candidates[i]);
  }
  std::sort(r.chains.begin(), r.chains.end(), [](const auto& a, const auto& b) {
    if (a.elements != b.elements) return a.elements < b.elements;
    return a.links < b.links;
  });
  r.chains.erase(std::unique(r.chains.begin(), r.chains.end()), r.chains.end());
  return r;
}

std::optional<Ranking> rank(const StrictRelation& rel) {
  switch (classify(rel)) {
    case OrderClass::Linear: return rank_linear(rel);
    case OrderClass::Weak: return rank_weak(rel);
    case OrderClass::Semiorder: return enumerate_semiorder_chains(rel);
    case OrderClass::Unclassified: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace csa::order
