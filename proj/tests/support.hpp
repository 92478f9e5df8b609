#pragma once

// Shared fixtures, generators and brute-force oracles for the test suites.
// Oracles here deliberately avoid the engine's own algorithms.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "csa/comparison_matrix.hpp"
#include "csa/io.hpp"
#include "csa/order_relations.hpp"

namespace csa::test {

inline std::string fixture(const std::string& name) {
  return std::string(CSA_FIXTURES) + "/" + name;
}

/// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() /
           ("csa-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline DisorderSet five() { return DisorderSet::from_ids({"d1", "d2", "d3", "d4", "d5"}); }

inline std::vector<order::PairJudgment> preferred(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<order::PairJudgment> out;
  for (const auto& [a, b] : pairs) out.push_back({a, b, order::Verdict::Preferred});
  return out;
}

inline std::vector<order::PairJudgment> example1_judgments() {
  return preferred({{"d1", "d5"}, {"d1", "d4"}, {"d1", "d2"}, {"d3", "d1"}, {"d3", "d2"},
                    {"d3", "d4"}, {"d3", "d5"}, {"d5", "d4"}, {"d5", "d2"}, {"d4", "d2"}});
}

inline std::vector<order::PairJudgment> example2_judgments() {
  return preferred({{"d1", "d3"}, {"d1", "d4"}, {"d1", "d5"}, {"d2", "d3"}, {"d2", "d4"},
                    {"d2", "d5"}, {"d3", "d4"}, {"d3", "d5"}});
}

inline std::vector<order::PairJudgment> example3_judgments() {
  return preferred({{"d1", "d2"}, {"d1", "d3"}, {"d1", "d4"}, {"d1", "d5"}, {"d2", "d4"},
                    {"d2", "d5"}, {"d3", "d5"}, {"d4", "d5"}});
}

inline order::StrictRelation example1() { return order::build_relation(five(), example1_judgments()); }
inline order::StrictRelation example2() { return order::build_relation(five(), example2_judgments()); }
inline order::StrictRelation example3() { return order::build_relation(five(), example3_judgments()); }

inline const std::vector<std::string> kClusterIds = {"D1", "D2", "D3", "D4", "D5", "D6"};

inline weighting::ComparisonMatrix table3() {
  const double r[6][6] = {{1, 3, 1. / 2, 4, 2, 1. / 3},     {1. / 3, 1, 1. / 7, 1, 1. / 2, 1. / 9},
                          {2, 7, 1, 9, 5, 1. / 2},          {1. / 4, 1, 1. / 9, 1, 1. / 2, 1. / 9},
                          {1. / 2, 2, 1. / 5, 2, 1, 1. / 6}, {3, 9, 2, 9, 6, 1}};
  std::vector<std::vector<double>> rows(6);
  for (int i = 0; i < 6; ++i) rows[i].assign(r[i], r[i] + 6);
  return weighting::ComparisonMatrix(kClusterIds, rows);
}

inline const std::vector<double> kTable3Weights = {0.140, 0.041, 0.290, 0.038, 0.071, 0.420};

inline weighting::ComparisonMatrix table4() {
  const double r[5][5] = {{1, 2, 3, 5, 9},
                          {1. / 2, 1, 2, 4, 6},
                          {1. / 3, 1. / 2, 1, 2, 3},
                          {1. / 5, 1. / 4, 1. / 2, 1, 2},
                          {1. / 9, 1. / 6, 1. / 3, 1. / 2, 1}};
  std::vector<std::vector<double>> rows(5);
  for (int i = 0; i < 5; ++i) rows[i].assign(r[i], r[i] + 5);
  return weighting::ComparisonMatrix({"A", "B", "C", "D", "E"}, rows);
}

inline const std::vector<double> kTable4Weights = {0.450, 0.277, 0.147, 0.081, 0.046};

// -- generators ---------------------------------------------------------------

inline DisorderSet ids(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return DisorderSet::from_ids(out);
}

/// Linear order listing perm[0] > perm[1] > ...
inline order::StrictRelation linear_from_permutation(const std::vector<std::size_t>& perm) {
  order::StrictRelation rel(ids(perm.size()));
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b) rel.add(perm[a], perm[b]);
  return rel;
}

/// x > y iff level[x] > level[y]: a weak order.
inline order::StrictRelation weak_from_levels(const std::vector<int>& level) {
  order::StrictRelation rel(ids(level.size()));
  for (std::size_t x = 0; x < level.size(); ++x)
    for (std::size_t y = 0; y < level.size(); ++y)
      if (level[x] > level[y]) rel.add(x, y);
  return rel;
}

/// Unit-interval representation: x > y iff u[x] > u[y] + 1. Always a semiorder.
inline order::StrictRelation semiorder_from_utilities(const std::vector<double>& u) {
  order::StrictRelation rel(ids(u.size()));
  for (std::size_t x = 0; x < u.size(); ++x)
    for (std::size_t y = 0; y < u.size(); ++y)
      if (u[x] > u[y] + 1.0) rel.add(x, y);
  return rel;
}

/// Arbitrary (possibly cyclic or symmetric) relation with edge probability p.
inline order::StrictRelation random_relation(std::size_t n, double p, std::mt19937& rng) {
  order::StrictRelation rel(ids(n));
  std::bernoulli_distribution edge(p);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && edge(rng)) rel.add(x, y);
  return rel;
}

/// Asymmetric relation: each unordered pair is x > y, y > x or neither.
inline order::StrictRelation random_asymmetric(std::size_t n, std::mt19937& rng) {
  order::StrictRelation rel(ids(n));
  std::uniform_int_distribution<int> pick(0, 2);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      const int v = pick(rng);
      if (v == 1) rel.add(x, y);
      if (v == 2) rel.add(y, x);
    }
  return rel;
}

/// Random reciprocal matrix with upper entries drawn from the Saaty set.
inline weighting::ComparisonMatrix random_saaty(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> value(1, 9);
  std::bernoulli_distribution invert(0.5);
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = value(rng);
      if (invert(rng)) v = 1.0 / v;
      rows[i][j] = v;
      rows[j][i] = 1.0 / v;
    }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("c" + std::to_string(i));
  return weighting::ComparisonMatrix(labels, rows);
}

inline std::vector<double> random_simplex(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(n);
  for (auto& v : w) v = u(rng);
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= s;
  return w;
}

// -- brute-force chain oracle ---------------------------------------------------

/// Enumerates every sequence of distinct elements (all subsets, all orders)
/// and every link assignment, keeping those meeting the presentation-chain
/// rules written out directly from their definition.
inline std::vector<order::PresentationChain> brute_force_valid_chains(
    const order::StrictRelation& rel) {
  const auto n = rel.size();
  std::vector<order::PresentationChain> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> elems;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) elems.push_back(i);
    std::sort(elems.begin(), elems.end());
    do {
      const std::size_t k = elems.size();
      for (std::uint32_t lm = 0; lm < (1u << (k - 1)); ++lm) {
        order::PresentationChain c;
        c.elements = elems;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < k; ++i) {
          const bool tie = lm & (1u << i);
          c.links.push_back(tie ? order::Link::Tie : order::Link::Strict);
          const auto a = elems[i], b = elems[i + 1];
          if (tie) {
            ok = ok && !rel.prefers(a, b) && !rel.prefers(b, a) && a < b;
            ok = ok && !(i > 0 && (lm & (1u << (i - 1))));
          } else {
            ok = ok && rel.prefers(a, b);
          }
        }
        for (std::size_t i = 0; ok && i < k; ++i)
          for (std::size_t j = i + 2; ok && j < k; ++j) ok = rel.prefers(elems[i], elems[j]);
        if (ok) out.push_back(c);
      }
    } while (std::next_permutation(elems.begin(), elems.end()));
  }
  return out;
}

/// Maximal-by-element-set subset of brute_force_valid_chains, sorted.
inline std::vector<order::PresentationChain> brute_force_maximal_chains(
    const order::StrictRelation& rel) {
  const auto all = brute_force_valid_chains(rel);
  auto set_of = [](const order::PresentationChain& c) {
    return std::set<std::size_t>(c.elements.begin(), c.elements.end());
  };
  std::vector<order::PresentationChain> out;
  for (const auto& c : all) {
    const auto s = set_of(c);
    bool dominated = false;
    for (const auto& d : all) {
      const auto t = set_of(d);
      if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.elements != b.elements) return a.elements < b.elements;
    return a.links < b.links;
  });
  return out;
}

}  // namespace csa::test
