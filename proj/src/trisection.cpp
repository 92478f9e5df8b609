#include "csa/trisection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "csa/error.hpp"

namespace csa::trisection {

ValueMap EsvList::values() const {
  ValueMap out;
  for (const auto& e : entries) {
    out.ids.push_back(e.id);
    out.values.push_back(e.value);
  }
  return out;
}

std::vector<std::size_t> descending_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return order;
}

EsvList esv(const order::StrictRelation& rel) {
  EsvList out;
  out.n = rel.size();
  for (std::size_t d = 0; d < rel.size(); ++d) {
    EsvEntry e;
    e.id = rel.universe()[d].id;
    for (std::size_t x = 0; x < rel.size(); ++x)
      if (rel.prefers(d, x)) ++e.dominated;
    e.value = static_cast<double>(e.dominated) / static_cast<double>(out.n);
    out.entries.push_back(std::move(e));
  }
  // Compare exact counts rather than the rounded quotients.
  std::vector<double> counts;
  for (const auto& e : out.entries) counts.push_back(static_cast<double>(e.dominated));
  for (auto i : descending_order(counts)) out.descending.push_back(out.entries[i]);
  return out;
}

namespace {

std::vector<std::size_t> find_cycle(const order::StrictRelation& rel,
                                    const std::vector<bool>& remaining) {
  // Every remaining node has a remaining predecessor, so walking predecessors
  // must revisit a node.
  const auto n = rel.size();
  std::size_t start = 0;
  while (!remaining[start]) ++start;
  std::vector<std::size_t> walk;
  std::vector<std::size_t> seen_at(n, n);
  std::size_t node = start;
  while (seen_at[node] == n) {
    seen_at[node] = walk.size();
    walk.push_back(node);
    for (std::size_t p = 0; p < n; ++p) {
      if (remaining[p] && rel.prefers(p, node)) {
        node = p;
        break;
      }
    }
  }
  std::vector<std::size_t> cycle(walk.begin() + static_cast<std::ptrdiff_t>(seen_at[node]),
                                 walk.end());
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

}  // namespace

std::vector<std::size_t> topo_rank(const order::StrictRelation& rel) {
  const auto n = rel.size();
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [x, y] : rel.pairs()) ++indegree[y];

  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t x = 0; x < n; ++x)
    if (indegree[x] == 0) ready.push(x);

  std::vector<std::size_t> out;
  std::vector<bool> remaining(n, true);
  while (!ready.empty()) {
    const auto x = ready.top();
    ready.pop();
    out.push_back(x);
    remaining[x] = false;
    for (std::size_t y = 0; y < n; ++y)
      if (rel.prefers(x, y) && --indegree[y] == 0) ready.push(y);
  }
  if (out.size() != n) {
    nlohmann::json witness = nlohmann::json::array();
    for (auto i : find_cycle(rel, remaining)) witness.push_back(rel.universe()[i].id);
    throw Error(ErrorCode::CycleDetected, "strict relation contains a cycle",
                {{"cycle", witness}});
  }
  return out;
}

Thresholds percentile_thresholds(const std::vector<double>& descending, double alpha,
                                 double beta) {
  const auto n = descending.size();
  if (n == 0 || !(beta > 0.0) || !(beta < alpha) || !(alpha < 100.0)) {
    throw Error(ErrorCode::BadPercentiles, "percentiles must satisfy 0 < beta < alpha < 100",
                {{"alpha", alpha}, {"beta", beta}, {"n", n}});
  }
  const double count = static_cast<double>(n);
  auto clamp = [n](double pos) {
    return static_cast<std::size_t>(std::clamp(pos, 1.0, static_cast<double>(n)));
  };
  Thresholds t;
  t.h_index = clamp(std::floor(beta * count / 100.0));
  t.l_index = clamp(std::ceil(alpha * count / 100.0));
  t.h = descending[t.h_index - 1];
  t.l = descending[t.l_index - 1];
  return t;
}

StatisticalThresholds statistical_thresholds(const std::vector<double>& values, double k1,
                                             double k2) {
  if (values.empty() || !(k1 >= 0.0) || !(k2 >= 0.0) || !std::isfinite(k1) ||
      !std::isfinite(k2)) {
    throw Error(ErrorCode::BadParameters, "k1 and k2 must be non-negative over a non-empty set",
                {{"k1", k1}, {"k2", k2}, {"n", values.size()}});
  }
  const double n = static_cast<double>(values.size());
  StatisticalThresholds t;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) {
    // Summation rounding would otherwise put mu beside every value.
    t.mu = t.h = t.l = *lo;
    return t;
  }
  t.mu = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double squares = 0.0;
  for (double v : values) squares += (v - t.mu) * (v - t.mu);
  t.sigma = std::sqrt(squares / n);
  t.h = t.mu + k1 * t.sigma;
  t.l = t.mu - k2 * t.sigma;
  return t;
}

std::string_view to_string(Method m) {
  return m == Method::Percentile ? "percentile" : "statistical";
}

Method parse_method(std::string_view name) {
  if (name == "percentile") return Method::Percentile;
  if (name == "statistical") return Method::Statistical;
  throw Error(ErrorCode::BadParameters, "unknown trisection method '" + std::string(name) + "'",
              {{"method", std::string(name)}});
}

void validate(const Params& p) {
  if (p.method == Method::Percentile) {
    if (!(p.beta > 0.0) || !(p.beta < p.alpha) || !(p.alpha < 100.0)) {
      throw Error(ErrorCode::BadPercentiles, "percentiles must satisfy 0 < beta < alpha < 100",
                  {{"alpha", p.alpha}, {"beta", p.beta}});
    }
  } else if (!(p.k1 >= 0.0) || !(p.k2 >= 0.0) || !std::isfinite(p.k1) ||
             !std::isfinite(p.k2)) {
    throw Error(ErrorCode::BadParameters, "k1 and k2 must be non-negative",
                {{"k1", p.k1}, {"k2", p.k2}});
  }
}

Trisection trisect(const ValueMap& values, double h, double l) {
  if (h < l) {
    throw Error(ErrorCode::ThresholdOrder, "threshold h must not be below l",
                {{"h", h}, {"l", l}});
  }
  Trisection t;
  t.h = h;
  t.l = l;
  for (auto i : descending_order(values.values)) {
    const double v = values.values[i];
    if (v >= h) {
      t.high.push_back(values.ids[i]);
    } else if (v <= l) {
      t.low.push_back(values.ids[i]);
    } else {
      t.medium.push_back(values.ids[i]);
    }
  }
  return t;
}

Trisection run(const ValueMap& values, const Params& params) {
  validate(params);
  if (params.method == Method::Percentile) {
    std::vector<double> sorted;
    for (auto i : descending_order(values.values)) sorted.push_back(values.values[i]);
    const auto th = percentile_thresholds(sorted, params.alpha, params.beta);
    auto t = trisect(values, th.h, th.l);
    t.method = Method::Percentile;
    return t;
  }
  const auto th = statistical_thresholds(values.values, params.k1, params.k2);
  auto t = trisect(values, th.h, th.l);
  t.method = Method::Statistical;
  t.mu = th.mu;
  t.sigma = th.sigma;
  return t;
}

}  // namespace csa::trisection
