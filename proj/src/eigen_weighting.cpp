#include "csa/eigen_weighting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

#include "csa/error.hpp"

namespace csa::weighting {

double WeightVector::at(const std::string& id) const {
  auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) {
    throw Error(ErrorCode::UnknownDisorder, "no weight for '" + id + "'", {{"id", id}});
  }
  return values[static_cast<std::size_t>(it - ids.begin())];
}

double WeightVector::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

namespace {

std::vector<double> multiply(const ComparisonMatrix& m, const std::vector<double>& x) {
  const auto n = m.order();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y[i] += m(i, j) * x[j];
  return y;
}

double rayleigh_mean(const std::vector<double>& mx, const std::vector<double>& x) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) total += mx[i] / x[i];
  return total / static_cast<double>(x.size());
}

double residual_norm(const std::vector<double>& mx, const std::vector<double>& x,
                     double lambda) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    worst = std::max(worst, std::abs(mx[i] - lambda * x[i]));
  return worst;
}

}  // namespace

EigenResult principal_eigen(const ComparisonMatrix& m, const PowerIterationOptions& opts) {
  require_valid(m);
  const auto n = m.order();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));

  EigenResult result;
  result.weights.ids = m.labels();
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    auto y = multiply(m, x);
    const double total = std::accumulate(y.begin(), y.end(), 0.0);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= total;
      change = std::max(change, std::abs(y[i] - x[i]));
    }
    x = std::move(y);
    if (change < opts.tolerance) {
      const auto mx = multiply(m, x);
      const double lambda = rayleigh_mean(mx, x);
      const double residual = residual_norm(mx, x, lambda);
      if (residual < opts.residual_tolerance) {
        result.weights.values = x;
        result.lambda_max = lambda;
        result.iterations = it;
        result.converged = true;
        result.residual = residual;
        return result;
      }
    }
  }
  throw Error(ErrorCode::NotConverged,
              "power iteration did not converge within " +
                  std::to_string(opts.max_iterations) + " iterations",
              {{"max_iterations", opts.max_iterations}});
}

double random_index(std::size_t n) {
  static constexpr std::array<double, 10> kTable = {0.0,  0.0,  0.52, 0.89, 1.11,
                                                    1.25, 1.35, 1.40, 1.45, 1.49};
  if (n < 1 || n > kTable.size()) {
    throw Error(ErrorCode::InvalidMatrix, "no random index for order " + std::to_string(n),
                {{"order", n}});
  }
  return kTable[n - 1];
}

ConsistencyReport consistency(const ComparisonMatrix& m, const EigenResult& e) {
  ConsistencyReport r;
  r.order = m.order();
  r.lambda_max = e.lambda_max;
  r.random_index = random_index(r.order);
  if (r.order <= 2) {
    r.consistency_index = 0.0;
    r.consistency_ratio = 0.0;
    r.acceptable = true;
    return r;
  }
  const double n = static_cast<double>(r.order);
  r.consistency_index = (e.lambda_max - n) / (n - 1.0);
  r.consistency_ratio = r.consistency_index / r.random_index;
  r.acceptable = r.consistency_ratio < kAcceptableRatio;
  return r;
}

namespace {

[[noreturn]] void partition_error(const std::string& message, nlohmann::json details = {}) {
  throw Error(ErrorCode::PartitionError, message,
              details.is_null() ? nlohmann::json::object() : std::move(details));
}

void require_labels(const ComparisonMatrix& m, const std::vector<std::string>& expected,
                    const std::string& name) {
  if (m.labels() != expected) {
    throw Error(ErrorCode::InvalidMatrix,
                name + " labels do not match the items they compare",
                {{"matrix", name}, {"labels", m.labels()}, {"expected", expected}});
  }
}

MatrixReport weigh_matrix(const ComparisonMatrix& m, const std::string& name) {
  require_valid(m, name);
  MatrixReport report;
  report.matrix = name;
  report.eigen = principal_eigen(m);
  report.consistency = consistency(m, report.eigen);
  if (!report.consistency.acceptable) {
    throw Error(ErrorCode::InconsistentMatrix,
                name + " has consistency ratio " +
                    std::to_string(report.consistency.consistency_ratio * 100.0) +
                    "% (must be below 10%)",
                {{"matrix", name},
                 {"consistency_ratio", report.consistency.consistency_ratio},
                 {"lambda_max", report.consistency.lambda_max}});
  }
  return report;
}

}  // namespace

void validate_hierarchy(const Hierarchy& h, const DisorderSet* universe) {
  if (h.clusters.empty()) partition_error("hierarchy has no clusters");
  if (h.clusters.size() > kMaxOrder) {
    partition_error("hierarchy has " + std::to_string(h.clusters.size()) +
                        " clusters; at most 9 are supported",
                    {{"clusters", h.clusters.size()}});
  }
  std::set<std::string> cluster_ids;
  std::set<DisorderId> members;
  std::vector<std::string> ids;
  for (const auto& c : h.clusters) {
    if (c.id.empty()) partition_error("cluster id must not be empty");
    if (!cluster_ids.insert(c.id).second) {
      partition_error("duplicate cluster id '" + c.id + "'", {{"cluster", c.id}});
    }
    ids.push_back(c.id);
    if (c.members.empty() || c.members.size() > kMaxOrder) {
      partition_error("cluster '" + c.id + "' must hold 1..9 members",
                      {{"cluster", c.id}, {"members", c.members.size()}});
    }
    for (const auto& d : c.members) {
      if (!members.insert(d).second) {
        partition_error("disorder '" + d + "' appears in more than one cluster",
                        {{"disorder", d}});
      }
      if (universe && !universe->contains(d)) {
        partition_error("cluster '" + c.id + "' names unknown disorder '" + d + "'",
                        {{"cluster", c.id}, {"disorder", d}});
      }
    }
    if (c.matrix) {
      require_labels(*c.matrix, c.members, c.id);
      require_valid(*c.matrix, c.id);
    } else if (c.members.size() > 1) {
      partition_error("cluster '" + c.id + "' needs a comparison matrix", {{"cluster", c.id}});
    }
  }
  if (universe && members.size() != universe->size()) {
    nlohmann::json missing = nlohmann::json::array();
    for (const auto& d : universe->disorders())
      if (!members.count(d.id)) missing.push_back(d.id);
    partition_error("clusters do not cover every disorder", {{"missing", missing}});
  }
  if (h.cluster_matrix) {
    require_labels(*h.cluster_matrix, ids, "clusters");
    require_valid(*h.cluster_matrix, "clusters");
  } else if (h.clusters.size() > 1) {
    partition_error("hierarchy with several clusters needs a cluster matrix");
  }
}

HierarchyWeights weigh_hierarchy(const Hierarchy& h, const DisorderSet* universe) {
  validate_hierarchy(h, universe);
  HierarchyWeights out;

  for (const auto& c : h.clusters) out.cluster_weights.ids.push_back(c.id);
  if (h.cluster_matrix) {
    auto report = weigh_matrix(*h.cluster_matrix, "clusters");
    out.cluster_weights.values = report.eigen.weights.values;
    out.reports.push_back(std::move(report));
  } else {
    out.cluster_weights.values = {1.0};
  }

  for (std::size_t k = 0; k < h.clusters.size(); ++k) {
    const auto& c = h.clusters[k];
    WeightVector local;
    local.ids = c.members;
    if (c.matrix) {
      auto report = weigh_matrix(*c.matrix, c.id);
      local.values = report.eigen.weights.values;
      out.reports.push_back(std::move(report));
    } else {
      local.values = {1.0};
    }
    for (std::size_t i = 0; i < local.size(); ++i) {
      out.global.ids.push_back(local.ids[i]);
      out.global.values.push_back(out.cluster_weights.values[k] * local.values[i]);
    }
    out.per_cluster.emplace(c.id, std::move(local));
  }

  if (universe) {
    WeightVector ordered;
    for (const auto& d : universe->disorders()) {
      ordered.ids.push_back(d.id);
      ordered.values.push_back(out.global.at(d.id));
    }
    out.global = std::move(ordered);
  }
  return out;
}

ImportanceScale build_importance_scale(const std::vector<std::string>& levels,
                                       const ComparisonMatrix& level_matrix) {
  if (levels.size() < 2 || levels.size() > kMaxOrder) {
    throw Error(ErrorCode::InvalidMatrix, "an importance scale needs 2..9 levels",
                {{"levels", levels.size()}});
  }
  require_labels(level_matrix, levels, "levels");
  auto report = weigh_matrix(level_matrix, "levels");
  ImportanceScale scale;
  scale.levels = levels;
  scale.level_matrix = level_matrix;
  scale.level_weights = std::move(report.eigen.weights);
  scale.consistency = report.consistency;
  return scale;
}

ScaleWeights assign_scale_weights(const ImportanceScale& scale,
                                  const std::map<DisorderId, std::string>& assignment,
                                  const DisorderSet& universe) {
  for (const auto& [id, level] : assignment) universe.index_of(id);
  ScaleWeights out;
  for (const auto& d : universe.disorders()) {
    auto it = assignment.find(d.id);
    if (it == assignment.end()) {
      throw Error(ErrorCode::UnassignedDisorder,
                  "disorder '" + d.id + "' has no importance level", {{"id", d.id}});
    }
    auto level = std::find(scale.levels.begin(), scale.levels.end(), it->second);
    if (level == scale.levels.end()) {
      throw Error(ErrorCode::UnknownLevel, "unknown importance level '" + it->second + "'",
                  {{"id", d.id}, {"level", it->second}});
    }
    out.raw.ids.push_back(d.id);
    out.raw.values.push_back(
        scale.level_weights.values[static_cast<std::size_t>(level - scale.levels.begin())]);
  }
  const double total = out.raw.sum();
  out.normalized.ids = out.raw.ids;
  for (double v : out.raw.values) out.normalized.values.push_back(v / total);
  return out;
}

}  // namespace csa::weighting
