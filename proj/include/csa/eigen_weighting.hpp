#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csa/comparison_matrix.hpp"
#include "csa/disorder.hpp"

namespace csa::weighting {

/// Normalized weights keyed by item id, kept in item order.
struct WeightVector {
  std::vector<std::string> ids;
  std::vector<double> values;

  std::size_t size() const noexcept { return ids.size(); }
  /// Throws UnknownDisorder.
  double at(const std::string& id) const;
  double sum() const;

  bool operator==(const WeightVector&) const = default;
};

struct PowerIterationOptions {
  /// Max-norm change between successive normalized iterates.
  double tolerance = 1e-10;
  /// Required bound on ||Mw - lambda w||_inf at exit.
  double residual_tolerance = 1e-8;
  std::size_t max_iterations = 10000;
};

struct EigenResult {
  WeightVector weights;
  double lambda_max = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double residual = 0.0;
};

/// Principal eigenpair by power iteration from the uniform vector. Weights sum
/// to 1; lambda_max is the mean of (Mw)_i / w_i. Throws InvalidMatrix for a
/// matrix with validation errors and NotConverged when the cap is hit.
EigenResult principal_eigen(const ComparisonMatrix& m, const PowerIterationOptions& opts = {});

/// Average random consistency index for orders 1..10.
double random_index(std::size_t n);

inline constexpr double kAcceptableRatio = 0.10;

struct ConsistencyReport {
  std::size_t order = 0;
  double lambda_max = 0.0;
  double consistency_index = 0.0;
  double random_index = 0.0;
  double consistency_ratio = 0.0;
  bool acceptable = true;
};

/// ratio = (lambda_max - n) / ((n - 1) RI(n)) for n >= 3, and 0 for n <= 2.
ConsistencyReport consistency(const ComparisonMatrix& m, const EigenResult& e);

struct Cluster {
  std::string id;
  std::vector<DisorderId> members;
  /// May be omitted for a single-member cluster.
  std::optional<ComparisonMatrix> matrix;

  bool operator==(const Cluster&) const = default;
};

/// Root -> clusters -> disorders. At most 9 clusters of at most 9 members.
struct Hierarchy {
  std::vector<Cluster> clusters;
  /// May be omitted when there is a single cluster.
  std::optional<ComparisonMatrix> cluster_matrix;

  bool operator==(const Hierarchy&) const = default;
};

struct MatrixReport {
  std::string matrix;  // "clusters" or the cluster id
  ConsistencyReport consistency;
  EigenResult eigen;
};

struct HierarchyWeights {
  WeightVector global;
  WeightVector cluster_weights;
  std::map<std::string, WeightVector> per_cluster;
  std::vector<MatrixReport> reports;
};

/// Checks the structure of a hierarchy; when a universe is given the members
/// must partition it exactly. Throws PartitionError or InvalidMatrix.
void validate_hierarchy(const Hierarchy& h, const DisorderSet* universe = nullptr);

/// Global weight of a disorder = cluster weight x local weight. Throws
/// PartitionError, InvalidMatrix, InconsistentMatrix (with the offending
/// matrix and its ratio), NotConverged.
HierarchyWeights weigh_hierarchy(const Hierarchy& h, const DisorderSet* universe = nullptr);

struct ImportanceScale {
  std::vector<std::string> levels;
  ComparisonMatrix level_matrix;
  WeightVector level_weights;
  ConsistencyReport consistency;
};

/// Throws InvalidMatrix (including level/label mismatch or a level count
/// outside 2..9) and InconsistentMatrix.
ImportanceScale build_importance_scale(const std::vector<std::string>& levels,
                                       const ComparisonMatrix& level_matrix);

struct ScaleWeights {
  /// Weight of the assigned level, per disorder, in universe order.
  WeightVector raw;
  /// raw divided by its sum.
  WeightVector normalized;
};

/// Throws UnassignedDisorder, UnknownLevel, UnknownDisorder.
ScaleWeights assign_scale_weights(const ImportanceScale& scale,
                                  const std::map<DisorderId, std::string>& assignment,
                                  const DisorderSet& universe);

}  // namespace csa::weighting
