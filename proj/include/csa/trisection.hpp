#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csa/order_relations.hpp"

namespace csa::trisection {

/// Values keyed by disorder id in universe order. Both ESV lists and weight
/// vectors reduce to this at the trisection layer.
struct ValueMap {
  std::vector<std::string> ids;
  std::vector<double> values;

  std::size_t size() const noexcept { return ids.size(); }
};

struct EsvEntry {
  std::string id;
  std::size_t dominated = 0;  // |{x : d > x}|
  double value = 0.0;         // dominated / n
};

struct EsvList {
  std::size_t n = 0;
  /// Universe order.
  std::vector<EsvEntry> entries;
  /// Descending by value, ties in universe order.
  std::vector<EsvEntry> descending;

  ValueMap values() const;
};

EsvList esv(const order::StrictRelation& rel);

/// Kahn's algorithm; among available items the earliest in insertion order
/// goes first. Throws CycleDetected with one cycle as witness.
std::vector<std::size_t> topo_rank(const order::StrictRelation& rel);

/// Indices (position in `values`) sorted by descending value, ties by position.
std::vector<std::size_t> descending_order(const std::vector<double>& values);

struct Thresholds {
  double h = 0.0;
  double l = 0.0;
  /// 1-based positions in the descending list (percentile method only).
  std::size_t h_index = 0;
  std::size_t l_index = 0;
};

/// h = v[max(1, floor(beta n / 100))], l = v[ceil(alpha n / 100)], positions
/// clamped to [1, n], over a descending list. Throws BadPercentiles.
Thresholds percentile_thresholds(const std::vector<double>& descending, double alpha,
                                 double beta);

struct StatisticalThresholds {
  double h = 0.0;
  double l = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
};

/// Population mean and standard deviation; h = mu + k1 sigma, l = mu - k2 sigma.
/// Throws BadParameters for negative offsets or an empty input.
StatisticalThresholds statistical_thresholds(const std::vector<double>& values, double k1,
                                             double k2);

enum class Method { Percentile, Statistical };

std::string_view to_string(Method m);
/// Throws BadParameters.
Method parse_method(std::string_view name);

struct Params {
  Method method = Method::Percentile;
  double alpha = 0.0;
  double beta = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;

  bool operator==(const Params&) const = default;
};

/// Checks the ranges for the chosen method. Throws BadPercentiles or BadParameters.
void validate(const Params& p);

struct Trisection {
  Method method = Method::Percentile;
  double h = 0.0;
  double l = 0.0;
  std::optional<double> mu;
  std::optional<double> sigma;
  /// Each region sorted by descending value, then universe order.
  std::vector<std::string> high;
  std::vector<std::string> medium;
  std::vector<std::string> low;
};

/// H = {v >= h}; L = {v <= l} \ H; M = the rest. Throws ThresholdOrder.
Trisection trisect(const ValueMap& values, double h, double l);

/// Thresholds from params, then regions.
Trisection run(const ValueMap& values, const Params& params);

}  // namespace csa::trisection
