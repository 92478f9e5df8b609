#include "csa/comparison_matrix.hpp"

#include <cmath>
#include <set>

#include "csa/error.hpp"

namespace csa::weighting {

ComparisonMatrix::ComparisonMatrix(std::vector<std::string> labels,
                                   std::vector<std::vector<double>> rows)
    : labels_(std::move(labels)) {
  const auto n = labels_.size();
  if (rows.size() != n) {
    throw Error(ErrorCode::InvalidMatrix,
                "matrix has " + std::to_string(rows.size()) + " rows for " +
                    std::to_string(n) + " labels",
                {{"rows", rows.size()}, {"labels", n}});
  }
  entries_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::InvalidMatrix,
                  "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                      " entries, expected " + std::to_string(n),
                  {{"row", i}});
    }
    entries_.insert(entries_.end(), rows[i].begin(), rows[i].end());
  }
}

ComparisonMatrix ComparisonMatrix::ones(std::vector<std::string> labels) {
  const auto n = labels.size();
  return ComparisonMatrix(std::move(labels),
                          std::vector<std::vector<double>>(n, std::vector<double>(n, 1.0)));
}

ComparisonMatrix ComparisonMatrix::from_weights(std::vector<std::string> labels,
                                                const std::vector<double>& weights) {
  const auto n = weights.size();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) rows[i][j] = weights[i] / weights[j];
  return ComparisonMatrix(std::move(labels), std::move(rows));
}

std::vector<std::vector<double>> ComparisonMatrix::rows() const {
  const auto n = order();
  std::vector<std::vector<double>> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i].assign(entries_.begin() + static_cast<std::ptrdiff_t>(i * n),
                  entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
  return out;
}

ComparisonMatrix ComparisonMatrix::permuted(const std::vector<std::size_t>& perm) const {
  const auto n = order();
  std::vector<std::string> labels(n);
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = labels_[perm[a]];
    for (std::size_t b = 0; b < n; ++b) rows[a][b] = (*this)(perm[a], perm[b]);
  }
  return ComparisonMatrix(std::move(labels), std::move(rows));
}

const char* to_string(MatrixIssue::Kind kind) {
  switch (kind) {
    case MatrixIssue::Kind::OrderBound: return "ORDER_BOUND";
    case MatrixIssue::Kind::DuplicateLabel: return "DUPLICATE_LABEL";
    case MatrixIssue::Kind::NonPositive: return "NON_POSITIVE";
    case MatrixIssue::Kind::Diagonal: return "DIAGONAL";
    case MatrixIssue::Kind::Reciprocity: return "RECIPROCITY";
    case MatrixIssue::Kind::OffScale: return "OFF_SCALE";
  }
  return "";
}

bool on_saaty_scale(double value) {
  for (int k = 1; k <= 9; ++k) {
    if (std::abs(value - k) <= kReciprocityTolerance * k) return true;
    if (std::abs(value - 1.0 / k) <= kReciprocityTolerance / k) return true;
  }
  return false;
}

ValidationReport validate_matrix(const ComparisonMatrix& m) {
  using Kind = MatrixIssue::Kind;
  ValidationReport report;
  const auto n = m.order();
  if (n < 1 || n > kMaxOrder) {
    report.errors.push_back({Kind::OrderBound, 0, 0,
                             "order " + std::to_string(n) + " outside 1.." +
                                 std::to_string(kMaxOrder)});
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen.insert(m.labels()[i]).second) {
      report.errors.push_back({Kind::DuplicateLabel, i, i,
                               "duplicate label '" + m.labels()[i] + "'"});
    }
  }
  auto cell = [](std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v) || v <= 0.0) {
        report.errors.push_back({Kind::NonPositive, i, j,
                                 "entry " + cell(i, j) + " must be positive and finite"});
        continue;
      }
      if (i == j) {
        if (v != 1.0) {
          report.errors.push_back({Kind::Diagonal, i, j,
                                   "diagonal entry " + cell(i, j) + " must be exactly 1"});
        }
        continue;
      }
      if (j < i) {
        const double mirror = m(j, i);
        if (std::isfinite(mirror) && mirror > 0.0 &&
            std::abs(v * mirror - 1.0) > kReciprocityTolerance) {
          report.errors.push_back({Kind::Reciprocity, i, j,
                                   "entry " + cell(i, j) + " is not the reciprocal of " +
                                       cell(j, i)});
        }
      }
      if (!on_saaty_scale(v)) {
        report.warnings.push_back({Kind::OffScale, i, j,
                                   "entry " + cell(i, j) + " is off the 1-9 rating scale"});
      }
    }
  }
  return report;
}

void require_valid(const ComparisonMatrix& m, const std::string& name) {
  auto report = validate_matrix(m);
  if (report.valid()) return;
  nlohmann::json errors = nlohmann::json::array();
  for (const auto& e : report.errors) {
    errors.push_back({{"kind", to_string(e.kind)},
                      {"row", e.row},
                      {"col", e.col},
                      {"message", e.message}});
  }
  throw Error(ErrorCode::InvalidMatrix, name + " is not a valid comparison matrix: " +
                                            report.errors.front().message,
              {{"matrix", name}, {"errors", errors}});
}

}  // namespace csa::weighting
