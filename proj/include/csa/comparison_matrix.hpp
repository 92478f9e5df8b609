#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace csa::weighting {

inline constexpr std::size_t kMaxOrder = 9;
inline constexpr double kReciprocityTolerance = 1e-9;

/// Square pairwise comparison matrix over labelled items. The constructor only
/// checks shape; positivity, reciprocity and the order bound are reported by
/// validate_matrix so that broken input can still be inspected.
class ComparisonMatrix {
 public:
  ComparisonMatrix() = default;

  /// Throws InvalidMatrix when rows are not n x n for n = labels.size().
  ComparisonMatrix(std::vector<std::string> labels, std::vector<std::vector<double>> rows);

  /// All-ones (perfectly consistent, uniform) matrix.
  static ComparisonMatrix ones(std::vector<std::string> labels);

  /// Rank-one consistent matrix with entries w_i / w_j.
  static ComparisonMatrix from_weights(std::vector<std::string> labels,
                                       const std::vector<double>& weights);

  std::size_t order() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  double operator()(std::size_t i, std::size_t j) const { return entries_[i * order() + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * order() + j]; }

  std::vector<std::vector<double>> rows() const;

  /// Same matrix with items reordered: result item k is this item perm[k].
  ComparisonMatrix permuted(const std::vector<std::size_t>& perm) const;

  bool operator==(const ComparisonMatrix&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> entries_;
};

struct MatrixIssue {
  enum class Kind {
    OrderBound,
    DuplicateLabel,
    NonPositive,
    Diagonal,
    Reciprocity,
    OffScale,
  };
  Kind kind;
  std::size_t row = 0;
  std::size_t col = 0;
  std::string message;
};

const char* to_string(MatrixIssue::Kind kind);

struct ValidationReport {
  std::vector<MatrixIssue> errors;
  /// Entries outside the Saaty set {1..9} and {1/2..1/9}.
  std::vector<MatrixIssue> warnings;

  bool valid() const noexcept { return errors.empty(); }
};

ValidationReport validate_matrix(const ComparisonMatrix& m);

/// Throws InvalidMatrix with the report attached when validation has errors.
void require_valid(const ComparisonMatrix& m, const std::string& name = "matrix");

/// True for 1..9 and 1/2..1/9 within the reciprocity tolerance.
bool on_saaty_scale(double value);

}  // namespace csa::weighting
