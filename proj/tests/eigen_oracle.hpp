#pragma once

#include <Eigen/Eigenvalues>

#include <utility>
#include <vector>

#include "csa/comparison_matrix.hpp"

namespace csa::test {

// Dense nonsymmetric eigensolver: the Perron root is the eigenvalue with the
// largest real part.
inline std::pair<double, std::vector<double>> oracle_eigen(const weighting::ComparisonMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.order());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < n; ++k)
    if (solver.eigenvalues()[k].real() > solver.eigenvalues()[best].real()) best = k;
  Eigen::VectorXd v = solver.eigenvectors().col(best).real().cwiseAbs();
  v /= v.sum();
  return {solver.eigenvalues()[best].real(), std::vector<double>(v.data(), v.data() + n)};
}

}  // namespace csa::test
