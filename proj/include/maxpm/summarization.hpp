#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maxpm/matroid.hpp"
#include "maxpm/oracle.hpp"
#include "maxpm/quantify.hpp"

namespace maxpm::summarization {

// Precomputed per-frame feature vectors, row-major (rows = frames).
struct FrameFeatures {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  double at(int i, int j) const {
    return data[static_cast<size_t>(i) * cols + static_cast<size_t>(j)];
  }
};

// CSV with one row per frame; an optional non-numeric header row is skipped.
// Rejects non-finite entries and ragged rows.
FrameFeatures load_features_csv(const std::string& path);

// Symmetric Gaussian-kernel Gram matrix: unit diagonal, entries in (0, 1],
// positive semidefinite by construction.
class GramMatrix {
 public:
  GramMatrix(int n, std::vector<double> values);  // validates symmetry

  int n() const { return n_; }
  double at(int i, int j) const {
    return values_[static_cast<size_t>(i) * n_ + static_cast<size_t>(j)];
  }
  const std::vector<double>& values() const { return values_; }

 private:
  int n_;
  std::vector<double> values_;
};

// X_ij = exp(-||x_i - x_j||^2 / (2 h^2)). Without an explicit bandwidth the
// median of all pairwise distances is used (falling back to 1 when there are
// no distinct points).
GramMatrix gaussian_gram(const FrameFeatures& features,
                         std::optional<double> bandwidth = std::nullopt);

double median_pairwise_distance(const FrameFeatures& features);

GramMatrix load_gram_csv(const std::string& path);
void save_gram_csv(const GramMatrix& gram, const std::string& path);

// f(S) = det(I + X_S), computed by Cholesky factorization of the principal
// submatrix with the log-determinant accumulated and exponentiated at the
// boundary (overflow yields +inf). f(empty) = 1; wrap with normalize() before
// running algorithms on it.
std::unique_ptr<ObjectiveOracle> det_objective(const GramMatrix& gram);

// log det(I + X_S): already normalized, but a different objective than
// det_objective (its gamma/alpha differ); offered for instances whose
// determinant overflows.
std::unique_ptr<ObjectiveOracle> logdet_objective(const GramMatrix& gram);

// Eigenvalues of a symmetric matrix (row-major n x n) by cyclic Jacobi
// rotations, swept until every off-diagonal magnitude is below tol (at most
// max_sweeps sweeps); returned in descending order.
std::vector<double> symmetric_eigenvalues(std::vector<double> matrix, int n,
                                          double tol = 1e-10,
                                          int max_sweeps = 100);

// Lower bound on gamma for the determinant objective from the spectrum of
// A = I + X, with eigenvalues l_1 >= ... >= l_n:
//   gamma' = (l_n - 1) / (l_1 - 1) * prod_{i=1..b} 1 / l_i,  alpha' = 0.
// When l_1 <= 1 + tol the matrix is numerically the identity, the objective
// is constant and the trivial (1, 0) is returned with the degenerate flag.
NonSubmodParams spectral_gamma_bound(const GramMatrix& gram, int total_budget,
                                     double tol = 1e-9);

// k contiguous equal-length segments over frames 0..n-1 (remainder frames go
// to the earliest segments), each with the same budget.
PartitionMatroid segment_partition(int n, int k, int per_segment_budget);

}  // namespace maxpm::summarization
