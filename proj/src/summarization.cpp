#include "maxpm/summarization.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace maxpm::summarization {

namespace {

constexpr double kSymmetryTol = 1e-9;

std::vector<double> parse_csv_row(const std::string& line, bool& numeric) {
  std::vector<double> row;
  std::stringstream cells(line);
  std::string cell;
  numeric = true;
  while (std::getline(cells, cell, ',')) {
    std::istringstream value(cell);
    double x = 0.0;
    std::string rest;
    if (!(value >> x) || (value >> rest)) {
      numeric = false;
      return {};
    }
    row.push_back(x);
  }
  return row;
}

}  // namespace

FrameFeatures load_features_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open " + path);

  FrameFeatures features;
  std::string line;
  int line_no = 0;
  bool first_data_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    bool numeric = false;
    std::vector<double> row = parse_csv_row(line, numeric);
    if (!numeric) {
      if (line_no == 1) continue;  // header row
      fail(ErrorCode::non_finite_feature,
           path + ":" + std::to_string(line_no) + ": non-numeric cell");
    }
    for (double x : row)
      if (!std::isfinite(x))
        fail(ErrorCode::non_finite_feature,
             path + ":" + std::to_string(line_no) + ": non-finite value");
    if (first_data_row) {
      features.cols = static_cast<int>(row.size());
      first_data_row = false;
    } else if (static_cast<int>(row.size()) != features.cols) {
      fail(ErrorCode::non_finite_feature,
           path + ":" + std::to_string(line_no) + ": ragged row");
    }
    features.data.insert(features.data.end(), row.begin(), row.end());
    ++features.rows;
  }
  if (features.rows == 0)
    fail(ErrorCode::config_error, path + ": no feature rows");
  return features;
}

GramMatrix::GramMatrix(int n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  if (n_ <= 0 || values_.size() != static_cast<size_t>(n_) * n_)
    fail(ErrorCode::config_error, "gram matrix shape mismatch");
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (std::abs(at(i, j) - at(j, i)) > kSymmetryTol)
        fail(ErrorCode::not_symmetric, "gram matrix is not symmetric");
}

double median_pairwise_distance(const FrameFeatures& features) {
  std::vector<double> dists;
  for (int i = 0; i < features.rows; ++i) {
    for (int j = i + 1; j < features.rows; ++j) {
      double d2 = 0.0;
      for (int c = 0; c < features.cols; ++c) {
        const double d = features.at(i, c) - features.at(j, c);
        d2 += d * d;
      }
      dists.push_back(std::sqrt(d2));
    }
  }
  if (dists.empty()) return 1.0;
  std::sort(dists.begin(), dists.end());
  const std::size_t mid = dists.size() / 2;
  const double median = dists.size() % 2 == 1
                            ? dists[mid]
                            : 0.5 * (dists[mid - 1] + dists[mid]);
  return median > 0.0 ? median : 1.0;
}

GramMatrix gaussian_gram(const FrameFeatures& features,
                         std::optional<double> bandwidth) {
  for (double x : features.data)
    if (!std::isfinite(x))
      fail(ErrorCode::non_finite_feature, "non-finite feature value");
  if (bandwidth && !(*bandwidth > 0.0))
    fail(ErrorCode::config_error, "bandwidth must be positive");

  const double h = bandwidth ? *bandwidth : median_pairwise_distance(features);
  const double scale = 1.0 / (2.0 * h * h);
  const int n = features.rows;
  std::vector<double> values(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    values[static_cast<size_t>(i) * n + static_cast<size_t>(i)] = 1.0;
    for (int j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      for (int c = 0; c < features.cols; ++c) {
        const double d = features.at(i, c) - features.at(j, c);
        d2 += d * d;
      }
      const double v = std::exp(-d2 * scale);
      values[static_cast<size_t>(i) * n + static_cast<size_t>(j)] = v;
      values[static_cast<size_t>(j) * n + static_cast<size_t>(i)] = v;
    }
  }
  return GramMatrix(n, std::move(values));
}

GramMatrix load_gram_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open " + path);
  std::vector<double> values;
  std::string line;
  int rows = 0;
  int cols = -1;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    bool numeric = false;
    std::vector<double> row = parse_csv_row(line, numeric);
    if (!numeric)
      fail(ErrorCode::malformed_line, path + ": non-numeric cell");
    if (cols == -1)
      cols = static_cast<int>(row.size());
    else if (static_cast<int>(row.size()) != cols)
      fail(ErrorCode::malformed_line, path + ": ragged row");
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows != cols)
    fail(ErrorCode::config_error, path + ": gram matrix must be square");
  return GramMatrix(rows, std::move(values));
}

void save_gram_csv(const GramMatrix& gram, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot open " + path + " for writing");
  out.precision(17);
  for (int i = 0; i < gram.n(); ++i) {
    for (int j = 0; j < gram.n(); ++j) {
      if (j) out << ',';
      out << gram.at(i, j);
    }
    out << '\n';
  }
}

namespace {

// 2 * sum of log pivots of the Cholesky factor of I + X_S; throws on a
// non-positive pivot (the submatrix should be positive definite for any
// kernel-built X).
double logdet_submatrix(const GramMatrix& gram,
                        std::span<const ElementId> set) {
  const int k = static_cast<int>(set.size());
  if (k == 0) return 0.0;
  std::vector<double> a(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      a[static_cast<size_t>(i) * k + static_cast<size_t>(j)] =
          (i == j ? 1.0 : 0.0) + gram.at(set[static_cast<size_t>(i)],
                                         set[static_cast<size_t>(j)]);
  double logdet = 0.0;
  for (int j = 0; j < k; ++j) {
    double d = a[static_cast<size_t>(j) * k + static_cast<size_t>(j)];
    for (int r = 0; r < j; ++r) {
      const double l = a[static_cast<size_t>(j) * k + static_cast<size_t>(r)];
      d -= l * l;
    }
    if (d <= 0.0)
      fail(ErrorCode::factorization_failure,
           "non-positive pivot in Cholesky factorization");
    const double root = std::sqrt(d);
    logdet += 2.0 * std::log(root);
    a[static_cast<size_t>(j) * k + static_cast<size_t>(j)] = root;
    for (int i = j + 1; i < k; ++i) {
      double v = a[static_cast<size_t>(i) * k + static_cast<size_t>(j)];
      for (int r = 0; r < j; ++r)
        v -= a[static_cast<size_t>(i) * k + static_cast<size_t>(r)] *
             a[static_cast<size_t>(j) * k + static_cast<size_t>(r)];
      a[static_cast<size_t>(i) * k + static_cast<size_t>(j)] = v / root;
    }
  }
  return logdet;
}

class DetOracle final : public ObjectiveOracle {
 public:
  explicit DetOracle(const GramMatrix& gram) : gram_(&gram) {}
  double value(std::span<const ElementId> set) const override {
    return std::exp(logdet_submatrix(*gram_, set));
  }

 private:
  const GramMatrix* gram_;
};

class LogDetOracle final : public ObjectiveOracle {
 public:
  explicit LogDetOracle(const GramMatrix& gram) : gram_(&gram) {}
  double value(std::span<const ElementId> set) const override {
    return logdet_submatrix(*gram_, set);
  }

 private:
  const GramMatrix* gram_;
};

}  // namespace

std::unique_ptr<ObjectiveOracle> det_objective(const GramMatrix& gram) {
  return std::make_unique<DetOracle>(gram);
}

std::unique_ptr<ObjectiveOracle> logdet_objective(const GramMatrix& gram) {
  return std::make_unique<LogDetOracle>(gram);
}

std::vector<double> symmetric_eigenvalues(std::vector<double> matrix, int n,
                                          double tol, int max_sweeps) {
  if (n <= 0 || matrix.size() != static_cast<size_t>(n) * n)
    fail(ErrorCode::config_error, "matrix shape mismatch");
  auto at = [&](int i, int j) -> double& {
    return matrix[static_cast<size_t>(i) * n + static_cast<size_t>(j)];
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(at(i, j) - at(j, i)) >
          kSymmetryTol * std::max(1.0, std::max(std::abs(at(i, j)),
                                                std::abs(at(j, i)))))
        fail(ErrorCode::not_symmetric, "matrix is not symmetric");
      // Exact symmetry keeps the sweep updates self-consistent.
      const double avg = 0.5 * (at(i, j) + at(j, i));
      at(i, j) = avg;
      at(j, i) = avg;
    }

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(at(p, q)));
    if (off < tol) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = at(p, p);
        const double aqq = at(q, q);
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = at(i, p);
          const double aiq = at(i, q);
          at(i, p) = aip - s * (aiq + tau * aip);
          at(p, i) = at(i, p);
          at(i, q) = aiq + s * (aip - tau * aiq);
          at(q, i) = at(i, q);
        }
      }
    }
  }

  std::vector<double> eigenvalues(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) eigenvalues[static_cast<size_t>(i)] = at(i, i);
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<double>());
  return eigenvalues;
}

NonSubmodParams spectral_gamma_bound(const GramMatrix& gram, int total_budget,
                                     double tol) {
  const int n = gram.n();
  if (total_budget < 1 || total_budget > n)
    fail(ErrorCode::config_error, "total budget must lie in [1, n]");

  std::vector<double> a(gram.values());
  for (int i = 0; i < n; ++i)
    a[static_cast<size_t>(i) * n + static_cast<size_t>(i)] += 1.0;
  const std::vector<double> lambda = symmetric_eigenvalues(std::move(a), n);

  NonSubmodParams params;
  params.provenance = ParamProvenance::bound;
  params.alpha = 0.0;
  if (lambda.front() <= 1.0 + tol) {
    // Numerically X = 0: the objective is constant and the bound is moot.
    params.gamma = 1.0;
    params.degenerate_spectrum = true;
    return params;
  }
  double gamma = (lambda.back() - 1.0) / (lambda.front() - 1.0);
  for (int i = 0; i < total_budget; ++i)
    gamma /= lambda[static_cast<size_t>(i)];
  params.gamma = std::clamp(gamma, 0.0, 1.0);
  return params;
}

PartitionMatroid segment_partition(int n, int k, int per_segment_budget) {
  if (k < 1 || k > n)
    fail(ErrorCode::config_error, "segment count must lie in [1, n]");
  if (per_segment_budget < 1 || per_segment_budget > n / k)
    fail(ErrorCode::budget_exceeds_segment,
         "per-segment budget must lie in [1, floor(n/k)]");
  std::vector<std::vector<ElementId>> groups(static_cast<size_t>(k));
  int next = 0;
  for (int i = 0; i < k; ++i) {
    const int size = n / k + (i < n % k ? 1 : 0);
    for (int j = 0; j < size; ++j) groups[static_cast<size_t>(i)].push_back(next++);
  }
  return PartitionMatroid(std::move(groups),
                          std::vector<int>(static_cast<size_t>(k),
                                           per_segment_budget));
}

}  // namespace maxpm::summarization
