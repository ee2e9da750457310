#include "defectpred/featsel.hpp"

#include "defectpred/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace defectpred::featsel {

namespace {

void check_lengths(const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) throw Error("score: length mismatch");
  if (x.size() < 2) throw Error("score: need at least 2 observations");
}

// Equal-frequency discretization used by score_mi. Values with few distinct
// levels keep one bin per level so binary and count-like variables are used
// as-is.
std::vector<int> discretize(const Eigen::Ref<const Eigen::VectorXd>& values, int bins) {
  const auto n = static_cast<std::size_t>(values.size());
  std::vector<double> sorted(values.data(), values.data() + values.size());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct(sorted);
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<double> edges;  // bin of x = number of edges < x
  if (distinct.size() <= static_cast<std::size_t>(bins)) {
    edges.assign(distinct.begin() + 1, distinct.end());
  } else {
    for (int b = 1; b < bins; ++b) {
      std::size_t idx = n * static_cast<std::size_t>(b) / static_cast<std::size_t>(bins);
      edges.push_back(sorted[idx]);
    }
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    // values equal to an edge fall in the upper bin
    out[i] = static_cast<int>(
        std::upper_bound(edges.begin(), edges.end(), values(static_cast<Eigen::Index>(i))) -
        edges.begin());
  }
  return out;
}

double score_column(const Eigen::Ref<const Eigen::VectorXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& y, SelectionMethod method) {
  switch (method) {
    case SelectionMethod::pearson: return score_pearson(x, y);
    case SelectionMethod::spearman: return score_spearman(x, y);
    case SelectionMethod::mi: return score_mi(x, y);
    case SelectionMethod::none: return 0.0;
  }
  return 0.0;
}

}  // namespace

std::string to_string(SelectionMethod m) {
  switch (m) {
    case SelectionMethod::pearson: return "pearson";
    case SelectionMethod::spearman: return "spearman";
    case SelectionMethod::mi: return "mi";
    case SelectionMethod::none: return "none";
  }
  return "none";
}

SelectionMethod selection_method_from(const std::string& name) {
  if (name == "pearson") return SelectionMethod::pearson;
  if (name == "spearman") return SelectionMethod::spearman;
  if (name == "mi") return SelectionMethod::mi;
  if (name == "none") return SelectionMethod::none;
  throw Error("unknown selection method '" + name + "'");
}

Eigen::VectorXd average_ranks(const Eigen::Ref<const Eigen::VectorXd>& values) {
  const auto n = static_cast<std::size_t>(values.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values(static_cast<Eigen::Index>(a)) < values(static_cast<Eigen::Index>(b));
  });
  Eigen::VectorXd ranks(values.size());
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values(static_cast<Eigen::Index>(order[j + 1])) ==
                            values(static_cast<Eigen::Index>(order[i])))
      ++j;
    double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks(static_cast<Eigen::Index>(order[k])) = rank;
    i = j + 1;
  }
  return ranks;
}

double score_pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& y) {
  check_lengths(x, y);
  const double n = static_cast<double>(x.size());
  Eigen::VectorXd xc = x.array() - x.mean();
  Eigen::VectorXd yc = y.array() - y.mean();
  double sx = xc.squaredNorm() / (n - 1);
  double sy = yc.squaredNorm() / (n - 1);
  if (sx <= 0.0 || sy <= 0.0) return 0.0;
  double cov = xc.dot(yc) / (n - 1);
  return cov / std::sqrt(sx * sy);
}

double score_spearman(const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& y) {
  check_lengths(x, y);
  return score_pearson(average_ranks(x), average_ranks(y));
}

double score_mi(const Eigen::Ref<const Eigen::VectorXd>& x,
                const Eigen::Ref<const Eigen::VectorXd>& y) {
  check_lengths(x, y);
  constexpr int kBins = 10;
  std::vector<int> bx = discretize(x, kBins);
  std::vector<int> by = discretize(y, kBins);
  const auto n = static_cast<double>(bx.size());
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> px;
  std::map<int, double> py;
  for (std::size_t i = 0; i < bx.size(); ++i) {
    joint[{bx[i], by[i]}] += 1.0;
    px[bx[i]] += 1.0;
    py[by[i]] += 1.0;
  }
  double mi = 0.0;
  for (const auto& [cell, count] : joint) {
    double pxy = count / n;
    mi += pxy * std::log(pxy / ((px[cell.first] / n) * (py[cell.second] / n)));
  }
  return std::max(mi, 0.0);
}

std::pair<SelectionResult, FeatureMatrix> select(const FeatureMatrix& matrix,
                                                 const Eigen::Ref<const Eigen::VectorXd>& y,
                                                 SelectionMethod method, int n) {
  SelectionResult result;
  result.method = method;
  result.requested = n;
  if (method == SelectionMethod::none) {
    result.scores = Eigen::VectorXd::Zero(matrix.cols());
    result.selected = matrix.columns;
    return {std::move(result), matrix};
  }
  if (matrix.cols() == 0) throw Error("select: no scorable columns");
  if (n < 1) throw Error("select: n must be >= 1");

  result.scores.resize(matrix.cols());
  for (Eigen::Index c = 0; c < matrix.cols(); ++c)
    result.scores(c) = score_column(matrix.values.col(c), y, method);

  std::vector<std::size_t> order(static_cast<std::size_t>(matrix.cols()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double sa = std::abs(result.scores(static_cast<Eigen::Index>(a)));
    double sb = std::abs(result.scores(static_cast<Eigen::Index>(b)));
    if (sa != sb) return sa > sb;
    return matrix.columns[a] < matrix.columns[b];
  });
  std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(n), order.size());
  order.resize(keep);

  FeatureMatrix reduced;
  reduced.kind = matrix.kind;
  reduced.values.resize(matrix.rows(), static_cast<Eigen::Index>(keep));
  for (std::size_t c = 0; c < keep; ++c) {
    reduced.columns.push_back(matrix.columns[order[c]]);
    reduced.values.col(static_cast<Eigen::Index>(c)) =
        matrix.values.col(static_cast<Eigen::Index>(order[c]));
  }
  result.selected = reduced.columns;
  return {std::move(result), std::move(reduced)};
}

PcaTransform pca_fit(const FeatureMatrix& matrix, double threshold) {
  if (matrix.rows() < 2) throw Error("pca_fit: need at least 2 rows");
  PcaTransform t;
  t.threshold = threshold;
  t.fit_columns = matrix.columns;

  Eigen::VectorXd mean = matrix.values.colwise().mean();
  const double n = static_cast<double>(matrix.rows());
  for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
    double var = (matrix.values.col(c).array() - mean(c)).square().sum() / (n - 1);
    if (var > 0.0) t.kept.push_back(static_cast<std::size_t>(c));
  }
  if (t.kept.empty()) throw Error("pca_fit: all columns have zero variance");

  const auto d = static_cast<Eigen::Index>(t.kept.size());
  Eigen::MatrixXd z(matrix.rows(), d);
  t.means.resize(d);
  t.scales.resize(d);
  for (Eigen::Index c = 0; c < d; ++c) {
    auto col = matrix.values.col(static_cast<Eigen::Index>(t.kept[static_cast<std::size_t>(c)]));
    t.means(c) = mean(static_cast<Eigen::Index>(t.kept[static_cast<std::size_t>(c)]));
    double sd = std::sqrt((col.array() - t.means(c)).square().sum() / (n - 1));
    t.scales(c) = sd;
    z.col(c) = (col.array() - t.means(c)) / sd;
  }

  Eigen::MatrixXd cov = (z.transpose() * z) / (n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw Error("pca_fit: eigendecomposition failed");

  // SelfAdjointEigenSolver sorts ascending; flip to descending and clamp
  // the tiny negative eigenvalues a rank-deficient covariance produces.
  Eigen::VectorXd eigenvalues = solver.eigenvalues().reverse();
  Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    eigenvalues(i) = std::max(eigenvalues(i), 0.0);

  // Deterministic sign: largest-magnitude entry of each component positive.
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index arg = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, c) < 0) vectors.col(c) = -vectors.col(c);
  }

  double total = eigenvalues.sum();
  if (total <= 0.0) throw Error("pca_fit: degenerate covariance");
  double cumulative = 0.0;
  int retained = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    cumulative += eigenvalues(i);
    ++retained;
    if (cumulative / total >= threshold) break;
  }
  t.eigenvalues = eigenvalues;
  t.retained = retained;
  t.loadings = vectors.leftCols(retained);
  return t;
}

FeatureMatrix pca_apply(const PcaTransform& t, const FeatureMatrix& matrix) {
  if (matrix.columns != t.fit_columns) throw Error("pca_apply: column mismatch with fit");
  const auto d = static_cast<Eigen::Index>(t.kept.size());
  Eigen::MatrixXd z(matrix.rows(), d);
  for (Eigen::Index c = 0; c < d; ++c) {
    auto col = matrix.values.col(static_cast<Eigen::Index>(t.kept[static_cast<std::size_t>(c)]));
    z.col(c) = (col.array() - t.means(c)) / t.scales(c);
  }
  FeatureMatrix out;
  out.kind = matrix.kind;
  out.values = z * t.loadings;
  for (int c = 1; c <= t.retained; ++c) out.columns.push_back("pc" + std::to_string(c));
  return out;
}

FeatureMatrix combine(const std::vector<FeatureMatrix>& matrices) {
  if (matrices.empty()) throw Error("combine: no matrices");
  if (matrices.size() == 1) return matrices.front();
  const Eigen::Index rows = matrices.front().rows();
  Eigen::Index cols = 0;
  for (const auto& m : matrices) {
    if (m.rows() != rows) throw Error("combine: row count mismatch");
    cols += m.cols();
  }
  FeatureMatrix out;
  out.kind = "combined";
  out.values.resize(rows, cols);
  Eigen::Index at = 0;
  for (const auto& m : matrices) {
    for (const auto& name : m.columns) out.columns.push_back(m.kind + ":" + name);
    out.values.middleCols(at, m.cols()) = m.values;
    at += m.cols();
  }
  return out;
}

}  // namespace defectpred::featsel
