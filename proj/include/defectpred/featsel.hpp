#pragma once

#include "defectpred/feature_matrix.hpp"

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

namespace defectpred::featsel {

enum class SelectionMethod { pearson, spearman, mi, none };

std::string to_string(SelectionMethod m);
SelectionMethod selection_method_from(const std::string& name);

/// Average ranks (1-based); tied values share the mean of their ranks.
Eigen::VectorXd average_ranks(const Eigen::Ref<const Eigen::VectorXd>& values);

/// Sample Pearson correlation; 0 when either vector is constant.
double score_pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& y);

/// Pearson correlation of average ranks.
double score_spearman(const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& y);

/// Plug-in mutual information in nats. Variables with at most 10 distinct
/// values keep one bin per value; otherwise 10 equal-frequency bins with
/// duplicate edges merged.
double score_mi(const Eigen::Ref<const Eigen::VectorXd>& x,
                const Eigen::Ref<const Eigen::VectorXd>& y);

struct SelectionResult {
  SelectionMethod method = SelectionMethod::none;
  Eigen::VectorXd scores;              // per input column
  std::vector<std::string> selected;   // by |score| desc, ties by name asc
  int requested = 0;
};

/// Scores every column against y and keeps the top `n` by absolute score
/// (strong negative correlates are as predictive as positive ones). With
/// method none the matrix passes through unchanged.
std::pair<SelectionResult, FeatureMatrix> select(const FeatureMatrix& matrix,
                                                 const Eigen::Ref<const Eigen::VectorXd>& y,
                                                 SelectionMethod method, int n);

struct PcaTransform {
  std::vector<std::string> fit_columns;  // full column set seen at fit time
  std::vector<std::size_t> kept;         // indices of non-constant columns
  Eigen::VectorXd means;                 // over kept columns
  Eigen::VectorXd scales;
  Eigen::MatrixXd loadings;              // kept x retained, column-orthonormal
  Eigen::VectorXd eigenvalues;           // all, descending
  int retained = 0;
  double threshold = 0.90;
};

/// Z-scores columns (constant columns dropped first), eigendecomposes the
/// covariance of the standardized data, and retains the smallest number of
/// components whose cumulative explained variance reaches the threshold.
PcaTransform pca_fit(const FeatureMatrix& matrix, double threshold = 0.90);

/// Projects with the fitted means/scales/loadings; never refits. The input
/// must carry exactly the columns seen at fit time.
FeatureMatrix pca_apply(const PcaTransform& transform, const FeatureMatrix& matrix);

/// Column-wise concatenation; column names get a kind prefix when combining
/// more than one matrix.
FeatureMatrix combine(const std::vector<FeatureMatrix>& matrices);

}  // namespace defectpred::featsel
