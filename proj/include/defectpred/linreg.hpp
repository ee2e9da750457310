#pragma once

#include "defectpred/feature_matrix.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace defectpred::linreg {

struct LinearModel {
  double intercept = 0.0;
  Eigen::VectorXd coefficients;
  std::vector<std::string> feature_names;
};

/// Ordinary least squares with intercept. Rank-deficient designs fall back
/// to a ridge jitter of 1e-8 on the normal-equation diagonal, which matches
/// the pseudo-inverse solution to well below typical tolerances.
LinearModel fit(const FeatureMatrix& x, const Eigen::Ref<const Eigen::VectorXd>& y);

/// intercept + X * coefficients; predictions may be negative by design —
/// rank metrics ignore the offset and clamping would bias the error metric.
Eigen::VectorXd predict(const LinearModel& model, const FeatureMatrix& x);

}  // namespace defectpred::linreg
