#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

namespace defectpred {

/// Dense feature table: one row per source file (release canonical order),
/// one named column per feature. `kind` identifies the feature family
/// (term, topic, type, package, baseline, combined).
struct FeatureMatrix {
  std::string kind;
  std::vector<std::string> columns;
  Eigen::MatrixXd values;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

}  // namespace defectpred
