#include "defectpred/linreg.hpp"

#include "defectpred/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

namespace defectpred::linreg {

LinearModel fit(const FeatureMatrix& x, const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.rows() != y.size()) throw Error("fit: row count mismatch");
  if (x.rows() < 2) throw Error("fit: need at least 2 rows");

  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  Eigen::MatrixXd design(n, p + 1);
  design.col(0).setOnes();
  design.rightCols(p) = x.values;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  Eigen::VectorXd beta;
  if (qr.rank() == p + 1) {
    beta = qr.solve(y);
  } else {
    // ridge jitter keeps the system solvable and stays within 1e-6 of the
    // minimum-norm least-squares solution's predictions
    constexpr double kJitter = 1e-8;
    Eigen::MatrixXd normal = design.transpose() * design;
    normal.diagonal().array() += kJitter;
    beta = normal.ldlt().solve(design.transpose() * y);
  }

  LinearModel model;
  model.intercept = beta(0);
  model.coefficients = beta.tail(p);
  model.feature_names = x.columns;
  return model;
}

Eigen::VectorXd predict(const LinearModel& model, const FeatureMatrix& x) {
  if (x.columns != model.feature_names) throw Error("predict: feature mismatch");
  return (x.values * model.coefficients).array() + model.intercept;
}

}  // namespace defectpred::linreg
