#pragma once

#include "defectpred/codefeat.hpp"
#include "defectpred/corpus.hpp"
#include "defectpred/featsel.hpp"
#include "defectpred/feature_matrix.hpp"
#include "defectpred/topicfeat.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace defectpred::eval {

/// Spearman ranked correlation between predictions and actual counts;
/// shares the implementation with feature selection.
double scc(const Eigen::Ref<const Eigen::VectorXd>& predicted,
           const Eigen::Ref<const Eigen::VectorXd>& actual);

/// Mean absolute error.
double mae(const Eigen::Ref<const Eigen::VectorXd>& predicted,
           const Eigen::Ref<const Eigen::VectorXd>& actual);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  bool degenerate = false;  // zero variance with nonzero mean difference
};

/// Paired t-test on aligned per-repetition metrics; two-sided p from the
/// t distribution with n-1 degrees of freedom.
TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

struct CvConfig {
  int repetitions = 50;
  double train_fraction = 0.9;
  std::uint64_t seed = 0;
  int threads = 1;
  bool stratified = false;  // preserve the defective/clean ratio per fold
};

/// Shuffled file order for one repetition. A pure function of (seed,
/// repetition, file_count): the same seed yields the same folds no matter
/// which pipeline runs on them, which is what makes paired t-tests between
/// configurations valid.
std::vector<std::size_t> fold_permutation(std::uint64_t seed, int repetition,
                                          std::size_t file_count);

/// Stratified variant for skew-distribution studies: defective and clean
/// files are shuffled within their groups, and each contributes its
/// train_fraction share to the front (training) segment. Depends only on
/// (seed, repetition, flags), so folds still match across pipeline configs.
std::vector<std::size_t> stratified_fold_permutation(std::uint64_t seed, int repetition,
                                                     const std::vector<bool>& defective,
                                                     double train_fraction,
                                                     std::size_t* train_size);

enum class FeatureKind { term, topic, type, package, baseline, combined };

std::string to_string(FeatureKind kind);
FeatureKind feature_kind_from(const std::string& name);

struct PipelineConfig {
  std::vector<FeatureKind> kinds = {FeatureKind::term};
  featsel::SelectionMethod method = featsel::SelectionMethod::spearman;
  int term_features = 5;
  int type_features = 10;
  int topics = 20;
  bool use_pca = true;
  double pca_threshold = 0.90;
  bool clamp_negative = false;
  bool raw_term_counts = false;  // counts instead of tf.idf
  topics::LdaConfig lda;

  std::string describe() const;
};

/// Release plus everything extracted once up front: stemmed term streams
/// and the resolved type catalog. Extraction is defect-independent, so it
/// is shared across folds; all fitted state (vocabulary, topic model,
/// selection, PCA, regression) is rebuilt per training fold.
struct ExtractedRelease {
  corpus::Release release;
  std::vector<std::vector<std::string>> terms;
  code::TypeCatalog catalog;
};

ExtractedRelease extract_release(corpus::Release release,
                                 const code::ExtractOptions& options = {});

struct RepMetrics {
  double scc = 0.0;
  double mae = 0.0;
};

struct EvalReport {
  std::string configuration;
  std::vector<RepMetrics> reps;
  std::vector<std::vector<std::size_t>> test_folds;  // per repetition

  double mean_scc() const;
  double mean_mae() const;
};

/// Monte-Carlo cross-validation: per repetition a seeded shuffle, a
/// train/test split, the full pipeline fitted on the training fold only,
/// and SCC/MAE on the held-out fold. Bit-identical for identical inputs.
EvalReport cross_validate(const ExtractedRelease& extracted, const PipelineConfig& config,
                          const CvConfig& cv);

struct AggregateRow {
  std::string configuration;
  std::string release;  // "ALL" = unweighted mean over releases
  double mean_scc = 0.0;
  double mean_mae = 0.0;
};

std::vector<AggregateRow> aggregate(
    const std::vector<std::pair<std::string, EvalReport>>& reports);

/// Pivoted text table: one row per release ("Across all releases" first),
/// SCC and MAE columns per configuration.
std::string format_aggregate_table(const std::vector<AggregateRow>& rows);

}  // namespace defectpred::eval
