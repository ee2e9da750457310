#pragma once

#include "defectpred/feature_matrix.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <utility>
#include <vector>

namespace defectpred::topics {

struct LdaConfig {
  double alpha = -1.0;  // < 0 means the 50/K heuristic
  double beta = 0.01;
  int iterations = 1000;
  int infer_iterations = 100;  // sweeps when folding in held-out documents
  bool allow_empty_docs = true;
  bool check_invariants = false;  // assert token conservation every sweep
};

/// Fitted LDA state from collapsed Gibbs sampling. phi rows are the
/// topic-word distributions; doc_topic_counts holds the final sample's
/// integer assignment counts, so each row sums to the document's length.
struct TopicModel {
  int topic_count = 0;
  int vocabulary_size = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  int iterations = 0;
  Eigen::MatrixXd phi;               // K x V
  Eigen::MatrixXi doc_topic_counts;  // D x K
};

/// Collapsed Gibbs sampling; fully deterministic for a given seed.
/// Documents are term-index lists over a vocabulary of `vocabulary_size`.
TopicModel fit_lda(const std::vector<std::vector<int>>& docs, int vocabulary_size,
                   int topic_count, std::uint64_t seed, const LdaConfig& config = {});

/// Topic assignment counts for a held-out document: Gibbs sweeps over the
/// document's assignments with the fitted phi held fixed.
Eigen::VectorXi infer_topic_counts(const TopicModel& model, const std::vector<int>& doc,
                                   std::uint64_t seed, int sweeps = 100);

/// ln(1 + count), compressing the imbalance between long and short files.
FeatureMatrix topic_matrix(const TopicModel& model);
FeatureMatrix topic_matrix(const Eigen::MatrixXi& doc_topic_counts);

/// The n files with the largest assignment count for topic k, ties broken
/// by canonical file order. Returns (file index, count) pairs.
std::vector<std::pair<int, int>> topic_top_files(const TopicModel& model, int k, int n);

}  // namespace defectpred::topics
