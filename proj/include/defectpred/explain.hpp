#pragma once

#include "defectpred/eval.hpp"

#include <string>
#include <utility>
#include <vector>

namespace defectpred::explain {

/// How concentrated the defects are: share held by the ten most defective
/// files, the single worst file, and the defective-file ratio.
struct SkewStats {
  int total_defects = 0;
  int max_count = 0;
  std::string max_file;
  double top10_share = 0.0;
  double defective_ratio = 0.0;
};

SkewStats defect_skew(const corpus::Release& release);

/// Signed Spearman correlation of one feature column against defect counts.
/// Negative correlates are reported with their sign — a package used mostly
/// by stable legacy code is as informative as a positive one.
struct FeatureCorrelation {
  std::string kind;
  std::string feature;
  double score = 0.0;
  int rank = 0;
};

/// Correlations for every term, type and package feature, ranked by
/// absolute score (ties by name).
std::vector<FeatureCorrelation> feature_correlations(const eval::ExtractedRelease& extracted);

struct TopicSummary {
  int topic = 0;
  double spearman = 0.0;                               // log-count column vs defects
  std::vector<std::string> top_words;                  // by phi, descending
  std::vector<std::pair<std::string, int>> top_files;  // name, assignment count
};

/// Fits one topic model on the whole release and summarizes each topic by
/// its strongest words, most relevant files, and defect correlation.
std::vector<TopicSummary> topic_summaries(const eval::ExtractedRelease& extracted, int topic_count,
                                          std::uint64_t seed, const topics::LdaConfig& config,
                                          int top_words, int top_files);

}  // namespace defectpred::explain
