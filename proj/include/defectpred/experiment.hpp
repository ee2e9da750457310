#pragma once

#include "defectpred/eval.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace defectpred::experiment {

/// One experiment: a matrix of pipeline configurations over feature kinds,
/// selection methods and count sweeps. Empty count lists fall back to the
/// per-kind sweep defaults; the pseudo-kind `combined` additionally runs
/// the concatenation of the other listed kinds (requires at least two).
struct ExperimentSpec {
  std::vector<eval::FeatureKind> kinds;
  std::vector<featsel::SelectionMethod> methods = {featsel::SelectionMethod::spearman};
  std::vector<int> term_counts;   // default {3,5,10,20,50,100,200}
  std::vector<int> type_counts;   // default {5,10,20,50,100}
  std::vector<int> topic_counts;  // default {5,10,15,20,30,50,100}
  bool use_pca = true;
  double pca_threshold = 0.90;
  bool clamp_negative = false;
  bool raw_term_counts = false;
  eval::CvConfig cv;
  topics::LdaConfig lda;
};

/// Expands an ExperimentSpec into concrete pipeline configurations, in a
/// fixed, reproducible order. Combined runs use single best-setting
/// defaults (term 5, type 10, 20 topics) unless explicit lists are given.
std::vector<eval::PipelineConfig> expand_configs(const ExperimentSpec& spec);

struct PairedComparison {
  std::string release;  // "ALL" pools repetitions across releases
  std::string metric;   // scc | mae
  std::string config_a;
  std::string config_b;
  eval::TTestResult result;
};

struct ExperimentResult {
  std::vector<std::pair<std::string, eval::EvalReport>> reports;  // (release, report)
  std::vector<PairedComparison> ttests;
  std::vector<std::string> failures;  // infeasible configs, recorded not fatal
};

/// Runs every configuration on every extracted release, writes per-config
/// report files, the aggregate table, and pairwise t-tests between
/// selection methods (valid because folds depend only on the seed) into
/// `out_dir`. All outputs are byte-stable for a fixed seed.
ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const std::vector<std::pair<std::string, eval::ExtractedRelease>>& releases,
                                const std::filesystem::path& out_dir);

}  // namespace defectpred::experiment
