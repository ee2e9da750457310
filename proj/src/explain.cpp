#include "defectpred/explain.hpp"

#include "defectpred/error.hpp"
#include "defectpred/textfeat.hpp"

#include <algorithm>
#include <numeric>

namespace defectpred::explain {

SkewStats defect_skew(const corpus::Release& release) {
  SkewStats stats;
  std::vector<int> counts;
  counts.reserve(release.files.size());
  for (const auto& f : release.files) {
    counts.push_back(f.defect_count);
    stats.total_defects += f.defect_count;
    if (f.defect_count > stats.max_count) {
      stats.max_count = f.defect_count;
      stats.max_file = f.source.qualified_name;
    }
  }
  std::sort(counts.begin(), counts.end(), std::greater<int>());
  int top10 = 0;
  for (std::size_t i = 0; i < counts.size() && i < 10; ++i) top10 += counts[i];
  if (stats.total_defects > 0)
    stats.top10_share = static_cast<double>(top10) / static_cast<double>(stats.total_defects);
  std::size_t defective = 0;
  for (int c : counts)
    if (c > 0) ++defective;
  if (!counts.empty())
    stats.defective_ratio = static_cast<double>(defective) / static_cast<double>(counts.size());
  return stats;
}

std::vector<FeatureCorrelation> feature_correlations(const eval::ExtractedRelease& extracted) {
  Eigen::VectorXd y = extracted.release.defect_counts();
  std::vector<FeatureCorrelation> out;
  auto add_matrix = [&](const FeatureMatrix& matrix) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c)
      out.push_back({matrix.kind, matrix.columns[static_cast<std::size_t>(c)],
                     featsel::score_spearman(matrix.values.col(c), y), 0});
  };
  add_matrix(text::term_matrix(extracted.terms).first);
  add_matrix(code::type_matrix(extracted.catalog));
  add_matrix(code::package_matrix(extracted.catalog));
  std::sort(out.begin(), out.end(), [](const FeatureCorrelation& a, const FeatureCorrelation& b) {
    double sa = std::abs(a.score);
    double sb = std::abs(b.score);
    if (sa != sb) return sa > sb;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.feature < b.feature;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i + 1);
  return out;
}

std::vector<TopicSummary> topic_summaries(const eval::ExtractedRelease& extracted, int topic_count,
                                          std::uint64_t seed, const topics::LdaConfig& config,
                                          int top_words, int top_files) {
  auto vocab = text::build_vocabulary(extracted.terms);
  auto docs = text::to_indices(vocab, extracted.terms);
  auto model = topics::fit_lda(docs, static_cast<int>(vocab.terms.size()), topic_count, seed,
                               config);
  auto features = topics::topic_matrix(model);
  Eigen::VectorXd y = extracted.release.defect_counts();

  std::vector<TopicSummary> out;
  for (int k = 0; k < topic_count; ++k) {
    TopicSummary summary;
    summary.topic = k;
    summary.spearman = featsel::score_spearman(features.values.col(k), y);

    std::vector<int> order(static_cast<std::size_t>(model.vocabulary_size));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return model.phi(k, a) > model.phi(k, b); });
    for (int i = 0; i < top_words && i < static_cast<int>(order.size()); ++i)
      summary.top_words.push_back(vocab.terms[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);

    for (const auto& [file, count] : topics::topic_top_files(model, k, top_files))
      summary.top_files.emplace_back(
          extracted.release.files[static_cast<std::size_t>(file)].source.qualified_name, count);
    out.push_back(std::move(summary));
  }
  return out;
}

}  // namespace defectpred::explain
