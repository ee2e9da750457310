#include "defectpred/topicfeat.hpp"

#include "defectpred/error.hpp"
#include "defectpred/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace defectpred::topics {

namespace {

struct GibbsState {
  int topics;
  int vocab;
  std::vector<std::vector<int>> assignments;  // parallel to docs
  Eigen::MatrixXi doc_topic;                  // D x K
  Eigen::MatrixXi topic_word;                 // K x V
  Eigen::VectorXi topic_total;                // K
};

int sample_topic(const std::vector<double>& cumulative, double u) {
  double target = u * cumulative.back();
  for (std::size_t k = 0; k < cumulative.size(); ++k)
    if (target < cumulative[k]) return static_cast<int>(k);
  return static_cast<int>(cumulative.size()) - 1;
}

void check_conservation(const GibbsState& state, const std::vector<std::vector<int>>& docs) {
  long total_tokens = 0;
  for (const auto& doc : docs) total_tokens += static_cast<long>(doc.size());
  long assigned = state.topic_total.cast<long>().sum();
  if (assigned != total_tokens) throw Error("lda: token conservation violated");
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (state.doc_topic.row(static_cast<Eigen::Index>(d)).sum() !=
        static_cast<int>(docs[d].size()))
      throw Error("lda: per-document count violated");
  }
}

}  // namespace

TopicModel fit_lda(const std::vector<std::vector<int>>& docs, int vocabulary_size,
                   int topic_count, std::uint64_t seed, const LdaConfig& config) {
  if (topic_count < 1) throw Error("fit_lda: topic count must be >= 1");
  if (vocabulary_size < 1) throw Error("fit_lda: empty vocabulary");
  long total_tokens = 0;
  for (const auto& doc : docs) {
    if (doc.empty() && !config.allow_empty_docs) throw Error("fit_lda: empty document");
    for (int w : doc) {
      if (w < 0 || w >= vocabulary_size) throw Error("fit_lda: term index out of range");
    }
    total_tokens += static_cast<long>(doc.size());
  }
  if (total_tokens < topic_count) throw Error("fit_lda: more topics than tokens");

  const double alpha = config.alpha < 0 ? 50.0 / topic_count : config.alpha;
  const double beta = config.beta;
  const int K = topic_count;
  const int V = vocabulary_size;

  GibbsState state;
  state.topics = K;
  state.vocab = V;
  state.doc_topic = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(docs.size()), K);
  state.topic_word = Eigen::MatrixXi::Zero(K, V);
  state.topic_total = Eigen::VectorXi::Zero(K);
  state.assignments.resize(docs.size());

  std::mt19937_64 gen(seed);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    state.assignments[d].resize(docs[d].size());
    for (std::size_t t = 0; t < docs[d].size(); ++t) {
      int k = static_cast<int>(rng::uniform_below(gen, static_cast<std::uint64_t>(K)));
      state.assignments[d][t] = k;
      state.doc_topic(static_cast<Eigen::Index>(d), k) += 1;
      state.topic_word(k, docs[d][t]) += 1;
      state.topic_total(k) += 1;
    }
  }

  std::vector<double> cumulative(static_cast<std::size_t>(K));
  const double v_beta = V * beta;
  for (int it = 0; it < config.iterations; ++it) {
    for (std::size_t d = 0; d < docs.size(); ++d) {
      const auto di = static_cast<Eigen::Index>(d);
      for (std::size_t t = 0; t < docs[d].size(); ++t) {
        const int w = docs[d][t];
        const int old_k = state.assignments[d][t];
        state.doc_topic(di, old_k) -= 1;
        state.topic_word(old_k, w) -= 1;
        state.topic_total(old_k) -= 1;

        double run = 0.0;
        for (int k = 0; k < K; ++k) {
          double p = (state.topic_word(k, w) + beta) / (state.topic_total(k) + v_beta) *
                     (state.doc_topic(di, k) + alpha);
          run += p;
          cumulative[static_cast<std::size_t>(k)] = run;
        }
        int new_k = sample_topic(cumulative, rng::uniform01(gen));
        state.assignments[d][t] = new_k;
        state.doc_topic(di, new_k) += 1;
        state.topic_word(new_k, w) += 1;
        state.topic_total(new_k) += 1;
      }
    }
    if (config.check_invariants) check_conservation(state, docs);
  }

  TopicModel model;
  model.topic_count = K;
  model.vocabulary_size = V;
  model.alpha = alpha;
  model.beta = beta;
  model.seed = seed;
  model.iterations = config.iterations;
  model.doc_topic_counts = std::move(state.doc_topic);
  model.phi.resize(K, V);
  for (int k = 0; k < K; ++k)
    for (int w = 0; w < V; ++w)
      model.phi(k, w) = (state.topic_word(k, w) + beta) / (state.topic_total(k) + v_beta);
  return model;
}

Eigen::VectorXi infer_topic_counts(const TopicModel& model, const std::vector<int>& doc,
                                   std::uint64_t seed, int sweeps) {
  const int K = model.topic_count;
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(K);
  if (doc.empty()) return counts;
  std::vector<int> assignments(doc.size());
  std::mt19937_64 gen(seed);
  for (std::size_t t = 0; t < doc.size(); ++t) {
    int k = static_cast<int>(rng::uniform_below(gen, static_cast<std::uint64_t>(K)));
    assignments[t] = k;
    counts(k) += 1;
  }
  const double alpha = model.alpha;
  std::vector<double> cumulative(static_cast<std::size_t>(K));
  for (int it = 0; it < std::max(1, sweeps); ++it) {
    for (std::size_t t = 0; t < doc.size(); ++t) {
      const int w = doc[t];
      counts(assignments[t]) -= 1;
      double run = 0.0;
      for (int k = 0; k < K; ++k) {
        run += model.phi(k, w) * (counts(k) + alpha);
        cumulative[static_cast<std::size_t>(k)] = run;
      }
      int new_k = sample_topic(cumulative, rng::uniform01(gen));
      assignments[t] = new_k;
      counts(new_k) += 1;
    }
  }
  return counts;
}

FeatureMatrix topic_matrix(const Eigen::MatrixXi& doc_topic_counts) {
  FeatureMatrix out;
  out.kind = "topic";
  out.values = doc_topic_counts.cast<double>().array().log1p();
  for (int k = 1; k <= doc_topic_counts.cols(); ++k)
    out.columns.push_back("topic" + std::to_string(k));
  return out;
}

FeatureMatrix topic_matrix(const TopicModel& model) {
  return topic_matrix(model.doc_topic_counts);
}

std::vector<std::pair<int, int>> topic_top_files(const TopicModel& model, int k, int n) {
  if (k < 0 || k >= model.topic_count) throw Error("topic_top_files: topic out of range");
  std::vector<std::pair<int, int>> files;
  files.reserve(static_cast<std::size_t>(model.doc_topic_counts.rows()));
  for (Eigen::Index d = 0; d < model.doc_topic_counts.rows(); ++d)
    files.emplace_back(static_cast<int>(d), model.doc_topic_counts(d, k));
  std::stable_sort(files.begin(), files.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (n < static_cast<int>(files.size())) files.resize(static_cast<std::size_t>(std::max(n, 0)));
  return files;
}

}  // namespace defectpred::topics
