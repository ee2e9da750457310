#include "defectpred/eval.hpp"

#include "defectpred/csv.hpp"
#include "defectpred/error.hpp"
#include "defectpred/linreg.hpp"
#include "defectpred/random.hpp"
#include "defectpred/textfeat.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace defectpred::eval {

namespace {

constexpr std::uint64_t kFoldSalt = 0x666f6c64;  // fold stream
constexpr std::uint64_t kLdaSalt = 0x6c6461;     // topic-model stream

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kTiny = 1e-300;
  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double bt = std::exp(a * std::log(x) + b * std::log(1.0 - x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  return reg_inc_beta(df / 2.0, 0.5, df / (df + t * t));
}

FeatureMatrix restrict_columns(const FeatureMatrix& matrix,
                               const std::vector<std::string>& names) {
  FeatureMatrix out;
  out.kind = matrix.kind;
  out.columns = names;
  out.values.resize(matrix.rows(), static_cast<Eigen::Index>(names.size()));
  for (std::size_t c = 0; c < names.size(); ++c) {
    auto it = std::find(matrix.columns.begin(), matrix.columns.end(), names[c]);
    if (it == matrix.columns.end()) throw Error("column not present: " + names[c]);
    out.values.col(static_cast<Eigen::Index>(c)) =
        matrix.values.col(static_cast<Eigen::Index>(it - matrix.columns.begin()));
  }
  return out;
}

FeatureMatrix take_rows(const FeatureMatrix& matrix, const std::vector<std::size_t>& rows) {
  FeatureMatrix out;
  out.kind = matrix.kind;
  out.columns = matrix.columns;
  out.values.resize(static_cast<Eigen::Index>(rows.size()), matrix.cols());
  for (std::size_t r = 0; r < rows.size(); ++r)
    out.values.row(static_cast<Eigen::Index>(r)) =
        matrix.values.row(static_cast<Eigen::Index>(rows[r]));
  return out;
}

template <typename T>
std::vector<T> take(const std::vector<T>& values, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(values[i]);
  return out;
}

Eigen::VectorXd take_vector(const Eigen::VectorXd& values, const std::vector<std::size_t>& idx) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = values(static_cast<Eigen::Index>(idx[i]));
  return out;
}

// Everything precomputed once per cross_validate call.
struct PipelineContext {
  const ExtractedRelease& extracted;
  const PipelineConfig& config;
  Eigen::VectorXd defects;
  FeatureMatrix baseline;  // empty unless requested
};

std::pair<FeatureMatrix, FeatureMatrix> build_kind(const PipelineContext& ctx, FeatureKind kind,
                                                   const std::vector<std::size_t>& train,
                                                   const std::vector<std::size_t>& test,
                                                   const Eigen::VectorXd& y_train,
                                                   std::uint64_t rep_seed) {
  const auto& cfg = ctx.config;
  switch (kind) {
    case FeatureKind::term: {
      auto train_docs = take(ctx.extracted.terms, train);
      auto vocab = text::build_vocabulary(train_docs);
      auto x_train = text::term_matrix(vocab, train_docs, !cfg.raw_term_counts);
      auto x_test = text::term_matrix(vocab, take(ctx.extracted.terms, test),
                                      !cfg.raw_term_counts);
      if (cfg.method != featsel::SelectionMethod::none) {
        auto [sel, reduced] = featsel::select(x_train, y_train, cfg.method, cfg.term_features);
        x_test = restrict_columns(x_test, sel.selected);
        x_train = std::move(reduced);
      }
      return {std::move(x_train), std::move(x_test)};
    }
    case FeatureKind::topic: {
      auto train_docs = take(ctx.extracted.terms, train);
      auto vocab = text::build_vocabulary(train_docs);
      auto train_idx = text::to_indices(vocab, train_docs);
      auto model = topics::fit_lda(train_idx, static_cast<int>(vocab.terms.size()), cfg.topics,
                                   rng::derive_seed(rep_seed, kLdaSalt), cfg.lda);
      auto x_train = topics::topic_matrix(model);
      auto test_idx = text::to_indices(vocab, take(ctx.extracted.terms, test));
      Eigen::MatrixXi counts(static_cast<Eigen::Index>(test.size()), model.topic_count);
      for (std::size_t d = 0; d < test_idx.size(); ++d) {
        counts.row(static_cast<Eigen::Index>(d)) =
            topics::infer_topic_counts(model, test_idx[d],
                                       rng::derive_seed(rep_seed, kLdaSalt, test[d]),
                                       cfg.lda.infer_iterations)
                .transpose();
      }
      return {std::move(x_train), topics::topic_matrix(counts)};
    }
    case FeatureKind::type: {
      auto x_train = code::type_matrix(ctx.extracted.catalog, train, train);
      auto x_test = code::type_matrix(ctx.extracted.catalog, train, test);
      if (cfg.method != featsel::SelectionMethod::none) {
        auto [sel, reduced] = featsel::select(x_train, y_train, cfg.method, cfg.type_features);
        x_test = restrict_columns(x_test, sel.selected);
        x_train = std::move(reduced);
      }
      return {std::move(x_train), std::move(x_test)};
    }
    case FeatureKind::package:
      return {code::package_matrix(ctx.extracted.catalog, train, train),
              code::package_matrix(ctx.extracted.catalog, train, test)};
    case FeatureKind::baseline:
      return {take_rows(ctx.baseline, train), take_rows(ctx.baseline, test)};
    case FeatureKind::combined:
      break;
  }
  throw Error("combined is an experiment-level kind; list its parts instead");
}

RepMetrics run_repetition(const PipelineContext& ctx, const CvConfig& cv, int rep,
                          std::vector<std::size_t>* test_fold_out) {
  const std::size_t n = ctx.extracted.release.files.size();
  std::vector<std::size_t> perm;
  std::size_t train_size = 0;
  if (cv.stratified) {
    std::vector<bool> defective(n);
    for (std::size_t i = 0; i < n; ++i)
      defective[i] = ctx.defects(static_cast<Eigen::Index>(i)) > 0;
    perm = stratified_fold_permutation(cv.seed, rep, defective, cv.train_fraction, &train_size);
  } else {
    perm = fold_permutation(cv.seed, rep, n);
    train_size = static_cast<std::size_t>(static_cast<double>(n) * cv.train_fraction + 1e-9);
  }
  if (train_size == 0 || train_size >= n)
    throw Error("cross_validate: empty train or test fold");
  std::vector<std::size_t> train(perm.begin(), perm.begin() + static_cast<long>(train_size));
  std::vector<std::size_t> test(perm.begin() + static_cast<long>(train_size), perm.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());

  Eigen::VectorXd y_train = take_vector(ctx.defects, train);
  Eigen::VectorXd y_test = take_vector(ctx.defects, test);
  std::uint64_t rep_seed = rng::derive_seed(cv.seed, static_cast<std::uint64_t>(rep));

  std::vector<FeatureMatrix> train_parts;
  std::vector<FeatureMatrix> test_parts;
  for (FeatureKind kind : ctx.config.kinds) {
    auto [tr, te] = build_kind(ctx, kind, train, test, y_train, rep_seed);
    train_parts.push_back(std::move(tr));
    test_parts.push_back(std::move(te));
  }
  FeatureMatrix x_train = featsel::combine(train_parts);
  FeatureMatrix x_test = featsel::combine(test_parts);

  if (ctx.config.use_pca) {
    auto pca = featsel::pca_fit(x_train, ctx.config.pca_threshold);
    x_train = featsel::pca_apply(pca, x_train);
    x_test = featsel::pca_apply(pca, x_test);
  }

  auto model = linreg::fit(x_train, y_train);
  Eigen::VectorXd predicted = linreg::predict(model, x_test);
  if (ctx.config.clamp_negative) predicted = predicted.cwiseMax(0.0);

  if (test_fold_out) *test_fold_out = test;
  return {scc(predicted, y_test), mae(predicted, y_test)};
}

}  // namespace

double scc(const Eigen::Ref<const Eigen::VectorXd>& predicted,
           const Eigen::Ref<const Eigen::VectorXd>& actual) {
  return featsel::score_spearman(predicted, actual);
}

double mae(const Eigen::Ref<const Eigen::VectorXd>& predicted,
           const Eigen::Ref<const Eigen::VectorXd>& actual) {
  if (predicted.size() != actual.size()) throw Error("mae: length mismatch");
  if (predicted.size() < 1) throw Error("mae: empty vectors");
  return (predicted - actual).cwiseAbs().mean();
}

TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw Error("paired_t_test: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) throw Error("paired_t_test: need at least 2 pairs");
  Eigen::VectorXd d(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) d(static_cast<Eigen::Index>(i)) = a[i] - b[i];
  double mean = d.mean();
  double sd = std::sqrt((d.array() - mean).square().sum() / (static_cast<double>(n) - 1.0));
  TTestResult result;
  if (sd == 0.0) {
    if (mean == 0.0) return result;  // all differences zero: t = 0, p = 1
    result.t = mean > 0 ? std::numeric_limits<double>::infinity()
                        : -std::numeric_limits<double>::infinity();
    result.p = 0.0;
    result.degenerate = true;
    return result;
  }
  result.t = mean / (sd / std::sqrt(static_cast<double>(n)));
  result.p = student_t_two_sided_p(result.t, static_cast<double>(n) - 1.0);
  return result;
}

std::vector<std::size_t> fold_permutation(std::uint64_t seed, int repetition,
                                          std::size_t file_count) {
  std::vector<std::size_t> perm(file_count);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 gen(
      rng::derive_seed(rng::derive_seed(seed, kFoldSalt), static_cast<std::uint64_t>(repetition)));
  rng::shuffle(perm, gen);
  return perm;
}

std::vector<std::size_t> stratified_fold_permutation(std::uint64_t seed, int repetition,
                                                     const std::vector<bool>& defective,
                                                     double train_fraction,
                                                     std::size_t* train_size) {
  std::vector<std::size_t> buggy;
  std::vector<std::size_t> clean;
  for (std::size_t i = 0; i < defective.size(); ++i)
    (defective[i] ? buggy : clean).push_back(i);
  std::mt19937_64 gen(
      rng::derive_seed(rng::derive_seed(seed, kFoldSalt), static_cast<std::uint64_t>(repetition)));
  rng::shuffle(buggy, gen);
  rng::shuffle(clean, gen);
  auto share = [&](std::size_t group) {
    return static_cast<std::size_t>(static_cast<double>(group) * train_fraction + 1e-9);
  };
  std::size_t train_buggy = share(buggy.size());
  std::size_t train_clean = share(clean.size());
  std::vector<std::size_t> perm;
  perm.reserve(defective.size());
  perm.insert(perm.end(), buggy.begin(), buggy.begin() + static_cast<long>(train_buggy));
  perm.insert(perm.end(), clean.begin(), clean.begin() + static_cast<long>(train_clean));
  perm.insert(perm.end(), buggy.begin() + static_cast<long>(train_buggy), buggy.end());
  perm.insert(perm.end(), clean.begin() + static_cast<long>(train_clean), clean.end());
  if (train_size) *train_size = train_buggy + train_clean;
  return perm;
}

std::string to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::term: return "term";
    case FeatureKind::topic: return "topic";
    case FeatureKind::type: return "type";
    case FeatureKind::package: return "package";
    case FeatureKind::baseline: return "baseline";
    case FeatureKind::combined: return "combined";
  }
  return "unknown";
}

FeatureKind feature_kind_from(const std::string& name) {
  if (name == "term") return FeatureKind::term;
  if (name == "topic") return FeatureKind::topic;
  if (name == "type") return FeatureKind::type;
  if (name == "package") return FeatureKind::package;
  if (name == "baseline") return FeatureKind::baseline;
  if (name == "combined") return FeatureKind::combined;
  throw Error("unknown feature kind '" + name + "'");
}

std::string PipelineConfig::describe() const {
  std::ostringstream out;
  out << "kinds=";
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (i) out << "+";
    out << to_string(kinds[i]);
  }
  out << " method=" << featsel::to_string(method);
  auto has = [&](FeatureKind k) {
    return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
  };
  if (has(FeatureKind::term) && method != featsel::SelectionMethod::none)
    out << " nterm=" << term_features;
  if (has(FeatureKind::type) && method != featsel::SelectionMethod::none)
    out << " ntype=" << type_features;
  if (has(FeatureKind::topic)) out << " k=" << topics;
  if (use_pca)
    out << " pca=" << csvio::format_double(pca_threshold);
  else
    out << " pca=off";
  if (raw_term_counts && has(FeatureKind::term)) out << " counts=raw";
  if (clamp_negative) out << " clamp=1";
  return out.str();
}

ExtractedRelease extract_release(corpus::Release release, const code::ExtractOptions& options) {
  ExtractedRelease out;
  out.terms.reserve(release.files.size());
  auto index = code::make_release_index(release.qualified_names());
  for (const auto& file : release.files) {
    out.terms.push_back(text::extract_terms(file.source.text));
    out.catalog.files.push_back(
        code::resolve_types(code::extract_type_refs(file.source.text, options), index));
  }
  out.release = std::move(release);
  return out;
}

double EvalReport::mean_scc() const {
  double sum = 0.0;
  for (const auto& r : reps) sum += r.scc;
  return reps.empty() ? 0.0 : sum / static_cast<double>(reps.size());
}

double EvalReport::mean_mae() const {
  double sum = 0.0;
  for (const auto& r : reps) sum += r.mae;
  return reps.empty() ? 0.0 : sum / static_cast<double>(reps.size());
}

EvalReport cross_validate(const ExtractedRelease& extracted, const PipelineConfig& config,
                          const CvConfig& cv) {
  if (config.kinds.empty()) throw Error("cross_validate: no feature kinds");
  if (std::find(config.kinds.begin(), config.kinds.end(), FeatureKind::combined) !=
      config.kinds.end())
    throw Error("cross_validate: expand 'combined' into its parts first");
  if (cv.repetitions < 1) throw Error("cross_validate: repetitions must be >= 1");
  if (!(cv.train_fraction > 0.0 && cv.train_fraction < 1.0))
    throw Error("cross_validate: train fraction must be in (0, 1)");

  PipelineContext ctx{extracted, config, extracted.release.defect_counts(), {}};
  if (std::find(config.kinds.begin(), config.kinds.end(), FeatureKind::baseline) !=
      config.kinds.end())
    ctx.baseline = corpus::baseline_matrix(extracted.release);

  EvalReport report;
  report.configuration = config.describe();
  report.reps.resize(static_cast<std::size_t>(cv.repetitions));
  report.test_folds.resize(static_cast<std::size_t>(cv.repetitions));

  const int threads = std::max(1, cv.threads);
  if (threads == 1) {
    for (int rep = 0; rep < cv.repetitions; ++rep)
      report.reps[static_cast<std::size_t>(rep)] =
          run_repetition(ctx, cv, rep, &report.test_folds[static_cast<std::size_t>(rep)]);
  } else {
    // repetitions are independent; results land in per-index slots so the
    // outcome is identical to the sequential order
    std::vector<std::future<void>> workers;
    std::atomic<int> next{0};
    for (int w = 0; w < threads; ++w) {
      workers.push_back(std::async(std::launch::async, [&] {
        while (true) {
          int rep = next.fetch_add(1);
          if (rep >= cv.repetitions) return;
          report.reps[static_cast<std::size_t>(rep)] =
              run_repetition(ctx, cv, rep, &report.test_folds[static_cast<std::size_t>(rep)]);
        }
      }));
    }
    for (auto& worker : workers) worker.get();
  }
  return report;
}

std::vector<AggregateRow> aggregate(
    const std::vector<std::pair<std::string, EvalReport>>& reports) {
  if (reports.empty()) throw Error("aggregate: no reports");
  std::vector<std::string> config_order;
  std::map<std::string, std::vector<AggregateRow>> per_config;
  for (const auto& [release, report] : reports) {
    if (!per_config.count(report.configuration)) config_order.push_back(report.configuration);
    per_config[report.configuration].push_back(
        {report.configuration, release, report.mean_scc(), report.mean_mae()});
  }
  std::vector<AggregateRow> rows;
  for (const auto& config : config_order) {
    const auto& entries = per_config[config];
    AggregateRow all{config, "ALL", 0.0, 0.0};
    for (const auto& row : entries) {
      all.mean_scc += row.mean_scc;
      all.mean_mae += row.mean_mae;
    }
    all.mean_scc /= static_cast<double>(entries.size());
    all.mean_mae /= static_cast<double>(entries.size());
    rows.push_back(all);
    rows.insert(rows.end(), entries.begin(), entries.end());
  }
  return rows;
}

std::string format_aggregate_table(const std::vector<AggregateRow>& rows) {
  // pivot: releases down, configurations across, SCC/MAE pairs per config
  std::vector<std::string> configs;
  std::vector<std::string> releases;
  std::map<std::pair<std::string, std::string>, const AggregateRow*> cell;
  for (const auto& row : rows) {
    if (std::find(configs.begin(), configs.end(), row.configuration) == configs.end())
      configs.push_back(row.configuration);
    if (row.release != "ALL" &&
        std::find(releases.begin(), releases.end(), row.release) == releases.end())
      releases.push_back(row.release);
    cell[{row.configuration, row.release}] = &row;
  }
  std::ostringstream out;
  std::size_t name_width = std::string("Across all releases").size();
  for (const auto& r : releases) name_width = std::max(name_width, r.size());
  auto emit_row = [&](const std::string& label, const std::string& key) {
    out << label << std::string(name_width - label.size() + 2, ' ');
    for (const auto& config : configs) {
      auto it = cell.find({config, key});
      if (it == cell.end()) {
        out << "       -       - ";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "  %6.4f  %6.4f", it->second->mean_scc,
                      it->second->mean_mae);
        out << buf;
      }
    }
    out << "\n";
  };
  out << std::string(name_width + 2, ' ');
  for (std::size_t i = 0; i < configs.size(); ++i) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "  [%zu] SCC    MAE", i + 1);
    out << buf;
  }
  out << "\n";
  emit_row("Across all releases", "ALL");
  for (const auto& release : releases) emit_row(release, release);
  out << "\n";
  for (std::size_t i = 0; i < configs.size(); ++i)
    out << "[" << (i + 1) << "] " << configs[i] << "\n";
  return out.str();
}

}  // namespace defectpred::eval
