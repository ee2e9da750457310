// Command-line front end: extract features, run experiment matrices,
// explain a release, re-render report tables.
//
// Exit codes: 0 success, 1 usage error, 2 invalid release, 3 experiment
// finished with partial failures.

#include "defectpred/corpus.hpp"
#include "defectpred/csv.hpp"
#include "defectpred/error.hpp"
#include "defectpred/eval.hpp"
#include "defectpred/experiment.hpp"
#include "defectpred/explain.hpp"
#include "defectpred/jdk_types.hpp"
#include "defectpred/linreg.hpp"
#include "defectpred/textfeat.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace defectpred;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalidRelease = 2;
constexpr int kExitPartialFailure = 3;

struct CommonOptions {
  std::vector<std::string> sources;
  std::vector<std::string> datasets;
  std::string out_dir = "out";
  std::string name_column = "name";
  std::string bug_column = "bug";
  std::uint64_t seed = 0;
  bool skip_import_presence = false;
};

void add_common(CLI::App* cmd, CommonOptions* options, bool multi_release) {
  cmd->set_config("--config", "", "key=value configuration file; flags override");
  auto* source = cmd->add_option("--source", options->sources, "source tree root(s)")
                     ->required();
  auto* dataset = cmd->add_option("--dataset", options->datasets,
                                  "defect dataset csv(s), paired with --source")
                      ->required();
  if (!multi_release) {
    source->expected(1);
    dataset->expected(1);
  }
  cmd->add_option("--out", options->out_dir, "output directory");
  cmd->add_option("--seed", options->seed, "master random seed");
  cmd->add_option("--name-col", options->name_column, "dataset class-name column");
  cmd->add_option("--bug-col", options->bug_column, "dataset defect-count column");
  cmd->add_flag("--no-import-presence", options->skip_import_presence,
                "do not count a bare import statement as type presence");
}

corpus::LoadResult load_one(const CommonOptions& options, std::size_t index,
                            std::vector<std::string>* warnings) {
  corpus::DatasetColumns columns;
  columns.name = options.name_column;
  columns.defects = options.bug_column;
  std::filesystem::path dataset = options.datasets[index];
  auto result = corpus::load_release(options.sources[index], dataset, columns,
                                     dataset.stem().string(), "");
  for (const auto& warning : result.warnings) {
    std::cerr << warning << "\n";
    if (warnings) warnings->push_back(warning);
  }
  return result;
}

code::ExtractOptions extract_options(const CommonOptions& options) {
  code::ExtractOptions out;
  out.include_imports = !options.skip_import_presence;
  return out;
}

int require_valid(const corpus::Release& release) {
  auto verdict = corpus::validate_release(release);
  if (verdict == corpus::Validity::valid) return kExitOk;
  std::cerr << "invalid release: " << corpus::to_string(verdict) << " ("
            << release.files.size() << " files)\n";
  return kExitInvalidRelease;
}

std::string matrix_csv(const FeatureMatrix& matrix, const std::vector<std::string>& row_names) {
  std::ostringstream out;
  out << "# schema defectpred.matrix.v1 kind=" << matrix.kind << "\n";
  out << "file";
  for (const auto& column : matrix.columns) out << "," << csvio::escape_field(column);
  out << "\n";
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    out << csvio::escape_field(row_names[static_cast<std::size_t>(r)]);
    for (Eigen::Index c = 0; c < matrix.cols(); ++c)
      out << "," << csvio::format_double(matrix.values(r, c));
    out << "\n";
  }
  return out.str();
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

int cmd_extract(const CommonOptions& options) {
  std::vector<std::string> warnings;
  auto loaded = load_one(options, 0, &warnings);
  if (int rc = require_valid(loaded.release); rc != kExitOk) return rc;

  auto extracted = eval::extract_release(std::move(loaded.release), extract_options(options));
  const auto names = extracted.release.qualified_names();
  std::filesystem::path out_dir = options.out_dir;
  std::filesystem::create_directories(out_dir);

  auto [terms, vocab] = text::term_matrix(extracted.terms);
  csvio::write_file_atomic(out_dir / "term_matrix.csv", matrix_csv(terms, names));
  csvio::write_file_atomic(out_dir / "type_matrix.csv",
                           matrix_csv(code::type_matrix(extracted.catalog), names));
  csvio::write_file_atomic(out_dir / "package_matrix.csv",
                           matrix_csv(code::package_matrix(extracted.catalog), names));
  if (!extracted.release.baseline_names.empty())
    csvio::write_file_atomic(out_dir / "baseline_matrix.csv",
                             matrix_csv(corpus::baseline_matrix(extracted.release), names));

  {
    std::ostringstream out;
    out << "# schema defectpred.tokens.v1\n";
    for (std::size_t i = 0; i < names.size(); ++i)
      out << names[i] << "\t" << join(extracted.terms[i], " ") << "\n";
    csvio::write_file_atomic(out_dir / "tokens.txt", out.str());
  }
  {
    std::ostringstream out;
    out << "# schema defectpred.catalog.v1 jdk_table=" << code::jdk_table_version() << "\n";
    out << "file,resolved_types,packages\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& entry = extracted.catalog.files[i];
      out << csvio::escape_field(names[i]) << ","
          << csvio::escape_field(join(entry.resolved, ";")) << ","
          << csvio::escape_field(join(entry.packages, ";")) << "\n";
      for (const auto& warning : entry.warnings)
        warnings.push_back("WARN resolve " + names[i] + ": " + warning);
    }
    csvio::write_file_atomic(out_dir / "catalog.csv", out.str());
  }
  {
    std::ostringstream out;
    for (const auto& warning : warnings) out << warning << "\n";
    csvio::write_file_atomic(out_dir / "warnings.log", out.str());
  }
  std::cout << "extracted " << extracted.release.files.size() << " files, "
            << vocab.terms.size() << " terms -> " << out_dir.string() << "\n";
  return kExitOk;
}

struct ExperimentOptions {
  CommonOptions common;
  std::vector<std::string> kinds = {"term"};
  std::vector<std::string> methods = {"spearman"};
  std::vector<int> n_features;
  std::vector<int> topic_counts;
  double pca_threshold = 0.90;
  bool no_pca = false;
  bool clamp_negative = false;
  bool raw_counts = false;
  int repetitions = 50;
  double train_fraction = 0.9;
  int threads = 1;
  int lda_iterations = 1000;
  bool stratified = false;
};

int cmd_experiment(const ExperimentOptions& options) {
  experiment::ExperimentSpec spec;
  for (const auto& kind : options.kinds) spec.kinds.push_back(eval::feature_kind_from(kind));
  spec.methods.clear();
  for (const auto& method : options.methods)
    spec.methods.push_back(featsel::selection_method_from(method));
  spec.term_counts = options.n_features;
  spec.type_counts = options.n_features;
  spec.topic_counts = options.topic_counts;
  spec.use_pca = !options.no_pca;
  spec.pca_threshold = options.pca_threshold;
  spec.clamp_negative = options.clamp_negative;
  spec.raw_term_counts = options.raw_counts;
  spec.cv.repetitions = options.repetitions;
  spec.cv.train_fraction = options.train_fraction;
  spec.cv.seed = options.common.seed;
  spec.cv.threads = options.threads;
  spec.cv.stratified = options.stratified;
  spec.lda.iterations = options.lda_iterations;

  std::vector<std::pair<std::string, eval::ExtractedRelease>> releases;
  for (std::size_t i = 0; i < options.common.sources.size(); ++i) {
    auto loaded = load_one(options.common, i, nullptr);
    if (int rc = require_valid(loaded.release); rc != kExitOk) return rc;
    std::string label = loaded.release.project;
    for (const auto& [existing, ignored] : releases)
      if (existing == label) label += "_" + std::to_string(i);
    releases.emplace_back(label, eval::extract_release(std::move(loaded.release),
                                                       extract_options(options.common)));
  }

  auto result = experiment::run_experiment(spec, releases, options.common.out_dir);
  std::cout << eval::format_aggregate_table(eval::aggregate(result.reports));
  if (!result.failures.empty()) {
    std::cerr << result.failures.size() << " configuration(s) failed:\n";
    for (const auto& failure : result.failures) std::cerr << "  " << failure << "\n";
    return kExitPartialFailure;
  }
  return kExitOk;
}

struct ExplainOptions {
  CommonOptions common;
  int topics = 20;
  int top_n = 10;
  int lda_iterations = 1000;
};

int cmd_explain(const ExplainOptions& options) {
  auto loaded = load_one(options.common, 0, nullptr);
  if (int rc = require_valid(loaded.release); rc != kExitOk) return rc;
  auto extracted = eval::extract_release(std::move(loaded.release),
                                         extract_options(options.common));
  std::filesystem::path out_dir = options.common.out_dir;
  std::filesystem::create_directories(out_dir);

  auto skew = explain::defect_skew(extracted.release);
  {
    std::ostringstream out;
    out << "total_defects " << skew.total_defects << "\n";
    out << "max_file " << skew.max_file << " " << skew.max_count << "\n";
    out << "top10_share " << csvio::format_double(skew.top10_share) << "\n";
    out << "defective_ratio " << csvio::format_double(skew.defective_ratio) << "\n";
    csvio::write_file_atomic(out_dir / "skew.txt", out.str());
    std::cout << out.str();
  }
  {
    auto correlations = explain::feature_correlations(extracted);
    std::ostringstream out;
    out << "# schema defectpred.correlations.v1\n";
    out << "feature,method,score,rank\n";
    for (const auto& c : correlations)
      out << csvio::escape_field(c.kind + ":" + c.feature) << ",spearman,"
          << csvio::format_double(c.score) << "," << c.rank << "\n";
    csvio::write_file_atomic(out_dir / "feature_correlations.csv", out.str());
  }
  {
    // interpretable model over the strongest term features: no PCA, raw names
    auto [terms, vocab] = text::term_matrix(extracted.terms);
    auto y = extracted.release.defect_counts();
    auto [sel, reduced] =
        featsel::select(terms, y, featsel::SelectionMethod::spearman, options.top_n);
    auto model = linreg::fit(reduced, y);
    std::ostringstream out;
    out << "intercept " << csvio::format_double(model.intercept) << "\n";
    for (std::size_t i = 0; i < model.feature_names.size(); ++i)
      out << model.feature_names[i] << " "
          << csvio::format_double(model.coefficients(static_cast<Eigen::Index>(i))) << "\n";
    csvio::write_file_atomic(out_dir / "model.txt", out.str());
  }
  {
    topics::LdaConfig lda;
    lda.iterations = options.lda_iterations;
    auto summaries = explain::topic_summaries(extracted, options.topics, options.common.seed,
                                              lda, options.top_n, options.top_n);
    std::ostringstream files_out;
    std::ostringstream words_out;
    for (const auto& topic : summaries) {
      files_out << "topic " << topic.topic + 1 << " (spearman vs defects "
                << csvio::format_double(topic.spearman) << ")\n";
      for (const auto& [file, count] : topic.top_files)
        files_out << "  " << file << " " << count << "\n";
      words_out << "topic " << topic.topic + 1 << ": " << join(topic.top_words, " ") << "\n";
    }
    csvio::write_file_atomic(out_dir / "topic_top_files.txt", files_out.str());
    csvio::write_file_atomic(out_dir / "topic_top_words.txt", words_out.str());
  }
  std::cout << "explain artifacts -> " << out_dir.string() << "\n";
  return kExitOk;
}

int cmd_report(const std::string& in_dir) {
  auto table = csvio::read_table(std::filesystem::path(in_dir) / "aggregate.csv");
  std::vector<eval::AggregateRow> rows;
  for (const auto& row : table.rows) {
    if (row.size() < 4) continue;
    rows.push_back({row[0], row[1], std::stod(row[2]), std::stod(row[3])});
  }
  std::cout << eval::format_aggregate_table(rows);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"content-based defect prediction toolkit"};
  app.require_subcommand(1);

  CommonOptions extract_opts;
  auto* extract = app.add_subcommand("extract", "extract feature matrices to disk");
  add_common(extract, &extract_opts, false);

  ExperimentOptions exp_opts;
  auto* experiment_cmd =
      app.add_subcommand("experiment", "run a cross-validated experiment matrix");
  add_common(experiment_cmd, &exp_opts.common, true);
  experiment_cmd->add_option("--kinds", exp_opts.kinds,
                             "feature kinds: term,topic,type,package,baseline,combined")
      ->delimiter(',');
  experiment_cmd->add_option("--method", exp_opts.methods,
                             "selection methods: spearman,pearson,mi,none")
      ->delimiter(',');
  experiment_cmd->add_option("--n-features", exp_opts.n_features,
                             "selected feature counts (term/type)")
      ->delimiter(',');
  experiment_cmd->add_option("--topics", exp_opts.topic_counts, "topic counts to sweep")
      ->delimiter(',');
  experiment_cmd->add_option("--pca-threshold", exp_opts.pca_threshold,
                             "PCA explained-variance threshold");
  experiment_cmd->add_flag("--no-pca", exp_opts.no_pca, "disable the PCA step");
  experiment_cmd->add_flag("--clamp-negative", exp_opts.clamp_negative,
                           "clamp negative predictions to zero");
  experiment_cmd->add_flag("--raw-counts", exp_opts.raw_counts,
                           "raw term counts instead of tf.idf");
  experiment_cmd->add_option("--reps", exp_opts.repetitions, "cross-validation repetitions");
  experiment_cmd->add_option("--train-fraction", exp_opts.train_fraction,
                             "training fraction per repetition");
  experiment_cmd->add_option("--threads", exp_opts.threads, "parallel repetitions");
  experiment_cmd->add_option("--lda-iterations", exp_opts.lda_iterations,
                             "Gibbs sweeps per topic model");
  experiment_cmd->add_flag("--stratified", exp_opts.stratified,
                           "preserve the defective/clean ratio in each fold");

  ExplainOptions explain_opts;
  auto* explain_cmd = app.add_subcommand("explain", "case-study report for one release");
  add_common(explain_cmd, &explain_opts.common, false);
  explain_cmd->add_option("--topics", explain_opts.topics, "topic count for the summary model");
  explain_cmd->add_option("--top-n", explain_opts.top_n, "files/words listed per topic");
  explain_cmd->add_option("--lda-iterations", explain_opts.lda_iterations,
                          "Gibbs sweeps for the summary model");

  std::string report_dir;
  auto* report_cmd = app.add_subcommand("report", "re-render the aggregate table");
  report_cmd->add_option("--in", report_dir, "experiment output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints help or the parse problem
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*extract) return cmd_extract(extract_opts);
    if (*experiment_cmd) {
      if (exp_opts.common.sources.size() != exp_opts.common.datasets.size()) {
        std::cerr << "--source and --dataset must be paired\n";
        return kExitUsage;
      }
      return cmd_experiment(exp_opts);
    }
    if (*explain_cmd) return cmd_explain(explain_opts);
    if (*report_cmd) return cmd_report(report_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
