#include "defectpred/experiment.hpp"

#include "defectpred/csv.hpp"
#include "defectpred/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace defectpred::experiment {

namespace {

const std::vector<int> kTermDefaults = {3, 5, 10, 20, 50, 100, 200};
const std::vector<int> kTypeDefaults = {5, 10, 20, 50, 100};
const std::vector<int> kTopicDefaults = {5, 10, 15, 20, 30, 50, 100};

bool has_kind(const std::vector<eval::FeatureKind>& kinds, eval::FeatureKind kind) {
  return std::find(kinds.begin(), kinds.end(), kind) != kinds.end();
}

eval::PipelineConfig base_config(const ExperimentSpec& spec) {
  eval::PipelineConfig config;
  config.use_pca = spec.use_pca;
  config.pca_threshold = spec.pca_threshold;
  config.clamp_negative = spec.clamp_negative;
  config.raw_term_counts = spec.raw_term_counts;
  config.lda = spec.lda;
  return config;
}

}  // namespace

std::vector<eval::PipelineConfig> expand_configs(const ExperimentSpec& spec) {
  if (spec.kinds.empty()) throw Error("experiment: no feature kinds");
  if (spec.methods.empty()) throw Error("experiment: no selection methods");
  const auto& term_ns = spec.term_counts.empty() ? kTermDefaults : spec.term_counts;
  const auto& type_ns = spec.type_counts.empty() ? kTypeDefaults : spec.type_counts;
  const auto& topic_ks = spec.topic_counts.empty() ? kTopicDefaults : spec.topic_counts;

  std::vector<eval::PipelineConfig> configs;
  for (eval::FeatureKind kind : spec.kinds) {
    switch (kind) {
      case eval::FeatureKind::term:
        for (auto method : spec.methods) {
          if (method == featsel::SelectionMethod::none) {
            auto c = base_config(spec);
            c.kinds = {kind};
            c.method = method;
            configs.push_back(c);
            continue;
          }
          for (int n : term_ns) {
            auto c = base_config(spec);
            c.kinds = {kind};
            c.method = method;
            c.term_features = n;
            configs.push_back(c);
          }
        }
        break;
      case eval::FeatureKind::type:
        for (auto method : spec.methods) {
          if (method == featsel::SelectionMethod::none) {
            auto c = base_config(spec);
            c.kinds = {kind};
            c.method = method;
            configs.push_back(c);
            continue;
          }
          for (int n : type_ns) {
            auto c = base_config(spec);
            c.kinds = {kind};
            c.method = method;
            c.type_features = n;
            configs.push_back(c);
          }
        }
        break;
      case eval::FeatureKind::topic:
        for (int k : topic_ks) {
          auto c = base_config(spec);
          c.kinds = {kind};
          c.method = featsel::SelectionMethod::none;
          c.topics = k;
          configs.push_back(c);
        }
        break;
      case eval::FeatureKind::package:
      case eval::FeatureKind::baseline: {
        auto c = base_config(spec);
        c.kinds = {kind};
        c.method = featsel::SelectionMethod::none;
        configs.push_back(c);
        break;
      }
      case eval::FeatureKind::combined:
        break;  // handled below
    }
  }

  if (has_kind(spec.kinds, eval::FeatureKind::combined)) {
    std::vector<eval::FeatureKind> parts;
    for (auto kind : spec.kinds)
      if (kind != eval::FeatureKind::combined) parts.push_back(kind);
    if (parts.size() < 2) throw Error("experiment: combined requires at least 2 kinds");
    // best-overall single settings unless the caller swept explicitly
    const auto c_term = spec.term_counts.empty() ? std::vector<int>{5} : spec.term_counts;
    const auto c_type = spec.type_counts.empty() ? std::vector<int>{10} : spec.type_counts;
    const auto c_topic = spec.topic_counts.empty() ? std::vector<int>{20} : spec.topic_counts;
    const auto terms = has_kind(parts, eval::FeatureKind::term) ? c_term : std::vector<int>{0};
    const auto types = has_kind(parts, eval::FeatureKind::type) ? c_type : std::vector<int>{0};
    const auto ks = has_kind(parts, eval::FeatureKind::topic) ? c_topic : std::vector<int>{0};
    bool selectable = has_kind(parts, eval::FeatureKind::term) ||
                      has_kind(parts, eval::FeatureKind::type);
    for (auto method : spec.methods) {
      for (int nt : terms) {
        for (int ny : types) {
          for (int k : ks) {
            auto c = base_config(spec);
            c.kinds = parts;
            c.method = selectable ? method : featsel::SelectionMethod::none;
            if (nt > 0) c.term_features = nt;
            if (ny > 0) c.type_features = ny;
            if (k > 0) c.topics = k;
            configs.push_back(c);
          }
        }
      }
      if (!selectable) break;  // method dimension collapses
    }
  }

  // a method sweep can produce duplicate configurations (e.g. kind=topic);
  // keep the first occurrence of each descriptor
  std::vector<eval::PipelineConfig> unique;
  std::vector<std::string> seen;
  for (auto& c : configs) {
    std::string id = c.describe();
    if (std::find(seen.begin(), seen.end(), id) == seen.end()) {
      seen.push_back(id);
      unique.push_back(std::move(c));
    }
  }
  return unique;
}

ExperimentResult run_experiment(
    const ExperimentSpec& spec,
    const std::vector<std::pair<std::string, eval::ExtractedRelease>>& releases,
    const std::filesystem::path& out_dir) {
  if (releases.empty()) throw Error("experiment: no releases");
  auto configs = expand_configs(spec);
  std::filesystem::create_directories(out_dir);

  ExperimentResult result;

  // configs.csv: stable numbering for report file names
  {
    std::ostringstream out;
    out << "# schema defectpred.configs.v1\n";
    out << "config_id,configuration\n";
    for (std::size_t i = 0; i < configs.size(); ++i)
      out << i << "," << csvio::escape_field(configs[i].describe()) << "\n";
    csvio::write_file_atomic(out_dir / "configs.csv", out.str());
  }

  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    for (std::size_t ri = 0; ri < releases.size(); ++ri) {
      const auto& [label, extracted] = releases[ri];
      eval::EvalReport report;
      try {
        report = eval::cross_validate(extracted, configs[ci], spec.cv);
      } catch (const std::exception& e) {
        result.failures.push_back(label + " | " + configs[ci].describe() + " | " + e.what());
        continue;
      }
      std::ostringstream out;
      out << "# schema defectpred.report.v1\n";
      out << "# release " << label << "\n";
      out << "# configuration " << report.configuration << "\n";
      out << "repetition,scc,mae\n";
      for (std::size_t r = 0; r < report.reps.size(); ++r)
        out << r << "," << csvio::format_double(report.reps[r].scc) << ","
            << csvio::format_double(report.reps[r].mae) << "\n";
      csvio::write_file_atomic(
          out_dir / ("report_c" + std::to_string(ci) + "_r" + std::to_string(ri) + ".csv"),
          out.str());
      result.reports.emplace_back(label, std::move(report));
    }
  }
  if (result.reports.empty()) {
    // nothing ran; surface the first failure
    throw Error(result.failures.empty() ? "experiment: no reports produced"
                                        : result.failures.front());
  }

  // aggregate.csv + summary table
  auto rows = eval::aggregate(result.reports);
  {
    std::ostringstream out;
    out << "# schema defectpred.aggregate.v1\n";
    out << "configuration,release,mean_scc,mean_mae\n";
    for (const auto& row : rows)
      out << csvio::escape_field(row.configuration) << "," << csvio::escape_field(row.release)
          << "," << csvio::format_double(row.mean_scc) << ","
          << csvio::format_double(row.mean_mae) << "\n";
    csvio::write_file_atomic(out_dir / "aggregate.csv", out.str());
    csvio::write_file_atomic(out_dir / "summary.txt", eval::format_aggregate_table(rows));
  }

  // Pairwise t-tests between selection methods: same kinds and counts,
  // different method, paired per repetition on identical folds.
  auto strip_method = [](const eval::PipelineConfig& c) {
    auto copy = c;
    copy.method = featsel::SelectionMethod::pearson;  // canonical placeholder
    return copy.describe();
  };
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    if (configs[ci].method == featsel::SelectionMethod::none) continue;
    groups[strip_method(configs[ci])].push_back(ci);
  }
  std::map<std::pair<std::string, std::string>, const eval::EvalReport*> by_key;
  for (const auto& [label, report] : result.reports)
    by_key[{label, report.configuration}] = &report;

  auto metric_vector = [](const eval::EvalReport& r, bool use_scc) {
    std::vector<double> v;
    v.reserve(r.reps.size());
    for (const auto& rep : r.reps) v.push_back(use_scc ? rep.scc : rep.mae);
    return v;
  };

  for (const auto& [group_id, members] : groups) {
    if (members.size() < 2) continue;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const auto& config_a = configs[members[i]];
        const auto& config_b = configs[members[j]];
        for (bool use_scc : {true, false}) {
          std::vector<double> pooled_a;
          std::vector<double> pooled_b;
          for (const auto& [label, extracted] : releases) {
            auto it_a = by_key.find({label, config_a.describe()});
            auto it_b = by_key.find({label, config_b.describe()});
            if (it_a == by_key.end() || it_b == by_key.end()) continue;
            auto va = metric_vector(*it_a->second, use_scc);
            auto vb = metric_vector(*it_b->second, use_scc);
            result.ttests.push_back({label, use_scc ? "scc" : "mae", config_a.describe(),
                                     config_b.describe(), eval::paired_t_test(va, vb)});
            pooled_a.insert(pooled_a.end(), va.begin(), va.end());
            pooled_b.insert(pooled_b.end(), vb.begin(), vb.end());
          }
          if (releases.size() > 1 && pooled_a.size() >= 2)
            result.ttests.push_back({"ALL", use_scc ? "scc" : "mae", config_a.describe(),
                                     config_b.describe(),
                                     eval::paired_t_test(pooled_a, pooled_b)});
        }
      }
    }
  }
  if (!result.ttests.empty()) {
    std::ostringstream out;
    out << "# schema defectpred.ttests.v1\n";
    out << "release,metric,config_a,config_b,t,p,degenerate\n";
    for (const auto& test : result.ttests)
      out << csvio::escape_field(test.release) << "," << test.metric << ","
          << csvio::escape_field(test.config_a) << "," << csvio::escape_field(test.config_b)
          << "," << csvio::format_double(test.result.t) << ","
          << csvio::format_double(test.result.p) << "," << (test.result.degenerate ? 1 : 0)
          << "\n";
    csvio::write_file_atomic(out_dir / "ttests.csv", out.str());
  }

  if (!result.failures.empty()) {
    std::ostringstream out;
    for (const auto& failure : result.failures) out << failure << "\n";
    csvio::write_file_atomic(out_dir / "failures.log", out.str());
  }
  return result;
}

}  // namespace defectpred::experiment
