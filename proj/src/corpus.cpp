#include "defectpred/corpus.hpp"

#include "defectpred/csv.hpp"
#include "defectpred/error.hpp"
#include "defectpred/java_scan.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace defectpred::corpus {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool parse_number(const std::string& text, double* out) {
  if (text.empty()) return false;
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    while (used < text.size() && (text[used] == ' ' || text[used] == '\t')) ++used;
    if (used != text.size()) return false;
    *out = value;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Eigen::VectorXd Release::defect_counts() const {
  Eigen::VectorXd y(static_cast<Eigen::Index>(files.size()));
  for (std::size_t i = 0; i < files.size(); ++i)
    y(static_cast<Eigen::Index>(i)) = files[i].defect_count;
  return y;
}

std::vector<std::string> Release::qualified_names() const {
  std::vector<std::string> names;
  names.reserve(files.size());
  for (const auto& f : files) names.push_back(f.source.qualified_name);
  return names;
}

std::vector<DefectRecord> read_defect_dataset(const std::filesystem::path& dataset,
                                              const DatasetColumns& columns,
                                              std::vector<std::string>* metric_names) {
  csvio::Table table = csvio::read_table(dataset);
  int name_col = -1;
  int bug_col = -1;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    std::string h = trim(table.header[c]);
    if (h == columns.name && name_col < 0) name_col = static_cast<int>(c);
    if (h == columns.defects && bug_col < 0) bug_col = static_cast<int>(c);
  }
  if (name_col < 0)
    throw Error("dataset " + dataset.string() + " has no column '" + columns.name + "'");
  if (bug_col < 0)
    throw Error("dataset " + dataset.string() + " has no column '" + columns.defects + "'");

  if (metric_names) {
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      if (static_cast<int>(c) == name_col || static_cast<int>(c) == bug_col) continue;
      std::string h = trim(table.header[c]);
      if (!h.empty()) metric_names->push_back(h);
    }
  }

  std::vector<DefectRecord> records;
  records.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    if (row.size() <= static_cast<std::size_t>(std::max(name_col, bug_col))) continue;
    DefectRecord rec;
    rec.qualified_name = trim(row[static_cast<std::size_t>(name_col)]);
    if (rec.qualified_name.empty()) continue;
    double bugs = 0.0;
    if (!parse_number(trim(row[static_cast<std::size_t>(bug_col)]), &bugs))
      throw Error("dataset row '" + rec.qualified_name + "': defect count is not a number");
    if (bugs < 0) throw Error("dataset row '" + rec.qualified_name + "': negative defect count");
    rec.defect_count = static_cast<int>(std::llround(bugs));
    for (std::size_t c = 0; c < table.header.size() && c < row.size(); ++c) {
      if (static_cast<int>(c) == name_col || static_cast<int>(c) == bug_col) continue;
      std::string h = trim(table.header[c]);
      if (h.empty()) continue;
      double value = 0.0;
      if (parse_number(trim(row[c]), &value)) rec.baseline_metrics[h] = value;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

LoadResult load_release(const std::filesystem::path& source_root,
                        const std::filesystem::path& dataset, const DatasetColumns& columns,
                        std::string project, std::string version) {
  if (!std::filesystem::is_directory(source_root))
    throw Error("source root is not a directory: " + source_root.string());

  LoadResult result;
  result.release.project = std::move(project);
  result.release.version = std::move(version);

  // Phase 1: scan the tree and derive qualified names.
  std::map<std::string, SourceFile> by_name;
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(source_root)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".java") continue;
    paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  for (const auto& path : paths) {
    SourceFile file;
    file.path = path;
    file.text = read_file(path);
    std::string package = java::package_name(java::lex(file.text));
    std::string stem = path.stem().string();
    file.qualified_name = package.empty() ? stem : package + "." + stem;
    auto [it, inserted] = by_name.emplace(file.qualified_name, std::move(file));
    if (!inserted)
      throw Error("duplicate qualified name '" + it->first + "': " + it->second.path.string() +
                  " and " + path.string());
  }

  std::vector<std::string> metric_names;
  auto records = read_defect_dataset(dataset, columns, &metric_names);

  // Phase 2: join by qualified name.
  std::map<std::string, const DefectRecord*> by_row;
  for (const auto& rec : records) {
    auto [it, inserted] = by_row.emplace(rec.qualified_name, &rec);
    if (!inserted) {
      result.warnings.push_back("WARN duplicate_row " + rec.qualified_name);
    }
  }
  for (const auto& [name, rec] : by_row) {
    auto it = by_name.find(name);
    if (it == by_name.end()) {
      result.warnings.push_back("WARN unmatched_row " + name);
      ++result.unmatched_rows;
      continue;
    }
    ReleaseFile rf;
    rf.source = std::move(it->second);
    rf.defect_count = rec->defect_count;
    rf.baseline_metrics = rec->baseline_metrics;
    result.release.files.push_back(std::move(rf));
    by_name.erase(it);
  }
  for (const auto& [name, file] : by_name) {
    result.warnings.push_back("WARN unmatched_file " + name);
    ++result.unmatched_files;
  }
  if (result.release.files.empty())
    throw Error("no dataset rows match any source file under " + source_root.string());

  // by_row is a sorted map, so files are already in canonical order; keep
  // the invariant explicit anyway.
  std::sort(result.release.files.begin(), result.release.files.end(),
            [](const ReleaseFile& a, const ReleaseFile& b) {
              return a.source.qualified_name < b.source.qualified_name;
            });
  result.release.baseline_names = std::move(metric_names);
  return result;
}

std::string to_string(Validity v) {
  switch (v) {
    case Validity::valid: return "valid";
    case Validity::too_small: return "too_small";
    case Validity::too_few_bugs: return "too_few_bugs";
  }
  return "unknown";
}

Validity validate_release(const Release& release) {
  if (release.files.size() < 100) return Validity::too_small;
  std::size_t defective = 0;
  for (const auto& f : release.files)
    if (f.defect_count > 0) ++defective;
  double ratio = static_cast<double>(defective) / static_cast<double>(release.files.size());
  if (ratio < 0.10) return Validity::too_few_bugs;
  return Validity::valid;
}

FeatureMatrix baseline_matrix(const Release& release) {
  if (release.files.empty()) throw Error("baseline_matrix: empty release");
  std::set<std::string> all_keys;
  for (const auto& f : release.files)
    for (const auto& [key, value] : f.baseline_metrics) all_keys.insert(key);
  if (all_keys.empty()) throw Error("baseline_matrix: no baseline metrics");

  // Dataset column order where known, remaining keys alphabetically.
  std::vector<std::string> kept;
  for (const auto& name : release.baseline_names)
    if (all_keys.erase(name)) kept.push_back(name);
  kept.insert(kept.end(), all_keys.begin(), all_keys.end());

  std::vector<std::string> offenders;
  for (const auto& f : release.files) {
    for (const auto& name : kept) {
      if (!f.baseline_metrics.count(name)) {
        offenders.push_back(f.source.qualified_name + " missing " + name);
        break;
      }
    }
  }
  if (!offenders.empty()) {
    std::string msg = "baseline_matrix: heterogeneous metric sets:";
    for (const auto& o : offenders) msg += " " + o + ";";
    throw Error(msg);
  }

  FeatureMatrix out;
  out.kind = "baseline";
  out.columns = kept;
  out.values.resize(static_cast<Eigen::Index>(release.files.size()),
                    static_cast<Eigen::Index>(kept.size()));
  for (std::size_t r = 0; r < release.files.size(); ++r)
    for (std::size_t c = 0; c < kept.size(); ++c)
      out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          release.files[r].baseline_metrics.at(kept[c]);
  return out;
}

}  // namespace defectpred::corpus
