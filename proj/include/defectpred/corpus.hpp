#pragma once

#include "defectpred/feature_matrix.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace defectpred::corpus {

/// One analyzed compilation unit. The qualified name is the declared
/// package plus the file stem (bare stem when there is no package
/// declaration), which is how public defect datasets key their rows.
struct SourceFile {
  std::filesystem::path path;
  std::string qualified_name;
  std::string text;
};

/// One dataset row: class name, post-release defect count, and whatever
/// numeric metric columns the dataset carries (LOC, CK, OO ...).
struct DefectRecord {
  std::string qualified_name;
  int defect_count = 0;
  std::map<std::string, double> baseline_metrics;
};

struct ReleaseFile {
  SourceFile source;
  int defect_count = 0;
  std::map<std::string, double> baseline_metrics;
};

/// A project version: source files joined to defect records, ordered
/// lexicographically by qualified name. The canonical order is fixed before
/// any seeded randomness so cross-validation folds are reproducible.
struct Release {
  std::string project;
  std::string version;
  std::vector<ReleaseFile> files;
  std::vector<std::string> baseline_names;  // metric column order from the dataset

  Eigen::VectorXd defect_counts() const;
  std::vector<std::string> qualified_names() const;
};

struct DatasetColumns {
  std::string name = "name";
  std::string defects = "bug";
};

struct LoadResult {
  Release release;
  std::vector<std::string> warnings;  // "WARN unmatched_row <name>" style lines
  std::size_t unmatched_rows = 0;
  std::size_t unmatched_files = 0;
};

/// Parses a comma-separated dataset with a header row. Columns other than
/// the name and defect columns become baseline metrics when they parse as
/// numbers.
std::vector<DefectRecord> read_defect_dataset(const std::filesystem::path& dataset,
                                              const DatasetColumns& columns,
                                              std::vector<std::string>* metric_names = nullptr);

/// Scans `source_root` for .java files, derives qualified names from
/// package declarations, and joins them to dataset rows. Unmatched rows and
/// files are dropped with warnings; duplicate qualified names and an empty
/// intersection are load errors.
LoadResult load_release(const std::filesystem::path& source_root,
                        const std::filesystem::path& dataset,
                        const DatasetColumns& columns = {}, std::string project = "",
                        std::string version = "");

enum class Validity { valid, too_small, too_few_bugs };

std::string to_string(Validity v);

/// too_small when fewer than 100 files; too_few_bugs when the fraction of
/// files with at least one defect is below 0.10; both thresholds inclusive.
Validity validate_release(const Release& release);

/// Matrix of the pre-compiled baseline metrics, one column per metric.
/// Every file must carry the same metric key set.
FeatureMatrix baseline_matrix(const Release& release);

}  // namespace defectpred::corpus
