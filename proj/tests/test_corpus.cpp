#include "defectpred/corpus.hpp"

#include "defectpred/error.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace defectpred;
using namespace defectpred::corpus;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("defectpred_corpus_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

void put_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

Release make_release(std::size_t files, std::size_t defective) {
  Release release;
  for (std::size_t i = 0; i < files; ++i) {
    ReleaseFile f;
    f.source.qualified_name = "pkg.C" + std::to_string(i);
    f.defect_count = i < defective ? 1 : 0;
    release.files.push_back(std::move(f));
  }
  return release;
}

}  // namespace

TEST_CASE("load_release joins files to dataset rows by qualified name") {
  TempDir dir;
  put_file(dir.path / "src/org/gjt/sp/jedit/Buffer.java",
           "package org.gjt.sp.jedit;\npublic class Buffer {}\n");
  put_file(dir.path / "dataset.csv", "name,bug\norg.gjt.sp.jedit.Buffer,3\n");
  auto result = load_release(dir.path / "src", dir.path / "dataset.csv");
  REQUIRE(result.release.files.size() == 1);
  CHECK(result.release.files[0].source.qualified_name == "org.gjt.sp.jedit.Buffer");
  CHECK(result.release.files[0].defect_count == 3);
  CHECK(result.warnings.empty());
}

TEST_CASE("unmatched dataset rows produce warnings, not failures") {
  TempDir dir;
  put_file(dir.path / "src/A.java", "package p;\npublic class A {}\n");
  put_file(dir.path / "dataset.csv", "name,bug\np.A,1\ncom.absent.Foo,1\n");
  auto result = load_release(dir.path / "src", dir.path / "dataset.csv");
  CHECK(result.release.files.size() == 1);
  CHECK(result.unmatched_rows == 1);
  REQUIRE(result.warnings.size() == 1);
  CHECK(result.warnings[0] == "WARN unmatched_row com.absent.Foo");
}

TEST_CASE("unmatched source files are excluded with warnings") {
  TempDir dir;
  put_file(dir.path / "src/A.java", "package p;\nclass A {}\n");
  put_file(dir.path / "src/B.java", "package p;\nclass B {}\n");
  put_file(dir.path / "dataset.csv", "name,bug\np.A,0\n");
  auto result = load_release(dir.path / "src", dir.path / "dataset.csv");
  CHECK(result.release.files.size() == 1);
  CHECK(result.unmatched_files == 1);
}

TEST_CASE("duplicate qualified names are a load error") {
  TempDir dir;
  put_file(dir.path / "src/x/B.java", "package a;\nclass B {}\n");
  put_file(dir.path / "src/y/B.java", "package a;\nclass B {}\n");
  put_file(dir.path / "dataset.csv", "name,bug\na.B,1\n");
  CHECK_THROWS_AS(load_release(dir.path / "src", dir.path / "dataset.csv"), Error);
}

TEST_CASE("empty intersection is a load error") {
  TempDir dir;
  put_file(dir.path / "src/A.java", "package p;\nclass A {}\n");
  put_file(dir.path / "dataset.csv", "name,bug\nq.Z,1\n");
  CHECK_THROWS_AS(load_release(dir.path / "src", dir.path / "dataset.csv"), Error);
}

TEST_CASE("files without a package declaration use the bare stem") {
  TempDir dir;
  put_file(dir.path / "src/Loose.java", "public class Loose {}\n");
  put_file(dir.path / "dataset.csv", "name,bug\nLoose,2\n");
  auto result = load_release(dir.path / "src", dir.path / "dataset.csv");
  REQUIRE(result.release.files.size() == 1);
  CHECK(result.release.files[0].source.qualified_name == "Loose");
}

TEST_CASE("join is order independent: shuffled dataset gives identical release") {
  TempDir dir;
  for (char c = 'a'; c <= 'e'; ++c)
    put_file(dir.path / ("src/" + std::string(1, c) + "/T.java"),
             "package " + std::string(1, c) + ";\nclass T {}\n");
  put_file(dir.path / "d1.csv", "name,bug\na.T,1\nb.T,2\nc.T,3\nd.T,4\ne.T,5\n");
  put_file(dir.path / "d2.csv", "name,bug\ne.T,5\nc.T,3\na.T,1\nd.T,4\nb.T,2\n");
  auto r1 = load_release(dir.path / "src", dir.path / "d1.csv");
  auto r2 = load_release(dir.path / "src", dir.path / "d2.csv");
  REQUIRE(r1.release.files.size() == r2.release.files.size());
  for (std::size_t i = 0; i < r1.release.files.size(); ++i) {
    CHECK(r1.release.files[i].source.qualified_name ==
          r2.release.files[i].source.qualified_name);
    CHECK(r1.release.files[i].defect_count == r2.release.files[i].defect_count);
  }
  // canonical order is lexicographic by qualified name
  CHECK(r1.release.files.front().source.qualified_name == "a.T");
  CHECK(r1.release.files.back().source.qualified_name == "e.T");
}

TEST_CASE("dataset column names are configurable") {
  TempDir dir;
  put_file(dir.path / "src/A.java", "package p;\nclass A {}\n");
  put_file(dir.path / "dataset.csv", "class,defects\np.A,4\n");
  DatasetColumns columns;
  columns.name = "class";
  columns.defects = "defects";
  auto result = load_release(dir.path / "src", dir.path / "dataset.csv", columns);
  CHECK(result.release.files[0].defect_count == 4);
}

TEST_CASE("validate_release thresholds are inclusive") {
  CHECK(validate_release(make_release(99, 50)) == Validity::too_small);
  CHECK(validate_release(make_release(200, 19)) == Validity::too_few_bugs);
  CHECK(validate_release(make_release(200, 20)) == Validity::valid);
  CHECK(validate_release(make_release(100, 10)) == Validity::valid);
  // too_small takes precedence
  CHECK(validate_release(make_release(50, 0)) == Validity::too_small);
}

TEST_CASE("baseline_matrix lays out one column per metric") {
  Release release = make_release(3, 1);
  for (auto& f : release.files) f.baseline_metrics = {{"loc", 10.0}, {"dit", 2.0}};
  release.baseline_names = {"loc", "dit"};
  auto matrix = baseline_matrix(release);
  CHECK(matrix.kind == "baseline");
  CHECK(matrix.columns == std::vector<std::string>{"loc", "dit"});
  CHECK(matrix.values(1, 0) == 10.0);
  CHECK(matrix.values(2, 1) == 2.0);
}

TEST_CASE("baseline_matrix rejects heterogeneous metric sets") {
  Release release = make_release(2, 1);
  release.files[0].baseline_metrics = {{"loc", 10.0}, {"dit", 2.0}};
  release.files[1].baseline_metrics = {{"loc", 5.0}};
  try {
    baseline_matrix(release);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("pkg.C1") != std::string::npos);
    CHECK(std::string(e.what()).find("dit") != std::string::npos);
  }
}

TEST_CASE("baseline_matrix without metrics is an error") {
  Release release = make_release(2, 1);
  CHECK_THROWS_WITH_AS(baseline_matrix(release), "baseline_matrix: no baseline metrics", Error);
}

TEST_CASE("metric columns are picked up from the dataset") {
  TempDir dir;
  put_file(dir.path / "src/A.java", "package p;\nclass A {}\n");
  put_file(dir.path / "dataset.csv", "name,loc,wmc,bug\np.A,120,7,1\n");
  auto result = load_release(dir.path / "src", dir.path / "dataset.csv");
  CHECK(result.release.baseline_names == std::vector<std::string>{"loc", "wmc"});
  CHECK(result.release.files[0].baseline_metrics.at("loc") == 120.0);
  auto matrix = baseline_matrix(result.release);
  CHECK(matrix.columns == std::vector<std::string>{"loc", "wmc"});
}
