#include "support/synth.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("DEFECTPRED_CLI");
  return env ? env : "";
}

int run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

struct Corpus {
  fs::path dir;
  fs::path src;
  fs::path dataset;

  explicit Corpus(int files, std::uint64_t seed) {
    synth::Options options;
    options.files = files;
    options.planted = files / 3;
    options.seed = seed;
    dir = fs::temp_directory_path() / ("defectpred_cli_" + std::to_string(seed));
    fs::remove_all(dir);
    dataset = synth::write_tree(synth::planted_corpus(options), dir);
    src = dir / "src";
  }
  ~Corpus() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("cli extract writes the matrix artifacts" * doctest::skip(cli_path().empty())) {
  Corpus corpus(120, 51);
  fs::path out = corpus.dir / "out";
  CHECK(run("extract --source " + corpus.src.string() + " --dataset " +
            corpus.dataset.string() + " --out " + out.string()) == 0);
  for (const char* name : {"term_matrix.csv", "type_matrix.csv", "package_matrix.csv",
                           "tokens.txt", "catalog.csv", "warnings.log"})
    CHECK_MESSAGE(fs::exists(out / name), name);

  SUBCASE("re-running overwrites in place") {
    CHECK(run("extract --source " + corpus.src.string() + " --dataset " +
              corpus.dataset.string() + " --out " + out.string()) == 0);
  }
}

TEST_CASE("cli rejects a too-small release with exit 2" * doctest::skip(cli_path().empty())) {
  Corpus corpus(99, 52);
  CHECK(run("extract --source " + corpus.src.string() + " --dataset " +
            corpus.dataset.string() + " --out " + (corpus.dir / "out").string()) == 2);
}

TEST_CASE("cli missing dataset file is a usage error" * doctest::skip(cli_path().empty())) {
  Corpus corpus(110, 53);
  CHECK(run("extract --source " + corpus.src.string() + " --dataset /no/such/file.csv --out " +
            (corpus.dir / "out").string()) == 1);
  CHECK(run("extract --source " + corpus.src.string()) == 1);  // incomplete flags
  CHECK(run("definitely-not-a-command") == 1);
}

TEST_CASE("cli experiment runs a matrix and honors the seed" *
          doctest::skip(cli_path().empty())) {
  Corpus corpus(110, 54);
  fs::path out_a = corpus.dir / "exp_a";
  fs::path out_b = corpus.dir / "exp_b";
  std::string base = "experiment --source " + corpus.src.string() + " --dataset " +
                     corpus.dataset.string() + " --kinds term --method spearman,pearson " +
                     "--n-features 5 --reps 4 --seed 7 --out ";
  CHECK(run(base + out_a.string()) == 0);
  CHECK(run(base + out_b.string()) == 0);
  CHECK(fs::exists(out_a / "aggregate.csv"));
  CHECK(fs::exists(out_a / "summary.txt"));
  CHECK(fs::exists(out_a / "ttests.csv"));
  for (const auto& entry : fs::directory_iterator(out_a))
    CHECK(slurp(entry.path()) == slurp(out_b / entry.path().filename()));

  SUBCASE("report re-renders the aggregate table") {
    CHECK(run("report --in " + out_a.string()) == 0);
  }
}

TEST_CASE("cli experiment with empty kinds is a usage error" *
          doctest::skip(cli_path().empty())) {
  Corpus corpus(110, 55);
  CHECK(run("experiment --source " + corpus.src.string() + " --dataset " +
            corpus.dataset.string() + " --out " + (corpus.dir / "out").string() +
            " --kinds '' --reps 2") == 1);
}

TEST_CASE("cli extract is byte-deterministic" * doctest::skip(cli_path().empty())) {
  Corpus corpus(105, 57);
  fs::path out_a = corpus.dir / "ex_a";
  fs::path out_b = corpus.dir / "ex_b";
  std::string base = "extract --source " + corpus.src.string() + " --dataset " +
                     corpus.dataset.string() + " --out ";
  CHECK(run(base + out_a.string()) == 0);
  CHECK(run(base + out_b.string()) == 0);
  for (const auto& entry : fs::directory_iterator(out_a))
    CHECK(slurp(entry.path()) == slurp(out_b / entry.path().filename()));
}

TEST_CASE("cli experiment records infeasible configs and exits 3" *
          doctest::skip(cli_path().empty())) {
  Corpus corpus(105, 58);
  fs::path out = corpus.dir / "partial";
  // 9999 topics exceeds the token count: the topic configs fail, term ones run
  CHECK(run("experiment --source " + corpus.src.string() + " --dataset " +
            corpus.dataset.string() + " --out " + out.string() +
            " --kinds term,topic --n-features 5 --topics 9999 --reps 2 --seed 4") == 3);
  CHECK(fs::exists(out / "failures.log"));
  CHECK(fs::exists(out / "aggregate.csv"));
}

TEST_CASE("cli reads flags from a config file" * doctest::skip(cli_path().empty())) {
  Corpus corpus(105, 59);
  fs::path config = corpus.dir / "run.ini";
  {
    std::ofstream out(config);
    out << "kinds=term\n";
    out << "n-features=5\n";
    out << "reps=2\n";
    out << "seed=12\n";
  }
  fs::path out_dir = corpus.dir / "cfg_out";
  CHECK(run("experiment --config " + config.string() + " --source " + corpus.src.string() +
            " --dataset " + corpus.dataset.string() + " --out " + out_dir.string()) == 0);
  CHECK(fs::exists(out_dir / "aggregate.csv"));
}

TEST_CASE("cli explain emits the case-study files" * doctest::skip(cli_path().empty())) {
  Corpus corpus(110, 56);
  fs::path out = corpus.dir / "explain";
  CHECK(run("explain --source " + corpus.src.string() + " --dataset " +
            corpus.dataset.string() + " --out " + out.string() +
            " --topics 3 --lda-iterations 60 --seed 5") == 0);
  CHECK(fs::exists(out / "skew.txt"));
  CHECK(fs::exists(out / "feature_correlations.csv"));
  CHECK(fs::exists(out / "topic_top_files.txt"));
  CHECK(fs::exists(out / "topic_top_words.txt"));
  CHECK(fs::exists(out / "model.txt"));
  // negative correlate reported with its sign
  auto correlations = slurp(out / "feature_correlations.csv");
  CHECK(correlations.find(",-0.") != std::string::npos);
  CHECK(correlations.find("term:leak,spearman,") != std::string::npos);
}
