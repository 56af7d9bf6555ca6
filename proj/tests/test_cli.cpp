#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

std::string bin() {
  const char* b = std::getenv("CROSSPOST_BIN");
  REQUIRE(b != nullptr);
  return b;
}

int run(const std::string& args) {
  std::string cmd = bin() + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string run_capture(const std::string& args) {
  fs::path tmp = fs::temp_directory_path() / "crosspost_cli_capture.txt";
  std::string cmd = bin() + " " + args + " >" + tmp.string() + " 2>&1";
  if (std::system(cmd.c_str()) == -1) return "";
  std::ifstream in(tmp);
  std::ostringstream out;
  out << in.rdbuf();
  fs::remove(tmp);
  return out.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) : path(fs::temp_directory_path() / tag) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const char* kSmallSpec = R"(
authors = 30
groups = 400
seed = 5

[posts]
fillers_fb = 3
fillers_gp = 2
fillers_tw = 4

[pattern_mix]
fb_tw = 50.0
fb_gp = 30.0
tw_gp = 10.0
fb_tw_gp = 10.0

[preference_plant]
strong100_fb = 1
strong100_gp = 1
strong100_tw = 1
strong80_fb = 2
strong80_gp = 1
strong80_tw = 2
agnostic = 3

[interval_classes]
automatic = 4
quick = 6
moderate = 5
slow = 3

[labeled]
pairs = 400
)";

}  // namespace

TEST_CASE("synth detect analyze round trip") {
  TempDir dir("crosspost_cli_e2e");
  fs::path spec = dir.path / "spec.toml";
  std::ofstream(spec) << kSmallSpec;

  CHECK(run("synth --spec " + spec.string() + " --out " + dir.path.string()) == 0);
  for (const char* f : {"corpus.jsonl", "groundtruth.jsonl", "labeled.jsonl",
                        "resolver.jsonl", "plant_summary.txt"}) {
    CHECK(fs::exists(dir.path / f));
  }

  CHECK(run("detect --input " + (dir.path / "corpus.jsonl").string() + " --out " +
            dir.path.string()) == 0);
  CHECK(fs::exists(dir.path / "matchset.jsonl"));
  CHECK(fs::exists(dir.path / "matchset.jsonl.meta.json"));
  CHECK(fs::exists(dir.path / "summary.txt"));
  CHECK(fs::exists(dir.path / "restricted.jsonl"));

  CHECK(run("analyze --input " + (dir.path / "corpus.jsonl").string() + " --out " +
            dir.path.string() + " --resolver-cache " +
            (dir.path / "resolver.jsonl").string()) == 0);
  for (const char* f : {"patterns.csv", "engagement.csv", "preference.csv",
                        "interval_groups.csv", "content_types.csv", "url_sites.csv",
                        "manifest.csv", "ecdf_cross_fraction_fb.csv"}) {
    CHECK(fs::exists(dir.path / f));
  }
  // the manifest lists every csv with its row count
  std::string manifest = slurp(dir.path / "manifest.csv");
  CHECK(manifest.find("patterns.csv,4") != std::string::npos);

  CHECK(run("validate --labeled " + (dir.path / "labeled.jsonl").string() + " --out " +
            dir.path.string()) == 0);
  CHECK(fs::exists(dir.path / "validation.csv"));

  std::string report = run_capture("report --out " + dir.path.string());
  CHECK(report.find("plant_summary.txt") != std::string::npos);
  CHECK(report.find("summary.txt") != std::string::npos);
  CHECK(report.find("validation.csv") != std::string::npos);
}

TEST_CASE("synth is deterministic across runs") {
  TempDir a("crosspost_cli_det_a");
  TempDir b("crosspost_cli_det_b");
  fs::path spec = a.path / "spec.toml";
  std::ofstream(spec) << kSmallSpec;
  CHECK(run("synth --spec " + spec.string() + " --seed 11 --out " + a.path.string()) == 0);
  CHECK(run("synth --spec " + spec.string() + " --seed 11 --out " + b.path.string()) == 0);
  for (const char* f : {"corpus.jsonl", "groundtruth.jsonl", "labeled.jsonl", "resolver.jsonl"}) {
    CHECK(slurp(a.path / f) == slurp(b.path / f));
  }
  TempDir c("crosspost_cli_det_c");
  CHECK(run("synth --spec " + spec.string() + " --seed 12 --out " + c.path.string()) == 0);
  CHECK(slurp(a.path / "corpus.jsonl") != slurp(c.path / "corpus.jsonl"));
}

TEST_CASE("empty corpus detects zero groups with exit 0") {
  TempDir dir("crosspost_cli_empty");
  std::ofstream(dir.path / "empty.jsonl") << "";
  CHECK(run("detect --input " + (dir.path / "empty.jsonl").string() + " --out " +
            dir.path.string()) == 0);
  std::string summary = slurp(dir.path / "summary.txt");
  CHECK(summary.find("groups: 0") != std::string::npos);
}

TEST_CASE("exit codes by failure category") {
  TempDir dir("crosspost_cli_codes");
  std::ofstream(dir.path / "ok.jsonl")
      << R"({"platform":"fb","author_id":"u","post_id":"p","timestamp":9,"text":"x","content_type":"status","engagement":{"likes":0,"comments":0,"shares":0}})"
      << "\n";

  // 4: config error (threshold outside (0,1))
  CHECK(run("detect --input " + (dir.path / "ok.jsonl").string() + " --out " +
            dir.path.string() + " --threshold 1.5") == 4);
  // 2: missing input file
  CHECK(run("detect --input " + (dir.path / "missing.jsonl").string() + " --out " +
            dir.path.string()) == 2);
  // 2: labeled file absent
  CHECK(run("validate --labeled " + (dir.path / "missing.jsonl").string()) == 2);
  // 3: malformed corpus in strict mode
  std::ofstream(dir.path / "bad.jsonl") << "not json\n";
  CHECK(run("detect --strict --input " + (dir.path / "bad.jsonl").string() + " --out " +
            dir.path.string()) == 3);
  // 4: zero-author synth spec
  std::ofstream(dir.path / "zero.toml") << "authors = 0\n";
  CHECK(run("synth --spec " + (dir.path / "zero.toml").string() + " --out " +
            dir.path.string()) == 4);
  // 4: unknown flag
  CHECK(run("detect --no-such-flag") == 4);
  // 2: report with nothing to concatenate
  TempDir empty("crosspost_cli_empty_report");
  CHECK(run("report --out " + empty.path.string()) == 2);
}

TEST_CASE("analyze rejects a matchset from a different corpus with exit 5") {
  TempDir dir("crosspost_cli_mismatch");
  fs::path spec = dir.path / "spec.toml";
  std::ofstream(spec) << kSmallSpec;
  CHECK(run("synth --spec " + spec.string() + " --out " + dir.path.string()) == 0);
  CHECK(run("detect --input " + (dir.path / "corpus.jsonl").string() + " --out " +
            dir.path.string()) == 0);

  // corrupt the corpus: drop the last line
  std::string corpus = slurp(dir.path / "corpus.jsonl");
  auto cut = corpus.rfind('\n', corpus.size() - 2);
  std::ofstream(dir.path / "corpus.jsonl") << corpus.substr(0, cut + 1);

  CHECK(run("analyze --input " + (dir.path / "corpus.jsonl").string() + " --out " +
            dir.path.string()) == 5);
}

TEST_CASE("strict analyze requires the resolver cache file") {
  TempDir dir("crosspost_cli_stricturl");
  fs::path spec = dir.path / "spec.toml";
  std::ofstream(spec) << kSmallSpec;
  CHECK(run("synth --spec " + spec.string() + " --out " + dir.path.string()) == 0);
  CHECK(run("detect --input " + (dir.path / "corpus.jsonl").string() + " --out " +
            dir.path.string()) == 0);
  // missing cache file: exit 2 naming the path
  CHECK(run("analyze --strict --input " + (dir.path / "corpus.jsonl").string() + " --out " +
            dir.path.string() + " --resolver-cache " + (dir.path / "nope.jsonl").string()) ==
        2);
  // strict with the generated cache works
  CHECK(run("analyze --strict --input " + (dir.path / "corpus.jsonl").string() + " --out " +
            dir.path.string() + " --resolver-cache " +
            (dir.path / "resolver.jsonl").string()) == 0);
}

TEST_CASE("single threshold validate prints one row") {
  TempDir dir("crosspost_cli_single");
  std::ofstream(dir.path / "labeled.jsonl")
      << R"({"text_a":"a b c","text_b":"a b c","is_cross":true})" << "\n"
      << R"({"text_a":"a b c","text_b":"x y z","is_cross":false})" << "\n";
  std::string out = run_capture("validate --labeled " + (dir.path / "labeled.jsonl").string() +
                                " --thresholds 0.5");
  // header plus exactly one data row
  CHECK(out.find("0.5") != std::string::npos);
  std::size_t rows = 0;
  std::istringstream lines(out);
  std::string line;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 2);
}

TEST_CASE("one author with one group yields single-row per-user csvs") {
  TempDir dir("crosspost_cli_tiny");
  std::ofstream(dir.path / "tiny.jsonl")
      << R"({"platform":"fb","author_id":"solo","post_id":"f1","timestamp":1000,"text":"hello out there","content_type":"status","engagement":{"likes":3,"comments":1,"shares":0}})"
      << "\n"
      << R"({"platform":"tw","author_id":"solo","post_id":"t1","timestamp":1500,"text":"hello out there","content_type":"status","engagement":{"likes":1,"shares":0}})"
      << "\n";
  CHECK(run("detect --input " + (dir.path / "tiny.jsonl").string() + " --out " +
            dir.path.string()) == 0);
  CHECK(run("analyze --input " + (dir.path / "tiny.jsonl").string() + " --out " +
            dir.path.string()) == 0);
  auto data_rows = [&](const char* name) {
    std::istringstream in(slurp(dir.path / name));
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) ++n;
    return n - 1;  // minus header
  };
  CHECK(data_rows("preference.csv") == 1);
  CHECK(data_rows("ecdf_cross_fraction_fb.csv") == 1);
  CHECK(data_rows("ecdf_pattern_share_fbtw.csv") == 1);
}

TEST_CASE("config file supplies defaults, flags win") {
  TempDir dir("crosspost_cli_config");
  std::ofstream(dir.path / "tiny.jsonl")
      << R"({"platform":"fb","author_id":"solo","post_id":"f1","timestamp":1000,"text":"hello out there","content_type":"status","engagement":{"likes":3,"comments":1,"shares":0}})"
      << "\n";
  std::ofstream(dir.path / "run.ini") << "[detect]\ninput = " << (dir.path / "tiny.jsonl").string()
                                      << "\nout = " << dir.path.string() << "\n";
  CHECK(run("detect --config " + (dir.path / "run.ini").string()) == 0);
  // flag overrides the config's threshold; 1.5 must fail even with a config
  std::ofstream(dir.path / "run2.ini")
      << "[detect]\ninput = " << (dir.path / "tiny.jsonl").string() << "\nthreshold = 0.5\n";
  CHECK(run("detect --config " + (dir.path / "run2.ini").string() + " --out " +
            dir.path.string() + " --threshold 1.5") == 4);
}
