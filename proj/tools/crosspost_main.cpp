// crosspost: batch pipeline for cross-post detection and characterization.
//
// Subcommands: synth, detect, analyze, validate, report. Every run is
// deterministic given its inputs and seed. Exit codes: 0 ok, 2 I/O,
// 3 format, 4 config, 5 corpus/matchset mismatch.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crosspost/analytics.hpp"
#include "crosspost/corpus.hpp"
#include "crosspost/errors.hpp"
#include "crosspost/pairing.hpp"
#include "crosspost/report.hpp"
#include "crosspost/validation.hpp"

namespace {

using namespace crosspost;

struct RunConfig {
  std::string input;
  std::string out = "out";
  std::string matchset;
  std::string labeled;
  std::string spec;
  std::string resolver_cache;
  double threshold = 0.5;
  int window_days = 7;
  double auto_threshold_s = 10.0;
  int k = 3;
  bool strict = false;
  std::uint64_t seed = 42;
  bool seed_given = false;
  int jobs = 1;
  std::vector<double> thresholds = {0.3, 0.5, 0.7};
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path.string() + " for writing");
  out << text;
}

corpus::Corpus load_and_restrict(const RunConfig& cfg, std::ostream& log) {
  auto loaded = corpus::load_corpus(cfg.input, cfg.strict);
  if (loaded.stats.skipped_lines > 0) {
    log << "skipped " << loaded.stats.skipped_lines << " malformed lines\n";
  }
  auto windows = corpus::analysis_windows(loaded.corpus);
  auto restricted = corpus::restrict(loaded.corpus, windows);
  if (restricted.stats.dropped_posts > 0 || restricted.stats.dropped_authors > 0) {
    log << "restricted to per-author analysis windows: dropped "
        << restricted.stats.dropped_posts << " posts, " << restricted.stats.dropped_authors
        << " non-analyzable authors\n";
  }
  return std::move(restricted.corpus);
}

int cmd_detect(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out);
  corpus::Corpus restricted = load_and_restrict(cfg, std::cout);

  pairing::DetectOptions opts;
  opts.threshold = cfg.threshold;
  opts.window_days = cfg.window_days;
  opts.jobs = cfg.jobs;
  pairing::MatchSet ms = pairing::detect(restricted, opts);

  std::filesystem::path out_dir(cfg.out);
  corpus::save_corpus(restricted, out_dir / "restricted.jsonl");
  pairing::save_matchset(ms, out_dir / "matchset.jsonl");
  report::write_matchset_meta(out_dir / "matchset.jsonl", restricted, cfg.threshold,
                              cfg.window_days);
  std::string summary = report::detect_summary(restricted, ms);
  write_text(out_dir / "summary.txt", summary);
  std::cout << summary;
  return 0;
}

int cmd_analyze(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out);
  corpus::Corpus restricted = load_and_restrict(cfg, std::cout);

  std::filesystem::path ms_path =
      cfg.matchset.empty() ? std::filesystem::path(cfg.out) / "matchset.jsonl"
                           : std::filesystem::path(cfg.matchset);
  pairing::MatchSet ms = pairing::load_matchset(ms_path);

  std::string recorded = report::read_matchset_meta_digest(ms_path);
  if (!recorded.empty() && recorded != report::corpus_digest(restricted)) {
    throw consistency_error("matchset " + ms_path.string() +
                            " was computed from a different corpus (digest mismatch)");
  }
  pairing::verify_consistency(restricted, ms);

  analytics::UrlResolver resolver;
  if (!cfg.resolver_cache.empty()) {
    resolver = analytics::UrlResolver::load(cfg.resolver_cache);
  }

  report::AnalyzeOptions options;
  options.strict_urls = cfg.strict;
  options.automatic_threshold_s = cfg.auto_threshold_s;
  options.k = cfg.k;
  auto result = report::write_analysis(restricted, ms, resolver, cfg.out, options);
  write_text(std::filesystem::path(cfg.out) / "analyze_summary.txt", result.summary);
  std::cout << result.summary;
  std::cout << "wrote " << result.files.size() << " csv files to " << cfg.out << "\n";
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  auto labeled = validation::load_labeled_pairs(cfg.labeled);
  auto evals = validation::sweep(labeled, cfg.thresholds);

  std::ostringstream csv;
  csv << "threshold,fp_pct,fn_pct,tp,fp,tn,fn\n";
  std::cout << "threshold  fp_pct    fn_pct\n";
  for (const auto& ev : evals) {
    auto fp = ev.fp_rate_pct();
    auto fn = ev.fn_rate_pct();
    auto show = [](std::optional<double> v) {
      if (!v) return std::string("-");
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.3f", *v);
      return std::string(buf);
    };
    std::cout << ev.threshold << "        " << show(fp) << "     " << show(fn) << "\n";
    csv << ev.threshold << "," << show(fp) << "," << show(fn) << "," << ev.tp << "," << ev.fp
        << "," << ev.tn << "," << ev.fn << "\n";
  }
  if (!cfg.out.empty()) {
    std::filesystem::create_directories(cfg.out);
    write_text(std::filesystem::path(cfg.out) / "validation.csv", csv.str());
  }
  return 0;
}

int cmd_synth(const RunConfig& cfg) {
  validation::SynthSpec spec =
      cfg.spec.empty() ? validation::default_synth_spec() : validation::load_synth_spec(cfg.spec);
  if (cfg.seed_given) spec.seed = cfg.seed;

  validation::SynthOutput out = validation::generate_synthetic(spec);

  std::filesystem::create_directories(cfg.out);
  std::filesystem::path dir(cfg.out);
  corpus::save_corpus(out.corpus, dir / "corpus.jsonl");
  pairing::save_matchset(out.ground_truth, dir / "groundtruth.jsonl");
  validation::save_labeled_pairs(out.labeled, dir / "labeled.jsonl");
  out.resolver.save(dir / "resolver.jsonl");

  std::ostringstream s;
  s << "seed " << spec.seed << ": " << out.corpus.authors().size() << " authors, "
    << out.corpus.posts().size() << " posts, " << out.ground_truth.groups.size()
    << " planted groups, " << out.labeled.size() << " labeled pairs\n";
  s << "  pattern census:";
  for (pairing::Pattern p : pairing::kPatterns) {
    s << " " << pairing::pattern_name(p) << "=" <<
        out.pattern_counts[static_cast<std::size_t>(p)];
  }
  s << "\n  strong-100 plants: fb=" << out.strong100_plants[0].size()
    << " gp=" << out.strong100_plants[1].size() << " tw=" << out.strong100_plants[2].size()
    << "\n";
  std::array<std::size_t, 4> classes{};
  for (const auto& [author, cls] : out.interval_class_of) ++classes[cls];
  s << "  interval classes: automatic=" << classes[0] << " quick=" << classes[1]
    << " moderate=" << classes[2] << " slow=" << classes[3] << "\n";
  write_text(dir / "plant_summary.txt", s.str());
  std::cout << s.str();
  return 0;
}

int cmd_report(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.out);
  bool any = false;
  for (const char* name :
       {"plant_summary.txt", "summary.txt", "analyze_summary.txt", "validation.csv"}) {
    std::ifstream in(dir / name);
    if (!in) continue;
    any = true;
    std::cout << "== " << name << "\n" << in.rdbuf() << "\n";
  }
  if (!any) throw io_error("no summaries found under " + dir.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cross-post detection and characterization engine"};
  app.require_subcommand(1);
  app.set_config("--config")->envname("CROSSPOST_CONFIG");

  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_flag("--strict", cfg.strict, "strict ingestion and url resolution");
  };
  auto add_pipeline = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "corpus jsonl file")->required();
    sub->add_option("--threshold", cfg.threshold, "stage-2 similarity threshold");
    sub->add_option("--window-days", cfg.window_days, "candidate window half-width (days)");
    sub->add_option("--jobs", cfg.jobs, "parallel author matching degree");
  };

  CLI::App* detect = app.add_subcommand("detect", "ingest, restrict and match a corpus");
  add_common(detect);
  add_pipeline(detect);

  CLI::App* analyze = app.add_subcommand("analyze", "emit the analytics csv bundle");
  add_common(analyze);
  analyze->add_option("--input", cfg.input, "corpus jsonl file")->required();
  analyze->add_option("--matchset", cfg.matchset, "matchset jsonl (default <out>/matchset.jsonl)");
  analyze->add_option("--resolver-cache", cfg.resolver_cache, "short-url cache jsonl");
  analyze->add_option("--auto-threshold-s", cfg.auto_threshold_s,
                      "automatic-group interval threshold (seconds)");
  analyze->add_option("--k", cfg.k, "interval clusters");

  CLI::App* validate = app.add_subcommand("validate", "threshold sweep on labeled pairs");
  add_common(validate);
  validate->add_option("--labeled", cfg.labeled, "labeled pairs jsonl")->required();
  validate->add_option("--thresholds", cfg.thresholds, "thresholds to sweep");

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic corpus with ground truth");
  add_common(synth);
  synth->add_option("--spec", cfg.spec, "synth spec file (toml)");
  synth->add_option("--seed", cfg.seed, "generator seed")
      ->each([&](const std::string&) { cfg.seed_given = true; });

  CLI::App* rep = app.add_subcommand("report", "concatenate summaries from an output directory");
  add_common(rep);

  try {
    app.parse(argc, argv);
    if (detect->parsed()) return cmd_detect(cfg);
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (validate->parsed()) return cmd_validate(cfg);
    if (synth->parsed()) return cmd_synth(cfg);
    if (rep->parsed()) return cmd_report(cfg);
    return 4;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 4;
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const format_error& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 3;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 4;
  } catch (const consistency_error& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
