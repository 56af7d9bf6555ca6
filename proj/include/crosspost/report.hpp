#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "crosspost/analytics.hpp"
#include "crosspost/corpus.hpp"
#include "crosspost/pairing.hpp"

namespace crosspost::report {

// FNV-1a over the canonical corpus serialization; ties a matchset to the
// exact restricted corpus it was computed from.
std::string corpus_digest(const corpus::Corpus& corpus);

// Human-readable detect summary: per-platform dataset shape, group count and
// the pattern/origin census.
std::string detect_summary(const corpus::Corpus& corpus, const pairing::MatchSet& ms);

void write_matchset_meta(const std::filesystem::path& matchset_path,
                         const corpus::Corpus& corpus, double threshold, int window_days);

// Returns the digest recorded next to the matchset, empty when absent.
std::string read_matchset_meta_digest(const std::filesystem::path& matchset_path);

struct AnalyzeOptions {
  bool strict_urls = false;
  double automatic_threshold_s = 10.0;
  double automatic_share = 0.5;
  int k = 3;
};

struct CsvFile {
  std::string name;
  std::size_t rows = 0;  // data rows, header excluded
};

struct AnalyzeResult {
  std::vector<CsvFile> files;  // everything written, manifest last
  std::string summary;
};

// Writes the full CSV bundle (ecdf_*, patterns, engagement, preference,
// interval_groups, content_types, url_sites) plus manifest.csv.
AnalyzeResult write_analysis(const corpus::Corpus& corpus, const pairing::MatchSet& ms,
                             const analytics::UrlResolver& resolver,
                             const std::filesystem::path& out_dir,
                             const AnalyzeOptions& options = {});

}  // namespace crosspost::report
