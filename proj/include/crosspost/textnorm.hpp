#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace crosspost::textnorm {

struct NormalizedText {
  std::string canonical;             // tokens joined by single spaces
  std::vector<std::string> tokens;   // in text order
  std::unordered_map<std::string, int> token_counts;
  std::vector<std::string> urls;     // verbatim, in text order, duplicates kept
  std::size_t replacements = 0;      // invalid UTF-8 sequences replaced with U+FFFD
};

// Maximal "http://" / "https://" substrings up to whitespace, with trailing
// sentence punctuation stripped. Duplicates retained, order preserved.
std::vector<std::string> extract_urls(std::string_view text);

// Lowercased, NFKC-casefolded, whitespace-collapsed token form. URLs are kept
// verbatim as single tokens; zero-width and control characters are dropped;
// punctuation is stripped from token edges except leading '#' and '@'.
NormalizedText normalize(std::string_view text);

}  // namespace crosspost::textnorm
