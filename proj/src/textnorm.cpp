#include "crosspost/textnorm.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/ustring.h>

#include <cstring>

namespace crosspost::textnorm {

namespace {

struct UrlSpan {
  std::size_t begin;
  std::size_t end;  // one past the last byte
};

bool is_ascii_space_or_control(unsigned char c) { return c <= 0x20 || c == 0x7f; }

constexpr std::string_view kHttp = "http://";
constexpr std::string_view kHttps = "https://";
constexpr std::string_view kFullwidthParen = "\xef\xbc\x89";  // U+FF09

bool is_strippable_tail(std::string_view url, std::size_t* len) {
  if (url.empty()) return false;
  switch (url.back()) {
    case '.':
    case ',':
    case ';':
    case ':':
    case '!':
    case '?':
    case ')':
    case ']':
    case '}':
      *len = 1;
      return true;
    default:
      break;
  }
  if (url.size() >= 3 && url.substr(url.size() - 3) == kFullwidthParen) {
    *len = 3;
    return true;
  }
  return false;
}

std::vector<UrlSpan> find_url_spans(std::string_view text) {
  std::vector<UrlSpan> spans;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t scheme_len = 0;
    if (text.compare(i, kHttps.size(), kHttps) == 0) {
      scheme_len = kHttps.size();
    } else if (text.compare(i, kHttp.size(), kHttp) == 0) {
      scheme_len = kHttp.size();
    } else {
      ++i;
      continue;
    }
    std::size_t j = i + scheme_len;
    while (j < text.size() && !is_ascii_space_or_control(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    std::string_view candidate = text.substr(i, j - i);
    std::size_t tail = 0;
    while (is_strippable_tail(candidate, &tail)) {
      candidate.remove_suffix(tail);
    }
    if (candidate.size() > scheme_len) {
      spans.push_back({i, i + candidate.size()});
      i += candidate.size();
    } else {
      i += scheme_len;
    }
  }
  return spans;
}

// Decode UTF-8 with U+FFFD substitution, counting substitutions.
icu::UnicodeString decode_utf8(std::string_view bytes, std::size_t* replacements) {
  if (bytes.empty()) return {};
  icu::UnicodeString out;
  std::int32_t cap = static_cast<std::int32_t>(bytes.size()) + 1;
  UChar* buf = out.getBuffer(cap);
  std::int32_t len = 0;
  std::int32_t subs = 0;
  UErrorCode ec = U_ZERO_ERROR;
  u_strFromUTF8WithSub(buf, cap, &len, bytes.data(), static_cast<std::int32_t>(bytes.size()),
                       0xFFFD, &subs, &ec);
  out.releaseBuffer(len);
  if (U_FAILURE(ec)) {
    out.remove();
    return out;
  }
  *replacements += static_cast<std::size_t>(subs);
  return out;
}

const icu::Normalizer2& nfkc_casefold() {
  UErrorCode ec = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFKCCasefoldInstance(ec);
  if (U_FAILURE(ec) || n == nullptr) {
    // ICU data is linked statically into libicudata; this cannot fail in practice.
    std::abort();
  }
  return *n;
}

bool is_punct(UChar32 c) {
  switch (u_charType(c)) {
    case U_DASH_PUNCTUATION:
    case U_START_PUNCTUATION:
    case U_END_PUNCTUATION:
    case U_CONNECTOR_PUNCTUATION:
    case U_OTHER_PUNCTUATION:
    case U_INITIAL_PUNCTUATION:
    case U_FINAL_PUNCTUATION:
      return true;
    default:
      return false;
  }
}

bool is_dropped_control(UChar32 c) {
  std::int8_t t = u_charType(c);
  return t == U_CONTROL_CHAR || t == U_FORMAT_CHAR;
}

void append_utf8(std::string* out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  std::int32_t n = 0;
  UBool err = false;
  U8_APPEND(reinterpret_cast<std::uint8_t*>(buf), n, U8_MAX_LENGTH, c, err);
  if (!err) out->append(buf, static_cast<std::size_t>(n));
}

// Strip edge punctuation; hashtags and mentions keep their leading sigil.
std::string finish_token(const std::vector<UChar32>& cps) {
  std::size_t b = 0;
  std::size_t e = cps.size();
  while (b < e && is_punct(cps[b]) && cps[b] != U'#' && cps[b] != U'@') ++b;
  while (e > b && is_punct(cps[e - 1])) --e;
  std::string token;
  for (std::size_t i = b; i < e; ++i) append_utf8(&token, cps[i]);
  return token;
}

void normalize_segment(std::string_view segment, NormalizedText* out) {
  if (segment.empty()) return;
  icu::UnicodeString us = decode_utf8(segment, &out->replacements);
  UErrorCode ec = U_ZERO_ERROR;
  icu::UnicodeString folded = nfkc_casefold().normalize(us, ec);
  if (U_FAILURE(ec)) return;

  std::vector<UChar32> current;
  auto flush = [&] {
    if (current.empty()) return;
    std::string token = finish_token(current);
    current.clear();
    if (!token.empty()) out->tokens.push_back(std::move(token));
  };
  for (std::int32_t i = 0; i < folded.length();) {
    UChar32 c = folded.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      flush();
    } else if (!is_dropped_control(c)) {
      current.push_back(c);
    }
  }
  flush();
}

}  // namespace

std::vector<std::string> extract_urls(std::string_view text) {
  std::vector<std::string> urls;
  for (const UrlSpan& s : find_url_spans(text)) {
    urls.emplace_back(text.substr(s.begin, s.end - s.begin));
  }
  return urls;
}

NormalizedText normalize(std::string_view text) {
  NormalizedText out;
  std::size_t pos = 0;
  for (const UrlSpan& s : find_url_spans(text)) {
    normalize_segment(text.substr(pos, s.begin - pos), &out);
    std::string url(text.substr(s.begin, s.end - s.begin));
    out.urls.push_back(url);
    out.tokens.push_back(std::move(url));
    pos = s.end;
  }
  normalize_segment(text.substr(pos), &out);

  out.token_counts.reserve(out.tokens.size());
  std::size_t total = 0;
  for (const std::string& t : out.tokens) {
    ++out.token_counts[t];
    total += t.size() + 1;
  }
  out.canonical.reserve(total);
  for (std::size_t i = 0; i < out.tokens.size(); ++i) {
    if (i > 0) out.canonical.push_back(' ');
    out.canonical.append(out.tokens[i]);
  }
  return out;
}

}  // namespace crosspost::textnorm
