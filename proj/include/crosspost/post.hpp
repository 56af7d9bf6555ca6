#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crosspost {

// Platform order FB < GP < TW is fixed; iteration and tie-breaking rely on it.
enum class Platform : std::uint8_t { FB = 0, GP = 1, TW = 2 };

inline constexpr std::array<Platform, 3> kPlatforms = {Platform::FB, Platform::GP,
                                                       Platform::TW};

std::string_view platform_name(Platform p);
std::optional<Platform> platform_from_string(std::string_view s);

enum class ContentType : std::uint8_t { Text, Link, Photo, Video, Unknown };

std::string_view content_type_name(ContentType t);
ContentType content_type_from_string(std::string_view s);

struct Engagement {
  std::int64_t likes = 0;
  std::optional<std::int64_t> comments;  // absent for TW (collector limitation)
  std::int64_t shares = 0;

  bool operator==(const Engagement&) const = default;
};

struct Post {
  Platform platform = Platform::FB;
  std::string author_id;
  std::string post_id;  // unique within (platform)
  std::int64_t timestamp = 0;  // seconds since epoch, UTC
  std::string text;
  ContentType content_type = ContentType::Unknown;
  Engagement engagement;
  std::vector<std::string> urls;  // extracted from text at ingest

  bool operator==(const Post&) const = default;
};

}  // namespace crosspost
