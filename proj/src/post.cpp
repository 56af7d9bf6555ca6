#include "crosspost/post.hpp"

namespace crosspost {

std::string_view platform_name(Platform p) {
  switch (p) {
    case Platform::FB: return "fb";
    case Platform::GP: return "gp";
    case Platform::TW: return "tw";
  }
  return "fb";
}

std::optional<Platform> platform_from_string(std::string_view s) {
  if (s == "fb") return Platform::FB;
  if (s == "gp") return Platform::GP;
  if (s == "tw") return Platform::TW;
  return std::nullopt;
}

std::string_view content_type_name(ContentType t) {
  switch (t) {
    case ContentType::Text: return "status";
    case ContentType::Link: return "link";
    case ContentType::Photo: return "photo";
    case ContentType::Video: return "video";
    case ContentType::Unknown: return "unknown";
  }
  return "unknown";
}

ContentType content_type_from_string(std::string_view s) {
  if (s == "status") return ContentType::Text;
  if (s == "link") return ContentType::Link;
  if (s == "photo") return ContentType::Photo;
  if (s == "video") return ContentType::Video;
  return ContentType::Unknown;
}

}  // namespace crosspost
