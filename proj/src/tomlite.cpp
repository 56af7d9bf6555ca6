#include "crosspost/tomlite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "crosspost/errors.hpp"

namespace crosspost::tomlite {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Strips a trailing comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

double parse_numeric(std::string_view s, std::string_view where, bool* is_int,
                     std::int64_t* as_int) {
  std::string buf(s);
  std::size_t used = 0;
  *is_int = s.find('.') == std::string_view::npos && s.find('e') == std::string_view::npos &&
            s.find('E') == std::string_view::npos;
  try {
    if (*is_int) {
      *as_int = std::stoll(buf, &used);
      if (used == buf.size()) return static_cast<double>(*as_int);
    } else {
      double v = std::stod(buf, &used);
      if (used == buf.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw config_error(std::string(where) + ": invalid number `" + buf + "`");
}

Table::Value parse_value(std::string_view raw, std::string_view where) {
  raw = trim(raw);
  if (raw.empty()) throw config_error(std::string(where) + ": missing value");
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') {
      throw config_error(std::string(where) + ": unterminated string");
    }
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
      if (raw[i] == '\\' && i + 2 < raw.size()) {
        ++i;
        switch (raw[i]) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          default:
            throw config_error(std::string(where) + ": unsupported escape");
        }
      } else {
        out.push_back(raw[i]);
      }
    }
    return out;
  }
  if (raw == "true") return true;
  if (raw == "false") return false;
  if (raw.front() == '[') {
    if (raw.back() != ']') throw config_error(std::string(where) + ": unterminated array");
    std::vector<double> items;
    std::string_view body = trim(raw.substr(1, raw.size() - 2));
    while (!body.empty()) {
      std::size_t comma = body.find(',');
      std::string_view item = trim(comma == std::string_view::npos ? body : body.substr(0, comma));
      if (!item.empty()) {
        bool is_int = false;
        std::int64_t iv = 0;
        items.push_back(parse_numeric(item, where, &is_int, &iv));
      }
      if (comma == std::string_view::npos) break;
      body = trim(body.substr(comma + 1));
    }
    return items;
  }
  bool is_int = false;
  std::int64_t iv = 0;
  double dv = parse_numeric(raw, where, &is_int, &iv);
  if (is_int) return iv;
  return dv;
}

}  // namespace

Table Table::parse(std::string_view text, std::string_view source_name) {
  Table t;
  std::string prefix;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    std::string where = std::string(source_name) + ":" + std::to_string(line_no);
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw config_error(where + ": malformed section header");
      }
      prefix = std::string(trim(line.substr(1, line.size() - 2))) + ".";
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw config_error(where + ": expected `key = value`");
    }
    std::string key = prefix + std::string(trim(line.substr(0, eq)));
    if (key.empty() || key.back() == '.') throw config_error(where + ": empty key");
    if (t.values_.contains(key)) throw config_error(where + ": duplicate key `" + key + "`");
    t.values_.emplace(std::move(key), parse_value(line.substr(eq + 1), where));
  }
  return t;
}

Table Table::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

std::optional<std::int64_t> Table::integer(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  if (const auto* v = std::get_if<std::int64_t>(&it->second)) return *v;
  throw config_error("config key `" + key + "` must be an integer");
}

std::optional<double> Table::number(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  if (const auto* v = std::get_if<double>(&it->second)) return *v;
  if (const auto* v = std::get_if<std::int64_t>(&it->second)) return static_cast<double>(*v);
  throw config_error("config key `" + key + "` must be a number");
}

std::optional<bool> Table::boolean(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  if (const auto* v = std::get_if<bool>(&it->second)) return *v;
  throw config_error("config key `" + key + "` must be a boolean");
}

std::optional<std::string> Table::string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  if (const auto* v = std::get_if<std::string>(&it->second)) return *v;
  throw config_error("config key `" + key + "` must be a string");
}

std::optional<std::vector<double>> Table::number_array(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  if (const auto* v = std::get_if<std::vector<double>>(&it->second)) return *v;
  throw config_error("config key `" + key + "` must be an array of numbers");
}

}  // namespace crosspost::tomlite
