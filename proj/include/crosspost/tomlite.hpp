#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace crosspost::tomlite {

// Small TOML subset used for config files: [section] headers (flattened into
// dotted keys), `key = value` lines, `#` comments. Values: integers, floats,
// booleans, double-quoted strings, and flat arrays of numbers.
class Table {
 public:
  using Value = std::variant<std::int64_t, double, bool, std::string, std::vector<double>>;

  static Table parse(std::string_view text, std::string_view source_name);
  static Table parse_file(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.contains(key); }
  const std::map<std::string, Value>& values() const { return values_; }

  // Typed getters throw config_error on a type mismatch, nullopt when absent.
  std::optional<std::int64_t> integer(const std::string& key) const;
  std::optional<double> number(const std::string& key) const;  // accepts ints
  std::optional<bool> boolean(const std::string& key) const;
  std::optional<std::string> string(const std::string& key) const;
  std::optional<std::vector<double>> number_array(const std::string& key) const;

 private:
  std::map<std::string, Value> values_;
};

}  // namespace crosspost::tomlite
