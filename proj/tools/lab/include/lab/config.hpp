#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lab {

struct Value {
  enum class Type { Number, String, Bool, List };
  Type type = Type::Number;
  double number = 0.0;
  std::string text;  // string payload, or the literal token of a number
  bool flag = false;
  std::vector<double> list;
};

/// One experiment: `kind` plus flat key/value parameters.
struct Config {
  std::string kind;
  std::map<std::string, Value> values;
};

/// TOML-style `key = value` lines (numbers, "strings", true/false,
/// [number lists], # comments) or a flat JSON object.  A document whose
/// first non-blank character is '{' is read as JSON.
Config parse_config(std::string_view text);
Config load_config(const std::filesystem::path& path);

/// Typed, checked access to a config.  Construction rejects keys outside
/// `allowed`; every key ending in "_tol" must be positive.
class Params {
 public:
  Params(const Config& config, const std::vector<std::string>& allowed);

  bool has(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  long long integer(const std::string& key, long long fallback) const;
  std::string string(const std::string& key, const std::string& fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<double> list(const std::string& key, const std::vector<double>& fallback) const;
  /// Must be > 0.
  double positive(const std::string& key, double fallback) const;
  /// Unsigned 64-bit value read from the literal token.
  std::optional<std::uint64_t> seed(const std::string& key) const;

 private:
  const Value* find(const std::string& key) const;
  const Config& config_;
};

std::uint64_t parse_seed(const std::string& token);

}  // namespace lab
