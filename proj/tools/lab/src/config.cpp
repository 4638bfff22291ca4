#include "lab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "slag/error.hpp"

namespace lab {
namespace {

using slag::Error;
using slag::ErrorCode;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_number(std::string_view tok, const std::string& key) {
  double v = 0.0;
  const std::string t(tok);
  std::size_t used = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    fail("key '" + key + "': '" + t + "' is not a number");
  }
  if (used != t.size()) fail("key '" + key + "': '" + t + "' is not a number");
  return v;
}

// strips a trailing comment that is not inside a string
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

Value parse_value(std::string_view raw, const std::string& key) {
  Value v;
  const auto s = trim(raw);
  if (s.empty()) fail("key '" + key + "' has no value");
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"') fail("key '" + key + "': unterminated string");
    v.type = Value::Type::String;
    v.text = std::string(s.substr(1, s.size() - 2));
  } else if (s == "true" || s == "false") {
    v.type = Value::Type::Bool;
    v.flag = s == "true";
  } else if (s.front() == '[') {
    if (s.back() != ']') fail("key '" + key + "': unterminated list");
    v.type = Value::Type::List;
    auto body = s.substr(1, s.size() - 2);
    while (!trim(body).empty()) {
      const auto comma = body.find(',');
      const auto item = trim(body.substr(0, comma));
      if (!item.empty()) v.list.push_back(to_number(item, key));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
  } else {
    v.type = Value::Type::Number;
    v.text = std::string(s);
    v.number = to_number(s, key);
  }
  return v;
}

Config parse_toml(std::string_view text) {
  Config cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(strip_comment(line));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) fail("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key(trim(body.substr(0, eq)));
    if (key.empty()) fail("line " + std::to_string(lineno) + ": empty key");
    Value v = parse_value(body.substr(eq + 1), key);
    if (key == "kind") {
      if (v.type != Value::Type::String) fail("kind must be a string");
      cfg.kind = v.text;
      continue;
    }
    if (cfg.values.count(key)) fail("duplicate key '" + key + "'");
    cfg.values.emplace(key, std::move(v));
  }
  return cfg;
}

Config parse_json(std::string_view text) {
  Config cfg;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("JSON config: ") + e.what());
  }
  if (!doc.is_object()) fail("JSON config must be an object");
  for (const auto& [key, item] : doc.items()) {
    Value v;
    if (item.is_string()) {
      v.type = Value::Type::String;
      v.text = item.get<std::string>();
    } else if (item.is_boolean()) {
      v.type = Value::Type::Bool;
      v.flag = item.get<bool>();
    } else if (item.is_number()) {
      v.type = Value::Type::Number;
      v.number = item.get<double>();
      v.text = item.dump();
    } else if (item.is_array()) {
      v.type = Value::Type::List;
      for (const auto& x : item) {
        if (!x.is_number()) fail("key '" + key + "': lists hold numbers only");
        v.list.push_back(x.get<double>());
      }
    } else {
      fail("key '" + key + "': unsupported value");
    }
    if (key == "kind") {
      if (v.type != Value::Type::String) fail("kind must be a string");
      cfg.kind = v.text;
    } else {
      cfg.values.emplace(key, std::move(v));
    }
  }
  return cfg;
}

}  // namespace

Config parse_config(std::string_view text) {
  const auto body = trim(text);
  if (!body.empty() && body.front() == '{') return parse_json(body);
  return parse_toml(text);
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

Params::Params(const Config& config, const std::vector<std::string>& allowed) : config_(config) {
  for (const auto& [key, value] : config.values) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail("unknown key '" + key + "' for kind '" + config.kind + "'");
    }
    const bool tol = key.size() >= 4 && key.compare(key.size() - 4, 4, "_tol") == 0;
    if (tol && !(value.type == Value::Type::Number && value.number > 0.0)) {
      fail("tolerance '" + key + "' must be a positive number");
    }
  }
}

const Value* Params::find(const std::string& key) const {
  const auto it = config_.values.find(key);
  return it == config_.values.end() ? nullptr : &it->second;
}

bool Params::has(const std::string& key) const { return find(key) != nullptr; }

double Params::number(const std::string& key, double fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  if (v->type != Value::Type::Number) fail("key '" + key + "' must be a number");
  return v->number;
}

long long Params::integer(const std::string& key, long long fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  long long out = 0;
  const auto& t = v->text;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
  if (v->type != Value::Type::Number || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    fail("key '" + key + "' must be an integer");
  }
  return out;
}

std::string Params::string(const std::string& key, const std::string& fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  if (v->type != Value::Type::String) fail("key '" + key + "' must be a string");
  return v->text;
}

bool Params::flag(const std::string& key, bool fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  if (v->type != Value::Type::Bool) fail("key '" + key + "' must be true or false");
  return v->flag;
}

std::vector<double> Params::list(const std::string& key, const std::vector<double>& fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  if (v->type != Value::Type::List) fail("key '" + key + "' must be a list of numbers");
  return v->list;
}

double Params::positive(const std::string& key, double fallback) const {
  const double v = number(key, fallback);
  if (!(v > 0.0)) fail("key '" + key + "' must be positive");
  return v;
}

std::optional<std::uint64_t> Params::seed(const std::string& key) const {
  const Value* v = find(key);
  if (!v) return std::nullopt;
  if (v->type != Value::Type::Number) fail("key '" + key + "' must be an unsigned integer");
  return parse_seed(v->text);
}

std::uint64_t parse_seed(const std::string& token) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    fail("seed must be an unsigned 64-bit integer, got '" + token + "'");
  }
  return out;
}

}  // namespace lab
