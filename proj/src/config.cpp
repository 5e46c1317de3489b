#include "acn/config.hpp"

#include <cctype>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace acn {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (*first == '+') ++first;
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) {
    const std::string t = trim(cur);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

}  // namespace

Config Config::parse(std::istream& is) {
  Config c;
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line) + ": empty key");
    const bool ok = std::all_of(key.begin(), key.end(), [](char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '_' || ch == '-';
    });
    if (!ok) throw ConfigError("line " + std::to_string(line) + ": malformed key '" + key + "'");
    if (c.entries_.count(key))
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    c.entries_[key] = {value, line, false};
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  return parse(f);
}

void Config::set(const std::string& key, const std::string& value) {
  entries_[key] = {value, 0, false};
}

const Config::Entry& Config::get(const std::string& key) const {
  const Entry& e = entries_.at(key);
  e.used = true;
  return e;
}

void Config::fail(const std::string& key, const std::string& msg) const {
  const int line = line_of(key);
  std::string where = line > 0 ? "line " + std::to_string(line) + ": " : "";
  throw ConfigError(where + "key '" + key + "': " + msg);
}

int Config::line_of(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

std::string Config::str(const std::string& key, const std::string& def) const {
  return has(key) ? get(key).value : def;
}

double Config::num(const std::string& key, double def) const {
  if (!has(key)) return def;
  double v = 0.0;
  if (!parse_double(get(key).value, v)) fail(key, "expected a number");
  return v;
}

long Config::integer(const std::string& key, long def) const {
  if (!has(key)) return def;
  const std::string t = trim(get(key).value);
  long v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) fail(key, "expected an integer");
  return v;
}

bool Config::flag(const std::string& key, bool def) const {
  if (!has(key)) return def;
  const std::string v = trim(get(key).value);
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  fail(key, "expected true or false");
}

std::vector<double> Config::nums(const std::string& key) const {
  std::vector<double> out;
  if (!has(key)) return out;
  for (const std::string& w : split(get(key).value)) {
    double v = 0.0;
    if (!parse_double(w, v)) fail(key, "expected a comma separated list of numbers");
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> Config::words(const std::string& key) const {
  if (!has(key)) return {};
  return split(get(key).value);
}

Vec2 Config::vec2(const std::string& key) const {
  const std::vector<double> v = nums(key);
  if (v.size() != 2) fail(key, "expected two numbers 'x, y'");
  return {v[0], v[1]};
}

std::vector<std::string> Config::groups(const std::string& prefix) const {
  std::set<std::string> ids;
  const std::string p = prefix + ".";
  for (const auto& [k, e] : entries_) {
    if (k.rfind(p, 0) != 0) continue;
    const auto rest = k.substr(p.size());
    const auto dot = rest.find('.');
    if (dot != std::string::npos) ids.insert(rest.substr(0, dot));
  }
  return {ids.begin(), ids.end()};
}

std::vector<std::string> Config::unused() const {
  std::vector<std::string> out;
  for (const auto& [k, e] : entries_)
    if (!e.used) out.push_back(k);
  return out;
}

}  // namespace acn
