#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "acn/geometry.hpp"

namespace acn {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Flat `key = value` file. `#` starts a comment; keys are dotted names.
/// Every accessor marks its key as used, so `unused()` lists the keys no
/// consumer recognised.
class Config {
 public:
  static Config parse(std::istream& is);
  static Config load(const std::string& path);

  [[nodiscard]] bool has(const std::string& key) const { return entries_.count(key) != 0; }
  void set(const std::string& key, const std::string& value);

  std::string str(const std::string& key, const std::string& def) const;
  double num(const std::string& key, double def) const;
  long integer(const std::string& key, long def) const;
  bool flag(const std::string& key, bool def) const;
  std::vector<double> nums(const std::string& key) const;
  std::vector<std::string> words(const std::string& key) const;
  Vec2 vec2(const std::string& key) const;

  /// Keys of the form prefix.<k>.* grouped by <k>, in sorted order.
  [[nodiscard]] std::vector<std::string> groups(const std::string& prefix) const;
  [[nodiscard]] std::vector<std::string> unused() const;
  [[nodiscard]] int line_of(const std::string& key) const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
  };
  std::map<std::string, Entry> entries_;
  const Entry& get(const std::string& key) const;
  [[noreturn]] void fail(const std::string& key, const std::string& msg) const;
};

}  // namespace acn
