#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hyperspec {

/// Shortest decimal text that round-trips to the same double; "inf"/"nan".
std::string format_double(double v);

/// Ordered `key = value` report, one pair per line.
class Report {
 public:
  void add(std::string_view key, std::string_view value);
  void add(std::string_view key, const char* value) { add(key, std::string_view(value)); }
  void add(std::string_view key, const std::string& value) { add(key, std::string_view(value)); }
  void add(std::string_view key, double value);
  void add(std::string_view key, bool value);
  template <std::integral T>
    requires(!std::same_as<T, bool>)
  void add(std::string_view key, T value) {
    add(key, std::string_view(std::to_string(value)));
  }
  void add(std::string_view key, std::span<const double> values);
  void add(std::string_view key, std::span<const std::size_t> values);

  /// Appends another report's entries with `prefix.` prepended to each key.
  void append(const Report& other, std::string_view prefix = {});

  std::span<const std::pair<std::string, std::string>> entries() const { return entries_; }
  /// Value for `key`, or empty string when absent.
  std::string get(std::string_view key) const;
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Parses text produced by Report::str(). Throws InputError on malformed lines.
Report parse_report(std::string_view text);

}  // namespace hyperspec
