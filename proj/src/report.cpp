#include "hyperspec/report.hpp"

#include <charconv>
#include <cmath>

#include "hyperspec/error.hpp"

namespace hyperspec {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw InputError("double formatting failed");
  return {buf, ptr};
}

void Report::add(std::string_view key, std::string_view value) {
  entries_.emplace_back(std::string(key), std::string(value));
}

void Report::add(std::string_view key, double value) { add(key, format_double(value)); }

void Report::add(std::string_view key, bool value) {
  add(key, std::string_view(value ? "true" : "false"));
}

void Report::add(std::string_view key, std::span<const double> values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ' ';
    s += format_double(values[i]);
  }
  add(key, s);
}

void Report::add(std::string_view key, std::span<const std::size_t> values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ' ';
    s += std::to_string(values[i]);
  }
  add(key, s);
}

void Report::append(const Report& other, std::string_view prefix) {
  for (const auto& [k, v] : other.entries_) {
    if (prefix.empty()) {
      entries_.emplace_back(k, v);
    } else {
      entries_.emplace_back(std::string(prefix) + "." + k, v);
    }
  }
}

std::string Report::get(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return {};
}

std::string Report::str() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

Report parse_report(std::string_view text) {
  Report r;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.empty()) continue;
    const std::size_t eq = line.find(" = ");
    if (eq == std::string_view::npos) {
      throw InputError("report line " + std::to_string(line_no) + " lacks ' = '");
    }
    r.add(line.substr(0, eq), line.substr(eq + 3));
  }
  return r;
}

}  // namespace hyperspec
