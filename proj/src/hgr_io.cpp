#include "hyperspec/hgr_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "hyperspec/error.hpp"

namespace hyperspec {

std::string to_hgr(const Hypergraph& h) {
  std::string out;
  out.reserve(16 + h.flat().size() * 4);
  out += std::to_string(h.uniformity()) + ' ' + std::to_string(h.order()) + ' ' +
         std::to_string(h.edge_count()) + '\n';
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (j > 0) out += ' ';
      out += std::to_string(e[j]);
    }
    out += '\n';
  }
  return out;
}

void write_hgr(std::ostream& os, const Hypergraph& h) { os << to_hgr(h); }

void save_hgr(const std::filesystem::path& path, const Hypergraph& h) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot open " + path.string() + " for writing");
  os << to_hgr(h);
  if (!os) throw InputError("write failed: " + path.string());
}

namespace {

std::vector<std::uint64_t> parse_fields(std::string_view line, std::size_t line_no) {
  std::vector<std::uint64_t> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = std::min(line.find(' ', pos), line.size());
    const std::string_view tok = line.substr(pos, end - pos);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw InputError("HGR line " + std::to_string(line_no) + ": bad field '" +
                       std::string(tok) + "'");
    }
    fields.push_back(value);
    if (end == line.size()) break;
    pos = end + 1;
  }
  return fields;
}

}  // namespace

Hypergraph parse_hgr(std::string_view text) {
  if (text.find('\r') != std::string_view::npos) throw InputError("HGR: CR characters are not allowed");
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  if (lines.empty()) throw InputError("HGR: empty input");
  const auto header = parse_fields(lines[0], 1);
  if (header.size() != 3) throw InputError("HGR line 1: expected 'r n m'");
  const std::size_t r = header[0], n = header[1], m = header[2];
  if (r < 2) throw InputError("HGR line 1: uniformity must be at least 2");
  if (lines.size() != m + 1) {
    throw InputError("HGR: header declares " + std::to_string(m) + " edges but found " +
                     std::to_string(lines.size() - 1));
  }
  std::vector<Vertex> flat;
  flat.reserve(m * r);
  for (std::size_t i = 1; i <= m; ++i) {
    const auto f = parse_fields(lines[i], i + 1);
    if (f.size() != r) {
      throw InputError("HGR line " + std::to_string(i + 1) + ": expected " + std::to_string(r) +
                       " vertices");
    }
    for (std::size_t j = 0; j < r; ++j) {
      if (f[j] >= n) throw InputError("HGR line " + std::to_string(i + 1) + ": vertex out of range");
      if (j > 0 && f[j] <= f[j - 1]) {
        throw InputError("HGR line " + std::to_string(i + 1) + ": vertices must be strictly ascending");
      }
      flat.push_back(static_cast<Vertex>(f[j]));
    }
  }
  Hypergraph h(n, r, std::move(flat));
  if (h.edge_count() != m) throw InputError("HGR: duplicate edges");
  return h;
}

Hypergraph load_hgr(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_hgr(ss.str());
}

}  // namespace hyperspec
