#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "hyperspec/hypergraph.hpp"

namespace hyperspec {

// HGR v1 text format:
//   line 1: "r n m"
//   then m lines, each r ascending 0-based vertex indices separated by a
//   single space. LF line endings, no comments, no trailing blank lines.

std::string to_hgr(const Hypergraph& h);
void write_hgr(std::ostream& os, const Hypergraph& h);
void save_hgr(const std::filesystem::path& path, const Hypergraph& h);

/// Strict parser. Throws InputError naming the offending line.
Hypergraph parse_hgr(std::string_view text);
Hypergraph load_hgr(const std::filesystem::path& path);

}  // namespace hyperspec
