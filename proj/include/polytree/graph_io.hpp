#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "polytree/graph.hpp"
#include "polytree/sem.hpp"

namespace polytree {

/*
 * Edge-list text format:
 *
 *   # comment
 *   p=4
 *   0 -> 2
 *   1 -- 3
 *
 * SEM files add `i -> j : beta=<value>` on every edge and one
 * `node j : omega=<value>` line per node. Values are written with 17
 * significant digits. Edges are written in ascending order, directed first.
 */

std::string format_cpdag(const Cpdag& c);
std::string format_dag(const Dag& g);
std::string format_sem(const LinearSem& m);

// All throw ParseError with a line number on malformed input.
Cpdag parse_cpdag(std::string_view text);
Dag parse_dag(std::string_view text);
LinearSem parse_sem(std::string_view text);

// Throw IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace polytree
