#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "cyclepack/cycles.hpp"
#include "cyclepack/graph.hpp"

namespace cyclepack {

// Graph text format: first line "n m" or "n m ell", then one "u v" pair per
// line, 0-indexed. Lines starting with '#' are comments and may appear
// anywhere; writers put trailing provenance comments there.
struct GraphFile {
    Graph graph;
    std::optional<int> ell;
};

void write_graph(std::ostream& out, const Graph& g, std::optional<int> ell = std::nullopt,
                 const std::string& trailing_comment = {});
GraphFile read_graph(std::istream& in);

GraphFile read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const Graph& g,
                      std::optional<int> ell = std::nullopt,
                      const std::string& trailing_comment = {});

// Packing format: one cycle per line as space-separated vertex ids.
void write_packing(std::ostream& out, const CyclePacking& p,
                   const std::string& trailing_comment = {});
CyclePacking read_packing(std::istream& in, int ell);

// Write-temp-rename; the final file appears atomically.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace cyclepack
