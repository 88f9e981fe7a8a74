#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <vector>

#include "cmab/environments/influence.hpp"

namespace cmab {

struct EdgeListGraph {
    InfluenceGraph graph;
    std::vector<std::int64_t> original_ids;  // dense node id -> id in the file
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_collapsed = 0;
};

/// Parses whitespace-separated "src dst" lines ('#' starts a comment),
/// expands undirected input to both directions, drops self-loops, collapses
/// duplicates, relabels nodes densely in ascending id order and assigns each
/// edge (i, j) probability 1 / outdegree(i). Edges are ordered by (src, dst).
/// Throws IngestError with the line number on malformed input.
EdgeListGraph load_edge_graph(std::istream& in, bool undirected);
EdgeListGraph load_edge_graph(const std::filesystem::path& path, bool undirected);

/// Random directed graph with `edges` distinct non-loop edges drawn
/// uniformly, written in edge-list form so it goes through the same loader.
std::string synthetic_edge_list(std::size_t nodes, std::size_t edges, std::uint64_t seed);

}  // namespace cmab
