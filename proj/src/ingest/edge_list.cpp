#include "cmab/ingest/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "cmab/core/errors.hpp"
#include "cmab/core/types.hpp"

namespace cmab {

namespace {

std::int64_t parse_node(const std::string& token, std::size_t line_no) {
    std::int64_t v = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc() || ptr != end || v < 0) {
        throw IngestError("line " + std::to_string(line_no) + ": invalid node id '" + token + "'");
    }
    return v;
}

}  // namespace

EdgeListGraph load_edge_graph(std::istream& in, bool undirected) {
    EdgeListGraph out;
    std::set<std::pair<std::int64_t, std::int64_t>> arcs;
    std::set<std::int64_t> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream tokens(line);
        std::vector<std::string> parts;
        for (std::string t; tokens >> t;) parts.push_back(t);
        if (parts.empty()) continue;
        if (parts.size() != 2) {
            throw IngestError("line " + std::to_string(line_no) + ": expected 'src dst', got " +
                              std::to_string(parts.size()) + " fields");
        }
        const auto a = parse_node(parts[0], line_no);
        const auto b = parse_node(parts[1], line_no);
        ids.insert(a);
        ids.insert(b);
        if (a == b) {
            ++out.self_loops_dropped;
            continue;
        }
        if (!arcs.emplace(a, b).second) ++out.duplicates_collapsed;
        if (undirected && !arcs.emplace(b, a).second) ++out.duplicates_collapsed;
    }

    out.original_ids.assign(ids.begin(), ids.end());
    std::map<std::int64_t, std::size_t> dense;
    for (std::size_t i = 0; i < out.original_ids.size(); ++i) dense[out.original_ids[i]] = i;

    std::vector<std::size_t> outdeg(out.original_ids.size(), 0);
    for (const auto& [a, b] : arcs) ++outdeg[dense[a]];
    std::vector<InfluenceEdge> edges;
    edges.reserve(arcs.size());
    // std::set order on original ids equals (src, dst) order on dense ids
    for (const auto& [a, b] : arcs) {
        const std::size_t s = dense[a];
        edges.push_back({s, dense[b], 1.0 / static_cast<double>(outdeg[s])});
    }
    out.graph = InfluenceGraph(out.original_ids.size(), std::move(edges));
    return out;
}

EdgeListGraph load_edge_graph(const std::filesystem::path& path, bool undirected) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open edge list " + path.string());
    return load_edge_graph(in, undirected);
}

std::string synthetic_edge_list(std::size_t nodes, std::size_t edges, std::uint64_t seed) {
    if (nodes < 2 || edges > nodes * (nodes - 1)) {
        throw std::invalid_argument("synthetic graph: too many edges for the node count");
    }
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, nodes - 1);
    std::set<std::pair<std::size_t, std::size_t>> arcs;
    std::ostringstream text;
    text << "# synthetic directed graph: " << nodes << " nodes, " << edges << " edges, seed " << seed << "\n";
    while (arcs.size() < edges) {
        const std::size_t a = pick(rng);
        const std::size_t b = pick(rng);
        if (a == b || !arcs.emplace(a, b).second) continue;
        text << a << ' ' << b << '\n';
    }
    return text.str();
}

}  // namespace cmab
