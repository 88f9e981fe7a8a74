#include "cmab/ingest/serialize.hpp"

#include <cstdio>

#include "cmab/core/errors.hpp"

namespace cmab {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

namespace {

void append_real(std::string& out, double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
}

}  // namespace

std::string fingerprint(const PmcInstance& inst) {
    std::string text = "pmc " + std::to_string(inst.items) + ' ' + std::to_string(inst.users) + ' ' +
                       std::to_string(inst.subset_size) + ' ';
    append_real(text, inst.word_of_mouth);
    text += '\n';
    for (double p : inst.attraction) {
        append_real(text, p);
        text += '\n';
    }
    return hex64(fnv1a64(text));
}

std::string fingerprint(const InfluenceGraph& graph) {
    std::string text = "graph " + std::to_string(graph.node_count()) + ' ' + std::to_string(graph.edge_count()) + '\n';
    for (const auto& e : graph.edges()) {
        text += std::to_string(e.src) + ' ' + std::to_string(e.dst) + ' ';
        append_real(text, e.p);
        text += '\n';
    }
    return hex64(fnv1a64(text));
}

nlohmann::json to_json(const PmcInstance& inst) {
    return {{"kind", "pmc"},
            {"items", inst.items},
            {"users", inst.users},
            {"subset_size", inst.subset_size},
            {"word_of_mouth", inst.word_of_mouth},
            {"attraction", inst.attraction}};
}

PmcInstance pmc_from_json(const nlohmann::json& j) {
    try {
        PmcInstance inst;
        inst.items = j.at("items").get<std::size_t>();
        inst.users = j.at("users").get<std::size_t>();
        inst.subset_size = j.at("subset_size").get<std::size_t>();
        inst.word_of_mouth = j.at("word_of_mouth").get<double>();
        inst.attraction = j.at("attraction").get<std::vector<double>>();
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw IngestError(std::string("malformed PMC instance: ") + e.what());
    }
}

nlohmann::json to_json(const InfluenceGraph& graph) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : graph.edges()) edges.push_back({e.src, e.dst, e.p});
    return {{"kind", "influence_graph"}, {"nodes", graph.node_count()}, {"edges", std::move(edges)}};
}

InfluenceGraph graph_from_json(const nlohmann::json& j) {
    try {
        std::vector<InfluenceEdge> edges;
        for (const auto& e : j.at("edges")) {
            edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), e.at(2).get<double>()});
        }
        return InfluenceGraph(j.at("nodes").get<std::size_t>(), std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        throw IngestError(std::string("malformed influence graph: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw IngestError(std::string("invalid influence graph: ") + e.what());
    }
}

}  // namespace cmab
