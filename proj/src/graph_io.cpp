#include "dgs/graph_io.hpp"

#include <fstream>

namespace dgs {

nlohmann::json graph_to_json(const DiGraph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : g.to_edges()) {
        edges.push_back({e.src, e.dst, e.weight});
    }
    return {{"n", g.n()}, {"edges", std::move(edges)}};
}

DiGraph graph_from_json(const nlohmann::json& doc) {
    try {
        const auto n = doc.at("n").get<long long>();
        if (n <= 0) {
            throw Error(ErrorCode::InvalidArgument, "graph \"n\" must be positive");
        }
        std::vector<Edge> edges;
        for (const auto& item : doc.at("edges")) {
            if (!item.is_array() || item.size() != 3) {
                throw Error(ErrorCode::InvalidArgument, "edge must be [src, dst, weight]");
            }
            edges.push_back({item[0].get<NodeId>(), item[1].get<NodeId>(), item[2].get<double>()});
        }
        return DiGraph::from_edges(static_cast<std::size_t>(n), edges);
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed graph JSON: ") + ex.what());
    }
}

DiGraph read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::InvalidArgument, path + ": " + ex.what());
    }
    return graph_from_json(doc);
}

void write_graph(const DiGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write " + path);
    }
    out << graph_to_json(g).dump() << '\n';
}

}  // namespace dgs
