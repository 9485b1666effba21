#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "dgs/digraph.hpp"

namespace dgs {

/// {"n": int, "edges": [[src, dst, weight], ...]}
nlohmann::json graph_to_json(const DiGraph& g);
DiGraph graph_from_json(const nlohmann::json& doc);

DiGraph read_graph(const std::string& path);
void write_graph(const DiGraph& g, const std::string& path);

}  // namespace dgs
