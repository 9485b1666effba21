#include "dgs/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace dgs {

namespace {

struct Adjacency {
    std::vector<std::vector<NodeId>> out;
    std::vector<std::vector<NodeId>> in;
};

// Node with the latest DFS finish time on the reversed graph. It lies in a
// source component of the reversed graph, i.e. a sink component of the graph.
NodeId sink_component_candidate(const Adjacency& adj) {
    const std::size_t n = adj.in.size();
    std::vector<char> seen(n, 0);
    std::vector<std::pair<NodeId, std::size_t>> stack;
    NodeId last_finished = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) {
            continue;
        }
        seen[root] = 1;
        stack.emplace_back(static_cast<NodeId>(root), 0);
        while (!stack.empty()) {
            auto& [v, cursor] = stack.back();
            const auto& preds = adj.in[static_cast<std::size_t>(v)];
            if (cursor < preds.size()) {
                NodeId w = preds[cursor++];
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                last_finished = v;
                stack.pop_back();
            }
        }
    }
    return last_finished;
}

std::size_t reverse_reach_count(const Adjacency& adj, NodeId root) {
    std::vector<char> seen(adj.in.size(), 0);
    std::vector<NodeId> queue{root};
    seen[static_cast<std::size_t>(root)] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (NodeId w : adj.in[static_cast<std::size_t>(queue[head])]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                queue.push_back(w);
            }
        }
    }
    return queue.size();
}

std::vector<Edge> sorted_edges(std::span<const Edge> edges) {
    std::vector<Edge> sorted(edges.begin(), edges.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
        return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    return sorted;
}

}  // namespace

GraphDiagnostics validate(std::size_t n, std::span<const Edge> edges) {
    GraphDiagnostics diag;
    if (n == 0) {
        diag.issues.push_back({ErrorCode::InvalidArgument, 0, "graph has no nodes"});
        return diag;
    }

    Adjacency adj;
    adj.out.resize(n);
    adj.in.resize(n);

    const auto sorted = sorted_edges(edges);
    const Edge* prev = nullptr;
    for (const Edge& e : sorted) {
        if (e.src < 0 || e.dst < 0 || static_cast<std::size_t>(e.src) >= n ||
            static_cast<std::size_t>(e.dst) >= n) {
            diag.issues.push_back({ErrorCode::NodeOutOfRange, e.src,
                                   "edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                                       ") out of range"});
            continue;
        }
        if (e.src == e.dst) {
            diag.issues.push_back({ErrorCode::SelfLoop, e.src, "self-loop at node " + std::to_string(e.src)});
            continue;
        }
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
            diag.issues.push_back({ErrorCode::NonPositiveWeight, e.src,
                                   "edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                                       ") has non-positive weight"});
            continue;
        }
        if (prev != nullptr && prev->src == e.src && prev->dst == e.dst) {
            diag.issues.push_back({ErrorCode::DuplicateEdge, e.src,
                                   "duplicate edge (" + std::to_string(e.src) + ", " +
                                       std::to_string(e.dst) + ")"});
            continue;
        }
        prev = &e;
        adj.out[static_cast<std::size_t>(e.src)].push_back(e.dst);
        adj.in[static_cast<std::size_t>(e.dst)].push_back(e.src);
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (adj.out[i].empty()) {
            diag.sink_nodes.push_back(static_cast<NodeId>(i));
            diag.issues.push_back({ErrorCode::SinkNode, static_cast<NodeId>(i),
                                   "node " + std::to_string(i) + " has no out-edges"});
        }
    }

    const NodeId candidate = sink_component_candidate(adj);
    diag.co_reachable = reverse_reach_count(adj, candidate) == n;
    if (diag.co_reachable) {
        diag.root = candidate;
    } else {
        diag.issues.push_back({ErrorCode::NotCoReachable, candidate,
                               "no node is reachable from every other node"});
    }
    return diag;
}

DiGraph DiGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
    const GraphDiagnostics diag = validate(n, edges);
    if (!diag.ok()) {
        const GraphIssue& first = diag.issues.front();
        throw Error(first.code, first.message);
    }
    const auto sorted = sorted_edges(edges);
    CsrMatrix out;
    out.n = n;
    out.row_offsets.assign(n + 1, 0);
    out.col_indices.reserve(sorted.size());
    out.values.reserve(sorted.size());
    for (const Edge& e : sorted) {
        ++out.row_offsets[static_cast<std::size_t>(e.src) + 1];
        out.col_indices.push_back(e.dst);
        out.values.push_back(e.weight);
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.row_offsets[i + 1] += out.row_offsets[i];
    }
    CsrMatrix in = out.transposed();
    return DiGraph(std::move(out), std::move(in));
}

double DiGraph::out_degree(std::size_t i) const {
    double d = 0.0;
    for (std::size_t e = out_.row_begin(i); e < out_.row_end(i); ++e) {
        d += out_.values[e];
    }
    return d;
}

std::vector<Edge> DiGraph::to_edges() const {
    std::vector<Edge> edges;
    edges.reserve(num_edges());
    for (std::size_t i = 0; i < n(); ++i) {
        for (std::size_t e = out_.row_begin(i); e < out_.row_end(i); ++e) {
            edges.push_back({static_cast<NodeId>(i), out_.col_indices[e], out_.values[e]});
        }
    }
    return edges;
}

bool operator==(const DiGraph& a, const DiGraph& b) {
    return a.out_.n == b.out_.n && a.out_.row_offsets == b.out_.row_offsets &&
           a.out_.col_indices == b.out_.col_indices && a.out_.values == b.out_.values;
}

GraphDiagnostics validate(const DiGraph& g) {
    const auto edges = g.to_edges();
    return validate(g.n(), edges);
}

NormalizedAdjacency normalized_adjacency(const DiGraph& g) {
    NormalizedAdjacency wbar;
    wbar.rows = g.out_adjacency();
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double degree = g.out_degree(i);
        for (std::size_t e = wbar.rows.row_begin(i); e < wbar.rows.row_end(i); ++e) {
            wbar.rows.values[e] /= degree;
        }
    }
    wbar.cols = wbar.rows.transposed();
    return wbar;
}

RwLaplacian random_walk_laplacian(const NormalizedAdjacency& wbar) {
    const std::size_t n = wbar.n();
    RwLaplacian lap;
    lap.wbar = wbar;
    CsrMatrix& rows = lap.rows;
    rows.n = n;
    rows.row_offsets.assign(n + 1, 0);
    rows.col_indices.reserve(wbar.rows.nnz() + n);
    rows.values.reserve(wbar.rows.nnz() + n);
    for (std::size_t i = 0; i < n; ++i) {
        bool diagonal_done = false;
        for (std::size_t e = wbar.rows.row_begin(i); e < wbar.rows.row_end(i); ++e) {
            const NodeId j = wbar.rows.col_indices[e];
            if (!diagonal_done && static_cast<std::size_t>(j) > i) {
                rows.col_indices.push_back(static_cast<NodeId>(i));
                rows.values.push_back(1.0);
                diagonal_done = true;
            }
            rows.col_indices.push_back(j);
            rows.values.push_back(-wbar.rows.values[e]);
        }
        if (!diagonal_done) {
            rows.col_indices.push_back(static_cast<NodeId>(i));
            rows.values.push_back(1.0);
        }
        rows.row_offsets[i + 1] = rows.col_indices.size();
    }
    lap.cols = rows.transposed();
    return lap;
}

RwLaplacian random_walk_laplacian(const DiGraph& g) {
    return random_walk_laplacian(normalized_adjacency(g));
}

Eigen::MatrixXd gram_dense(const RwLaplacian& lap) {
    const Eigen::MatrixXd l = lap.rows.to_dense();
    return l.transpose() * l;
}

DiGraph gen_er_digraph(std::size_t n, double p, Rng& rng) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidArgument, "gen_er_digraph needs n >= 2");
    }
    if (!(p >= 0.0 && p < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "gen_er_digraph needs 0 <= p < 1");
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto weight = [&] { return 1.0 - unit(rng); };  // (0, 1]

    const std::size_t hub = n - 1;
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(p * static_cast<double>(hub * hub)) + 2 * n);
    for (std::size_t i = 0; i < hub; ++i) {
        for (std::size_t j = 0; j < hub; ++j) {
            if (i != j && unit(rng) < p) {
                edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), weight()});
            }
        }
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(hub), weight()});
    }
    std::uniform_int_distribution<std::size_t> pick(0, hub - 1);
    const std::size_t back = pick(rng);
    edges.push_back({static_cast<NodeId>(hub), static_cast<NodeId>(back), weight()});
    return DiGraph::from_edges(n, edges);
}

}  // namespace dgs
