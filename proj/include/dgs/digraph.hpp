#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dgs/csr.hpp"
#include "dgs/error.hpp"
#include "dgs/rng.hpp"

namespace dgs {

struct Edge {
    NodeId src = 0;
    NodeId dst = 0;
    double weight = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct GraphIssue {
    ErrorCode code;
    NodeId node;  // offending node (source node for edge-level issues)
    std::string message;
};

/// Result of checking an edge list against the directed graph model: no
/// self-loops, positive weights, no duplicates, no sinks, and some node that
/// every other node can reach.
struct GraphDiagnostics {
    std::vector<GraphIssue> issues;
    std::vector<NodeId> sink_nodes;
    bool co_reachable = false;
    std::optional<NodeId> root;  // a node reachable from all others, if any

    bool ok() const { return issues.empty(); }
};

GraphDiagnostics validate(std::size_t n, std::span<const Edge> edges);

/// Directed weighted graph, out-adjacency CSR plus a precomputed in-edge index.
/// Immutable once built; every instance satisfies the model invariants.
class DiGraph {
public:
    static DiGraph from_edges(std::size_t n, std::span<const Edge> edges);
    static DiGraph from_edges(std::size_t n, std::initializer_list<Edge> edges) {
        return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
    }

    std::size_t n() const { return out_.n; }
    std::size_t num_edges() const { return out_.nnz(); }

    /// W in CSR form, destinations ascending within each row.
    const CsrMatrix& out_adjacency() const { return out_; }
    /// W transposed: row j lists the sources of edges into j.
    const CsrMatrix& in_adjacency() const { return in_; }

    double out_degree(std::size_t i) const;
    std::vector<Edge> to_edges() const;

    friend bool operator==(const DiGraph& a, const DiGraph& b);

private:
    DiGraph(CsrMatrix out, CsrMatrix in) : out_(std::move(out)), in_(std::move(in)) {}

    CsrMatrix out_;
    CsrMatrix in_;
};

GraphDiagnostics validate(const DiGraph& g);

/// W̄ = D⁻¹W with row and column access.
struct NormalizedAdjacency {
    CsrMatrix rows;
    CsrMatrix cols;  // transpose of rows

    std::size_t n() const { return rows.n; }
};

/// L_rw = I − W̄ with the diagonal stored explicitly.
struct RwLaplacian {
    CsrMatrix rows;
    CsrMatrix cols;  // transpose of rows
    NormalizedAdjacency wbar;

    std::size_t n() const { return rows.n; }

    /// L_rw x
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return rows.multiply(x); }
    /// L_rwᵀ x
    Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const { return cols.multiply(x); }
};

NormalizedAdjacency normalized_adjacency(const DiGraph& g);
RwLaplacian random_walk_laplacian(const NormalizedAdjacency& wbar);
RwLaplacian random_walk_laplacian(const DiGraph& g);

/// Dense L_rwᵀL_rw. Only for generators and oracles.
Eigen::MatrixXd gram_dense(const RwLaplacian& lap);

/// Erdős–Rényi digraph on n−1 nodes with edge probability p, plus a final node
/// that every other node points to and that points back to one random node.
/// Weights are uniform on (0, 1].
DiGraph gen_er_digraph(std::size_t n, double p, Rng& rng);

}  // namespace dgs
