#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dgs/digraph.hpp"
#include "dgs/spectral.hpp"

namespace dgs {

/// Sorted, duplicate-free set of sampled nodes; the diagonal of A = HᵀH.
class SampleSet {
public:
    SampleSet() = default;
    /// Sorts the input; throws InvalidArgument on duplicates or out-of-range ids.
    SampleSet(std::size_t n, std::vector<NodeId> nodes);

    std::size_t n() const { return n_; }
    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    const std::vector<NodeId>& nodes() const { return nodes_; }

    bool contains(NodeId v) const;
    /// 0/1 indicator vector of length n.
    Eigen::VectorXd mask() const;

    friend bool operator==(const SampleSet&, const SampleSet&) = default;

private:
    std::size_t n_ = 0;
    std::vector<NodeId> nodes_;
};

struct ReconResult {
    Eigen::VectorXd x;
    int cg_iterations = 0;
    double residual = 0.0;
};

struct ReconOptions {
    double tol = 1e-8;
    int max_iter = 0;
    bool jacobi = false;  // diagonal preconditioning of the coefficient matrix
};

inline constexpr double kDefaultMu = 0.001;

/// ‖L_rw x‖₂²
double gsv(const Eigen::VectorXd& x, const RwLaplacian& lap);

/// v ↦ L_rwᵀ(L_rw v). The operator keeps a reference to `lap`.
SymOperator gram_operator(const RwLaplacian& lap);

/// v ↦ A v + μ L_rwᵀ(L_rw v), never forming L_rwᵀL_rw.
SymOperator coefficient_operator(const RwLaplacian& lap, const SampleSet& samples, double mu);
/// diag(A + μ L_rwᵀL_rw), from column norms of L_rw.
Eigen::VectorXd coefficient_diagonal(const RwLaplacian& lap, const SampleSet& samples, double mu);

/// Solves (A + μ L_rwᵀL_rw) x = Hᵀy by conjugate gradient.
ReconResult reconstruct(const Eigen::VectorXd& y, const SampleSet& samples, double mu, const RwLaplacian& lap,
                        const ReconOptions& opts = {});

/// Squared Euclidean distance.
double mse(const Eigen::VectorXd& x, const Eigen::VectorXd& xhat);

}  // namespace dgs
