#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dgs/digraph.hpp"
#include "dgs/recon.hpp"
#include "dgs/spectral.hpp"

namespace dgs {

/// Scales and sampling flags produced by one greedy disc-alignment pass over
/// δA + ρL_rw at threshold T.
struct DiscState {
    Eigen::VectorXd scales;      // diagonal of S, all > 0
    std::vector<char> sampled;   // diagonal of A
    double threshold = 0.0;
    std::size_t num_sampled = 0;
    /// False when some row could not reach the threshold even after sampling
    /// (only possible for T > δ); such a pass never counts as feasible.
    bool all_rows_aligned = true;
};

struct GdasOutcome {
    SampleSet samples;
    Eigen::VectorXd scales;
    double threshold = 0.0;          // T*
    double min_left_end = 0.0;       // certified λ⁻_min of S(δA + ρL_rw)S⁻¹
    int bisect_iterations = 0;
    std::size_t pass_samples = 0;    // samples chosen by the pass before padding
    bool non_monotone = false;       // a larger T needed fewer samples than a smaller T
};

struct GdasOptions {
    double tol_rel = 1e-6;  // threshold resolution as a fraction of ρ
    int max_bisect = 50;
    std::vector<NodeId> order;  // pass order; empty means ascending ids
};

/// Single greedy pass in the given node order. A node whose disc left-end
/// (with s_i = 1) is below T is sampled and scaled to put its left-end at T;
/// a node already at or above T is scaled up as far as T allows. Scales never
/// drop below 1, so earlier rows only gain slack as later scales grow.
DiscState feasibility_pass(const RwLaplacian& lap, double delta, double rho, double threshold,
                           std::span<const NodeId> order);
DiscState feasibility_pass(const RwLaplacian& lap, double delta, double rho, double threshold);

/// Gershgorin discs of S(δA + ρL_rw)S⁻¹ for the given sampled flags and scales.
DiscReport gdas_discs(const RwLaplacian& lap, double delta, double rho, std::span<const char> sampled,
                      const Eigen::VectorXd& scales);

/// Bisection on T ∈ [0, ρ] for the largest threshold whose pass uses at most
/// `budget` samples, then padding to exactly `budget` nodes.
GdasOutcome gdas_sample(const RwLaplacian& lap, double delta, double rho, std::size_t budget,
                        const GdasOptions& opts = {});

}  // namespace dgs
