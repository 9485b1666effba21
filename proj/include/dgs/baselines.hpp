#pragma once

#include <cstddef>

#include "dgs/digraph.hpp"
#include "dgs/recon.hpp"
#include "dgs/rng.hpp"
#include "dgs/spectral.hpp"

namespace dgs {

/// Uniform K-subset without replacement.
SampleSet random_sample(std::size_t n, std::size_t budget, Rng& rng);

/// Greedy E-optimal selection on the first `bandwidth` eigenvectors of
/// L_rwᵀL_rw: each step adds the node maximizing the smallest singular value
/// of the selected rows. bandwidth = 0 means bandwidth = K.
SampleSet e_optimal_greedy(const RwLaplacian& lap, std::size_t budget, std::size_t bandwidth = 0,
                           std::size_t dense_limit = kDefaultDenseLimit);

/// Smallest singular value of the rows `nodes` of `basis`. Test/inspection helper.
double rows_sigma_min(const Eigen::MatrixXd& basis, std::span<const NodeId> nodes);

}  // namespace dgs
