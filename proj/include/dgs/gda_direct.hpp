#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dgs/digraph.hpp"
#include "dgs/gdas.hpp"
#include "dgs/recon.hpp"

namespace dgs {

enum class Regime { MuAtMostOne, MuAboveOne };

inline Regime regime_for(double mu) { return mu <= 1.0 ? Regime::MuAtMostOne : Regime::MuAboveOne; }

/// Scalars feeding the disc-alignment sampler. For μ ≤ 1, δ = √(1 − εμ) and ρ
/// solves ρ² + δcρ − μ = 0; for μ > 1, ρ = √(μ − ε) and δ solves δ² + ρcδ − 1 = 0.
struct GdaParams {
    double mu = 0.0;
    double eps = 0.0;
    double numerator = 0.0;    // 3 + max_i Σ_{j<K} W̄_[j],i
    double denominator = 0.0;  // (approximate) min_A λ_min(...)
    double c = 0.0;
    double delta = 0.0;
    double rho = 0.0;
    std::size_t budget = 0;
    Regime regime = Regime::MuAtMostOne;
};

/// 3 plus the largest column sum of the K−1 biggest entries of W̄; 3 when K = 1.
double numerator_c(const NormalizedAdjacency& wbar, std::size_t budget);

/// Kε/N for μ ≤ 1; ε·min_i ‖L_rw e_i‖² for μ > 1.
double approx_denominator(const RwLaplacian& lap, double mu, double eps, std::size_t budget);

/// ε = min(0.9, λ₂N/(2K)) for μ ≤ 1 (DegenerateSpectrum if λ₂ ≈ 0), min(0.9, μ/2) otherwise.
double choose_epsilon(double lambda2, std::size_t n, std::size_t budget, double mu);

struct DeltaRho {
    double delta;
    double rho;
};

DeltaRho delta_rho(double mu, double eps, double c);

/// Full parameter set from a numerator/denominator pair.
GdaParams make_params(double mu, double eps, std::size_t budget, double numerator, double denominator);

struct GdaDirectOptions {
    std::optional<double> eps;  // overrides choose_epsilon
    GdasOptions gdas;
    LanczosOptions lanczos;
};

struct GdaDirectResult {
    SampleSet samples;
    GdaParams params;
    GdasOutcome outcome;
    std::optional<double> lambda2;  // only computed when μ ≤ 1 and ε is not given
};

GdaDirectResult gda_direct_sample(const RwLaplacian& lap, double mu, std::size_t budget,
                                  const GdaDirectOptions& opts = {});
GdaDirectResult gda_direct_sample(const DiGraph& g, double mu, std::size_t budget,
                                  const GdaDirectOptions& opts = {});

inline constexpr std::size_t kBruteForceLimit = 14;

/// Calls fn on every K-subset of {0..n−1} in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(std::span<const NodeId>)>& fn);

struct ExactC {
    double c = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
    std::vector<NodeId> argmin;
};

/// c with its denominator minimized exactly over all trace-K sampling matrices.
ExactC exact_c_bruteforce(const RwLaplacian& lap, std::size_t budget, double eps, double mu);

struct ExactSampling {
    SampleSet samples;
    double lambda_min = 0.0;
};

/// argmax over all K-subsets of λ_min(A + μL_rwᵀL_rw); lexicographically first on ties.
ExactSampling exact_sampler_bruteforce(const RwLaplacian& lap, double mu, std::size_t budget);

}  // namespace dgs
