#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "dgs/digraph.hpp"
#include "dgs/rng.hpp"
#include "dgs/spectral.hpp"

namespace dgs {

enum class SignalKind { GS1, GS2, GS3 };

std::string_view to_string(SignalKind kind);
SignalKind parse_signal_kind(std::string_view text);

struct SignalSpec {
    SignalKind kind = SignalKind::GS1;
    std::optional<std::size_t> band;  // GS1 band size m; unset means ⌈0.1 N⌉
    double omega = 0.1;               // GS2
    double alpha = 0.1;               // GS3
    std::size_t steps = 50;           // GS3
};

/// ⌈0.1 N⌉, computed in integers.
std::size_t default_band(std::size_t n);

/// Bandlimited: Σ_{i<m} c_i u_i, c_i ~ N(0,1), eigenvectors of L_rwᵀL_rw ascending.
Eigen::VectorXd gen_gs1(const SymEig& eig, std::size_t band, Rng& rng);

/// Draw from N(0, (L_rwᵀL_rw + ωI)⁻¹) by factoring the precision.
Eigen::VectorXd gen_gs2(const Eigen::MatrixXd& gram, double omega, Rng& rng);
/// Same draw given the upper Cholesky factor R of L_rwᵀL_rw + ωI.
Eigen::VectorXd gen_gs2_factored(const Eigen::MatrixXd& upper, Rng& rng);

/// x(t) = (1 − α) x(t−1) + α W̄ x(t−1) from x(0) ~ N(0, I).
Eigen::VectorXd gen_gs3(const NormalizedAdjacency& wbar, double alpha, std::size_t steps, Rng& rng);
Eigen::VectorXd diffuse(const NormalizedAdjacency& wbar, Eigen::VectorXd x, double alpha, std::size_t steps);

/// (x − mean) / (√N · population std), giving zero mean and unit norm.
Eigen::VectorXd normalize_signal(const Eigen::VectorXd& x);

/// Per-graph precomputation shared by many draws of the same spec.
class SignalGenerator {
public:
    SignalGenerator(const RwLaplacian& lap, const SignalSpec& spec);

    /// Raw (unnormalized) draw.
    Eigen::VectorXd draw(Rng& rng) const;
    const SignalSpec& spec() const { return spec_; }

private:
    const RwLaplacian* lap_;
    SignalSpec spec_;
    std::size_t band_ = 0;
    std::optional<SymEig> eig_;
    std::optional<Eigen::MatrixXd> upper_;
};

}  // namespace dgs
