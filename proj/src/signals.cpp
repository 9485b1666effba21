#include "dgs/signals.hpp"

#include <cmath>
#include <random>

namespace dgs {

std::string_view to_string(SignalKind kind) {
    switch (kind) {
        case SignalKind::GS1: return "GS1";
        case SignalKind::GS2: return "GS2";
        case SignalKind::GS3: return "GS3";
    }
    return "?";
}

SignalKind parse_signal_kind(std::string_view text) {
    if (text == "GS1" || text == "gs1") return SignalKind::GS1;
    if (text == "GS2" || text == "gs2") return SignalKind::GS2;
    if (text == "GS3" || text == "gs3") return SignalKind::GS3;
    throw Error(ErrorCode::InvalidArgument, "unknown signal kind '" + std::string(text) + "'");
}

std::size_t default_band(std::size_t n) {
    return (n + 9) / 10;
}

namespace {

Eigen::VectorXd standard_normal(Eigen::Index n, Rng& rng) {
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        z[i] = normal(rng);
    }
    return z;
}

}  // namespace

Eigen::VectorXd gen_gs1(const SymEig& eig, std::size_t band, Rng& rng) {
    const auto n = static_cast<std::size_t>(eig.vectors.cols());
    if (band < 1 || band > n) {
        throw Error(ErrorCode::InvalidArgument, "gen_gs1: band size must satisfy 1 <= m <= n");
    }
    const Eigen::VectorXd coeffs = standard_normal(static_cast<Eigen::Index>(band), rng);
    return eig.vectors.leftCols(static_cast<Eigen::Index>(band)) * coeffs;
}

Eigen::VectorXd gen_gs2_factored(const Eigen::MatrixXd& upper, Rng& rng) {
    const Eigen::VectorXd z = standard_normal(upper.rows(), rng);
    return upper.triangularView<Eigen::Upper>().solve(z);
}

Eigen::VectorXd gen_gs2(const Eigen::MatrixXd& gram, double omega, Rng& rng) {
    if (!(omega > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "gen_gs2: omega must be positive");
    }
    Eigen::MatrixXd precision = gram;
    precision.diagonal().array() += omega;
    return gen_gs2_factored(cholesky_factor(precision), rng);
}

Eigen::VectorXd diffuse(const NormalizedAdjacency& wbar, Eigen::VectorXd x, double alpha, std::size_t steps) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "diffuse: alpha must lie in [0, 1]");
    }
    if (static_cast<std::size_t>(x.size()) != wbar.n()) {
        throw Error(ErrorCode::DimensionMismatch, "diffuse: signal length differs from graph size");
    }
    Eigen::VectorXd shifted;
    for (std::size_t t = 0; t < steps; ++t) {
        wbar.rows.multiply(x, shifted);
        x = (1.0 - alpha) * x + alpha * shifted;
    }
    return x;
}

Eigen::VectorXd gen_gs3(const NormalizedAdjacency& wbar, double alpha, std::size_t steps, Rng& rng) {
    return diffuse(wbar, standard_normal(static_cast<Eigen::Index>(wbar.n()), rng), alpha, steps);
}

Eigen::VectorXd normalize_signal(const Eigen::VectorXd& x) {
    const auto n = static_cast<double>(x.size());
    if (x.size() == 0) {
        throw Error(ErrorCode::ConstantSignal, "normalize_signal: empty signal");
    }
    const double mean = x.mean();
    const Eigen::VectorXd centered = x.array() - mean;
    const double pop_std = std::sqrt(centered.squaredNorm() / n);
    if (!(pop_std > 1e-300) || pop_std <= 1e-14 * std::max(1.0, std::abs(mean))) {
        throw Error(ErrorCode::ConstantSignal, "normalize_signal: signal has zero variance");
    }
    // √N·std equals ‖x − mean‖₂; dividing by the norm itself keeps ‖·‖₂ = 1 to rounding.
    return centered / centered.norm();
}

SignalGenerator::SignalGenerator(const RwLaplacian& lap, const SignalSpec& spec) : lap_(&lap), spec_(spec) {
    switch (spec.kind) {
        case SignalKind::GS1:
            band_ = spec.band.value_or(default_band(lap.n()));
            if (band_ < 1 || band_ > lap.n()) {
                throw Error(ErrorCode::InvalidArgument, "GS1 band size must satisfy 1 <= m <= n");
            }
            eig_ = dense_sym_eig(gram_dense(lap));
            break;
        case SignalKind::GS2: {
            if (!(spec.omega > 0.0)) {
                throw Error(ErrorCode::InvalidArgument, "GS2 omega must be positive");
            }
            Eigen::MatrixXd precision = gram_dense(lap);
            precision.diagonal().array() += spec.omega;
            upper_ = cholesky_factor(precision);
            break;
        }
        case SignalKind::GS3:
            if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0)) {
                throw Error(ErrorCode::InvalidArgument, "GS3 alpha must lie in [0, 1]");
            }
            break;
    }
}

Eigen::VectorXd SignalGenerator::draw(Rng& rng) const {
    switch (spec_.kind) {
        case SignalKind::GS1: return gen_gs1(*eig_, band_, rng);
        case SignalKind::GS2: return gen_gs2_factored(*upper_, rng);
        case SignalKind::GS3: return gen_gs3(lap_->wbar, spec_.alpha, spec_.steps, rng);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown signal kind");
}

}  // namespace dgs
