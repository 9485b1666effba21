#include "dgs/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace dgs {

SampleSet random_sample(std::size_t n, std::size_t budget, Rng& rng) {
    if (budget > n) {
        throw Error(ErrorCode::InvalidArgument, "random_sample: budget exceeds node count");
    }
    std::vector<NodeId> pool(n);
    std::iota(pool.begin(), pool.end(), NodeId{0});
    for (std::size_t k = 0; k < budget; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, n - 1);
        std::swap(pool[k], pool[pick(rng)]);
    }
    pool.resize(budget);
    return SampleSet(n, std::move(pool));
}

namespace {

// Smallest eigenvalue of the bordered matrix [[diag(theta), z], [zᵀ, a]],
// theta ascending and nonnegative. The answer lies in [0, theta_0] and is the
// root of the secular function f(λ) = a − λ − Σ z_k²/(θ_k − λ), which is
// concave and decreasing there, so Newton steps from the right converge
// monotonically.
double bordered_min_eig(const Eigen::VectorXd& theta, const Eigen::VectorXd& z, double a) {
    const double top = theta[0];
    if (top <= 0.0) {
        return 0.0;
    }
    auto eval = [&](double x, double& slope) {
        double f = a - x;
        slope = -1.0;
        for (Eigen::Index k = 0; k < theta.size(); ++k) {
            const double d = theta[k] - x;
            const double q = z[k] * z[k] / d;
            f -= q;
            slope -= q / d;
        }
        return f;
    };
    double slope = 0.0;
    double f0 = eval(0.0, slope);
    if (f0 <= 0.0) {
        return 0.0;
    }
    // Tangent from 0 overshoots the root of a concave decreasing function.
    double x = std::min(-f0 / slope, top * (1.0 - 1e-15));
    double f = eval(x, slope);
    if (f >= 0.0) {
        return x;  // the root sits at the pole; λ_min = θ_0
    }
    for (int it = 0; it < 200; ++it) {
        const double next = x - f / slope;
        if (!(next < x) || x - next <= 1e-15 * x) {
            x = std::max(next, 0.0);
            break;
        }
        x = next;
        f = eval(x, slope);
        if (f >= 0.0) {
            break;
        }
    }
    return std::max(x, 0.0);
}

bool better(double candidate, double best) {
    return candidate > best + 1e-12 * std::max(std::abs(best), 1e-300);
}

}  // namespace

double rows_sigma_min(const Eigen::MatrixXd& basis, std::span<const NodeId> nodes) {
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(nodes.size()), basis.cols());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        rows.row(static_cast<Eigen::Index>(k)) = basis.row(nodes[k]);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
    const auto& sv = svd.singularValues();
    return sv.size() == 0 ? 0.0 : sv[sv.size() - 1];
}

SampleSet e_optimal_greedy(const RwLaplacian& lap, std::size_t budget, std::size_t bandwidth,
                           std::size_t dense_limit) {
    const std::size_t n = lap.n();
    if (budget < 1 || budget > n) {
        throw Error(ErrorCode::InvalidArgument, "e_optimal_greedy: budget must satisfy 1 <= K <= n");
    }
    const std::size_t m = bandwidth == 0 ? budget : bandwidth;
    if (m < budget || m > n) {
        throw Error(ErrorCode::InvalidArgument, "e_optimal_greedy: bandwidth must satisfy K <= m <= n");
    }
    if (budget == n) {
        std::vector<NodeId> all(n);
        std::iota(all.begin(), all.end(), NodeId{0});
        return SampleSet(n, std::move(all));
    }

    const SymEig eig = dense_sym_eig(gram_dense(lap), dense_limit);
    const auto dim = static_cast<Eigen::Index>(n);
    const Eigen::MatrixXd basis = eig.vectors.leftCols(static_cast<Eigen::Index>(m));
    const Eigen::VectorXd norms2 = basis.rowwise().squaredNorm();

    std::vector<NodeId> chosen;
    std::vector<char> taken(n, 0);
    // cross(a, v) = <u_chosen[a], u_v>, grown one row per step.
    Eigen::MatrixXd cross(0, dim);

    for (std::size_t step = 0; step < budget; ++step) {
        const auto t = static_cast<Eigen::Index>(chosen.size());
        Eigen::VectorXd theta;
        Eigen::MatrixXd rotated;
        if (t > 0) {
            Eigen::MatrixXd gram(t, t);
            for (Eigen::Index a = 0; a < t; ++a) {
                gram.col(a) = cross.col(chosen[static_cast<std::size_t>(a)]);
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
            theta = solver.eigenvalues().cwiseMax(0.0);
            rotated.noalias() = solver.eigenvectors().transpose() * cross;
        }

        NodeId best_node = -1;
        double best_value = -1.0;
        for (std::size_t v = 0; v < n; ++v) {
            if (taken[v]) {
                continue;
            }
            const auto vi = static_cast<Eigen::Index>(v);
            const double value =
                t == 0 ? norms2[vi] : bordered_min_eig(theta, rotated.col(vi), norms2[vi]);
            if (best_node < 0 || better(value, best_value)) {
                best_node = static_cast<NodeId>(v);
                best_value = value;
            }
        }

        chosen.push_back(best_node);
        taken[static_cast<std::size_t>(best_node)] = 1;
        const Eigen::VectorXd row = basis * basis.row(best_node).transpose();
        cross.conservativeResize(t + 1, Eigen::NoChange);
        cross.row(t) = row.transpose();
    }
    return SampleSet(n, std::move(chosen));
}

}  // namespace dgs
