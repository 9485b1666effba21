#include "dgs/gda_direct.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

namespace dgs {

double numerator_c(const NormalizedAdjacency& wbar, std::size_t budget) {
    if (budget < 1 || budget > wbar.n()) {
        throw Error(ErrorCode::InvalidArgument, "numerator_c: budget must satisfy 1 <= K <= n");
    }
    const std::size_t keep = budget - 1;
    if (keep == 0) {
        return 3.0;
    }
    const CsrMatrix& cols = wbar.cols;
    double best = 0.0;
    std::vector<double> top;
    for (std::size_t i = 0; i < cols.n; ++i) {
        // Bounded min-heap holding the K−1 largest entries of column i.
        std::priority_queue<double, std::vector<double>, std::greater<>> heap;
        for (std::size_t e = cols.row_begin(i); e < cols.row_end(i); ++e) {
            const double v = cols.values[e];
            if (heap.size() < keep) {
                heap.push(v);
            } else if (v > heap.top()) {
                heap.pop();
                heap.push(v);
            }
        }
        top.clear();
        while (!heap.empty()) {
            top.push_back(heap.top());
            heap.pop();
        }
        // Sum largest-first so the result does not depend on heap layout.
        double sum = 0.0;
        for (auto it = top.rbegin(); it != top.rend(); ++it) {
            sum += *it;
        }
        best = std::max(best, sum);
    }
    return 3.0 + best;
}

double approx_denominator(const RwLaplacian& lap, double mu, double eps, std::size_t budget) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "approx_denominator: eps must lie in (0, 1)");
    }
    if (regime_for(mu) == Regime::MuAtMostOne) {
        return static_cast<double>(budget) * eps / static_cast<double>(lap.n());
    }
    double min_norm2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lap.n(); ++i) {
        double norm2 = 0.0;
        for (std::size_t e = lap.cols.row_begin(i); e < lap.cols.row_end(i); ++e) {
            norm2 += lap.cols.values[e] * lap.cols.values[e];
        }
        min_norm2 = std::min(min_norm2, norm2);
    }
    return eps * min_norm2;
}

double choose_epsilon(double lambda2, std::size_t n, std::size_t budget, double mu) {
    if (!(mu > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "choose_epsilon: mu must be positive");
    }
    if (regime_for(mu) == Regime::MuAboveOne) {
        return std::min(0.9, mu / 2.0);
    }
    if (budget == 0 || n == 0) {
        throw Error(ErrorCode::InvalidArgument, "choose_epsilon: empty graph or budget");
    }
    if (!(lambda2 > 1e-12)) {
        throw Error(ErrorCode::DegenerateSpectrum,
                    "choose_epsilon: second eigenvalue of L_rw^T L_rw is zero; graph violates the rank N-1 "
                    "assumption");
    }
    const double bound = lambda2 * static_cast<double>(n) / static_cast<double>(budget);
    double eps = std::min(0.9, 0.5 * bound);
    // ε·μ < 1 holds automatically here since ε ≤ 0.9 and μ ≤ 1.
    return eps;
}

DeltaRho delta_rho(double mu, double eps, double c) {
    if (!(mu > 0.0) || !(c > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "delta_rho: mu and c must be positive");
    }
    if (!(eps > 0.0 && eps < 1.0)) {
        throw Error(ErrorCode::InvalidRegime, "delta_rho: eps must lie in (0, 1)");
    }
    // Roots of x² + bx − a = 0 written as 2a/(b + √(b² + 4a)) to avoid cancellation.
    if (regime_for(mu) == Regime::MuAtMostOne) {
        if (eps * mu >= 1.0) {
            throw Error(ErrorCode::InvalidRegime, "delta_rho: eps*mu must be < 1");
        }
        const double delta = std::sqrt(1.0 - eps * mu);
        const double b = delta * c;
        const double rho = 2.0 * mu / (b + std::sqrt(b * b + 4.0 * mu));
        return {delta, rho};
    }
    if (eps >= mu) {
        throw Error(ErrorCode::InvalidRegime, "delta_rho: eps must be < mu");
    }
    const double rho = std::sqrt(mu - eps);
    const double b = rho * c;
    const double delta = 2.0 / (b + std::sqrt(b * b + 4.0));
    return {delta, rho};
}

GdaParams make_params(double mu, double eps, std::size_t budget, double numerator, double denominator) {
    if (!(denominator > 0.0)) {
        throw Error(ErrorCode::DegenerateSpectrum, "make_params: denominator of c must be positive");
    }
    GdaParams p;
    p.mu = mu;
    p.eps = eps;
    p.budget = budget;
    p.regime = regime_for(mu);
    p.numerator = numerator;
    p.denominator = denominator;
    p.c = numerator / denominator;
    const DeltaRho dr = delta_rho(mu, eps, p.c);
    p.delta = dr.delta;
    p.rho = dr.rho;
    return p;
}

GdaDirectResult gda_direct_sample(const RwLaplacian& lap, double mu, std::size_t budget,
                                  const GdaDirectOptions& opts) {
    const std::size_t n = lap.n();
    if (budget < 1 || budget >= n) {
        throw Error(ErrorCode::InvalidArgument, "gda_direct_sample: budget must satisfy 1 <= K < n");
    }
    if (!(mu > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "gda_direct_sample: mu must be positive");
    }
    GdaDirectResult result;
    const double numerator = numerator_c(lap.wbar, budget);

    double eps = 0.0;
    if (opts.eps) {
        eps = *opts.eps;
    } else if (regime_for(mu) == Regime::MuAtMostOne) {
        result.lambda2 = second_smallest_eig(gram_operator(lap), opts.lanczos);
        eps = choose_epsilon(*result.lambda2, n, budget, mu);
    } else {
        eps = choose_epsilon(0.0, n, budget, mu);
    }
    const double denominator = approx_denominator(lap, mu, eps, budget);
    result.params = make_params(mu, eps, budget, numerator, denominator);
    result.outcome = gdas_sample(lap, result.params.delta, result.params.rho, budget, opts.gdas);
    result.samples = result.outcome.samples;
    return result;
}

GdaDirectResult gda_direct_sample(const DiGraph& g, double mu, std::size_t budget, const GdaDirectOptions& opts) {
    return gda_direct_sample(random_walk_laplacian(g), mu, budget, opts);
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(std::span<const NodeId>)>& fn) {
    if (k > n) {
        return;
    }
    std::vector<NodeId> idx(k);
    std::iota(idx.begin(), idx.end(), NodeId{0});
    while (true) {
        fn(idx);
        // Advance to the next combination in lexicographic order.
        std::size_t pos = k;
        while (pos > 0 && static_cast<std::size_t>(idx[pos - 1]) == n - k + pos - 1) {
            --pos;
        }
        if (pos == 0) {
            return;
        }
        ++idx[pos - 1];
        for (std::size_t j = pos; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

namespace {

void check_brute_force(const RwLaplacian& lap, std::size_t budget) {
    if (lap.n() > kBruteForceLimit) {
        throw Error(ErrorCode::SizeLimitExceeded,
                    "brute force limited to n <= " + std::to_string(kBruteForceLimit));
    }
    if (budget < 1 || budget > lap.n()) {
        throw Error(ErrorCode::InvalidArgument, "brute force: budget must satisfy 1 <= K <= n");
    }
}

}  // namespace

ExactC exact_c_bruteforce(const RwLaplacian& lap, std::size_t budget, double eps, double mu) {
    check_brute_force(lap, budget);
    const Eigen::MatrixXd gram = gram_dense(lap);
    const bool low_mu = regime_for(mu) == Regime::MuAtMostOne;
    ExactC out;
    out.denominator = std::numeric_limits<double>::infinity();
    for_each_subset(lap.n(), budget, [&](std::span<const NodeId> subset) {
        Eigen::MatrixXd m = low_mu ? gram : Eigen::MatrixXd(eps * gram);
        const double weight = low_mu ? eps : 1.0;
        for (NodeId v : subset) {
            m(v, v) += weight;
        }
        const double lmin = dense_min_eig(m);
        if (lmin < out.denominator) {
            out.denominator = lmin;
            out.argmin.assign(subset.begin(), subset.end());
        }
    });
    out.numerator = numerator_c(lap.wbar, budget);
    out.c = out.numerator / out.denominator;
    return out;
}

ExactSampling exact_sampler_bruteforce(const RwLaplacian& lap, double mu, std::size_t budget) {
    check_brute_force(lap, budget);
    const Eigen::MatrixXd base = mu * gram_dense(lap);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<NodeId> best_subset;
    for_each_subset(lap.n(), budget, [&](std::span<const NodeId> subset) {
        Eigen::MatrixXd m = base;
        for (NodeId v : subset) {
            m(v, v) += 1.0;
        }
        const double lmin = dense_min_eig(m);
        // Strict improvement beyond rounding keeps the lexicographically first maximizer.
        if (best_subset.empty() || lmin > best + 1e-12 * std::max(1.0, std::abs(best))) {
            best = lmin;
            best_subset.assign(subset.begin(), subset.end());
        }
    });
    return {SampleSet(lap.n(), std::move(best_subset)), best};
}

}  // namespace dgs
