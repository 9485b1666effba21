#include "dgs/gdas.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace dgs {

namespace {

void check_pass_args(const RwLaplacian& lap, double delta, double rho, double threshold,
                     std::span<const NodeId> order) {
    if (!(delta > 0.0) || !(rho > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "feasibility_pass: delta and rho must be positive");
    }
    if (!(threshold >= 0.0) || threshold > rho) {
        throw Error(ErrorCode::InvalidArgument, "feasibility_pass: threshold outside [0, rho]");
    }
    std::vector<char> seen(lap.n(), 0);
    bool perm = order.size() == lap.n();
    for (std::size_t i = 0; perm && i < order.size(); ++i) {
        const auto v = static_cast<std::size_t>(order[i]);
        perm = v < lap.n() && !seen[v];
        if (perm) seen[v] = 1;
    }
    if (!perm) {
        throw Error(ErrorCode::DimensionMismatch, "feasibility_pass: order is not a permutation of the nodes");
    }
}

}  // namespace

DiscState feasibility_pass(const RwLaplacian& lap, double delta, double rho, double threshold,
                           std::span<const NodeId> order) {
    check_pass_args(lap, delta, rho, threshold, order);
    const std::size_t n = lap.n();
    const CsrMatrix& wbar = lap.wbar.rows;

    DiscState state;
    state.scales = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
    state.sampled.assign(n, 0);
    state.threshold = threshold;

    // Comparisons against T carry a rounding allowance so that T = 0 samples nothing.
    const double slack = 1e-12 * (delta + rho);
    for (NodeId v : order) {
        const auto i = static_cast<std::size_t>(v);
        double sigma = 0.0;  // Σ_j W̄_ij / s_j
        for (std::size_t e = wbar.row_begin(i); e < wbar.row_end(i); ++e) {
            sigma += wbar.values[e] / state.scales[wbar.col_indices[e]];
        }
        const double unit_left_end = rho - rho * sigma;
        double& s = state.scales[v];
        if (unit_left_end < threshold - slack) {
            state.sampled[i] = 1;
            ++state.num_sampled;
            s = std::max(1.0, (delta + rho - threshold) / (rho * sigma));
            if (delta + rho - rho * s * sigma < threshold - slack) {
                state.all_rows_aligned = false;
            }
        } else {
            const double raised = (rho - threshold) / (rho * sigma);
            if (raised >= 1.0) {
                s = raised;
            }
        }
    }
    return state;
}

DiscState feasibility_pass(const RwLaplacian& lap, double delta, double rho, double threshold) {
    std::vector<NodeId> order(lap.n());
    std::iota(order.begin(), order.end(), NodeId{0});
    return feasibility_pass(lap, delta, rho, threshold, order);
}

DiscReport gdas_discs(const RwLaplacian& lap, double delta, double rho, std::span<const char> sampled,
                      const Eigen::VectorXd& scales) {
    if (sampled.size() != lap.n()) {
        throw Error(ErrorCode::DimensionMismatch, "gdas_discs: sampled flags have wrong length");
    }
    DiscReport report = disc_left_ends(lap.rows, scales);
    // disc_left_ends saw L_rw; rescale to ρL_rw and shift sampled centers by δ.
    report.center *= rho;
    report.radius *= rho;
    for (std::size_t i = 0; i < lap.n(); ++i) {
        if (sampled[i]) {
            report.center[static_cast<Eigen::Index>(i)] += delta;
        }
    }
    report.left_end = report.center - report.radius;
    return report;
}

GdasOutcome gdas_sample(const RwLaplacian& lap, double delta, double rho, std::size_t budget,
                        const GdasOptions& opts) {
    const std::size_t n = lap.n();
    if (budget < 1 || budget >= n) {
        throw Error(ErrorCode::InvalidArgument, "gdas_sample: budget must satisfy 1 <= K < n");
    }
    if (!(opts.tol_rel > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "gdas_sample: threshold tolerance must be positive");
    }
    std::vector<NodeId> order = opts.order;
    if (order.empty()) {
        order.resize(n);
        std::iota(order.begin(), order.end(), NodeId{0});
    }

    GdasOutcome outcome;
    DiscState best = feasibility_pass(lap, delta, rho, 0.0, order);
    double lo = 0.0;
    double hi = rho;
    const double tol = opts.tol_rel * rho;

    std::vector<std::pair<double, std::size_t>> evaluated{{0.0, best.num_sampled}};
    while (hi - lo > tol && outcome.bisect_iterations < opts.max_bisect) {
        const double mid = 0.5 * (lo + hi);
        DiscState state = feasibility_pass(lap, delta, rho, mid, order);
        ++outcome.bisect_iterations;
        if (state.all_rows_aligned) {
            for (const auto& [t, count] : evaluated) {
                if ((t < mid && count > state.num_sampled) || (t > mid && count < state.num_sampled)) {
                    outcome.non_monotone = true;
                }
            }
            evaluated.emplace_back(mid, state.num_sampled);
        }
        if (state.all_rows_aligned && state.num_sampled <= budget) {
            lo = mid;
            best = std::move(state);
        } else {
            hi = mid;
        }
    }

    outcome.threshold = lo;
    outcome.pass_samples = best.num_sampled;

    // Pad to exactly `budget` nodes, tightest discs first.
    DiscReport discs = gdas_discs(lap, delta, rho, best.sampled, best.scales);
    if (best.num_sampled < budget) {
        std::vector<NodeId> candidates;
        for (std::size_t i = 0; i < n; ++i) {
            if (!best.sampled[i]) {
                candidates.push_back(static_cast<NodeId>(i));
            }
        }
        std::stable_sort(candidates.begin(), candidates.end(), [&](NodeId a, NodeId b) {
            return discs.left_end[a] < discs.left_end[b];
        });
        for (std::size_t k = 0; k < budget - best.num_sampled; ++k) {
            best.sampled[static_cast<std::size_t>(candidates[k])] = 1;
        }
        best.num_sampled = budget;
        discs = gdas_discs(lap, delta, rho, best.sampled, best.scales);
    }

    std::vector<NodeId> nodes;
    nodes.reserve(budget);
    for (std::size_t i = 0; i < n; ++i) {
        if (best.sampled[i]) {
            nodes.push_back(static_cast<NodeId>(i));
        }
    }
    outcome.samples = SampleSet(n, std::move(nodes));
    outcome.scales = std::move(best.scales);
    outcome.min_left_end = discs.min_left_end();
    return outcome;
}

}  // namespace dgs
