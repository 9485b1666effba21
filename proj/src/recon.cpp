#include "dgs/recon.hpp"

#include <algorithm>
#include <string>

namespace dgs {

SampleSet::SampleSet(std::size_t n, std::vector<NodeId> nodes) : n_(n), nodes_(std::move(nodes)) {
    std::sort(nodes_.begin(), nodes_.end());
    if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
        throw Error(ErrorCode::InvalidArgument, "sample set contains duplicate nodes");
    }
    if (!nodes_.empty() && (nodes_.front() < 0 || static_cast<std::size_t>(nodes_.back()) >= n_)) {
        throw Error(ErrorCode::NodeOutOfRange, "sample set node out of range");
    }
}

bool SampleSet::contains(NodeId v) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), v);
}

Eigen::VectorXd SampleSet::mask() const {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
    for (NodeId v : nodes_) {
        m[v] = 1.0;
    }
    return m;
}

double gsv(const Eigen::VectorXd& x, const RwLaplacian& lap) {
    if (static_cast<std::size_t>(x.size()) != lap.n()) {
        throw Error(ErrorCode::DimensionMismatch, "gsv: signal length differs from graph size");
    }
    return lap.apply(x).squaredNorm();
}

SymOperator gram_operator(const RwLaplacian& lap) {
    return SymOperator(lap.n(), [&lap, tmp = Eigen::VectorXd()](const Eigen::VectorXd& x,
                                                               Eigen::VectorXd& y) mutable {
        lap.rows.multiply(x, tmp);
        lap.cols.multiply(tmp, y);
    });
}

SymOperator coefficient_operator(const RwLaplacian& lap, const SampleSet& samples, double mu) {
    if (samples.n() != lap.n()) {
        throw Error(ErrorCode::DimensionMismatch, "sample set was built for a different graph size");
    }
    Eigen::VectorXd mask = samples.mask();
    return SymOperator(lap.n(), [&lap, mask = std::move(mask), mu, tmp = Eigen::VectorXd()](
                                    const Eigen::VectorXd& x, Eigen::VectorXd& y) mutable {
        lap.rows.multiply(x, tmp);
        lap.cols.multiply(tmp, y);
        y *= mu;
        y += mask.cwiseProduct(x);
    });
}

Eigen::VectorXd coefficient_diagonal(const RwLaplacian& lap, const SampleSet& samples, double mu) {
    Eigen::VectorXd diag = samples.mask();
    for (std::size_t i = 0; i < lap.n(); ++i) {
        double col_norm2 = 0.0;
        for (std::size_t e = lap.cols.row_begin(i); e < lap.cols.row_end(i); ++e) {
            col_norm2 += lap.cols.values[e] * lap.cols.values[e];
        }
        diag[static_cast<Eigen::Index>(i)] += mu * col_norm2;
    }
    return diag;
}

ReconResult reconstruct(const Eigen::VectorXd& y, const SampleSet& samples, double mu, const RwLaplacian& lap,
                        const ReconOptions& opts) {
    if (static_cast<std::size_t>(y.size()) != samples.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "reconstruct: " + std::to_string(y.size()) + " observations for " +
                        std::to_string(samples.size()) + " samples");
    }
    if (!(mu > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "reconstruct: mu must be positive");
    }
    if (samples.empty()) {
        throw Error(ErrorCode::InvalidArgument, "reconstruct: empty sample set");
    }
    Eigen::VectorXd hty = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lap.n()));
    for (std::size_t k = 0; k < samples.size(); ++k) {
        hty[samples.nodes()[k]] = y[static_cast<Eigen::Index>(k)];
    }
    CgOptions cg{opts.tol, opts.max_iter, std::nullopt};
    if (opts.jacobi) {
        cg.jacobi = coefficient_diagonal(lap, samples, mu);
    }
    const SymOperator op = coefficient_operator(lap, samples, mu);
    CgResult solved = cg_solve(op, hty, cg);
    return {std::move(solved.x), solved.iterations, solved.residual};
}

double mse(const Eigen::VectorXd& x, const Eigen::VectorXd& xhat) {
    if (x.size() != xhat.size()) {
        throw Error(ErrorCode::DimensionMismatch, "mse: vectors differ in length");
    }
    return (x - xhat).squaredNorm();
}

}  // namespace dgs
