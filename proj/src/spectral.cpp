#include "dgs/spectral.hpp"

#include "dgs/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace dgs {

SymOperator SymOperator::dense(Eigen::MatrixXd m) {
    const auto n = static_cast<std::size_t>(m.rows());
    return SymOperator(n, [m = std::move(m)](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        y.noalias() = m * x;
    });
}

CgResult cg_solve(const SymOperator& m, const Eigen::VectorXd& b, const CgOptions& opts) {
    const auto n = static_cast<Eigen::Index>(m.dim());
    if (b.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "cg_solve: rhs has wrong length");
    }
    if (!(opts.tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "cg_solve: tolerance must be positive");
    }
    if (opts.jacobi && opts.jacobi->size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "cg_solve: preconditioner has wrong length");
    }
    const int max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * static_cast<int>(n) + 100;

    CgResult result;
    result.x = Eigen::VectorXd::Zero(n);
    const double b_norm = b.norm();
    if (b_norm == 0.0) {
        return result;
    }
    const double target = opts.tol * b_norm;

    auto precondition = [&](const Eigen::VectorXd& r) -> Eigen::VectorXd {
        if (opts.jacobi) {
            return r.cwiseQuotient(*opts.jacobi);
        }
        return r;
    };

    Eigen::VectorXd r = b;
    Eigen::VectorXd z = precondition(r);
    Eigen::VectorXd p = z;
    Eigen::VectorXd q(n);
    double rz = r.dot(z);
    double r_norm = b_norm;

    Eigen::VectorXd best = result.x;
    double best_norm = b_norm;

    int it = 0;
    while (it < max_iter) {
        m.apply(p, q);
        const double pq = p.dot(q);
        if (!(pq > 0.0)) {
            throw Error(ErrorCode::NotPositiveDefinite, "cg_solve: operator is not positive definite");
        }
        const double alpha = rz / pq;
        result.x += alpha * p;
        r -= alpha * q;
        ++it;
        r_norm = r.norm();
        if (r_norm < best_norm) {
            best_norm = r_norm;
            best = result.x;
        }
        if (r_norm <= target) {
            // The recurrence drifts from the true residual; confirm before accepting.
            Eigen::VectorXd mx(n);
            m.apply(result.x, mx);
            r = b - mx;
            r_norm = r.norm();
            if (r_norm <= target) {
                result.iterations = it;
                result.residual = r_norm / b_norm;
                return result;
            }
            z = precondition(r);
            p = z;
            rz = r.dot(z);
            continue;
        }
        z = precondition(r);
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    throw NoConvergence("cg_solve: no convergence after " + std::to_string(it) + " iterations",
                        std::move(best), best_norm / b_norm, it);
}

SymEig dense_sym_eig(const Eigen::MatrixXd& m, std::size_t dense_limit) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "dense_sym_eig: matrix is not square");
    }
    if (static_cast<std::size_t>(m.rows()) > dense_limit) {
        throw Error(ErrorCode::SizeLimitExceeded,
                    "dense_sym_eig: n = " + std::to_string(m.rows()) + " exceeds limit " +
                        std::to_string(dense_limit));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NoConvergence, "dense_sym_eig: eigensolver failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double dense_min_eig(const Eigen::MatrixXd& m, std::size_t dense_limit) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "dense_min_eig: matrix is not square");
    }
    if (static_cast<std::size_t>(m.rows()) > dense_limit) {
        throw Error(ErrorCode::SizeLimitExceeded, "dense_min_eig: matrix exceeds dense limit");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NoConvergence, "dense_min_eig: eigensolver failed");
    }
    return solver.eigenvalues()[0];
}

namespace {

void deflate(Eigen::VectorXd& v, double inv_sqrt_n) {
    v.array() -= v.sum() * inv_sqrt_n * inv_sqrt_n;
}

}  // namespace

double second_smallest_eig(const SymOperator& m, const LanczosOptions& opts) {
    const std::size_t n = m.dim();
    if (n < 2) {
        throw Error(ErrorCode::InvalidArgument, "second_smallest_eig: need n >= 2");
    }
    const auto dim = static_cast<Eigen::Index>(n);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    const int krylov = opts.restart > 0 ? std::min<int>(opts.restart, static_cast<int>(n) - 1)
                                        : std::min<int>(static_cast<int>(n) - 1, 300);
    const int max_iter = opts.max_iter > 0 ? opts.max_iter : 20 * static_cast<int>(n) + 200;

    Rng rng(opts.seed);
    std::normal_distribution<double> normal;
    Eigen::VectorXd start(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        start[i] = normal(rng);
    }

    Eigen::MatrixXd basis(dim, krylov);
    std::vector<double> alpha;
    std::vector<double> beta;
    Eigen::VectorXd w(dim);
    int applications = 0;
    double theta = 0.0;
    double residual = std::numeric_limits<double>::infinity();

    while (applications < max_iter) {
        deflate(start, inv_sqrt_n);
        const double start_norm = start.norm();
        if (start_norm == 0.0) {
            return 0.0;
        }
        basis.col(0) = start / start_norm;
        alpha.clear();
        beta.clear();
        double scale = 0.0;
        bool invariant = false;

        // Ritz pair for the smallest eigenvalue of the leading steps×steps block.
        Eigen::VectorXd y;
        auto ritz = [&](int steps) {
            Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), steps);
            Eigen::VectorXd sub(std::max(steps - 1, 0));
            for (int k = 0; k + 1 < steps; ++k) {
                sub[k] = beta[static_cast<std::size_t>(k)];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
            tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
            theta = tri.eigenvalues()[0];
            y = tri.eigenvectors().col(0);
            residual = std::abs(beta[static_cast<std::size_t>(steps - 1)] * y[steps - 1]);
        };
        auto converged = [&] { return residual <= opts.tol * std::abs(theta) || residual <= 1e-13 * scale; };

        int steps = 0;
        while (steps < krylov && applications < max_iter) {
            const int j = steps;
            m.apply(basis.col(j), w);
            ++applications;
            alpha.push_back(basis.col(j).dot(w));
            // Full re-orthogonalization (two passes) against 1 and the basis.
            for (int pass = 0; pass < 2; ++pass) {
                deflate(w, inv_sqrt_n);
                const auto v = basis.leftCols(j + 1);
                w.noalias() -= v * (v.transpose() * w);
            }
            const double b = w.norm();
            scale = std::max(scale, std::abs(alpha.back()) + b + (beta.empty() ? 0.0 : beta.back()));
            beta.push_back(b);
            ++steps;
            if (b <= 1e-14 * std::max(scale, 1e-300)) {
                invariant = true;
                break;
            }
            if (steps % 10 == 0) {
                ritz(steps);
                if (converged()) {
                    return std::max(theta, 0.0);
                }
            }
            if (steps < krylov) {
                basis.col(steps) = w / b;
            }
        }

        ritz(steps);
        if (invariant || converged()) {
            return std::max(theta, 0.0);
        }
        // Explicit restart from the current Ritz vector.
        start = basis.leftCols(steps) * y;
    }
    throw NoConvergence("second_smallest_eig: Lanczos did not converge (residual " +
                            std::to_string(residual) + ")",
                        Eigen::VectorXd::Constant(1, theta), residual, applications);
}

Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "cholesky_factor: matrix is not square");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::NotPositiveDefinite, "cholesky_factor: matrix is not positive definite");
    }
    return llt.matrixU();
}

namespace {

void check_scales(const Eigen::VectorXd& s, Eigen::Index n) {
    if (s.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "disc_left_ends: scale vector has wrong length");
    }
    if (!(s.array() > 0.0).all()) {
        throw Error(ErrorCode::InvalidArgument, "disc_left_ends: scales must be positive");
    }
}

}  // namespace

DiscReport disc_left_ends(const Eigen::MatrixXd& m, const Eigen::VectorXd& s) {
    const Eigen::Index n = m.rows();
    if (m.cols() != n) {
        throw Error(ErrorCode::DimensionMismatch, "disc_left_ends: matrix is not square");
    }
    check_scales(s, n);
    DiscReport report{Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        double radius = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != i) {
                radius += std::abs(m(i, j)) / s[j];
            }
        }
        report.center[i] = m(i, i);
        report.radius[i] = s[i] * radius;
        report.left_end[i] = report.center[i] - report.radius[i];
    }
    return report;
}

DiscReport disc_left_ends(const CsrMatrix& m, const Eigen::VectorXd& s) {
    const auto n = static_cast<Eigen::Index>(m.n);
    check_scales(s, n);
    DiscReport report{Eigen::VectorXd::Zero(n), Eigen::VectorXd(n), Eigen::VectorXd(n)};
    for (std::size_t i = 0; i < m.n; ++i) {
        double radius = 0.0;
        for (std::size_t e = m.row_begin(i); e < m.row_end(i); ++e) {
            const auto j = static_cast<std::size_t>(m.col_indices[e]);
            if (j == i) {
                report.center[static_cast<Eigen::Index>(i)] = m.values[e];
            } else {
                radius += std::abs(m.values[e]) / s[static_cast<Eigen::Index>(j)];
            }
        }
        const auto ii = static_cast<Eigen::Index>(i);
        report.radius[ii] = s[ii] * radius;
        report.left_end[ii] = report.center[ii] - report.radius[ii];
    }
    return report;
}

}  // namespace dgs
