#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "dgs/csr.hpp"
#include "dgs/error.hpp"

namespace dgs {

/// Symmetric linear map v ↦ Mv of dimension n, applied matrix-free.
class SymOperator {
public:
    using ApplyFn = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

    SymOperator(std::size_t n, ApplyFn apply) : n_(n), apply_(std::move(apply)) {}

    static SymOperator dense(Eigen::MatrixXd m);

    std::size_t dim() const { return n_; }
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const { apply_(x, y); }
    Eigen::VectorXd operator()(const Eigen::VectorXd& x) const {
        Eigen::VectorXd y(static_cast<Eigen::Index>(n_));
        apply_(x, y);
        return y;
    }

private:
    std::size_t n_;
    ApplyFn apply_;
};

struct CgOptions {
    double tol = 1e-8;   // relative to ‖b‖₂
    int max_iter = 0;    // 0 selects 10·n + 100
    /// Optional diagonal (Jacobi) preconditioner: entries of diag(M).
    std::optional<Eigen::VectorXd> jacobi;
};

struct CgResult {
    Eigen::VectorXd x;
    int iterations = 0;
    double residual = 0.0;  // ‖Mx − b‖₂ / ‖b‖₂, recomputed from scratch
};

/// Conjugate gradient for symmetric positive definite M. Throws NoConvergence
/// (carrying the best iterate) when max_iter is exhausted.
CgResult cg_solve(const SymOperator& m, const Eigen::VectorXd& b, const CgOptions& opts = {});

inline constexpr std::size_t kDefaultDenseLimit = 2000;

struct SymEig {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // orthonormal columns
};

SymEig dense_sym_eig(const Eigen::MatrixXd& m, std::size_t dense_limit = kDefaultDenseLimit);
/// Smallest eigenvalue only, same backend and limit as dense_sym_eig.
double dense_min_eig(const Eigen::MatrixXd& m, std::size_t dense_limit = kDefaultDenseLimit);

struct LanczosOptions {
    double tol = 1e-10;     // relative
    int max_iter = 0;       // total operator applications; 0 selects 20·n + 200
    int restart = 0;        // Krylov dimension per cycle; 0 selects min(n−1, 300)
    std::uint64_t seed = 0x5eed;
};

/// λ₂ of a PSD operator whose null space contains 1, via restarted Lanczos
/// with full re-orthogonalization and deflation against 1/√n.
double second_smallest_eig(const SymOperator& m, const LanczosOptions& opts = {});

/// Upper-triangular R with RᵀR = M.
Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& m);

/// Gershgorin discs of S M S⁻¹, S = diag(s).
struct DiscReport {
    Eigen::VectorXd center;
    Eigen::VectorXd radius;
    Eigen::VectorXd left_end;

    double min_left_end() const { return left_end.minCoeff(); }
};

DiscReport disc_left_ends(const Eigen::MatrixXd& m, const Eigen::VectorXd& s);
DiscReport disc_left_ends(const CsrMatrix& m, const Eigen::VectorXd& s);

}  // namespace dgs
