#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

namespace dgs {

enum class ErrorCode {
    InvalidArgument,
    NodeOutOfRange,
    SelfLoop,
    NonPositiveWeight,
    DuplicateEdge,
    SinkNode,
    NotCoReachable,
    DimensionMismatch,
    NoConvergence,
    SizeLimitExceeded,
    NotPositiveDefinite,
    DegenerateSpectrum,
    InvalidRegime,
    ConstantSignal,
    Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised by iterative solvers that hit their iteration cap. Carries the best
/// iterate seen so callers can still use a partial answer.
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, Eigen::VectorXd best, double residual, int iterations)
        : Error(ErrorCode::NoConvergence, what),
          best_(std::move(best)),
          residual_(residual),
          iterations_(iterations) {}

    const Eigen::VectorXd& best_iterate() const noexcept { return best_; }
    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    Eigen::VectorXd best_;
    double residual_;
    int iterations_;
};

}  // namespace dgs
