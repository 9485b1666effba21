#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace dgs {

using NodeId = std::int32_t;

/// Square sparse matrix in compressed sparse row form. Column indices within a
/// row are strictly ascending.
struct CsrMatrix {
    std::size_t n = 0;
    std::vector<std::size_t> row_offsets{0};
    std::vector<NodeId> col_indices;
    std::vector<double> values;

    std::size_t nnz() const { return values.size(); }

    std::size_t row_begin(std::size_t i) const { return row_offsets[i]; }
    std::size_t row_end(std::size_t i) const { return row_offsets[i + 1]; }

    /// y = M x
    void multiply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;

    /// Value at (i, j), zero when not stored. Binary search within the row.
    double at(std::size_t i, std::size_t j) const;

    CsrMatrix transposed() const;
    Eigen::MatrixXd to_dense() const;
};

}  // namespace dgs
