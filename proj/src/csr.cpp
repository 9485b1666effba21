#include "dgs/csr.hpp"

#include <algorithm>

namespace dgs {

void CsrMatrix::multiply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    y.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t e = row_offsets[i]; e < row_offsets[i + 1]; ++e) {
            acc += values[e] * x[col_indices[e]];
        }
        y[static_cast<Eigen::Index>(i)] = acc;
    }
}

Eigen::VectorXd CsrMatrix::multiply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y;
    multiply(x, y);
    return y;
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
    auto first = col_indices.begin() + static_cast<std::ptrdiff_t>(row_offsets[i]);
    auto last = col_indices.begin() + static_cast<std::ptrdiff_t>(row_offsets[i + 1]);
    auto it = std::lower_bound(first, last, static_cast<NodeId>(j));
    if (it == last || *it != static_cast<NodeId>(j)) {
        return 0.0;
    }
    return values[static_cast<std::size_t>(it - col_indices.begin())];
}

CsrMatrix CsrMatrix::transposed() const {
    CsrMatrix t;
    t.n = n;
    t.row_offsets.assign(n + 1, 0);
    for (NodeId c : col_indices) {
        ++t.row_offsets[static_cast<std::size_t>(c) + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        t.row_offsets[i + 1] += t.row_offsets[i];
    }
    t.col_indices.resize(nnz());
    t.values.resize(nnz());
    std::vector<std::size_t> cursor(t.row_offsets.begin(), t.row_offsets.end() - 1);
    // Rows are visited in ascending order, so each transposed row comes out sorted.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t e = row_offsets[i]; e < row_offsets[i + 1]; ++e) {
            std::size_t slot = cursor[static_cast<std::size_t>(col_indices[e])]++;
            t.col_indices[slot] = static_cast<NodeId>(i);
            t.values[slot] = values[e];
        }
    }
    return t;
}

Eigen::MatrixXd CsrMatrix::to_dense() const {
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t e = row_offsets[i]; e < row_offsets[i + 1]; ++e) {
            m(static_cast<Eigen::Index>(i), col_indices[e]) = values[e];
        }
    }
    return m;
}

}  // namespace dgs
