#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <vector>

namespace cns {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplets = std::vector<Eigen::Triplet<double>>;

/// LU factorization with a relative-residual acceptance check.
class SparseSolver {
public:
    explicit SparseSolver(SparseMatrix a, double tol = 1e-10);

    /// Solves A x = b; throws SolverDiverged when ||Ax-b|| > tol ||b||.
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

    const SparseMatrix& matrix() const noexcept { return a_; }
    double tolerance() const noexcept { return tol_; }

private:
    SparseMatrix a_;
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
    double tol_;
};

SparseMatrix build_matrix(int rows, int cols, const Triplets& t);

} // namespace cns
