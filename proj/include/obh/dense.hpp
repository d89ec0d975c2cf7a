#pragma once
// Dense reference machinery: the image Jacobian as a sparse matrix, the
// quadratic form J^T W J, a self-contained cyclic Jacobi eigensolver, and
// the linear (quadratic-energy) reference eigenpair.
#include "obh/grid.hpp"
#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace obh {

Eigen::SparseMatrix<double> image_jacobian(const Grid& g); // rows: interior then boundary
Eigen::VectorXd image_weights(const Grid& g);              // quadrature weight per image row
Eigen::MatrixXd quadratic_form(const Grid& g);             // dense J^T W J

struct DenseEig {
    double value = 0.0;
    Eigen::VectorXd vec;
    int sweeps = 0;
    double off_final = 0.0; // off-diagonal Frobenius norm at exit
};
// Smallest eigenpair of a symmetric matrix by cyclic Jacobi rotations
// (independent of the iterative solver path by construction).
DenseEig smallest_eig_sym(Eigen::MatrixXd A);

struct BeamOracle {
    double lambda_min = 0.0;
    GridFunction u; // sign-normalized, unit weighted 2-norm
    int sweeps = 0;
};
// Reference eigenpair of the clamped quadratic problem. Only the linear
// case exists in closed dense form; p_flag != 2 throws "oracle is linear-only".
BeamOracle run_oracle_beam(const Grid& g, double p_flag = 2.0);

} // namespace obh
