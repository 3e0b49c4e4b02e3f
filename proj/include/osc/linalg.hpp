#ifndef OSC_LINALG_HPP
#define OSC_LINALG_HPP

// Dense complex kernels: nonsymmetric eigendecomposition with paired left and
// right eigenvectors, smallest singular value, and a compensated inner
// product for resolving tiny biorthogonal overlaps.
//
// The eigendecomposition runs on a single Schur factorization (balancing +
// Hessenberg + implicit-shift QR inside Eigen); both eigenvector families are
// extracted from the same triangular factor by substitution, which guarantees
// that left/right vectors are paired to the same eigenvalue.

#include <Eigen/Dense>
#include <vector>

#include "osc/common.hpp"

namespace osc::linalg {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct EigenDecomposition {
    std::vector<cplx> values;            // sorted by (|lambda|, arg lambda)
    Matrix right;                        // unit right eigenvectors (columns)
    Matrix left;                         // unit left eigenvectors (columns):
                                         // A^* w_i = conj(lambda_i) w_i
    std::vector<double> backward_residuals;  // per pair, relative to ||A||_F
};

// Eigendecomposition of a general complex square matrix.
EigenDecomposition eig(const Matrix& A, double tol = 1e-12);

// Smallest singular value (resolvent norms are 1/smallest_singular(zI - A)).
double smallest_singular(const Matrix& A);

struct DotResult {
    cplx value{0.0, 0.0};
    double error_bound = 0.0;
};

// Inner product sum_i conj(y_i) x_i accumulated with error-free
// transformations (twofold working precision); error bound ~ u|value| +
// O(u^2 sum |x_i||y_i|).
DotResult compensated_dot(const Vector& x, const Vector& y);

// Greedy nearest matching of `from[i]` onto indices of `to` (used when
// comparing eigenvalue lists from two runs, which are reordered
// nondeterministically by the QR iteration).
std::vector<long> greedy_nearest_pairing(const std::vector<cplx>& from,
                                         const std::vector<cplx>& to);

}  // namespace osc::linalg

#endif
