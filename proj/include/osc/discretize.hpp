#ifndef OSC_DISCRETIZE_HPP
#define OSC_DISCRETIZE_HPP

// Finite-dimensional representation of the operator families in a scaled
// Hermite-function basis phi_k(x) = psi_k(x/l)/sqrt(l):
//
//   Ladder path     exact tridiagonal position / kinetic matrices and matrix
//                   Horner for polynomial potentials (band-exact);
//   Quadrature path Galerkin multiplication matrices from a Gauss-Hermite
//                   rule of order 2 N_b + 32, covering |x|^b with any real
//                   b > 0 and the conjugated family's first-order term.
//
// Convergence is controlled by basis doubling: an eigenvalue is trusted when
// the N_b and 2 N_b runs agree to 1e-8 relative.

#include <vector>

#include "osc/linalg.hpp"
#include "osc/model.hpp"

namespace osc::discretize {

using linalg::Matrix;

enum class Assembly { Ladder, Quadrature };

struct BasisSpec {
    long size = 64;         // N_b >= 4
    double scaling = 1.0;   // l > 0, coordinate dilation
    Assembly assembly = Assembly::Quadrature;
};

void check_basis(const BasisSpec& basis);

// Position operator X: tridiagonal, X[k, k+1] = l sqrt((k+1)/2).
Matrix position_matrix(long n, double l);
// Kinetic operator -d^2/dx^2: pentadiagonal ladder form, scaled by 1/l^2.
Matrix kinetic_matrix(long n, double l);
// Derivative d/dx: tridiagonal skew form, scaled by 1/l.
Matrix derivative_matrix(long n, double l);

// Full operator matrix for the family.  Ladder is accepted only for
// polynomial potentials (PolynomialL, OddImaginary); everything else goes
// through the quadrature path.
Matrix assemble(const model::OscillatorSpec& spec, const BasisSpec& basis);

// Scaling l = N_b^{(1-a)/(2(a+1))} balancing kinetic and leading-potential
// magnitudes at the top basis index, with a = (leading power of V)/2.
double choose_scaling(const model::OscillatorSpec& spec, long basis_size);

struct ModeAgreement {
    cplx coarse{0.0, 0.0};  // eigenvalue at N_b
    cplx fine{0.0, 0.0};    // greedily matched eigenvalue at 2 N_b
    double gap = 0.0;       // |coarse - fine| / (1 + |fine|)
    bool trusted = false;   // gap <= 1e-8
};

struct ConvergenceReport {
    std::vector<ModeAgreement> modes;  // first m modes, modulus order
    long trusted_count = 0;
};

ConvergenceReport convergence_check(const model::OscillatorSpec& spec,
                                    const BasisSpec& basis, long m);

}  // namespace osc::discretize

#endif
