#ifndef OSC_QUADRATURE_HPP
#define OSC_QUADRATURE_HPP

// Gaussian quadrature rules (Golub-Welsch on the Jacobi matrices) and
// overflow-safe evaluation of the L^2-normalized Hermite functions
//   psi_k(x) = (2^k k! sqrt(pi))^{-1/2} H_k(x) e^{-x^2/2}.

#include <vector>

namespace osc::quadrature {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// psi_0..psi_{K-1} at x.  The recurrence runs with a tracked exponent so the
// values near the classical turning point stay accurate even when
// psi_0(x) = pi^{-1/4} e^{-x^2/2} underflows; entries below the double range
// come back as 0.
std::vector<double> hermite_functions(double x, long K);

// Q-point Gauss-Hermite rule stated for *functions*: sum_i w_i f(x_i)
// approximates the plain integral of f over R, exactly when
// f(x) = p(x) e^{-x^2} with deg p <= 2Q-1.  (The classical e^{x^2}-rescaled
// weights are produced directly as 1/sum_{k<Q} psi_k(x_i)^2, which never
// overflows.)
Rule gauss_hermite(long Q);

// Q-point Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(long Q);

// Affine image of a rule on [lo, hi].
Rule scaled_to(const Rule& r, double lo, double hi);

}  // namespace osc::quadrature

#endif
