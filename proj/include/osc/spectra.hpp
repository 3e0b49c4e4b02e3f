#ifndef OSC_SPECTRA_HPP
#define OSC_SPECTRA_HPP

// Ordered biorthogonal spectra with rank-one Riesz projections, resolvent
// norms and pseudospectra grids, growth-order fits, and matrix-level checks
// of the operator partial-fraction identities (the infinite gauge-product
// decomposition and its finite factorial analogue).

#include <vector>

#include "osc/discretize.hpp"
#include "osc/gauge.hpp"
#include "osc/linalg.hpp"
#include "osc/model.hpp"

namespace osc::spectra {

using linalg::Matrix;
using linalg::Vector;

struct Mode {
    cplx lambda{0.0, 0.0};
    Vector right;                 // unit right eigenvector f_n
    Vector left;                  // unit left eigenvector g_n
    cplx overlap{0.0, 0.0};       // s_n = <f_n, g_n> (compensated)
    double projection_norm = 0.0; // ||P_n|| = 1/|s_n|
    bool trusted = false;
    bool precision_limited = false;  // |s_n| below the double-precision floor
};

struct Spectrum {
    std::vector<Mode> modes;  // ordered by (|lambda|, arg lambda)
    long trusted_count = 0;
};

// Spectrum of an explicitly assembled family; trust from basis doubling plus
// near-degenerate clustering (modes closer than 1e-6 (1+|lambda|) are
// grouped untrusted).
Spectrum compute_spectrum(const model::OscillatorSpec& spec,
                          const discretize::BasisSpec& basis, long m);

// Spectrum of a direct matrix input (all modes trusted except clusters).
Spectrum spectrum_from_matrix(const Matrix& A);

// (n, ||P_n||) over trusted modes (1-based n in modulus order).  Throws if
// an untrusted index is requested via `indices`.
std::vector<std::pair<long, double>> projection_norms(
    const Spectrum& s, const std::vector<long>& indices = {});

struct ResolventSample {
    cplx z{0.0, 0.0};
    double norm = 0.0;              // 1 / sigma_min(zI - A)
    double dist_to_spectrum = 0.0;  // to the trusted modes
};

ResolventSample resolvent_sample(const Matrix& A, const std::vector<cplx>& spectrum,
                                 cplx z);
ResolventSample resolvent_norm(const model::OscillatorSpec& spec,
                               const discretize::BasisSpec& basis, cplx z);

struct Rect {
    double re_lo = 0.0, re_hi = 1.0;
    double im_lo = 0.0, im_hi = 1.0;
};

// Row-major nx-by-ny grid of resolvent samples (x = Re fast axis), evaluated
// in parallel over a shared read-only matrix.
std::vector<ResolventSample> pseudospectra_grid(const Matrix& A,
                                                const std::vector<cplx>& spectrum,
                                                const Rect& rect, long nx, long ny,
                                                long threads = 0);

// Spectral-norm residual of the gauge-product decomposition at matrix level:
//   sum_j P_j / ((z - lambda_j) F(lambda_j))
//     vs  (1/F(z)) (zI - A)^{-1} + sum_{n <= terms} (a_n I + A)^{-1} /
//                                   ((z + a_n) F'(-a_n)).
// Requires a diagonalizable A with spectrum in the open right half-plane and
// off the pole set; terms <= 0 requests adaptive truncation.
double bz_identity_check(const Matrix& A, const gauge::GaugeSpec& g, cplx z,
                         long terms = 0);

// Finite factorial analogue with Phi(w) = prod_{k=1..m} (w + k): exact
// identity, residual is floating-point noise.
double davies_identity_check(const Matrix& A, cplx z, long m);

struct GrowthFit {
    double gamma_hat = 0.0;   // slope of log(value) against n^sigma
    double intercept = 0.0;
    double r_squared = 0.0;
};

GrowthFit fit_growth(const std::vector<std::pair<long, double>>& norms,
                     double sigma);

struct OrderFit {
    double sigma_hat = 0.0;   // slope of log log(value) against log n
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Order-free mode: estimates sigma itself (points with log(value) <= 0 are
// skipped; at least 5 must survive).
OrderFit fit_growth_order(const std::vector<std::pair<long, double>>& norms);

// Max angular deviation |arg lambda_n - pi/(b+2)| over trusted modes.
double ray_angle_check(const Spectrum& s, double b);

}  // namespace osc::spectra

#endif
