#ifndef OSC_GAUGE_HPP
#define OSC_GAUGE_HPP

// Entire "gauge" product F(w) = prod_k (1 + w/a_k) with power-distributed
// zeros a_k = (k/nu)^{1/rho}, 0 < rho < 1, together with its derivative at
// the zeros and the partial-fraction decompositions of 1/F (including the
// p-power variants).  All evaluations are adaptively truncated against the
// spec'd tolerance and accumulate products in log space.

#include <complex>

#include "osc/common.hpp"

namespace osc::gauge {

struct GaugeSpec {
    double nu = 1.0;             // zero density parameter, > 0
    double rho = 0.5;            // exponential order, in (0,1)
    double tail_tolerance = 1e-10;
    long max_terms = 100'000'000;

    void check() const;          // throws std::invalid_argument on violation
};

// Value of F held as (log-magnitude, accumulated argument) so that |F| far
// beyond double range stays representable.  The argument is the sum of the
// per-factor arguments (each in (-pi, pi]), i.e. the total winding is kept.
struct FValue {
    double log_abs = 0.0;
    double arg = 0.0;
    long terms_used = 0;
    double tail_bound = 0.0;     // bound on the neglected log-tail
    bool exact_zero = false;     // w hit a zero of F exactly

    std::complex<double> value() const {
        if (exact_zero) return {0.0, 0.0};
        const double m = std::exp(log_abs);
        return {m * std::cos(arg), m * std::sin(arg)};
    }
};

struct PfdReport {
    std::complex<double> value_direct{0.0, 0.0};
    std::complex<double> value_series{0.0, 0.0};
    double residual = 0.0;
    long terms_used = 0;
};

// k-th zero magnitude a_k = (k/nu)^{1/rho}.
double zero(const GaugeSpec& g, long k);

// Truncated product for F(w); throws TruncationError if the tail bound
// cannot be brought under g.tail_tolerance within g.max_terms factors.
FValue eval_F(const GaugeSpec& g, std::complex<double> w);

// Leading term of log|F(r e^{i theta})|:  pi nu r^rho cos(theta rho) / sin(pi rho).
// Requires |theta| < pi.
double log_asymptote(const GaugeSpec& g, double r, double theta);

// A(n;b) = (-1)^{n-1} prod_{k != n} (1 - n^b/k^b), b > 1.  Computed through
// the paired-factor form: the b=2 product telescopes to exactly 1/2, and the
// remaining factors (1-(n/k)^b)/(1-(n/k)^2) are smooth in k, which removes
// the cancellation of the raw product near k = n.  Result is positive.
double a_product(long n, double b, double tolerance, long max_terms = 100'000'000);
double log_a_product(long n, double b, double tolerance, long max_terms = 100'000'000);

// F'(-a_n) = (-1)^{n-1} (nu/n)^b A(n;b) with b = 1/rho.
std::complex<double> f_prime_at_zero(const GaugeSpec& g, long n);
// log |F'(-a_n)| (usable where the value itself would overflow).
double log_abs_f_prime_at_zero(const GaugeSpec& g, long n);

// Distance below which w counts as sitting on a pole of 1/F.
double pole_exclusion_radius(const GaugeSpec& g, std::complex<double> w);

// Partial fractions of 1/F for rho < 1/2:
//   1/F(w) = sum_n 1/(F'(-a_n) (w + a_n)).
// terms <= 0 requests adaptive truncation.
PfdReport pfd_eval(const GaugeSpec& g, std::complex<double> w, long terms = 0);

// rho = 1/2 alternating variant 1/F(w) = 1 + 2 sum_n (-1)^n w/(w+a_n),
// summed in adjacent pairs (set paired = false to reproduce the raw
// conditionally convergent ordering for comparison).  The reference value is
// the closed form (pi nu sqrt(w)) / sinh(pi nu sqrt(w)).
PfdReport pfd_half_eval(const GaugeSpec& g, std::complex<double> w,
                        long terms = 0, bool paired = true);

// Closed form of 1/F at rho = 1/2.
std::complex<double> half_closed_form(const GaugeSpec& g, std::complex<double> w);

// |LHS - RHS| of the Cauchy-kernel decomposition of 1/((z-w) F(w))
// (rho < 1/2 series or the rho = 1/2 alternating form, chosen from g.rho).
double cauchy_kernel_pfd(const GaugeSpec& g, std::complex<double> z,
                         std::complex<double> w);

// |LHS - RHS| of the p-power variant decomposing 1/((z-w) F(w^p)).
// p = 1 reduces exactly to cauchy_kernel_pfd.
double power_pfd(const GaugeSpec& g, std::complex<double> z,
                 std::complex<double> w, int p);

}  // namespace osc::gauge

#endif
