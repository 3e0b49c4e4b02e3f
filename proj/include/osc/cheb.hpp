#ifndef OSC_CHEB_HPP
#define OSC_CHEB_HPP

// Chebyshev series on an interval [lo, hi] with complex coefficients:
// fitting at the Chebyshev-Gauss points, Clenshaw evaluation, and the
// coefficient recurrences for derivative and antiderivative.  Used for the
// analytic functions of the quasimode construction, where spectral accuracy
// and stable repeated differentiation are required.

#include <functional>
#include <vector>

#include "osc/common.hpp"

namespace osc::cheb {

// Chebyshev-Gauss points mapped to [lo, hi], k = 0..n-1.
std::vector<double> points(double lo, double hi, long n);

struct Series {
    double lo = -1.0, hi = 1.0;
    std::vector<cplx> coef;  // c_0 .. c_{n-1}

    cplx eval(double x) const;                   // Clenshaw recurrence
    std::vector<cplx> eval(const std::vector<double>& xs) const;
    Series derivative() const;
    Series antiderivative(double x0) const;      // vanishes at x0
    // fraction of coefficient mass in the top `k` coefficients (convergence
    // diagnostic; small for well-resolved analytic functions)
    double tail_fraction(long k = 4) const;
};

// Series interpolating the given values at points(lo, hi, values.size()).
Series from_values(double lo, double hi, const std::vector<cplx>& values);

// Series of f sampled at n Chebyshev-Gauss points.
Series fit(double lo, double hi, long n, const std::function<cplx(double)>& f);

}  // namespace osc::cheb

#endif
