#include "osc/cheb.hpp"

#include <cmath>
#include <stdexcept>

namespace osc::cheb {

std::vector<double> points(double lo, double hi, long n) {
    if (n < 1) throw std::invalid_argument("cheb::points: n >= 1");
    std::vector<double> xs(static_cast<size_t>(n));
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (long k = 0; k < n; ++k)
        xs[static_cast<size_t>(k)] =
            mid + half * std::cos((k + 0.5) * PI / static_cast<double>(n));
    return xs;
}

cplx Series::eval(double x) const {
    const double t = (2.0 * x - lo - hi) / (hi - lo);
    cplx b1{0.0, 0.0}, b2{0.0, 0.0};
    for (size_t j = coef.size(); j-- > 1;) {
        const cplx b0 = 2.0 * t * b1 - b2 + coef[j];
        b2 = b1;
        b1 = b0;
    }
    return t * b1 - b2 + (coef.empty() ? cplx{0.0, 0.0} : coef[0]);
}

std::vector<cplx> Series::eval(const std::vector<double>& xs) const {
    std::vector<cplx> out(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) out[i] = eval(xs[i]);
    return out;
}

Series Series::derivative() const {
    const long n = static_cast<long>(coef.size());
    Series d;
    d.lo = lo;
    d.hi = hi;
    d.coef.assign(static_cast<size_t>(std::max(1L, n - 1)), cplx{0.0, 0.0});
    if (n < 2) return d;
    const double s = 2.0 / (hi - lo);
    cplx next{0.0, 0.0}, after{0.0, 0.0};  // d_{k+1}, d_{k+2}
    for (long k = n - 2; k >= 0; --k) {
        const cplx dk = after + 2.0 * (k + 1.0) * coef[static_cast<size_t>(k + 1)];
        d.coef[static_cast<size_t>(k)] = s * dk;
        after = next;
        next = dk;
    }
    d.coef[0] *= 0.5;
    return d;
}

Series Series::antiderivative(double x0) const {
    const long n = static_cast<long>(coef.size());
    Series A;
    A.lo = lo;
    A.hi = hi;
    A.coef.assign(static_cast<size_t>(n + 1), cplx{0.0, 0.0});
    const double s = 0.25 * (hi - lo);
    auto c = [&](long k) -> cplx {
        if (k < 0 || k >= n) return {0.0, 0.0};
        cplx v = coef[static_cast<size_t>(k)];
        if (k == 0) v *= 2.0;  // work with the 2c_0 convention internally
        return v;
    };
    for (long k = 1; k <= n; ++k)
        A.coef[static_cast<size_t>(k)] = s * (c(k - 1) - c(k + 1)) / static_cast<double>(k);
    A.coef[0] -= A.eval(x0);
    return A;
}

double Series::tail_fraction(long k) const {
    double total = 0.0, tail = 0.0;
    const long n = static_cast<long>(coef.size());
    for (long j = 0; j < n; ++j) {
        const double m = std::abs(coef[static_cast<size_t>(j)]);
        total += m;
        if (j >= n - k) tail += m;
    }
    return (total == 0.0) ? 0.0 : tail / total;
}

Series from_values(double lo, double hi, const std::vector<cplx>& values) {
    const long n = static_cast<long>(values.size());
    if (n < 1) throw std::invalid_argument("cheb::from_values: empty sample");
    Series s;
    s.lo = lo;
    s.hi = hi;
    s.coef.assign(static_cast<size_t>(n), cplx{0.0, 0.0});
    for (long j = 0; j < n; ++j) {
        cplx acc{0.0, 0.0};
        for (long k = 0; k < n; ++k)
            acc += values[static_cast<size_t>(k)] *
                   std::cos(j * (k + 0.5) * PI / static_cast<double>(n));
        s.coef[static_cast<size_t>(j)] =
            acc * ((j == 0 ? 1.0 : 2.0) / static_cast<double>(n));
    }
    return s;
}

Series fit(double lo, double hi, long n, const std::function<cplx(double)>& f) {
    const auto xs = points(lo, hi, n);
    std::vector<cplx> vals(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) vals[i] = f(xs[i]);
    return from_values(lo, hi, vals);
}

}  // namespace osc::cheb
