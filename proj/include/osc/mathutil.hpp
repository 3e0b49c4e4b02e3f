#ifndef OSC_MATHUTIL_HPP
#define OSC_MATHUTIL_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace osc {

// Tail of the p-series: sum_{k > K} k^{-s} for s > 1, via Euler-Maclaurin
// with expansion point a = K + 1.  Accurate to ~a^{-s-7} relative once
// a >= ~20, which is far below the tolerances used anywhere in this project.
inline double zeta_tail(double s, long K) {
    const double a = static_cast<double>(K) + 1.0;
    const double as = std::pow(a, -s);
    double z = std::pow(a, 1.0 - s) / (s - 1.0);
    z += 0.5 * as;
    z += s * as / a / 12.0;
    z -= s * (s + 1.0) * (s + 2.0) * as / (a * a * a) / 720.0;
    z += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * as /
         (a * a * a * a * a) / 30240.0;
    return z;
}

inline double log_beta(double x, double y) {
    return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
}

// Simple blocked parallel-for over [0, n).  Results must be written to
// preallocated disjoint slots so output is deterministic regardless of the
// thread count.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t nt = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += nt) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace osc

#endif
