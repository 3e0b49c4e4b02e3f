#ifndef OSC_COMMON_HPP
#define OSC_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace osc {

using cplx = std::complex<double>;

inline constexpr double PI = 3.14159265358979323846;

// Thrown when an adaptively truncated product/series cannot reach the
// requested tolerance within the configured term cap.  Carries the bound
// that was actually achieved.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double achieved_bound)
        : std::runtime_error(what), achieved(achieved_bound) {}
    double achieved;
};

// Thrown when an evaluation point is too close to a pole of the function
// being evaluated.
class PoleProximityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace osc

#endif
