#ifndef OSC_PSEUDOMODE_HPP
#define OSC_PSEUDOMODE_HPP

// Constructive quasimodes u = chi e^{i phi} sum_j a_j for the polynomial
// family, built on a real segment around the imaginary-part turning point:
//
//   phi' = -(lambda - V)^{1/2}   (principal branch; V stays inside the right
//                                 half-plane disc on the support),
//   a_0  = (lambda-V(y_beta))^{1/4} / (lambda-V)^{1/4},
//   a_j  = phi'^{-1/2} int_{y_beta} i a_{j-1}'' / (2 phi'^{1/2}),
//
// with a mollified-bump cutoff chi supported on [y_beta-2D, y_beta+2D].  The
// residual (lambda-L)u is assembled from its analytic expansion
//   chi'' e^{i phi} sum a_j + 2 chi' e^{i phi} sum (i phi' a_j + a_j')
//     + chi e^{i phi} a_N'',
// never by differentiating u numerically.  q = ||(lambda-L)u|| / ||u||
// certifies the resolvent lower bound 1/q.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "osc/discretize.hpp"
#include "osc/model.hpp"

namespace osc::pseudomode {

struct PseudomodeParams {
    double epsilon = 0.5;                  // in (0, c_b)
    std::optional<double> delta_override;  // replaces delta = (1-zeta)/32
    std::optional<long> n_terms;           // fixed N; empty = adaptive
    long cheb_order = 200;                 // >= 16
    long quad_order = 400;                 // >= 2 * cheb_order
    double omega = 0.05;                   // even-degree envelope margin
    bool allow_inadmissible = false;
};

struct PseudomodeResult {
    cplx lambda{0.0, 0.0};
    double delta_lambda = 0.0;  // localization half-width D
    double mu_lambda = 0.0;     // D^{b+1} / sqrt(alpha)
    long n_used = 0;
    double support_lo = 0.0, support_hi = 0.0;
    double q = 0.0;             // ||(lambda-L)u|| / ||u||
    double lower_bound = 0.0;   // 1/q
    std::vector<std::pair<double, cplx>> samples;  // (x, u(x)) on the support
    std::function<cplx(double)> evaluate;          // u(x); 0 off the support
};

PseudomodeResult build(const model::OscillatorSpec& spec, cplx lambda,
                       const PseudomodeParams& params);

struct ScanPoint {
    cplx lambda{0.0, 0.0};
    double mu = 0.0;
    double q = 0.0;
    double lower_bound = 0.0;
    bool ok = false;
    std::string error;
};

struct ScanResult {
    std::vector<ScanPoint> points;
    double eta_hat = 0.0;    // slope of log(1/q) against mu
    double r_squared = 0.0;
};

// Builds along the curve (individual failures recorded, fit over successes).
ScanResult quality_scan(const model::OscillatorSpec& spec,
                        const std::vector<cplx>& curve,
                        const PseudomodeParams& params, long threads = 0);

struct Certificate {
    PseudomodeResult pm;
    double resolvent_norm_value = 0.0;
    double defect = 0.0;        // ||u - Pi u|| / ||u|| in the Hermite basis
    double slack = 0.1;
    bool holds = false;         // 1/q <= resolvent_norm * (1 + slack)
    bool withheld = false;      // defect > 10%: certificate not claimed
    bool uninformative = false; // q >= 1
};

Certificate certify_against_svd(const model::OscillatorSpec& spec,
                                const discretize::BasisSpec& basis, cplx lambda,
                                const PseudomodeParams& params,
                                double slack = 0.1);

}  // namespace osc::pseudomode

#endif
