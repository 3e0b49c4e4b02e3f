#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "osc/model.hpp"
#include "osc/pseudomode.hpp"
#include "osc/quadrature.hpp"

using namespace osc;
using namespace osc::pseudomode;

namespace {

model::OscillatorSpec shifted_ho() {
    return model::make_polynomial(1, {}, {0.0, 1.0});  // x^2 + i x
}

PseudomodeParams tuned() {
    PseudomodeParams p;
    p.delta_override = 0.45;
    return p;
}

}  // namespace

TEST_CASE("base-point normalization and support containment") {
    auto spec = shifted_ho();
    auto p = tuned();
    p.n_terms = 0;
    const auto r = build(spec, {100.0, 0.0}, p);
    // u(y_beta) = chi * e^{i phi} * a_0 = 1 * 1 * 1 at the center
    const double yb = 0.5 * (r.support_lo + r.support_hi);
    CHECK(std::abs(r.evaluate(yb) - cplx{1.0, 0.0}) < 1e-10);
    CHECK(std::abs(r.evaluate(r.support_lo - 0.1)) == 0.0);
    CHECK(std::abs(r.evaluate(r.support_hi + 0.1)) == 0.0);
    CHECK(r.lower_bound == doctest::Approx(1.0 / r.q));
    CHECK(r.samples.size() == 257);
    CHECK(r.samples.front().first == doctest::Approx(r.support_lo));
}

TEST_CASE("zero-term build matches the leading WKB form on the plateau") {
    auto spec = shifted_ho();
    auto p = tuned();
    p.n_terms = 0;
    const cplx lam{100.0, 0.0};
    const auto r = build(spec, lam, p);
    const double yb = 0.5 * (r.support_lo + r.support_hi);
    const double D = r.delta_lambda;
    // independent oracle: phi by direct quadrature of -(lambda-V)^{1/2},
    // a_0 from the closed quarter-root form; chi = 1 on [yb-D, yb+D]
    auto phi_oracle = [&](double x) {
        const auto gl = quadrature::scaled_to(quadrature::gauss_legendre(200),
                                              std::min(yb, x), std::max(yb, x));
        cplx s{0.0, 0.0};
        for (size_t i = 0; i < gl.nodes.size(); ++i)
            s += gl.weights[i] *
                 -std::sqrt(lam - model::potential_eval(spec, {gl.nodes[i], 0.0}));
        return (x >= yb) ? s : -s;
    };
    for (double t : {-0.9, -0.4, 0.0, 0.3, 0.8}) {
        const double x = yb + t * D;
        const cplx a0 = std::pow(lam - model::potential_eval(spec, {yb, 0.0}), 0.25) /
                        std::pow(lam - model::potential_eval(spec, {x, 0.0}), 0.25);
        const cplx expect = std::exp(cplx{0.0, 1.0} * phi_oracle(x)) * a0;
        CHECK(std::abs(r.evaluate(x) - expect) < 1e-8 * std::abs(expect));
    }
}

TEST_CASE("analytic residual agrees with a finite-difference oracle") {
    auto spec = shifted_ho();
    const cplx lam{100.0, 0.0};
    const auto r = build(spec, lam, tuned());
    // reassemble q from (lambda - L)u computed by second differences of the
    // evaluator; trapezoid on a fine grid
    const long n = 4001;
    const double h = 1e-4;
    double num = 0.0, den = 0.0;
    const double dx = (r.support_hi - r.support_lo) / (n - 1.0);
    for (long i = 1; i + 1 < n; ++i) {
        const double x = r.support_lo + dx * i;
        const cplx u0 = r.evaluate(x);
        const cplx upp =
            (r.evaluate(x + h) - 2.0 * u0 + r.evaluate(x - h)) / (h * h);
        const cplx res =
            lam * u0 + upp - model::potential_eval(spec, {x, 0.0}) * u0;
        num += std::norm(res) * dx;
        den += std::norm(u0) * dx;
    }
    const double q_fd = std::sqrt(num / den);
    CHECK(q_fd == doctest::Approx(r.q).epsilon(0.05));
}

TEST_CASE("representation convergence: doubling cheb_order moves q < 1%") {
    auto spec = shifted_ho();
    auto p = tuned();
    const auto r1 = build(spec, {100.0, 0.0}, p);
    p.cheb_order *= 2;
    p.quad_order *= 2;
    const auto r2 = build(spec, {100.0, 0.0}, p);
    CHECK(std::abs(r1.q - r2.q) / r2.q < 0.01);
}

TEST_CASE("quality improves monotonically along the real-axis curve") {
    auto spec = shifted_ho();
    const std::vector<cplx> curve{{50.0, 0.0}, {100.0, 0.0}, {200.0, 0.0},
                                  {400.0, 0.0}};
    const auto scan = quality_scan(spec, curve, tuned());
    REQUIRE(scan.points.size() == 4);
    for (size_t i = 1; i < scan.points.size(); ++i) {
        REQUIRE(scan.points[i].ok);
        CHECK(scan.points[i].q < scan.points[i - 1].q);
    }
    CHECK(scan.eta_hat > 0.0);
    CHECK(scan.r_squared >= 0.9);
    CHECK_THROWS_AS(quality_scan(spec, {{50.0, 0.0}}, tuned()),
                    std::invalid_argument);
}

TEST_CASE("validation and error paths") {
    auto spec = shifted_ho();
    auto p = tuned();
    // inadmissible: even-degree imaginary part with beta below the envelope
    auto quartic = model::make_polynomial(2, {}, {0.0, 0.0, 1.0});
    CHECK_THROWS_AS(build(quartic, {1e4, 0.0}, p), std::domain_error);
    // branch failure: support reaches |V| >= alpha
    auto pb = tuned();
    pb.delta_override = 0.55;
    CHECK_THROWS_AS(build(spec, {100.0, 0.0}, pb), std::domain_error);
    // parameter validation
    auto bad = tuned();
    bad.epsilon = 2.0;  // >= c_b = 1
    CHECK_THROWS_AS(build(spec, {100.0, 0.0}, bad), std::invalid_argument);
    bad = tuned();
    bad.cheb_order = 8;
    CHECK_THROWS_AS(build(spec, {100.0, 0.0}, bad), std::invalid_argument);
    bad = tuned();
    bad.quad_order = bad.cheb_order;
    CHECK_THROWS_AS(build(spec, {100.0, 0.0}, bad), std::invalid_argument);
    CHECK_THROWS_AS(build(model::make_self_adjoint(2.0), {100.0, 0.0}, p),
                    std::invalid_argument);
    CHECK_THROWS_AS(build(spec, {-5.0, 0.0}, p), std::domain_error);
}

TEST_CASE("certificates against the matrix resolvent") {
    auto spec = shifted_ho();
    discretize::BasisSpec basis{128, 1.0, discretize::Assembly::Ladder};
    const auto cert = certify_against_svd(spec, basis, {50.0, 0.0}, tuned());
    CHECK(cert.holds);
    CHECK_FALSE(cert.withheld);
    CHECK(cert.defect <= 0.05);
    CHECK(cert.resolvent_norm_value > 1.0);  // near an eigenvalue, far above 1
    CHECK(cert.pm.lower_bound <= cert.resolvent_norm_value * 1.1);

    // deliberately tiny basis: defect exceeds 10%, certificate withheld
    const auto tiny = certify_against_svd(
        spec, {16, 1.0, discretize::Assembly::Ladder}, {50.0, 0.0}, tuned());
    CHECK(tiny.defect > 0.10);
    CHECK(tiny.withheld);

    // weak parameters: q > 1 flagged uninformative, trivially holds
    auto weak = tuned();
    weak.delta_override = 0.2;
    const auto un = certify_against_svd(spec, basis, {50.0, 0.0}, weak);
    CHECK(un.uninformative);
    CHECK(un.holds);
}
