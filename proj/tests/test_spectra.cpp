#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "osc/spectra.hpp"

using namespace osc;
using namespace osc::spectra;
using discretize::Assembly;
using discretize::BasisSpec;

namespace {

Matrix random_real_matrix(long n, unsigned seed, double scale) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-scale, scale);
    Matrix A(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) A(i, j) = cplx(uni(rng), uni(rng));
    return A;
}

Matrix diagonalizable_with(const std::vector<cplx>& lams, unsigned seed) {
    const long n = static_cast<long>(lams.size());
    Matrix D = Matrix::Zero(n, n);
    for (long i = 0; i < n; ++i) D(i, i) = lams[static_cast<size_t>(i)];
    Matrix P = Matrix::Identity(n, n) + random_real_matrix(n, seed, 0.2);
    return P * D * P.inverse();
}

}  // namespace

TEST_CASE("self-adjoint spectrum: unit overlaps and projections") {
    auto spec = model::make_self_adjoint(2.0);
    const auto s =
        compute_spectrum(spec, {48, 1.0, Assembly::Ladder}, 10);
    CHECK(s.trusted_count == 10);
    long n = 1;
    for (const auto& m : s.modes) {
        CHECK(std::abs(m.lambda - cplx(2.0 * n - 1.0, 0.0)) < 1e-10);
        CHECK(std::abs(std::abs(m.overlap) - 1.0) < 1e-12);
        CHECK(std::abs(m.projection_norm - 1.0) < 1e-12);
        CHECK(m.projection_norm >= 1.0 - 1e-10);
        ++n;
    }
}

TEST_CASE("shifted oscillator spectrum: 2n-1+1/4") {
    auto spec = model::make_polynomial(1, {}, {0.0, 1.0});
    const auto s = compute_spectrum(spec, {64, 1.0, Assembly::Ladder}, 12);
    CHECK(s.trusted_count == 12);
    long n = 1;
    for (const auto& m : s.modes) {
        CHECK(std::abs(m.lambda - cplx(2.0 * n - 0.75, 0.0)) < 1e-9);
        ++n;
    }
}

TEST_CASE("direct matrix input: [[0,1],[0,1]] projection norms sqrt(2)") {
    Matrix B(2, 2);
    B << 0.0, 1.0, 0.0, 1.0;
    const auto s = spectrum_from_matrix(B);
    REQUIRE(s.modes.size() == 2);
    CHECK(s.modes[0].projection_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(s.modes[1].projection_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("projection_norms: untrusted cluster is refused") {
    Matrix D = Matrix::Zero(3, 3);
    D(0, 0) = 1.0;
    D(1, 1) = 1.0 + 1e-9;  // near-degenerate pair -> untrusted cluster
    D(2, 2) = 5.0;
    const auto s = spectrum_from_matrix(D);
    CHECK(s.trusted_count == 1);
    const auto ok = projection_norms(s, {3});
    CHECK(ok[0].second == doctest::Approx(1.0));
    CHECK_THROWS_AS(projection_norms(s, {1}), std::invalid_argument);
    CHECK_THROWS_AS(projection_norms(s, {4}), std::invalid_argument);
    // default listing skips the cluster
    CHECK(projection_norms(s).size() == 1);
}

TEST_CASE("shifted oscillator projection norms track the closed model") {
    // alpha_1 = i: ||P_n|| ~ 2^{-3/4} (pi)^{-1/2} e^{sqrt(2 n)} n^{-1/4}
    auto spec = model::make_polynomial(1, {}, {0.0, 1.0});
    const auto s = compute_spectrum(spec, {128, 1.0, Assembly::Ladder}, 30);
    for (long n = 10; n <= 30; ++n) {
        const auto& m = s.modes[static_cast<size_t>(n - 1)];
        REQUIRE(m.trusted);
        const double predicted = std::pow(2.0, -0.75) / std::sqrt(PI) *
                                 std::exp(std::sqrt(2.0 * n)) *
                                 std::pow(static_cast<double>(n), -0.25);
        const double ratio = m.projection_norm / predicted;
        CHECK(ratio > 0.85);
        CHECK(ratio < 1.15);
    }
}

TEST_CASE("imaginary quadratic family: projection growth and ray angle") {
    auto spec = model::make_even_imaginary(2.0);
    const auto s = compute_spectrum(spec, {160, 1.0, Assembly::Ladder}, 24);
    CHECK(s.trusted_count >= 20);
    std::vector<std::pair<long, double>> norms;
    for (long n = 10; n <= 24; ++n) {
        const auto& m = s.modes[static_cast<size_t>(n - 1)];
        if (m.trusted) norms.emplace_back(n, m.projection_norm);
    }
    REQUIRE(norms.size() >= 10);
    const auto fit = fit_growth(norms, 1.0);
    const double target = std::log(1.0 + std::sqrt(2.0));
    CHECK(std::abs(fit.gamma_hat - target) / target < 0.05);
    CHECK(fit.r_squared > 0.99);
    CHECK(ray_angle_check(s, 2.0) <= 1e-3);
}

TEST_CASE("resolvent samples: normal matrix and non-normality witness") {
    Matrix D = Matrix::Zero(3, 3);
    D(0, 0) = 1.0;
    D(1, 1) = cplx(2.0, 1.0);
    D(2, 2) = cplx(0.0, -3.0);
    std::vector<cplx> lams{D(0, 0), D(1, 1), D(2, 2)};
    const auto r = resolvent_sample(D, lams, {0.5, 0.5});
    CHECK(r.norm == doctest::Approx(1.0 / r.dist_to_spectrum).epsilon(1e-10));
    CHECK(r.norm * r.dist_to_spectrum >= 1.0 - 1e-8);

    // accretive family at z = -t
    auto spec = model::make_polynomial(1, {}, {0.0, 1.0});
    BasisSpec basis{48, 1.0, Assembly::Ladder};
    const double t = 1.0;
    const auto acc = resolvent_norm(spec, basis, {-t, 0.0});
    CHECK(acc.norm <= 1.0 / t + 1e-8);
    // between the two lowest eigenvalues the norm strictly exceeds 1/dist
    const auto mid = resolvent_norm(spec, basis, {2.25, 0.0});
    CHECK(mid.dist_to_spectrum == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(mid.norm > 1.0 / mid.dist_to_spectrum * (1.0 + 1e-6));
    CHECK(mid.norm * mid.dist_to_spectrum >= 1.0 - 1e-8);
}

TEST_CASE("pseudospectra grid: correctness, degeneracy, determinism") {
    Matrix D = Matrix::Zero(2, 2);
    D(0, 0) = 1.0;
    D(1, 1) = cplx(0.0, 2.0);
    std::vector<cplx> lams{D(0, 0), D(1, 1)};
    Rect rect{-1.0, 2.0, -1.0, 1.0};
    const auto grid = pseudospectra_grid(D, lams, rect, 2, 2);
    REQUIRE(grid.size() == 4);
    for (const auto& r : grid)
        CHECK(r.norm == doctest::Approx(1.0 / r.dist_to_spectrum).epsilon(1e-10));
    // row-major layout: second entry advances along Re
    CHECK(grid[1].z.real() == doctest::Approx(2.0));
    CHECK(grid[1].z.imag() == doctest::Approx(-1.0));

    const auto line = pseudospectra_grid(D, lams, {0.0, 1.0, 0.5, 0.5}, 5, 1);
    CHECK(line.size() == 5);

    const auto par = pseudospectra_grid(D, lams, rect, 7, 5, 4);
    const auto seq = pseudospectra_grid(D, lams, rect, 7, 5, 1);
    REQUIRE(par.size() == seq.size());
    for (size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].z == seq[i].z);
        CHECK(par[i].norm == seq[i].norm);
    }
}

TEST_CASE("gauge-product identity at matrix level") {
    gauge::GaugeSpec g;
    g.nu = 1.0;
    g.rho = 1.0 / 3.0;
    // scalar case: 1x1 matrix reduces to the Cauchy-kernel identity
    Matrix A1(1, 1);
    A1(0, 0) = 2.0;
    CHECK(bz_identity_check(A1, g, {5.0, 0.0}) <= 1e-10);

    // random diagonalizable 6x6 with spectrum in [1,10] x [-1,1]
    std::vector<cplx> lams{{1.5, 0.3},  {3.0, -0.8}, {4.2, 1.0},
                           {6.1, -0.2}, {8.0, 0.7},  {9.5, -1.0}};
    Matrix A = diagonalizable_with(lams, 2024);
    CHECK(bz_identity_check(A, g, {0.5, 2.0}) <= 1e-6);

    // truncation monotonicity: fewer pole terms, strictly larger residual
    const double r10 = bz_identity_check(A, g, {0.5, 2.0}, 10);
    const double r5 = bz_identity_check(A, g, {0.5, 2.0}, 5);
    CHECK(r5 > r10);

    // left half-plane eigenvalue is rejected
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = -1.0;
    bad(1, 1) = 2.0;
    CHECK_THROWS_AS(bz_identity_check(bad, g, {0.5, 2.0}), std::domain_error);
}

TEST_CASE("finite factorial identity") {
    std::vector<cplx> lams{{1.0, 0.5}, {2.5, -0.5}, {4.0, 1.2}, {5.5, 0.0},
                           {7.0, -1.0}};
    Matrix A = diagonalizable_with(lams, 99);
    CHECK(davies_identity_check(A, {0.3, 1.0}, 1) <= 1e-12);
    CHECK(davies_identity_check(A, {0.3, 1.0}, 4) <= 1e-10);
    CHECK_THROWS_AS(davies_identity_check(A, {-2.0, 0.0}, 3), std::domain_error);
}

TEST_CASE("growth fits") {
    std::vector<std::pair<long, double>> pts;
    for (long n = 5; n <= 40; ++n)
        pts.emplace_back(n, std::exp(2.0 * std::sqrt(static_cast<double>(n))));
    const auto f = fit_growth(pts, 0.5);
    CHECK(f.gamma_hat == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    // +-5% multiplicative noise keeps the slope within 10%
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-0.05, 0.05);
    auto noisy = pts;
    for (auto& [n, v] : noisy) v *= 1.0 + uni(rng);
    const auto fn = fit_growth(noisy, 0.5);
    CHECK(std::abs(fn.gamma_hat - 2.0) / 2.0 < 0.1);

    // order-free mode recovers the exponent
    std::vector<std::pair<long, double>> pw;
    for (long n = 5; n <= 60; ++n)
        pw.emplace_back(n, std::exp(3.0 * std::pow(static_cast<double>(n), 0.7)));
    const auto of = fit_growth_order(pw);
    CHECK(of.sigma_hat == doctest::Approx(0.7).epsilon(1e-6));

    CHECK_THROWS_AS(
        fit_growth({{1, 1.0}, {2, 2.0}, {3, 3.0}, {4, 4.0}}, 1.0),
        std::invalid_argument);
    CHECK_THROWS_AS(
        fit_growth({{2, 1.0}, {2, 2.0}, {2, 3.0}, {2, 4.0}, {2, 5.0}}, 1.0),
        std::invalid_argument);
    CHECK_THROWS_AS(
        fit_growth({{1, 1.0}, {2, -2.0}, {3, 3.0}, {4, 4.0}, {5, 5.0}}, 1.0),
        std::invalid_argument);
}

TEST_CASE("ray angle requires trusted modes") {
    Matrix D = Matrix::Zero(2, 2);
    D(0, 0) = 1.0;
    D(1, 1) = 1.0 + 1e-9;
    const auto s = spectrum_from_matrix(D);
    CHECK(s.trusted_count == 0);
    CHECK_THROWS_AS(ray_angle_check(s, 2.0), std::invalid_argument);
}

TEST_CASE("eigenmode residuals and completeness proxy") {
    auto spec = model::make_polynomial(1, {}, {0.0, 1.0});
    const Matrix A = discretize::assemble(spec, {48, 1.0, Assembly::Ladder});
    const auto s = spectrum_from_matrix(A);
    const double a_norm = A.norm();
    for (const auto& m : s.modes)
        if (m.trusted)
            CHECK((A * m.right - m.lambda * m.right).norm() <= 1e-8 * a_norm);

    // sum of rank-one projections applied to a random vector reconstructs it
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Vector v(48);
    for (long i = 0; i < 48; ++i) v(i) = cplx(uni(rng), uni(rng));
    Vector rec = Vector::Zero(48);
    for (const auto& m : s.modes)
        rec += m.right * (m.left.adjoint() * v)(0) / m.overlap;
    CHECK((rec - v).norm() <= 1e-6 * v.norm());
}
