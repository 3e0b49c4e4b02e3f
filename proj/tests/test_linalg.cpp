#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "osc/linalg.hpp"

using namespace osc;
using namespace osc::linalg;

namespace {

Matrix random_matrix(long n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Matrix A(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) A(i, j) = cplx(uni(rng), uni(rng));
    return A;
}

}  // namespace

TEST_CASE("eig on diagonal and small hand-solved matrices") {
    Matrix D = Matrix::Zero(3, 3);
    D(0, 0) = 1.0;
    D(1, 1) = cplx(0.0, 2.0);
    D(2, 2) = -3.0;
    auto ed = eig(D);
    // sorted by modulus then argument: 1 (arg 0), 2i (arg pi/2), -3
    CHECK(std::abs(ed.values[0] - cplx(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(ed.values[1] - cplx(0.0, 2.0)) < 1e-14);
    CHECK(std::abs(ed.values[2] - cplx(-3.0, 0.0)) < 1e-14);
    for (double r : ed.backward_residuals) CHECK(r <= 1e-14);

    // [[0,1],[0,1]]: values {0,1}; right vectors e1 and (1,1)/sqrt(2)
    Matrix B(2, 2);
    B << 0.0, 1.0, 0.0, 1.0;
    auto eb = eig(B);
    CHECK(std::abs(eb.values[0]) < 1e-14);
    CHECK(std::abs(eb.values[1] - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(eb.right(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(eb.right(0, 1)) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(std::abs(eb.right(1, 1)) - 1.0 / std::sqrt(2.0)) < 1e-12);

    // companion matrix of w^2 - 3w + 2 -> roots {1, 2}
    Matrix C(2, 2);
    C << 0.0, -2.0, 1.0, 3.0;
    auto ec = eig(C);
    CHECK(std::abs(ec.values[0] - 1.0) < 1e-12);
    CHECK(std::abs(ec.values[1] - 2.0) < 1e-12);
}

TEST_CASE("eig unit norms, pairing, residual bound") {
    Matrix A = random_matrix(12, 1234);
    auto ed = eig(A);
    const double a_norm = A.norm();
    for (long i = 0; i < 12; ++i) {
        CHECK(std::abs(ed.right.col(i).norm() - 1.0) < 1e-13);
        CHECK(std::abs(ed.left.col(i).norm() - 1.0) < 1e-13);
        const cplx lam = ed.values[static_cast<size_t>(i)];
        CHECK((A * ed.right.col(i) - lam * ed.right.col(i)).norm() <=
              ed.backward_residuals[static_cast<size_t>(i)] * a_norm + 1e-300);
        CHECK((A.adjoint() * ed.left.col(i) - std::conj(lam) * ed.left.col(i))
                  .norm() <=
              ed.backward_residuals[static_cast<size_t>(i)] * a_norm + 1e-300);
        CHECK(ed.backward_residuals[static_cast<size_t>(i)] < 1e-13);
    }
    // ordering by modulus
    for (size_t i = 1; i < ed.values.size(); ++i)
        CHECK(std::abs(ed.values[i]) >= std::abs(ed.values[i - 1]) - 1e-13);
    // biorthogonality of left/right pairs belonging to distinct eigenvalues
    for (long i = 0; i < 12; ++i)
        for (long j = 0; j < 12; ++j) {
            if (i == j) continue;
            const cplx ip = ed.left.col(j).adjoint().dot(ed.right.col(i).conjugate());
            // <f_i, g_j> = sum conj(g_j) f_i
            cplx s = 0.0;
            for (long k = 0; k < 12; ++k)
                s += std::conj(ed.left(k, j)) * ed.right(k, i);
            (void)ip;
            CHECK(std::abs(s) < 1e-8);
        }
}

TEST_CASE("similarity invariance") {
    Matrix A = random_matrix(8, 77);
    Matrix P = Matrix::Identity(8, 8) + 0.3 * random_matrix(8, 78);
    Matrix B = P * A * P.inverse();
    auto ea = eig(A);
    auto eb = eig(B);
    auto match = greedy_nearest_pairing(ea.values, eb.values);
    for (size_t i = 0; i < ea.values.size(); ++i)
        CHECK(std::abs(ea.values[i] - eb.values[static_cast<size_t>(match[i])]) <
              1e-10);
}

TEST_CASE("smallest_singular") {
    CHECK(smallest_singular(Matrix::Identity(5, 5)) == doctest::Approx(1.0));
    Matrix D = Matrix::Zero(2, 2);
    D(0, 0) = 3.0;
    D(1, 1) = 1e-8;
    CHECK(smallest_singular(D) == doctest::Approx(1e-8).epsilon(1e-10));
    // [[1,10],[0,1]]: sigma_min = 1/||A^{-1}||_2, A^{-1} = [[1,-10],[0,1]]
    Matrix A(2, 2);
    A << 1.0, 10.0, 0.0, 1.0;
    Matrix Ainv(2, 2);
    Ainv << 1.0, -10.0, 0.0, 1.0;
    Eigen::BDCSVD<Matrix> svd(Ainv);
    const double expect = 1.0 / svd.singularValues()(0);
    CHECK(smallest_singular(A) == doctest::Approx(expect).epsilon(1e-12));
    // sigma_min(A) * ||A^{-1}||_2 = 1 on an invertible test matrix
    Matrix R = random_matrix(6, 99) + 4.0 * Matrix::Identity(6, 6);
    Eigen::BDCSVD<Matrix> svr(Matrix(R.inverse()));
    CHECK(smallest_singular(R) * svr.singularValues()(0) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("normal matrix: resolvent norm equals 1/dist") {
    Matrix D = Matrix::Zero(4, 4);
    D(0, 0) = cplx(1.0, 0.0);
    D(1, 1) = cplx(2.0, 1.0);
    D(2, 2) = cplx(-1.0, 3.0);
    D(3, 3) = cplx(0.0, -2.0);
    const cplx z{0.5, 0.5};
    double dist = 1e300;
    for (long i = 0; i < 4; ++i) dist = std::min(dist, std::abs(z - D(i, i)));
    const double smin = smallest_singular(
        Matrix(z * Matrix::Identity(4, 4) - D));
    CHECK(1.0 / smin == doctest::Approx(1.0 / dist).epsilon(1e-10));
}

TEST_CASE("compensated_dot") {
    Vector e1 = Vector::Zero(4);
    e1(0) = 1.0;
    CHECK(std::abs(compensated_dot(e1, e1).value - 1.0) < 1e-16);

    // cancellation stress: pairs (+a, -a) leaving a tiny residue; compare
    // against an 80-bit extended-precision oracle
    const long n = 200;
    std::mt19937 rng(4321);
    std::uniform_real_distribution<double> uni(0.5, 1.5);
    Vector x(n), y(n);
    for (long i = 0; i < n; i += 2) {
        const double a = uni(rng) * 1e8;
        x(i) = cplx(a, -a);
        x(i + 1) = cplx(-a, a);
        y(i) = 1.0;
        y(i + 1) = 1.0;
    }
    x(n - 1) += cplx(3e-9, -7e-9);
    auto d = compensated_dot(x, y);
    long double re = 0.0L, im = 0.0L;
    for (long i = 0; i < n; ++i) {
        re += (long double)x(i).real() * y(i).real() +
              (long double)x(i).imag() * y(i).imag();
        im += (long double)x(i).imag() * y(i).real() -
              (long double)x(i).real() * y(i).imag();
    }
    CHECK(std::abs(d.value.real() - (double)re) <=
          2.0 * std::abs((double)re) * 1.1e-16 + 1e-300 + d.error_bound);
    CHECK(std::abs(d.value.imag() - (double)im) <=
          2.0 * std::abs((double)im) * 1.1e-16 + 1e-300 + d.error_bound);
    // naive summation would be off by many orders here
    cplx naive = 0.0;
    for (long i = 0; i < n; ++i) naive += std::conj(y(i)) * x(i);
    CHECK(std::abs(d.value.real() - (double)re) <=
          std::abs(naive.real() - (double)re) + 1e-300);

    // <x, x> real and nonnegative
    Vector r(64);
    for (long i = 0; i < 64; ++i) r(i) = cplx(uni(rng) - 1.0, uni(rng) - 1.0);
    auto dd = compensated_dot(r, r);
    CHECK(dd.value.real() >= 0.0);
    CHECK(std::abs(dd.value.imag()) <= dd.error_bound + 1e-18);
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(eig(Matrix::Zero(2, 3)), std::invalid_argument);
    Vector a(2), b(3);
    CHECK_THROWS_AS(compensated_dot(a, b), std::invalid_argument);
}
