#include "osc/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "osc/common.hpp"

namespace osc::quadrature {

std::vector<double> hermite_functions(double x, long K) {
    if (K < 1) throw std::invalid_argument("hermite_functions: K >= 1");
    std::vector<double> out(static_cast<size_t>(K));
    // psi_k = f_k * e^{scale}; rescale f whenever it leaves [1e-140, 1e140]
    // so the three-term recurrence never overflows.  Conversion to double
    // goes through exp(scale + log|f|) to avoid spurious under/overflow of
    // the factors individually.
    double scale = -0.5 * x * x - 0.25 * std::log(PI);
    double f_prev = 0.0;  // psi_{-1}
    double f_cur = 1.0;   // psi_0 / e^{scale}
    for (long k = 0; k < K; ++k) {
        double v = 0.0;
        if (f_cur != 0.0) {
            const double lg = scale + std::log(std::abs(f_cur));
            if (lg > -745.0) v = std::copysign(std::exp(lg), f_cur);
        }
        out[static_cast<size_t>(k)] = v;
        // psi_{k+1} = x sqrt(2/(k+1)) psi_k - sqrt(k/(k+1)) psi_{k-1}
        const double kk = static_cast<double>(k);
        double f_next = x * std::sqrt(2.0 / (kk + 1.0)) * f_cur -
                        std::sqrt(kk / (kk + 1.0)) * f_prev;
        f_prev = f_cur;
        f_cur = f_next;
        const double m = std::abs(f_cur);
        if (m > 1e140 || (m > 0.0 && m < 1e-140)) {
            const double adj = (m > 1e140) ? 1e-140 : 1e140;
            f_cur *= adj;
            f_prev *= adj;
            scale -= std::log(adj);
        }
    }
    return out;
}

namespace {

// Nodes and first-component weights of a symmetric tridiagonal Jacobi matrix
// with off-diagonal beta[k] = J(k, k+1); weights are mu0 * v(0)^2.
Rule golub_welsch(const std::vector<double>& beta, double mu0) {
    const long n = static_cast<long>(beta.size()) + 1;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (long k = 0; k + 1 < n; ++k) {
        J(k, k + 1) = beta[static_cast<size_t>(k)];
        J(k + 1, k) = beta[static_cast<size_t>(k)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("golub_welsch: eigensolver failed");
    Rule r;
    r.nodes.resize(static_cast<size_t>(n));
    r.weights.resize(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) {
        r.nodes[static_cast<size_t>(i)] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        r.weights[static_cast<size_t>(i)] = mu0 * v0 * v0;
    }
    return r;
}

}  // namespace

Rule gauss_hermite(long Q) {
    if (Q < 1) throw std::invalid_argument("gauss_hermite: Q >= 1");
    std::vector<double> beta(static_cast<size_t>(Q - 1));
    for (long k = 0; k + 1 < Q; ++k)
        beta[static_cast<size_t>(k)] = std::sqrt((k + 1.0) / 2.0);
    Rule r = golub_welsch(beta, 1.0);  // node set only; weights recomputed
    for (long i = 0; i < Q; ++i) {
        const auto psi = hermite_functions(r.nodes[static_cast<size_t>(i)], Q);
        double s = 0.0;
        for (double p : psi) s += p * p;
        r.weights[static_cast<size_t>(i)] = 1.0 / s;
    }
    return r;
}

Rule gauss_legendre(long Q) {
    if (Q < 1) throw std::invalid_argument("gauss_legendre: Q >= 1");
    std::vector<double> beta(static_cast<size_t>(Q - 1));
    for (long k = 0; k + 1 < Q; ++k) {
        const double kk = k + 1.0;
        beta[static_cast<size_t>(k)] =
            kk / std::sqrt((2.0 * kk - 1.0) * (2.0 * kk + 1.0));
    }
    return golub_welsch(beta, 2.0);
}

Rule scaled_to(const Rule& r, double lo, double hi) {
    Rule out = r;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (auto& x : out.nodes) x = mid + half * x;
    for (auto& w : out.weights) w *= half;
    return out;
}

}  // namespace osc::quadrature
