#include "osc/discretize.hpp"

#include <cmath>
#include <stdexcept>

#include "osc/quadrature.hpp"

namespace osc::discretize {

using model::Family;
using model::OscillatorSpec;

void check_basis(const BasisSpec& basis) {
    if (basis.size < 4)
        throw std::invalid_argument("basis: size must be >= 4");
    if (!(basis.scaling > 0.0) || !std::isfinite(basis.scaling))
        throw std::invalid_argument("basis: scaling must be positive");
}

Matrix position_matrix(long n, double l) {
    Matrix X = Matrix::Zero(n, n);
    for (long k = 0; k + 1 < n; ++k) {
        const double v = l * std::sqrt((k + 1.0) / 2.0);
        X(k, k + 1) = v;
        X(k + 1, k) = v;
    }
    return X;
}

Matrix kinetic_matrix(long n, double l) {
    Matrix K = Matrix::Zero(n, n);
    const double s = 1.0 / (l * l);
    for (long k = 0; k < n; ++k) K(k, k) = s * (k + 0.5);
    for (long k = 0; k + 2 < n; ++k) {
        const double v = -s * std::sqrt((k + 1.0) * (k + 2.0)) / 2.0;
        K(k, k + 2) = v;
        K(k + 2, k) = v;
    }
    return K;
}

Matrix derivative_matrix(long n, double l) {
    Matrix D = Matrix::Zero(n, n);
    for (long k = 1; k < n; ++k) D(k - 1, k) = std::sqrt(k / 2.0) / l;
    for (long k = 0; k + 1 < n; ++k) D(k + 1, k) = -std::sqrt((k + 1.0) / 2.0) / l;
    return D;
}

namespace {

bool even_integer(double x) {
    return x > 0.0 && std::abs(x - 2.0 * std::round(x / 2.0)) < 1e-12;
}

// Families (and parameter ranges) whose potential is a genuine polynomial.
bool polynomial_family(const OscillatorSpec& spec) {
    switch (spec.family) {
        case Family::PolynomialL:
        case Family::OddImaginary: return true;
        case Family::EvenImaginary: return even_integer(spec.b);
        case Family::SelfAdjointPower: return even_integer(spec.l);
        case Family::Conjugated: return false;
    }
    return false;
}

// Complex coefficient list (low to high) of the full multiplication part.
std::vector<cplx> full_coeffs(const OscillatorSpec& spec) {
    if (spec.family == Family::PolynomialL) {
        const size_t deg = static_cast<size_t>(2 * spec.a);
        std::vector<cplx> c(deg + 1, cplx{0.0, 0.0});
        for (size_t j = 0; j < spec.re_coeffs.size(); ++j)
            c[j] += spec.re_coeffs[j];
        for (size_t j = 0; j < spec.im_coeffs.size(); ++j)
            c[j] += cplx{0.0, spec.im_coeffs[j]};
        c[0] += spec.shift;
        c[deg] += 1.0;  // x^{2a}
        return c;
    }
    if (spec.family == Family::OddImaginary) {  // i x^{2b+1}
        std::vector<cplx> c(static_cast<size_t>(2 * std::lround(spec.b) + 2),
                            cplx{0.0, 0.0});
        c.back() = cplx{0.0, 1.0};
        return c;
    }
    // |x|^p with p an even integer: x^p (or i x^p for the imaginary family)
    const double p = (spec.family == Family::EvenImaginary) ? spec.b : spec.l;
    std::vector<cplx> c(static_cast<size_t>(std::lround(p)) + 1, cplx{0.0, 0.0});
    c.back() = (spec.family == Family::EvenImaginary) ? cplx{0.0, 1.0}
                                                      : cplx{1.0, 0.0};
    return c;
}

Matrix horner(const std::vector<cplx>& c, const Matrix& X) {
    const long n = X.rows();
    Matrix P = Matrix::Zero(n, n);
    for (size_t j = c.size(); j-- > 0;) {
        if (j + 1 < c.size()) P = X * P;
        P.diagonal().array() += c[j];
    }
    return P;
}

// Hermite-function samples for the Galerkin products: rows are quadrature
// nodes, columns the first N_b basis functions.
Eigen::MatrixXd basis_samples(const quadrature::Rule& rule, long n_b) {
    const long q = static_cast<long>(rule.nodes.size());
    Eigen::MatrixXd psi(q, n_b);
    for (long i = 0; i < q; ++i) {
        const auto row =
            quadrature::hermite_functions(rule.nodes[static_cast<size_t>(i)], n_b);
        for (long k = 0; k < n_b; ++k) psi(i, k) = row[static_cast<size_t>(k)];
    }
    return psi;
}

// Galerkin matrix of multiplication by g(x) sampled at x = l * node.
template <class G>
Matrix multiplication_matrix(const quadrature::Rule& rule,
                             const Eigen::MatrixXd& psi, double l, G&& g) {
    const long q = psi.rows();
    linalg::Vector vals(q);
    for (long i = 0; i < q; ++i)
        vals(i) = rule.weights[static_cast<size_t>(i)] *
                  g(l * rule.nodes[static_cast<size_t>(i)]);
    return psi.transpose().cast<cplx>() * vals.asDiagonal() * psi.cast<cplx>();
}

}  // namespace

Matrix assemble(const OscillatorSpec& spec, const BasisSpec& basis) {
    model::require_valid(spec);
    check_basis(basis);
    const long n = basis.size;
    const double l = basis.scaling;

    if (basis.assembly == Assembly::Ladder) {
        if (!polynomial_family(spec))
            throw std::invalid_argument(
                "assemble: ladder path requires a polynomial potential");
        // Horner on an enlarged position matrix, then truncate: x^d couples
        // basis index k to k +- d only, so the top-left block of the
        // (n + deg)-sized product is the exact Galerkin projection of V.
        const auto c = full_coeffs(spec);
        const long big = n + static_cast<long>(c.size());
        return kinetic_matrix(n, l) +
               horner(c, position_matrix(big, l)).topLeftCorner(n, n);
    }

    const quadrature::Rule rule = quadrature::gauss_hermite(2 * n + 32);
    const Eigen::MatrixXd psi = basis_samples(rule, n);

    if (spec.family == Family::Conjugated) {
        // (-i D + i v')^2 + |x|^b
        Matrix G = cplx{0.0, -1.0} * derivative_matrix(n, l) +
                   cplx{0.0, 1.0} *
                       multiplication_matrix(rule, psi, l, [&](double x) {
                           return cplx{model::conj_v_prime(spec, x), 0.0};
                       });
        Matrix pot = multiplication_matrix(rule, psi, l, [&](double x) {
            return cplx{std::pow(std::abs(x), spec.b), 0.0};
        });
        return G * G + pot;
    }

    Matrix pot = multiplication_matrix(rule, psi, l, [&](double x) {
        return model::potential_eval(spec, cplx{x, 0.0});
    });
    return kinetic_matrix(n, l) + pot;
}

double choose_scaling(const OscillatorSpec& spec, long basis_size) {
    double p = 2.0;  // leading power of the potential
    switch (spec.family) {
        case Family::PolynomialL: p = 2.0 * static_cast<double>(spec.a); break;
        case Family::OddImaginary: p = 2.0 * spec.b + 1.0; break;
        case Family::EvenImaginary: p = spec.b; break;
        case Family::Conjugated: p = spec.b; break;
        case Family::SelfAdjointPower: p = spec.l; break;
    }
    const double a = 0.5 * p;
    return std::pow(static_cast<double>(basis_size),
                    (1.0 - a) / (2.0 * (a + 1.0)));
}

ConvergenceReport convergence_check(const OscillatorSpec& spec,
                                    const BasisSpec& basis, long m) {
    check_basis(basis);
    if (m < 1 || m > basis.size / 4)
        throw std::invalid_argument("convergence_check: need 1 <= m <= N_b/4");
    BasisSpec fine = basis;
    fine.size = 2 * basis.size;
    const auto ec = linalg::eig(assemble(spec, basis));
    const auto ef = linalg::eig(assemble(spec, fine));
    std::vector<cplx> coarse(ec.values.begin(), ec.values.begin() + m);
    const auto match = linalg::greedy_nearest_pairing(coarse, ef.values);

    ConvergenceReport rep;
    rep.modes.resize(static_cast<size_t>(m));
    for (long i = 0; i < m; ++i) {
        auto& mode = rep.modes[static_cast<size_t>(i)];
        mode.coarse = coarse[static_cast<size_t>(i)];
        mode.fine = ef.values[static_cast<size_t>(match[static_cast<size_t>(i)])];
        mode.gap = std::abs(mode.coarse - mode.fine) / (1.0 + std::abs(mode.fine));
        mode.trusted = mode.gap <= 1e-8;
        if (mode.trusted) ++rep.trusted_count;
    }
    return rep;
}

}  // namespace osc::discretize
