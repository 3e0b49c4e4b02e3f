#include "osc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace osc::linalg {

namespace {

// Guarded divisor: |d| floored at eps*scale to step over (near-)repeated
// diagonal entries during triangular substitution, as in the classical
// Schur-to-eigenvector back-substitution.
cplx guarded(cplx d, double scale) {
    const double floor_mag = 1e-300 + 2.3e-16 * scale;
    if (std::abs(d) < floor_mag) return {floor_mag, 0.0};
    return d;
}

}  // namespace

EigenDecomposition eig(const Matrix& A, double /*tol*/) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("eig: matrix must be square");
    if (!A.allFinite())
        throw std::invalid_argument("eig: matrix entries must be finite");
    const long n = A.rows();
    Eigen::ComplexSchur<Matrix> schur(A, /*computeU=*/true);
    if (schur.info() != Eigen::Success)
        throw std::runtime_error("eig: QR iteration did not converge");
    const Matrix& T = schur.matrixT();
    const Matrix& U = schur.matrixU();
    const double t_scale = T.norm();

    // Order eigenvalues by nondecreasing modulus, ties by argument.
    std::vector<long> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0L);
    std::stable_sort(order.begin(), order.end(), [&](long i, long j) {
        const cplx a = T(i, i), b = T(j, j);
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        return std::arg(a) < std::arg(b);
    });

    EigenDecomposition out;
    out.values.resize(static_cast<size_t>(n));
    out.right.resize(n, n);
    out.left.resize(n, n);
    out.backward_residuals.resize(static_cast<size_t>(n));
    const double a_norm = A.norm() + 1e-300;

    for (long c = 0; c < n; ++c) {
        const long i = order[static_cast<size_t>(c)];
        const cplx lam = T(i, i);
        out.values[static_cast<size_t>(c)] = lam;

        // Right eigenvector of T: back-substitution above row i.
        Vector x = Vector::Zero(n);
        x(i) = 1.0;
        for (long j = i - 1; j >= 0; --j) {
            cplx s = 0.0;
            for (long k = j + 1; k <= i; ++k) s += T(j, k) * x(k);
            x(j) = s / guarded(lam - T(j, j), t_scale);
        }
        // Left eigenvector of T (i.e. eigenvector of T^* for conj(lam)):
        // forward substitution below row i.
        Vector y = Vector::Zero(n);
        y(i) = 1.0;
        for (long j = i + 1; j < n; ++j) {
            cplx s = 0.0;
            for (long k = i; k < j; ++k) s += std::conj(T(k, j)) * y(k);
            y(j) = -s / guarded(std::conj(T(j, j) - lam), t_scale);
        }
        Vector v = U * x;
        Vector w = U * y;
        v /= v.norm();
        w /= w.norm();
        out.right.col(c) = v;
        out.left.col(c) = w;
        const double r1 = (A * v - lam * v).norm();
        const double r2 = (A.adjoint() * w - std::conj(lam) * w).norm();
        out.backward_residuals[static_cast<size_t>(c)] = std::max(r1, r2) / a_norm;
    }
    return out;
}

double smallest_singular(const Matrix& A) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("smallest_singular: matrix must be square");
    Eigen::BDCSVD<Matrix> svd(A);
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 1);
}

namespace {

struct Acc {
    double hi = 0.0, lo = 0.0;
    inline void add(double v) {
        // two_sum(hi, v)
        const double s = hi + v;
        const double bv = s - hi;
        const double err = (hi - (s - bv)) + (v - bv);
        hi = s;
        lo += err;
    }
    inline void add_prod(double a, double b) {
        const double p = a * b;
        const double e = std::fma(a, b, -p);
        add(p);
        lo += e;
    }
    double result() const { return hi + lo; }
};

}  // namespace

DotResult compensated_dot(const Vector& x, const Vector& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("compensated_dot: length mismatch");
    const long n = x.size();
    Acc re, im;
    double absum = 0.0;
    for (long i = 0; i < n; ++i) {
        const double xr = x(i).real(), xi = x(i).imag();
        const double yr = y(i).real(), yi = y(i).imag();
        // conj(y_i) * x_i = (xr yr + xi yi) + i (xi yr - xr yi)
        re.add_prod(xr, yr);
        re.add_prod(xi, yi);
        im.add_prod(xi, yr);
        im.add_prod(-xr, yi);
        absum += std::abs(x(i)) * std::abs(y(i));
    }
    DotResult out;
    out.value = {re.result(), im.result()};
    const double u = 1.1102230246251565e-16;  // 2^-53
    out.error_bound = u * std::abs(out.value) +
                      4.0 * static_cast<double>(n) * u * u * absum;
    return out;
}

std::vector<long> greedy_nearest_pairing(const std::vector<cplx>& from,
                                         const std::vector<cplx>& to) {
    std::vector<long> match(from.size(), -1);
    std::vector<bool> used(to.size(), false);
    for (size_t i = 0; i < from.size(); ++i) {
        double best = 0.0;
        long best_j = -1;
        for (size_t j = 0; j < to.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(from[i] - to[j]);
            if (best_j < 0 || d < best) {
                best = d;
                best_j = static_cast<long>(j);
            }
        }
        match[i] = best_j;
        if (best_j >= 0) used[static_cast<size_t>(best_j)] = true;
    }
    return match;
}

}  // namespace osc::linalg
