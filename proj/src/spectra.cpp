#include "osc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "osc/mathutil.hpp"

namespace osc::spectra {

namespace {

constexpr double kTrustGap = 1e-8;
constexpr double kClusterGap = 1e-6;
constexpr double kMachEps = 2.220446049250313e-16;

void fill_overlaps(Spectrum& s, long dim) {
    for (auto& m : s.modes) {
        const auto d = linalg::compensated_dot(m.right, m.left);
        m.overlap = d.value;
        const double mag = std::abs(m.overlap);
        m.projection_norm = 1.0 / mag;
        m.precision_limited = mag < 1e3 * static_cast<double>(dim) * kMachEps;
    }
}

void mark_clusters(Spectrum& s) {
    const size_t n = s.modes.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            const double gap = std::abs(s.modes[i].lambda - s.modes[j].lambda);
            if (gap < kClusterGap * (1.0 + std::abs(s.modes[i].lambda))) {
                s.modes[i].trusted = false;
                s.modes[j].trusted = false;
            }
        }
    s.trusted_count = 0;
    for (const auto& m : s.modes)
        if (m.trusted) ++s.trusted_count;
}

double spectral_norm(const Matrix& M) {
    Eigen::BDCSVD<Matrix> svd(M);
    return svd.singularValues()(0);
}

}  // namespace

Spectrum compute_spectrum(const model::OscillatorSpec& spec,
                          const discretize::BasisSpec& basis, long m) {
    discretize::check_basis(basis);
    if (m < 1 || m > basis.size)
        throw std::invalid_argument("compute_spectrum: need 1 <= m <= N_b");
    discretize::BasisSpec fine = basis;
    fine.size = 2 * basis.size;
    const auto ec = linalg::eig(discretize::assemble(spec, basis));
    const auto ef = linalg::eig(discretize::assemble(spec, fine));
    std::vector<cplx> coarse(ec.values.begin(), ec.values.begin() + m);
    const auto match = linalg::greedy_nearest_pairing(coarse, ef.values);

    Spectrum s;
    s.modes.resize(static_cast<size_t>(m));
    for (long i = 0; i < m; ++i) {
        auto& mode = s.modes[static_cast<size_t>(i)];
        mode.lambda = coarse[static_cast<size_t>(i)];
        mode.right = ec.right.col(i);
        mode.left = ec.left.col(i);
        const cplx lf = ef.values[static_cast<size_t>(match[static_cast<size_t>(i)])];
        mode.trusted =
            std::abs(mode.lambda - lf) <= kTrustGap * (1.0 + std::abs(lf));
    }
    fill_overlaps(s, basis.size);
    mark_clusters(s);
    return s;
}

Spectrum spectrum_from_matrix(const Matrix& A) {
    const auto ed = linalg::eig(A);
    Spectrum s;
    s.modes.resize(ed.values.size());
    for (size_t i = 0; i < ed.values.size(); ++i) {
        auto& mode = s.modes[i];
        mode.lambda = ed.values[i];
        mode.right = ed.right.col(static_cast<long>(i));
        mode.left = ed.left.col(static_cast<long>(i));
        mode.trusted = true;
    }
    fill_overlaps(s, A.rows());
    mark_clusters(s);
    return s;
}

std::vector<std::pair<long, double>> projection_norms(
    const Spectrum& s, const std::vector<long>& indices) {
    std::vector<std::pair<long, double>> out;
    if (indices.empty()) {
        for (size_t i = 0; i < s.modes.size(); ++i)
            if (s.modes[i].trusted)
                out.emplace_back(static_cast<long>(i) + 1,
                                 s.modes[i].projection_norm);
        return out;
    }
    for (long n : indices) {
        if (n < 1 || n > static_cast<long>(s.modes.size()))
            throw std::invalid_argument("projection_norms: index out of range");
        const auto& m = s.modes[static_cast<size_t>(n - 1)];
        if (!m.trusted)
            throw std::invalid_argument(
                "projection_norms: mode " + std::to_string(n) + " is untrusted");
        out.emplace_back(n, m.projection_norm);
    }
    return out;
}

ResolventSample resolvent_sample(const Matrix& A, const std::vector<cplx>& spectrum,
                                 cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("resolvent_sample: z must be finite");
    ResolventSample r;
    r.z = z;
    const long n = A.rows();
    Matrix M = z * Matrix::Identity(n, n) - A;
    r.norm = 1.0 / linalg::smallest_singular(M);
    r.dist_to_spectrum = 1e300;
    for (const auto& lam : spectrum)
        r.dist_to_spectrum = std::min(r.dist_to_spectrum, std::abs(z - lam));
    return r;
}

ResolventSample resolvent_norm(const model::OscillatorSpec& spec,
                               const discretize::BasisSpec& basis, cplx z) {
    const auto s = compute_spectrum(spec, basis, std::max(1L, basis.size / 4));
    std::vector<cplx> trusted;
    for (const auto& m : s.modes)
        if (m.trusted) trusted.push_back(m.lambda);
    return resolvent_sample(discretize::assemble(spec, basis), trusted, z);
}

std::vector<ResolventSample> pseudospectra_grid(const Matrix& A,
                                                const std::vector<cplx>& spectrum,
                                                const Rect& rect, long nx, long ny,
                                                long threads) {
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("pseudospectra_grid: nx, ny >= 1");
    std::vector<ResolventSample> out(static_cast<size_t>(nx * ny));
    osc::parallel_for(static_cast<std::size_t>(nx * ny), static_cast<int>(threads),
                      [&](std::size_t s_idx) {
        const long idx = static_cast<long>(s_idx);
        const long iy = idx / nx, ix = idx % nx;
        const double x =
            (nx == 1) ? rect.re_lo
                      : rect.re_lo + (rect.re_hi - rect.re_lo) * ix / (nx - 1.0);
        const double y =
            (ny == 1) ? rect.im_lo
                      : rect.im_lo + (rect.im_hi - rect.im_lo) * iy / (ny - 1.0);
        out[s_idx] = resolvent_sample(A, spectrum, {x, y});
    });
    return out;
}

double bz_identity_check(const Matrix& A, const gauge::GaugeSpec& g, cplx z,
                         long terms) {
    g.check();
    const long n = A.rows();
    const auto s = spectrum_from_matrix(A);
    for (const auto& m : s.modes) {
        if (m.lambda.real() <= 0.0)
            throw std::domain_error(
                "bz_identity_check: eigenvalue in the closed left half-plane");
        if (std::abs(m.overlap) < 1e-12)
            throw std::runtime_error(
                "bz_identity_check: matrix is numerically nondiagonalizable");
    }
    if (std::abs(gauge::eval_F(g, z).value()) == 0.0)
        throw std::domain_error("bz_identity_check: z is a zero of F");

    // left side: sum_j P_j / ((z - lambda_j) F(lambda_j))
    Matrix lhs = Matrix::Zero(n, n);
    for (const auto& m : s.modes) {
        if (std::abs(z - m.lambda) < 1e-12 * (1.0 + std::abs(m.lambda)))
            throw std::domain_error("bz_identity_check: z on the spectrum");
        const cplx F = gauge::eval_F(g, m.lambda).value();
        lhs += (m.right * m.left.adjoint()) /
               (m.overlap * (z - m.lambda) * F);
    }

    // right side: (1/F(z)) (zI - A)^{-1} + truncated pole series
    const Matrix I = Matrix::Identity(n, n);
    Matrix rhs = Matrix((z * I - A).inverse()) / gauge::eval_F(g, z).value();
    const long cap = (terms > 0) ? terms : 400;
    for (long k = 1; k <= cap; ++k) {
        const double a_k = gauge::zero(g, k);
        if (std::abs(z + a_k) < gauge::pole_exclusion_radius(g, z))
            throw std::domain_error("bz_identity_check: z at a pole of 1/F");
        const Matrix term = Matrix((a_k * I + A).inverse()) /
                            ((z + a_k) * gauge::f_prime_at_zero(g, k));
        rhs += term;
        if (terms <= 0 && term.norm() < 1e-13 * std::max(1.0, rhs.norm())) break;
    }
    return spectral_norm(lhs - rhs);
}

double davies_identity_check(const Matrix& A, cplx z, long m) {
    if (m < 1) throw std::invalid_argument("davies_identity_check: m >= 1");
    const long n = A.rows();
    const Matrix I = Matrix::Identity(n, n);
    const auto ed = linalg::eig(A);
    for (const auto& lam : ed.values) {
        if (std::abs(z - lam) < 1e-10 * (1.0 + std::abs(lam)))
            throw std::domain_error("davies_identity_check: z on the spectrum");
        for (long k = 1; k <= m; ++k)
            if (std::abs(lam + static_cast<double>(k)) < 1e-10)
                throw std::domain_error(
                    "davies_identity_check: -k on the spectrum");
    }
    for (long k = 1; k <= m; ++k)
        if (std::abs(z + static_cast<double>(k)) < 1e-10)
            throw std::domain_error("davies_identity_check: z collides with a pole");

    // Phi(w) = prod_{k=1..m} (w + k); exact finite identity
    //   (zI-A)^{-1} Phi(A)^{-1}
    //     = (1/Phi(z)) (zI-A)^{-1} + sum_k (kI+A)^{-1} / (Phi'(-k) (z+k))
    Matrix phiA = I;
    cplx phi_z = 1.0;
    for (long k = 1; k <= m; ++k) {
        phiA = phiA * (A + static_cast<double>(k) * I);
        phi_z *= z + static_cast<double>(k);
    }
    const Matrix lhs = Matrix((z * I - A).inverse()) * Matrix(phiA.inverse());
    Matrix rhs = Matrix((z * I - A).inverse()) / phi_z;
    for (long k = 1; k <= m; ++k) {
        // Phi'(-k) = (-1)^{k-1} (k-1)! (m-k)!
        double dphi = (k % 2 == 1) ? 1.0 : -1.0;
        for (long j = 2; j < k; ++j) dphi *= static_cast<double>(j);
        for (long j = 2; j <= m - k; ++j) dphi *= static_cast<double>(j);
        rhs += Matrix((static_cast<double>(k) * I + A).inverse()) /
               (dphi * (z + static_cast<double>(k)));
    }
    return spectral_norm(lhs - rhs);
}

namespace {

struct LinFit {
    double slope = 0.0, intercept = 0.0, r_squared = 0.0;
};

LinFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit: degenerate design (all n equal)");
    LinFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

}  // namespace

GrowthFit fit_growth(const std::vector<std::pair<long, double>>& norms,
                     double sigma) {
    if (norms.size() < 5)
        throw std::invalid_argument("fit_growth: need at least 5 points");
    std::vector<double> x, y;
    for (const auto& [n, v] : norms) {
        if (!(v > 0.0))
            throw std::invalid_argument("fit_growth: values must be positive");
        x.push_back(std::pow(static_cast<double>(n), sigma));
        y.push_back(std::log(v));
    }
    const auto f = least_squares(x, y);
    return {f.slope, f.intercept, f.r_squared};
}

OrderFit fit_growth_order(const std::vector<std::pair<long, double>>& norms) {
    std::vector<double> x, y;
    for (const auto& [n, v] : norms) {
        if (!(v > 0.0))
            throw std::invalid_argument("fit_growth_order: values must be positive");
        const double lv = std::log(v);
        if (lv <= 0.0) continue;  // log log undefined; growth not yet visible
        x.push_back(std::log(static_cast<double>(n)));
        y.push_back(std::log(lv));
    }
    if (x.size() < 5)
        throw std::invalid_argument(
            "fit_growth_order: fewer than 5 usable points (log value <= 0)");
    const auto f = least_squares(x, y);
    return {f.slope, f.intercept, f.r_squared};
}

double ray_angle_check(const Spectrum& s, double b) {
    const double target = PI / (b + 2.0);
    double worst = -1.0;
    for (const auto& m : s.modes)
        if (m.trusted)
            worst = std::max(worst, std::abs(std::arg(m.lambda) - target));
    if (worst < 0.0)
        throw std::invalid_argument("ray_angle_check: no trusted modes");
    return worst;
}

}  // namespace osc::spectra
