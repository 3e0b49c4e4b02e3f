#include "osc/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "osc/mathutil.hpp"

namespace osc::gauge {

namespace {

// Scaled p-series tail: sum_{k > K} (k/(K+1))^{-s}.  Same Euler-Maclaurin
// expansion as zeta_tail but with the overall (K+1)^{-s} factored out, so it
// stays finite for arbitrarily large s.
double zeta_tail_scaled(double s, long K) {
    const double a = static_cast<double>(K) + 1.0;
    double z = a / (s - 1.0);
    z += 0.5;
    z += s / (12.0 * a);
    z -= s * (s + 1.0) * (s + 2.0) / (720.0 * a * a * a);
    z += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) /
         (30240.0 * a * a * a * a * a);
    return z;
}

long checked_cap(const GaugeSpec& g) { return std::max<long>(g.max_terms, 1); }

}  // namespace

void GaugeSpec::check() const {
    if (!(nu > 0.0)) throw std::invalid_argument("GaugeSpec: nu must be > 0");
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("GaugeSpec: rho must lie in (0,1)");
    if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0))
        throw std::invalid_argument("GaugeSpec: tail_tolerance must lie in (0,1)");
    if (max_terms < 1)
        throw std::invalid_argument("GaugeSpec: max_terms must be >= 1");
}

double zero(const GaugeSpec& g, long k) {
    g.check();
    if (k < 1) throw std::invalid_argument("zero: k must be >= 1");
    return std::pow(static_cast<double>(k) / g.nu, 1.0 / g.rho);
}

FValue eval_F(const GaugeSpec& g, std::complex<double> w) {
    g.check();
    FValue out;
    if (w == cplx(0.0, 0.0)) {
        out.terms_used = 0;
        return out;
    }
    const double aw = std::abs(w);
    const double inv_rho = 1.0 / g.rho;
    // Start far enough out that |w|/a_K <= 1/4, so the log-tail series below
    // converges at least geometrically with ratio 1/4.
    long K = std::max<long>(256, static_cast<long>(
                 std::ceil(g.nu * std::pow(4.0 * aw, g.rho))) + 1);
    const long cap = checked_cap(g);

    for (;;) {
        if (K > cap)
            throw TruncationError("eval_F: max_terms exceeded before the tail "
                                  "bound met tail_tolerance",
                                  out.tail_bound);
        double log_abs = 0.0, arg = 0.0;
        bool exact_zero = false;
        long k = 1;
        for (; k <= K; ++k) {
            const double ak = std::pow(static_cast<double>(k) / g.nu, inv_rho);
            const cplx factor = 1.0 + w / ak;
            if (factor == cplx(0.0, 0.0)) {
                exact_zero = true;
                break;
            }
            log_abs += 0.5 * std::log(std::norm(factor));
            arg += std::arg(factor);
        }
        if (exact_zero) {
            out.exact_zero = true;
            out.terms_used = k;
            out.log_abs = -std::numeric_limits<double>::infinity();
            out.arg = 0.0;
            out.tail_bound = 0.0;
            return out;
        }

        // Analytic tail of the log-sum:
        //   sum_{k>K} log(1 + w/a_k) = sum_j (-1)^{j+1}/j (w nu^{1/rho})^j Z(j/rho, K)
        // evaluated with the scaled base s = w nu^{1/rho} (K+1)^{-1/rho},
        // |s| <= 1/4 by the choice of K.
        const cplx s = w * std::pow(g.nu, inv_rho) *
                       std::pow(static_cast<double>(K) + 1.0, -inv_rho);
        cplx pow_s = 1.0;
        cplx tail = 0.0;
        double bound = 0.0;
        bool converged = false;
        for (int j = 1; j <= 60; ++j) {
            pow_s *= s;
            const double zt = zeta_tail_scaled(static_cast<double>(j) * inv_rho, K);
            const cplx term = (j % 2 == 1 ? 1.0 : -1.0) * pow_s /
                              static_cast<double>(j) * zt;
            tail += term;
            bound = std::abs(pow_s) * std::abs(s) /
                    static_cast<double>(j + 1) *
                    zeta_tail_scaled(static_cast<double>(j + 1) * inv_rho, K);
            if (bound < 0.125 * g.tail_tolerance) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            out.tail_bound = bound;
            K *= 2;
            continue;
        }
        out.log_abs = log_abs + tail.real();
        out.arg = arg + tail.imag();
        out.terms_used = K;
        out.tail_bound = bound;
        return out;
    }
}

double log_asymptote(const GaugeSpec& g, double r, double theta) {
    g.check();
    if (!(r > 0.0)) throw std::invalid_argument("log_asymptote: r must be > 0");
    if (!(std::abs(theta) < PI))
        throw std::invalid_argument("log_asymptote: |theta| must be < pi");
    return PI * g.nu * std::pow(r, g.rho) * std::cos(theta * g.rho) /
           std::sin(PI * g.rho);
}

double log_a_product(long n, double b, double tolerance, long max_terms) {
    if (n < 1) throw std::invalid_argument("a_product: n must be >= 1");
    if (!(b > 1.0)) throw std::invalid_argument("a_product: b must be > 1");
    if (!(tolerance > 0.0))
        throw std::invalid_argument("a_product: tolerance must be > 0");

    // A(n;b) = A(n;2) * prod_{k != n} (1-(n/k)^b)/(1-(n/k)^2) with
    // A(n;2) = 1/2 exactly; the ratio factors are positive and free of the
    // k ~ n cancellation of the raw product.
    long K = std::max<long>(1000, 40 * n);
    for (;;) {
        if (K > max_terms)
            throw TruncationError("a_product: max_terms exceeded", 0.0);
        double S = 0.0;
        for (long k = 1; k <= K; ++k) {
            if (k == n) continue;
            // log(n/k) accurately even for k near n.
            const double lt = -std::log1p(static_cast<double>(k - n) /
                                          static_cast<double>(n));
            const double num = -std::expm1(b * lt);    // 1 - (n/k)^b
            const double den = -std::expm1(2.0 * lt);  // 1 - (n/k)^2
            S += std::log(num / den);
        }
        // Tail sum_{k>K} [log(1-(n/k)^b) - log(1-(n/k)^2)] via the log
        // series, with (n/(K+1))^{p} kept scaled for overflow safety.
        const double base = static_cast<double>(n) / (static_cast<double>(K) + 1.0);
        double T = 0.0;
        double last = 0.0;
        bool converged = false;
        for (int j = 1; j <= 100; ++j) {
            const double A = std::pow(base, 2.0 * j) *
                             zeta_tail_scaled(2.0 * j, K);
            const double B = std::pow(base, b * j) *
                             zeta_tail_scaled(b * j, K);
            last = (A - B) / static_cast<double>(j);
            T += last;
            if (std::abs(last) < 0.25 * tolerance) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            K *= 2;
            continue;
        }
        return std::log(0.5) + S + T;
    }
}

double a_product(long n, double b, double tolerance, long max_terms) {
    return std::exp(log_a_product(n, b, tolerance, max_terms));
}

double log_abs_f_prime_at_zero(const GaugeSpec& g, long n) {
    g.check();
    // F'(-a_n) = (1/a_n) prod_{k != n} (1 - a_n/a_k)
    //          = (-1)^{n-1} (nu/n)^b A(n;b),  b = 1/rho.
    // (Checked against the sinh product at b=2: F'(-n^2) = (-1)^{n-1}/(2n^2).)
    const double b = 1.0 / g.rho;
    return b * (std::log(g.nu) - std::log(static_cast<double>(n))) +
           log_a_product(n, b, g.tail_tolerance, g.max_terms);
}

std::complex<double> f_prime_at_zero(const GaugeSpec& g, long n) {
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    return {sign * std::exp(log_abs_f_prime_at_zero(g, n)), 0.0};
}

double pole_exclusion_radius(const GaugeSpec& g, std::complex<double> w) {
    g.check();
    const double aw = std::abs(w);
    long k0 = static_cast<long>(std::llround(g.nu * std::pow(aw, g.rho)));
    double best = std::abs(w + zero(g, 1));
    double a_nearest = zero(g, 1);
    for (long k = std::max<long>(1, k0 - 2); k <= k0 + 2; ++k) {
        const double ak = zero(g, k);
        const double d = std::abs(w + ak);
        if (d < best) {
            best = d;
            a_nearest = ak;
        }
    }
    return 1e-6 * std::max(1.0, a_nearest);
}

namespace {

void guard_pole(const GaugeSpec& g, cplx w, const char* who) {
    const double aw = std::abs(w);
    long k0 = static_cast<long>(std::llround(g.nu * std::pow(aw, g.rho)));
    const double radius = pole_exclusion_radius(g, w);
    for (long k = std::max<long>(1, k0 - 2); k <= k0 + 2; ++k) {
        if (std::abs(w + zero(g, k)) < radius)
            throw PoleProximityError(std::string(who) +
                                     ": evaluation point within the pole "
                                     "exclusion radius of -a_k");
    }
}

bool is_half(const GaugeSpec& g) { return std::abs(g.rho - 0.5) < 1e-12; }

// rho < 1/2 series sum_n c_n(z) with c_n = 1/(F'(-a_n)(w+a_n)) or the
// Cauchy-kernel weight; shared adaptive driver.
template <typename Term>
cplx sum_pfd_series(const GaugeSpec& g, long terms, double tol, Term term_fn,
                    long* used) {
    cplx sum = 0.0;
    const long cap = terms > 0 ? terms : 10000;
    long n = 1;
    for (; n <= cap; ++n) {
        const cplx t = term_fn(n);
        sum += t;
        if (terms <= 0 && n >= 3 && std::abs(t) < 0.1 * tol * std::max(1.0, std::abs(sum)))
            break;
    }
    if (used) *used = std::min(n, cap);
    return sum;
}

}  // namespace

PfdReport pfd_eval(const GaugeSpec& g, std::complex<double> w, long terms) {
    g.check();
    if (g.rho >= 0.5)
        throw std::domain_error("pfd_eval: unsupported regime, requires rho < 1/2 "
                                "(use pfd_half_eval at rho = 1/2)");
    guard_pole(g, w, "pfd_eval");
    PfdReport rep;
    rep.value_direct = 1.0 / eval_F(g, w).value();
    rep.value_series = sum_pfd_series(
        g, terms, g.tail_tolerance,
        [&](long n) {
            const double sign = (n % 2 == 1) ? 1.0 : -1.0;
            const double lf = log_abs_f_prime_at_zero(g, n);
            return sign * std::exp(-lf) / (w + zero(g, n));
        },
        &rep.terms_used);
    rep.residual = std::abs(rep.value_direct - rep.value_series);
    return rep;
}

std::complex<double> half_closed_form(const GaugeSpec& g, std::complex<double> w) {
    // 1/F(w) = (pi nu sqrt(w)) / sinh(pi nu sqrt(w)); even in sqrt(w), so the
    // branch choice is immaterial.
    if (w == cplx(0.0, 0.0)) return {1.0, 0.0};
    const cplx s = PI * g.nu * std::sqrt(w);
    return s / std::sinh(s);
}

PfdReport pfd_half_eval(const GaugeSpec& g, std::complex<double> w, long terms,
                        bool paired) {
    g.check();
    if (!is_half(g))
        throw std::domain_error("pfd_half_eval: requires rho = 1/2");
    guard_pole(g, w, "pfd_half_eval");
    PfdReport rep;
    rep.value_direct = half_closed_form(g, w);
    cplx sum = 1.0;
    if (paired) {
        // Adjacent pairs (2m-1, 2m): the paired terms decay like m^{-3}, so
        // the paired series is absolutely convergent.
        const long cap = terms > 0 ? terms : checked_cap(g);
        long m = 1;
        for (; m <= cap; ++m) {
            const double a_odd = zero(g, 2 * m - 1);
            const double a_even = zero(g, 2 * m);
            const cplx pair =
                2.0 * w * (a_odd - a_even) / ((w + a_odd) * (w + a_even));
            sum += pair;
            if (terms <= 0) {
                // tail ~ sum_{k>m} 4|w| nu^2 / k^3 ~ 2|w| nu^2 / m^2
                const double tail_est =
                    2.0 * std::abs(w) * g.nu * g.nu /
                    (static_cast<double>(m) * static_cast<double>(m));
                if (tail_est < 0.3 * g.tail_tolerance) break;
            }
        }
        rep.terms_used = std::min(m, cap);
    } else {
        const long cap = terms > 0 ? terms : 100000;
        for (long n = 1; n <= cap; ++n) {
            const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
            sum += 2.0 * sgn * w / (w + zero(g, n));
        }
        rep.terms_used = cap;
    }
    rep.value_series = sum;
    rep.residual = std::abs(rep.value_direct - rep.value_series);
    return rep;
}

double cauchy_kernel_pfd(const GaugeSpec& g, std::complex<double> z,
                         std::complex<double> w) {
    g.check();
    if (z == w)
        throw std::invalid_argument("cauchy_kernel_pfd: z and w must differ");
    guard_pole(g, w, "cauchy_kernel_pfd(w)");
    guard_pole(g, z, "cauchy_kernel_pfd(z)");
    if (is_half(g)) {
        const cplx lhs = half_closed_form(g, w) / (z - w);
        cplx rhs = half_closed_form(g, z) / (z - w);
        const long cap = checked_cap(g);
        for (long m = 1; m <= cap; ++m) {
            const double a_odd = zero(g, 2 * m - 1);
            const double a_even = zero(g, 2 * m);
            const cplx u_odd = a_odd / ((z + a_odd) * (w + a_odd));
            const cplx u_even = a_even / ((z + a_even) * (w + a_even));
            rhs += 2.0 * (u_odd - u_even);
            const double tail_est = 4.0 * (std::abs(z) + std::abs(w)) *
                                    g.nu * g.nu * g.nu * g.nu /
                                    std::pow(static_cast<double>(m), 3.0);
            if (tail_est < 0.3 * g.tail_tolerance && m >= 8) break;
        }
        return std::abs(lhs - rhs);
    }
    if (g.rho > 0.5)
        throw std::domain_error("cauchy_kernel_pfd: requires rho <= 1/2");
    const cplx lhs = 1.0 / ((z - w) * eval_F(g, w).value());
    cplx rhs = 1.0 / (eval_F(g, z).value() * (z - w));
    rhs += sum_pfd_series(
        g, 0, g.tail_tolerance,
        [&](long n) {
            const double sign = (n % 2 == 1) ? 1.0 : -1.0;
            const double lf = log_abs_f_prime_at_zero(g, n);
            const double an = zero(g, n);
            return sign * std::exp(-lf) / ((z + an) * (w + an));
        },
        nullptr);
    return std::abs(lhs - rhs);
}

double power_pfd(const GaugeSpec& g, std::complex<double> z,
                 std::complex<double> w, int p) {
    g.check();
    if (p < 1) throw std::invalid_argument("power_pfd: p must be >= 1");
    if (z == w) throw std::invalid_argument("power_pfd: z and w must differ");
    if (p == 1) return cauchy_kernel_pfd(g, z, w);
    const cplx zp = std::pow(z, p);
    const cplx wp = std::pow(w, p);
    guard_pole(g, wp, "power_pfd(w^p)");
    guard_pole(g, zp, "power_pfd(z^p)");

    // inner(z,w) = sum_{k=0}^{p-1} w^k z^{p-1-k}
    cplx inner = 0.0;
    for (int k = 0; k < p; ++k) inner += std::pow(w, k) * std::pow(z, p - 1 - k);

    if (is_half(g)) {
        const cplx lhs = half_closed_form(g, wp) / (z - w);
        cplx rhs = half_closed_form(g, zp) / (z - w);
        const long cap = checked_cap(g);
        for (long m = 1; m <= cap; ++m) {
            const double a_odd = zero(g, 2 * m - 1);
            const double a_even = zero(g, 2 * m);
            const cplx u_odd = a_odd / (zp + a_odd) * inner / (wp + a_odd);
            const cplx u_even = a_even / (zp + a_even) * inner / (wp + a_even);
            rhs += 2.0 * (u_odd - u_even);
            const double tail_est = 4.0 * std::abs(inner) *
                                    (std::abs(zp) + std::abs(wp)) *
                                    std::pow(g.nu, 4.0) /
                                    std::pow(static_cast<double>(m), 3.0);
            if (tail_est < 0.3 * g.tail_tolerance && m >= 8) break;
        }
        return std::abs(lhs - rhs);
    }
    if (g.rho > 0.5) throw std::domain_error("power_pfd: requires rho <= 1/2");
    const cplx lhs = 1.0 / ((z - w) * eval_F(g, wp).value());
    cplx rhs = 1.0 / (eval_F(g, zp).value() * (z - w));
    rhs += sum_pfd_series(
        g, 0, g.tail_tolerance,
        [&](long n) {
            const double sign = (n % 2 == 1) ? 1.0 : -1.0;
            const double lf = log_abs_f_prime_at_zero(g, n);
            const double an = zero(g, n);
            return sign * std::exp(-lf) * inner / ((zp + an) * (wp + an));
        },
        nullptr);
    return std::abs(lhs - rhs);
}

}  // namespace osc::gauge
