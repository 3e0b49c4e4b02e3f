#include "osc/pseudomode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "osc/cheb.hpp"
#include "osc/mathutil.hpp"
#include "osc/quadrature.hpp"
#include "osc/spectra.hpp"

namespace osc::pseudomode {

namespace {

// Mollifier bump E(t) = exp(-1/(1-4t^2)) on |t| < 1/2 and its derivative.
double bump(double t) {
    if (std::abs(t) >= 0.5) return 0.0;
    return std::exp(-1.0 / (1.0 - 4.0 * t * t));
}

double bump_prime(double t) {
    if (std::abs(t) >= 0.5) return 0.0;
    const double d = 1.0 - 4.0 * t * t;
    return bump(t) * (-8.0 * t / (d * d));
}

double bump_mass() {
    static const double p = [] {
        const auto r = quadrature::scaled_to(quadrature::gauss_legendre(64),
                                             -0.5, 0.5);
        double s = 0.0;
        for (size_t i = 0; i < r.nodes.size(); ++i)
            s += r.weights[i] * bump(r.nodes[i]);
        return s;
    }();
    return p;
}

// Plateau cutoff h: 1 on [-1,1], 0 outside (-2,2), glued from the bump.
double h_of(double x) {
    x = -std::abs(x);
    if (x <= -2.0) return 0.0;
    if (x >= -1.0) return 1.0;
    // (1/p) int_{-1/2}^{x + 3/2} E
    const auto r =
        quadrature::scaled_to(quadrature::gauss_legendre(64), -0.5, x + 1.5);
    double s = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i)
        s += r.weights[i] * bump(r.nodes[i]);
    return s / bump_mass();
}

double h_prime(double x) {
    if (x <= 0.0) return bump(x + 1.5) / bump_mass();
    return -bump(1.5 - x) / bump_mass();
}

double h_second(double x) {
    if (x <= 0.0) return bump_prime(x + 1.5) / bump_mass();
    return bump_prime(1.5 - x) / bump_mass();
}

struct LsFit {
    double slope = 0.0, r_squared = 0.0;
};

LsFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
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
    if (sxx == 0.0) throw std::invalid_argument("fit: degenerate design");
    LsFit f;
    f.slope = sxy / sxx;
    f.r_squared = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

void check_params(const PseudomodeParams& p, double c_b) {
    if (!(p.epsilon > 0.0) || !(p.epsilon < c_b))
        throw std::invalid_argument("pseudomode: epsilon must lie in (0, c_b)");
    if (p.cheb_order < 16)
        throw std::invalid_argument("pseudomode: cheb_order >= 16");
    if (p.quad_order < 2 * p.cheb_order)
        throw std::invalid_argument("pseudomode: quad_order >= 2 * cheb_order");
    if (p.delta_override && !(*p.delta_override > 0.0))
        throw std::invalid_argument("pseudomode: delta override must be positive");
    if (p.n_terms && *p.n_terms < 0)
        throw std::invalid_argument("pseudomode: n_terms >= 0");
}

}  // namespace

PseudomodeResult build(const model::OscillatorSpec& spec, cplx lambda,
                       const PseudomodeParams& params) {
    if (spec.family != model::Family::PolynomialL)
        throw std::invalid_argument(
            "pseudomode: only the polynomial family is supported");
    model::require_valid(spec);
    const double c_b = model::leading_c(spec);
    const long bi = model::im_degree(spec);
    check_params(params, c_b);

    const double alpha = lambda.real(), beta = lambda.imag();
    if (!(alpha > 0.0) || beta < 0.0)
        throw std::domain_error(
            "pseudomode: need Re lambda > 0 and Im lambda >= 0");
    if (!params.allow_inadmissible) {
        const auto adm =
            model::admissible_region(spec, lambda, params.epsilon, params.omega);
        if (!adm.admissible)
            throw std::domain_error("pseudomode: lambda inadmissible: " +
                                    adm.reason);
    }

    const auto [x_alpha, y_beta] = model::turning_points(spec, lambda);
    const double zeta = std::pow(1.0 - params.epsilon / c_b, 1.0 / bi);
    const double delta =
        params.delta_override ? *params.delta_override : (1.0 - zeta) / 32.0;
    const double D = (bi % 2 == 1) ? delta * x_alpha : delta * y_beta;
    if (!(D > 0.0))
        throw std::domain_error("pseudomode: degenerate localization width");
    const double mu = std::pow(D, bi + 1.0) / std::sqrt(alpha);
    const double lo = y_beta - 2.0 * D, hi = y_beta + 2.0 * D;

    auto V = [&](double x) { return model::potential_eval(spec, cplx{x, 0.0}); };

    // branch safety: alpha - |V| > 0 keeps lambda - V inside the right
    // half-plane on the whole support, so the principal roots are smooth
    const auto xs = cheb::points(lo, hi, params.cheb_order);
    for (double x : xs)
        if (alpha - std::abs(V(x)) <= 0.0)
            throw std::domain_error(
                "pseudomode: branch failure, alpha - |V| <= 0 on the support");

    // spectral representations on the support
    auto quarter_root = [&](double x) { return std::pow(lambda - V(x), 0.25); };
    const cplx w_c = quarter_root(y_beta);
    // g = phi'^{1/2} chosen as i (lambda-V)^{1/4}: g^2 = -(lambda-V)^{1/2}
    const cheb::Series phi_p =
        cheb::fit(lo, hi, params.cheb_order, [&](double x) {
            const cplx w = quarter_root(x);
            return -w * w;
        });
    const cheb::Series phi = phi_p.antiderivative(y_beta);
    std::vector<cplx> inv_g(xs.size()), half_i_over_g(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        const cplx g = cplx{0.0, 1.0} * quarter_root(xs[i]);
        inv_g[i] = 1.0 / g;
        half_i_over_g[i] = cplx{0.0, 0.5} / g;
    }
    cheb::Series a_cur = cheb::fit(lo, hi, params.cheb_order, [&](double x) {
        return w_c / quarter_root(x);
    });

    // quadrature data on the support
    const auto rule =
        quadrature::scaled_to(quadrature::gauss_legendre(params.quad_order), lo, hi);
    const size_t nq = rule.nodes.size();
    std::vector<double> chi(nq), chi_p(nq), chi_pp(nq);
    std::vector<cplx> eip(nq), phi_p_q(nq);
    for (size_t i = 0; i < nq; ++i) {
        const double t = (rule.nodes[i] - y_beta) / D;
        chi[i] = h_of(t);
        chi_p[i] = h_prime(t) / D;
        chi_pp[i] = h_second(t) / (D * D);
        eip[i] = std::exp(cplx{0.0, 1.0} * phi.eval(rule.nodes[i]));
        phi_p_q[i] = phi_p.eval(rule.nodes[i]);
    }
    auto l2 = [&](const std::vector<cplx>& v) {
        double s = 0.0;
        for (size_t i = 0; i < nq; ++i) s += rule.weights[i] * std::norm(v[i]);
        return std::sqrt(s);
    };

    // ceiling for the series length from the transport estimates
    double max_inv_phi = 0.0;
    for (size_t i = 0; i < xs.size(); ++i)
        max_inv_phi = std::max(max_inv_phi, std::abs(inv_g[i] * inv_g[i]));
    const long n_ceiling = std::max(
        0L, static_cast<long>(std::floor(D / (std::exp(1.0) * max_inv_phi))));
    const long n_cap =
        params.n_terms ? *params.n_terms : std::min(n_ceiling, 60L);

    std::vector<cheb::Series> a_list;
    std::vector<cplx> S(nq, cplx{0.0, 0.0});   // sum a_j at nodes
    std::vector<cplx> T(nq, cplx{0.0, 0.0});   // sum (i phi' a_j + a_j')
    double best_q = 0.0;
    long best_n = -1;

    for (long j = 0; j <= n_cap; ++j) {
        if (j > 0) {
            // a_j = (1/g) int i a_{j-1}'' / (2 g)
            const cheb::Series app = a_cur.derivative().derivative();
            std::vector<cplx> vals(xs.size());
            for (size_t i = 0; i < xs.size(); ++i)
                vals[i] = app.eval(xs[i]) * half_i_over_g[i];
            const cheb::Series integ =
                cheb::from_values(lo, hi, vals).antiderivative(y_beta);
            for (size_t i = 0; i < xs.size(); ++i)
                vals[i] = integ.eval(xs[i]) * inv_g[i];
            a_cur = cheb::from_values(lo, hi, vals);
        }
        a_list.push_back(a_cur);
        const cheb::Series a_d = a_cur.derivative();
        const cheb::Series a_dd = a_d.derivative();
        std::vector<cplx> res(nq), u(nq);
        for (size_t i = 0; i < nq; ++i) {
            const double x = rule.nodes[i];
            const cplx aj = a_cur.eval(x);
            S[i] += aj;
            T[i] += cplx{0.0, 1.0} * phi_p_q[i] * aj + a_d.eval(x);
            res[i] = eip[i] * (chi_pp[i] * S[i] + 2.0 * chi_p[i] * T[i] +
                               chi[i] * a_dd.eval(x));
            u[i] = chi[i] * eip[i] * S[i];
        }
        const double nu = l2(u);
        if (nu < 1e-300)
            throw std::domain_error("pseudomode: ||u|| underflow");
        const double q = l2(res) / nu;
        if (params.n_terms) {
            // fixed-length request: keep exactly the requested series
            best_q = q;
            best_n = j;
        } else if (best_n < 0 || q < best_q) {
            best_q = q;
            best_n = j;
        } else {
            break;  // adaptive: first q increase ends the series
        }
    }

    PseudomodeResult out;
    out.lambda = lambda;
    out.delta_lambda = D;
    out.mu_lambda = mu;
    out.n_used = best_n;
    out.support_lo = lo;
    out.support_hi = hi;
    out.q = best_q;
    out.lower_bound = 1.0 / best_q;

    // evaluator over the kept terms (uses the analytic pieces only)
    std::vector<cheb::Series> kept(a_list.begin(),
                                   a_list.begin() + (best_n + 1));
    const double DD = D, yb = y_beta;
    const cheb::Series phi_copy = phi;
    out.evaluate = [kept, phi_copy, DD, yb, lo, hi](double x) -> cplx {
        if (x <= lo || x >= hi) return {0.0, 0.0};
        cplx s{0.0, 0.0};
        for (const auto& a : kept) s += a.eval(x);
        return h_of((x - yb) / DD) *
               std::exp(cplx{0.0, 1.0} * phi_copy.eval(x)) * s;
    };

    const long n_samp = 257;
    out.samples.reserve(static_cast<size_t>(n_samp));
    for (long i = 0; i < n_samp; ++i) {
        const double x = lo + (hi - lo) * i / (n_samp - 1.0);
        out.samples.emplace_back(x, out.evaluate(x));
    }
    return out;
}

ScanResult quality_scan(const model::OscillatorSpec& spec,
                        const std::vector<cplx>& curve,
                        const PseudomodeParams& params, long threads) {
    if (curve.size() < 2)
        throw std::invalid_argument("quality_scan: need at least 2 points");
    ScanResult out;
    out.points.resize(curve.size());
    osc::parallel_for(curve.size(), static_cast<int>(threads), [&](std::size_t i) {
        ScanPoint& p = out.points[i];
        p.lambda = curve[i];
        try {
            const auto r = build(spec, curve[i], params);
            p.mu = r.mu_lambda;
            p.q = r.q;
            p.lower_bound = r.lower_bound;
            p.ok = true;
        } catch (const std::exception& e) {
            p.ok = false;
            p.error = e.what();
        }
    });
    std::vector<double> xs, ys;
    for (const auto& p : out.points)
        if (p.ok) {
            xs.push_back(p.mu);
            ys.push_back(std::log(p.lower_bound));
        }
    if (xs.size() < 2)
        throw std::invalid_argument("quality_scan: fewer than 2 successful builds");
    const auto f = least_squares(xs, ys);
    out.eta_hat = f.slope;
    out.r_squared = f.r_squared;
    return out;
}

Certificate certify_against_svd(const model::OscillatorSpec& spec,
                                const discretize::BasisSpec& basis, cplx lambda,
                                const PseudomodeParams& params, double slack) {
    Certificate cert;
    cert.slack = slack;
    cert.pm = build(spec, lambda, params);
    cert.resolvent_norm_value =
        spectra::resolvent_norm(spec, basis, lambda).norm;

    // projection defect onto the finite Hermite basis, on the support
    const auto rule = quadrature::scaled_to(
        quadrature::gauss_legendre(2 * params.quad_order), cert.pm.support_lo,
        cert.pm.support_hi);
    const double l = basis.scaling;
    std::vector<cplx> coef(static_cast<size_t>(basis.size), cplx{0.0, 0.0});
    double norm2 = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        const cplx u = cert.pm.evaluate(x);
        norm2 += rule.weights[i] * std::norm(u);
        const auto psi = quadrature::hermite_functions(x / l, basis.size);
        for (long k = 0; k < basis.size; ++k)
            coef[static_cast<size_t>(k)] +=
                rule.weights[i] * u * psi[static_cast<size_t>(k)] / std::sqrt(l);
    }
    double proj2 = 0.0;
    for (const auto& c : coef) proj2 += std::norm(c);
    cert.defect = std::sqrt(std::max(0.0, 1.0 - proj2 / norm2));
    cert.withheld = cert.defect > 0.10;
    cert.uninformative = cert.pm.q >= 1.0;
    cert.holds =
        cert.pm.lower_bound <= cert.resolvent_norm_value * (1.0 + slack);
    return cert;
}

}  // namespace osc::pseudomode
