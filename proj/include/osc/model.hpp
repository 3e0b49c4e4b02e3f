#ifndef OSC_MODEL_HPP
#define OSC_MODEL_HPP

// Operator families on L^2(R), their parameter constraints, and every
// closed-form constant / predicted asymptote attached to them:
//
//   PolynomialL:      -d^2/dx^2 + x^{2a} + V_1(x),  V_1 = Re V_1 + i Im V_1,
//                     deg(Re V_1) <= 2a-1, deg(Im V_1) = b, a-1 < b < 2a,
//                     leading coefficient c_b of Im V_1 positive.
//   EvenImaginary:    -d^2/dx^2 + i|x|^b, b > 0.
//   OddImaginary:     -d^2/dx^2 + i x^{2b+1}, integer b >= 1.
//   Conjugated:       -d^2/dx^2 + |x|^b + first-order terms from conjugating
//                     by exp(v), v odd with v(x) = x^{(2+b)s/2}/2 for x > 1.
//   SelfAdjointPower: -d^2/dx^2 + |x|^l, l > 0.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osc/common.hpp"

namespace osc::model {

enum class Family {
    PolynomialL,
    EvenImaginary,
    OddImaginary,
    Conjugated,
    SelfAdjointPower,
};

struct OscillatorSpec {
    Family family = Family::SelfAdjointPower;

    // PolynomialL parameters (coefficients stored dense, low-to-high degree).
    long a = 1;
    std::vector<double> re_coeffs;  // Re V_1
    std::vector<double> im_coeffs;  // Im V_1
    double shift = 0.0;  // user-visible scalar added to Re V_1 on request

    // EvenImaginary / OddImaginary / Conjugated
    double b = 2.0;
    double s = 0.5;  // Conjugated only

    // SelfAdjointPower
    double l = 2.0;
};

// Convenience constructors.
OscillatorSpec make_polynomial(long a, std::vector<double> re_coeffs,
                               std::vector<double> im_coeffs);
OscillatorSpec make_even_imaginary(double b);
OscillatorSpec make_odd_imaginary(long b);
OscillatorSpec make_conjugated(double b, double s);
OscillatorSpec make_self_adjoint(double l);

// Degree of a dense coefficient list (trailing ~0 entries ignored); -1 when
// the polynomial is identically zero.
long poly_degree(const std::vector<double>& coeffs);
double poly_eval(const std::vector<double>& coeffs, double x);
cplx poly_eval(const std::vector<double>& coeffs, cplx z);

// Degree b of Im V_1 and its leading coefficient c_b (PolynomialL only).
long im_degree(const OscillatorSpec& spec);
double leading_c(const OscillatorSpec& spec);

// Full list of violated constraints; empty means valid.  Never throws.
std::vector<std::string> validate(const OscillatorSpec& spec);
// Advisories that do not invalidate the spec (e.g. Re V_1 not >= 1; spectra
// shift transparently and the discretizer can add a user-visible shift).
std::vector<std::string> warnings(const OscillatorSpec& spec);
// Throws std::invalid_argument listing all violations.
void require_valid(const OscillatorSpec& spec);

struct AsymptoticConstants {
    double kappa = 0.0;  // eigenvalue growth order: Re lambda_n ~ (d n)^kappa
    double d = 0.0;
    std::optional<double> sigma;    // projection growth order exponent
    std::optional<double> tau;      // admissible-region exponent
    std::optional<double> omega0;   // even-b envelope margin ceiling
    std::optional<double> ray_angle;        // arg lambda_n for EvenImaginary
    std::optional<double> slope_constant;   // known lim log||P_n||/n
    std::optional<double> projection_exponent;  // s/kappa for Conjugated
};

AsymptoticConstants constants(const OscillatorSpec& spec);

// Leading real-part model (d n)^kappa (imaginary part not modeled).
cplx predicted_eigenvalue(const OscillatorSpec& spec, long n);

// Shifted harmonic oscillator -d^2 + x^2 + alpha_1 x + alpha_0:
// lambda_n = 2n - 1 + alpha_0 - alpha_1^2/4, n >= 1.
cplx exact_shifted_ho(cplx alpha1, cplx alpha0, long n);

struct ProjectionModel {
    enum class Kind { ExactFormula, SlopeModel, ExponentModel, NoClosedModel };
    Kind kind = Kind::NoClosedModel;
    std::optional<double> value;     // ExactFormula: predicted ||P_n||
    std::optional<double> slope;     // SlopeModel: log||P_n|| ~ slope * n
    std::optional<double> exponent;  // ExponentModel: log||P_n|| ~ lambda_n^exponent
    std::optional<double> sigma;     // limsup order when no closed model
    std::string description;
};

ProjectionModel predicted_projection_norm(const OscillatorSpec& spec, long n);

// Multiplication potential V(z).  Families whose potential is not an entire
// function (|x|^b with b not an even integer, Conjugated) accept real z only
// and throw std::domain_error for complex input.
cplx potential_eval(const OscillatorSpec& spec, cplx z);

// Conjugated-family gauge function v and v' (odd, C^1, v(x) = x^{(2+b)s/2}/2
// for x >= 1, odd polynomial blend on |x| < 1).
double conj_v(const OscillatorSpec& spec, double x);
double conj_v_prime(const OscillatorSpec& spec, double x);

// Turning points (x_alpha, y_beta) for PolynomialL:
// x_alpha = (Re lambda)^{1/(2a)}, y_beta = (Im lambda / c_b)^{1/b}.
std::pair<double, double> turning_points(const OscillatorSpec& spec, cplx lambda);

struct AdmissibleReport {
    bool admissible = false;
    std::string reason;
};

// Envelope test for pseudomode-admissible lambda (PolynomialL):
//   b odd:  0 <= beta <= (c_b - eps) alpha^{b/(2a)}
//   b even: alpha^{b/(2(b+1)) + omega} <= beta <= (c_b - eps) alpha^{b/(2a)}
AdmissibleReport admissible_region(const OscillatorSpec& spec, cplx lambda,
                                   double epsilon, double omega);

}  // namespace osc::model

#endif
