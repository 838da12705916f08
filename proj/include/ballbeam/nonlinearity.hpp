#pragma once

// Scalar coefficient functions psi1, psi2, psi3 of the stiffness and damping
// terms: defined on [0, inf), nonnegative, with psi2 non-decreasing. The
// scheme needs their integral means over intervals whose endpoints are the
// quadratic functionals gamma_k, theta_k of neighbouring layers:
//
//     mean(psi, a, b) = (1/(b-a)) int_a^b psi(s) ds,
//
// symmetric in (a, b) and collapsing to psi((a+b)/2) on degenerate
// intervals. Polynomials integrate exactly through their antiderivative;
// general callables use fixed-order Gauss-Legendre quadrature.

#include <functional>
#include <string>
#include <vector>

namespace ballbeam {

class PsiFunction {
 public:
  // psi(s) = coeffs[0] + coeffs[1] s + ...; an empty list is the zero
  // function.
  static PsiFunction polynomial(std::vector<double> coeffs);
  // General psi with optional derivative (psi2 needs one for the starting
  // vector) and quadrature order for the integral mean.
  static PsiFunction callable(std::function<double(double)> fn,
                              std::function<double(double)> dfn = nullptr,
                              int quadrature_order = 16);

  double operator()(double s) const;  // s < 0 -> std::domain_error
  double derivative(double s) const;  // ConfigError when unavailable
  bool has_derivative() const noexcept;
  bool is_polynomial() const noexcept { return kind_ == Kind::Polynomial; }

  double integral_from_zero(double s) const;  // int_0^s psi
  double mean(double a, double b) const;      // integral mean, symmetric

  // Sampled sign / monotonicity checks on [0, s_max]; return false on a
  // detected violation (callers escalate: hard error for polynomials,
  // advisory for callables).
  bool nonnegative_on(double s_max, int samples = 1024) const;
  bool nondecreasing_on(double s_max, int samples = 1024) const;

 private:
  enum class Kind { Polynomial, Callable };

  PsiFunction() = default;

  double eval_poly(double s) const;

  Kind kind_ = Kind::Polynomial;
  std::vector<double> coeffs_;
  std::vector<double> anti_;  // antiderivative coefficients, zero constant
  std::function<double(double)> fn_;
  std::function<double(double)> dfn_;
  std::vector<double> quad_nodes_;    // on [-1, 1]
  std::vector<double> quad_weights_;
};

struct NonlinearityTriple {
  PsiFunction psi1, psi2, psi3;

  // psi1 = alpha + beta s, psi2 = gamma s, psi3 = 0, the extensible-beam
  // model of J. M. Ball.
  static NonlinearityTriple ball(double alpha, double beta, double gamma);
  // All three identically zero: the purely linear regime.
  static NonlinearityTriple none();
};

// Scheme coefficients. gamma/theta arguments must be >= 0.
double coeff_a1(const NonlinearityTriple& t, double gamma_prev, double gamma_next);
double coeff_d(const NonlinearityTriple& t, double gamma_prev, double gamma_next,
               double tau);
double coeff_a3(const NonlinearityTriple& t, double theta_prev, double theta_next);

}  // namespace ballbeam
