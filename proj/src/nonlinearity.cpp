#include "ballbeam/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ballbeam/errors.hpp"

namespace ballbeam {

namespace {

// Interval shorter than this (relative to its endpoints) is treated as
// degenerate and the mean collapses to the midpoint value.
constexpr double kDegenerateRel = 1e-8;

// Nodes and weights of q-point Gauss-Legendre on [-1, 1]: Newton iteration
// on the Legendre polynomial from cosine initial guesses.
void gauss_legendre(int q, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(q, 0.0);
  weights.assign(q, 0.0);
  for (int i = 0; i < q; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int m = 2; m <= q; ++m) {
        double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

void require_domain(double s, const char* where) {
  if (s < 0.0)
    throw std::domain_error(std::string(where) + ": psi argument must be >= 0");
}

}  // namespace

PsiFunction PsiFunction::polynomial(std::vector<double> coeffs) {
  PsiFunction p;
  p.kind_ = Kind::Polynomial;
  p.coeffs_ = std::move(coeffs);
  p.anti_.assign(p.coeffs_.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
    p.anti_[i + 1] = p.coeffs_[i] / static_cast<double>(i + 1);
  return p;
}

PsiFunction PsiFunction::callable(std::function<double(double)> fn,
                                  std::function<double(double)> dfn,
                                  int quadrature_order) {
  if (!fn) throw ConfigError("psi callable: empty function");
  if (quadrature_order < 2)
    throw ConfigError("psi callable: quadrature order must be >= 2");
  PsiFunction p;
  p.kind_ = Kind::Callable;
  p.fn_ = std::move(fn);
  p.dfn_ = std::move(dfn);
  gauss_legendre(quadrature_order, p.quad_nodes_, p.quad_weights_);
  return p;
}

double PsiFunction::eval_poly(double s) const {
  double acc = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * s + coeffs_[i];
  return acc;
}

double PsiFunction::operator()(double s) const {
  require_domain(s, "psi");
  return kind_ == Kind::Polynomial ? eval_poly(s) : fn_(s);
}

bool PsiFunction::has_derivative() const noexcept {
  return kind_ == Kind::Polynomial || static_cast<bool>(dfn_);
}

double PsiFunction::derivative(double s) const {
  require_domain(s, "psi'");
  if (kind_ == Kind::Polynomial) {
    double acc = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 1;)
      acc = acc * s + static_cast<double>(i) * coeffs_[i];
    return acc;
  }
  if (!dfn_)
    throw ConfigError("psi derivative required but not supplied for callable psi");
  return dfn_(s);
}

double PsiFunction::integral_from_zero(double s) const {
  require_domain(s, "psi integral");
  if (kind_ == Kind::Polynomial) {
    double acc = 0.0;
    for (std::size_t i = anti_.size(); i-- > 0;) acc = acc * s + anti_[i];
    return acc;
  }
  if (s == 0.0) return 0.0;
  double mid = 0.5 * s, half = 0.5 * s, acc = 0.0;
  for (std::size_t i = 0; i < quad_nodes_.size(); ++i)
    acc += quad_weights_[i] * fn_(mid + half * quad_nodes_[i]);
  return half * acc;
}

double PsiFunction::mean(double a, double b) const {
  require_domain(a, "psi mean");
  require_domain(b, "psi mean");
  double lo = std::min(a, b), hi = std::max(a, b);
  if (hi - lo <= kDegenerateRel * std::max(1.0, std::abs(a) + std::abs(b)))
    return (*this)(0.5 * (a + b));
  if (kind_ == Kind::Polynomial)
    return (integral_from_zero(hi) - integral_from_zero(lo)) / (hi - lo);
  double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo), acc = 0.0;
  for (std::size_t i = 0; i < quad_nodes_.size(); ++i)
    acc += quad_weights_[i] * fn_(mid + half * quad_nodes_[i]);
  return 0.5 * acc;
}

bool PsiFunction::nonnegative_on(double s_max, int samples) const {
  double scale = std::max(1.0, s_max);
  for (int i = 0; i <= samples; ++i) {
    double s = s_max * static_cast<double>(i) / samples;
    if ((*this)(s) < -1e-12 * scale) return false;
  }
  return true;
}

bool PsiFunction::nondecreasing_on(double s_max, int samples) const {
  double prev = (*this)(0.0);
  double scale = std::max(1.0, std::abs(prev));
  for (int i = 1; i <= samples; ++i) {
    double s = s_max * static_cast<double>(i) / samples;
    double v = (*this)(s);
    scale = std::max(scale, std::abs(v));
    if (v < prev - 1e-12 * scale) return false;
    prev = v;
  }
  return true;
}

NonlinearityTriple NonlinearityTriple::ball(double alpha, double beta, double gamma) {
  return {PsiFunction::polynomial({alpha, beta}),
          PsiFunction::polynomial({0.0, gamma}),
          PsiFunction::polynomial({})};
}

NonlinearityTriple NonlinearityTriple::none() {
  return {PsiFunction::polynomial({}), PsiFunction::polynomial({}),
          PsiFunction::polynomial({})};
}

double coeff_a1(const NonlinearityTriple& t, double gamma_prev, double gamma_next) {
  return t.psi1.mean(gamma_prev, gamma_next);
}

double coeff_d(const NonlinearityTriple& t, double gamma_prev, double gamma_next,
               double tau) {
  if (!(std::isfinite(tau) && tau > 0.0))
    throw ConfigError("coeff_d: tau must be finite and positive");
  return (t.psi2(gamma_next) - t.psi2(gamma_prev)) / (2.0 * tau);
}

double coeff_a3(const NonlinearityTriple& t, double theta_prev, double theta_next) {
  return t.psi3.mean(theta_prev, theta_next);
}

}  // namespace ballbeam
