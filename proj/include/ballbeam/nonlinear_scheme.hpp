#pragma once

// Semi-discrete solver for the abstract beam equation
//
//   u'' + a1 B u' + a2 B u + psi1(||A^{1/2}u||^2) A u
//      + (d/dt psi2(||A^{1/2}u||^2)) A u + psi3(||u||^2) u
//      + C u + N u' + M(u) = f,        u(0) = phi0, u'(0) = phi1,
//
// by the symmetric three-layer scheme whose per-step equation lives in
// step_solver.hpp. The run records the discrete energy
//
//   lambda_k = alpha_k + (a2 (beta_k + beta_{k-1}) + mu_k + mu_{k-1}
//              + nu_k + nu_{k-1}) / 2,
//
//   alpha_k = ||(u_k - u_{k-1})/tau||^2,  beta_k = ||B^{1/2} u_k||^2,
//   mu_k = int_0^{gamma_k} psi1,          nu_k = int_0^{theta_k} psi3,
//
// which is non-increasing whenever f = 0 and C = N = M = 0.

#include <functional>
#include <string>
#include <vector>

#include "ballbeam/nonlinearity.hpp"
#include "ballbeam/operators.hpp"
#include "ballbeam/state_vector.hpp"
#include "ballbeam/step_solver.hpp"

namespace ballbeam {

struct Forcing {
  std::function<StateVector(double)> fn;  // empty = identically zero

  bool is_zero() const noexcept { return !fn; }
  StateVector at(double t, std::size_t modes) const {
    return fn ? fn(t) : StateVector(modes);
  }
};

struct SchemeConfig {
  OperatorSet ops;
  NonlinearityTriple triple;
  double a1 = 1.0;
  double a2 = 1.0;
  double t_bar = 1.0;  // final time
  int n = 100;         // number of steps; tau = t_bar / n
  Forcing forcing;
  StateVector phi0;
  StateVector phi1;
  IterationConfig solver;
  int start_order = 2;  // 2: Taylor start through u''(0); 1: phi0 + tau phi1

  double tau() const { return t_bar / n; }
  bool conservative() const {
    return forcing.is_zero() && ops.C().is_zero() && ops.N().is_zero() &&
           ops.M().is_zero();
  }
  // Throws ConfigError naming the violated constraint.
  void validate() const;
};

// u''(0) obtained from the equation at t = 0.
StateVector compute_phi2(const SchemeConfig& cfg);

// u_1 = phi0 + tau phi1 (+ tau^2/2 u''(0) for the second-order start).
StateVector starting_vector(const SchemeConfig& cfg);

// Per-step diagnostics, index k = 0..n. Quantities that need two layers
// (alpha, lambda) are NaN at k = 0; iteration data attaches to the produced
// layer, so it is absent (-1 / NaN) for k <= 1.
struct RunTrace {
  int n = 0;
  double tau = 0.0;
  std::vector<double> t, gamma, theta, alpha, beta, mu, nu, lambda, contraction;
  std::vector<int> iterations;
  std::vector<int> contraction_warnings;  // steps whose estimate exceeded q_max
  bool psi_range_warning = false;  // callable psi sampled negative/decreasing

  // step,t,norm_u,norm_Asqrt_u,norm_Bsqrt_u,norm_du_dt,lambda,iters,contraction
  std::string to_csv() const;
};

struct RunResult {
  std::vector<StateVector> states;  // u_0..u_n
  RunTrace trace;
};

RunResult run(const SchemeConfig& cfg);

// lambda_k; defined for 1 <= k <= n.
double energy(const RunTrace& trace, int k);

struct EnergyReport {
  bool applicable = false;  // false when the run is forced or damped
  bool pass = true;
  double max_violation = 0.0;  // max of lambda_{k+1} - lambda_k - tol_k
  int worst_step = -1;
};

// Checks lambda_{k+1} <= lambda_k + 1e-10 (1 + lambda_k) for k = 1..n-1.
EnergyReport check_energy_decay(const RunTrace& trace, bool conservative);

struct BoundednessReport {
  std::vector<int> n;
  std::vector<double> sup_velocity;    // max_k ||(u_k - u_{k-1})/tau||
  std::vector<double> sup_bsqrt;       // max_k ||B^{1/2} u_k||
  std::vector<double> sup_gamma_rate;  // max_k |gamma_k - gamma_{k-1}|/tau
  bool pass = false;  // finest <= 1.1 * coarsest for velocity and B^{1/2} sups
};

// Reruns the same data on each n and checks that the sup norms do not grow
// under refinement.
BoundednessReport boundedness_study(const SchemeConfig& base,
                                    const std::vector<int>& n_values);

}  // namespace ballbeam
