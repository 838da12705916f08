#pragma once

// One implicit step of the nonlinear three-layer scheme. Writing
// v = (u_{k+1} + u_{k-1})/2, the step equation is
//
//     T v = (tau/2) psi2(gamma_{k-1}) A v - tau N v + f_tilde,
//
//     T = (2 + tau^2 a3) I + tau (a1 + tau a2) B
//         + tau (tau a1k + psi2(gamma_{k+1})/2) A,
//
//     f_tilde = tau (tau f_k - tau M(u_k) + N u_{k-1} - tau C u_k)
//               + tau a1 B u_{k-1} + 2 u_k,
//
// where the scalar coefficients a1k = mean(psi1; gamma_{k-1}, gamma_{k+1}),
// a3 = mean(psi3; theta_{k-1}, theta_{k+1}) and the functionals gamma, theta
// are evaluated at u_{k+1} = 2v - u_{k-1}. The fixed-point iteration freezes
// those coefficients at the previous iterate, so every pass reduces to a
// diagonal solve; successive increments contract geometrically in the
// B^{1/2} norm with a factor that shrinks like sqrt(tau).

#include "ballbeam/nonlinearity.hpp"
#include "ballbeam/operators.hpp"
#include "ballbeam/state_vector.hpp"

namespace ballbeam {

struct IterationConfig {
  double tol = 1e-12;
  int max_iter = 100;
  double q_max = 0.9;  // contraction estimates above this raise a warning

  void validate() const;
};

struct StepContext {
  const OperatorSet& ops;
  const NonlinearityTriple& triple;
  double a1;
  double a2;
  double tau;
  StateVector f_k;
};

// The iterate-independent right-hand side f_tilde.
StateVector assemble_rhs_constant(const StepContext& ctx, const StateVector& u_prev,
                                  const StateVector& u_curr);

// One pass: assembles T at v_m and solves T v_{m+1} = rhs(v_m) per mode.
StateVector iterate_once(const StepContext& ctx, const StateVector& u_prev,
                         const StateVector& u_curr, const StateVector& v_m);

struct StepResult {
  StateVector u_next;
  StateVector v;
  int iterations = 0;
  double contraction = 0.0;  // max observed ratio of successive increments
  bool contraction_warning = false;
};

// Iterates from v_0 = (u_k + u_{k-1})/2 until the B^{1/2} norm of the
// increment drops below tol * (1 + ||B^{1/2} v||); throws NonConvergence at
// max_iter.
StepResult solve_step(const StepContext& ctx, const StateVector& u_prev,
                      const StateVector& u_curr, const IterationConfig& cfg);

}  // namespace ballbeam
