#pragma once

// Three-layer scheme for the damped linear equation u'' + a1 B u' + a2 B u = f:
//
//   (u_{k+1} - 2u_k + u_{k-1})/tau^2 + a1 B (u_{k+1} - u_{k-1})/(2 tau)
//                                    + a2 B (u_{k+1} + u_{k-1})/2 = f_k,
//
// solved per mode as B0 u_{k+1} = 2 u_k - B1 u_{k-1} + tau^2 f_k with
//
//   B0 = I + (tau/2)(a1 + tau a2) B,   B1 = B0 - tau a1 B.
//
// The pair L = 2 B0^{-1}, S = B1 B0^{-1} generates the closed-form solution
// through the two-variable Chebyshev polynomials,
//
//   u_{k+1} = U_k(L, S) u_1 - S U_{k-1}(L, S) u_0
//             + (tau^2 / 2) sum_{i=1..k} U_{k-i}(L, S) L f_i,
//
// and, whenever 1 - tau a2/a1 > 0, every mode's (L_j, S_j) lies in the
// closure of the region DeltaPlus where those polynomials are uniformly
// bounded. That gives computable a priori bounds on the discrete solution,
// checked a posteriori by the verify_* functions below.

#include <string_view>
#include <vector>

#include "ballbeam/operators.hpp"
#include "ballbeam/state_vector.hpp"

namespace ballbeam {

class LinearSchemeOps {
 public:
  // Throws StepSizeError when 1 - tau a2/a1 <= 0.
  LinearSchemeOps(SineSpace space, SpectralOperator B, double tau, double a1,
                  double a2);

  double tau() const noexcept { return tau_; }
  double a1() const noexcept { return a1_; }
  double a2() const noexcept { return a2_; }
  double a() const noexcept { return a2_ / a1_; }  // damping ratio
  const SineSpace& space() const noexcept { return space_; }
  const SpectralOperator& B() const noexcept { return B_; }
  std::size_t modes() const noexcept { return B_.size(); }

  const std::vector<double>& b0_modes() const noexcept { return b0_; }
  const std::vector<double>& b1_modes() const noexcept { return b1_; }
  const std::vector<double>& l_modes() const noexcept { return l_; }
  const std::vector<double>& s_modes() const noexcept { return s_; }

  // One step: u_{k+1} from (u_{k-1}, u_k, f_k).
  StateVector step(const StateVector& u_prev, const StateVector& u_curr,
                   const StateVector& f_k) const;

  // u_{k+1} directly from the Chebyshev representation, k = forcing.size();
  // an empty forcing list returns u_1.
  StateVector solve_by_representation(const StateVector& u0, const StateVector& u1,
                                      const std::vector<StateVector>& forcing) const;

 private:
  SineSpace space_;
  SpectralOperator B_;
  double tau_, a1_, a2_;
  std::vector<double> b0_, b1_, l_, s_;
};

// A completed linear evolution: states u_0..u_n and the forcing f_1..f_{n-1}
// that produced them.
struct LinearRun {
  std::vector<StateVector> states;
  std::vector<StateVector> forcing;
};

LinearRun run_linear(const LinearSchemeOps& ops, const StateVector& u0,
                     const StateVector& u1, const std::vector<StateVector>& forcing);

struct EstimateReport {
  std::string_view estimate_id;
  double s = 0.0;
  double worst_ratio = 0.0;  // max over steps of attained / bound
  int worst_step = 0;
  bool pass = false;  // worst_ratio <= 1 + 1e-12
};

// ||B^s u_{k+1}|| against sqrt(2)||B^s u_0|| + (2/a1)||B^{s-1} w||
//   + tau(1 + tau a)||B^s w|| + (2 tau/a1) sum ||B^{s-1} f_i||,
// w = (u_1 - u_0)/tau.  id "state_s".
EstimateReport verify_state_estimate(const LinearSchemeOps& ops,
                                     const LinearRun& run, double s);

// ||(u_{k+1} - u_k)/tau|| against 2a||u_0|| + sqrt(2)||w|| +
// sqrt(2) tau sum ||f_i||.  id "diff".
EstimateReport verify_difference_estimate(const LinearSchemeOps& ops,
                                          const LinearRun& run);

// The same bound conjugated by B^s.  id "diff_s".
EstimateReport verify_difference_estimate_powered(const LinearSchemeOps& ops,
                                                  const LinearRun& run, double s);

}  // namespace ballbeam
