#pragma once

// Spectral representation of the beam problem on H = L^2(0, l).
//
// In the sine basis e_j(x) = sin(j pi x / l) (hinged ends) every operator of
// interest is diagonal: A = -d^2/dx^2 has eigenvalues (j pi / l)^2 and
// B = d^4/dx^4 = A^2 their squares. Since int_0^l e_j^2 dx = l/2, the inner
// product of coefficient vectors carries that weight:
//
//     (u, v) = (l/2) sum_j c_j d_j,   ||A^s u||^2 = (l/2) sum_j lam_j^{2s} c_j^2.
//
// Generic positive eigenvalue sequences are accepted too; compatibility of a
// generic pair (A, B) is checked mode by mode as lam_j(A)^2 <= b0^2 lam_j(B).

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ballbeam/state_vector.hpp"

namespace ballbeam {

// Diagonal positive operator given by its eigenvalue sequence.
class SpectralOperator {
 public:
  SpectralOperator(std::vector<double> eigenvalues, std::string label);

  const std::vector<double>& eigenvalues() const noexcept { return eig_; }
  double eig(std::size_t j) const { return eig_[j]; }
  std::size_t size() const noexcept { return eig_.size(); }
  const std::string& label() const noexcept { return label_; }

 private:
  std::vector<double> eig_;
  std::string label_;
};

StateVector apply(const SpectralOperator& op, const StateVector& u);

// op^s, eigenvalue-wise; s = 0 gives the identity exactly, negative s is
// fine because the spectrum is strictly positive.
SpectralOperator power(const SpectralOperator& op, double s);

// The ambient space: fixes the length l and with it the inner-product weight.
class SineSpace {
 public:
  explicit SineSpace(double length);

  double length() const noexcept { return length_; }
  double weight() const noexcept { return 0.5 * length_; }

  double inner(const StateVector& u, const StateVector& v) const;
  double norm(const StateVector& u) const;
  // ||op^s u||
  double norm_of(const StateVector& u, const SpectralOperator& op, double s) const;
  // ||op^{1/2} u||^2 = weight * sum lam_j c_j^2, the quadratic functionals
  // gamma, beta of the scheme.
  double quad_form(const SpectralOperator& op, const StateVector& u) const;

  SpectralOperator laplacian(int modes) const;   // lam_j = (j pi / l)^2
  SpectralOperator biharmonic(int modes) const;  // lam_j = (j pi / l)^4

 private:
  double length_;
};

// Slot for the bounded linear perturbations C and N: an arbitrary map with a
// declared bound (||C e_j|| <= bound * ||A e_j|| for the C slot, operator
// norm for the N slot). An empty function is the zero map.
struct BoundedMap {
  std::function<StateVector(const StateVector&)> fn;
  double bound = 0.0;

  bool is_zero() const noexcept { return !fn; }
  StateVector operator()(const StateVector& u) const {
    return fn ? fn(u) : StateVector(u.size());
  }
};

// Slot for the Lipschitz nonlinearity M; empty = zero map.
struct LipschitzMap {
  std::function<StateVector(const StateVector&)> fn;
  double lipschitz = 0.0;

  bool is_zero() const noexcept { return !fn; }
  StateVector operator()(const StateVector& u) const {
    return fn ? fn(u) : StateVector(u.size());
  }
};

class OperatorSet {
 public:
  // Validates dimensions, per-mode compatibility lam_A^2 <= b0^2 lam_B and,
  // for a custom C, the declared bound on every basis vector.
  OperatorSet(SineSpace space, SpectralOperator A, SpectralOperator B, double b0,
              BoundedMap C = {}, BoundedMap N = {}, LipschitzMap M = {});

  // Beam realization: A = -d^2/dx^2, B = A^2 (so b0 = 1), C = c_mult * A,
  // N = delta * I.
  static OperatorSet beam(double length, int modes, double c_mult = 0.0,
                          double delta = 0.0);

  const SineSpace& space() const noexcept { return space_; }
  const SpectralOperator& A() const noexcept { return A_; }
  const SpectralOperator& B() const noexcept { return B_; }
  const BoundedMap& C() const noexcept { return C_; }
  const BoundedMap& N() const noexcept { return N_; }
  const LipschitzMap& M() const noexcept { return M_; }
  double b0() const noexcept { return b0_; }
  double norm_N() const noexcept { return N_.bound; }
  std::size_t modes() const noexcept { return A_.size(); }

  // gamma = ||A^{1/2}u||^2, beta = ||B^{1/2}u||^2, theta = ||u||^2
  double gamma(const StateVector& u) const { return space_.quad_form(A_, u); }
  double beta(const StateVector& u) const { return space_.quad_form(B_, u); }
  double theta(const StateVector& u) const {
    double n = space_.norm(u);
    return n * n;
  }

 private:
  SineSpace space_;
  SpectralOperator A_;
  SpectralOperator B_;
  BoundedMap C_;
  BoundedMap N_;
  LipschitzMap M_;
  double b0_;
};

}  // namespace ballbeam
