#include "ballbeam/operators.hpp"

#include <cmath>
#include <numbers>

#include "ballbeam/errors.hpp"

namespace ballbeam {

SpectralOperator::SpectralOperator(std::vector<double> eigenvalues, std::string label)
    : eig_(std::move(eigenvalues)), label_(std::move(label)) {
  if (eig_.empty()) throw ConfigError("operator " + label_ + ": empty spectrum");
  for (std::size_t j = 0; j < eig_.size(); ++j) {
    if (!(std::isfinite(eig_[j]) && eig_[j] > 0.0))
      throw ConfigError("operator " + label_ + ": eigenvalue " +
                        std::to_string(j + 1) + " must be finite and positive");
  }
}

StateVector apply(const SpectralOperator& op, const StateVector& u) {
  if (op.size() != u.size())
    throw DimensionError("apply(" + op.label() + "): operator/vector length mismatch");
  StateVector w(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) w.c[j] = op.eig(j) * u.c[j];
  return w;
}

SpectralOperator power(const SpectralOperator& op, double s) {
  std::vector<double> eig(op.size());
  for (std::size_t j = 0; j < op.size(); ++j) eig[j] = std::pow(op.eig(j), s);
  return SpectralOperator(std::move(eig), op.label() + "^" + std::to_string(s));
}

SineSpace::SineSpace(double length) : length_(length) {
  if (!(std::isfinite(length) && length > 0.0))
    throw ConfigError("space length must be finite and positive");
}

double SineSpace::inner(const StateVector& u, const StateVector& v) const {
  require_same_size(u, v, "inner");
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += u.c[j] * v.c[j];
  return weight() * s;
}

double SineSpace::norm(const StateVector& u) const {
  double s = 0.0;
  for (double x : u.c) s += x * x;
  return std::sqrt(weight() * s);
}

double SineSpace::norm_of(const StateVector& u, const SpectralOperator& op,
                          double s) const {
  if (op.size() != u.size())
    throw DimensionError("norm_of: operator/vector length mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    double w = std::pow(op.eig(j), 2.0 * s);
    acc += w * u.c[j] * u.c[j];
  }
  return std::sqrt(weight() * acc);
}

double SineSpace::quad_form(const SpectralOperator& op, const StateVector& u) const {
  if (op.size() != u.size())
    throw DimensionError("quad_form: operator/vector length mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) acc += op.eig(j) * u.c[j] * u.c[j];
  return weight() * acc;
}

SpectralOperator SineSpace::laplacian(int modes) const {
  if (modes < 1) throw ConfigError("laplacian: mode count must be >= 1");
  std::vector<double> eig(static_cast<std::size_t>(modes));
  for (int j = 1; j <= modes; ++j) {
    double k = static_cast<double>(j) * std::numbers::pi / length_;
    eig[static_cast<std::size_t>(j - 1)] = k * k;
  }
  return SpectralOperator(std::move(eig), "A");
}

SpectralOperator SineSpace::biharmonic(int modes) const {
  SpectralOperator a = laplacian(modes);
  std::vector<double> eig(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) eig[j] = a.eig(j) * a.eig(j);
  return SpectralOperator(std::move(eig), "B");
}

OperatorSet::OperatorSet(SineSpace space, SpectralOperator A, SpectralOperator B,
                         double b0, BoundedMap C, BoundedMap N, LipschitzMap M)
    : space_(space),
      A_(std::move(A)),
      B_(std::move(B)),
      C_(std::move(C)),
      N_(std::move(N)),
      M_(std::move(M)),
      b0_(b0) {
  if (A_.size() != B_.size())
    throw DimensionError("operator set: A and B must act on the same modes");
  if (!(std::isfinite(b0) && b0 > 0.0))
    throw ConfigError("operator set: b0 must be finite and positive");
  for (std::size_t j = 0; j < A_.size(); ++j) {
    double lhs = A_.eig(j) * A_.eig(j);
    double rhs = b0_ * b0_ * B_.eig(j);
    if (lhs > rhs * (1.0 + 1e-12))
      throw ConfigError(
          "operator compatibility ||A e_j||^2 <= b0^2 (B e_j, e_j) violated at mode " +
          std::to_string(j + 1));
  }
  if (!C_.is_zero()) {
    for (std::size_t j = 0; j < A_.size(); ++j) {
      StateVector e = StateVector::basis(A_.size(), j);
      double lhs = space_.norm(C_(e));
      double rhs = C_.bound * space_.norm_of(e, A_, 1.0);
      if (lhs > rhs * (1.0 + 1e-12))
        throw ConfigError("map C exceeds its declared bound a0 ||A e_j|| at mode " +
                          std::to_string(j + 1));
    }
  }
}

OperatorSet OperatorSet::beam(double length, int modes, double c_mult, double delta) {
  SineSpace space(length);
  SpectralOperator A = space.laplacian(modes);
  SpectralOperator B = space.biharmonic(modes);
  if (c_mult < 0.0) throw ConfigError("beam operators: c_mult must be >= 0");

  BoundedMap C;
  if (c_mult != 0.0) {
    C.fn = [A, c_mult](const StateVector& u) { return c_mult * apply(A, u); };
    C.bound = c_mult;
  }
  BoundedMap N;
  if (delta != 0.0) {
    N.fn = [delta](const StateVector& u) { return delta * u; };
    N.bound = std::abs(delta);
  }
  return OperatorSet(space, std::move(A), std::move(B), 1.0, std::move(C),
                     std::move(N), LipschitzMap{});
}

}  // namespace ballbeam
