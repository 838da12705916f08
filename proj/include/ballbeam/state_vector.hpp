#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "ballbeam/errors.hpp"

namespace ballbeam {

// Coefficient vector of a sine-series expansion: entry j holds the
// coefficient of sin((j+1) pi x / l).
struct StateVector {
  std::vector<double> c;

  StateVector() = default;
  explicit StateVector(std::size_t n, double fill = 0.0) : c(n, fill) {}
  StateVector(std::initializer_list<double> init) : c(init) {}

  std::size_t size() const noexcept { return c.size(); }
  double operator[](std::size_t j) const { return c[j]; }
  double& operator[](std::size_t j) { return c[j]; }

  static StateVector basis(std::size_t n, std::size_t j, double amplitude = 1.0) {
    StateVector e(n);
    e.c.at(j) = amplitude;
    return e;
  }
};

inline void require_same_size(const StateVector& u, const StateVector& v,
                              const char* where) {
  if (u.size() != v.size())
    throw DimensionError(std::string(where) + ": vector length mismatch");
}

inline bool all_finite(const StateVector& u) noexcept {
  for (double x : u.c)
    if (!std::isfinite(x)) return false;
  return true;
}

inline StateVector operator+(const StateVector& u, const StateVector& v) {
  require_same_size(u, v, "StateVector +");
  StateVector w(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) w.c[j] = u.c[j] + v.c[j];
  return w;
}

inline StateVector operator-(const StateVector& u, const StateVector& v) {
  require_same_size(u, v, "StateVector -");
  StateVector w(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) w.c[j] = u.c[j] - v.c[j];
  return w;
}

inline StateVector operator*(double a, const StateVector& u) {
  StateVector w(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) w.c[j] = a * u.c[j];
  return w;
}

inline StateVector operator*(const StateVector& u, double a) { return a * u; }

inline StateVector operator/(const StateVector& u, double a) {
  return (1.0 / a) * u;
}

inline StateVector& operator+=(StateVector& u, const StateVector& v) {
  require_same_size(u, v, "StateVector +=");
  for (std::size_t j = 0; j < u.size(); ++j) u.c[j] += v.c[j];
  return u;
}

inline StateVector& operator-=(StateVector& u, const StateVector& v) {
  require_same_size(u, v, "StateVector -=");
  for (std::size_t j = 0; j < u.size(); ++j) u.c[j] -= v.c[j];
  return u;
}

}  // namespace ballbeam
