#pragma once

// Deterministic random problem generators shared by the test binaries.
// Sizes and magnitudes are kept inside the fixed-point convergence regime
// (small tau, moderate states) so the production solver and the oracle both
// apply.

#include <random>
#include <vector>

#include "ballbeam/nonlinearity.hpp"
#include "ballbeam/operators.hpp"
#include "ballbeam/rng.hpp"
#include "ballbeam/state_vector.hpp"

namespace ballbeam::testing {

inline StateVector random_state(std::mt19937_64& gen, std::size_t m,
                                double scale) {
  StateVector v(m);
  for (double& c : v.c) c = uniform(gen, -scale, scale);
  return v;
}

inline NonlinearityTriple random_triple(std::mt19937_64& gen) {
  if (uniform01(gen) < 0.5)
    return NonlinearityTriple::ball(uniform(gen, 0.1, 2.0),
                                    uniform(gen, 0.1, 2.0),
                                    uniform(gen, 0.1, 1.0));
  // nonnegative coefficients keep psi nonnegative and nondecreasing
  auto poly = [&gen](double c0_max) {
    return PsiFunction::polynomial({uniform(gen, 0.0, c0_max),
                                    uniform(gen, 0.0, 1.0),
                                    uniform(gen, 0.0, 0.3)});
  };
  return {poly(1.5), PsiFunction::polynomial({0.0, uniform(gen, 0.0, 1.0)}),
          poly(0.5)};
}

struct StepProblem {
  OperatorSet ops;
  NonlinearityTriple triple;
  double a1;
  double a2;
  double tau;
  double delta;
  StateVector u_prev;
  StateVector u_curr;
  StateVector f_k;
};

inline StepProblem random_step_problem(std::mt19937_64& gen) {
  const int modes = uniform_int(gen, 1, 4);
  const double length = uniform(gen, 2.0, 4.0);
  const double delta = uniform01(gen) < 0.4 ? uniform(gen, 0.0, 0.5) : 0.0;
  const std::size_t m = static_cast<std::size_t>(modes);
  return StepProblem{OperatorSet::beam(length, modes, 0.0, delta),
                     random_triple(gen),
                     uniform(gen, 0.5, 2.0),
                     uniform(gen, 0.1, 1.5),
                     uniform(gen, 0.005, 0.02),
                     delta,
                     random_state(gen, m, 0.25),
                     random_state(gen, m, 0.25),
                     random_state(gen, m, 0.5)};
}

}  // namespace ballbeam::testing
