#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "ballbeam/errors.hpp"
#include "ballbeam/operators.hpp"
#include "ballbeam/rng.hpp"

using namespace ballbeam;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("diagonal apply") {
  SpectralOperator op({1.0, 4.0, 9.0}, "A");
  StateVector u({1.0, 1.0, 1.0});
  StateVector r = apply(op, u);
  CHECK(r.c[0] == 1.0);
  CHECK(r.c[1] == 4.0);
  CHECK(r.c[2] == 9.0);

  SpectralOperator one({2.0}, "B");
  CHECK(apply(one, StateVector({0.0})).c[0] == 0.0);

  CHECK_THROWS_AS(apply(op, StateVector({1.0, 2.0})), DimensionError);
}

TEST_CASE("sine laplacian eigenvalues") {
  SineSpace space(pi);
  SpectralOperator a = space.laplacian(3);
  CHECK(a.eig(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.eig(1) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(a.eig(2) == doctest::Approx(9.0).epsilon(1e-15));
  StateVector r = apply(a, StateVector::basis(3, 0));
  CHECK(r.c[0] == doctest::Approx(1.0));
  CHECK(r.c[1] == 0.0);

  // biharmonic is the exact square
  SpectralOperator b = space.biharmonic(3);
  for (std::size_t j = 0; j < 3; ++j)
    CHECK(b.eig(j) == doctest::Approx(a.eig(j) * a.eig(j)).epsilon(1e-14));
}

TEST_CASE("fractional powers") {
  SpectralOperator op({4.0, 9.0}, "B");
  SpectralOperator half = power(op, 0.5);
  CHECK(half.eig(0) == doctest::Approx(2.0));
  CHECK(half.eig(1) == doctest::Approx(3.0));

  CHECK(power(SpectralOperator({4.0}, "B"), 0.0).eig(0) == 1.0);
  CHECK(power(SpectralOperator({4.0}, "B"), -0.5).eig(0) ==
        doctest::Approx(0.5));

  // (B^{1/2})^2 recovers B
  SpectralOperator again = power(half, 2.0);
  for (std::size_t j = 0; j < 2; ++j)
    CHECK(again.eig(j) ==
          doctest::Approx(op.eig(j)).epsilon(1e-14));
}

TEST_CASE("inner product carries the l/2 weight") {
  SineSpace two(2.0);
  CHECK(two.inner(StateVector({1.0, 0.0}), StateVector({1.0, 0.0})) ==
        doctest::Approx(1.0));
  CHECK(two.inner(StateVector({1.0, 0.0}), StateVector({0.0, 1.0})) == 0.0);

  SineSpace sp(pi);
  CHECK(sp.inner(StateVector({2.0, 1.0}), StateVector({1.0, 3.0})) ==
        doctest::Approx(2.5 * pi).epsilon(1e-15));
}

TEST_CASE("weighted norms") {
  SineSpace two(2.0);
  StateVector u({3.0, 4.0});
  SpectralOperator a({1.0, 4.0}, "A");
  CHECK(two.norm(u) == doctest::Approx(5.0));
  CHECK(two.norm_of(StateVector({1.0, 1.0}), a, 0.5) ==
        doctest::Approx(std::sqrt(5.0)));

  // ||B^{1/2} u|| = ||A u|| when B = A^2
  SineSpace sp(pi);
  SpectralOperator lap = sp.laplacian(4);
  SpectralOperator bih = sp.biharmonic(4);
  StateVector v({0.3, -1.2, 0.0, 2.5});
  CHECK(sp.norm_of(v, bih, 0.5) ==
        doctest::Approx(sp.norm(apply(lap, v))).epsilon(1e-13));
}

TEST_CASE("norm identities on random vectors") {
  std::mt19937_64 gen(2024);
  SineSpace sp(3.0);
  SpectralOperator a = sp.laplacian(6);
  SpectralOperator b = sp.biharmonic(6);
  for (int trial = 0; trial < 1000; ++trial) {
    StateVector u(6);
    for (double& c : u.c) c = uniform(gen, -5.0, 5.0);
    const double n = sp.norm(u);
    CHECK(sp.inner(u, u) == doctest::Approx(n * n).epsilon(1e-12));
    // self-adjoint square root: ||A^{1/2}u||^2 = (Au, u)
    const double g = sp.norm_of(u, a, 0.5);
    CHECK(g * g ==
          doctest::Approx(sp.inner(apply(a, u), u)).epsilon(1e-12));
    // ||Au|| <= b0 ||B^{1/2}u|| with equality for B = A^2, b0 = 1
    CHECK(sp.norm(apply(a, u)) ==
          doctest::Approx(sp.norm_of(u, b, 0.5)).epsilon(1e-12));
  }
}

TEST_CASE("spectral operator construction guards") {
  CHECK_THROWS_AS(SpectralOperator({1.0, 0.0}, "bad"), ConfigError);
  CHECK_THROWS_AS(SpectralOperator({-2.0}, "bad"), ConfigError);
  CHECK_THROWS_AS(SpectralOperator({std::nan("")}, "bad"), ConfigError);
  CHECK_THROWS_AS(SpectralOperator({}, "empty"), ConfigError);
  CHECK_THROWS_AS(SineSpace(0.0), ConfigError);
}

TEST_CASE("operator set compatibility check") {
  SineSpace sp(pi);
  // lam_A^2 > b0^2 lam_B at mode 2 must be rejected
  SpectralOperator a({1.0, 4.0}, "A");
  SpectralOperator b_bad({1.0, 15.0}, "B");
  CHECK_THROWS_WITH_AS(OperatorSet(sp, a, b_bad, 1.0),
                       doctest::Contains("mode 2"), ConfigError);
  // generous b0 fixes it
  CHECK_NOTHROW(OperatorSet(sp, a, b_bad, 1.2));
  // mismatched dimensions
  CHECK_THROWS_AS(OperatorSet(sp, a, SpectralOperator({1.0}, "B"), 1.0),
                  DimensionError);
}

TEST_CASE("beam realization") {
  OperatorSet ops = OperatorSet::beam(pi, 3, 0.5, 0.25);
  CHECK(ops.b0() == 1.0);
  CHECK(ops.norm_N() == doctest::Approx(0.25));
  StateVector u({1.0, 2.0, 0.5});
  // C = 0.5 A, N = 0.25 I
  StateVector cu = ops.C()(u);
  StateVector au = apply(ops.A(), u);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(cu.c[j] == doctest::Approx(0.5 * au.c[j]));
    CHECK(ops.N()(u).c[j] == doctest::Approx(0.25 * u.c[j]));
  }
  CHECK(ops.M().is_zero());
  CHECK(ops.M()(u).c[0] == 0.0);

  // declared C bound too small must fail the per-basis-vector check
  SineSpace sp(pi);
  SpectralOperator a = sp.laplacian(2);
  SpectralOperator b = sp.biharmonic(2);
  BoundedMap c_lying{[&a](const StateVector& v) { return apply(a, v); }, 0.5};
  CHECK_THROWS_AS(OperatorSet(sp, a, b, 1.0, c_lying), ConfigError);
}

TEST_CASE("quadratic functionals") {
  OperatorSet ops = OperatorSet::beam(2.0, 2);  // weight = 1, lam_A = (j pi/2)^2
  StateVector u({1.0, 0.5});
  const double l1 = std::pow(pi / 2.0, 2), l2 = std::pow(pi, 2);
  CHECK(ops.gamma(u) == doctest::Approx(l1 + 0.25 * l2).epsilon(1e-14));
  CHECK(ops.beta(u) ==
        doctest::Approx(l1 * l1 + 0.25 * l2 * l2).epsilon(1e-14));
  CHECK(ops.theta(u) == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("state vector arithmetic") {
  StateVector u({1.0, 2.0});
  StateVector v({0.5, -1.0});
  CHECK((u + v).c[1] == 1.0);
  CHECK((u - v).c[0] == 0.5);
  CHECK((2.0 * u).c[1] == 4.0);
  CHECK((u * 2.0).c[0] == 2.0);
  CHECK((u / 2.0).c[0] == 0.5);
  u += v;
  CHECK(u.c[0] == 1.5);
  u -= v;
  CHECK(u.c[0] == 1.0);
  CHECK(StateVector::basis(3, 1, 2.5).c[1] == 2.5);
  CHECK(StateVector::basis(3, 1).c[0] == 0.0);
  CHECK_THROWS_AS((void)(u + StateVector({1.0, 2.0, 3.0})), DimensionError);
  CHECK(all_finite(u));
  StateVector w({1.0, std::nan("")});
  CHECK_FALSE(all_finite(w));
}
