#include <cmath>
#include <random>

#include <doctest.h>

#include "ballbeam/errors.hpp"
#include "ballbeam/linear_scheme.hpp"
#include "ballbeam/step_solver.hpp"
#include "support/random_problems.hpp"
#include "support/step_oracle.hpp"

using namespace ballbeam;
using ballbeam::testing::OracleProblem;
using ballbeam::testing::OracleStep;
using ballbeam::testing::StepProblem;

TEST_CASE("iteration config guards") {
  IterationConfig bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = IterationConfig{};
  bad.max_iter = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = IterationConfig{};
  bad.q_max = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK_NOTHROW(IterationConfig{}.validate());
}

TEST_CASE("linear regime reduces to the linear scheme") {
  OperatorSet ops = OperatorSet::beam(2.0, 4);
  NonlinearityTriple none = NonlinearityTriple::none();
  const double tau = 0.05, a1 = 1.0, a2 = 1.0;
  LinearSchemeOps lin(ops.space(), ops.B(), tau, a1, a2);
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    StateVector u_prev = ballbeam::testing::random_state(gen, 4, 1.0);
    StateVector u_curr = ballbeam::testing::random_state(gen, 4, 1.0);
    StateVector f = ballbeam::testing::random_state(gen, 4, 2.0);
    StepContext ctx{ops, none, a1, a2, tau, f};
    StepResult res = solve_step(ctx, u_prev, u_curr, IterationConfig{});
    StateVector expect = lin.step(u_prev, u_curr, f);
    CHECK(ops.space().norm(res.u_next - expect) <=
          1e-14 * std::max(1.0, ops.space().norm(expect)));
    // frozen coefficients don't move in the linear regime
    CHECK(res.iterations <= 2);
    CHECK_FALSE(res.contraction_warning);
  }
}

TEST_CASE("zero data fixed point") {
  OperatorSet ops = OperatorSet::beam(3.0, 3);
  NonlinearityTriple ball = NonlinearityTriple::ball(1.0, 1.0, 1.0);
  StateVector z(3);
  StepContext ctx{ops, ball, 1.0, 1.0, 0.01, z};
  StepResult res = solve_step(ctx, z, z, IterationConfig{});
  CHECK(ops.space().norm(res.u_next) == 0.0);
}

TEST_CASE("single mode scalar cross-check") {
  // one mode: the step equation is scalar and can be iterated by hand
  OperatorSet ops = OperatorSet::beam(2.0, 1);
  const double lamA = ops.A().eig(0), lamB = ops.B().eig(0);
  NonlinearityTriple ball = NonlinearityTriple::ball(0.5, 1.5, 0.8);
  const double a1 = 1.0, a2 = 0.7, tau = 0.01;
  const double up = 0.3, uc = 0.35, fk = 0.2;
  const double w = ops.space().weight();

  StepContext ctx{ops, ball, a1, a2, tau, StateVector({fk})};
  StepResult res =
      solve_step(ctx, StateVector({up}), StateVector({uc}), IterationConfig{});

  const double g_prev = w * lamA * up * up;
  const double f_tilde = tau * (tau * fk) + tau * a1 * lamB * up + 2.0 * uc;
  double v = 0.5 * (uc + up);
  for (int m = 0; m < 200; ++m) {
    const double u_new = 2.0 * v - up;
    const double g_next = w * lamA * u_new * u_new;
    const double a1k = ball.psi1.mean(g_prev, g_next);
    const double t = 2.0 + tau * (a1 + tau * a2) * lamB +
                     tau * (tau * a1k + 0.5 * ball.psi2(g_next)) * lamA;
    const double rhs = 0.5 * tau * ball.psi2(g_prev) * lamA * v + f_tilde;
    const double v_new = rhs / t;
    if (std::abs(v_new - v) < 1e-16) {
      v = v_new;
      break;
    }
    v = v_new;
  }
  CHECK(res.u_next.c[0] == doctest::Approx(2.0 * v - up).epsilon(1e-12));
}

TEST_CASE("random problems against the certified oracle") {
  std::mt19937_64 gen(1234);
  IterationConfig cfg;
  for (int trial = 0; trial < 30; ++trial) {
    StepProblem p = ballbeam::testing::random_step_problem(gen);
    StepContext ctx{p.ops, p.triple, p.a1, p.a2, p.tau, p.f_k};
    StepResult res = solve_step(ctx, p.u_prev, p.u_curr, cfg);

    OracleProblem op{p.ops,  p.triple, p.a1,     p.a2,
                     p.tau,  p.delta,  p.f_k,    p.u_prev,
                     p.u_curr};
    OracleStep ref = ballbeam::testing::oracle_solve_step(op);
    const double scale =
        1.0 + p.ops.space().norm_of(ref.u_next, p.ops.B(), 0.5);
    const double gap =
        p.ops.space().norm_of(res.u_next - ref.u_next, p.ops.B(), 0.5);
    CAPTURE(trial);
    CHECK(gap <= 10.0 * cfg.tol * scale);
  }
}

TEST_CASE("solution satisfies the three-layer relation") {
  std::mt19937_64 gen(999);
  IterationConfig cfg;
  for (int trial = 0; trial < 30; ++trial) {
    StepProblem p = ballbeam::testing::random_step_problem(gen);
    StepContext ctx{p.ops, p.triple, p.a1, p.a2, p.tau, p.f_k};
    StepResult res = solve_step(ctx, p.u_prev, p.u_curr, cfg);
    OracleProblem op{p.ops,  p.triple, p.a1,     p.a2,
                     p.tau,  p.delta,  p.f_k,    p.u_prev,
                     p.u_curr};
    const double resid = ballbeam::testing::step_residual(op, res.u_next);
    const double scale =
        1.0 + p.ops.space().norm_of(ballbeam::testing::detail::f_tilde(op),
                                    p.ops.B(), 0.5);
    CHECK(resid <= 10.0 * cfg.tol * scale);
  }
}

TEST_CASE("successive increments contract") {
  OperatorSet ops = OperatorSet::beam(2.5, 3);
  NonlinearityTriple ball = NonlinearityTriple::ball(1.0, 1.0, 0.5);
  StateVector u_prev({0.2, -0.1, 0.05});
  StateVector u_curr({0.22, -0.08, 0.06});
  StateVector f({0.5, 0.0, -0.3});
  StepContext ctx{ops, ball, 1.0, 1.0, 0.02, f};

  StateVector v = 0.5 * (u_curr + u_prev);
  double prev_inc = -1.0;
  for (int m = 0; m < 8; ++m) {
    StateVector v_new = iterate_once(ctx, u_prev, u_curr, v);
    const double inc = ops.space().norm_of(v_new - v, ops.B(), 0.5);
    if (prev_inc > 1e-14) CHECK(inc <= prev_inc * (1.0 + 1e-10));
    prev_inc = inc;
    v = v_new;
  }
}

TEST_CASE("contraction estimate shrinks with tau") {
  OperatorSet ops = OperatorSet::beam(2.0, 2);
  NonlinearityTriple ball = NonlinearityTriple::ball(1.0, 2.0, 1.0);
  StateVector u_prev({0.4, 0.2});
  StateVector u_curr({0.42, 0.19});
  StateVector f({1.0, -0.5});
  auto contraction_at = [&](double tau) {
    StepContext ctx{ops, ball, 1.0, 1.0, tau, f};
    return solve_step(ctx, u_prev, u_curr, IterationConfig{}).contraction;
  };
  const double q1 = contraction_at(0.04);
  const double q2 = contraction_at(0.01);
  CHECK(q2 > 0.0);
  CHECK(q2 <= 0.75 * q1);
}

TEST_CASE("non-convergence reporting") {
  OperatorSet ops = OperatorSet::beam(2.0, 2);
  NonlinearityTriple ball = NonlinearityTriple::ball(1.0, 1.0, 1.0);
  StateVector u_prev({0.5, 0.3});
  StateVector u_curr({0.52, 0.28});
  StepContext ctx{ops, ball, 1.0, 1.0, 0.02, StateVector({1.0, 1.0})};
  IterationConfig strangled;
  strangled.max_iter = 1;
  CHECK_THROWS_AS(solve_step(ctx, u_prev, u_curr, strangled), NonConvergence);
  try {
    solve_step(ctx, u_prev, u_curr, strangled);
  } catch (const NonConvergence& e) {
    CHECK(e.residual() > 0.0);
    CHECK(e.step() == -1);
  }

  // a paranoid q_max turns an ordinary solve into a warning, not an error
  IterationConfig paranoid;
  paranoid.q_max = 1e-8;
  StepResult res = solve_step(ctx, u_prev, u_curr, paranoid);
  CHECK(res.contraction_warning);
  CHECK(res.contraction > paranoid.q_max);
}
