#include "ballbeam/step_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ballbeam/errors.hpp"

namespace ballbeam {

void IterationConfig::validate() const {
  if (!(std::isfinite(tol) && tol > 0.0))
    throw ConfigError("solver tolerance must be finite and positive");
  if (max_iter < 1) throw ConfigError("solver max_iter must be >= 1");
  if (!(q_max > 0.0 && q_max < 1.0))
    throw ConfigError("solver q_max must lie in (0, 1)");
}

StateVector assemble_rhs_constant(const StepContext& ctx, const StateVector& u_prev,
                                  const StateVector& u_curr) {
  const double tau = ctx.tau;
  StateVector g = tau * ctx.f_k - tau * ctx.ops.M()(u_curr) + ctx.ops.N()(u_prev) -
                  tau * ctx.ops.C()(u_curr);
  return tau * g + tau * ctx.a1 * apply(ctx.ops.B(), u_prev) + 2.0 * u_curr;
}

StateVector iterate_once(const StepContext& ctx, const StateVector& u_prev,
                         const StateVector& u_curr, const StateVector& v_m) {
  const OperatorSet& ops = ctx.ops;
  const double tau = ctx.tau;

  const double gamma_prev = ops.gamma(u_prev);
  const double theta_prev = ops.theta(u_prev);
  const StateVector u_next_m = 2.0 * v_m - u_prev;
  const double gamma_next = ops.gamma(u_next_m);
  const double theta_next = ops.theta(u_next_m);

  const double a1k = coeff_a1(ctx.triple, gamma_prev, gamma_next);
  const double a3k = coeff_a3(ctx.triple, theta_prev, theta_next);
  const double bk = tau * a1k + 0.5 * ctx.triple.psi2(gamma_next);

  StateVector rhs = assemble_rhs_constant(ctx, u_prev, u_curr);
  const double psi2_prev = ctx.triple.psi2(gamma_prev);
  if (psi2_prev != 0.0) rhs += (0.5 * tau * psi2_prev) * apply(ops.A(), v_m);
  if (!ops.N().is_zero()) rhs -= tau * ops.N()(v_m);

  StateVector v_next(v_m.size());
  const double t_base = 2.0 + tau * tau * a3k;
  const double t_b = tau * (ctx.a1 + tau * ctx.a2);
  const double t_a = tau * bk;
  for (std::size_t j = 0; j < v_m.size(); ++j) {
    double t_j = t_base + t_b * ops.B().eig(j) + t_a * ops.A().eig(j);
    // every added term is >= 0, so the diagonal stays >= 2
    if (!(t_j >= 2.0 - 1e-9))
      throw NumericalError(-1, "step operator lost positivity (mode " +
                                   std::to_string(j + 1) + ")");
    v_next.c[j] = rhs.c[j] / t_j;
  }
  return v_next;
}

StepResult solve_step(const StepContext& ctx, const StateVector& u_prev,
                      const StateVector& u_curr, const IterationConfig& cfg) {
  cfg.validate();
  require_same_size(u_prev, u_curr, "solve_step");
  if (u_curr.size() != ctx.ops.modes())
    throw DimensionError("solve_step: state/operator length mismatch");

  const SineSpace& sp = ctx.ops.space();
  const SpectralOperator& B = ctx.ops.B();

  StateVector v = 0.5 * (u_curr + u_prev);
  double prev_diff = -1.0;
  double contraction = 0.0;
  double last_rel = 0.0;

  for (int m = 1; m <= cfg.max_iter; ++m) {
    StateVector v_next = iterate_once(ctx, u_prev, u_curr, v);
    const double diff = sp.norm_of(v_next - v, B, 0.5);
    const double scale = 1.0 + sp.norm_of(v, B, 0.5);
    if (prev_diff > 0.0) contraction = std::max(contraction, diff / prev_diff);
    v = v_next;
    last_rel = diff / scale;
    if (diff <= cfg.tol * scale) {
      StepResult res;
      res.u_next = 2.0 * v - u_prev;
      res.v = std::move(v);
      res.iterations = m;
      res.contraction = contraction;
      res.contraction_warning = contraction > cfg.q_max;
      return res;
    }
    prev_diff = diff;
  }
  throw NonConvergence(-1, last_rel,
                       "fixed-point step did not converge in " +
                           std::to_string(cfg.max_iter) + " iterations");
}

}  // namespace ballbeam
