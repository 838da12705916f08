#include "ballbeam/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ballbeam/errors.hpp"
#include "ballbeam/rng.hpp"

namespace ballbeam {

TimeProfile TimeProfile::cosine(double omega) {
  return {[omega](double t) { return std::cos(omega * t); },
          [omega](double t) { return -omega * std::sin(omega * t); },
          [omega](double t) { return -omega * omega * std::cos(omega * t); }};
}

TimeProfile TimeProfile::exponential(double rate) {
  return {[rate](double t) { return std::exp(rate * t); },
          [rate](double t) { return rate * std::exp(rate * t); },
          [rate](double t) { return rate * rate * std::exp(rate * t); }};
}

TimeProfile TimeProfile::poly(std::vector<double> coeffs) {
  auto horner = [](const std::vector<double>& c, double t) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
    return v;
  };
  auto derive = [](const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t i = 1; i < c.size(); ++i)
      d.push_back(static_cast<double>(i) * c[i]);
    return d;
  };
  std::vector<double> d1 = derive(coeffs);
  std::vector<double> d2 = derive(d1);
  return {[coeffs, horner](double t) { return horner(coeffs, t); },
          [d1, horner](double t) { return horner(d1, t); },
          [d2, horner](double t) { return horner(d2, t); }};
}

double ManufacturedCase::lambda() const {
  const double w = j * std::numbers::pi / length;
  return w * w;
}

double ManufacturedCase::kappa() const { return 0.5 * length * lambda(); }

double ManufacturedCase::forcing_coefficient(double t) const {
  const double g = profile.g(t), dg = profile.dg(t), d2g = profile.d2g(t);
  const double lam = lambda(), kap = kappa();
  return d2g + a1 * lam * lam * dg + a2 * lam * lam * g +
         (params.alpha + params.beta * kap * g * g) * lam * g +
         2.0 * params.gamma * kap * lam * g * g * dg + params.delta * dg;
}

StateVector ManufacturedCase::exact(double t) const {
  return StateVector::basis(static_cast<std::size_t>(modes),
                            static_cast<std::size_t>(j) - 1, profile.g(t));
}

StateVector ManufacturedCase::exact_velocity(double t) const {
  return StateVector::basis(static_cast<std::size_t>(modes),
                            static_cast<std::size_t>(j) - 1, profile.dg(t));
}

SchemeConfig ManufacturedCase::scheme_config(int n, int start_order) const {
  if (j < 1 || j > modes)
    throw ConfigError("manufactured mode index j must satisfy 1 <= j <= modes");
  ManufacturedCase mc = *this;
  Forcing forcing{[mc](double t) {
    return StateVector::basis(static_cast<std::size_t>(mc.modes),
                              static_cast<std::size_t>(mc.j) - 1,
                              mc.forcing_coefficient(t));
  }};
  return SchemeConfig{
      .ops = OperatorSet::beam(length, modes, 0.0, params.delta),
      .triple = NonlinearityTriple::ball(params.alpha, params.beta, params.gamma),
      .a1 = a1,
      .a2 = a2,
      .t_bar = t_bar,
      .n = n,
      .forcing = std::move(forcing),
      .phi0 = exact(0.0),
      .phi1 = exact_velocity(0.0),
      .solver = {},
      .start_order = start_order};
}

double residual_self_test(const ManufacturedCase& mc, int samples) {
  const OperatorSet ops = OperatorSet::beam(mc.length, mc.modes, 0.0,
                                            mc.params.delta);
  const NonlinearityTriple triple =
      NonlinearityTriple::ball(mc.params.alpha, mc.params.beta, mc.params.gamma);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = mc.t_bar * i / (samples - 1);
    const StateVector u = mc.exact(t);
    const StateVector up = mc.exact_velocity(t);
    const StateVector upp = StateVector::basis(
        static_cast<std::size_t>(mc.modes), static_cast<std::size_t>(mc.j) - 1,
        mc.profile.d2g(t));
    const StateVector au = apply(ops.A(), u);
    const double gamma_u = ops.gamma(u);
    // d/dt psi2(gamma(u(t))) = psi2'(gamma) * 2 (A u, u')
    const double dpsi2 =
        2.0 * triple.psi2.derivative(gamma_u) * ops.space().inner(au, up);
    StateVector r = upp;
    r += mc.a1 * apply(ops.B(), up);
    r += mc.a2 * apply(ops.B(), u);
    r += triple.psi1(gamma_u) * au;
    r += dpsi2 * au;
    r += triple.psi3(ops.theta(u)) * u;
    r += ops.C()(u);
    r += ops.N()(up);
    r += ops.M()(u);
    r -= StateVector::basis(static_cast<std::size_t>(mc.modes),
                            static_cast<std::size_t>(mc.j) - 1,
                            mc.forcing_coefficient(t));
    worst = std::max(worst, ops.space().norm(r));
  }
  return worst;
}

namespace {

// max_k ( ||B^{1/2} z_{k+1}|| + ||z_{k+1} - z_k|| / tau ) for a sequence of
// deviations z_k, the quantity the a priori estimates bound.
double deviation_measure(const std::vector<StateVector>& z, const SineSpace& space,
                         const SpectralOperator& B, double tau) {
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < z.size(); ++k) {
    const double e =
        space.norm_of(z[k + 1], B, 0.5) + space.norm(z[k + 1] - z[k]) / tau;
    worst = std::max(worst, e);
  }
  return worst;
}

}  // namespace

ConvergenceReport convergence_study(const ManufacturedCase& mc,
                                    const std::vector<int>& n_values,
                                    int start_order) {
  ConvergenceReport rep;
  for (int n : n_values) {
    SchemeConfig cfg = mc.scheme_config(n, start_order);
    RunResult res = run(cfg);
    const double tau = cfg.tau();
    std::vector<StateVector> z;
    z.reserve(res.states.size());
    for (int k = 0; k <= n; ++k)
      z.push_back(res.states[static_cast<std::size_t>(k)] - mc.exact(tau * k));
    rep.n.push_back(n);
    rep.error.push_back(
        deviation_measure(z, cfg.ops.space(), cfg.ops.B(), tau));
  }
  for (std::size_t i = 0; i + 1 < rep.error.size(); ++i) {
    rep.order.push_back(std::log(rep.error[i] / rep.error[i + 1]) /
                        std::log(static_cast<double>(rep.n[i + 1]) / rep.n[i]));
  }
  return rep;
}

PerturbationReport perturbation_study(const SchemeConfig& base,
                                      const std::vector<double>& epsilons,
                                      std::uint64_t seed) {
  if (epsilons.empty())
    throw ConfigError("perturbation study needs at least one epsilon");
  base.validate();
  const std::size_t m = base.phi0.size();
  const SineSpace& space = base.ops.space();

  std::mt19937_64 gen(seed);
  auto unit_direction = [&]() {
    StateVector d(m);
    for (std::size_t i = 0; i < m; ++i) d.c[i] = uniform(gen, -1.0, 1.0);
    const double nrm = space.norm(d);
    return d / nrm;
  };
  const StateVector d0 = unit_direction();
  const StateVector d1 = unit_direction();
  const StateVector df = unit_direction();

  RunResult ref = run(base);
  const double tau = base.tau();
  const int n = base.n;

  PerturbationReport rep;
  for (double eps : epsilons) {
    if (!(eps >= 0.0))
      throw ConfigError("perturbation epsilon must be >= 0");
    SchemeConfig cfg = base;
    cfg.phi0 = base.phi0 + eps * d0;
    cfg.phi1 = base.phi1 + eps * d1;
    Forcing fbar = base.forcing;
    cfg.forcing.fn = [fbar, df, eps, m](double t) {
      return fbar.at(t, m) + eps * df;
    };
    RunResult pert = run(cfg);

    std::vector<StateVector> z;
    z.reserve(ref.states.size());
    for (std::size_t k = 0; k < ref.states.size(); ++k)
      z.push_back(pert.states[k] - ref.states[k]);

    const double d = deviation_measure(z, space, base.ops.B(), tau);
    const StateVector dz0 = z[1] - z[0];
    // tau * ||B^{1/2} dz0 / tau|| = ||B^{1/2} dz0||; the forcing deviation is
    // eps * df at each of the n - 1 interior steps.
    const double r = space.norm_of(z[0], base.ops.B(), 0.5) +
                     space.norm(dz0) / tau +
                     space.norm_of(dz0, base.ops.B(), 0.5) +
                     tau * (n - 1) * eps * space.norm(df);
    rep.epsilon.push_back(eps);
    rep.response.push_back(d);
    rep.data_size.push_back(r);
    // eps = 0 reruns the identical problem: d = r = 0 and the quotient is
    // undefined, so it carries no spread information.
    rep.ratio.push_back(r == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                 : d / r);
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  int finite = 0;
  for (double q : rep.ratio) {
    if (!std::isfinite(q)) continue;
    lo = std::min(lo, q);
    hi = std::max(hi, q);
    ++finite;
  }
  rep.spread = finite >= 2 ? hi / lo : (finite == 1 ? 1.0 : 0.0);
  rep.pass = rep.spread <= 3.0;
  return rep;
}

LinearSuiteReport verify_linear_suite(int trials, std::uint64_t seed) {
  if (trials < 1) throw ConfigError("linear suite needs trials >= 1");
  constexpr double kGapTol = 1e-9;
  std::mt19937_64 gen(seed);

  LinearSuiteReport rep;
  rep.trials = trials;
  const double powers[] = {0.0, 0.5, 1.0};

  auto fold = [&rep](const EstimateReport& r) {
    for (auto& held : rep.estimates) {
      if (held.estimate_id == r.estimate_id && held.s == r.s) {
        if (r.worst_ratio > held.worst_ratio) held = r;
        held.pass = held.pass && r.pass;
        return;
      }
    }
    rep.estimates.push_back(r);
  };

  for (int trial = 0; trial < trials; ++trial) {
    const int m = uniform_int(gen, 2, 12);
    const double length = uniform(gen, 1.0, 6.0);
    const SineSpace space(length);
    SpectralOperator B = [&] {
      if (trial % 2 == 0) return space.biharmonic(m);
      std::vector<double> eig(static_cast<std::size_t>(m));
      for (double& e : eig) e = uniform(gen, 0.1, 50.0);
      return SpectralOperator(std::move(eig), "generic");
    }();
    const double a1 = uniform(gen, 0.5, 2.0);
    const double a2 = uniform(gen, 0.1, 2.0);
    const double tau = uniform(gen, 0.2, 0.9) * std::min(0.25, a1 / a2);
    const int n = uniform_int(gen, 5, 40);

    auto rand_vec = [&](double scale) {
      StateVector v(static_cast<std::size_t>(m));
      for (double& c : v.c) c = uniform(gen, -scale, scale);
      return v;
    };
    const StateVector u0 = rand_vec(1.0);
    const StateVector u1 = rand_vec(1.0);
    std::vector<StateVector> forcing;
    for (int k = 1; k < n; ++k) forcing.push_back(rand_vec(2.0));

    const LinearSchemeOps ops(space, B, tau, a1, a2);
    const LinearRun run = run_linear(ops, u0, u1, forcing);

    for (double s : powers) fold(verify_state_estimate(ops, run, s));
    fold(verify_difference_estimate(ops, run));
    for (double s : powers) fold(verify_difference_estimate_powered(ops, run, s));

    for (std::size_t k = 2; k < run.states.size(); ++k) {
      const std::vector<StateVector> head(forcing.begin(),
                                          forcing.begin() + (k - 1));
      const StateVector rebuilt = ops.solve_by_representation(u0, u1, head);
      const double gap = space.norm(rebuilt - run.states[k]) /
                         std::max(1.0, space.norm(run.states[k]));
      rep.worst_representation_gap =
          std::max(rep.worst_representation_gap, gap);
    }
  }

  rep.pass = rep.worst_representation_gap <= kGapTol;
  for (const auto& r : rep.estimates) rep.pass = rep.pass && r.pass;
  return rep;
}

}  // namespace ballbeam
