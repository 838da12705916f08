#include "ballbeam/cheb2d.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "ballbeam/rng.hpp"

namespace ballbeam::cheb {

namespace {

void require_degree(int k) {
  if (k < 0) throw std::domain_error("chebyshev degree must be >= 0");
}

void require_positive_y(double y, const char* where) {
  if (!(y > 0.0))
    throw std::domain_error(std::string(where) + ": requires y > 0");
}

// U_k(xi, 1), the one-variable polynomial: sin((k+1)t)/sin(t) for
// xi = 2 cos t inside (-2, 2), the hyperbolic analogue beyond.
double classical(int k, double xi) {
  double axi = std::abs(xi);
  if (axi < 2.0) {
    double t = std::acos(0.5 * xi);
    return std::sin((k + 1) * t) / std::sin(t);
  }
  double sign = (xi < 0.0 && k % 2 == 1) ? -1.0 : 1.0;
  if (axi == 2.0) return sign * (k + 1);
  double t = std::acosh(0.5 * axi);
  return sign * std::sinh((k + 1) * t) / std::sinh(t);
}

}  // namespace

double eval_recurrence(int k, double x, double y) {
  return eval_pair(k, x, y).uk;
}

Pair eval_pair(int k, double x, double y) {
  require_degree(k);
  long double um1 = 0.0L;  // U_{-1}
  long double u = 1.0L;    // U_0
  for (int m = 0; m < k; ++m) {
    long double next = static_cast<long double>(x) * u - static_cast<long double>(y) * um1;
    um1 = u;
    u = next;
  }
  return {static_cast<double>(u), static_cast<double>(um1)};
}

double eval_scaled(int k, double x, double y) {
  require_degree(k);
  require_positive_y(y, "eval_scaled");
  double sy = std::sqrt(y);
  return std::pow(sy, k) * classical(k, x / sy);
}

TaylorPair eval_taylor(int k, double x, double y) {
  require_degree(k);
  require_positive_y(y, "eval_taylor");
  double sy = std::sqrt(y);
  long double d = static_cast<long double>(x) / sy - 2.0L;

  // U_k = sqrt(y^k) sum_i C(k+i+1, 2i+1) d^i, coefficients updated by the
  // ratio of consecutive binomials.
  long double first = 0.0L;
  long double coeff = k + 1;  // C(k+1, 1)
  long double dpow = 1.0L;
  for (int i = 0; i <= k; ++i) {
    first += coeff * dpow;
    dpow *= d;
    coeff *= static_cast<long double>(k + i + 2) * (k - i);
    coeff /= static_cast<long double>(2 * i + 3) * (2 * i + 2);
  }

  // U_k - sqrt(y) U_{k-1} = sqrt(y^k) sum_i C(k+i, 2i) d^i
  long double second = 0.0L;
  coeff = 1.0L;  // C(k, 0)
  dpow = 1.0L;
  for (int i = 0; i <= k; ++i) {
    second += coeff * dpow;
    dpow *= d;
    coeff *= static_cast<long double>(k + i + 1) * (k - i);
    coeff /= static_cast<long double>(2 * i + 2) * (2 * i + 1);
  }

  long double scale = std::pow(static_cast<long double>(sy), k);
  return {static_cast<double>(scale * first), static_cast<double>(scale * second)};
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::Delta: return "Delta";
    case Region::DeltaPlus: return "DeltaPlus";
    case Region::OmegaPlus: return "OmegaPlus";
    case Region::OmegaMinus: return "OmegaMinus";
    case Region::Omega1: return "Omega1";
    case Region::Omega2: return "Omega2";
    case Region::Outside: return "Outside";
  }
  return "Outside";
}

namespace {

bool in_delta(double x, double y) {
  return std::abs(y) < 1.0 && std::abs(x) < y + 1.0;
}

}  // namespace

bool contains(Region r, double x, double y) {
  double p = 4.0 * y - x * x;
  switch (r) {
    case Region::Delta: return in_delta(x, y);
    case Region::DeltaPlus: return in_delta(x, y) && x >= 0.0;
    case Region::OmegaPlus: return p > 0.0;
    case Region::OmegaMinus: return p < 0.0;
    case Region::Omega1: return in_delta(x, y) && x >= 0.0 && p >= 0.0;
    case Region::Omega2: return in_delta(x, y) && x >= 0.0 && p < 0.0;
    case Region::Outside: return !in_delta(x, y);
  }
  return false;
}

Region classify(double x, double y) {
  if (!in_delta(x, y)) return Region::Outside;
  if (x < 0.0) return Region::Delta;
  return (4.0 * y - x * x >= 0.0) ? Region::Omega1 : Region::Omega2;
}

namespace {

constexpr double kSlackTol = 1e-12;

struct BoundDef {
  std::string_view id;
  Region region;
  std::uint64_t salt;
};

// One sampled point strictly inside the bound's region.
void sample_point(Region region, std::mt19937_64& g, double& x, double& y) {
  switch (region) {
    case Region::OmegaPlus: {
      y = uniform(g, 0.01, 4.0);
      double r = 2.0 * std::sqrt(y);
      x = uniform(g, -r, r);
      return;
    }
    case Region::Delta: {
      y = uniform(g, -1.0, 1.0);
      x = uniform(g, -(1.0 + y), 1.0 + y);
      return;
    }
    case Region::Omega1: {
      y = uniform(g, 0.0, 1.0);
      x = uniform(g, 0.0, 2.0 * std::sqrt(y));
      return;
    }
    case Region::Omega2: {
      y = uniform(g, 0.0, 1.0);
      x = uniform(g, 2.0 * std::sqrt(y), 1.0 + y);
      return;
    }
    case Region::DeltaPlus: {
      y = uniform(g, -1.0, 1.0);
      x = uniform(g, 0.0, 1.0 + y);
      return;
    }
    default:
      throw std::logic_error("sample_point: not a sampling region");
  }
}

// Worst slack over k = 0..k_max at one point; the recurrence pair and the
// power sqrt(y^k) advance together.
double point_slack(std::string_view id, double x, double y, int k_max,
                   long& violations) {
  const double sy = (y > 0.0) ? std::sqrt(y) : 0.0;
  const double sqrt2 = std::numbers::sqrt2;
  long double um1 = 0.0L, u = 1.0L;
  double yk2 = 1.0;   // sqrt(y^k)
  double yk1 = y;     // y^(k+1)
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= k_max; ++k) {
    double uk = static_cast<double>(u);
    double ukm1 = static_cast<double>(um1);
    double slack;
    if (id == "amplitude_omega_plus") {
      slack = std::abs(uk) - (k + 1) * yk2;
    } else if (id == "damped_sup_delta") {
      // Sharp on Delta: the sup of |U_k (1 - y)| over |x| <= 1 + y is
      // (1 - y) * U_k(1 + y, y) = 1 - y^{k+1}, attained at x = +-(1 + y).
      slack = std::abs(uk * (1.0 - y)) - (1.0 - yk1);
    } else if (id == "sqrty_diff_omega1") {
      slack = std::abs(uk - sy * ukm1) - sqrt2 * yk2;
    } else if (id == "ydiff_omega2") {
      double val = uk - y * ukm1;
      double lower = yk2 * ((k + 1) * (1.0 - sy) + sy);
      slack = std::max(lower - val, val - 1.0);
    } else if (id == "ydiff_delta_plus") {
      slack = std::abs(uk - y * ukm1) - sqrt2;
    } else {  // unit_diff_delta_plus
      slack = std::abs(uk - ukm1) - sqrt2;
    }
    if (slack > worst) worst = slack;
    if (slack > kSlackTol) ++violations;

    long double next = static_cast<long double>(x) * u - static_cast<long double>(y) * um1;
    um1 = u;
    u = next;
    yk2 *= sy;
    yk1 *= y;
  }
  return worst;
}

}  // namespace

std::vector<BoundReport> verify_bounds(const GridSpec& grid) {
  if (grid.samples < 1 || grid.k_max < 0)
    throw std::invalid_argument("verify_bounds: bad grid spec");

  const BoundDef defs[] = {
      {"amplitude_omega_plus", Region::OmegaPlus, 0x11},
      {"damped_sup_delta", Region::Delta, 0x22},
      {"sqrty_diff_omega1", Region::Omega1, 0x33},
      {"ydiff_omega2", Region::Omega2, 0x44},
      {"ydiff_delta_plus", Region::DeltaPlus, 0x55},
      {"unit_diff_delta_plus", Region::DeltaPlus, 0x66},
  };

  std::vector<BoundReport> reports;
  for (const BoundDef& def : defs) {
    BoundReport rep;
    rep.bound_id = def.id;
    rep.region = def.region;
    rep.k_max = grid.k_max;
    rep.max_slack = -std::numeric_limits<double>::infinity();

    std::mt19937_64 g(grid.seed ^ (def.salt * 0x9e3779b97f4a7c15ULL));
    while (rep.samples < grid.samples) {
      double x, y;
      sample_point(def.region, g, x, y);
      if (!contains(def.region, x, y)) {
        ++rep.rejected;
        continue;
      }
      ++rep.samples;
      double worst = point_slack(def.id, x, y, grid.k_max, rep.violations);
      if (worst > rep.max_slack) rep.max_slack = worst;
    }
    rep.pass = rep.max_slack <= kSlackTol;
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace ballbeam::cheb
