#pragma once

// Two-variable Chebyshev polynomials
//
//     U_{k+1}(x, y) = x U_k(x, y) - y U_{k-1}(x, y),   U_0 = 1,  U_1 = x,
//
// the resolvent calculus behind the three-layer scheme: step operators land
// on points (x, y) where these polynomials stay uniformly bounded. For y > 0
// they scale out of the one-variable polynomial, U_k(x, y) =
// sqrt(y^k) U_k(x / sqrt(y), 1), and U_k(2t, 1) is the classical second-kind
// Chebyshev polynomial in t.
//
// Regions of the (x, y) plane used by the bound suite:
//
//     Delta  = { |y| < 1, |x| < y + 1 }      DeltaPlus = Delta with x >= 0
//     Omega+ = { 4y - x^2 > 0 }              Omega-    = { 4y - x^2 < 0 }
//     Omega1 = Omega+ ^ DeltaPlus            Omega2    = Omega- ^ DeltaPlus
//
// Boundary policy: classify treats Delta as open (its boundary falls
// outside), while the parabola 4y = x^2 inside DeltaPlus belongs to Omega1,
// matching the closed inequalities the bounds satisfy there.

#include <cstdint>
#include <string_view>
#include <vector>

namespace ballbeam::cheb {

// Forward recurrence, the reference evaluator (extended-precision
// accumulation); k >= 0.
double eval_recurrence(int k, double x, double y);

struct Pair {
  double uk;
  double ukm1;  // U_{k-1}, with U_{-1} = 0
};
Pair eval_pair(int k, double x, double y);

// sqrt(y^k) U_k(x/sqrt(y), 1) through the trigonometric / hyperbolic closed
// form of the one-variable polynomial; requires y > 0.
double eval_scaled(int k, double x, double y);

struct TaylorPair {
  double uk;          // U_k
  double diff_sqrty;  // U_k - sqrt(y) U_{k-1}
};
// Binomial expansions around xi = x/sqrt(y) = 2; requires y > 0.
TaylorPair eval_taylor(int k, double x, double y);

enum class Region { Delta, DeltaPlus, OmegaPlus, OmegaMinus, Omega1, Omega2, Outside };

std::string_view to_string(Region r);

// Membership in the named region, with the boundary policy above baked in
// (Omega1 includes its parabola edge, everything else is strict).
bool contains(Region r, double x, double y);

// Finest region of the Delta partition containing (x, y): Omega1 or Omega2
// inside DeltaPlus, Delta for the x < 0 remainder, Outside otherwise. The
// Omega+/Omega-/DeltaPlus tags name sampling domains and are never returned.
Region classify(double x, double y);

struct GridSpec {
  int samples = 10000;  // accepted points per region
  int k_max = 40;
  std::uint64_t seed = 0x5eed00c8eb2dULL;
};

struct BoundReport {
  std::string_view bound_id;
  Region region;
  int k_max = 0;
  long samples = 0;
  long rejected = 0;
  long violations = 0;    // (sample, k) pairs with slack > 1e-12
  double max_slack = 0.0; // max over samples of (attained value - bound)
  bool pass = false;      // max_slack <= 1e-12
};

// Samples the six polynomial bounds over their regions:
//   amplitude_omega_plus   |U_k| <= (k+1) sqrt(y^k)             on Omega+
//   damped_sup_delta       |U_k (1 - y)| <= 1 - y^{k+1}         on Delta
//   sqrty_diff_omega1      |U_k - sqrt(y) U_{k-1}| <= sqrt(2y^k) on Omega1
//   ydiff_omega2           sqrt(y^k)((k+1)(1-sqrt(y)) + sqrt(y))
//                            <= U_k - y U_{k-1} <= 1            on Omega2, y > 0
//   ydiff_delta_plus       |U_k - y U_{k-1}| <= sqrt(2)         on DeltaPlus
//   unit_diff_delta_plus   |U_k - U_{k-1}| <= sqrt(2)           on DeltaPlus
std::vector<BoundReport> verify_bounds(const GridSpec& grid = {});

}  // namespace ballbeam::cheb
