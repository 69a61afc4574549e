#ifndef EVAC_STRATEGIES_HPP
#define EVAC_STRATEGIES_HPP

// Threshold machinery of the face-to-face protocol and the n-robot pairing.

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "evac/geometry.hpp"

namespace evac {

inline constexpr double kTwoThirdsPi = 2.0 * kPi / 3.0;

/// Branch-selection parameter 3α/2 − π − sin(α/2) + 2·sin(α). May be negative.
inline double xbar(double alpha) {
  return 1.5 * alpha - kPi - std::sin(alpha / 2.0) + 2.0 * std::sin(alpha);
}

/// The unique root of xbar in (0, 2π/3), found by bisection and cached.
inline double alpha0() {
  static const double root = [] {
    double lo = 0.0;
    double hi = kTwoThirdsPi;
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
      mid = 0.5 * (lo + hi);
      const double v = xbar(mid);
      if (std::abs(v) <= 1e-14 || hi - lo <= 1e-16) break;
      (v < 0.0 ? lo : hi) = mid;
    }
    return mid;
  }();
  return root;
}

enum class Found { treasure, exit };
enum class Branch { a1, a2, a3 };

inline std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::a1: return "A1";
    case Branch::a2: return "A2";
    case Branch::a3: return "A3";
  }
  return "?";
}

/// Subroutine chosen by a robot whose first discovery is `found` at protocol time `x`.
///
/// Both finders test the same quantity, the exit's offset from the start
/// (x for the exit finder, alpha - x for the treasure finder). It is rounded to
/// the event resolution first: the two robots derive it from different float
/// expressions, and without rounding they can land on opposite sides of the
/// threshold and pick incompatible subroutines.
inline Branch select_branch(double alpha, double x, Found found) {
  const double xb = xbar(alpha);
  const double offset = std::round((found == Found::treasure ? alpha - x : x) / kEps) * kEps;
  const bool rendezvous_case = found == Found::treasure ? (alpha > x && offset <= xb) : (offset <= xb);
  if (!rendezvous_case) return Branch::a1;
  if (alpha > kTwoThirdsPi) return Branch::a3;
  if (alpha >= alpha0()) return Branch::a2;
  return Branch::a1;
}

/// Protocol time until which the treasure-holder waits at the centre in A2.
inline double a2_timer(double alpha, double x) {
  return std::max(x, alpha - x + 2.0 * std::sin(alpha / 2.0)) + 1.0;
}

/// Unclamped A3 chord offset α/2 − x + sin(α/2) + sin(α).
inline double a3_offset_raw(double alpha, double x) {
  return alpha / 2.0 - x + std::sin(alpha / 2.0) + std::sin(alpha);
}

/// A3 chord offset y = |IK|; throws if y falls outside [0, |ID|] = [0, 2·sin α].
inline double a3_offset(double alpha, double x) {
  const double y = a3_offset_raw(alpha, x);
  if (y < -1e-12 || y > 2.0 * std::sin(alpha) + 1e-12) {
    throw std::domain_error("a3_offset: y=" + std::to_string(y) + " outside [0, 2 sin(alpha)]");
  }
  return std::max(y, 0.0);
}

struct DeploymentPlan {
  int n = 0;
  std::vector<Angle> pair_starts;
};

/// Pairs of robots start at angles 4πk/n, k = 0 … n/2−1.
inline DeploymentPlan n_robot_deployment(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("n_robot_deployment: n must be even and >= 2");
  DeploymentPlan plan{n, {}};
  for (int k = 0; k < n / 2; ++k) plan.pair_starts.emplace_back(4.0 * kPi * k / n);
  return plan;
}

}  // namespace evac

#endif  // EVAC_STRATEGIES_HPP
