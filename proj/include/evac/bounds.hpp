#ifndef EVAC_BOUNDS_HPP
#define EVAC_BOUNDS_HPP

// Closed-form evacuation bounds and a dense-grid checker for the trigonometric
// inequalities the upper-bound analysis relies on.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "evac/geometry.hpp"
#include "evac/strategies.hpp"

namespace evac {

inline void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= kPi)) throw std::invalid_argument("alpha outside [0, pi]");
}

/// Worst-case evacuation time of the wireless algorithm: 1 + π − α + 4 sin(α/2).
inline double wireless_ub(double alpha) {
  require_alpha(alpha);
  return 1.0 + kPi - alpha + 4.0 * std::sin(alpha / 2.0);
}

/// Worst-case evacuation time of the face-to-face algorithm: 1 + π − α/2 + 3 sin(α/2).
inline double f2f_ub(double alpha) {
  require_alpha(alpha);
  return 1.0 + kPi - alpha / 2.0 + 3.0 * std::sin(alpha / 2.0);
}

/// Lower bound for any face-to-face algorithm.
inline double f2f_lb(double alpha) {
  require_alpha(alpha);
  if (alpha <= kTwoThirdsPi) return 1.0 + kPi / 3.0 + 4.0 * std::sin(alpha / 2.0);
  return 1.0 + kPi / 3.0 + 2.0 * std::sin(alpha) + 2.0 * std::sin(alpha / 2.0);
}

/// Price of losing wireless communication: f2f_ub − wireless_ub.
inline double ub_gap(double alpha) {
  require_alpha(alpha);
  return alpha / 2.0 - std::sin(alpha / 2.0);
}

struct LemmaReport {
  char item = '?';
  int grid = 0;  ///< points per axis
  double min_slack = 0.0;
  bool pass = false;
  double worst_alpha = 0.0;
  std::string statement;
  std::string note;
};

namespace detail {

inline std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g(n + 1);
  for (int i = 0; i <= n; ++i) g[i] = i == n ? hi : lo + (hi - lo) * i / n;
  return g;
}

inline LemmaReport check_1d(char id, std::string text, double lo, double hi, int n,
                            const std::function<double(double)>& slack) {
  LemmaReport r;
  r.item = id;
  r.grid = n + 1;
  r.statement = std::move(text);
  r.min_slack = std::numeric_limits<double>::infinity();
  for (double a : grid(lo, hi, n)) {
    const double s = slack(a);
    if (s < r.min_slack) {
      r.min_slack = s;
      r.worst_alpha = a;
    }
  }
  r.pass = r.min_slack >= -1e-12;
  return r;
}

// rhs(α) − max over x in [xlo(α), xhi(α)] of lhs(α, x).
inline LemmaReport check_2d(char id, std::string text, double lo, double hi, int n,
                            const std::function<double(double)>& xlo, const std::function<double(double)>& xhi,
                            const std::function<double(double, double)>& lhs,
                            const std::function<double(double)>& rhs) {
  return check_1d(id, std::move(text), lo, hi, n, [&](double a) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : grid(xlo(a), xhi(a), n)) m = std::max(m, lhs(a, x));
    return rhs(a) - m;
  });
}

}  // namespace detail

/// Numeric check of items (a) through (j) on grids of grid_n points per
/// α-axis. Items with an inner maximum use a square grid with
/// (grid_n - 1)/10 + 1 points per axis. Item (j) is checked in its corrected
/// direction.
inline std::vector<LemmaReport> lemma_suite(int grid_n) {
  if (grid_n < 1000) throw std::invalid_argument("lemma_suite: grid_n must be at least 1000");
  using detail::check_1d;
  using detail::check_2d;
  const int n1 = grid_n - 1;
  const int n2 = n1 / 10;
  auto s2 = [](double a) { return std::sin(a / 2.0); };
  auto f2f_rhs = [&](double a) { return kPi - a / 2.0 + 3.0 * s2(a); };
  auto zero = [](double) { return 0.0; };
  const double a0 = alpha0();
  std::vector<LemmaReport> out;

  {
    LemmaReport r = check_1d('a', "xbar < 0 on [0, alpha0), xbar > 0 on (alpha0, pi]", 0.0, kPi, n1,
                             [&](double a) {
                               if (std::abs(a - a0) <= 1e-15) return 0.0;
                               return a < a0 ? -xbar(a) : xbar(a);
                             });
    r.note = "alpha0 = " + std::to_string(a0) + "; xbar(pi) = pi/2 - 1, not pi - 1 (erratum)";
    out.push_back(r);
  }
  out.push_back(check_2d(
      'b', "min{x + 2 sin(a/2), 2pi - a - x} + 2 sin(a/2) <= pi - a/2 + 3 sin(a/2)", 0.0, kPi, n2, zero,
      [](double a) { return kTwoPi - a; },
      [&](double a, double x) { return std::min(x + 2.0 * s2(a), kTwoPi - a - x) + 2.0 * s2(a); }, f2f_rhs));
  out.push_back(check_1d('c', "max{a, xbar + 2 sin(a/2)} + 2 <= pi - a/2 + 3 sin(a/2) on [0, 2pi/3]", 0.0,
                         kTwoThirdsPi, n1, [&](double a) {
                           return f2f_rhs(a) - (std::max(a, xbar(a) + 2.0 * s2(a)) + 2.0);
                         }));
  out.push_back(check_1d('d', "a + sin a <= pi", 0.0, kPi, n1,
                         [](double a) { return kPi - (a + std::sin(a)); }));
  out.push_back(check_1d('e', "a - sin(a/2) + 2 sin a <= pi", 0.0, kPi, n1,
                         [&](double a) { return kPi - (a - s2(a) + 2.0 * std::sin(a)); }));
  out.push_back(check_1d('f', "a/2 + 2 sin a <= pi - a + 2 sin(a/2) on [0, 2pi/3]", 0.0, kTwoThirdsPi, n1,
                         [&](double a) { return kPi - a + 2.0 * s2(a) - (a / 2.0 + 2.0 * std::sin(a)); }));
  out.push_back(check_2d(
      'g', "max_{0<=x<=pi-a} sin(pi/2 - a/2 - x) <= sin(a/2) on [2pi/3, pi]", kTwoThirdsPi, kPi, n2, zero,
      [](double a) { return kPi - a; }, [](double a, double x) { return std::sin(kPi / 2.0 - a / 2.0 - x); }, s2));
  out.push_back(check_2d(
      'h', "max_{0<=x<=a/2} {x + 2 sin(a/2 - x)} + 2 sin a <= pi - a + 4 sin(a/2) on [0, 2pi/3]", 0.0,
      kTwoThirdsPi, n2, zero, [](double a) { return a / 2.0; },
      [](double a, double x) { return x + 2.0 * std::sin(a / 2.0 - x) + 2.0 * std::sin(a); },
      [&](double a) { return kPi - a + 4.0 * s2(a); }));
  out.push_back(check_2d(
      'i', "max_{0<=x<=pi-a} {x + 2 sin(pi/2 - a/2 - x)} <= pi - a + 2 sin(a/2) on [2pi/3, pi]", kTwoThirdsPi,
      kPi, n2, zero, [](double a) { return kPi - a; },
      [](double a, double x) { return x + 2.0 * std::sin(kPi / 2.0 - a / 2.0 - x); },
      [&](double a) { return kPi - a + 2.0 * s2(a); }));
  {
    LemmaReport r = check_1d('j', "sin a >= sin(a/2) on [0, 2pi/3] and sin a <= sin(a/2) on [2pi/3, pi]", 0.0, kPi,
                             n1, [&](double a) {
                               const double d = std::sin(a) - s2(a);
                               return a <= kTwoThirdsPi ? d : -d;
                             });
    const double printed_slack = s2(kPi / 2.0) - std::sin(kPi / 2.0);
    r.note = "printed direction fails at alpha=1.5708 (counterexample, slack " + std::to_string(printed_slack) +
             "); corrected direction " + (r.pass ? "passes" : "fails");
    out.push_back(r);
  }
  return out;
}

/// Item (j) with both directions reversed: sin a <= sin(a/2) on
/// [0, 2pi/3] and sin a >= sin(a/2) on [2pi/3, pi]. Fails; kept as the erratum witness.
inline LemmaReport printed_item_j(int grid_n) {
  if (grid_n < 1000) throw std::invalid_argument("printed_item_j: grid_n must be at least 1000");
  LemmaReport r = detail::check_1d('j', "sin a <= sin(a/2) on [0, 2pi/3] and sin a >= sin(a/2) on [2pi/3, pi]", 0.0,
                                   kPi, grid_n - 1, [](double a) {
                                     const double d = std::sin(a / 2.0) - std::sin(a);
                                     return a <= kTwoThirdsPi ? d : -d;
                                   });
  r.note = "printed direction";
  return r;
}

}  // namespace evac

#endif  // EVAC_BOUNDS_HPP
