#ifndef EVAC_VERIFY_HPP
#define EVAC_VERIFY_HPP

// Empirical adversary: worst-case search over exit placements, bound and
// tightness verdicts, mirror-symmetry check, and the bound-curve table.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "evac/bounds.hpp"
#include "evac/engine.hpp"
#include "evac/model.hpp"
#include "evac/strategies.hpp"

namespace evac {

struct SweepResult {
  Model model = Model::wireless;
  double alpha = 0.0;
  int grid_n = 0;
  int evaluated = 0;
  double max_time = 0.0;
  double argmax_exit = 0.0;
  double grid_max = 0.0;  ///< before refinement
  double bound = 0.0;
  bool ub_ok = false;
  bool tight = false;
  bool lb_consistent = false;  ///< f2f only: max >= f2f_lb
};

/// Worker count: EVAC_THREADS if set, else the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("EVAC_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// out[i] = f(in[i]) across worker threads; the first exception is rethrown.
template <class F>
std::vector<double> parallel_map(const std::vector<double>& in, F f) {
  std::vector<double> out(in.size());
  const unsigned workers = std::min<unsigned>(worker_count(), std::max<std::size_t>(1, in.size()));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = w; i < in.size(); i += workers) out[i] = f(in[i]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

/// Exit angles at which some robot's first discovery sits on a branch
/// threshold of the protocol (orientation +1).
inline std::vector<double> critical_exit_angles(Model model, double alpha) {
  const double xb = xbar(alpha);
  const double s = std::sin(alpha / 2.0);
  const std::vector<double> xs{0.0, alpha / 2.0, alpha, xb, alpha - xb, kPi - alpha, kPi - alpha / 2.0 - s};
  std::vector<std::pair<double, Dir>> starts{{0.0, Dir::pos}, {0.0, Dir::neg}};
  if (model == Model::wireless && alpha > kTwoThirdsPi) starts = {{0.0, Dir::pos}, {kPi, Dir::pos}};
  std::vector<double> out;
  for (double x : xs) {
    if (x < 0.0) continue;
    for (auto [start, dir] : starts) {
      const double i = Angle(start).advanced(dir, x).value();
      out.push_back(Angle(i).value());
      out.push_back(Angle(i - alpha).value());
    }
  }
  return out;
}

inline double model_bound(Model m, double alpha) { return m == Model::wireless ? wireless_ub(alpha) : f2f_ub(alpha); }

inline double evac_time_at(Model m, double alpha, double exit, int orientation = +1) {
  Configuration c;
  c.model = m;
  c.alpha = alpha;
  c.exit_angle = Angle(exit);
  c.orientation = orientation;
  return simulate(c).evac_time;
}

namespace detail {

inline SweepResult sweep_impl(Model model, double alpha, int grid_n, int refine_iters, int orientation,
                              bool with_critical) {
  if (grid_n < 1) throw std::invalid_argument("sweep: grid_n must be positive");
  std::vector<double> angles;
  angles.reserve(grid_n + 64);
  for (int i = 0; i < grid_n; ++i) angles.push_back(kTwoPi * i / grid_n);
  if (with_critical) {
    for (double a : critical_exit_angles(model, alpha)) angles.push_back(orientation > 0 ? a : Angle(-a).value());
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());

  const auto times = parallel_map(angles, [&](double e) { return evac_time_at(model, alpha, e, orientation); });
  SweepResult r;
  r.model = model;
  r.alpha = alpha;
  r.grid_n = grid_n;
  r.evaluated = static_cast<int>(angles.size());
  std::size_t best = 0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] > times[best]) best = i;
  }
  r.max_time = r.grid_max = times[best];
  r.argmax_exit = angles[best];

  // Golden-section search for a larger value near the best sample.
  if (refine_iters > 0) {
    const double h = kTwoPi / grid_n;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = r.argmax_exit - h;
    double hi = r.argmax_exit + h;
    auto f = [&](double e) {
      const double v = evac_time_at(model, alpha, Angle(e).value(), orientation);
      ++r.evaluated;
      if (v > r.max_time) {
        r.max_time = v;
        r.argmax_exit = Angle(e).value();
      }
      return v;
    };
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int k = 0; k < refine_iters; ++k) {
      if (f1 >= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = f(x2);
      }
    }
  }

  r.bound = model_bound(model, alpha);
  r.ub_ok = r.max_time <= r.bound + 1e-9;
  r.tight = r.max_time >= r.bound - 2e-3;
  r.lb_consistent = model == Model::f2f ? r.max_time >= f2f_lb(alpha) - 1e-9 : true;
  return r;
}

}  // namespace detail

/// Worst evacuation time over exit placements (orientation +1): a uniform
/// grid plus branch-threshold angles, then golden-section refinement around
/// the best grid cell.
inline SweepResult sweep(Model model, double alpha, int grid_n, int refine_iters) {
  if (grid_n < 256) throw std::invalid_argument("sweep: grid_n must be at least 256");
  if (refine_iters < 0) throw std::invalid_argument("sweep: refine_iters must be non-negative");
  require_alpha(alpha);
  return detail::sweep_impl(model, alpha, grid_n, refine_iters, +1, true);
}

struct SymmetryReport {
  double max_pos = 0.0;
  double max_neg = 0.0;
  bool pass = false;
};

/// Compares plain-grid maxima for orientation +1 and -1.
inline SymmetryReport symmetry_check(Model model, double alpha, int grid_n) {
  require_alpha(alpha);
  SymmetryReport s;
  s.max_pos = detail::sweep_impl(model, alpha, grid_n, 0, +1, false).max_time;
  s.max_neg = detail::sweep_impl(model, alpha, grid_n, 0, -1, false).max_time;
  s.pass = std::abs(s.max_pos - s.max_neg) <= 1e-9;
  return s;
}

struct BoundRow {
  double alpha;
  double wireless_ub;
  double f2f_ub;
  double f2f_lb;
};

inline std::vector<BoundRow> figure1_table(const std::vector<double>& alphas) {
  std::vector<BoundRow> rows;
  rows.reserve(alphas.size());
  for (double a : alphas) rows.push_back({a, wireless_ub(a), f2f_ub(a), f2f_lb(a)});
  return rows;
}

/// n + 1 evenly spaced values on [lo, hi].
inline std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) return {lo};
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = i == n ? hi : lo + (hi - lo) * i / n;
  return v;
}

inline std::string fmt12(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepResult>& rows) {
  os << "alpha,max_time,bound,argmax_exit_angle,ub_ok,tight\n";
  for (const auto& r : rows) {
    os << fmt12(r.alpha) << ',' << fmt12(r.max_time) << ',' << fmt12(r.bound) << ',' << fmt12(r.argmax_exit) << ','
       << (r.ub_ok ? "true" : "false") << ',' << (r.tight ? "true" : "false") << '\n';
  }
}

inline void write_bounds_csv(std::ostream& os, const std::vector<BoundRow>& rows, bool with_gap = false) {
  os << "alpha,wireless_ub,f2f_ub,f2f_lb" << (with_gap ? ",ub_gap" : "") << '\n';
  for (const auto& r : rows) {
    os << fmt12(r.alpha) << ',' << fmt12(r.wireless_ub) << ',' << fmt12(r.f2f_ub) << ',' << fmt12(r.f2f_lb);
    if (with_gap) os << ',' << fmt12(ub_gap(r.alpha));
    os << '\n';
  }
}

}  // namespace evac

#endif  // EVAC_VERIFY_HPP
