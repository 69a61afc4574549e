#ifndef EVAC_GEOMETRY_HPP
#define EVAC_GEOMETRY_HPP

// Angle arithmetic, arc/chord metrics and unit-speed positions on the closed
// unit disk. Increasing angle is the "clockwise" sweep direction.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace evac {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Co-location tolerance in space and time.
inline constexpr double kEps = 1e-9;
/// Snap tolerance for endpoint arithmetic.
inline constexpr double kSnap = 1e-12;

/// Reduce any real to [0, 2π).
inline double normalize_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

/// A direction on the circle: +1 is increasing angle, -1 decreasing.
enum class Dir : int { pos = 1, neg = -1 };

inline constexpr double sign(Dir d) { return static_cast<double>(static_cast<int>(d)); }
inline constexpr Dir opposite(Dir d) { return d == Dir::pos ? Dir::neg : Dir::pos; }

class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double radians) : value_(normalize_angle(radians)) {}

  double value() const { return value_; }
  Angle operator+(double delta) const { return Angle(value_ + delta); }
  Angle operator-(double delta) const { return Angle(value_ - delta); }
  /// Angle reached after travelling `delta` along the perimeter in direction `d`.
  Angle advanced(Dir d, double delta) const { return Angle(value_ + sign(d) * delta); }

  friend bool operator==(Angle, Angle) = default;

 private:
  double value_ = 0.0;
};

/// Arc travel from `a` to `b` in the positive direction.
inline double cw_dist(Angle a, Angle b) { return normalize_angle(b.value() - a.value()); }

/// Arc travel from `a` to `b` in direction `d`.
inline double dir_dist(Angle a, Angle b, Dir d) {
  return d == Dir::pos ? cw_dist(a, b) : cw_dist(b, a);
}

/// Shorter of the two arcs between `a` and `b`, in [0, π].
inline double arc_dist(Angle a, Angle b) {
  const double d = cw_dist(a, b);
  return std::min(d, kTwoPi - d);
}

/// Euclidean length of a chord subtending an arc of `delta` radians.
inline double chord_len(double delta) {
  if (!(delta >= 0.0 && delta <= kTwoPi)) {
    throw std::invalid_argument("chord_len: arc outside [0, 2pi]");
  }
  return 2.0 * std::sin(delta / 2.0);
}

struct Point {
  double x = 0.0;
  double y = 0.0;

  Point operator+(Point o) const { return {x + o.x, y + o.y}; }
  Point operator-(Point o) const { return {x - o.x, y - o.y}; }
  Point operator*(double s) const { return {x * s, y * s}; }
  double norm() const { return std::hypot(x, y); }
  friend bool operator==(Point, Point) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double distance(Point a, Point b) { return (a - b).norm(); }
inline bool near(Point a, Point b, double tol = kEps) { return distance(a, b) <= tol; }

inline Point on_circle(Angle a) { return {std::cos(a.value()), std::sin(a.value())}; }
inline constexpr Point kCenter{0.0, 0.0};

/// True if `p` lies on the unit circle (within `tol`).
inline bool on_perimeter(Point p, double tol = kEps) { return std::abs(p.norm() - 1.0) <= tol; }
inline Angle angle_of(Point p) { return Angle(std::atan2(p.y, p.x)); }

inline Point pos_on_arc(Angle start, Dir d, double elapsed) {
  return on_circle(start.advanced(d, elapsed));
}

inline Point pos_on_segment(Point from, Point to, double elapsed) {
  const double len = distance(from, to);
  if (elapsed < 0.0 || elapsed > len + kEps) {
    throw std::invalid_argument("pos_on_segment: elapsed outside segment");
  }
  if (elapsed >= len - kSnap) return to;
  const double s = elapsed / len;
  return from + (to - from) * s;
}

/// Merged set of explored arcs. Stored internally as disjoint linear pieces of
/// [0, 2π]; an arc crossing angle 0 is kept as two pieces and rejoined on read.
class ArcIntervalSet {
 public:
  struct Interval {
    double start;   ///< in [0, 2π)
    double length;  ///< in [0, 2π]
  };

  /// Insert the arc from `start` of the given length in the positive direction.
  void insert(Angle start, double length) {
    if (length < 0.0) throw std::invalid_argument("ArcIntervalSet: negative length");
    if (length >= kTwoPi - kSnap) {
      pieces_.assign(1, {0.0, kTwoPi});
      return;
    }
    const double lo = start.value();
    const double hi = lo + length;
    if (hi <= kTwoPi) {
      add_piece(lo, hi);
    } else {
      add_piece(lo, kTwoPi);
      add_piece(0.0, hi - kTwoPi);
    }
  }

  /// Insert the arc traversed from `from` in direction `d` for `length`.
  void insert_traversal(Angle from, Dir d, double length) {
    if (d == Dir::pos) {
      insert(from, length);
    } else {
      insert(from.advanced(Dir::neg, length), length);
    }
  }

  void insert_point(Angle a) { insert(a, 0.0); }

  void merge(const ArcIntervalSet& other) {
    for (auto [lo, hi] : other.pieces_) add_piece(lo, hi);
  }

  bool covers(Angle theta, double tol = kEps) const {
    const double t = theta.value();
    for (auto [lo, hi] : pieces_) {
      for (double c : {t, t - kTwoPi, t + kTwoPi}) {
        if (c >= lo - tol && c <= hi + tol) return true;
      }
    }
    return false;
  }

  double measure() const {
    double m = 0.0;
    for (auto [lo, hi] : pieces_) m += hi - lo;
    return std::min(m, kTwoPi);
  }

  bool empty() const { return pieces_.empty(); }

  /// Disjoint circular intervals, with pieces touching at 0 / 2π rejoined.
  std::vector<Interval> intervals() const {
    std::vector<Interval> out;
    if (pieces_.empty()) return out;
    if (pieces_.size() == 1 && pieces_[0].first <= 0.0 && pieces_[0].second >= kTwoPi) {
      return {{0.0, kTwoPi}};
    }
    std::vector<std::pair<double, double>> p = pieces_;
    const bool wraps = p.size() > 1 && p.front().first <= kSnap && p.back().second >= kTwoPi - kSnap;
    if (wraps) {
      const auto head = p.front();
      p.erase(p.begin());
      p.back().second = kTwoPi + head.second;
    }
    for (auto [lo, hi] : p) out.push_back({normalize_angle(lo), hi - lo});
    return out;
  }

 private:
  void add_piece(double lo, double hi) {
    pieces_.emplace_back(lo, hi);
    std::sort(pieces_.begin(), pieces_.end());
    std::vector<std::pair<double, double>> merged;
    for (auto piece : pieces_) {
      if (!merged.empty() && piece.first <= merged.back().second + kSnap) {
        merged.back().second = std::max(merged.back().second, piece.second);
      } else {
        merged.push_back(piece);
      }
    }
    pieces_ = std::move(merged);
  }

  std::vector<std::pair<double, double>> pieces_;
};

}  // namespace evac

#endif  // EVAC_GEOMETRY_HPP
