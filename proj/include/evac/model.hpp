#ifndef EVAC_MODEL_HPP
#define EVAC_MODEL_HPP

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "evac/geometry.hpp"

namespace evac {

enum class Model { wireless, f2f };

inline std::string_view to_string(Model m) { return m == Model::wireless ? "wireless" : "f2f"; }

inline Model parse_model(std::string_view s) {
  if (s == "wireless" || s == "w") return Model::wireless;
  if (s == "f2f" || s == "face-to-face") return Model::f2f;
  throw std::invalid_argument("unknown model '" + std::string(s) + "' (expected wireless or f2f)");
}

/// One adversarial placement: the exit and, at arc distance alpha in the
/// given orientation, the treasure.
struct Configuration {
  double alpha = 0.0;
  Angle exit_angle;
  int orientation = +1;
  Model model = Model::wireless;

  Angle treasure_angle() const { return exit_angle + orientation * alpha; }

  void validate() const {
    if (!(alpha >= 0.0 && alpha <= kPi)) throw std::invalid_argument("alpha outside [0, pi]");
    if (orientation != 1 && orientation != -1) throw std::invalid_argument("orientation must be +1 or -1");
  }
};

/// Thrown when a run exceeds the time any correct protocol could need.
struct NonTermination : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when the treasure is released somewhere other than the true exit.
struct AuditFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Absolute-time cap on any run: 1 + 6π.
inline constexpr double kTimeCap = 1.0 + 6.0 * kPi;

inline constexpr double kOpenEnded = std::numeric_limits<double>::infinity();

struct TrajectorySegment {
  enum class Kind { arc, chord, wait };

  Kind kind = Kind::wait;
  double start_time = 0.0;
  double duration = 0.0;  ///< kOpenEnded while still active and unbounded
  // arc
  Angle arc_start;
  Dir dir = Dir::pos;
  // chord / wait
  Point from;
  Point to;

  double end_time() const { return start_time + duration; }

  Point position_at(double t) const {
    const double el = std::max(0.0, t - start_time);
    switch (kind) {
      case Kind::arc: return pos_on_arc(arc_start, dir, el);
      case Kind::chord: return pos_on_segment(from, to, std::min(el, distance(from, to)));
      case Kind::wait: return from;
    }
    return from;
  }

  Point end_point() const { return position_at(end_time()); }

  static TrajectorySegment arc(double t0, Angle start, Dir d, double dur = kOpenEnded) {
    TrajectorySegment s;
    s.kind = Kind::arc;
    s.start_time = t0;
    s.duration = dur;
    s.arc_start = start;
    s.dir = d;
    s.from = on_circle(start);
    return s;
  }
  static TrajectorySegment chord(double t0, Point a, Point b) {
    TrajectorySegment s;
    s.kind = Kind::chord;
    s.start_time = t0;
    s.from = a;
    s.to = b;
    s.duration = distance(a, b);
    return s;
  }
  static TrajectorySegment wait(double t0, Point at, double dur = kOpenEnded) {
    TrajectorySegment s;
    s.kind = Kind::wait;
    s.start_time = t0;
    s.from = at;
    s.to = at;
    s.duration = dur;
    return s;
  }
};

/// What a robot observes at a perimeter point.
struct Content {
  bool exit = false;
  bool treasure = false;
  bool interesting() const { return exit || treasure; }
  friend bool operator==(Content, Content) = default;
};

struct SimEvent {
  enum class Kind { depart, discover, pickup, meet, timer, evacuate };

  double time = 0.0;
  int robot = 0;
  Kind kind = Kind::depart;
  Angle point;        ///< discover
  Content what;       ///< discover
  Point at;           ///< meet / evacuate / pickup
  int other = -1;     ///< meet
  std::string label;  ///< timer label, or a short note
};

inline std::string_view to_string(SimEvent::Kind k) {
  switch (k) {
    case SimEvent::Kind::depart: return "depart";
    case SimEvent::Kind::discover: return "discover";
    case SimEvent::Kind::pickup: return "pickup";
    case SimEvent::Kind::meet: return "meet";
    case SimEvent::Kind::timer: return "timer";
    case SimEvent::Kind::evacuate: return "evacuate";
  }
  return "?";
}

/// Protocol paths a run went through; used to check test coverage of the
/// rendezvous outcomes.
enum class Path : unsigned {
  a1 = 1u << 0,
  a2 = 1u << 1,
  a3 = 1u << 2,
  a2_meet = 1u << 3,
  a2_timeout = 1u << 4,
  a3_meet = 1u << 5,
  a3_no_meet = 1u << 6,
  a3_partner_at_i = 1u << 7,
  confident = 1u << 8,
  race = 1u << 9,
};

struct Audit {
  bool delivered_at_true_exit = false;
  bool speed_respected = true;
  bool continuity = true;
  bool knowledge_sound = true;
};

struct SimResult {
  Configuration config;
  double evac_time = 0.0;
  std::vector<SimEvent> events;
  std::vector<TrajectorySegment> trajectories[2];
  Audit audit;
  unsigned paths = 0;

  bool took(Path p) const { return (paths & static_cast<unsigned>(p)) != 0; }
};

}  // namespace evac

#endif  // EVAC_MODEL_HPP
