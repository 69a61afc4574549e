#ifndef EVAC_ENGINE_HPP
#define EVAC_ENGINE_HPP

// Exact event-driven simulation of two robots. Every event time is solved in
// closed form from the active motion segments; nothing is time-stepped.

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evac/geometry.hpp"
#include "evac/knowledge.hpp"
#include "evac/model.hpp"
#include "evac/protocol.hpp"

namespace evac {

namespace detail {

inline bool is_linear(const TrajectorySegment& s) { return s.kind != TrajectorySegment::Kind::arc; }

inline Point velocity(const TrajectorySegment& s) {
  if (s.kind != TrajectorySegment::Kind::chord || s.duration <= 0.0) return {0.0, 0.0};
  return (s.to - s.from) * (1.0 / s.duration);
}

/// Unclamped linear position; valid inside the segment's time window.
inline Point linear_pos(const TrajectorySegment& s, double t) {
  return s.from + velocity(s) * (t - s.start_time);
}

/// First t in (after, until] at which an arc segment sits at perimeter angle p.
inline std::optional<double> next_arc_hit(const TrajectorySegment& s, Angle p, double after, double until) {
  const double offset = dir_dist(s.arc_start, p, s.dir);
  double t = s.start_time + offset;
  if (t <= after) t += kTwoPi * std::ceil((after - t) / kTwoPi + 1e-15);
  if (t <= after) t += kTwoPi;
  if (t > until || t > s.end_time()) return std::nullopt;
  return t;
}

inline bool arc_at(const TrajectorySegment& s, double t, Angle p, double tol = kEps) {
  return same_angle(s.arc_start.advanced(s.dir, t - s.start_time), p, tol);
}

}  // namespace detail

/// Time after segment start at which the segment detects perimeter point `p`.
/// Chord interiors are off the perimeter and never detect anything.
inline std::optional<double> discovery_scan(const TrajectorySegment& seg, Angle p) {
  switch (seg.kind) {
    case TrajectorySegment::Kind::arc: {
      const double offset = dir_dist(seg.arc_start, p, seg.dir);
      if (offset <= seg.duration + kEps) return offset;
      return std::nullopt;
    }
    case TrajectorySegment::Kind::chord:
      if (on_perimeter(seg.to) && same_angle(angle_of(seg.to), p)) return seg.duration;
      if (on_perimeter(seg.from) && same_angle(angle_of(seg.from), p)) return 0.0;
      return std::nullopt;
    case TrajectorySegment::Kind::wait:
      if (on_perimeter(seg.from) && same_angle(angle_of(seg.from), p)) return 0.0;
      return std::nullopt;
  }
  return std::nullopt;
}

/// First co-location of two robots on the given segments within [lo, hi].
/// With `strict`, robots already together at the start of the window are
/// ignored (they met earlier) and only a later co-location counts.
inline std::optional<double> first_colocation(const TrajectorySegment& a, const TrajectorySegment& b, double lo,
                                              double hi, bool strict) {
  using detail::is_linear;
  const double ws = std::max({lo, a.start_time, b.start_time});
  const double we = std::min({hi, a.end_time(), b.end_time()});
  if (ws > we + kEps) return std::nullopt;

  if (is_linear(a) && is_linear(b)) {
    const Point r0 = detail::linear_pos(a, ws) - detail::linear_pos(b, ws);
    if (r0.norm() <= kEps) return strict ? std::nullopt : std::optional<double>(ws);
    const Point w = detail::velocity(a) - detail::velocity(b);
    const double ww = dot(w, w);
    if (ww == 0.0) return std::nullopt;
    const double tc = std::clamp(ws - dot(r0, w) / ww, ws, std::max(ws, we));
    if ((r0 + w * (tc - ws)).norm() <= kEps) return tc;
    return std::nullopt;
  }

  if (!is_linear(a) && !is_linear(b)) {
    // θa − θb = c + k·t; co-located when that is a multiple of 2π.
    const double da = sign(a.dir);
    const double db = sign(b.dir);
    const double c = a.arc_start.value() - da * a.start_time - b.arc_start.value() + db * b.start_time;
    const double k = da - db;
    const bool together = same_angle(Angle(c + k * ws), Angle(0.0));
    if (k == 0.0) return (together && !strict) ? std::optional<double>(ws) : std::nullopt;
    if (together && !strict) return ws;
    // smallest t > ws with c + k t = 2π m
    const double m0 = (c + k * ws) / kTwoPi;
    double m = k > 0 ? std::floor(m0) + 1.0 : std::ceil(m0) - 1.0;
    double t = (kTwoPi * m - c) / k;
    if (t <= ws + kEps) t += kTwoPi / std::abs(k);
    if (t > we) return std::nullopt;
    return t;
  }

  // One arc, one linear motion: the linear robot touches the perimeter only
  // at chord endpoints or while waiting on it.
  const TrajectorySegment& arc = is_linear(a) ? b : a;
  const TrajectorySegment& lin = is_linear(a) ? a : b;
  if (lin.kind == TrajectorySegment::Kind::wait) {
    if (!on_perimeter(lin.from)) return std::nullopt;
    const Angle p = angle_of(lin.from);
    if (detail::arc_at(arc, ws, p)) {
      if (!strict) return ws;
    }
    return detail::next_arc_hit(arc, p, ws + kEps, we);
  }
  std::optional<double> best;
  for (auto [pt, t] : {std::pair{lin.from, lin.start_time}, std::pair{lin.to, lin.end_time()}}) {
    if (!on_perimeter(pt) || t < ws - kEps || t > we + kEps) continue;
    if (strict && t <= ws + kEps) continue;
    if (detail::arc_at(arc, t, angle_of(pt))) {
      if (!best || t < *best) best = t;
    }
  }
  return best;
}

/// All meetings between two time-aligned trajectories. Continuous co-location
/// is reported once, at its start.
inline std::vector<SimEvent> colocation_events(const std::vector<TrajectorySegment>& traj_a,
                                               const std::vector<TrajectorySegment>& traj_b) {
  std::vector<double> times;
  for (const auto& a : traj_a) {
    for (const auto& b : traj_b) {
      const double lo = std::max(a.start_time, b.start_time);
      const double hi = std::min(a.end_time(), b.end_time());
      if (lo > hi + kEps) continue;
      if (auto t = first_colocation(a, b, lo, hi, false)) times.push_back(*t);
      if (auto t = first_colocation(a, b, lo, hi, true)) times.push_back(*t);
    }
  }
  std::sort(times.begin(), times.end());
  auto position = [](const std::vector<TrajectorySegment>& traj, double t) {
    for (const auto& s : traj) {
      if (t >= s.start_time - kEps && t <= s.end_time() + kEps) return s.position_at(std::min(t, s.end_time()));
    }
    return traj.empty() ? kCenter : traj.back().end_point();
  };
  std::vector<SimEvent> out;
  double last = -1.0;
  for (double t : times) {
    if (!out.empty() && t - last <= 1e-6) continue;
    // Skip times that merely continue an ongoing co-location.
    const double probe = t - 1e-6;
    if (probe >= 0.0 && near(position(traj_a, probe), position(traj_b, probe), 1e-7)) {
      last = t;
      continue;
    }
    SimEvent e;
    e.time = t;
    e.robot = 0;
    e.other = 1;
    e.kind = SimEvent::Kind::meet;
    e.at = position(traj_a, t);
    out.push_back(e);
    last = t;
  }
  return out;
}

class Engine {
 public:
  explicit Engine(const Configuration& config)
      : cfg_(config),
        exit_(config.exit_angle),
        treasure_(config.treasure_angle()),
        know_{KnowledgeState(config.alpha), KnowledgeState(config.alpha)},
        protocol_(make_protocol(config.model, config.alpha)) {
    cfg_.validate();
  }

  SimResult run() {
    result_.config = cfg_;
    for (int r = 0; r < 2; ++r) {
      apply(r, protocol_->start(r), 0.0);
      SimEvent e;
      e.kind = SimEvent::Kind::depart;
      e.robot = r;
      result_.events.push_back(e);
    }

    for (int iter = 0; iter < 100000; ++iter) {
      std::vector<Pending> pend = pending();
      if (pend.empty()) throw NonTermination("no further events: both robots idle before evacuation");
      const double tstar = std::min_element(pend.begin(), pend.end(), [](auto& a, auto& b) { return a.time < b.time; })->time;
      if (tstar > kTimeCap) throw NonTermination("run exceeded 1 + 6*pi");
      std::vector<Pending> batch;
      for (const auto& p : pend) {
        if (p.time <= tstar + kEps) batch.push_back(p);
      }
      std::stable_sort(batch.begin(), batch.end(), [](auto& a, auto& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.time != b.time) return a.time < b.time;
        return a.robot < b.robot;
      });
      advance(tstar);
      if (process(batch, tstar)) {
        finish(result_.evac_time);
        result_.paths = protocol_->paths();
        return result_;
      }
      last_batch_ = tstar;
    }
    throw NonTermination("event loop did not converge");
  }

  /// Events and segments recorded so far; useful after a run threw.
  const SimResult& partial() const { return result_; }

 private:
  // Order inside a batch: discoveries, meetings, arrivals/timers.
  enum class PendingKind { discover = 0, meet = 1, arrive = 2, timer = 3 };
  struct Pending {
    double time;
    int robot;
    PendingKind kind;
    Angle point;
  };

  struct Robot {
    TrajectorySegment seg;
    Command cmd;
    double explored_to = 0.0;  // time up to which the active arc is in `explored`
    bool live_end = false;     // active segment ends in an arrival/timer still to report
    std::vector<std::pair<Angle, double>> hits;  // perimeter hits of this segment already handled
  };

  bool handled(const Robot& rb, Angle p, double t) const {
    for (const auto& [q, tq] : rb.hits) {
      if (std::abs(tq - t) <= kSnap && same_angle(p, q, kSnap)) return true;
    }
    return false;
  }

  KnowledgeState& kn(int r) { return cfg_.model == Model::wireless ? know_[0] : know_[r]; }

  // Watch points are exact copies of item angles, so identification uses the
  // snap tolerance rather than the event tolerance.
  Content content_at(Angle p) const {
    Content c;
    c.exit = same_angle(p, exit_, kSnap);
    c.treasure = holder_ < 0 && same_angle(p, treasure_, kSnap);
    return c;
  }

  std::vector<Angle> watch_points(int r) {
    std::vector<Angle> w{exit_};
    if (holder_ < 0) w.push_back(treasure_);
    for (Angle c : kn(r).open_candidates()) w.push_back(c);
    return w;
  }

  std::vector<Pending> pending() {
    std::vector<Pending> out;
    for (int r = 0; r < 2; ++r) {
      const Robot& rb = robots_[r];
      const auto& s = rb.seg;
      if (rb.live_end && s.duration != kOpenEnded) {
        out.push_back({s.end_time(), r, s.kind == TrajectorySegment::Kind::wait ? PendingKind::timer : PendingKind::arrive,
                       Angle()});
      }
      if (s.kind == TrajectorySegment::Kind::arc) {
        // Hits strictly after the segment start (the start point itself was
        // seen on arrival) and not before the last batch.
        const double after = std::max(s.start_time, last_batch_);
        for (Angle p : watch_points(r)) {
          auto t = detail::next_arc_hit(s, p, after, kTimeCap + 1.0);
          if (t && handled(rb, p, *t)) t = detail::next_arc_hit(s, p, *t + kSnap, kTimeCap + 1.0);
          if (t) out.push_back({*t, r, PendingKind::discover, p});
        }
      }
    }
    if (cfg_.model == Model::f2f) {
      const double lo = std::max({0.0, last_batch_, last_meet_});
      if (auto t = first_colocation(robots_[0].seg, robots_[1].seg, lo, kTimeCap + 1.0, true)) {
        out.push_back({*t, 0, PendingKind::meet, Angle()});
      }
    }
    return out;
  }

  void advance(double t) {
    for (int r = 0; r < 2; ++r) {
      Robot& rb = robots_[r];
      if (rb.seg.kind != TrajectorySegment::Kind::arc) continue;
      const double from = std::max(rb.explored_to, rb.seg.start_time);
      if (t > from) {
        const Angle a = rb.seg.arc_start.advanced(rb.seg.dir, from - rb.seg.start_time);
        kn(r).add_explored_arc(a, rb.seg.dir, t - from);
        rb.explored_to = t;
      }
    }
  }

  Point position(int r, double t) const {
    const auto& s = robots_[r].seg;
    return s.position_at(std::min(t, s.end_time()));
  }

  void discover(int r, Angle p, double t, Observations& obs) {
    const Content c = content_at(p);
    // Report an item at its own angle, not at the (snap-close) scan point.
    if (c.exit) p = exit_;
    if (c.treasure) p = treasure_;
    if (c.treasure && holder_ < 0) {
      holder_ = r;
      kn(r).set_holds(cfg_.model == Model::f2f);
      kn(r).set_taken();
      SimEvent e;
      e.time = t;
      e.robot = r;
      e.kind = SimEvent::Kind::pickup;
      e.at = on_circle(p);
      result_.events.push_back(e);
    }
    kn(r).record(p, c);
    SimEvent e;
    e.time = t;
    e.robot = r;
    e.kind = SimEvent::Kind::discover;
    e.point = p;
    e.what = c;
    result_.events.push_back(e);
    obs[r].push_back({Observation::Kind::discover, p, c, -1});
  }

  // Returns true when the run ends with evacuation.
  bool process(const std::vector<Pending>& batch, double tstar) {
    Observations obs;
    std::array<std::vector<Angle>, 2> seen;
    auto already = [&](int r, Angle p) {
      for (Angle q : seen[r]) {
        if (same_angle(p, q)) return true;
      }
      seen[r].push_back(p);
      return false;
    };

    // Perimeter observations, both from sweeps and from chord arrivals, in
    // time order; exact ties go to robot 0.
    std::vector<Pending> looks;
    for (const auto& p : batch) {
      if (p.kind == PendingKind::discover) {
        looks.push_back(p);
      } else if (p.kind == PendingKind::arrive && robots_[p.robot].cmd.target_angle) {
        looks.push_back({p.time, p.robot, PendingKind::discover, *robots_[p.robot].cmd.target_angle});
      }
    }
    std::stable_sort(looks.begin(), looks.end(), [](auto& a, auto& b) {
      if (a.time != b.time) return a.time < b.time;
      return a.robot < b.robot;
    });
    for (const auto& p : looks) {
      robots_[p.robot].hits.emplace_back(p.point, p.time);
      if (!already(p.robot, p.point)) discover(p.robot, p.point, p.time, obs);
    }

    kn(0).infer();
    kn(1).infer();

    for (const auto& p : batch) {
      if (p.kind != PendingKind::meet) continue;
      last_meet_ = p.time;
      const Point at = position(0, p.time);
      KnowledgeState k0 = know_[0];
      know_[0].merge(know_[1]);
      know_[1].merge(k0);
      for (int r = 0; r < 2; ++r) {
        SimEvent e;
        e.time = p.time;
        e.robot = r;
        e.other = 1 - r;
        e.kind = SimEvent::Kind::meet;
        e.at = at;
        result_.events.push_back(e);
        obs[r].push_back({Observation::Kind::met, Angle(), {}, 1 - r});
      }
    }

    for (const auto& p : batch) {
      const int r = p.robot;
      Robot& rb = robots_[r];
      if (p.kind == PendingKind::arrive) {
        rb.live_end = false;
        if (rb.cmd.evacuate) {
          const Point here = rb.seg.end_point();
          if (holder_ != r || !near(here, on_circle(exit_))) {
            throw AuditFailure("robot " + std::to_string(r) + " released the treasure away from the exit");
          }
          SimEvent e;
          e.time = p.time;
          e.robot = r;
          e.kind = SimEvent::Kind::evacuate;
          e.at = here;
          result_.events.push_back(e);
          result_.evac_time = p.time;
          result_.audit.delivered_at_true_exit = true;
          return true;
        }
        obs[r].push_back({Observation::Kind::arrived, Angle(), {}, -1});
      } else if (p.kind == PendingKind::timer) {
        rb.live_end = false;
        SimEvent e;
        e.time = p.time;
        e.robot = r;
        e.kind = SimEvent::Kind::timer;
        e.label = rb.cmd.label;
        result_.events.push_back(e);
        obs[r].push_back({Observation::Kind::timer, Angle(), {}, -1});
      }
    }

    audit_knowledge();
    std::array<RobotView, 2> views{RobotView{0, tstar, position(0, tstar), kn(0), holder_ == 0},
                                   RobotView{1, tstar, position(1, tstar), kn(1), holder_ == 1}};
    const Commands cmds = protocol_->react(views, obs);
    audit_knowledge();

    for (int r = 0; r < 2; ++r) {
      if (cmds[r]) {
        apply(r, *cmds[r], tstar);
      } else if (!robots_[r].live_end && robots_[r].seg.kind != TrajectorySegment::Kind::arc &&
                 robots_[r].seg.duration != kOpenEnded) {
        // Finished its segment with no new plan: stand still.
        Command idle = Command::halt();
        idle.label = "idle";
        apply(r, idle, tstar);
      }
    }
    return false;
  }

  void audit_knowledge() {
    for (int r = 0; r < (cfg_.model == Model::wireless ? 1 : 2); ++r) {
      for (const auto& pr : know_[r].drain_promotions()) {
        if (pr.item == KnowledgeState::Item::exit) {
          if (!same_angle(pr.at, exit_, 1e-7)) result_.audit.knowledge_sound = false;
        } else if (holder_ < 0 && !same_angle(pr.at, treasure_, 1e-7)) {
          result_.audit.knowledge_sound = false;
        }
      }
    }
  }

  void close_segment(int r, double t) {
    Robot& rb = robots_[r];
    if (!started_[r]) return;
    TrajectorySegment s = rb.seg;
    s.duration = std::max(0.0, std::min(t, s.end_time()) - s.start_time);
    if (s.kind == TrajectorySegment::Kind::chord) {
      s.to = s.position_at(s.start_time + s.duration);
    }
    result_.trajectories[r].push_back(s);
  }

  void apply(int r, const Command& c, double t) {
    Robot& rb = robots_[r];
    const Point here = started_[r] ? position(r, t) : kCenter;
    close_segment(r, t);
    started_[r] = true;
    rb.cmd = c;
    rb.explored_to = t;
    rb.hits.clear();
    switch (c.kind) {
      case Command::Kind::sweep: {
        const Angle start = angle_of(here);
        rb.seg = TrajectorySegment::arc(t, start, c.dir);
        rb.live_end = false;
        break;
      }
      case Command::Kind::move_to:
        rb.seg = TrajectorySegment::chord(t, here, c.target);
        rb.live_end = true;
        break;
      case Command::Kind::wait_until:
        rb.seg = TrajectorySegment::wait(t, here, std::max(0.0, c.until - t));
        rb.live_end = true;
        break;
      case Command::Kind::halt:
        rb.seg = TrajectorySegment::wait(t, here);
        rb.live_end = false;
        break;
    }
  }

  void finish(double t) {
    for (int r = 0; r < 2; ++r) close_segment(r, t);
    for (int r = 0; r < 2; ++r) {
      const auto& traj = result_.trajectories[r];
      for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& s = traj[i];
        if (s.kind == TrajectorySegment::Kind::chord && std::abs(distance(s.from, s.to) - s.duration) > kEps) {
          result_.audit.speed_respected = false;
        }
        if (i > 0 && !near(traj[i - 1].end_point(), s.position_at(s.start_time))) result_.audit.continuity = false;
        if (i > 0 && std::abs(traj[i - 1].end_time() - s.start_time) > kEps) result_.audit.continuity = false;
      }
    }
    std::stable_sort(result_.events.begin(), result_.events.end(),
                     [](const SimEvent& a, const SimEvent& b) { return a.time < b.time; });
  }

  Configuration cfg_;
  Angle exit_;
  Angle treasure_;
  std::array<KnowledgeState, 2> know_;
  std::unique_ptr<Protocol> protocol_;
  std::array<Robot, 2> robots_;
  std::array<bool, 2> started_{false, false};
  int holder_ = -1;
  double last_batch_ = 0.0;
  double last_meet_ = 0.0;
  SimResult result_;
};

/// Run both robots on `config` from the centre at time 0 to evacuation.
inline SimResult simulate(const Configuration& config) { return Engine(config).run(); }

}  // namespace evac

#endif  // EVAC_ENGINE_HPP
