#ifndef EVAC_PROTOCOL_HPP
#define EVAC_PROTOCOL_HPP

// Evacuation protocols as event-driven controllers. A protocol never sees the
// hidden configuration: it receives observations from a driver (the exact
// event engine or the time-stepped oracle) and answers with motion commands.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evac/geometry.hpp"
#include "evac/knowledge.hpp"
#include "evac/model.hpp"
#include "evac/strategies.hpp"

namespace evac {

struct Command {
  enum class Kind { sweep, move_to, wait_until, halt };

  Kind kind = Kind::halt;
  Dir dir = Dir::pos;
  Point target;
  std::optional<Angle> target_angle;  ///< set when the target lies on the perimeter
  double until = 0.0;                 ///< absolute time, wait_until only
  bool evacuate = false;              ///< release the treasure on arrival
  bool decision = false;              ///< arrival/expiry is a rendezvous decision point
  std::string label;

  static Command sweep(Dir d) {
    Command c;
    c.kind = Kind::sweep;
    c.dir = d;
    return c;
  }
  static Command move_to(Point p) {
    Command c;
    c.kind = Kind::move_to;
    c.target = p;
    return c;
  }
  static Command move_to(Angle a) {
    Command c = move_to(on_circle(a));
    c.target_angle = a;
    return c;
  }
  static Command evacuate_at(Angle a) {
    Command c = move_to(a);
    c.evacuate = true;
    c.label = "evacuate";
    return c;
  }
  static Command wait_until(double t, std::string label) {
    Command c;
    c.kind = Kind::wait_until;
    c.until = t;
    c.label = std::move(label);
    return c;
  }
  static Command halt() { return Command{}; }
};

struct Observation {
  enum class Kind { discover, met, arrived, timer };

  Kind kind = Kind::arrived;
  Angle point;  ///< discover
  Content what; ///< discover; reflects what the robot actually got (a treasure already taken reads empty)
  int other = -1;
};

struct RobotView {
  int id = 0;
  double now = 0.0;  ///< absolute time
  Point position;
  KnowledgeState& knowledge;
  bool holds = false;
};

using Observations = std::array<std::vector<Observation>, 2>;
using Commands = std::array<std::optional<Command>, 2>;

class Protocol {
 public:
  virtual ~Protocol() = default;

  /// Command issued at time 0 at the centre.
  virtual Command start(int robot) = 0;

  /// Called once per batch of simultaneous observations. Observation lists are
  /// ordered discover, met, arrived/timer. Returns the robots whose plan changes.
  virtual Commands react(std::array<RobotView, 2> views, const Observations& obs) = 0;

  unsigned paths() const { return paths_; }

 protected:
  void mark(Path p) { paths_ |= static_cast<unsigned>(p); }

 private:
  unsigned paths_ = 0;
};

inline bool has(const std::vector<Observation>& obs, Observation::Kind k) {
  for (const auto& o : obs) {
    if (o.kind == k) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Wireless: shared knowledge, greedy exploration, confident evacuation.

class WirelessProtocol final : public Protocol {
 public:
  explicit WirelessProtocol(double alpha) : alpha_(alpha) {
    if (alpha <= kTwoThirdsPi) {
      robots_[0] = {Angle(0.0), Dir::pos};
      robots_[1] = {Angle(0.0), Dir::neg};
    } else {
      robots_[0] = {Angle(0.0), Dir::pos};
      robots_[1] = {Angle(kPi), Dir::pos};
    }
  }

  Command start(int robot) override { return Command::move_to(robots_[robot].start); }

  Commands react(std::array<RobotView, 2> views, const Observations& obs) override {
    Commands out;
    KnowledgeState& k = views[0].knowledge;

    for (int i = 0; i < 2; ++i) {
      Robot& r = robots_[i];
      if (r.phase == Phase::to_perimeter && has(obs[i], Observation::Kind::arrived)) {
        r.phase = Phase::sweep;
        out[i] = Command::sweep(r.dir);
      }
    }

    if (!step3_done_) assign_step3(obs, k, out);

    for (int i = 0; i < 2; ++i) {
      Robot& r = robots_[i];
      const bool holds = views[i].holds;
      if (holds && k.exit().is_known()) {
        if (r.phase != Phase::evac) {
          r.phase = Phase::evac;
          out[i] = Command::evacuate_at(k.exit().known());
          mark(Path::confident);
        }
      } else if (!holds && k.treasure_taken()) {
        if (r.phase != Phase::halted) {
          r.phase = Phase::halted;
          out[i] = Command::halt();
        }
      } else if (!holds && k.treasure().is_known() && k.exit().is_known()) {
        if (r.phase != Phase::race) {
          r.phase = Phase::race;
          out[i] = Command::move_to(k.treasure().known());
          mark(Path::race);
        }
      } else if (r.phase == Phase::step3 && has(obs[i], Observation::Kind::arrived) && !out[i]) {
        r.phase = Phase::halted;
        out[i] = Command::halt();
      }
    }
    return out;
  }

 private:
  enum class Phase { to_perimeter, sweep, step3, race, evac, halted };
  struct Robot {
    Angle start;
    Dir dir = Dir::pos;
    Phase phase = Phase::to_perimeter;
  };

  // On the first discovery the finder heads to its forward candidate and the
  // partner to the remaining one, unless inference already settled the location.
  void assign_step3(const Observations& obs, KnowledgeState& k, Commands& out) {
    int finder = -1;
    Angle found_at;
    for (int i = 0; i < 2 && finder < 0; ++i) {
      for (const auto& o : obs[i]) {
        if (o.kind == Observation::Kind::discover && o.what.interesting()) {
          finder = i;
          found_at = o.point;
          break;
        }
      }
    }
    if (finder < 0) return;
    step3_done_ = true;

    const Belief& other = k.treasure().is_known() ? k.exit() : k.treasure();
    if (other.status() != Belief::Status::candidates || other.candidates().size() != 2) return;

    const Angle forward = found_at.advanced(robots_[finder].dir, alpha_);
    Angle mine = other.candidates()[0];
    Angle theirs = other.candidates()[1];
    if (arc_dist(theirs, forward) < arc_dist(mine, forward)) std::swap(mine, theirs);

    robots_[finder].phase = Phase::step3;
    out[finder] = Command::move_to(mine);
    robots_[1 - finder].phase = Phase::step3;
    out[1 - finder] = Command::move_to(theirs);
  }

  double alpha_;
  std::array<Robot, 2> robots_;
  bool step3_done_ = false;
};

// ---------------------------------------------------------------------------
// Face-to-face: per-robot knowledge, greedy A1 and the rendezvous subroutines
// A2 (meet at the centre with a timeout) and A3 (meet on chord ID at K).

class FaceToFaceProtocol final : public Protocol {
 public:
  explicit FaceToFaceProtocol(double alpha) : alpha_(alpha) {
    robots_[0].dir = Dir::pos;
    robots_[1].dir = Dir::neg;
  }

  Command start(int /*robot*/) override { return Command::move_to(Angle(0.0)); }

  Commands react(std::array<RobotView, 2> views, const Observations& obs) override {
    Commands out;
    for (int i = 0; i < 2; ++i) out[i] = react_one(robots_[i], views[i], obs[i]);
    return out;
  }

  /// Subroutine chosen by each robot, if any; exposed for tests.
  std::optional<Branch> branch(int robot) const { return robots_[robot].branch; }

 private:
  enum class Phase {
    to_perimeter,
    sweep,
    a1_t,
    a1_e_to_b,
    a1_e_to_c,
    a2_t_to_center,
    a2_t_wait,
    a2_e_to_b,
    a2_e_to_center,
    a3_t_to_k,
    a3_e_to_b,
    a3_e_to_c,
    evac,
    halted,
  };

  struct Robot {
    Dir dir = Dir::pos;
    Phase phase = Phase::to_perimeter;
    std::optional<Branch> branch;
    double x = 0.0;           // protocol time of first discovery
    double found_time = 0.0;  // absolute
    Angle i, b, c, d;
  };

  std::optional<Command> react_one(Robot& r, RobotView& v, const std::vector<Observation>& obs) {
    std::optional<Command> cmd;
    auto go = [&](Phase p, Command c) {
      r.phase = p;
      cmd = std::move(c);
    };

    for (const auto& o : obs) {
      // A plan replaced earlier in this batch makes later arrival/timer notices stale.
      if (cmd && (o.kind == Observation::Kind::arrived || o.kind == Observation::Kind::timer)) continue;

      switch (o.kind) {
        case Observation::Kind::discover:
          if ((r.phase == Phase::sweep || r.phase == Phase::to_perimeter) && o.what.interesting()) {
            first_discovery(r, v, o, go);
          }
          break;

        case Observation::Kind::met:
          // Deductions never override what a meeting just taught; the merged
          // knowledge decides where to go.
          if (r.phase == Phase::a2_t_to_center || r.phase == Phase::a2_t_wait) {
            mark(Path::a2_meet);
            v.knowledge.deduce_exit(r.c);
            go(Phase::evac, Command::evacuate_at(v.knowledge.exit().known()));
          } else if (r.phase == Phase::a3_t_to_k) {
            mark(v.now - r.found_time <= kEps ? Path::a3_partner_at_i : Path::a3_meet);
            v.knowledge.deduce_exit(r.c);
            go(Phase::evac, Command::evacuate_at(v.knowledge.exit().known()));
          } else if (r.phase == Phase::a3_e_to_c) {
            go(Phase::halted, Command::halt());
          }
          break;

        case Observation::Kind::arrived:
          switch (r.phase) {
            case Phase::to_perimeter: go(Phase::sweep, Command::sweep(r.dir)); break;
            case Phase::a1_e_to_b:
              if (!v.holds) go(Phase::a1_e_to_c, Command::move_to(r.c));
              break;
            case Phase::a1_e_to_c:
            case Phase::a2_e_to_center:
            case Phase::a3_e_to_c:
              if (!v.holds) go(Phase::halted, Command::halt());
              break;
            case Phase::a2_t_to_center: {
              Command w = Command::wait_until(1.0 + a2_timer(alpha_, r.x), "A2 t0");
              w.decision = true;
              go(Phase::a2_t_wait, w);
              break;
            }
            case Phase::a2_e_to_b:
              if (!v.holds) go(Phase::a2_e_to_center, Command::move_to(kCenter));
              break;
            case Phase::a3_t_to_k:
              mark(Path::a3_no_meet);
              v.knowledge.deduce_exit(r.b);
              go(Phase::evac, Command::evacuate_at(v.knowledge.exit().known()));
              break;
            case Phase::a3_e_to_b:
              if (!v.holds) go(Phase::a3_e_to_c, Command::move_to(r.c));
              break;
            default: break;
          }
          break;

        case Observation::Kind::timer:
          if (r.phase == Phase::a2_t_wait) {
            mark(Path::a2_timeout);
            v.knowledge.deduce_exit(r.b);
            go(Phase::evac, Command::evacuate_at(v.knowledge.exit().known()));
          }
          break;
      }
    }

    // A holder that knows the exit goes straight there.
    if (v.holds && v.knowledge.exit().is_known() && r.phase != Phase::evac) {
      r.phase = Phase::evac;
      cmd = Command::evacuate_at(v.knowledge.exit().known());
    }
    return cmd;
  }

  template <class Go>
  void first_discovery(Robot& r, RobotView& v, const Observation& o, Go&& go) {
    r.x = v.now - 1.0;
    r.found_time = v.now;
    r.i = o.point;
    r.b = r.i.advanced(r.dir, alpha_);
    r.c = r.i.advanced(r.dir, -alpha_);
    r.d = r.i.advanced(r.dir, -2.0 * alpha_);
    const bool got_treasure = o.what.treasure;
    const Branch br = select_branch(alpha_, r.x, got_treasure ? Found::treasure : Found::exit);
    r.branch = br;
    mark(br == Branch::a1 ? Path::a1 : br == Branch::a2 ? Path::a2 : Path::a3);

    switch (br) {
      case Branch::a1:
        go(got_treasure ? Phase::a1_t : Phase::a1_e_to_b, Command::move_to(r.b));
        break;
      case Branch::a2:
        if (got_treasure) {
          go(Phase::a2_t_to_center, Command::move_to(kCenter));
        } else {
          go(Phase::a2_e_to_b, Command::move_to(r.b));
        }
        break;
      case Branch::a3:
        if (got_treasure) {
          // Beyond α ≈ 2.75 the offset turns negative for x close to α; the
          // chord walk then has zero length and the decision is taken at I.
          const double y = std::clamp(a3_offset_raw(alpha_, r.x), 0.0, 2.0 * std::sin(alpha_));
          const Point i = on_circle(r.i);
          const Point dpt = on_circle(r.d);
          const double len = distance(i, dpt);
          Command c = Command::move_to(len > 0.0 ? i + (dpt - i) * (y / len) : i);
          c.decision = true;
          c.label = "A3 K";
          go(Phase::a3_t_to_k, c);
        } else {
          go(Phase::a3_e_to_b, Command::move_to(r.b));
        }
        break;
    }
  }

  double alpha_;
  std::array<Robot, 2> robots_;
};

inline std::unique_ptr<Protocol> make_protocol(Model m, double alpha) {
  if (m == Model::wireless) return std::make_unique<WirelessProtocol>(alpha);
  return std::make_unique<FaceToFaceProtocol>(alpha);
}

}  // namespace evac

#endif  // EVAC_PROTOCOL_HPP
