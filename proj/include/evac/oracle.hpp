#ifndef EVAC_ORACLE_HPP
#define EVAC_ORACLE_HPP

// Time-stepped reference driver. It runs the same protocol objects as the
// event engine but moves robots in fixed steps and detects points and
// meetings by proximity, so it shares no event-time algebra with the engine.

#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "evac/geometry.hpp"
#include "evac/knowledge.hpp"
#include "evac/model.hpp"
#include "evac/protocol.hpp"

namespace evac {

class Stepper {
 public:
  Stepper(const Configuration& config, double dt)
      : cfg_(config),
        dt_(dt),
        radius_(2.0 * dt),
        exit_(config.exit_angle),
        treasure_(config.treasure_angle()),
        know_{KnowledgeState(config.alpha), KnowledgeState(config.alpha)},
        protocol_(make_protocol(config.model, config.alpha)) {
    cfg_.validate();
    if (!(dt > 0.0 && dt <= 1e-3)) throw std::invalid_argument("oracle: dt must be in (0, 1e-3]");
  }

  double run() {
    for (int r = 0; r < 2; ++r) robots_[r].cmd = protocol_->start(r);
    const long max_steps = static_cast<long>(std::ceil(kTimeCap / dt_)) + 1;
    for (long step = 1; step <= max_steps; ++step) {
      const double t = step * dt_;
      Observations obs;
      std::array<bool, 2> arrived{false, false};
      std::array<bool, 2> timer{false, false};

      for (int r = 0; r < 2; ++r) move(r, t, arrived[r], timer[r]);

      for (int r = 0; r < 2; ++r) detect(r, obs);
      kn(0).infer();
      kn(1).infer();

      bool met = false;
      if (cfg_.model == Model::f2f) {
        const bool close = distance(robots_[0].pos, robots_[1].pos) <= radius_;
        met = close && !together_;
        together_ = close;
      }
      if (met) {
        KnowledgeState k0 = know_[0];
        know_[0].merge(know_[1]);
        know_[1].merge(k0);
        for (int r = 0; r < 2; ++r) obs[r].push_back({Observation::Kind::met, Angle(), {}, 1 - r});
      }

      for (int r = 0; r < 2; ++r) {
        if (arrived[r]) {
          if (robots_[r].cmd.evacuate) {
            if (holder_ != r || arc_dist(angle_of(robots_[r].pos), exit_) > 1e-6) {
              throw AuditFailure("oracle: treasure released away from the exit");
            }
            return t;
          }
          obs[r].push_back({Observation::Kind::arrived, Angle(), {}, -1});
        }
        if (timer[r]) obs[r].push_back({Observation::Kind::timer, Angle(), {}, -1});
      }

      const bool any = !obs[0].empty() || !obs[1].empty();
      if (!any) continue;
      std::array<RobotView, 2> views{RobotView{0, t, robots_[0].pos, kn(0), holder_ == 0},
                                     RobotView{1, t, robots_[1].pos, kn(1), holder_ == 1}};
      const Commands cmds = protocol_->react(views, obs);
      for (int r = 0; r < 2; ++r) {
        Robot& rb = robots_[r];
        if (cmds[r]) {
          rb.cmd = *cmds[r];
          rb.done = false;
          rb.grace = 0;
        } else if (arrived[r] || timer[r]) {
          rb.cmd = Command::halt();
          rb.done = true;
        }
      }
    }
    throw NonTermination("oracle: run exceeded 1 + 6*pi");
  }

 private:
  // Steps a decision arrival or expiry is held back so that a meeting at the
  // same instant is seen first.
  static constexpr int kGraceSteps = 3;

  struct Robot {
    Command cmd;
    Point pos = kCenter;
    bool done = false;
    int grace = 0;
    std::vector<Angle> near;  // watch points currently inside the detection radius
  };

  KnowledgeState& kn(int r) { return cfg_.model == Model::wireless ? know_[0] : know_[r]; }

  void move(int r, double t, bool& arrived, bool& timer) {
    Robot& rb = robots_[r];
    if (rb.done) return;
    switch (rb.cmd.kind) {
      case Command::Kind::sweep: {
        const Angle from = angle_of(rb.pos);
        kn(r).add_explored_arc(from, rb.cmd.dir, dt_);
        rb.pos = on_circle(from.advanced(rb.cmd.dir, dt_));
        break;
      }
      case Command::Kind::move_to: {
        const Point d = rb.cmd.target - rb.pos;
        const double len = d.norm();
        if (len <= dt_) {
          rb.pos = rb.cmd.target;
          if (rb.cmd.decision && rb.grace < kGraceSteps) {
            ++rb.grace;
            return;
          }
          arrived = true;
          rb.done = true;
        } else {
          rb.pos = rb.pos + d * (dt_ / len);
        }
        break;
      }
      case Command::Kind::wait_until:
        if (t >= rb.cmd.until - 1e-12) {
          if (rb.cmd.decision && rb.grace < kGraceSteps) {
            ++rb.grace;
            return;
          }
          timer = true;
          rb.done = true;
        }
        break;
      case Command::Kind::halt: break;
    }
  }

  void detect(int r, Observations& obs) {
    Robot& rb = robots_[r];
    if (rb.pos.norm() < 1.0 - radius_) {
      rb.near.clear();
      return;
    }
    std::vector<Angle> watch{exit_};
    if (holder_ < 0) watch.push_back(treasure_);
    for (Angle c : kn(r).open_candidates()) watch.push_back(c);
    if (rb.cmd.kind == Command::Kind::move_to && rb.cmd.target_angle && near(rb.pos, rb.cmd.target)) {
      watch.push_back(*rb.cmd.target_angle);
    }

    std::vector<Angle> now_near;
    for (Angle p : watch) {
      if (distance(rb.pos, on_circle(p)) > radius_) continue;
      bool dup = false;
      for (Angle q : now_near) dup = dup || same_angle(p, q);
      if (dup) continue;
      now_near.push_back(p);
      bool was = false;
      for (Angle q : rb.near) was = was || same_angle(p, q);
      if (was) continue;

      Content c;
      c.exit = same_angle(p, exit_, kSnap);
      c.treasure = holder_ < 0 && same_angle(p, treasure_, kSnap);
      if (c.treasure) {
        holder_ = r;
        kn(r).set_holds(cfg_.model == Model::f2f);
        kn(r).set_taken();
      }
      kn(r).record(p, c);
      obs[r].push_back({Observation::Kind::discover, p, c, -1});
    }
    rb.near = std::move(now_near);
  }

  Configuration cfg_;
  double dt_;
  double radius_;
  Angle exit_;
  Angle treasure_;
  std::array<KnowledgeState, 2> know_;
  std::unique_ptr<Protocol> protocol_;
  std::array<Robot, 2> robots_;
  bool together_ = true;
  int holder_ = -1;
};

/// Approximate evacuation time from the time-stepped driver.
inline double oracle_simulate(const Configuration& config, double dt) { return Stepper(config, dt).run(); }

}  // namespace evac

#endif  // EVAC_ORACLE_HPP
