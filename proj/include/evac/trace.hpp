#ifndef EVAC_TRACE_HPP
#define EVAC_TRACE_HPP

// JSON export of a simulation run.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "evac/model.hpp"

namespace evac {

namespace detail {

// Rounded to 12 significant digits so traces are stable across platforms.
inline double r12(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

inline nlohmann::ordered_json point_json(Point p) { return nlohmann::ordered_json::array({r12(p.x), r12(p.y)}); }

inline std::string segment_kind(TrajectorySegment::Kind k) {
  switch (k) {
    case TrajectorySegment::Kind::arc: return "arc";
    case TrajectorySegment::Kind::chord: return "chord";
    case TrajectorySegment::Kind::wait: return "wait";
  }
  return "?";
}

}  // namespace detail

inline nlohmann::ordered_json trace_json(const SimResult& r) {
  using nlohmann::ordered_json;
  using detail::r12;
  ordered_json doc;
  doc["config"] = {{"model", std::string(to_string(r.config.model))},
                   {"alpha", r12(r.config.alpha)},
                   {"exit_angle", r12(r.config.exit_angle.value())},
                   {"orientation", r.config.orientation},
                   {"treasure_angle", r12(r.config.treasure_angle().value())}};
  ordered_json robots = ordered_json::array();
  for (int i = 0; i < 2; ++i) {
    ordered_json segs = ordered_json::array();
    for (const auto& s : r.trajectories[i]) {
      segs.push_back({{"t0", r12(s.start_time)},
                      {"t1", r12(s.end_time())},
                      {"kind", detail::segment_kind(s.kind)},
                      {"from", detail::point_json(s.position_at(s.start_time))},
                      {"to", detail::point_json(s.end_point())}});
    }
    ordered_json events = ordered_json::array();
    for (const auto& e : r.events) {
      if (e.robot != i) continue;
      ordered_json ev{{"t", r12(e.time)}, {"kind", std::string(to_string(e.kind))}};
      switch (e.kind) {
        case SimEvent::Kind::discover:
          ev["angle"] = r12(e.point.value());
          ev["exit"] = e.what.exit;
          ev["treasure"] = e.what.treasure;
          break;
        case SimEvent::Kind::meet: ev["other"] = e.other; [[fallthrough]];
        case SimEvent::Kind::pickup:
        case SimEvent::Kind::evacuate: ev["at"] = detail::point_json(e.at); break;
        case SimEvent::Kind::timer: ev["label"] = e.label; break;
        case SimEvent::Kind::depart: break;
      }
      events.push_back(ev);
    }
    robots.push_back({{"id", i}, {"segments", segs}, {"events", events}});
  }
  doc["robots"] = robots;
  doc["evac_time"] = r12(r.evac_time);
  doc["audit"] = {{"delivered_at_true_exit", r.audit.delivered_at_true_exit},
                  {"speed_respected", r.audit.speed_respected},
                  {"continuity", r.audit.continuity},
                  {"knowledge_sound", r.audit.knowledge_sound}};
  return doc;
}

}  // namespace evac

#endif  // EVAC_TRACE_HPP
