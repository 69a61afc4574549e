// Finds the worst exit placement for each model at one separation and replays
// that run event by event.
//
//   sample_worst_case [alpha]        (default 1.5)

#include <cstdio>
#include <cstdlib>
#include <exception>

#include "evac/evac.hpp"

using namespace evac;

static void replay(Model m, double alpha, double exit) {
  Configuration c;
  c.model = m;
  c.alpha = alpha;
  c.exit_angle = Angle(exit);
  const SimResult r = simulate(c);
  std::printf("  exit %.6f, treasure %.6f\n", c.exit_angle.value(), c.treasure_angle().value());
  for (const SimEvent& e : r.events) {
    if (e.kind == SimEvent::Kind::depart) continue;
    std::printf("  t=%9.6f  robot %d  %-8s", e.time, e.robot, std::string(to_string(e.kind)).c_str());
    if (e.kind == SimEvent::Kind::discover) {
      std::printf(" at %.6f%s%s", e.point.value(), e.what.exit ? " exit" : "", e.what.treasure ? " treasure" : "");
    }
    if (!e.label.empty()) std::printf(" (%s)", e.label.c_str());
    std::printf("\n");
  }
}

int main(int argc, char** argv) {
  const double alpha = argc > 1 ? AngleExpr::parse(argv[1]) : 1.5;
  try {
    require_alpha(alpha);
    for (Model m : {Model::wireless, Model::f2f}) {
      const SweepResult s = sweep(m, alpha, 4096, 40);
      std::printf("%s, alpha=%.6f: worst %.9f (bound %.9f, %s) over %d placements\n",
                  std::string(to_string(m)).c_str(), alpha, s.max_time, s.bound,
                  s.ub_ok ? "within bound" : "ABOVE bound", s.evaluated);
      replay(m, alpha, s.argmax_exit);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
