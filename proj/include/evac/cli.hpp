#ifndef EVAC_CLI_HPP
#define EVAC_CLI_HPP

// Command implementations behind the evac command-line tool. Each command
// validates its parameters, writes results to a stream and returns an exit
// status; argument parsing lives in the tool itself.

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "evac/bounds.hpp"
#include "evac/engine.hpp"
#include "evac/model.hpp"
#include "evac/oracle.hpp"
#include "evac/strategies.hpp"
#include "evac/trace.hpp"
#include "evac/verify.hpp"

namespace evac {

/// Evaluates expressions such as `2*pi/3`, `-pi/4` or `0.5`.
class AngleExpr {
 public:
  static double parse(const std::string& text) {
    AngleExpr p(text);
    const double v = p.sum();
    p.skip_ws();
    if (p.pos_ != p.s_.size()) p.fail("unexpected '" + std::string(1, p.s_[p.pos_]) + "'");
    if (!std::isfinite(v)) p.fail("value is not finite");
    return v;
  }

 private:
  explicit AngleExpr(std::string s) : s_(std::move(s)) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("bad angle expression '" + s_ + "': " + why);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  double sum() {
    double v = product();
    for (;;) {
      if (eat('+')) {
        v += product();
      } else if (eat('-')) {
        v -= product();
      } else {
        return v;
      }
    }
  }
  double product() {
    double v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        v /= unary();
      } else {
        return v;
      }
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return atom();
  }
  double atom() {
    skip_ws();
    if (eat('(')) {
      const double v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (s_.compare(pos_, 2, "pi") == 0) {
      pos_ += 2;
      return kPi;
    }
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail(pos_ < s_.size() ? "expected a number at '" + s_.substr(pos_) + "'" : "expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

/// A comma-separated list of angle expressions; an item `lo:hi:n` expands to
/// n + 1 evenly spaced values.
inline std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto c1 = item.find(':');
    if (c1 == std::string::npos) {
      out.push_back(AngleExpr::parse(item));
      continue;
    }
    const auto c2 = item.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("bad range '" + item + "': expected lo:hi:n");
    const double lo = AngleExpr::parse(item.substr(0, c1));
    const double hi = AngleExpr::parse(item.substr(c1 + 1, c2 - c1 - 1));
    const std::string ns = item.substr(c2 + 1);
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(ns, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != ns.size() || n < 1) throw std::invalid_argument("bad range '" + item + "': n must be a positive integer");
    for (double v : linspace(lo, hi, n)) out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty alpha list");
  return out;
}

inline int parse_orientation(const std::string& s) {
  if (s == "+1" || s == "1" || s == "+") return +1;
  if (s == "-1" || s == "-") return -1;
  throw std::invalid_argument("orientation must be +1 or -1, got '" + s + "'");
}

struct RunSpec {
  enum class Command { simulate, sweep, bounds, lemmas, deploy };
  enum class Format { csv, json };

  Command command = Command::simulate;
  Model model = Model::wireless;
  double alpha = 0.0;
  std::vector<double> alphas;
  double exit_angle = 0.0;
  int orientation = +1;
  int grid_n = 8192;
  int refine_iters = 40;
  double dt = 0.0;  ///< > 0 also runs the time-stepped oracle (simulate)
  int robots = 2;   ///< deploy
  bool gap = false;
  std::string output;
  Format format = Format::csv;
};

inline void check_alpha(double a) {
  if (!(a >= 0.0 && a <= kPi)) throw std::invalid_argument("alpha outside [0, pi]: " + fmt12(a));
}

/// Throws std::invalid_argument naming the first violated precondition.
inline void validate(const RunSpec& s) {
  switch (s.command) {
    case RunSpec::Command::simulate:
      check_alpha(s.alpha);
      if (!std::isfinite(s.exit_angle)) throw std::invalid_argument("exit angle is not finite");
      if (s.orientation != 1 && s.orientation != -1) throw std::invalid_argument("orientation must be +1 or -1");
      if (s.dt != 0.0 && !(s.dt > 0.0 && s.dt <= 1e-3)) throw std::invalid_argument("dt must be in (0, 1e-3]");
      break;
    case RunSpec::Command::sweep:
      if (s.alphas.empty()) throw std::invalid_argument("no alpha values given");
      for (double a : s.alphas) check_alpha(a);
      if (s.grid_n < 256) throw std::invalid_argument("grid must be at least 256");
      if (s.refine_iters < 0) throw std::invalid_argument("refine must be non-negative");
      break;
    case RunSpec::Command::bounds:
      if (s.alphas.empty()) throw std::invalid_argument("no alpha values given");
      for (double a : s.alphas) check_alpha(a);
      break;
    case RunSpec::Command::lemmas:
      if (s.grid_n < 1000) throw std::invalid_argument("grid too coarse: lemma checks need at least 1000 points");
      break;
    case RunSpec::Command::deploy:
      if (s.robots < 2 || s.robots % 2 != 0) throw std::invalid_argument("robot count must be even and at least 2");
      break;
  }
}

namespace detail {

// Writes to the output file if one is named, else to `out`.
template <class F>
void emit(const RunSpec& s, std::ostream& out, F&& body) {
  if (s.output.empty()) {
    body(out);
    return;
  }
  std::ofstream f(s.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + s.output + "'");
  body(f);
}

}  // namespace detail

inline int cmd_simulate(const RunSpec& s, std::ostream& out, std::ostream& err) {
  validate(s);
  Configuration c;
  c.model = s.model;
  c.alpha = s.alpha;
  c.exit_angle = Angle(s.exit_angle);
  c.orientation = s.orientation;
  Engine engine(c);
  SimResult r;
  try {
    r = engine.run();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    if (!s.output.empty()) {
      detail::emit(s, out, [&](std::ostream& o) { o << trace_json(engine.partial()).dump(2) << '\n'; });
    }
    return 2;
  }
  out << "evac_time " << fmt12(r.evac_time) << '\n';
  out << "bound " << fmt12(model_bound(s.model, s.alpha)) << '\n';
  int status = 0;
  if (s.dt > 0.0) {
    const double o = oracle_simulate(c, s.dt);
    out << "oracle_time " << fmt12(o) << '\n';
  }
  if (!s.output.empty()) {
    detail::emit(s, out, [&](std::ostream& o) { o << trace_json(r).dump(2) << '\n'; });
  } else if (s.format == RunSpec::Format::json) {
    out << trace_json(r).dump(2) << '\n';
  }
  const Audit& a = r.audit;
  if (!(a.delivered_at_true_exit && a.speed_respected && a.continuity && a.knowledge_sound)) {
    err << "error: audit failed\n";
    status = 2;
  }
  return status;
}

inline int cmd_sweep(const RunSpec& s, std::ostream& out, std::ostream& err) {
  validate(s);
  bool all_ok = true;
  int status = 0;
  detail::emit(s, out, [&](std::ostream& o) {
    write_sweep_csv(o, {});
    for (double a : s.alphas) {
      SweepResult r;
      try {
        r = sweep(s.model, a, s.grid_n, s.refine_iters);
      } catch (const std::exception& e) {
        o.flush();
        err << "error: sweep at alpha=" << fmt12(a) << ": " << e.what() << '\n';
        status = 2;
        return;
      }
      std::ostringstream row;
      write_sweep_csv(row, {r});
      const std::string text = row.str();
      o << text.substr(text.find('\n') + 1);
      o.flush();
      all_ok = all_ok && r.ub_ok;
    }
  });
  if (status != 0) return status;
  if (!all_ok) {
    err << "error: bound exceeded for at least one alpha\n";
    return 1;
  }
  return 0;
}

inline int cmd_bounds(const RunSpec& s, std::ostream& out, std::ostream& /*err*/) {
  validate(s);
  detail::emit(s, out, [&](std::ostream& o) { write_bounds_csv(o, figure1_table(s.alphas), s.gap); });
  return 0;
}

inline int cmd_lemmas(const RunSpec& s, std::ostream& out, std::ostream& err) {
  validate(s);
  const auto reports = lemma_suite(s.grid_n);
  bool ok = true;
  detail::emit(s, out, [&](std::ostream& o) {
    for (const auto& r : reports) {
      o << '(' << r.item << ") " << (r.pass ? "pass" : "FAIL") << "  min_slack=" << std::setprecision(6)
        << std::scientific << r.min_slack << std::defaultfloat << "  grid=" << r.grid << "  " << r.statement << '\n';
      if (!r.note.empty()) o << "    " << r.note << '\n';
      ok = ok && r.pass;
    }
  });
  if (!ok) {
    err << "error: at least one inequality failed\n";
    return 1;
  }
  return 0;
}

inline int cmd_deploy(const RunSpec& s, std::ostream& out, std::ostream& /*err*/) {
  validate(s);
  const DeploymentPlan plan = n_robot_deployment(s.robots);
  detail::emit(s, out, [&](std::ostream& o) {
    o << "pair,start_angle,robots\n";
    for (std::size_t k = 0; k < plan.pair_starts.size(); ++k) {
      o << k << ',' << fmt12(plan.pair_starts[k].value()) << ',' << 2 * k << ' ' << 2 * k + 1 << '\n';
    }
  });
  return 0;
}

inline int run(const RunSpec& s, std::ostream& out, std::ostream& err) {
  try {
    switch (s.command) {
      case RunSpec::Command::simulate: return cmd_simulate(s, out, err);
      case RunSpec::Command::sweep: return cmd_sweep(s, out, err);
      case RunSpec::Command::bounds: return cmd_bounds(s, out, err);
      case RunSpec::Command::lemmas: return cmd_lemmas(s, out, err);
      case RunSpec::Command::deploy: return cmd_deploy(s, out, err);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace evac

#endif  // EVAC_CLI_HPP
