#ifndef EVAC_KNOWLEDGE_HPP
#define EVAC_KNOWLEDGE_HPP

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "evac/geometry.hpp"
#include "evac/model.hpp"

namespace evac {

inline bool same_angle(Angle a, Angle b, double tol = kEps) { return arc_dist(a, b) <= tol; }

/// What a robot believes about the location of one interesting point.
class Belief {
 public:
  enum class Status { unknown, candidates, known };

  Status status() const { return status_; }
  bool is_known() const { return status_ == Status::known; }
  Angle known() const { return known_; }
  const std::vector<Angle>& candidates() const { return cands_; }

  /// Intersect with a candidate set; the first restriction just sets it.
  void restrict_to(const std::vector<Angle>& cands) {
    if (status_ == Status::known) return;
    std::vector<Angle> unique;
    for (Angle c : cands) {
      if (std::none_of(unique.begin(), unique.end(), [&](Angle u) { return same_angle(u, c); })) {
        unique.push_back(c);
      }
    }
    if (status_ == Status::unknown) {
      cands_ = std::move(unique);
    } else {
      std::erase_if(cands_, [&](Angle c) {
        return std::none_of(unique.begin(), unique.end(), [&](Angle u) { return same_angle(u, c); });
      });
    }
    status_ = Status::candidates;
  }

  /// Returns true if this call promoted the belief.
  bool set_known(Angle a) {
    if (status_ == Status::known) return false;
    status_ = Status::known;
    known_ = a;
    cands_.clear();
    return true;
  }

  template <class Pred>
  void eliminate_if(Pred pred) {
    if (status_ == Status::candidates) std::erase_if(cands_, pred);
  }

  /// Promote a singleton candidate set. Returns true on promotion.
  bool promote_singleton() {
    if (status_ == Status::candidates && cands_.size() == 1) return set_known(cands_.front());
    return false;
  }

 private:
  Status status_ = Status::unknown;
  std::vector<Angle> cands_;
  Angle known_;
};

/// A robot's map of the perimeter: the arcs it has seen empty-or-visited and
/// what it believes about the exit and the treasure.
class KnowledgeState {
 public:
  enum class Item { exit, treasure };
  struct Promotion {
    Item item;
    Angle at;
  };

  explicit KnowledgeState(double alpha = 0.0) : alpha_(alpha) {}

  const ArcIntervalSet& explored() const { return explored_; }
  const Belief& exit() const { return exit_; }
  const Belief& treasure() const { return treasure_; }
  bool holds_treasure() const { return holds_; }
  /// Known to have been picked up (by this robot or, via communication, another).
  bool treasure_taken() const { return taken_; }

  void set_holds(bool h) {
    holds_ = h;
    if (h) taken_ = true;
  }
  void set_taken() { taken_ = true; }

  void add_explored_arc(Angle from, Dir d, double length) { explored_.insert_traversal(from, d, length); }

  /// Record what was found at perimeter point `p`.
  void observe(Angle p, Content c) {
    record(p, c);
    infer();
  }

  /// Like observe() but without inference; for batches of simultaneous
  /// discoveries, which must all be recorded before any elimination runs.
  void record(Angle p, Content c) {
    explored_.insert_point(p);
    if (c.exit) promote(Item::exit, p);
    if (c.treasure) promote(Item::treasure, p);
  }

  /// A protocol-level deduction about the exit (e.g. from a rendezvous outcome).
  void deduce_exit(Angle p) {
    promote(Item::exit, p);
    infer();
  }

  void merge(const KnowledgeState& other) {
    explored_.merge(other.explored_);
    merge_belief(Item::exit, exit_, other.exit_);
    merge_belief(Item::treasure, treasure_, other.treasure_);
    taken_ = taken_ || other.taken_;
    infer();
  }

  /// Candidate inference: each known point pins the other to {p ± α};
  /// explored candidates are eliminated; singletons are promoted.
  void infer() {
    for (int pass = 0; pass < 3; ++pass) {
      if (exit_.is_known()) treasure_.restrict_to(partners_of(exit_.known()));
      if (treasure_.is_known()) exit_.restrict_to(partners_of(treasure_.known()));
      // Exact: every candidate a robot reaches is recorded at its own angle.
      auto explored_here = [&](Angle c) { return explored_.covers(c, 0.0); };
      exit_.eliminate_if(explored_here);
      treasure_.eliminate_if(explored_here);
      bool changed = false;
      if (exit_.promote_singleton()) {
        log_.push_back({Item::exit, exit_.known()});
        changed = true;
      }
      if (treasure_.promote_singleton()) {
        log_.push_back({Item::treasure, treasure_.known()});
        changed = true;
      }
      if (!changed) break;
    }
  }

  /// Promotions since the last call; the engine audits them against the truth.
  std::vector<Promotion> drain_promotions() { return std::exchange(log_, {}); }

  /// Candidate angles still open for either item.
  std::vector<Angle> open_candidates() const {
    std::vector<Angle> out = exit_.candidates();
    out.insert(out.end(), treasure_.candidates().begin(), treasure_.candidates().end());
    return out;
  }

  double alpha() const { return alpha_; }

 private:
  std::vector<Angle> partners_of(Angle p) const { return {p + alpha_, p - alpha_}; }

  void promote(Item item, Angle p) {
    Belief& b = item == Item::exit ? exit_ : treasure_;
    if (b.set_known(p)) log_.push_back({item, p});
  }

  void merge_belief(Item item, Belief& mine, const Belief& theirs) {
    if (theirs.is_known()) {
      promote(item, theirs.known());
    } else if (theirs.status() == Belief::Status::candidates) {
      mine.restrict_to(theirs.candidates());
    }
  }

  double alpha_;
  ArcIntervalSet explored_;
  Belief exit_;
  Belief treasure_;
  bool holds_ = false;
  bool taken_ = false;
  std::vector<Promotion> log_;
};

}  // namespace evac

#endif  // EVAC_KNOWLEDGE_HPP
