#ifndef CK_INTERVALS_HPP
#define CK_INTERVALS_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "ck/exact.hpp"

namespace ck {

// Endpoint of an interval: a finite ExactScalar or +-infinity.
struct Bound {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  ExactScalar value;

  static Bound neg_inf() { return {Kind::NegInf, ExactScalar(0)}; }
  static Bound pos_inf() { return {Kind::PosInf, ExactScalar(0)}; }
  static Bound finite(ExactScalar v) { return {Kind::Finite, std::move(v)}; }

  bool is_finite() const { return kind == Kind::Finite; }

  friend bool operator<(const Bound& a, const Bound& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    if (a.kind != Kind::Finite) return false;
    return a.value < b.value;
  }
  friend bool operator==(const Bound& a, const Bound& b) {
    if (a.kind != b.kind) return false;
    return a.kind != Kind::Finite || a.value == b.value;
  }
  friend bool operator<=(const Bound& a, const Bound& b) { return a < b || a == b; }

  std::string str() const {
    switch (kind) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "+inf";
      default: return value.str();
    }
  }
};

struct Interval {
  Bound lo = Bound::neg_inf();
  Bound hi = Bound::pos_inf();
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval open(ExactScalar a, ExactScalar b) {
    return {Bound::finite(std::move(a)), Bound::finite(std::move(b)), false, false};
  }
  static Interval closed(ExactScalar a, ExactScalar b) {
    return {Bound::finite(std::move(a)), Bound::finite(std::move(b)), true, true};
  }
  static Interval point(ExactScalar a) { return closed(a, a); }
  static Interval whole() { return {}; }

  bool empty() const {
    if (hi < lo) return true;
    if (lo == hi) return !(lo_closed && hi_closed && lo.is_finite());
    return false;
  }

  bool contains(const ExactScalar& x) const {
    Bound p = Bound::finite(x);
    if (p < lo || (p == lo && !lo_closed)) return false;
    if (hi < p || (p == hi && !hi_closed)) return false;
    return true;
  }

  std::string str() const {
    std::string s = lo_closed ? "[" : "(";
    s += lo.str() + ", " + hi.str();
    s += hi_closed ? "]" : ")";
    return s;
  }
};

inline Interval intersect(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo < b.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else if (b.lo < a.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r;
}

enum class IntervalRelation { Equal, AStrictlyContainsB, Overlaps, Disjoint };

inline const char* to_string(IntervalRelation r) {
  switch (r) {
    case IntervalRelation::Equal: return "equal";
    case IntervalRelation::AStrictlyContainsB: return "a-strictly-contains-b";
    case IntervalRelation::Overlaps: return "overlaps";
    default: return "disjoint";
  }
}

// Finite union of disjoint intervals, kept sorted and merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(Interval iv) {
    if (!iv.empty()) parts_.push_back(std::move(iv));
  }
  static IntervalSet empty() { return IntervalSet(); }
  static IntervalSet whole() { return IntervalSet(Interval::whole()); }

  const std::vector<Interval>& parts() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }

  bool contains(const ExactScalar& x) const {
    for (const auto& iv : parts_)
      if (iv.contains(x)) return true;
    return false;
  }

  IntervalSet intersect_with(const Interval& iv) const {
    IntervalSet out;
    for (const auto& p : parts_) {
      Interval q = intersect(p, iv);
      if (!q.empty()) out.parts_.push_back(q);
    }
    return out;
  }

  IntervalSet intersect_with(const IntervalSet& other) const {
    IntervalSet out;
    for (const auto& iv : other.parts_) {
      IntervalSet piece = intersect_with(iv);
      for (auto& p : piece.parts_) out.parts_.push_back(std::move(p));
    }
    out.normalize();
    return out;
  }

  void unite_with(Interval iv) {
    if (iv.empty()) return;
    parts_.push_back(std::move(iv));
    normalize();
  }

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
    if (a.parts_.size() != b.parts_.size()) return false;
    for (std::size_t i = 0; i < a.parts_.size(); ++i) {
      const Interval& x = a.parts_[i];
      const Interval& y = b.parts_[i];
      if (!(x.lo == y.lo && x.hi == y.hi && x.lo_closed == y.lo_closed &&
            x.hi_closed == y.hi_closed))
        return false;
    }
    return true;
  }

  // Subset test: every part of this is covered by a single part of other
  // (parts are maximal, so per-part cover suffices).
  bool subset_of(const IntervalSet& other) const {
    for (const auto& p : parts_) {
      bool covered = false;
      for (const auto& q : other.parts_) {
        bool lo_ok = q.lo < p.lo || (q.lo == p.lo && (q.lo_closed || !p.lo_closed));
        bool hi_ok = p.hi < q.hi || (p.hi == q.hi && (q.hi_closed || !p.hi_closed));
        if (lo_ok && hi_ok) {
          covered = true;
          break;
        }
      }
      if (!covered) return false;
    }
    return true;
  }

  std::string str() const {
    if (parts_.empty()) return "{}";
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += " u ";
      s += parts_[i].str();
    }
    return s;
  }

 private:
  void normalize() {
    std::sort(parts_.begin(), parts_.end(), [](const Interval& a, const Interval& b) {
      if (a.lo < b.lo) return true;
      if (b.lo < a.lo) return false;
      return a.lo_closed && !b.lo_closed;
    });
    std::vector<Interval> merged;
    for (auto& iv : parts_) {
      if (iv.empty()) continue;
      if (!merged.empty()) {
        Interval& last = merged.back();
        bool touches = iv.lo < last.hi ||
                       (iv.lo == last.hi && (iv.lo_closed || last.hi_closed));
        if (touches) {
          if (last.hi < iv.hi) {
            last.hi = iv.hi;
            last.hi_closed = iv.hi_closed;
          } else if (last.hi == iv.hi) {
            last.hi_closed = last.hi_closed || iv.hi_closed;
          }
          continue;
        }
      }
      merged.push_back(iv);
    }
    parts_ = std::move(merged);
  }

  std::vector<Interval> parts_;
};

inline IntervalRelation compare_intervals(const IntervalSet& a, const IntervalSet& b) {
  if (a == b) return IntervalRelation::Equal;
  bool b_in_a = b.subset_of(a);
  if (b_in_a) return IntervalRelation::AStrictlyContainsB;
  IntervalSet common = a.intersect_with(b);
  return common.is_empty() ? IntervalRelation::Disjoint : IntervalRelation::Overlaps;
}

}  // namespace ck

#endif  // CK_INTERVALS_HPP
