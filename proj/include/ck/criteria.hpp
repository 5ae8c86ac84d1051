#ifndef CK_CRITERIA_HPP
#define CK_CRITERIA_HPP

#include <optional>
#include <string>
#include <vector>

#include "ck/cones.hpp"

namespace ck {

struct ZeroVolume : std::runtime_error {
  ZeroVolume() : std::runtime_error("slope undefined: L^2 = 0") {}
};

// User-supplied alpha invariant (lower bound); never computed here.
struct AlphaValue {
  ExactScalar value;
  bool group_invariant = false;
  std::string provenance;
};

enum class Criterion { Tian, Dervan, Extension, Lsy };

inline const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::Tian: return "tian";
    case Criterion::Dervan: return "dervan";
    case Criterion::Extension: return "extension";
    default: return "lsy";
  }
}

inline Criterion criterion_from_name(const std::string& name) {
  if (name == "tian") return Criterion::Tian;
  if (name == "dervan") return Criterion::Dervan;
  if (name == "extension") return Criterion::Extension;
  if (name == "lsy") return Criterion::Lsy;
  throw std::domain_error("unknown criterion \"" + name + "\"");
}

// One inequality of a criterion, with its exact margin (value - bound for
// lower bounds; the cone margin for positivity clauses).
struct ClauseRecord {
  std::string name;
  ExactScalar value;
  ExactScalar bound;
  bool strict = true;
  ExactScalar margin;
  bool holds = false;
};

struct CriterionVerdict {
  Criterion criterion;
  bool holds = false;
  std::vector<ClauseRecord> conditions;
  std::optional<CurveClass> witness;               // violating curve, if any
  std::optional<Interval> epsilon_witness;         // feasible epsilon range (lsy)

  void add_clause(std::string name, ExactScalar value, ExactScalar bound, bool strict) {
    ClauseRecord r;
    r.name = std::move(name);
    r.margin = value - bound;
    r.holds = strict ? r.margin.sign() > 0 : r.margin.sign() >= 0;
    r.value = std::move(value);
    r.bound = std::move(bound);
    r.strict = strict;
    conditions.push_back(std::move(r));
  }

  void finish() {
    holds = true;
    for (const auto& c : conditions) holds = holds && c.holds;
  }
};

// mu = (-K . L) / (L . L) on a surface (n = 2).
inline ExactScalar slope(const DivisorClass& L) {
  ExactScalar vol = self_intersect(L);
  if (vol.is_zero()) throw ZeroVolume();
  return intersect(anticanonical(L.surface), L) / vol;
}

// alpha > n/(n+1) on the anticanonical polarization.
inline CriterionVerdict tian_check(const AlphaValue& alpha, int n) {
  if (n < 1) throw std::domain_error("dimension must be positive");
  CriterionVerdict v;
  v.criterion = Criterion::Tian;
  v.add_clause("alpha > n/(n+1)", alpha.value, ExactScalar(Rat(n, n + 1)), true);
  v.finish();
  return v;
}

// (i) alpha > (2/3) mu, (ii) -K - (2/3) mu L nef.
inline CriterionVerdict dervan_check(const DivisorClass& L, const AlphaValue& alpha) {
  ExactScalar mu = slope(L);
  ExactScalar c = ExactScalar(Rat(2, 3)) * mu;
  CriterionVerdict v;
  v.criterion = Criterion::Dervan;
  v.add_clause("alpha > (2/3) mu", alpha.value, c, true);

  DivisorClass D = anticanonical(L.surface) - c * L;
  ConeTestResult cone = test_cone(D);
  ClauseRecord r;
  r.name = "-K - (2/3) mu L nef";
  r.value = cone.margin;
  r.bound = ExactScalar(0);
  r.strict = false;
  r.margin = cone.margin;
  r.holds = cone.verdict != ConeVerdict::NotNef;
  v.conditions.push_back(r);
  if (!r.holds) v.witness = cone.witness;
  v.finish();
  return v;
}

// epsilon = alpha - (2/3) mu; may be <= 0.
inline ExactScalar extension_gap(const DivisorClass& L, const AlphaValue& alpha) {
  return alpha.value - ExactScalar(Rat(2, 3)) * slope(L);
}

// epsilon > 0 and -K + (epsilon/2 - (2/3) mu) L ample.
inline CriterionVerdict extension_check(const DivisorClass& L, const AlphaValue& alpha) {
  ExactScalar mu = slope(L);
  ExactScalar eps = extension_gap(L, alpha);
  CriterionVerdict v;
  v.criterion = Criterion::Extension;
  v.add_clause("epsilon > 0", eps, ExactScalar(0), true);

  DivisorClass D = anticanonical(L.surface) +
                   (eps / ExactScalar(2) - ExactScalar(Rat(2, 3)) * mu) * L;
  ConeTestResult cone = test_cone(D);
  ClauseRecord r;
  r.name = "-K + (eps/2 - (2/3) mu) L ample";
  r.value = cone.margin;
  r.bound = ExactScalar(0);
  r.strict = true;
  r.margin = cone.margin;
  r.holds = cone.verdict == ConeVerdict::Ample;
  v.conditions.push_back(r);
  if (!r.holds) v.witness = cone.witness;
  v.finish();
  return v;
}

// Feasibility over epsilon >= 0 of (i) alpha > (2/3) epsilon,
// (ii) epsilon L - c1 ample, (iii) (epsilon - 2 mu) L + c1 ample.
// The two positivity clauses bound epsilon below by inf-ample thresholds;
// clause (i) bounds it above by (3/2) alpha.
inline CriterionVerdict lsy_check(const DivisorClass& L, const AlphaValue& alpha) {
  DivisorClass c1 = anticanonical(L.surface);
  ExactScalar mu = slope(L);

  Threshold t1 = threshold(L, -c1, ThresholdMode::InfAmple);
  Threshold t2 = threshold(L, c1 - (ExactScalar(2) * mu) * L, ThresholdMode::InfAmple);

  CriterionVerdict v;
  v.criterion = Criterion::Lsy;
  if (!t1.is_finite() || !t2.is_finite())
    throw std::domain_error("unbounded epsilon threshold in lsy feasibility");

  ExactScalar eps_min = t1.value;
  if (eps_min < t2.value) eps_min = t2.value;
  if (eps_min.sign() < 0) eps_min = ExactScalar(0);
  ExactScalar eps_max = ExactScalar(Rat(3, 2)) * alpha.value;

  v.add_clause("alpha > (2/3) eps_min", alpha.value, ExactScalar(Rat(2, 3)) * eps_min, true);
  v.finish();
  if (v.holds) v.epsilon_witness = Interval::open(eps_min, eps_max);
  return v;
}

}  // namespace ck

#endif  // CK_CRITERIA_HPP
