#ifndef CK_ALPHA_HPP
#define CK_ALPHA_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ck/cones.hpp"
#include "ck/criteria.hpp"

namespace ck {

struct OutOfDomain : std::runtime_error {
  OutOfDomain() : std::runtime_error("parameter outside the alpha model domain") {}
};

struct EpsilonTooLarge : std::runtime_error {
  EpsilonTooLarge() : std::runtime_error("epsilon too large: gamma >= 1") {}
};

struct NotApplicable : std::runtime_error {
  explicit NotApplicable(const std::string& what) : std::runtime_error(what) {}
};

struct PairOutsideCone : std::runtime_error {
  PairOutsideCone() : std::runtime_error("no admissible gamma < 1 for the pair") {}
};

// Quotient of degree-<=2 polynomials with ExactScalar coefficients.
struct RationalFunction {
  ExactScalar n2, n1, n0;  // numerator
  ExactScalar d2, d1, d0;  // denominator

  ExactScalar num(const ExactScalar& t) const { return (n2 * t + n1) * t + n0; }
  ExactScalar den(const ExactScalar& t) const { return (d2 * t + d1) * t + d0; }
  ExactScalar eval(const ExactScalar& t) const { return num(t) / den(t); }
};

// Piecewise-rational lower bound for the alpha invariant along a pencil.
// Values are data with provenance, never computed by the toolkit.
struct AlphaModel {
  struct Piece {
    Interval domain;
    RationalFunction value;
  };

  std::vector<Piece> pieces;
  std::optional<Pencil> family;
  bool group_invariant = false;
  std::string provenance;

  ExactScalar eval(const ExactScalar& t) const {
    for (const auto& p : pieces)
      if (p.domain.contains(t)) return p.value.eval(t);
    throw OutOfDomain();
  }

  AlphaValue value_at(const ExactScalar& t) const {
    return AlphaValue{eval(t), group_invariant, provenance};
  }

  bool in_domain(const ExactScalar& t) const {
    for (const auto& p : pieces)
      if (p.domain.contains(t)) return true;
    return false;
  }
};

struct ModelIssue {
  std::string what;
  std::string where;
};

// Structural validation: positive values on sampled points, knot continuity,
// matching finite adjacent endpoints. Returns the issue list (empty = valid).
inline std::vector<ModelIssue> validate_model(const AlphaModel& model) {
  std::vector<ModelIssue> issues;
  if (model.pieces.empty()) {
    issues.push_back({"model has no pieces", ""});
    return issues;
  }
  for (std::size_t i = 0; i < model.pieces.size(); ++i) {
    const auto& p = model.pieces[i];
    if (p.domain.empty()) issues.push_back({"empty piece domain", p.domain.str()});
    // sample midpoints / near-endpoint points for positivity and pole checks
    std::vector<ExactScalar> samples;
    if (p.domain.lo.is_finite() && p.domain.hi.is_finite()) {
      ExactScalar lo = p.domain.lo.value, hi = p.domain.hi.value;
      for (int j = 1; j <= 7; ++j)
        samples.push_back(lo + ExactScalar(Rat(j, 8)) * (hi - lo));
    } else if (p.domain.lo.is_finite()) {
      for (int j = 1; j <= 7; ++j) samples.push_back(p.domain.lo.value + ExactScalar(j));
    } else if (p.domain.hi.is_finite()) {
      for (int j = 1; j <= 7; ++j) samples.push_back(p.domain.hi.value - ExactScalar(j));
    } else {
      for (int j = -3; j <= 3; ++j) samples.push_back(ExactScalar(j));
    }
    for (const auto& t : samples) {
      if (p.value.den(t).is_zero()) {
        issues.push_back({"denominator vanishes at t = " + t.str(), p.domain.str()});
        continue;
      }
      if (p.value.eval(t).sign() <= 0)
        issues.push_back({"nonpositive value at t = " + t.str(), p.domain.str()});
    }
  }
  for (std::size_t i = 0; i + 1 < model.pieces.size(); ++i) {
    const auto& a = model.pieces[i];
    const auto& b = model.pieces[i + 1];
    if (!a.domain.hi.is_finite() || !b.domain.lo.is_finite()) {
      issues.push_back({"pieces not ordered along a bounded knot", ""});
      continue;
    }
    if (!(a.domain.hi == b.domain.lo)) {
      issues.push_back({"gap or overlap between pieces", a.domain.hi.str() + " vs " +
                                                             b.domain.lo.str()});
      continue;
    }
    ExactScalar knot = a.domain.hi.value;
    if (!(a.value.eval(knot) == b.value.eval(knot)))
      issues.push_back({"discontinuity at knot t = " + knot.str(),
                        a.value.eval(knot).str() + " vs " + b.value.eval(knot).str()});
  }
  return issues;
}

struct ScalingCheckEntry {
  ExactScalar t, s;
  ExactScalar expected;  // value(t) / s
  ExactScalar actual;    // value(s * t)
  bool ok = false;
};

// For a model declared on a ray t * L, alpha(s t) must equal alpha(t) / s.
inline std::vector<ScalingCheckEntry> check_scaling(
    const AlphaModel& model, const std::vector<std::pair<ExactScalar, ExactScalar>>& samples) {
  std::vector<ScalingCheckEntry> out;
  for (const auto& [t, s] : samples) {
    ScalingCheckEntry e;
    e.t = t;
    e.s = s;
    e.expected = model.eval(t) / s;
    e.actual = model.eval(s * t);
    e.ok = e.expected == e.actual;
    out.push_back(std::move(e));
  }
  return out;
}

struct MonotonicityCheckEntry {
  ExactScalar t;
  ExactScalar base_value, shifted_value;
  bool ok = false;
};

// Adding the Kaehler class xi lowers alpha: shifted <= base pointwise.
// Refuses to run when xi is not ample.
inline std::vector<MonotonicityCheckEntry> check_monotonicity(
    const AlphaModel& base, const AlphaModel& shifted, const DivisorClass& xi,
    const std::vector<ExactScalar>& samples) {
  if (!is_ample(xi))
    throw NotApplicable("shift class is not ample; the monotonicity hypothesis fails");
  std::vector<MonotonicityCheckEntry> out;
  for (const auto& t : samples) {
    MonotonicityCheckEntry e;
    e.t = t;
    e.base_value = base.eval(t);
    e.shifted_value = shifted.eval(t);
    e.ok = e.shifted_value <= e.base_value;
    out.push_back(std::move(e));
  }
  return out;
}

// delta = c eps / (2 alpha + eps), gamma = delta / c, and the modulus
// gamma/(1-gamma) * alpha, which collapses to eps / 2.
struct ContinuityBudget {
  ExactScalar gamma;
  ExactScalar c;
  ExactScalar delta;
  ExactScalar bound;
};

inline ContinuityBudget continuity_budget(const ExactScalar& alpha, const ExactScalar& c,
                                          const ExactScalar& epsilon) {
  if (alpha.sign() <= 0 || c.sign() <= 0 || epsilon.sign() <= 0)
    throw std::domain_error("continuity budget requires positive alpha, c, epsilon");
  ContinuityBudget b;
  b.c = c;
  b.delta = c * epsilon / (ExactScalar(2) * alpha + epsilon);
  b.gamma = b.delta / c;
  if (b.gamma >= ExactScalar(1)) throw EpsilonTooLarge();
  b.bound = b.gamma / (ExactScalar(1) - b.gamma) * alpha;
  return b;
}

struct ModulusCheckEntry {
  ExactScalar t, t_prime;
  ExactScalar gamma;       // smallest admissible gamma for eta = (t'-t) dir
  ExactScalar difference;  // |alpha(t) - alpha(t')|
  ExactScalar bound;       // gamma/(1-gamma) * alpha(t)
  bool ok = false;
};

// For each pair, computes the smallest gamma with gamma*L(t) +- eta ample via
// exact inf-ample thresholds, and checks the modulus inequality
// |alpha(t) - alpha(t')| <= gamma/(1-gamma) * alpha(t).
inline std::vector<ModulusCheckEntry> check_continuity_modulus(
    const AlphaModel& model, const std::vector<std::pair<ExactScalar, ExactScalar>>& pairs) {
  if (!model.family) throw std::domain_error("model carries no family; modulus check needs one");
  const Pencil& P = *model.family;
  std::vector<ModulusCheckEntry> out;
  for (const auto& [t, tp] : pairs) {
    if (!model.in_domain(t) || !model.in_domain(tp)) throw OutOfDomain();
    ModulusCheckEntry e;
    e.t = t;
    e.t_prime = tp;
    e.difference = abs(model.eval(t) - model.eval(tp));
    if (t == tp) {
      e.gamma = ExactScalar(0);
      e.bound = ExactScalar(0);
      e.ok = true;
      out.push_back(std::move(e));
      continue;
    }
    DivisorClass L = P.at(t);
    DivisorClass eta = (tp - t) * P.at(ExactScalar(1)) - (tp - t) * P.at(ExactScalar(0));
    Threshold plus = threshold(L, eta, ThresholdMode::InfAmple);
    Threshold minus = threshold(L, -eta, ThresholdMode::InfAmple);
    if (!plus.is_finite() || !minus.is_finite()) throw PairOutsideCone();
    ExactScalar gamma = plus.value;
    if (gamma < minus.value) gamma = minus.value;
    if (gamma.sign() < 0) gamma = ExactScalar(0);
    if (gamma >= ExactScalar(1)) throw PairOutsideCone();
    e.gamma = gamma;
    if (gamma.is_zero()) {
      e.bound = ExactScalar(0);
      e.ok = e.difference.is_zero();
    } else {
      e.bound = gamma / (ExactScalar(1) - gamma) * model.eval(t);
      e.ok = e.difference <= e.bound;
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace ck

#endif  // CK_ALPHA_HPP
