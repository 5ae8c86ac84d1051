#ifndef CK_CONES_HPP
#define CK_CONES_HPP

#include <optional>
#include <vector>

#include "ck/intervals.hpp"
#include "ck/lattice.hpp"

namespace ck {

struct UnsupportedK : std::runtime_error {
  explicit UnsupportedK(int k)
      : std::runtime_error("unsupported number of blown-up points: " + std::to_string(k)) {}
};

enum class CurveRole { MinusOne, Fiber, Line };

// Integer curve class with its role in the Mori cone. For blow-ups in general
// position the (-1)-curves generate; the line and fiber classes are adjoined
// for k <= 1, and -K is adjoined as a test class at k = 8.
struct CurveClass {
  DivisorClass cls;
  CurveRole role = CurveRole::MinusOne;

  std::string str() const {
    std::string s;
    for (Eigen::Index i = 0; i < cls.coeffs.size(); ++i) {
      if (i) s += ",";
      s += cls.coeffs[i].str();
    }
    return s;
  }
};

namespace detail {

// Recursively fills b_1 >= ... (lexicographic over the actual slots) with
// sum(b) = target_sum and sum(b^2) = target_sq, pruning by Cauchy-Schwarz.
inline void fill_curve_coeffs(int slots, long target_sum, long target_sq, int bmax,
                              std::vector<long>& acc, std::vector<std::vector<long>>& out) {
  if (slots == 0) {
    if (target_sum == 0 && target_sq == 0) out.push_back(acc);
    return;
  }
  if (target_sq < 0) return;
  // remaining values need target_sum^2 <= slots * target_sq
  if (target_sum * target_sum > static_cast<long>(slots) * target_sq) return;
  for (long b = -1; b <= bmax; ++b) {
    if (b * b > target_sq) {
      if (b >= 0) break;  // squares only grow from here
      continue;
    }
    acc.push_back(b);
    fill_curve_coeffs(slots - 1, target_sum - b, target_sq - b * b, bmax, acc, out);
    acc.pop_back();
  }
}

}  // namespace detail

// All integer classes C = a*l - sum b_i E_i with C^2 = -1 and -K.C = 1, in
// lexicographic order of (a, b_1, ..., b_k), followed by the line/fiber
// adjuncts for k <= 1. Counts of the minus-one entries for k = 1..8 are
// 1, 3, 6, 10, 16, 27, 56, 240.
inline std::vector<CurveClass> enumerate_curves(const SurfaceSpec& s) {
  if (s.kind == SurfaceSpec::Kind::ProductOfLines) {
    // The two rulings generate; both are fiber classes (C^2 = 0, -K.C = 2).
    ExactVec f1(2), f2(2);
    f1 << ExactScalar(1), ExactScalar(0);
    f2 << ExactScalar(0), ExactScalar(1);
    return {{DivisorClass{s, f1}, CurveRole::Fiber}, {DivisorClass{s, f2}, CurveRole::Fiber}};
  }
  int k = s.k;
  if (k < 0 || k > 8) throw UnsupportedK(k);

  std::vector<CurveClass> out;
  // C^2 = a^2 - sum b^2 = -1, -K.C = 3a - sum b = 1. Cauchy-Schwarz bounds
  // a: (3a-1)^2 <= k (a^2+1) forces a <= 7 for k <= 8.
  for (long a = 0; a <= 7; ++a) {
    long target_sum = 3 * a - 1;
    long target_sq = a * a + 1;
    if (k == 0) {
      if (target_sum == 0 && target_sq == 0) {
        ExactVec c(1);
        c[0] = ExactScalar(a);
        out.push_back({DivisorClass{s, c}, CurveRole::MinusOne});
      }
      continue;
    }
    std::vector<std::vector<long>> combos;
    std::vector<long> acc;
    detail::fill_curve_coeffs(k, target_sum, target_sq, static_cast<int>(a > 0 ? a : 1),
                              acc, combos);
    for (const auto& bs : combos) {
      ExactVec c(k + 1);
      c[0] = ExactScalar(a);
      for (int i = 0; i < k; ++i) c[i + 1] = ExactScalar(bs[i]);
      out.push_back({DivisorClass{s, c}, CurveRole::MinusOne});
    }
  }

  if (k == 0) {
    out.push_back({line_class(s), CurveRole::Line});
  } else if (k == 1) {
    out.push_back({line_class(s) - exceptional_class(s, 1), CurveRole::Fiber});
  }
  return out;
}

// Generators against which nefness is tested: the enumerated curves, plus -K
// as a test class on the degree one surface (its Mori cone has the extra
// K-negative extremal ray there).
inline std::vector<CurveClass> nef_test_classes(const SurfaceSpec& s) {
  std::vector<CurveClass> gens = enumerate_curves(s);
  if (s.kind == SurfaceSpec::Kind::BlowupPlane && s.k == 8)
    gens.push_back({anticanonical(s), CurveRole::Line});
  return gens;
}

enum class ConeVerdict { Ample, NefNotAmple, NotNef };

inline const char* to_string(ConeVerdict v) {
  switch (v) {
    case ConeVerdict::Ample: return "ample";
    case ConeVerdict::NefNotAmple: return "nef-not-ample";
    default: return "not-nef";
  }
}

struct ConeTestResult {
  ConeVerdict verdict = ConeVerdict::NotNef;
  std::optional<CurveClass> witness;  // violating or margin-attaining class
  ExactScalar margin;                 // min of D.C over the test classes
};

// Nef iff D.C >= 0 for every test class; ample iff all pairings are strict
// and D^2 > 0 (Nakai on a surface with the full dual cone at hand).
inline ConeTestResult test_cone(const DivisorClass& D) {
  std::vector<CurveClass> gens = nef_test_classes(D.surface);
  ConeTestResult res;
  bool first = true;
  for (auto& C : gens) {
    ExactScalar m = intersect(D, C.cls);
    if (first || m < res.margin) {
      res.margin = m;
      res.witness = C;
      first = false;
    }
  }
  if (first) {
    res.margin = ExactScalar(1);
    res.witness.reset();
  }
  if (res.margin.sign() < 0) {
    res.verdict = ConeVerdict::NotNef;
    return res;
  }
  if (res.margin.sign() > 0 && self_intersect(D).sign() > 0) {
    res.verdict = ConeVerdict::Ample;
    return res;
  }
  res.verdict = ConeVerdict::NefNotAmple;
  return res;
}

inline bool is_nef(const DivisorClass& D) { return test_cone(D).verdict != ConeVerdict::NotNef; }
inline bool is_ample(const DivisorClass& D) { return test_cone(D).verdict == ConeVerdict::Ample; }

enum class ThresholdMode { SupNef, InfAmple };

// sup / inf of a scalar threshold; NegInf / PosInf signal unbounded or
// infeasible problems.
using Threshold = Bound;

// SupNef: sup { t : A - t B nef }, from the per-generator linear conditions.
// InfAmple: inf { s : s A + B ample } for ample A, from the linear conditions
// plus the quadratic volume condition (s A + B)^2 > 0.
inline Threshold threshold(const DivisorClass& A, const DivisorClass& B, ThresholdMode mode) {
  if (A.surface != B.surface) throw SurfaceMismatch();
  std::vector<CurveClass> gens = nef_test_classes(A.surface);

  if (mode == ThresholdMode::SupNef) {
    // A.C - t B.C >= 0 for all C; feasible t is an interval [lo, hi].
    Bound hi = Bound::pos_inf();
    Bound lo = Bound::neg_inf();
    for (auto& C : gens) {
      ExactScalar ac = intersect(A, C.cls);
      ExactScalar bc = intersect(B, C.cls);
      int sb = bc.sign();
      if (sb > 0) {
        Bound cand = Bound::finite(ac / bc);
        if (cand < hi) hi = cand;
      } else if (sb < 0) {
        Bound cand = Bound::finite(ac / bc);
        if (lo < cand) lo = cand;
      } else if (ac.sign() < 0) {
        return Bound::neg_inf();  // infeasible for every t
      }
    }
    if (hi < lo) return Bound::neg_inf();
    return hi;
  }

  if (!is_ample(A)) throw std::domain_error("inf-ample threshold requires ample A");
  Bound lo = Bound::neg_inf();
  for (auto& C : gens) {
    ExactScalar ac = intersect(A, C.cls);  // > 0 since A ample
    ExactScalar bc = intersect(B, C.cls);
    Bound cand = Bound::finite(-bc / ac);
    if (lo < cand) lo = cand;
  }
  // (sA + B)^2 = A^2 s^2 + 2 (A.B) s + B^2 > 0; A^2 > 0, so s must clear the
  // larger real root when the discriminant is nonnegative.
  ExactScalar a2 = self_intersect(A);
  ExactScalar ab = intersect(A, B);
  ExactScalar b2 = self_intersect(B);
  ExactScalar disc = ab * ab - a2 * b2;
  if (disc.sign() >= 0) {
    if (!a2.is_rational() || !ab.is_rational() || !disc.is_rational())
      throw std::domain_error("surd-coefficient volume condition not supported");
    ExactScalar root = (-ab + ExactScalar::sqrt_of(disc.as_rational())) / a2;
    Bound cand = Bound::finite(root);
    if (lo < cand) lo = cand;
  }
  return lo;
}

struct EmptyRangeTag {};

// Exact set of t for which the pencil evaluates to an ample class:
// intersection of the per-generator linear conditions D(t).C > 0 with the
// quadratic volume condition D(t)^2 > 0.
inline IntervalSet ample_range(const Pencil& P) {
  std::vector<CurveClass> gens = nef_test_classes(P.surface);
  IntervalSet range = IntervalSet::whole();

  auto restrict_linear = [&range](const LinearPoly& p, bool strict) {
    if (p.c1 == 0) {
      bool ok = strict ? p.c0 > 0 : p.c0 >= 0;
      if (!ok) range = IntervalSet::empty();
      return;
    }
    ExactScalar root(Rat(-p.c0 / p.c1));
    Interval half;
    if (p.c1 > 0) {
      half.lo = Bound::finite(root);
      half.lo_closed = !strict;
    } else {
      half.hi = Bound::finite(root);
      half.hi_closed = !strict;
    }
    range = range.intersect_with(half);
  };

  for (auto& C : gens) restrict_linear(intersect(P, C.cls), true);

  QuadraticPoly vol = self_intersect(P);
  if (vol.degree() <= 1) {
    restrict_linear(LinearPoly{vol.c1, vol.c0}, true);
  } else {
    std::vector<ExactScalar> roots = quad_roots(vol);
    if (roots.size() < 2) {
      // no real roots (or a double root): sign is constant (or vanishes at
      // one point, which the strict condition excludes anyway)
      if (vol.c2 < 0) {
        range = IntervalSet::empty();
      } else if (roots.size() == 1) {
        IntervalSet split;
        split.unite_with(Interval{Bound::neg_inf(), Bound::finite(roots[0]), false, false});
        split.unite_with(Interval{Bound::finite(roots[0]), Bound::pos_inf(), false, false});
        range = range.intersect_with(split);
      }
    } else if (vol.c2 > 0) {
      IntervalSet outside;
      outside.unite_with(Interval{Bound::neg_inf(), Bound::finite(roots[0]), false, false});
      outside.unite_with(Interval{Bound::finite(roots[1]), Bound::pos_inf(), false, false});
      range = range.intersect_with(outside);
    } else {
      range = range.intersect_with(Interval::open(roots[0], roots[1]));
    }
  }
  return range;
}

}  // namespace ck

#endif  // CK_CONES_HPP
