#ifndef CK_SWEEP_HPP
#define CK_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "ck/alpha.hpp"
#include "ck/cones.hpp"
#include "ck/criteria.hpp"
#include "ck/intervals.hpp"

namespace ck {

struct DenominatorSignChange : std::runtime_error {
  DenominatorSignChange()
      : std::runtime_error("volume or model denominator changes sign inside the range") {}
};

struct DegreeTooHigh : std::runtime_error {
  DegreeTooHigh()
      : std::runtime_error(
            "clause clears to degree > 2; only quadratic pencil conditions are supported") {}
};

// One cleared clause condition: poly(t) > 0 (strict) or >= 0.
struct ClausePoly {
  QuadraticPoly poly;
  bool strict = true;
  std::string name;
  std::optional<CurveClass> witness;
};

// { t : p(t) > 0 } (or >= 0), exactly.
inline IntervalSet solve_poly_inequality(const QuadraticPoly& p, bool strict) {
  if (p.is_zero()) return strict ? IntervalSet::empty() : IntervalSet::whole();
  if (p.degree() == 0)
    return (p.c0 > 0 || (!strict && p.c0 == 0)) ? IntervalSet::whole() : IntervalSet::empty();
  if (p.degree() == 1) {
    ExactScalar root(Rat(-p.c0 / p.c1));
    Interval half;
    if (p.c1 > 0) {
      half.lo = Bound::finite(root);
      half.lo_closed = !strict;
    } else {
      half.hi = Bound::finite(root);
      half.hi_closed = !strict;
    }
    return IntervalSet(half);
  }
  std::vector<ExactScalar> roots = quad_roots(p);
  bool up = p.c2 > 0;
  if (roots.size() < 2) {
    if (up) {
      if (roots.empty() || !strict) return IntervalSet::whole();
      IntervalSet out;
      out.unite_with(Interval{Bound::neg_inf(), Bound::finite(roots[0]), false, false});
      out.unite_with(Interval{Bound::finite(roots[0]), Bound::pos_inf(), false, false});
      return out;
    }
    if (roots.size() == 1 && !strict) return IntervalSet(Interval::point(roots[0]));
    return IntervalSet::empty();
  }
  if (up) {
    IntervalSet out;
    out.unite_with(Interval{Bound::neg_inf(), Bound::finite(roots[0]), false, !strict});
    out.unite_with(Interval{Bound::finite(roots[1]), Bound::pos_inf(), !strict, false});
    return out;
  }
  Interval mid = strict ? Interval::open(roots[0], roots[1]) : Interval::closed(roots[0], roots[1]);
  return IntervalSet(mid);
}

namespace detail {

// Polynomial with rational coefficients, lowest degree first; only used to
// form clause products before the degree check.
struct Poly {
  std::vector<Rat> c;

  int degree() const {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
      if (c[i] != 0) return i;
    return 0;
  }
  Rat coeff(std::size_t i) const { return i < c.size() ? c[i] : Rat(0); }

  static Poly from(const LinearPoly& p) { return {{p.c0, p.c1}}; }
  static Poly from(const QuadraticPoly& p) { return {{p.c0, p.c1, p.c2}}; }
  static Poly constant(const Rat& a) { return {{a}}; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), Rat(0));
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(i) + b.coeff(i);
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), Rat(0));
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(i) - b.coeff(i);
    return r;
  }

  QuadraticPoly quadratic() const {
    if (degree() > 2) throw DegreeTooHigh();
    return {coeff(2), coeff(1), coeff(0)};
  }
};

// Rational alpha model piece in lowest terms over Q[t]; requires rational
// coefficients (sweeps stay in one quadratic field).
struct RationalPiece {
  Poly num, den;
  // den == vol_factor * L^2 exactly, when set (lets every criterion clause
  // cancel the volume and stay quadratic)
  std::optional<Rat> vol_factor;
};

inline Rat rat_of(const ExactScalar& x) {
  if (!x.is_rational()) throw DegreeTooHigh();
  return x.as_rational();
}

inline RationalPiece rational_piece(const RationalFunction& f, const QuadraticPoly& vol) {
  RationalPiece p;
  p.num = {{detail::rat_of(f.n0), detail::rat_of(f.n1), detail::rat_of(f.n2)}};
  p.den = {{detail::rat_of(f.d0), detail::rat_of(f.d1), detail::rat_of(f.d2)}};
  // detect den = c * L^2
  Poly v = Poly::from(vol);
  int dv = v.degree();
  Rat lead_v = v.coeff(dv);
  Rat lead_d = p.den.coeff(dv);
  if (lead_v != 0 && lead_d != 0 && p.den.degree() == dv) {
    Rat c = lead_d / lead_v;
    bool match = true;
    for (int i = 0; i <= dv; ++i)
      if (p.den.coeff(i) != c * v.coeff(i)) match = false;
    if (match && c > 0) p.vol_factor = c;
  }
  return p;
}

}  // namespace detail

// Emits the cleared per-generator (and alpha) polynomial conditions for one
// criterion along the pencil. Positive denominators (L^2 and the model
// denominator) are verified on the requested range before clearing.
inline std::vector<ClausePoly> clause_to_polys(const Pencil& P, Criterion criterion,
                                               const std::optional<AlphaModel>& model,
                                               const Interval& range) {
  using detail::Poly;
  QuadraticPoly vol = self_intersect(P);
  LinearPoly ks;  // s(t) = -K . L_t
  {
    DivisorClass K = anticanonical(P.surface);
    ks = intersect(P, K);
  }

  // L^2 must be positive throughout the range: a root strictly inside means
  // the caller has to split.
  for (const ExactScalar& r : (vol.degree() > 0 ? quad_roots(vol) : std::vector<ExactScalar>{})) {
    if (range.contains(r) &&
        !(range.lo.is_finite() && r == range.lo.value) &&
        !(range.hi.is_finite() && r == range.hi.value))
      throw DenominatorSignChange();
  }

  std::optional<detail::RationalPiece> alpha;
  if (model) {
    if (model->pieces.size() != 1) throw DegreeTooHigh();  // sweep one piece at a time
    const auto& piece = model->pieces[0];
    alpha = detail::rational_piece(piece.value, vol);
    // model denominator must keep one sign on the range as well
    QuadraticPoly den = alpha->den.quadratic();
    if (den.degree() == 2) {
      for (const ExactScalar& r : quad_roots(den))
        if (range.contains(r)) throw DenominatorSignChange();
    } else if (den.degree() == 1) {
      ExactScalar r(Rat(-den.c0 / den.c1));
      if (range.contains(r)) throw DenominatorSignChange();
    }
  }

  std::vector<CurveClass> gens = nef_test_classes(P.surface);
  std::vector<ClausePoly> out;
  Poly V = Poly::from(vol);
  Poly S = Poly::from(ks);

  auto alpha_minus_slope = [&]() -> Poly {
    // alpha - (2/3) mu > 0, cleared of its positive denominator
    if (alpha->vol_factor)
      return Poly::constant(3) * alpha->num - Poly::constant(2 * *alpha->vol_factor) * S;
    return Poly::constant(3) * (alpha->num * V) - Poly::constant(2) * (alpha->den * S);
  };

  switch (criterion) {
    case Criterion::Dervan: {
      if (alpha) {
        ClausePoly c;
        c.poly = alpha_minus_slope().quadratic();
        c.strict = true;
        c.name = "alpha > (2/3) mu";
        out.push_back(std::move(c));
      }
      for (auto& C : gens) {
        Rat kc = detail::rat_of(intersect(anticanonical(P.surface), C.cls));
        Poly lc = Poly::from(intersect(P, C.cls));
        // (-K - (2/3) mu L).C >= 0, times 3 L^2
        Poly p = Poly::constant(3 * kc) * V - Poly::constant(2) * (S * lc);
        ClausePoly c;
        c.poly = p.quadratic();
        c.strict = false;
        c.name = "(-K - (2/3) mu L).C >= 0";
        c.witness = C;
        out.push_back(std::move(c));
      }
      break;
    }
    case Criterion::Extension: {
      if (!alpha) throw std::domain_error("extension sweep needs an alpha model");
      {
        ClausePoly c;
        c.poly = alpha_minus_slope().quadratic();
        c.strict = true;
        c.name = "epsilon > 0";
        out.push_back(std::move(c));
      }
      for (auto& C : gens) {
        Rat kc = detail::rat_of(intersect(anticanonical(P.surface), C.cls));
        Poly lc = Poly::from(intersect(P, C.cls));
        // (-K + (alpha/2 - mu) L).C > 0, times 2 den L^2 (resp. 2 c L^2)
        Poly p;
        if (alpha->vol_factor) {
          Rat cf = *alpha->vol_factor;
          p = Poly::constant(2 * cf * kc) * V +
              (alpha->num - Poly::constant(2 * cf) * S) * lc;
        } else {
          p = Poly::constant(2 * kc) * (alpha->den * V) +
              (alpha->num * V - Poly::constant(2) * (alpha->den * S)) * lc;
        }
        ClausePoly c;
        c.poly = p.quadratic();
        c.strict = true;
        c.name = "(-K + (eps/2 - mu) L).C > 0";
        c.witness = C;
        out.push_back(std::move(c));
      }
      break;
    }
    case Criterion::Lsy: {
      if (!alpha) throw std::domain_error("lsy sweep needs an alpha model");
      for (auto& C : gens) {
        Rat kc = detail::rat_of(intersect(anticanonical(P.surface), C.cls));
        Poly lc = Poly::from(intersect(P, C.cls));
        // feasibility over eps: (3/2) alpha must exceed every per-generator
        // lower bound from the two ample families; cleared by c L^2 in the
        // volume-normalized case and by den L^2 otherwise
        Poly a, b;
        if (alpha->vol_factor) {
          Rat cf = *alpha->vol_factor;
          a = Poly::constant(Rat(3, 2)) * (alpha->num * lc) - Poly::constant(cf * kc) * V;
          b = Poly::constant(Rat(3, 2)) * (alpha->num * lc) -
              Poly::constant(2 * cf) * (S * lc) + Poly::constant(cf * kc) * V;
        } else {
          a = Poly::constant(Rat(3, 2)) * (alpha->num * lc) - Poly::constant(kc) * alpha->den;
          b = Poly::constant(Rat(3, 2)) * (alpha->num * (lc * V)) -
              Poly::constant(2) * (alpha->den * (S * lc)) +
              Poly::constant(kc) * (alpha->den * V);
        }
        ClausePoly ca;
        ca.poly = a.quadratic();
        ca.strict = true;
        ca.name = "(3/2) alpha (L.C) > c1.C";
        ca.witness = C;
        out.push_back(std::move(ca));
        ClausePoly cb;
        cb.poly = b.quadratic();
        cb.strict = true;
        cb.name = "((3/2) alpha - 2 mu)(L.C) + c1.C > 0";
        cb.witness = C;
        out.push_back(std::move(cb));
      }
      break;
    }
    case Criterion::Tian:
      throw std::domain_error("tian is a scalar criterion; sweep the dervan clauses instead");
  }
  return out;
}

struct SweepReport {
  Criterion criterion;
  IntervalSet satisfied;
  IntervalSet ample;
  std::vector<ClausePoly> clauses;
  // clauses whose polynomial vanishes at an endpoint of the result
  std::vector<ClausePoly> binding;
};

// Intersects all cleared clause regions with the pencil's ample range
// (restricted to `range` if given). All criterion inequalities are strict,
// so the result is emitted with open endpoints.
inline SweepReport sweep(const Pencil& P, Criterion criterion,
                         const std::optional<AlphaModel>& model,
                         std::optional<Interval> range = std::nullopt) {
  SweepReport rep;
  rep.criterion = criterion;
  rep.ample = ample_range(P);
  IntervalSet region = rep.ample;
  if (range) region = region.intersect_with(*range);

  Interval working = Interval::whole();
  if (!region.is_empty()) {
    working = region.parts().front();
    working.hi = region.parts().back().hi;
    working.hi_closed = region.parts().back().hi_closed;
  }

  rep.clauses = clause_to_polys(P, criterion, model, working);
  for (const auto& c : rep.clauses)
    region = region.intersect_with(solve_poly_inequality(c.poly, c.strict));

  // open endpoints: coercivity claims are strict
  IntervalSet open_region;
  for (Interval iv : region.parts()) {
    iv.lo_closed = false;
    iv.hi_closed = false;
    open_region.unite_with(iv);
  }
  rep.satisfied = open_region;

  for (const auto& iv : rep.satisfied.parts()) {
    for (const auto& c : rep.clauses) {
      bool binds = false;
      if (iv.lo.is_finite() && c.poly.eval(iv.lo.value).is_zero()) binds = true;
      if (iv.hi.is_finite() && c.poly.eval(iv.hi.value).is_zero()) binds = true;
      if (binds) rep.binding.push_back(c);
    }
  }
  return rep;
}

}  // namespace ck

#endif  // CK_SWEEP_HPP
