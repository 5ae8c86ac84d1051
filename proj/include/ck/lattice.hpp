#ifndef CK_LATTICE_HPP
#define CK_LATTICE_HPP

#include <Eigen/Core>

#include <string>
#include <utility>

#include "ck/exact.hpp"
#include "ck/quadratic.hpp"

namespace Eigen {

template <>
struct NumTraits<ck::ExactScalar> : GenericNumTraits<ck::ExactScalar> {
  typedef ck::ExactScalar Real;
  typedef ck::ExactScalar NonInteger;
  typedef ck::ExactScalar Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 40
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace ck {

struct SurfaceMismatch : std::runtime_error {
  SurfaceMismatch() : std::runtime_error("divisor classes live on different surfaces") {}
};

using ExactVec = Eigen::Matrix<ExactScalar, Eigen::Dynamic, 1>;
using LinearVec = Eigen::Matrix<LinearPoly, Eigen::Dynamic, 1>;

// Blow-up of the plane at k general points (basis l, E1, ..., Ek; form
// diag(+1, -1, ..., -1)) or the product of two lines (basis of the two
// rulings; form [[0,1],[1,0]]).
struct SurfaceSpec {
  enum class Kind { BlowupPlane, ProductOfLines };

  Kind kind = Kind::BlowupPlane;
  int k = 0;  // blown-up points, 0..8; unused for the product

  static SurfaceSpec blowup(int k) {
    if (k < 0 || k > 8) throw std::domain_error("blow-up of the plane supports 0 <= k <= 8");
    return {Kind::BlowupPlane, k};
  }
  static SurfaceSpec product_of_lines() { return {Kind::ProductOfLines, 0}; }

  int rank() const { return kind == Kind::BlowupPlane ? k + 1 : 2; }

  friend bool operator==(const SurfaceSpec& a, const SurfaceSpec& b) {
    return a.kind == b.kind && (a.kind != Kind::BlowupPlane || a.k == b.k);
  }
  friend bool operator!=(const SurfaceSpec& a, const SurfaceSpec& b) { return !(a == b); }

  std::string name() const {
    return kind == Kind::BlowupPlane ? "dp" + std::to_string(k) : "p1xp1";
  }

  static SurfaceSpec from_name(const std::string& name) {
    if (name == "p1xp1") return product_of_lines();
    if (name.size() == 3 && name.compare(0, 2, "dp") == 0 && std::isdigit(name[2]))
      return blowup(name[2] - '0');
    throw std::domain_error("unknown surface \"" + name + "\" (expected dp0..dp8 or p1xp1)");
  }
};

// Element of the Picard lattice with ExactScalar coefficients. On a blow-up,
// coeffs (h, e1, ..., ek) mean h*l - sum ei*Ei.
struct DivisorClass {
  SurfaceSpec surface;
  ExactVec coeffs;

  DivisorClass() = default;
  DivisorClass(SurfaceSpec s, ExactVec c) : surface(s), coeffs(std::move(c)) {
    if (coeffs.size() != surface.rank())
      throw std::domain_error("coefficient arity does not match the surface rank");
  }

  bool is_rational() const {
    for (Eigen::Index i = 0; i < coeffs.size(); ++i)
      if (!coeffs[i].is_rational()) return false;
    return true;
  }

  friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    if (a.surface != b.surface) throw SurfaceMismatch();
    return {a.surface, a.coeffs + b.coeffs};
  }
  friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
    if (a.surface != b.surface) throw SurfaceMismatch();
    return {a.surface, a.coeffs - b.coeffs};
  }
  friend DivisorClass operator*(const ExactScalar& t, const DivisorClass& a) {
    return {a.surface, (t * a.coeffs).eval()};
  }
  DivisorClass operator-() const { return {surface, (-coeffs).eval()}; }
};

// The anticanonical class: (3, 1, ..., 1) on a blow-up, (2, 2) on the product.
inline DivisorClass anticanonical(const SurfaceSpec& s) {
  ExactVec c(s.rank());
  if (s.kind == SurfaceSpec::Kind::BlowupPlane) {
    c[0] = ExactScalar(3);
    for (int i = 1; i <= s.k; ++i) c[i] = ExactScalar(1);
  } else {
    c[0] = ExactScalar(2);
    c[1] = ExactScalar(2);
  }
  return {s, c};
}

inline DivisorClass line_class(const SurfaceSpec& s) {
  if (s.kind != SurfaceSpec::Kind::BlowupPlane)
    throw std::domain_error("line class only defined on blow-ups of the plane");
  ExactVec c = ExactVec::Constant(s.rank(), ExactScalar(0));
  c[0] = ExactScalar(1);
  return {s, c};
}

// The i-th exceptional class E_i (coefficient vector e_i = -1).
inline DivisorClass exceptional_class(const SurfaceSpec& s, int i) {
  if (s.kind != SurfaceSpec::Kind::BlowupPlane || i < 1 || i > s.k)
    throw std::domain_error("exceptional index out of range");
  ExactVec c = ExactVec::Constant(s.rank(), ExactScalar(0));
  c[i] = ExactScalar(-1);
  return {s, c};
}

// Symmetric bilinear intersection pairing.
inline ExactScalar intersect(const DivisorClass& D, const DivisorClass& E) {
  if (D.surface != E.surface) throw SurfaceMismatch();
  if (D.surface.kind == SurfaceSpec::Kind::ProductOfLines)
    return D.coeffs[0] * E.coeffs[1] + D.coeffs[1] * E.coeffs[0];
  ExactScalar v = D.coeffs[0] * E.coeffs[0];
  for (Eigen::Index i = 1; i < D.coeffs.size(); ++i) v -= D.coeffs[i] * E.coeffs[i];
  return v;
}

inline ExactScalar self_intersect(const DivisorClass& D) { return intersect(D, D); }

// One-parameter family base + t * direction; coefficients are degree-<=1
// polynomials in t over the rationals.
struct Pencil {
  SurfaceSpec surface;
  LinearVec coeffs;

  DivisorClass at(const ExactScalar& t) const {
    ExactVec c(coeffs.size());
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i].eval(t);
    return {surface, c};
  }

  bool is_constant() const {
    for (Eigen::Index i = 0; i < coeffs.size(); ++i)
      if (coeffs[i].c1 != 0) return false;
    return true;
  }
};

inline Pencil make_pencil(const DivisorClass& base, const DivisorClass& direction) {
  if (base.surface != direction.surface) throw SurfaceMismatch();
  LinearVec c(base.coeffs.size());
  for (Eigen::Index i = 0; i < c.size(); ++i)
    c[i] = LinearPoly{direction.coeffs[i].as_rational(), base.coeffs[i].as_rational()};
  return {base.surface, c};
}

// Symbolic pairings against a pencil; require rational inputs so results stay
// in Q[t].
inline LinearPoly intersect(const Pencil& P, const DivisorClass& C) {
  if (P.surface != C.surface) throw SurfaceMismatch();
  if (P.surface.kind == SurfaceSpec::Kind::ProductOfLines)
    return C.coeffs[1].as_rational() * P.coeffs[0] + C.coeffs[0].as_rational() * P.coeffs[1];
  LinearPoly v = C.coeffs[0].as_rational() * P.coeffs[0];
  for (Eigen::Index i = 1; i < P.coeffs.size(); ++i)
    v = v - C.coeffs[i].as_rational() * P.coeffs[i];
  return v;
}

inline QuadraticPoly self_intersect(const Pencil& P) {
  if (P.surface.kind == SurfaceSpec::Kind::ProductOfLines)
    return Rat(2) * (P.coeffs[0] * P.coeffs[1]);
  QuadraticPoly v = P.coeffs[0] * P.coeffs[0];
  for (Eigen::Index i = 1; i < P.coeffs.size(); ++i)
    v = v - P.coeffs[i] * P.coeffs[i];
  return v;
}

// The dP8 family L_lambda = -K + (1 - lambda) E8 = 3l - E1 - ... - E7 - lambda E8.
inline Pencil dp8_polarization_pencil() {
  SurfaceSpec s = SurfaceSpec::blowup(8);
  DivisorClass base = anticanonical(s) + exceptional_class(s, 8);  // lambda = 0
  DivisorClass dir = -exceptional_class(s, 8);
  return make_pencil(base, dir);
}

}  // namespace ck

#endif  // CK_LATTICE_HPP
