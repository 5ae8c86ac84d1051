#ifndef CK_QUADRATIC_HPP
#define CK_QUADRATIC_HPP

#include <vector>

#include "ck/exact.hpp"

namespace ck {

struct DegenerateInput : std::runtime_error {
  DegenerateInput() : std::runtime_error("zero polynomial has no defined roots") {}
};

// c2 t^2 + c1 t + c0 with rational coefficients.
struct QuadraticPoly {
  Rat c2, c1, c0;

  bool is_zero() const { return c2 == 0 && c1 == 0 && c0 == 0; }
  int degree() const { return c2 != 0 ? 2 : (c1 != 0 ? 1 : 0); }

  Rat eval(const Rat& t) const { return c2 * t * t + c1 * t + c0; }
  ExactScalar eval(const ExactScalar& t) const {
    return ExactScalar(c2) * t * t + ExactScalar(c1) * t + ExactScalar(c0);
  }

  Rat discriminant() const { return c1 * c1 - 4 * c2 * c0; }

  friend QuadraticPoly operator+(const QuadraticPoly& p, const QuadraticPoly& q) {
    return {p.c2 + q.c2, p.c1 + q.c1, p.c0 + q.c0};
  }
  friend QuadraticPoly operator-(const QuadraticPoly& p, const QuadraticPoly& q) {
    return {p.c2 - q.c2, p.c1 - q.c1, p.c0 - q.c0};
  }
  friend QuadraticPoly operator*(const Rat& a, const QuadraticPoly& p) {
    return {a * p.c2, a * p.c1, a * p.c0};
  }
};

// Real roots in increasing order, as exact surds. Negative discriminant
// yields the empty list.
inline std::vector<ExactScalar> quad_roots(const QuadraticPoly& p) {
  if (p.is_zero()) throw DegenerateInput();
  if (p.c2 == 0) {
    if (p.c1 == 0) return {};  // nonzero constant
    return {ExactScalar(Rat(-p.c0 / p.c1))};
  }
  Rat disc = p.discriminant();
  if (disc < 0) return {};
  if (disc == 0) return {ExactScalar(Rat(-p.c1 / (2 * p.c2)))};
  ExactScalar root = ExactScalar::sqrt_of(disc);
  ExactScalar half(Rat(1, 2));
  ExactScalar inv_a = ExactScalar(Rat(1)) / ExactScalar(p.c2);
  ExactScalar r1 = (ExactScalar(-p.c1) - root) * half * inv_a;
  ExactScalar r2 = (ExactScalar(-p.c1) + root) * half * inv_a;
  if (r2 < r1) std::swap(r1, r2);
  return {r1, r2};
}

// Degree-<=1 polynomial in the pencil parameter, over the rationals.
struct LinearPoly {
  Rat c1, c0;  // c1 t + c0

  ExactScalar eval(const ExactScalar& t) const {
    return ExactScalar(c1) * t + ExactScalar(c0);
  }
  Rat eval(const Rat& t) const { return c1 * t + c0; }

  friend LinearPoly operator+(const LinearPoly& p, const LinearPoly& q) {
    return {p.c1 + q.c1, p.c0 + q.c0};
  }
  friend LinearPoly operator-(const LinearPoly& p, const LinearPoly& q) {
    return {p.c1 - q.c1, p.c0 - q.c0};
  }
  friend QuadraticPoly operator*(const LinearPoly& p, const LinearPoly& q) {
    return {p.c1 * q.c1, p.c1 * q.c0 + p.c0 * q.c1, p.c0 * q.c0};
  }
  friend LinearPoly operator*(const Rat& a, const LinearPoly& p) {
    return {a * p.c1, a * p.c0};
  }
};

}  // namespace ck

#endif  // CK_QUADRATIC_HPP
