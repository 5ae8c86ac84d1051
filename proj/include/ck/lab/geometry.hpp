#ifndef CK_LAB_GEOMETRY_HPP
#define CK_LAB_GEOMETRY_HPP

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

namespace ck::lab {

using Eigen::ArrayXd;
using Eigen::ArrayXXd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct PositivityViolation : std::runtime_error {
  explicit PositivityViolation(double min_density)
      : std::runtime_error("potential leaves the Kaehler cone (min density " +
                           std::to_string(min_density) + ")") {}
};

struct QuadratureDivergence : std::runtime_error {
  explicit QuadratureDivergence(double err)
      : std::runtime_error("quadrature error estimate " + std::to_string(err) +
                           " exceeds the budget") {}
};

// Uniform grid in the log coordinate s = log|z|^2, truncated where the
// Fubini-Study weight drops below 1e-14.
struct Axis {
  double half_width = 33.0;
  int n = 8193;  // 2^m + 1 so the grid coarsens by dropping odd nodes
  double h = 0.0;
  ArrayXd s;
  ArrayXd weight;  // e^s / (1+e^s)^2 = 1 / (4 cosh^2(s/2))

  explicit Axis(int n_points = 8193, double half = 33.0) : half_width(half), n(n_points) {
    if (n < 5) throw std::invalid_argument("grid too small");
    h = 2.0 * half_width / (n - 1);
    s = ArrayXd::LinSpaced(n, -half_width, half_width);
    weight = 0.25 / (0.5 * s).cosh().square();
  }

  Axis coarsened() const {
    if (n % 2 == 0) throw std::logic_error("coarsening needs an odd point count");
    return Axis((n + 1) / 2, half_width);
  }

  // Truncation tail of the base weight, added to quadrature error estimates.
  double tail_bound() const { return 2.0 * std::exp(-half_width); }
};

// Second difference with the telescoping stencil (D- D+); zero at the ends,
// where every admissible potential is flat.
inline ArrayXd second_diff(const ArrayXd& f, double h) {
  ArrayXd out = ArrayXd::Zero(f.size());
  const double inv = 1.0 / (h * h);
  out.segment(1, f.size() - 2) =
      (f.tail(f.size() - 2) - 2.0 * f.segment(1, f.size() - 2) + f.head(f.size() - 2)) * inv;
  return out;
}

// Row direction = first factor (s1), column direction = second factor (s2).
inline ArrayXXd second_diff_rows(const ArrayXXd& f, double h) {
  ArrayXXd out = ArrayXXd::Zero(f.rows(), f.cols());
  const double inv = 1.0 / (h * h);
  out.middleRows(1, f.rows() - 2) =
      (f.bottomRows(f.rows() - 2) - 2.0 * f.middleRows(1, f.rows() - 2) +
       f.topRows(f.rows() - 2)) *
      inv;
  return out;
}

inline ArrayXXd second_diff_cols(const ArrayXXd& f, double h) {
  ArrayXXd out = ArrayXXd::Zero(f.rows(), f.cols());
  const double inv = 1.0 / (h * h);
  out.middleCols(1, f.cols() - 2) =
      (f.rightCols(f.cols() - 2) - 2.0 * f.middleCols(1, f.cols() - 2) +
       f.leftCols(f.cols() - 2)) *
      inv;
  return out;
}

// Forward-forward mixed difference. Paired with the D- D+ diagonal stencils
// this makes the grid sum of det(Hess) telescope to zero, so all discrete
// volumes match their cohomological values.
inline ArrayXXd mixed_diff(const ArrayXXd& f, double h) {
  ArrayXXd out = ArrayXXd::Zero(f.rows(), f.cols());
  const double inv = 1.0 / (h * h);
  out.block(0, 0, f.rows() - 1, f.cols() - 1) =
      (f.block(1, 1, f.rows() - 1, f.cols() - 1) - f.block(1, 0, f.rows() - 1, f.cols() - 1) -
       f.block(0, 1, f.rows() - 1, f.cols() - 1) + f.block(0, 0, f.rows() - 1, f.cols() - 1)) *
      inv;
  return out;
}

enum class GeometryKind { Sphere, ProductSpheres };

inline GeometryKind geometry_from_name(const std::string& name) {
  if (name == "sphere") return GeometryKind::Sphere;
  if (name == "product" || name == "product-spheres") return GeometryKind::ProductSpheres;
  throw std::domain_error("unknown geometry \"" + name + "\" (sphere or product)");
}

// Torus-invariant model geometry: the sphere (n = 1) or the product of two
// spheres (n = 2), Fubini-Study base with unit volume per factor. The slope
// is 2 in both cases, matching the lattice value for (-K)/2-normalized data.
struct Geometry {
  GeometryKind kind = GeometryKind::Sphere;
  Axis axis;

  explicit Geometry(GeometryKind k, int n_points = 0)
      : kind(k), axis(n_points > 0 ? n_points : (k == GeometryKind::Sphere ? 8193 : 513)) {}

  int dimension() const { return kind == GeometryKind::Sphere ? 1 : 2; }
  double slope() const { return 2.0; }

  Geometry refined() const {
    Geometry g(kind, axis.n * 2 - 1);
    return g;
  }
  Geometry coarsened() const { return Geometry(kind, (axis.n + 1) / 2); }
};

}  // namespace ck::lab

#endif  // CK_LAB_GEOMETRY_HPP
