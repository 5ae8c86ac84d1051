#ifndef CK_LAB_FUNCTIONALS_HPP
#define CK_LAB_FUNCTIONALS_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "ck/lab/geometry.hpp"
#include "ck/lab/potentials.hpp"

// Reduced calculus on the log coordinate s = log|z|^2 with the fiber circle
// integrated out. The base form has density F0(s) = e^s/(1+e^s)^2 (mass 1),
// a potential phi contributes its second derivative, and the Ricci density
// of the base is -(log F0)'' = 2 F0 exactly. All cohomological masses are
// preserved exactly on the grid: the diagonal stencil telescopes and the
// forward-forward mixed stencil makes det(Hess) a discrete null Lagrangian.

namespace ck::lab {

struct QuadValue {
  double value = 0.0;
  double err = 0.0;  // Richardson estimate from one coarsening + tail bound
};

// ---------------------------------------------------------------------------
// Sphere (n = 1)
// ---------------------------------------------------------------------------

struct SphereState {
  Axis axis;
  ArrayXd phi;
  ArrayXd curv;      // phi'' on the grid
  ArrayXd density;   // F0 + phi''
  double min_ratio;  // min density / F0, the positivity certificate

  // Constants do not change the form, so normalization and translation act
  // on phi alone and keep the curvature data bit-identical. (Recomputing the
  // finite difference after an offset would only add rounding noise of size
  // ulp(offset)/h^2, which dwarfs the base weight at the grid tails.)
  void sup_normalize() { phi -= phi.maxCoeff(); }
  SphereState translated(double c) const {
    SphereState st = *this;
    st.phi += c;
    return st;
  }
};

// Curvature supplied analytically (for potentials with a known twisted
// density, e.g. automorphism pullbacks).
inline SphereState make_sphere_state(const Axis& axis, ArrayXd phi, ArrayXd curv) {
  SphereState st{axis, std::move(phi), std::move(curv), {}, 0.0};
  st.density = axis.weight + st.curv;
  st.min_ratio = (st.density / axis.weight).minCoeff();
  if (st.min_ratio <= 0.0) throw PositivityViolation(st.min_ratio);
  return st;
}

// Curvature from the second difference of offset-free potential values.
inline SphereState make_sphere_state(const Axis& axis, ArrayXd phi) {
  ArrayXd curv = second_diff(phi, axis.h);
  return make_sphere_state(axis, std::move(phi), std::move(curv));
}

// I(phi) = integral of phi (omega - omega_phi); in factored form the exact
// grid identity sum (D+ phi)^2 h, manifestly nonnegative.
inline double aubin_i(const SphereState& st) {
  const auto d = st.phi.tail(st.phi.size() - 1) - st.phi.head(st.phi.size() - 1);
  return d.square().sum() / st.axis.h;
}

inline double entropy(const SphereState& st) {
  return ((st.density / st.axis.weight).log() * st.density).sum() * st.axis.h;
}

// Energy part of the Mabuchi functional; on the sphere it collapses to
// integral of phi (omega_phi - omega) = -I(phi).
inline double energy(const SphereState& st) { return (st.phi * st.curv).sum() * st.axis.h; }

inline double mabuchi(const SphereState& st) { return entropy(st) + energy(st); }

// Ricci density of omega_t = omega + t dd^c phi along the linear path.
inline ArrayXd ricci_density(const SphereState& st, double t) {
  ArrayXd ratio = (st.axis.weight + t * st.curv) / st.axis.weight;
  return 2.0 * st.axis.weight - second_diff(ratio.log(), st.axis.h);
}

// Path-integral Mabuchi energy: -int_0^1 int phi (S_t - 2) omega_t dt with
// composite Simpson in t. The second difference zeroes its end rows while the
// interior rows still read the end values, so the pairing <phi, D^2 q> picks
// up a two-node boundary flux relative to <D^2 phi, q>; subtracting that flux
// makes the discrete path integral reproduce the closed form up to
// time-quadrature error only.
inline double mabuchi_path(const SphereState& st, int time_steps = 16) {
  if (time_steps < 2 || time_steps % 2 != 0)
    throw std::invalid_argument("time_steps must be a positive even number");
  const Eigen::Index n = st.phi.size();
  auto integrand = [&](double t) {
    ArrayXd g = st.axis.weight + t * st.curv;
    ArrayXd q = (g / st.axis.weight).log();
    ArrayXd r = 2.0 * st.axis.weight - second_diff(q, st.axis.h);
    double v = -(st.phi * (r - 2.0 * g)).sum() * st.axis.h;
    v -= (st.phi[1] * q[0] - st.phi[0] * q[1] + st.phi[n - 2] * q[n - 1] -
          st.phi[n - 1] * q[n - 2]) /
         st.axis.h;
    return v;
  };
  const double dt = 1.0 / time_steps;
  double acc = integrand(0.0) + integrand(1.0);
  for (int j = 1; j < time_steps; ++j) acc += (j % 2 ? 4.0 : 2.0) * integrand(j * dt);
  return acc * dt / 3.0;
}

// Fubini-Study pullback under the scaling automorphism z -> e^{tau/2} z:
// phi = softplus(s + tau) - softplus(s), whose twisted density is the
// translated base weight. Its Mabuchi energy vanishes.
inline SphereState automorphism_pullback_state(const Axis& axis, double tau) {
  auto softplus = [](double x) { return std::log1p(std::exp(-std::abs(x))) + std::max(x, 0.0); };
  ArrayXd phi(axis.n);
  for (int i = 0; i < axis.n; ++i) phi[i] = softplus(axis.s[i] + tau) - softplus(axis.s[i]);
  ArrayXd curv = 0.25 / (0.5 * (axis.s + tau)).cosh().square() - axis.weight;
  return make_sphere_state(axis, std::move(phi), std::move(curv));
}

// ---------------------------------------------------------------------------
// Product of spheres (n = 2)
// ---------------------------------------------------------------------------

// Hermitian forms are 2x2 arrays over the grid; perm(A, B) is the density of
// the wedge product of the corresponding (1,1)-forms, so perm(A, A) = omega^2.
struct ProductState {
  Axis axis;
  ArrayXXd phi;
  ArrayXXd h11, h22, h12;  // Hessian of phi
  ArrayXXd f1, f2;         // base weights F0(s1), F0(s2)
  ArrayXXd a11, a22, a12;  // form of omega_phi
  ArrayXXd vol;            // omega_phi^2 density = 2 det A
  ArrayXXd vol0;           // omega^2 density = 2 F1 F2
  double min_ratio;

  void sup_normalize() { phi -= phi.maxCoeff(); }
  ProductState translated(double c) const {
    ProductState st = *this;
    st.phi += c;
    return st;
  }
};

inline ArrayXXd perm(const ArrayXXd& a11, const ArrayXXd& a22, const ArrayXXd& a12,
                     const ArrayXXd& b11, const ArrayXXd& b22, const ArrayXXd& b12) {
  return a11 * b22 + a22 * b11 - 2.0 * a12 * b12;
}

inline ProductState make_product_state(const Axis& axis, ArrayXXd phi) {
  ProductState st{axis, std::move(phi), {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  st.h11 = second_diff_rows(st.phi, axis.h);
  st.h22 = second_diff_cols(st.phi, axis.h);
  st.h12 = mixed_diff(st.phi, axis.h);
  st.f1 = axis.weight.replicate(1, axis.n);
  st.f2 = axis.weight.transpose().replicate(axis.n, 1);
  st.a11 = st.f1 + st.h11;
  st.a22 = st.f2 + st.h22;
  st.a12 = st.h12;
  st.vol = 2.0 * (st.a11 * st.a22 - st.a12.square());
  st.vol0 = 2.0 * st.f1 * st.f2;
  double r = std::min((st.a11 / st.f1).minCoeff(), (st.a22 / st.f2).minCoeff());
  r = std::min(r, (st.vol / st.vol0).minCoeff());
  st.min_ratio = r;
  if (r <= 0.0) throw PositivityViolation(r);
  return st;
}

inline double cell(const Axis& axis) { return axis.h * axis.h; }

inline double aubin_i(const ProductState& st) {
  return (st.phi * (st.vol0 - st.vol)).sum() * cell(st.axis);
}

inline double entropy(const ProductState& st) {
  return ((st.vol / st.vol0).log() * st.vol).sum() * cell(st.axis);
}

// E = (4/3) int phi (omega^2 + omega omega_phi + omega_phi^2)
//     - int phi Ric (omega + omega_phi), with Ric = diag(2 F1, 2 F2).
inline double energy(const ProductState& st) {
  ArrayXXd zero = ArrayXXd::Zero(st.axis.n, st.axis.n);
  ArrayXXd mixed = perm(st.f1, st.f2, zero, st.a11, st.a22, st.a12);
  ArrayXXd ric0 = perm(2.0 * st.f1, 2.0 * st.f2, zero, st.f1, st.f2, zero);
  ArrayXXd ricphi = perm(2.0 * st.f1, 2.0 * st.f2, zero, st.a11, st.a22, st.a12);
  double e = (st.phi * (st.vol0 + mixed + st.vol)).sum() * (4.0 / 3.0);
  e -= (st.phi * (ric0 + ricphi)).sum();
  return e * cell(st.axis);
}

inline double mabuchi(const ProductState& st) { return entropy(st) + energy(st); }

inline double mabuchi_path(const ProductState& st, int time_steps = 16) {
  if (time_steps < 2 || time_steps % 2 != 0)
    throw std::invalid_argument("time_steps must be a positive even number");
  ArrayXXd zero = ArrayXXd::Zero(st.axis.n, st.axis.n);
  auto integrand = [&](double t) {
    ArrayXXd a11 = st.f1 + t * st.h11;
    ArrayXXd a22 = st.f2 + t * st.h22;
    ArrayXXd a12 = t * st.h12;
    ArrayXXd vt = 2.0 * (a11 * a22 - a12.square());
    ArrayXXd q = (vt / st.vol0).log();
    ArrayXXd r11 = 2.0 * st.f1 - second_diff_rows(q, st.axis.h);
    ArrayXXd r22 = 2.0 * st.f2 - second_diff_cols(q, st.axis.h);
    ArrayXXd r12 = -mixed_diff(q, st.axis.h);
    ArrayXXd s_vol = 2.0 * perm(r11, r22, r12, a11, a22, a12);
    return -(st.phi * (s_vol - 4.0 * vt)).sum() * cell(st.axis);
  };
  const double dt = 1.0 / time_steps;
  double acc = integrand(0.0) + integrand(1.0);
  for (int j = 1; j < time_steps; ++j) acc += (j % 2 ? 4.0 : 2.0) * integrand(j * dt);
  return acc * dt / 3.0;
}

// ---------------------------------------------------------------------------
// Inequality residuals (all nonnegative in exact arithmetic)
// ---------------------------------------------------------------------------

// Relative-entropy form of the free-energy bound at inverse temperature beta:
// KL( omega_phi^n || e^{-beta phi} omega^n / Z ) >= 0. Masses are normalized
// on the grid, so nonnegativity is exact, not just up to discretization.
inline double gibbs_residual(const ArrayXd& phi, const ArrayXd& vol, const ArrayXd& vol0,
                             double beta) {
  const double mass = vol.sum();
  const double z = ((-beta * phi).exp() * vol0).sum();
  ArrayXd p = vol / mass;
  return (p * ((vol / vol0).log() + beta * phi)).sum() + std::log(z / mass);
}

inline double gibbs_residual(const ArrayXXd& phi, const ArrayXXd& vol, const ArrayXXd& vol0,
                             double beta) {
  const double mass = vol.sum();
  const double z = ((-beta * phi).exp() * vol0).sum();
  ArrayXXd p = vol / mass;
  return (p * ((vol / vol0).log() + beta * phi)).sum() + std::log(z / mass);
}

struct Residuals {
  double r_aubin = 0.0;        // I(phi) >= 0
  double r_gibbs = 0.0;        // entropy + beta int phi omega_phi^n + log Z >= 0
  double r_sup = 0.0;          // -int phi omega_phi^n - I >= 0 for sup-normalized phi
  double r_chain = 0.0;        // -n int phi omega_phi^n + sum_i int phi omega^i omega_phi^{n-i}
  std::vector<double> chain_terms;  // each >= 0 separately
};

inline Residuals residuals(const SphereState& st, double beta) {
  Residuals r;
  r.r_aubin = aubin_i(st);
  r.r_gibbs = gibbs_residual(st.phi, st.density, st.axis.weight, beta);
  r.r_sup = -(st.phi * st.density).sum() * st.axis.h - r.r_aubin;
  r.r_chain = r.r_aubin;
  r.chain_terms = {r.r_aubin};
  return r;
}

inline Residuals residuals(const ProductState& st, double beta) {
  Residuals r;
  r.r_aubin = aubin_i(st);
  r.r_gibbs = gibbs_residual(st.phi, st.vol, st.vol0, beta);
  r.r_sup = -(st.phi * st.vol).sum() * cell(st.axis) - r.r_aubin;
  // term i = int phi omega_phi^{2-i} (omega^i - omega_phi^i), i = 1, 2
  ArrayXXd t1 =
      -perm(st.a11, st.a22, st.a12, st.h11, st.h22, st.h12);  // omega_phi (omega - omega_phi)
  double s1 = (st.phi * t1).sum() * cell(st.axis);
  double s2 = r.r_aubin;  // omega^2 - omega_phi^2 paired with phi
  r.chain_terms = {s1, s2};
  r.r_chain = s1 + s2;
  return r;
}

// ---------------------------------------------------------------------------
// Error estimates
// ---------------------------------------------------------------------------

enum class Functional { AubinI, Entropy, Energy, Mabuchi, MabuchiPath };

inline Functional functional_from_name(const std::string& name) {
  if (name == "i" || name == "aubin-i") return Functional::AubinI;
  if (name == "entropy") return Functional::Entropy;
  if (name == "energy") return Functional::Energy;
  if (name == "mabuchi") return Functional::Mabuchi;
  if (name == "mabuchi-path") return Functional::MabuchiPath;
  throw std::domain_error("unknown functional \"" + name + "\"");
}

inline double evaluate(const SphereState& st, Functional f) {
  switch (f) {
    case Functional::AubinI: return aubin_i(st);
    case Functional::Entropy: return entropy(st);
    case Functional::Energy: return energy(st);
    case Functional::Mabuchi: return mabuchi(st);
    default: return mabuchi_path(st);
  }
}

inline double evaluate(const ProductState& st, Functional f) {
  switch (f) {
    case Functional::AubinI: return aubin_i(st);
    case Functional::Entropy: return entropy(st);
    case Functional::Energy: return energy(st);
    case Functional::Mabuchi: return mabuchi(st);
    default: return mabuchi_path(st);
  }
}

// Second-order scheme: one coarsening step gives |v_h - v_2h| / 3 as the
// Richardson error estimate, plus the truncation tail of the base weight.
inline QuadValue with_error(const Axis& axis, const Potential1D& pot, Functional f) {
  SphereState fine = make_sphere_state(axis, pot.values(axis));
  Axis coarse_axis = axis.coarsened();
  SphereState coarse = make_sphere_state(coarse_axis, pot.values(coarse_axis));
  QuadValue q;
  q.value = evaluate(fine, f);
  q.err = std::abs(q.value - evaluate(coarse, f)) / 3.0 + axis.tail_bound();
  return q;
}

inline QuadValue with_error(const Axis& axis, const Potential2D& pot, Functional f) {
  ProductState fine = make_product_state(axis, pot.values(axis));
  Axis coarse_axis = axis.coarsened();
  ProductState coarse = make_product_state(coarse_axis, pot.values(coarse_axis));
  QuadValue q;
  q.value = evaluate(fine, f);
  q.err = std::abs(q.value - evaluate(coarse, f)) / 3.0 + axis.tail_bound();
  return q;
}

}  // namespace ck::lab

#endif  // CK_LAB_FUNCTIONALS_HPP
