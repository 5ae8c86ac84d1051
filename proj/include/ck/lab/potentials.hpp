#ifndef CK_LAB_POTENTIALS_HPP
#define CK_LAB_POTENTIALS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "ck/lab/geometry.hpp"

namespace ck::lab {

// Deterministic uniforms from raw mt19937_64 output. The engine's stream is
// pinned down by the standard, so seeded runs reproduce bit-for-bit across
// platforms (std::uniform_real_distribution would not).
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double uniform() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double signed_uniform(double lo, double hi) {
    double v = uniform(lo, hi);
    return (engine() & 1u) ? v : -v;
  }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(engine() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

// Plateau bump: sigma(a(s-p)) - sigma(a(s-p-w)), values in (0,1), flat tails.
// The decay rate a stays above 1 so curvature tails die faster than the base
// weight and never dominate it.
struct Bump {
  double a = 1.2;   // edge steepness
  double p = 0.0;   // left edge
  double w = 2.0;   // plateau width

  static double sigma(double x) { return 1.0 / (1.0 + std::exp(-x)); }

  double eval(double s) const { return sigma(a * (s - p)) - sigma(a * (s - p - w)); }
  double d1(double s) const {
    double u = sigma(a * (s - p)), v = sigma(a * (s - p - w));
    return a * (u * (1.0 - u) - v * (1.0 - v));
  }
  double d2(double s) const {
    double u = sigma(a * (s - p)), v = sigma(a * (s - p - w));
    return a * a * (u * (1.0 - u) * (1.0 - 2.0 * u) - v * (1.0 - v) * (1.0 - 2.0 * v));
  }
};

// Torus-invariant potential on the sphere: a short sum of signed plateau
// bumps, sup-normalized on the grid by the sampler.
struct Potential1D {
  std::vector<double> coeff;
  std::vector<Bump> bumps;
  double offset = 0.0;  // subtracted so that max over the grid is 0

  double eval_raw(double s) const {
    double v = 0.0;
    for (std::size_t k = 0; k < bumps.size(); ++k) v += coeff[k] * bumps[k].eval(s);
    return v;
  }
  double d1(double s) const {
    double v = 0.0;
    for (std::size_t k = 0; k < bumps.size(); ++k) v += coeff[k] * bumps[k].d1(s);
    return v;
  }
  double d2(double s) const {
    double v = 0.0;
    for (std::size_t k = 0; k < bumps.size(); ++k) v += coeff[k] * bumps[k].d2(s);
    return v;
  }

  ArrayXd values(const Axis& ax) const {
    ArrayXd out(ax.n);
    for (int i = 0; i < ax.n; ++i) out[i] = eval_raw(ax.s[i]) - offset;
    return out;
  }
};

// Bi-invariant potential on the product: sum of separable bump products.
struct Potential2D {
  struct Term {
    double coeff = 0.0;
    Bump b1, b2;
  };
  std::vector<Term> terms;
  double offset = 0.0;

  double eval_raw(double s1, double s2) const {
    double v = 0.0;
    for (const auto& t : terms) v += t.coeff * t.b1.eval(s1) * t.b2.eval(s2);
    return v;
  }

  ArrayXXd values(const Axis& ax) const {
    ArrayXXd out(ax.n, ax.n);
    for (const auto& t : terms) {
      ArrayXd u(ax.n), v(ax.n);
      for (int i = 0; i < ax.n; ++i) {
        u[i] = t.b1.eval(ax.s[i]);
        v[i] = t.b2.eval(ax.s[i]);
      }
      if (&t == &terms.front())
        out = t.coeff * (u.matrix() * v.matrix().transpose()).array();
      else
        out += t.coeff * (u.matrix() * v.matrix().transpose()).array();
    }
    out -= offset;
    return out;
  }
};

inline Potential1D draw_raw_potential_1d(Rng& rng) {
  Potential1D phi;
  int k = rng.uniform_int(1, 3);
  for (int j = 0; j < k; ++j) {
    phi.coeff.push_back(rng.signed_uniform(0.05, 0.35));
    Bump b;
    b.a = rng.uniform(1.1, 1.6);
    b.p = rng.uniform(-4.0, 3.0);
    b.w = rng.uniform(1.0, 4.0);
    phi.bumps.push_back(b);
  }
  return phi;
}

inline Potential2D draw_raw_potential_2d(Rng& rng) {
  Potential2D phi;
  int k = rng.uniform_int(1, 3);
  for (int j = 0; j < k; ++j) {
    Potential2D::Term t;
    t.coeff = rng.signed_uniform(0.03, 0.12);
    auto bump = [&] {
      Bump b;
      b.a = rng.uniform(1.1, 1.4);
      b.p = rng.uniform(-4.0, 3.0);
      b.w = rng.uniform(1.0, 4.0);
      return b;
    };
    t.b1 = bump();
    t.b2 = bump();
    phi.terms.push_back(t);
  }
  return phi;
}

}  // namespace ck::lab

#endif  // CK_LAB_POTENTIALS_HPP
