#ifndef CK_LAB_SUITE_HPP
#define CK_LAB_SUITE_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include "ck/lab/functionals.hpp"

namespace ck::lab {

// One randomly drawn potential with its functional values and inequality
// residuals. Residual checks use a relative tolerance against the largest
// functional magnitude in play.
struct SampleRecord {
  int index = 0;
  double min_ratio = 0.0;
  int halvings = 0;
  double i_value = 0.0;
  double entropy_value = 0.0;
  double energy_value = 0.0;
  double mabuchi_value = 0.0;
  Residuals res;
  double translation_dev = 0.0;  // |M(phi + c) - M(phi)| + |I(phi + c) - I(phi)|
  bool ok = false;
};

struct ScatterFit {
  double slope = 0.0;
  double intercept = 0.0;
};

struct SuiteSummary {
  GeometryKind kind = GeometryKind::Sphere;
  std::uint64_t seed = 0;
  int samples = 0;
  double beta = 0.9;
  double tolerance = 1e-6;
  std::vector<SampleRecord> records;
  double worst_residual = 0.0;  // most negative residual seen (0 if none)
  double worst_translation = 0.0;
  int failures = 0;
  ScatterFit fit;  // Mabuchi against Aubin I across the sample cloud
  bool passed = false;
};

inline double grid_min_ratio(const Axis& axis, const Potential1D& pot) {
  ArrayXd vals = pot.values(axis);
  ArrayXd g = axis.weight + second_diff(vals, axis.h);
  return (g / axis.weight).minCoeff();
}

inline double grid_min_ratio(const Axis& axis, const Potential2D& pot) {
  ArrayXXd vals = pot.values(axis);
  ArrayXXd h11 = second_diff_rows(vals, axis.h);
  ArrayXXd h22 = second_diff_cols(vals, axis.h);
  ArrayXXd h12 = mixed_diff(vals, axis.h);
  ArrayXXd f1 = axis.weight.replicate(1, axis.n);
  ArrayXXd f2 = axis.weight.transpose().replicate(axis.n, 1);
  ArrayXXd a11 = f1 + h11;
  ArrayXXd a22 = f2 + h22;
  ArrayXXd det = a11 * a22 - h12.square();
  double r = std::min((a11 / f1).minCoeff(), (a22 / f2).minCoeff());
  return std::min(r, (det / (f1 * f2)).minCoeff());
}

template <typename Potential>
inline int shrink_into_cone(const Axis& axis, Potential& pot) {
  for (int halvings = 0; halvings <= 60; ++halvings) {
    if (grid_min_ratio(axis, pot) > 0.05) return halvings;
    if constexpr (std::is_same_v<Potential, Potential1D>) {
      for (auto& c : pot.coeff) c *= 0.5;
    } else {
      for (auto& t : pot.terms) t.coeff *= 0.5;
    }
  }
  throw PositivityViolation(grid_min_ratio(axis, pot));
}

inline ScatterFit fit_scatter(const std::vector<SampleRecord>& records) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(records.size());
  for (const auto& r : records) {
    sx += r.i_value;
    sy += r.mabuchi_value;
    sxx += r.i_value * r.i_value;
    sxy += r.i_value * r.mabuchi_value;
  }
  ScatterFit fit;
  const double var = sxx - sx * sx / n;
  if (var > 0) {
    fit.slope = (sxy - sx * sy / n) / var;
    fit.intercept = (sy - fit.slope * sx) / n;
  }
  return fit;
}

inline SuiteSummary lemma_suite(GeometryKind kind, int samples, std::uint64_t seed,
                                double beta = 0.9, double tolerance = 1e-6, int grid_points = 0) {
  Geometry geom(kind, grid_points);
  const Axis& axis = geom.axis;
  SuiteSummary sum;
  sum.kind = kind;
  sum.seed = seed;
  sum.samples = samples;
  sum.beta = beta;
  sum.tolerance = tolerance;
  Rng rng(seed);
  const double shift = 0.37;

  for (int idx = 0; idx < samples; ++idx) {
    SampleRecord rec;
    rec.index = idx;
    if (kind == GeometryKind::Sphere) {
      Potential1D pot = draw_raw_potential_1d(rng);
      rec.halvings = shrink_into_cone(axis, pot);
      SphereState st = make_sphere_state(axis, pot.values(axis));
      st.sup_normalize();
      rec.min_ratio = st.min_ratio;
      rec.i_value = aubin_i(st);
      rec.entropy_value = entropy(st);
      rec.energy_value = energy(st);
      rec.mabuchi_value = mabuchi(st);
      rec.res = residuals(st, beta);
      SphereState shifted = st.translated(shift);
      rec.translation_dev = std::abs(mabuchi(shifted) - rec.mabuchi_value) +
                            std::abs(aubin_i(shifted) - rec.i_value);
    } else {
      Potential2D pot = draw_raw_potential_2d(rng);
      rec.halvings = shrink_into_cone(axis, pot);
      ProductState st = make_product_state(axis, pot.values(axis));
      st.sup_normalize();
      rec.min_ratio = st.min_ratio;
      rec.i_value = aubin_i(st);
      rec.entropy_value = entropy(st);
      rec.energy_value = energy(st);
      rec.mabuchi_value = mabuchi(st);
      rec.res = residuals(st, beta);
      ProductState shifted = st.translated(shift);
      rec.translation_dev = std::abs(mabuchi(shifted) - rec.mabuchi_value) +
                            std::abs(aubin_i(shifted) - rec.i_value);
    }

    const double scale = std::max({1.0, std::abs(rec.i_value), std::abs(rec.entropy_value),
                                   std::abs(rec.mabuchi_value)});
    const double floor = -tolerance * scale;
    bool ok = rec.res.r_aubin >= floor && rec.res.r_gibbs >= floor && rec.res.r_sup >= floor &&
              rec.res.r_chain >= floor;
    for (double term : rec.res.chain_terms) ok = ok && term >= floor;
    ok = ok && rec.translation_dev <= tolerance * scale;
    rec.ok = ok;

    double most_negative = std::min({rec.res.r_aubin, rec.res.r_gibbs, rec.res.r_sup,
                                     rec.res.r_chain});
    for (double term : rec.res.chain_terms) most_negative = std::min(most_negative, term);
    sum.worst_residual = std::min(sum.worst_residual, most_negative);
    sum.worst_translation = std::max(sum.worst_translation, rec.translation_dev);
    if (!ok) ++sum.failures;
    sum.records.push_back(std::move(rec));
  }

  sum.fit = fit_scatter(sum.records);
  sum.passed = sum.failures == 0;
  return sum;
}

// Path-integral cross-check on sphere samples: relative deviation between the
// closed form and the path integral, and the grid-refinement convergence
// ratio of the closed form (second-order scheme: ratio near 4).
struct PathCheck {
  int samples = 0;
  double worst_rel_dev = 0.0;
  double refine_ratio = 0.0;
  bool passed = false;
};

inline PathCheck path_check(int samples, std::uint64_t seed, double rel_tol = 1e-4,
                            int grid_points = 0) {
  Geometry geom(GeometryKind::Sphere, grid_points);
  const Axis& axis = geom.axis;
  Rng rng(seed);
  PathCheck pc;
  pc.samples = samples;

  Potential1D witness;  // first accepted sample doubles as the refinement probe
  for (int idx = 0; idx < samples; ++idx) {
    Potential1D pot = draw_raw_potential_1d(rng);
    shrink_into_cone(axis, pot);
    if (idx == 0) witness = pot;
    SphereState st = make_sphere_state(axis, pot.values(axis));
    st.sup_normalize();
    double h_part = entropy(st);
    double e_part = energy(st);
    double closed = h_part + e_part;
    double path = mabuchi_path(st, 32);
    // the two terms can cancel almost exactly, so deviations are measured
    // against their combined magnitude rather than the tiny difference
    double scale = std::max({1e-12, std::abs(closed), std::abs(h_part) + std::abs(e_part)});
    double rel = std::abs(path - closed) / scale;
    pc.worst_rel_dev = std::max(pc.worst_rel_dev, rel);
  }

  auto value_at = [&](const Axis& ax) {
    SphereState st = make_sphere_state(ax, witness.values(ax));
    st.sup_normalize();
    return mabuchi(st);
  };
  Axis coarse = axis.coarsened();
  Axis coarser = coarse.coarsened();
  double v_h = value_at(axis);
  double v_2h = value_at(coarse);
  double v_4h = value_at(coarser);
  pc.refine_ratio = (v_4h - v_2h) / (v_2h - v_h);
  pc.passed = pc.worst_rel_dev <= rel_tol && pc.refine_ratio >= 3.0 && pc.refine_ratio <= 5.0;
  return pc;
}

}  // namespace ck::lab

#endif  // CK_LAB_SUITE_HPP
