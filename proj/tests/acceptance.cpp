// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
// Usage: acceptance <fixtures-dir>

#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ck/json_io.hpp"
#include "ck/lab/suite.hpp"
#include "ck/sweep.hpp"

using namespace ck;

namespace {

int g_failures = 0;

class Criterion_ {
 public:
  explicit Criterion_(std::string name) : name_(std::move(name)), start_(clock_::now()) {}
  void finish(bool ok, const std::string& detail) {
    using ms = std::chrono::duration<double, std::milli>;
    double elapsed = std::chrono::duration_cast<ms>(clock_::now() - start_).count();
    std::printf("%s %s: %s (%.0f ms)\n", ok ? "PASS" : "FAIL", name_.c_str(), detail.c_str(),
                elapsed);
    if (!ok) ++g_failures;
  }

 private:
  using clock_ = std::chrono::steady_clock;
  std::string name_;
  clock_::time_point start_;
};

ExactScalar q(std::int64_t n, std::int64_t d = 1) { return ExactScalar(Rat(n, d)); }

std::set<std::vector<long>> oracle_curves(int k) {
  std::set<std::vector<long>> out;
  for (long a = 0; a <= 7; ++a) {
    long bmax = std::max<long>(a, 1);
    std::vector<long> b(k, -1);
    while (true) {
      long sum = 0, sq = 0;
      for (long v : b) {
        sum += v;
        sq += v * v;
      }
      if (a * a - sq == -1 && 3 * a - sum == 1) {
        std::vector<long> row{a};
        row.insert(row.end(), b.begin(), b.end());
        out.insert(row);
      }
      int pos = k - 1;
      while (pos >= 0 && b[pos] == bmax) b[pos--] = -1;
      if (pos < 0) break;
      ++b[pos];
    }
  }
  return out;
}

std::set<std::vector<long>> minus_one_rows(const SurfaceSpec& s) {
  std::set<std::vector<long>> rows;
  for (const auto& C : enumerate_curves(s)) {
    if (C.role != CurveRole::MinusOne) continue;
    std::vector<long> row;
    for (Eigen::Index i = 0; i < C.cls.coeffs.size(); ++i)
      row.push_back(static_cast<long>(C.cls.coeffs[i].as_rational()));
    rows.insert(row);
  }
  return rows;
}

void check_window_reproduction(const AlphaModel& model) {
  Criterion_ c("window-reproduction");
  SweepReport rep =
      sweep(dp8_polarization_pencil(), ::ck::Criterion::Dervan, std::optional<AlphaModel>(model));
  ExactScalar r10 = ExactScalar::sqrt_of(std::int64_t{10});
  IntervalSet expected(Interval::open((q(10) - r10) / q(9), r10 - q(2)));
  bool ok = rep.satisfied == expected;
  bool low = false, high = false;
  for (const auto& cl : rep.binding) {
    if (!cl.witness) continue;
    if (cl.witness->str() == "6,2,2,2,2,2,2,2,3") low = true;
    if (cl.witness->str() == "0,0,0,0,0,0,0,0,-1") high = true;
  }
  ok = ok && low && high;
  c.finish(ok, "satisfied = " + rep.satisfied.str() + ", witnesses " +
                   (low && high ? "found" : "missing"));
}

void check_window_containment(const AlphaModel& model) {
  Criterion_ c("feasibility-window-containment");
  Pencil P = dp8_polarization_pencil();
  std::optional<AlphaModel> m(model);
  IntervalSet dervan = sweep(P, ::ck::Criterion::Dervan, m).satisfied;
  IntervalSet lsy = sweep(P, ::ck::Criterion::Lsy, m).satisfied;
  ExactScalar lo = (q(-5) + q(3) * ExactScalar::sqrt_of(std::int64_t{17})) / q(8);
  ExactScalar hi = (q(15) - ExactScalar::sqrt_of(std::int64_t{33})) / q(8);
  bool exact = lsy == IntervalSet(Interval::open(lo, hi));
  bool contained = compare_intervals(dervan, lsy) == IntervalRelation::AStrictlyContainsB;
  c.finish(exact && contained,
           "lsy = " + lsy.str() + ", relation = " + to_string(compare_intervals(dervan, lsy)));
}

void check_curve_counts() {
  Criterion_ c("curve-enumeration");
  const int expected[] = {0, 1, 3, 6, 10, 16, 27, 56, 240};
  bool ok = true;
  std::string counts;
  for (int k = 1; k <= 8; ++k) {
    auto rows = minus_one_rows(SurfaceSpec::blowup(k));
    ok = ok && static_cast<int>(rows.size()) == expected[k];
    ok = ok && rows == oracle_curves(k);
    counts += (k > 1 ? "," : "") + std::to_string(rows.size());
  }
  // symmetry closure on the largest set: slot permutations and the standard
  // quadratic reflection s_r(D) = D + (D.r) r, r = l - E1 - E2 - E3
  SurfaceSpec s8 = SurfaceSpec::blowup(8);
  auto rows8 = minus_one_rows(s8);
  for (int i = 1; i < 8 && ok; ++i)
    for (auto row : rows8) {
      std::swap(row[i], row[i + 1]);
      if (!rows8.count(row)) {
        ok = false;
        break;
      }
    }
  ExactVec rc = ExactVec::Constant(9, ExactScalar(0));
  rc[0] = rc[1] = rc[2] = rc[3] = ExactScalar(1);
  DivisorClass r{s8, rc};
  for (const auto& C : enumerate_curves(s8)) {
    if (!ok || C.role != CurveRole::MinusOne) continue;
    DivisorClass image = C.cls + intersect(C.cls, r) * r;
    std::vector<long> row;
    for (Eigen::Index i = 0; i < image.coeffs.size(); ++i)
      row.push_back(static_cast<long>(image.coeffs[i].as_rational()));
    if (!rows8.count(row)) ok = false;
  }
  c.finish(ok, "counts k=1..8: " + counts + ", oracle and symmetry closure checked");
}

void check_scaling_invariance() {
  Criterion_ c("scaling-invariance");
  std::mt19937_64 gen(20240825);
  const ExactScalar scales[] = {q(2), q(3), q(1, 5)};
  int tested = 0;
  bool ok = true;
  while (tested < 100 && ok) {
    int pick = static_cast<int>(gen() % 8);
    DivisorClass L;
    if (pick == 7) {
      SurfaceSpec p = SurfaceSpec::product_of_lines();
      ExactVec v(2);
      v[0] = q(static_cast<std::int64_t>(gen() % 5) + 1);
      v[1] = q(static_cast<std::int64_t>(gen() % 5) + 1);
      L = DivisorClass{p, v};
    } else {
      SurfaceSpec s = SurfaceSpec::blowup(pick + 2);
      ExactVec v(s.rank());
      v[0] = q(static_cast<std::int64_t>(gen() % 8) + 3);
      for (int i = 1; i < s.rank(); ++i) v[i] = q(static_cast<std::int64_t>(gen() % 3));
      L = DivisorClass{s, v};
      if (!is_ample(L)) continue;
    }
    ++tested;
    AlphaValue alpha{q(static_cast<std::int64_t>(gen() % 30) + 1,
                      static_cast<std::int64_t>(gen() % 10) + 10),
                     false, "acceptance"};
    for (const ExactScalar& t : scales) {
      DivisorClass Lt = t * L;
      AlphaValue at{alpha.value / t, false, "acceptance"};
      ok = ok && slope(Lt) == slope(L) / t;
      ok = ok && dervan_check(Lt, at).holds == dervan_check(L, alpha).holds;
      ok = ok && extension_check(Lt, at).holds == extension_check(L, alpha).holds;
      ok = ok && lsy_check(Lt, at).holds == lsy_check(L, alpha).holds;
    }
  }
  c.finish(ok && tested == 100, std::to_string(tested) + " ample classes x 3 scales");
}

void check_implication(const AlphaModel& model) {
  Criterion_ c("slope-criterion-implies-gap-criterion");
  Pencil P = dp8_polarization_pencil();
  bool ok = true;
  int held = 0;
  for (int j = 1; j <= 500; ++j) {
    ExactScalar t = q(j, 376);  // 500 grid points inside (0, 4/3)
    if (!(t < q(4, 3))) break;
    DivisorClass L = P.at(t);
    AlphaValue alpha = model.value_at(t);
    if (dervan_check(L, alpha).holds) {
      ++held;
      ok = ok && extension_check(L, alpha).holds;
    }
  }
  c.finish(ok && held > 0,
           "500-point grid, antecedent held at " + std::to_string(held) + " points");
}

void check_continuity(const AlphaModel& model, const AlphaModel& jump) {
  Criterion_ c("continuity-budget-and-modulus");
  bool ok = true;
  std::mt19937_64 gen(4242);
  for (int it = 0; it < 100; ++it) {
    ExactScalar alpha = q(static_cast<std::int64_t>(gen() % 60) + 1,
                          static_cast<std::int64_t>(gen() % 25) + 1);
    ExactScalar cc = q(static_cast<std::int64_t>(gen() % 60) + 1,
                       static_cast<std::int64_t>(gen() % 25) + 1);
    ExactScalar eps = q(static_cast<std::int64_t>(gen() % 60) + 1,
                        static_cast<std::int64_t>(gen() % 25) + 1);
    ContinuityBudget b = continuity_budget(alpha, cc, eps);
    ok = ok && b.bound == eps / q(2) && b.gamma < q(1);
  }
  std::vector<std::pair<ExactScalar, ExactScalar>> pairs = {
      {q(1), q(21, 20)}, {q(1), q(19, 20)}, {q(1, 2), q(11, 20)},
      {q(3, 4), q(4, 5)}, {q(11, 10), q(23, 20)}};
  for (const auto& e : check_continuity_modulus(model, pairs)) ok = ok && e.ok;
  auto bad = check_continuity_modulus(jump, {{q(1), q(21, 20)}});
  ok = ok && bad.size() == 1 && !bad[0].ok;
  c.finish(ok, "100 exact budgets, 5 smooth pairs, 1 jump pair rejected");
}

lab::SuiteSummary g_sphere_suite;
lab::SuiteSummary g_product_suite;

void check_lemma_suite() {
  Criterion_ c("inequality-suite");
  g_sphere_suite = lab::lemma_suite(lab::GeometryKind::Sphere, 1000, 20240801);
  g_product_suite = lab::lemma_suite(lab::GeometryKind::ProductSpheres, 1000, 20240802);
  bool ok = g_sphere_suite.passed && g_product_suite.passed;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "sphere failures %d (worst residual %.3g), product failures %d (worst %.3g)",
                g_sphere_suite.failures, g_sphere_suite.worst_residual,
                g_product_suite.failures, g_product_suite.worst_residual);
  c.finish(ok, detail);
}

void check_path_integral() {
  Criterion_ c("path-integral-consistency");
  lab::PathCheck pc = lab::path_check(50, 20240801, 1e-4);
  char detail[120];
  std::snprintf(detail, sizeof detail, "worst rel dev %.3g, refinement ratio %.3f",
                pc.worst_rel_dev, pc.refine_ratio);
  c.finish(pc.passed, detail);
}

void check_scatter_fit() {
  Criterion_ c("coercivity-scatter-fit");
  const lab::ScatterFit& s = g_sphere_suite.fit;
  const lab::ScatterFit& p = g_product_suite.fit;
  bool ok = !g_sphere_suite.records.empty() && !g_product_suite.records.empty() &&
            s.slope > 0.0 && p.slope > 0.0;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "sphere M ~ %.4f I + %.2g, product M ~ %.4f I + %.2g", s.slope, s.intercept,
                p.slope, p.intercept);
  c.finish(ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <fixtures-dir>\n");
    return 64;
  }
  const std::string fixtures = argv[1];
  try {
    AlphaModel model = load_alpha_model(fixtures + "/alpha_dp8_pencil.json");
    AlphaModel jump = load_alpha_model(fixtures + "/alpha_discontinuous.json");

    check_window_reproduction(model);
    check_window_containment(model);
    check_curve_counts();
    check_scaling_invariance();
    check_implication(model);
    check_continuity(model, jump);
    check_lemma_suite();
    check_path_integral();
    check_scatter_fit();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
    return 70;
  }
  std::printf("%s: %d criteria failed\n", g_failures ? "FAIL" : "PASS", g_failures);
  return g_failures ? 1 : 0;
}
