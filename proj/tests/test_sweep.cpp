#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "ck/json_io.hpp"
#include "ck/sweep.hpp"

using namespace ck;

namespace {

const std::string kFixtures = CK_FIXTURES_DIR;

ExactScalar q(std::int64_t n, std::int64_t d = 1) { return ExactScalar(Rat(n, d)); }

AlphaModel pencil_model() { return load_alpha_model(kFixtures + "/alpha_dp8_pencil.json"); }

}  // namespace

TEST_CASE("quadratic inequality solver covers every sign pattern") {
  // upward parabola with two roots: complement of [1, 2]
  IntervalSet up = solve_poly_inequality({Rat(1), Rat(-3), Rat(2)}, true);
  REQUIRE(up.parts().size() == 2);
  CHECK(up.parts()[0].hi == Bound::finite(q(1)));
  CHECK(up.parts()[1].lo == Bound::finite(q(2)));
  CHECK(!up.contains(q(3, 2)));
  CHECK(!up.contains(q(1)));
  CHECK(solve_poly_inequality({Rat(1), Rat(-3), Rat(2)}, false).contains(q(1)));

  // downward parabola: the middle interval
  IntervalSet down = solve_poly_inequality({Rat(-1), Rat(3), Rat(-2)}, true);
  REQUIRE(down.parts().size() == 1);
  CHECK(down.parts()[0].lo == Bound::finite(q(1)));
  CHECK(down.parts()[0].hi == Bound::finite(q(2)));

  // no real roots
  CHECK(solve_poly_inequality({Rat(1), Rat(0), Rat(1)}, true) == IntervalSet::whole());
  CHECK(solve_poly_inequality({Rat(-1), Rat(0), Rat(-1)}, true).is_empty());

  // double root cases
  IntervalSet punctured = solve_poly_inequality({Rat(1), Rat(-2), Rat(1)}, true);
  CHECK(!punctured.contains(q(1)));
  CHECK(punctured.contains(q(0)));
  CHECK(solve_poly_inequality({Rat(1), Rat(-2), Rat(1)}, false) == IntervalSet::whole());
  IntervalSet pinch = solve_poly_inequality({Rat(-1), Rat(2), Rat(-1)}, false);
  REQUIRE(pinch.parts().size() == 1);
  CHECK(pinch.parts()[0].lo == Bound::finite(q(1)));
  CHECK(pinch.parts()[0].hi == Bound::finite(q(1)));
  CHECK(solve_poly_inequality({Rat(-1), Rat(2), Rat(-1)}, true).is_empty());

  // linear and constant degenerations
  CHECK(solve_poly_inequality({Rat(0), Rat(2), Rat(-4)}, true).contains(q(3)));
  CHECK(!solve_poly_inequality({Rat(0), Rat(2), Rat(-4)}, true).contains(q(2)));
  CHECK(solve_poly_inequality({Rat(0), Rat(-1), Rat(3)}, false).contains(q(3)));
  CHECK(solve_poly_inequality({Rat(0), Rat(0), Rat(5)}, true) == IntervalSet::whole());
  CHECK(solve_poly_inequality({Rat(0), Rat(0), Rat(-5)}, false).is_empty());
  CHECK(solve_poly_inequality({Rat(0), Rat(0), Rat(0)}, true).is_empty());
  CHECK(solve_poly_inequality({Rat(0), Rat(0), Rat(0)}, false) == IntervalSet::whole());

  // surd roots come out exact: t^2 - 10 > 0 outside [-sqrt(10), sqrt(10)]
  IntervalSet surd = solve_poly_inequality({Rat(1), Rat(0), Rat(-10)}, true);
  CHECK(surd.parts()[1].lo ==
        Bound::finite(ExactScalar::sqrt_of(std::int64_t{10})));
}

TEST_CASE("slope-plus-nef sweep reproduces the exact window with witnesses") {
  SweepReport rep = sweep(dp8_polarization_pencil(), Criterion::Dervan, pencil_model());

  ExactScalar r10 = ExactScalar::sqrt_of(std::int64_t{10});
  IntervalSet expected(Interval::open((q(10) - r10) / q(9), r10 - q(2)));
  CHECK(rep.satisfied == expected);
  REQUIRE(rep.ample.parts().size() == 1);
  CHECK(rep.ample.parts()[0].hi == Bound::finite(q(4, 3)));

  bool low_witness = false, high_witness = false;
  for (const auto& c : rep.binding) {
    if (!c.witness) continue;
    if (c.witness->str() == "6,2,2,2,2,2,2,2,3") low_witness = true;
    if (c.witness->str() == "0,0,0,0,0,0,0,0,-1") high_witness = true;
  }
  CHECK(low_witness);
  CHECK(high_witness);
}

TEST_CASE("sweeps agree with pointwise checks across the window") {
  Pencil P = dp8_polarization_pencil();
  AlphaModel model = pencil_model();
  std::optional<AlphaModel> opt(model);
  SweepReport dervan = sweep(P, Criterion::Dervan, opt);
  SweepReport extension = sweep(P, Criterion::Extension, opt);
  SweepReport lsy = sweep(P, Criterion::Lsy, opt);

  for (int j = 1; j < 200; ++j) {
    ExactScalar t = q(j, 150);  // grid over (0, 4/3)
    if (!(t < q(4, 3))) break;
    DivisorClass L = P.at(t);
    AlphaValue alpha = model.value_at(t);
    CHECK(dervan.satisfied.contains(t) == dervan_check(L, alpha).holds);
    CHECK(extension.satisfied.contains(t) == extension_check(L, alpha).holds);
    CHECK(lsy.satisfied.contains(t) == lsy_check(L, alpha).holds);
  }
}

TEST_CASE("feasibility sweep yields the exact surd window") {
  SweepReport rep = sweep(dp8_polarization_pencil(), Criterion::Lsy, pencil_model());
  // binding clause polynomials: t^2 + (5/4) t - 2 (exceptional curve, low end)
  // and t^2 - (15/4) t + 3 (degree-six curve, high end)
  ExactScalar lo = (q(-5) + q(3) * ExactScalar::sqrt_of(std::int64_t{17})) / q(8);
  ExactScalar hi = (q(15) - ExactScalar::sqrt_of(std::int64_t{33})) / q(8);
  QuadraticPoly low_clause{Rat(1), Rat(5, 4), Rat(-2)};
  QuadraticPoly high_clause{Rat(1), Rat(-15, 4), Rat(3)};
  CHECK(low_clause.eval(lo).is_zero());
  CHECK(high_clause.eval(hi).is_zero());
  CHECK(rep.satisfied == IntervalSet(Interval::open(lo, hi)));
}

TEST_CASE("feasibility window sits strictly inside the slope-plus-nef window") {
  Pencil P = dp8_polarization_pencil();
  std::optional<AlphaModel> model(pencil_model());
  IntervalSet dervan = sweep(P, Criterion::Dervan, model).satisfied;
  IntervalSet lsy = sweep(P, Criterion::Lsy, model).satisfied;
  CHECK(compare_intervals(dervan, lsy) == IntervalRelation::AStrictlyContainsB);
}

TEST_CASE("sweeps can be restricted to a subrange") {
  Pencil P = dp8_polarization_pencil();
  std::optional<AlphaModel> model(pencil_model());
  SweepReport rep = sweep(P, Criterion::Dervan, model, Interval::closed(q(1), q(9, 8)));
  REQUIRE(rep.satisfied.parts().size() == 1);
  CHECK(rep.satisfied.parts()[0].lo == Bound::finite(q(1)));
  CHECK(rep.satisfied.parts()[0].hi == Bound::finite(q(9, 8)));
}

TEST_CASE("degenerate inputs are rejected") {
  Pencil P = dp8_polarization_pencil();

  // cubic-degree model numerator cannot clear to a quadratic clause
  AlphaModel cubic = pencil_model();
  cubic.pieces[0].value.n2 = ExactScalar::sqrt_of(std::int64_t{2});
  std::optional<AlphaModel> cm(cubic);
  CHECK_THROWS_AS(sweep(P, Criterion::Dervan, cm), DegreeTooHigh);

  AlphaModel quartic = pencil_model();
  quartic.pieces[0].value.n2 = q(1);  // quadratic numerator times linear pairing
  std::optional<AlphaModel> qm(quartic);
  CHECK_THROWS_AS(sweep(P, Criterion::Lsy, qm), DegreeTooHigh);

  // a model denominator vanishing at t = 1, inside the ample window
  AlphaModel pole = pencil_model();
  pole.pieces[0].value.d2 = q(0);
  pole.pieces[0].value.d1 = q(1);
  pole.pieces[0].value.d0 = q(-1);
  std::optional<AlphaModel> wm(pole);
  CHECK_THROWS_AS(sweep(P, Criterion::Dervan, wm), DenominatorSignChange);

  // scalar criterion has no pencil clauses
  std::optional<AlphaModel> pm(pencil_model());
  CHECK_THROWS_AS(sweep(P, Criterion::Tian, pm), std::domain_error);
  CHECK_THROWS_AS(sweep(P, Criterion::Lsy, std::nullopt), std::domain_error);
}
