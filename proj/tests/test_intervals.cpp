#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ck/intervals.hpp"

using namespace ck;

namespace {
ExactScalar q(std::int64_t n, std::int64_t d = 1) { return ExactScalar(Rat(n, d)); }
}  // namespace

TEST_CASE("bound ordering puts -inf below finite below +inf") {
  CHECK(Bound::neg_inf() < Bound::finite(q(-1000)));
  CHECK(Bound::finite(q(1000)) < Bound::pos_inf());
  CHECK(!(Bound::neg_inf() < Bound::neg_inf()));
  CHECK(Bound::neg_inf() == Bound::neg_inf());
  CHECK(Bound::finite(q(1, 2)) < Bound::finite(q(2, 3)));
}

TEST_CASE("interval membership respects open and closed endpoints") {
  Interval open = Interval::open(q(0), q(1));
  CHECK(open.contains(q(1, 2)));
  CHECK(!open.contains(q(0)));
  CHECK(!open.contains(q(1)));
  Interval closed = Interval::closed(q(0), q(1));
  CHECK(closed.contains(q(0)));
  CHECK(closed.contains(q(1)));
  CHECK(Interval::point(q(3)).contains(q(3)));
  CHECK(Interval::whole().contains(q(-100000)));
}

TEST_CASE("emptiness") {
  CHECK(Interval::open(q(1), q(1)).empty());
  CHECK(Interval::open(q(2), q(1)).empty());
  CHECK(!Interval::point(q(1)).empty());
  CHECK(!Interval::open(q(0), q(1)).empty());
  Interval half_open{Bound::finite(q(1)), Bound::finite(q(1)), true, false};
  CHECK(half_open.empty());
}

TEST_CASE("interval intersection keeps the tighter endpoint rules") {
  Interval a = Interval::closed(q(0), q(2));
  Interval b = Interval::open(q(1), q(3));
  Interval c = intersect(a, b);
  CHECK(c.lo == Bound::finite(q(1)));
  CHECK(!c.lo_closed);
  CHECK(c.hi == Bound::finite(q(2)));
  CHECK(c.hi_closed);
  // coincident endpoints: closedness is the conjunction
  Interval d = intersect(Interval::closed(q(0), q(1)), Interval::open(q(0), q(1)));
  CHECK(!d.lo_closed);
  CHECK(!d.hi_closed);
}

TEST_CASE("interval set union merges touching parts") {
  IntervalSet s;
  s.unite_with(Interval::open(q(0), q(1)));
  s.unite_with(Interval::open(q(2), q(3)));
  CHECK(s.parts().size() == 2);
  // [1,2] plugs the gap at 1 and covers the shared endpoint 2
  s.unite_with(Interval::closed(q(1), q(2)));
  CHECK(s.parts().size() == 1);
  CHECK(s.parts()[0].lo == Bound::finite(q(0)));
  CHECK(s.parts()[0].hi == Bound::finite(q(3)));
  CHECK(s.contains(q(1)));
  CHECK(s.contains(q(2)));
  CHECK(!s.contains(q(0)));
  CHECK(!s.contains(q(3)));
}

TEST_CASE("open parts meeting at an excluded point stay separate") {
  IntervalSet s;
  s.unite_with(Interval::open(q(0), q(1)));
  s.unite_with(Interval::open(q(1), q(2)));
  CHECK(s.parts().size() == 2);
  CHECK(!s.contains(q(1)));
}

TEST_CASE("set intersection distributes over parts") {
  IntervalSet a;
  a.unite_with(Interval::open(q(0), q(2)));
  a.unite_with(Interval::open(q(3), q(5)));
  IntervalSet b(Interval::closed(q(1), q(4)));
  IntervalSet c = a.intersect_with(b);
  CHECK(c.parts().size() == 2);
  CHECK(c.parts()[0].lo == Bound::finite(q(1)));
  CHECK(c.parts()[0].lo_closed);
  CHECK(c.parts()[0].hi == Bound::finite(q(2)));
  CHECK(c.parts()[1].hi == Bound::finite(q(4)));
  CHECK(c.parts()[1].hi_closed);
  CHECK(a.intersect_with(IntervalSet(Interval::open(q(2), q(3)))).is_empty());
}

TEST_CASE("subset test handles endpoint closedness") {
  IntervalSet open01(Interval::open(q(0), q(1)));
  IntervalSet closed01(Interval::closed(q(0), q(1)));
  CHECK(open01.subset_of(closed01));
  CHECK(!closed01.subset_of(open01));
  CHECK(open01.subset_of(open01));
  IntervalSet split;
  split.unite_with(Interval::open(q(0), q(1, 2)));
  split.unite_with(Interval::open(q(1, 2), q(1)));
  CHECK(split.subset_of(open01));
  CHECK(!open01.subset_of(split));
}

TEST_CASE("compare_intervals reports all four relations") {
  IntervalSet open01(Interval::open(q(0), q(1)));
  IntervalSet inner(Interval::open(q(1, 4), q(3, 4)));
  IntervalSet shifted(Interval::open(q(1, 2), q(2)));
  IntervalSet apart(Interval::open(q(5), q(6)));
  CHECK(compare_intervals(open01, open01) == IntervalRelation::Equal);
  CHECK(compare_intervals(open01, inner) == IntervalRelation::AStrictlyContainsB);
  CHECK(compare_intervals(inner, open01) == IntervalRelation::Overlaps);
  CHECK(compare_intervals(open01, shifted) == IntervalRelation::Overlaps);
  CHECK(compare_intervals(open01, apart) == IntervalRelation::Disjoint);
  CHECK(std::string(to_string(IntervalRelation::AStrictlyContainsB)) ==
        "a-strictly-contains-b");
}

TEST_CASE("surd endpoints work across quadratic fields") {
  ExactScalar lo1 = (ExactScalar(10) - ExactScalar::sqrt_of(std::int64_t{10})) / ExactScalar(9);
  ExactScalar hi1 = ExactScalar::sqrt_of(std::int64_t{10}) - ExactScalar(2);
  ExactScalar lo2 = (ExactScalar(-5) + ExactScalar(3) * ExactScalar::sqrt_of(std::int64_t{17})) /
                    ExactScalar(8);
  ExactScalar hi2 = (ExactScalar(15) - ExactScalar::sqrt_of(std::int64_t{33})) / ExactScalar(8);
  IntervalSet a(Interval::open(lo1, hi1));
  IntervalSet b(Interval::open(lo2, hi2));
  CHECK(compare_intervals(a, b) == IntervalRelation::AStrictlyContainsB);
  CHECK(a.contains(ExactScalar(1)));
  CHECK(b.contains(ExactScalar(1)));
  CHECK(!b.contains(ExactScalar(Rat(9, 10))));
  CHECK(a.contains(ExactScalar(Rat(9, 10))));
}

TEST_CASE("printing") {
  CHECK(Interval::open(q(0), q(4, 3)).str() == "(0, 4/3)");
  CHECK(Interval::closed(q(1), q(2)).str() == "[1, 2]");
  CHECK(Interval::whole().str() == "(-inf, +inf)");
  CHECK(IntervalSet::empty().str() == "{}");
  IntervalSet s;
  s.unite_with(Interval::open(q(0), q(1)));
  s.unite_with(Interval::open(q(2), q(3)));
  CHECK(s.str() == "(0, 1) u (2, 3)");
}
