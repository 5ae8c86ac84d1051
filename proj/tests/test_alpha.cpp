#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "ck/alpha.hpp"
#include "ck/json_io.hpp"

using namespace ck;

namespace {

const std::string kFixtures = CK_FIXTURES_DIR;

AlphaModel pencil_model() { return load_alpha_model(kFixtures + "/alpha_dp8_pencil.json"); }
AlphaModel ray_model() { return load_alpha_model(kFixtures + "/alpha_ray_anticanonical.json"); }
AlphaModel jump_model() { return load_alpha_model(kFixtures + "/alpha_discontinuous.json"); }

ExactScalar q(std::int64_t n, std::int64_t d = 1) { return ExactScalar(Rat(n, d)); }

}  // namespace

TEST_CASE("fixture models validate cleanly") {
  CHECK(validate_model(pencil_model()).empty());
  CHECK(validate_model(ray_model()).empty());
}

TEST_CASE("validation flags a jump between pieces") {
  auto issues = validate_model(jump_model());
  REQUIRE(!issues.empty());
  bool found = false;
  for (const auto& issue : issues)
    if (issue.what.find("discontinuity") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("validation flags empty, nonpositive, and singular models") {
  AlphaModel empty;
  CHECK(!validate_model(empty).empty());

  AlphaModel negative;
  negative.pieces.push_back({Interval::open(q(0), q(1)),
                             RationalFunction{q(0), q(0), q(-1), q(0), q(0), q(1)}});
  bool nonpositive = false;
  for (const auto& issue : validate_model(negative))
    if (issue.what.find("nonpositive") != std::string::npos) nonpositive = true;
  CHECK(nonpositive);

  AlphaModel pole;  // denominator t - 1/2 vanishes inside (0, 1)
  pole.pieces.push_back({Interval::open(q(0), q(1)),
                         RationalFunction{q(0), q(0), q(1), q(0), q(1), q(-1, 2)}});
  bool vanishes = false;
  for (const auto& issue : validate_model(pole))
    if (issue.what.find("denominator") != std::string::npos) vanishes = true;
  CHECK(vanishes);
}

TEST_CASE("model evaluation and domain") {
  AlphaModel m = pencil_model();
  CHECK(m.eval(q(1)) == q(5, 6));
  CHECK(m.eval(q(1, 2)) == q(10, 21));  // (5/6)/(7/4)
  CHECK(m.in_domain(q(13, 10)));
  CHECK(!m.in_domain(q(4, 3)));  // open endpoint
  CHECK(!m.in_domain(q(0)));
  CHECK_THROWS_AS(m.eval(q(2)), OutOfDomain);
  AlphaValue v = m.value_at(q(1));
  CHECK(v.value == q(5, 6));
  CHECK(!v.group_invariant);
}

TEST_CASE("ray model obeys the exact scaling law") {
  AlphaModel m = ray_model();
  std::vector<std::pair<ExactScalar, ExactScalar>> samples = {
      {q(1), q(2)}, {q(1), q(50)}, {q(2), q(3)}, {q(1, 2), q(7)}, {q(5), q(1, 3)}};
  for (const auto& e : check_scaling(m, samples)) CHECK(e.ok);
}

TEST_CASE("the pencil model is not homogeneous along its parameter") {
  AlphaModel m = pencil_model();
  auto entries = check_scaling(m, {{q(1, 2), q(2)}});
  REQUIRE(entries.size() == 1);
  CHECK(!entries[0].ok);  // alpha(1) = 5/6 but alpha(1/2)/2 = 5/21
}

TEST_CASE("lowering the model preserves the pointwise ordering") {
  AlphaModel base = pencil_model();
  AlphaModel shifted = base;
  for (auto& piece : shifted.pieces)
    piece.value.n0 = piece.value.n0 * q(2, 3);  // constant numerator scaled down
  DivisorClass xi = anticanonical(SurfaceSpec::blowup(8));
  std::vector<ExactScalar> samples = {q(1, 4), q(1, 2), q(1), q(5, 4)};
  for (const auto& e : check_monotonicity(base, shifted, xi, samples)) CHECK(e.ok);
  // ordering the other way round must be reported as a failure
  auto reversed = check_monotonicity(shifted, base, xi, samples);
  for (const auto& e : reversed) CHECK(!e.ok);
}

TEST_CASE("monotonicity refuses a non-ample shift class") {
  AlphaModel base = pencil_model();
  DivisorClass xi = -exceptional_class(SurfaceSpec::blowup(8), 8);
  CHECK_THROWS_AS(check_monotonicity(base, base, xi, {q(1)}), NotApplicable);
}

TEST_CASE("continuity budget collapses to half the tolerance") {
  ContinuityBudget b = continuity_budget(q(1), q(1), q(1, 10));
  CHECK(b.delta == q(1, 21));
  CHECK(b.gamma == q(1, 21));
  CHECK(b.bound == q(1, 20));

  std::mt19937_64 gen(31);
  for (int it = 0; it < 100; ++it) {
    ExactScalar alpha = q(static_cast<std::int64_t>(gen() % 50) + 1,
                          static_cast<std::int64_t>(gen() % 20) + 1);
    ExactScalar c = q(static_cast<std::int64_t>(gen() % 50) + 1,
                      static_cast<std::int64_t>(gen() % 20) + 1);
    ExactScalar eps = q(static_cast<std::int64_t>(gen() % 50) + 1,
                        static_cast<std::int64_t>(gen() % 20) + 1);
    ContinuityBudget rb = continuity_budget(alpha, c, eps);
    CHECK(rb.bound == eps / q(2));
    CHECK(rb.gamma < q(1));
    CHECK(rb.delta == rb.gamma * c);
  }
  CHECK_THROWS_AS(continuity_budget(q(0), q(1), q(1)), std::domain_error);
  CHECK_THROWS_AS(continuity_budget(q(1), q(-1), q(1)), std::domain_error);
}

TEST_CASE("continuity modulus holds on the smooth fixture") {
  AlphaModel m = pencil_model();
  std::vector<std::pair<ExactScalar, ExactScalar>> pairs = {
      {q(1), q(21, 20)}, {q(1), q(19, 20)}, {q(1, 2), q(11, 20)}, {q(1), q(1)}};
  auto entries = check_continuity_modulus(m, pairs);
  REQUIRE(entries.size() == 4);
  for (const auto& e : entries) CHECK(e.ok);
  // the pair (1, 21/20) has gamma = 3/20 from the degree-six curve
  CHECK(entries[0].gamma == q(3, 20));
  CHECK(entries[3].gamma == q(0));
}

TEST_CASE("continuity modulus catches the jump fixture") {
  auto entries = check_continuity_modulus(jump_model(), {{q(1), q(21, 20)}});
  REQUIRE(entries.size() == 1);
  CHECK(!entries[0].ok);
  CHECK(entries[0].difference == q(1, 2));
}

TEST_CASE("continuity modulus error conditions") {
  AlphaModel m = pencil_model();
  CHECK_THROWS_AS(check_continuity_modulus(m, {{q(1), q(2)}}), OutOfDomain);
  CHECK_THROWS_AS(check_continuity_modulus(m, {{q(1, 10), q(5, 4)}}), PairOutsideCone);
  AlphaModel detached = m;
  detached.family.reset();
  CHECK_THROWS_AS(check_continuity_modulus(detached, {{q(1), q(1)}}), std::domain_error);
}
