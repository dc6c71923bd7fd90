#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "intstab/parser.hpp"
#include "intstab/scenarios.hpp"
#include "intstab/stability.hpp"
#include "oracles.hpp"

using namespace intstab;

namespace {

Box logistic_centre() { return Box{parse_constant("7/12")}; }
Box logistic_box() { return Box{Interval(0.577, 0.585)}; }

Box random_subbox(std::mt19937_64& rng, const Box& outer) {
  Box b(outer.size());
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const double lo = static_cast<double>(oracle::uniform(rng, outer[i].lo(), 0));
    const double hi = static_cast<double>(oracle::uniform(rng, 0, outer[i].hi()));
    b[i] = Interval(lo, hi);
  }
  return b;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void check_identical(const StabilityReport& a, const StabilityReport& b) {
  CHECK(a.verdict == b.verdict);
  CHECK(a.mode == b.mode);
  CHECK(a.q == b.q);
  CHECK(same_bits(a.alpha, b.alpha));
  CHECK(same_bits(a.beta, b.beta));
  CHECK(a.initial_box == b.initial_box);
  CHECK(a.delta_box == b.delta_box);
  CHECK(a.residual == b.residual);
  CHECK(a.cause == b.cause);
  CHECK(a.detail == b.detail);
  CHECK(a.stage_images == b.stage_images);
  REQUIRE(a.trace.steps.size() == b.trace.steps.size());
  for (std::size_t k = 0; k < a.trace.steps.size(); ++k) {
    CHECK(a.trace.steps[k].z == b.trace.steps[k].z);
    CHECK(a.trace.steps[k].A == b.trace.steps[k].A);
    CHECK(a.trace.steps[k].fc == b.trace.steps[k].fc);
  }
}

}  // namespace

TEST_CASE("equilibrium examples") {
  const StabilityReport l = check_stability(scenarios::logistic(), logistic_centre(), logistic_box());
  CHECK(l.proven());
  CHECK(l.mode == Mode::equilibrium);
  CHECK(l.q == 2);
  CHECK(l.alpha < 1);
  CHECK(l.beta > 0);
  CHECK(l.cause == Cause::none);
  CHECK(interior_subset(l.trace.steps[l.q].fc, l.delta_box));

  const StabilityReport r = check_stability(scenarios::rot3d(), Box(3), Box::cube(3, 0.004));
  CHECK(r.proven());
  CHECK(r.q == 3);
  CHECK(r.alpha < 1);
  CHECK(interior_subset(r.trace.steps[r.q].fc, r.delta_box));

  const StabilityReport e = check_stability(parse("2*x1"), Box(1), Box{Interval(-1, 1)});
  CHECK_FALSE(e.proven());
  CHECK(e.cause == Cause::iteration_limit);
  CHECK(e.trace.steps.size() == 11);
  CHECK(std::isnan(e.alpha));

  StabilityOptions three;
  three.max_iterations = 2;
  CHECK_FALSE(check_stability(scenarios::rot3d(), Box(3), Box::cube(3, 0.004), three).proven());
}

TEST_CASE("stability input errors") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::invalid_argument;
  };
  CHECK(code_of([] { check_stability(scenarios::logistic(), Box{Interval(0.5)}, Box{Interval(0.4, 0.6)}); }) ==
        ErrorCode::centre_residual_too_large);
  CHECK(code_of([] { check_stability(scenarios::logistic(), logistic_centre(), Box{Interval(0.6, 0.7)}); }) ==
        ErrorCode::centre_outside_box);
  StabilityOptions zero;
  zero.max_iterations = 0;
  CHECK_THROWS_AS(check_stability(scenarios::logistic(), logistic_centre(), logistic_box(), zero), Error);
  // a looser tolerance accepts an inexact centre
  StabilityOptions loose;
  loose.residual_tolerance = 1;
  CHECK_NOTHROW(check_stability(scenarios::logistic(), Box{Interval(0.58)}, logistic_box(), loose));
}

TEST_CASE("evaluation failures become undetermined reports") {
  const StabilityReport r = check_stability(parse("x1 / (x1 + 0.5)"), Box(1), Box{Interval(-1, 1)});
  CHECK_FALSE(r.proven());
  CHECK(r.cause == Cause::singular_jacobian);
  CHECK_FALSE(r.detail.empty());
  const StabilityReport d = check_stability(parse("sqrt(x1 + 1) - 1"), Box(1), Box{Interval(-2, 1)});
  CHECK(d.cause == Cause::domain_error);
}

TEST_CASE("extract_rate") {
  CHECK(extract_rate(Box{Interval(-0.5, 0.25)}, Box{Interval(-1, 1)}) == 0.5);
  const Box x{Interval(-1, 2), Interval(-3, 0.5)};
  CHECK(extract_rate(x, x) == 1.0);
  CHECK(extract_rate(Box{Interval(0)}, Box{Interval(-1, 1)}) == 0.0);
  CHECK(extract_rate(Box{Interval(0), Interval(-0.1, 0.2)}, Box{Interval(0), Interval(-1, 1)}) == doctest::Approx(0.2));
  CHECK_THROWS_AS(extract_rate(Box{Interval(-2, 0)}, Box{Interval(-1, 1)}), Error);
  CHECK_THROWS_AS(extract_rate(Box{Interval(1.5, 1.6)}, Box{Interval(1, 2)}), Error);

  std::mt19937_64 rng(43);
  for (int i = 0; i < 2000; ++i) {
    const Box outer{Interval(-static_cast<double>(oracle::uniform(rng, 0.01, 5)),
                             static_cast<double>(oracle::uniform(rng, 0.01, 5))),
                    Interval(-static_cast<double>(oracle::uniform(rng, 0.01, 5)),
                             static_cast<double>(oracle::uniform(rng, 0.01, 5)))};
    const Box y = random_subbox(rng, outer);
    const double a = extract_rate(y, outer);
    CHECK(a <= 1.0);
    CHECK(subset(y, scalar_mul(a, outer)));
  }
}

TEST_CASE("exponential certificate") {
  StabilityReport r;
  r.verdict = Verdict::proven_stable;
  r.q = 1;
  r.alpha = 0.5;
  r.delta_box = Box{Interval(-1, 1)};
  const ExponentialCertificate c = exponential_certificate(r);
  CHECK(c.beta == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(c.beta <= std::log(2.0));
  CHECK(c.radius == 1.0);
  CHECK_FALSE(c.description.empty());

  r.alpha = std::nextafter(1.0, 0.0);
  const double weak = exponential_certificate(r).beta;
  CHECK(weak >= 0);
  CHECK(weak < 1e-15);

  r.alpha = 1.0;
  CHECK_THROWS_AS(exponential_certificate(r), Error);
  r.alpha = 0.5;
  r.verdict = Verdict::undetermined;
  CHECK_THROWS_AS(exponential_certificate(r), Error);
  r.verdict = Verdict::proven_stable;
  r.mode = Mode::invariance;
  CHECK_THROWS_AS(exponential_certificate(r), Error);
}

TEST_CASE("logistic certificate holds on simulated trajectories") {
  const StabilityReport r = check_stability(scenarios::logistic(), logistic_centre(), logistic_box());
  REQUIRE(r.proven());
  const ExponentialCertificate c = exponential_certificate(r);
  CHECK(c.beta > 0);
  const long double xbar = 7.0L / 12;
  std::mt19937_64 rng(47);
  for (std::size_t s = 0; s < 1000; ++s) {
    long double x = xbar + oracle::sample(rng, r.delta_box, s)[0];
    for (std::size_t k = 1; k <= 10; ++k) {
      for (std::size_t j = 0; j < c.q; ++j) x = oracle::logistic(x);
      CHECK(fabsl(x - xbar) <= c.radius * expl(-c.beta * k) * (1 + 1e-12L) + 1e-18L);
    }
  }
}

TEST_CASE("robust invariance of the lake cycle") {
  const Box x0{Interval(1.5, 6.5), Interval(9.5, 15.5)};
  Disturbance u;
  u.drift = decimal_enclosure("0.05");
  const StabilityReport r = check_invariance(scenarios::cycle_stages(), x0, u);
  CHECK(r.proven());
  CHECK(r.mode == Mode::invariance);
  CHECK(r.q == 1);
  REQUIRE(r.stage_images.size() == 4);
  CHECK(subset(r.stage_images.back(), x0));
  CHECK_THROWS_AS(exponential_certificate(r), Error);

  Disturbance none;
  const StabilityReport z = check_invariance(scenarios::cycle_stages(), x0, none);
  CHECK(z.proven());
  CHECK(z.q == 1);
  CHECK(interior_subset(z.stage_images.back(), r.stage_images.back()));
  CHECK(width(z.stage_images.back()) < width(r.stage_images.back()));

  Disturbance big;
  big.drift = Interval(10);
  const StabilityReport b = check_invariance(scenarios::cycle_stages(), x0, big);
  CHECK_FALSE(b.proven());
  CHECK(b.cause != Cause::none);

  // explicit per-stage boxes
  Disturbance boxes;
  boxes.per_stage = std::vector<Box>(4, Box::cube(2, 0.01));
  CHECK(check_invariance(scenarios::cycle_stages(), x0, boxes).proven());
  boxes.per_stage.pop_back();
  CHECK_THROWS_AS(check_invariance(scenarios::cycle_stages(), x0, boxes), Error);
  boxes.per_stage = std::vector<Box>(4, Box{Interval(0.1, 0.2), Interval(0)});
  CHECK_THROWS_AS(check_invariance(scenarios::cycle_stages(), x0, boxes), Error);
}

TEST_CASE("simulated disturbed cycles stay in the invariant box") {
  const Box x0{Interval(1.5, 6.5), Interval(9.5, 15.5)};
  Disturbance u;
  u.drift = decimal_enclosure("0.05");
  REQUIRE(check_invariance(scenarios::cycle_stages(), x0, u).proven());
  std::mt19937_64 rng(53);
  for (std::size_t s = 0; s < 1000; ++s) {
    oracle::Vec x = oracle::sample(rng, x0, s);
    for (int lap = 0; lap < 5; ++lap) {
      for (int stage = 0; stage < 4; ++stage) {
        const oracle::Vec y = oracle::cycle_stage(stage, x);
        const long double d = std::max(fabsl(y[0] - x[0]), fabsl(y[1] - x[1]));
        x = y;
        for (auto& c : x) c += d * oracle::uniform(rng, -0.05L, 0.05L);
      }
      CHECK(oracle::inside(x, x0, 0));
    }
  }
}

TEST_CASE("bisection") {
  const auto single = bisect_and_prove(scenarios::logistic(), logistic_centre(), logistic_box(), {}, 6);
  REQUIRE(single.size() == 1);
  CHECK(single[0].report.proven());
  CHECK(single[0].box == logistic_box());

  const Box wide{Interval(0.3, 0.9)};
  const StabilityReport direct = check_stability(scenarios::logistic(), logistic_centre(), wide);
  CHECK_FALSE(direct.proven());
  const auto d0 = bisect_and_prove(scenarios::logistic(), logistic_centre(), wide, {}, 0);
  REQUIRE(d0.size() == 1);
  check_identical(d0[0].report, direct);

  const auto leaves = bisect_and_prove(scenarios::logistic(), logistic_centre(), wide, {}, 6);
  bool proven_with_centre = false;
  double covered = 0;
  for (const BisectionLeaf& leaf : leaves) {
    covered += width(leaf.box);
    if (leaf.report.proven()) {
      CHECK(leaf.box[0].contains(7.0 / 12));
      proven_with_centre = true;
    }
    if (!leaf.box[0].contains(7.0 / 12)) CHECK(leaf.report.cause == Cause::not_applicable);
  }
  CHECK(proven_with_centre);
  CHECK(covered == doctest::Approx(0.6));
  for (std::size_t i = 1; i < leaves.size(); ++i) CHECK(leaves[i - 1].box[0].hi() <= leaves[i].box[0].lo());
}

TEST_CASE("contractor axioms on proven instances") {
  std::mt19937_64 rng(59);
  struct Case {
    const char* name;
    CentredProblem cp;
    Box p;
  };
  const std::vector<Case> cases{
      {"logistic", centre(scenarios::logistic(), logistic_centre()), logistic_box() - logistic_centre()},
      {"rot3d", centre(scenarios::rot3d(), Box(3)), Box::cube(3, 0.004)},
  };
  for (const Case& c : cases) {
    CAPTURE(c.name);
    const StabilityReport r = check_centred(c.cp, c.p);
    REQUIRE(r.proven());
    // (i) monotonicity
    for (int i = 0; i < 300; ++i) {
      const Box b = random_subbox(rng, c.p);
      const Box a = random_subbox(rng, b);
      CHECK(subset(centred_eval(c.cp, a), centred_eval(c.cp, b)));
    }
    // (iii) the equilibrium is fixed
    const Box zero(c.p.size());
    CHECK(centred_eval(c.cp, zero) == zero);
    // (iv) restarting from each q-step image shrinks geometrically
    Box x = c.p;
    for (int k = 1; k <= 6; ++k) {
      x = iterate_centred(c.cp, x, r.q).steps[r.q].fc;
      CHECK(norm(x) <= std::pow(r.alpha, k) * norm(c.p) * (1 + 1e-12));
    }
  }
}

TEST_CASE("proven reports agree with simulation") {
  std::mt19937_64 rng(61);
  const StabilityReport r = check_stability(scenarios::rot3d(), Box(3), Box::cube(3, 0.004));
  REQUIRE(r.proven());
  const std::size_t q = r.q;
  for (std::size_t s = 0; s < 1000; ++s) {
    const oracle::Vec x0 = oracle::sample(rng, r.delta_box, s);
    oracle::Vec x = x0;
    for (std::size_t j = 1; j <= 10 * q; ++j) {
      x = oracle::rot3d(x);
      if (j <= q) CHECK(oracle::inside(x, r.trace.steps[j].fc));
      if (j % q == 0) CHECK(oracle::norm(x) <= std::pow(r.alpha, j / q) * norm(r.delta_box) * (1 + 1e-12));
    }
  }
}

TEST_CASE("reports are deterministic") {
  check_identical(check_stability(scenarios::rot3d(), Box(3), Box::cube(3, 0.004)),
                  check_stability(scenarios::rot3d(), Box(3), Box::cube(3, 0.004)));
  const Box x0{Interval(1.5, 6.5), Interval(9.5, 15.5)};
  Disturbance u;
  u.drift = decimal_enclosure("0.05");
  check_identical(check_invariance(scenarios::cycle_stages(), x0, u),
                  check_invariance(scenarios::cycle_stages(), x0, u));
}
