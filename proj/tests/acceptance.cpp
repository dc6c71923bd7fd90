// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "intstab/parser.hpp"
#include "intstab/paving.hpp"
#include "intstab/scenarios.hpp"
#include "intstab/stability.hpp"
#include "oracles.hpp"

using namespace intstab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) note << "failed: ";
      else note << "; ";
      note << what;
      pass = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double t = seconds_since(t0);
  if (!o.pass) ++failures;
  std::printf("%s %d: %s [%s] (%.3f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.note.str().c_str(), t);
  std::fflush(stdout);
}

const Box kLogisticBox{Interval(0.577, 0.585)};
Box logistic_centre() { return Box{parse_constant("7/12")}; }

const Box kCycleBox{Interval(1.5, 6.5), Interval(9.5, 15.5)};

Disturbance cycle_drift(const char* eps) {
  Disturbance u;
  u.drift = decimal_enclosure(eps);
  u.speed = Interval(1.0);
  return u;
}

// Width of the hull of g^k over a 1-D box, g centred at 7/12.
long double logistic_sampled_width(const Box& p, int k) {
  const long double c = 7.0L / 12;
  long double lo = INFINITY, hi = -INFINITY;
  const int samples = 4000;
  for (int s = 0; s <= samples; ++s) {
    long double x = c + p[0].lo() + (static_cast<long double>(p[0].hi()) - p[0].lo()) * s / samples;
    for (int j = 0; j < k; ++j) x = oracle::logistic(x);
    lo = std::min(lo, x - c);
    hi = std::max(hi, x - c);
  }
  return hi - lo;
}

}  // namespace

int main() {
  std::printf("interval stability acceptance suite\n");

  criterion(1, "logistic map proven at q=2, q=1 fails, alpha<1, <1 s", [](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const StabilityReport r = check_stability(scenarios::logistic(), logistic_centre(), kLogisticBox);
    const double t = seconds_since(t0);
    o.note << "q=" << r.q << " alpha=" << r.alpha << " run=" << t << "s";
    o.require(r.proven(), "not proven");
    o.require(r.q == 2, "q != 2");
    o.require(r.alpha < 1, "alpha >= 1");
    o.require(r.trace.steps.size() > 1 && !interior_subset(r.trace.steps[1].fc, r.delta_box),
              "first iterate already inside");
    o.require(t < 1.0, "too slow");
  });

  criterion(2, "3-D rotation proven with q in [2,5], alpha<1, <1 s", [](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const StabilityReport r = check_stability(scenarios::rot3d(), Box(3), Box::cube(3, 0.004));
    const double t = seconds_since(t0);
    o.note << "q=" << r.q << " alpha=" << r.alpha << " run=" << t << "s";
    o.require(r.proven(), "not proven");
    o.require(r.q >= 2 && r.q <= 5, "q outside [2,5]");
    o.require(r.alpha < 1, "alpha >= 1");
    o.require(t < 1.0, "too slow");
  });

  criterion(3, "lake cycle invariant at q=1 with drift 0.05; drift 0 image strictly smaller, <1 s", [](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const StabilityReport r = check_invariance(scenarios::cycle_stages(), kCycleBox, cycle_drift("0.05"));
    const StabilityReport z = check_invariance(scenarios::cycle_stages(), kCycleBox, cycle_drift("0"));
    const double t = seconds_since(t0);
    o.note << "q=" << r.q << " run=" << t << "s";
    o.require(r.proven() && r.mode == Mode::invariance, "drift 0.05 not proven");
    o.require(r.q == 1, "q != 1");
    o.require(z.proven(), "drift 0 not proven");
    if (r.proven() && z.proven()) {
      const Box& a = z.stage_images.back();
      const Box& b = r.stage_images.back();
      std::ostringstream s;
      s << " image(0.05)=" << b << " image(0)=" << a;
      o.note << s.str();
      o.require(subset(a, b) && a != b && width(a) < width(b), "drift-free image not strictly smaller");
    }
    o.require(t < 1.0, "too slow");
  });

  criterion(4, "localisation paving >=80% proven; cells on m1=0 SingularJacobian, <30 s", [](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    PavingOptions opts;
    opts.cell_width = 0.05;
    const PavingResult desk =
        pave(scenarios::newton_localisation(), Box{Interval(0.5, 1.5), Interval(-0.5, 0.5)}, opts);
    const double share = static_cast<double>(desk.proven_count()) / static_cast<double>(desk.cells.size());
    const PavingResult wide =
        pave(scenarios::newton_localisation(), Box{Interval(-0.525, 1.525), Interval(-0.5, 0.5)}, opts);
    std::size_t straddling = 0, singular = 0;
    for (const ParamCell& c : wide.cells) {
      if (c.m_box[0].lo() < 0 && c.m_box[0].hi() > 0) {
        ++straddling;
        singular += c.status == Verdict::undetermined && c.cause == Cause::singular_jacobian;
      }
    }
    const double t = seconds_since(t0);
    o.note << "proven " << desk.proven_count() << "/" << desk.cells.size() << ", straddling singular " << singular
           << "/" << straddling << " run=" << t << "s";
    o.require(share >= 0.8, "fewer than 80% proven");
    o.require(straddling > 0 && singular == straddling, "a straddling cell is not SingularJacobian");
    o.require(t < 30.0, "too slow");
  });

  criterion(5, "Monte-Carlo trajectories stay inside every recorded enclosure", [](Outcome& o) {
    std::mt19937_64 rng(2024);
    const int kSamples = 1000;
    std::size_t checks = 0, violations = 0;
    auto record = [&](bool inside) {
      ++checks;
      violations += !inside;
    };
    const long double rel = 1e-15L;

    {  // logistic
      const StabilityReport r = check_stability(scenarios::logistic(), logistic_centre(), kLogisticBox);
      o.require(r.proven(), "logistic not proven");
      const CentredTrace t = iterate_centred(centre(scenarios::logistic(), logistic_centre()), r.delta_box, 10);
      const long double c = 7.0L / 12;
      for (std::size_t s = 0; s < kSamples; ++s) {
        long double x = c + oracle::sample(rng, r.delta_box, s)[0];
        for (std::size_t k = 1; k < t.steps.size(); ++k) {
          x = oracle::logistic(x);
          record(oracle::inside(x - c, t.steps[k].fc[0], rel));
        }
      }
    }
    {  // rotation
      const StabilityReport r = check_stability(scenarios::rot3d(), Box(3), Box::cube(3, 0.004));
      o.require(r.proven(), "rot3d not proven");
      const CentredTrace t = iterate_centred(centre(scenarios::rot3d(), Box(3)), r.delta_box, 10);
      for (std::size_t s = 0; s < kSamples; ++s) {
        oracle::Vec x = oracle::sample(rng, r.delta_box, s);
        for (std::size_t k = 1; k < t.steps.size(); ++k) {
          x = oracle::rot3d(x);
          record(oracle::inside(x, t.steps[k].fc, rel));
        }
      }
    }
    {  // disturbed lake cycle: every stage image and the cycle image
      const StabilityReport r = check_invariance(scenarios::cycle_stages(), kCycleBox, cycle_drift("0.05"));
      o.require(r.proven(), "cycle not proven");
      for (std::size_t s = 0; s < kSamples; ++s) {
        oracle::Vec x = oracle::sample(rng, kCycleBox, s);
        for (int stage = 0; stage < 4; ++stage) {
          const oracle::Vec y = oracle::cycle_stage(stage, x);
          const long double d = std::max(fabsl(y[0] - x[0]), fabsl(y[1] - x[1]));
          x = y;
          for (auto& v : x) v += d * oracle::uniform(rng, -0.05L, 0.05L);
          record(oracle::inside(x, r.stage_images[stage], rel));
        }
        oracle::Vec centred{x[0] - r.xbar[0].lo(), x[1] - r.xbar[1].lo()};
        record(oracle::inside(centred, r.trace.steps[1].fc, rel));
      }
    }
    {  // localisation, one desk-scale cell with its parameter uncertainty
      const Box m{Interval(0.95, 1.0), Interval(0.1, 0.15)};
      const double eps = std::sqrt(0.05);
      const StabilityReport r =
          check_stability(scenarios::newton_localisation(), Box(2), Box::cube(2, eps), StabilityOptions{}, m);
      o.require(r.proven(), "localisation cell not proven");
      const CentredTrace t = iterate_centred(centre(scenarios::newton_localisation(), Box(2), m), r.delta_box, 10);
      for (std::size_t s = 0; s < kSamples; ++s) {
        oracle::Vec x = oracle::sample(rng, r.delta_box, s);
        const oracle::Vec mm = oracle::sample(rng, m, s + 1);
        for (std::size_t k = 1; k < t.steps.size(); ++k) {
          x = oracle::newton(x, mm);
          record(oracle::inside(x, t.steps[k].fc, rel));
        }
      }
    }
    o.note << checks << " checks, " << violations << " violations";
    o.require(violations == 0, "enclosure violated");
  });

  criterion(6, "contractor properties: monotone, fixes 0, geometric decay over k*q steps", [](Outcome& o) {
    std::mt19937_64 rng(7);
    struct Case {
      const char* name;
      CentredProblem cp;
      Box p;
    };
    const Case cases[] = {
        {"logistic", centre(scenarios::logistic(), logistic_centre()), kLogisticBox - logistic_centre()},
        {"rot3d", centre(scenarios::rot3d(), Box(3)), Box::cube(3, 0.004)},
    };
    std::size_t monotone_checks = 0;
    for (const Case& c : cases) {
      const StabilityReport r = check_centred(c.cp, c.p);
      if (!r.proven()) {
        o.require(false, std::string(c.name) + " not proven");
        continue;
      }
      for (int i = 0; i < 500; ++i) {
        Box b(c.p.size()), a(c.p.size());
        for (std::size_t j = 0; j < c.p.size(); ++j) {
          b[j] = Interval(static_cast<double>(oracle::uniform(rng, c.p[j].lo(), 0)),
                          static_cast<double>(oracle::uniform(rng, 0, c.p[j].hi())));
          a[j] = Interval(static_cast<double>(oracle::uniform(rng, b[j].lo(), 0)),
                          static_cast<double>(oracle::uniform(rng, 0, b[j].hi())));
        }
        ++monotone_checks;
        o.require(subset(centred_eval(c.cp, a), centred_eval(c.cp, b)), std::string(c.name) + " not monotone");
      }
      const Box zero(c.p.size());
      o.require(centred_eval(c.cp, zero) == zero, std::string(c.name) + " moves the equilibrium");
      // Restart from each q-step image: the chain the exponential bound rests on.
      Box x = c.p;
      for (int k = 1; k <= 5; ++k) {
        x = iterate_centred(c.cp, x, r.q).steps[r.q].fc;
        o.require(norm(x) <= std::pow(r.alpha, k) * norm(c.p) * (1 + 1e-9),
                  std::string(c.name) + " decay bound broken at k=" + std::to_string(k));
      }
      o.note << c.name << ": q=" << r.q << " alpha=" << r.alpha << " |x5|/|x0|=" << norm(x) / norm(c.p) << "; ";
    }
    o.note << monotone_checks << " monotonicity checks";
  });

  criterion(7, "logistic pessimism excess at k=2 shrinks across 4 halvings", [](Outcome& o) {
    const CentredProblem cp = centre(scenarios::logistic(), logistic_centre());
    Box p = kLogisticBox - logistic_centre();
    double prev = 0;
    for (int j = 0; j <= 4; ++j) {
      const CentredTrace t = iterate_centred(cp, p, 2);
      const double w = width(p);
      const double excess = (width(t.steps[2].fc) - static_cast<double>(logistic_sampled_width(p, 2))) / w;
      o.note << (j ? " " : "ratios:") << " " << excess;
      o.require(excess >= 0, "enclosure narrower than the sampled image");
      if (j > 0) o.require(excess <= 1.2 * prev, "excess ratio did not shrink at halving " + std::to_string(j));
      prev = excess;
      p = scalar_mul(0.5, p);
    }
  });

  criterion(8, "f(x)=0.5x proven at q=1 with alpha<=0.5 on cubes of width 1, 0.1, 0.01", [](Outcome& o) {
    std::size_t runs = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
      std::string text;
      for (std::size_t i = 1; i <= n; ++i) text += (i > 1 ? "; 0.5*x" : "0.5*x") + std::to_string(i);
      const VectorFunc f = parse(text);
      for (double w : {1.0, 0.1, 0.01}) {
        const StabilityReport r = check_stability(f, Box(n), Box::cube(n, w / 2));
        ++runs;
        const std::string tag = " (n=" + std::to_string(n) + ", width " + std::to_string(w) + ")";
        o.require(r.proven() && r.q == 1, "not proven at q=1" + tag);
        o.require(r.alpha <= 0.5 + 1e-9, "alpha too large" + tag);
      }
    }
    o.note << runs << " boxes";
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
