// Acceptance checks. Prints one PASS/FAIL line per criterion.
//
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <modwalk/modwalk.hpp>

#include "../support/generators.hpp"

namespace {

  using namespace modwalk;
  using modwalk::testing::random_nn;
  using modwalk::testing::random_step;

  constexpr double kSolverTol       = 1e-12;
  constexpr double kStationarityTol = 1e-10;
  constexpr double kZThreshold      = 4.0;
  constexpr std::uint64_t kPaths    = 100000;

  struct Outcome {
    bool pass;
    std::string detail;
  };

  class Timer {
   public:
    double seconds() const {
      return std::chrono::duration<double>(std::chrono::steady_clock::now()
                                           - _start)
          .count();
    }

   private:
    std::chrono::steady_clock::time_point _start
        = std::chrono::steady_clock::now();
  };

  std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
  }

  Outcome ac1_solver() {
    Timer timer;
    SplitMix64 rng(1001);
    double worst = 0.0;
    std::size_t bad = 0;
    for (int i = 0; i < 1000; ++i) {
      StepOnS<Rational> mu      = random_step(rng);
      MasterSolution<Rational> s = solve_master(mu, kSolverTol);
      PassageTriple const& t    = s.triple;
      DenjoyParams<double> d    = s.params();
      worst = std::max(worst, s.max_residual());
      bool ok = s.max_residual() <= kSolverTol && t.y + t.ybar == 1.0
                && 0 < t.x && t.x < 1 && 0 < t.y && t.y < 1 && 0 < d.p
                && d.p < 0.5;
      bad += ok ? 0 : 1;
    }
    double elapsed = timer.seconds();
    return {bad == 0 && elapsed < 5.0,
            "1000 measures, max residual " + fmt(worst) + ", violations "
                + std::to_string(bad) + ", " + fmt(elapsed) + " s (< 5 s)"};
  }

  Outcome ac2_symmetric() {
    StepOnS<Rational> mu{Rational(1, 3), Rational(1, 3), Rational(1, 3), 0, 0};
    MasterSolution<Rational> s = solve_master(mu, kSolverTol);
    bool alpha_exact = s.exact_y && *s.exact_y == Rational(1, 2);
    double p         = s.params().p;
    NNSolution nn    = nn_solve(NNParams<Rational>{Rational(1, 3), 0});
    double af = 1.0 / 3.0, delta = 0.0, z = nn.z;
    double p_formula = (1 + af - delta * z) / (3 + af - delta * z);
    bool ok = alpha_exact && std::abs(p - 0.4) <= kSolverTol
              && std::abs(nn.params.p - p) <= kSolverTol
              && std::abs(p_formula - p) <= kSolverTol
              && nn.params.alpha == 0.5;
    return {ok, std::string("alpha ") + (alpha_exact ? "= 1/2 exactly" : "not exact")
                    + ", p " + fmt(p) + ", |p - 2/5| "
                    + fmt(std::abs(p - 0.4)) + ", nearest-neighbour p "
                    + fmt(nn.params.p)};
  }

  Outcome ac3_nn_symmetry() {
    SplitMix64 rng(3003);
    std::size_t symmetric = 0, mismatches = 0;
    for (int i = 0; i < 200; ++i) {
      NNParams<Rational> nn = random_nn(rng);
      if (i % 4 == 0) {
        nn.delta = 0;
      }
      StepOnS<Rational> mu = nn.to_step();
      bool filling   = minkowski_residual(mu) == 0;
      bool sym       = mu.bf == mu.bbarf;
      symmetric += sym ? 1 : 0;
      mismatches += filling == sym ? 0 : 1;
    }
    return {mismatches == 0,
            "200 nearest-neighbour measures (" + std::to_string(symmetric)
                + " symmetric), exact residual zero iff b = bbar, mismatches "
                + std::to_string(mismatches)};
  }

  Outcome ac4_ex1() {
    Timer timer;
    Ex1Report r   = example_ex1(Rational(1, 3), Rational(1, 2), Rational(1, 2),
                                kSolverTol);
    bool endpoints = std::abs(r.minkowski_first) <= kSolverTol
                     && std::abs(r.minkowski_second) <= kSolverTol;
    bool gap       = r.alpha_gap > 1e-3;
    SimConfig cfg;
    cfg.paths = kPaths;
    cfg.depth = 3;
    cfg.seed  = 4004;
    MinkowskiGridCheck g
        = minkowski_grid_check(r.mixture.to_measure(), cfg, 99, kZThreshold);
    auto weakest = std::min_element(g.max_abs_z.begin(), g.max_abs_z.end());
    double p_at  = g.grid[static_cast<std::size_t>(weakest - g.max_abs_z.begin())];
    double elapsed = timer.seconds();
    bool ok = endpoints && gap && g.rejects_minkowski_class() && elapsed < 60.0;
    return {ok, "endpoint residuals " + fmt(r.minkowski_first) + ", "
                    + fmt(r.minkowski_second) + "; |alpha - 1/2| = "
                    + fmt(r.alpha_gap) + "; Monte Carlo min over p-grid of max|z| = "
                    + fmt(*weakest) + " at p = " + fmt(p_at) + " (needs > 4); "
                    + fmt(elapsed) + " s"};
  }

  Outcome ac5_ex2() {
    Ex2Report r = example_ex2(Rational(1, 2), kSolverTol);
    QuadraticSurd const bb(Rational(1, 2));
    QuadraticSurd expected_diff = bb - QuadraticSurd(2) * r.point.bf;
    bool ok = r.convolution_is_square && r.mu_prime_matches
              && r.minkowski_exact.sign() != 0 && std::abs(r.minkowski) > 1e-3
              && r.hyperbola.sign() == 0 && r.difference == expected_diff
              && r.difference.sign() != 0;
    return {ok, std::string("mu' formula ")
                    + (r.mu_prime_matches ? "reproduced exactly" : "MISMATCH")
                    + ", minkowski_residual(mu') = " + r.minkowski_exact.str()
                    + " ~ " + fmt(r.minkowski) + ", hyperbola "
                    + r.hyperbola.str() + ", difference " + r.difference.str()};
  }

  Outcome ac6_ex0() {
    Ex0Report r = example_ex0(kSolverTol);
    Ex0Combination const* half = nullptr;
    for (auto const& c : r.combinations) {
      if (c.t == Rational(1, 2)) {
        half = &c;
      }
    }
    bool ok = r.phi_first == r.phi_second && r.phi_first != 0
              && r.alpha_difference <= kSolverTol && half != nullptr
              && half->gap > 1e-3;
    return {ok, "phi = " + to_string(r.phi_first) + " on both, alpha "
                    + fmt(r.solution_first.triple.y) + " vs "
                    + fmt(r.solution_second.triple.y) + " (diff "
                    + fmt(r.alpha_difference) + "), t = 1/2 gap "
                    + fmt(half ? half->gap : 0.0)};
  }

  Outcome ac7_letac_piccioni() {
    Timer timer;
    GroupMeasure<Rational> mu;
    for (char const* w : {"b", "ba", "ab", "aba", "B", "Ba", "aB", "aBa", "a"}) {
      mu.add(GroupWord::parse(w), Rational(1, 9));
    }
    SimConfig cfg;
    cfg.paths = kPaths;
    cfg.steps = 400;
    cfg.depth = 3;
    cfg.seed  = 7007;
    SimReport rep = estimate_cylinder_frequencies(mu, cfg);
    std::uint64_t resolved = rep.paths_used - rep.unresolved;
    auto aggregate = [&](Cylinder const& root) {
      std::uint64_t k = 0;
      for (auto const& [c, e] : rep.cylinder_freq) {
        k += root.contains(c) ? e.count : 0;
      }
      return detail::make_estimate(k, resolved);
    };
    Estimate ca  = aggregate(Cylinder::parse("a"));
    Estimate cba = aggregate(Cylinder::parse("ba"));
    double za  = (ca.estimate - 0.5) / ca.stderr_;
    double zba = (cba.estimate - 0.25) / cba.stderr_;
    double elapsed = timer.seconds();
    bool ok = std::abs(za) <= kZThreshold && std::abs(zba) <= kZThreshold
              && elapsed < 30.0;
    return {ok, "nu(C_a) = " + fmt(ca.estimate) + " (z " + fmt(za)
                    + "), nu(C_ba) = " + fmt(cba.estimate) + " (z " + fmt(zba)
                    + "), unresolved " + std::to_string(rep.unresolved) + ", "
                    + fmt(elapsed) + " s (< 30 s)"};
  }

  Outcome ac8_stationarity() {
    SplitMix64 rng(8008);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      StepOnS<Rational> mu   = random_step(rng);
      DenjoyParams<double> d = harmonic_params(mu);
      worst = std::max(worst,
                       check_stationarity(d, mu.to_measure().to_double(), 8));
    }
    return {worst <= kStationarityTol,
            "50 measures, depth 8, max defect " + fmt(worst)};
  }

  Outcome ac9_hausdorff() {
    HausdorffConstants h = hausdorff_constants();
    double worst = 0.0;
    std::size_t n = 0;
    for (Cylinder const& c : cylinders_up_to_depth(10)) {
      if (!c.starts_with_a()) {
        continue;
      }
      double lhs = component_mass(0.5, c) / std::sqrt(2.0);
      double rhs = std::pow(c.diameter(), h.dimension);
      worst      = std::max(worst, std::abs(lhs - rhs));
      ++n;
    }
    return {worst <= 1e-12, std::to_string(n)
                                + " cylinders in the shadow of a, max deviation "
                                + fmt(worst)};
  }

  Outcome ac10_question_mark() {
    std::vector<std::string> failures;
    auto check = [&](bool cond, std::string const& what) {
      if (!cond) {
        failures.push_back(what);
      }
    };
    auto qm = [](Rational const& x) { return question_mark(x, 100000); };
    check(qm(0).value == 0 && qm(1).value == 1
              && qm(Rational(1, 2)).value == Rational(1, 2),
          "fixed values");
    check(qm(Rational(1, 3)).value == Rational(1, 4), "?(1/3)");

    SplitMix64 rng(10010);
    std::vector<Rational> xs;
    while (xs.size() < 1000) {
      Rational x = testing::random_open_unit(rng, 1000);
      if (std::find(xs.begin(), xs.end(), x) == xs.end()) {
        xs.push_back(x);
      }
    }
    for (Rational const& x : xs) {
      QuestionMarkValue a = qm(x), b = qm(1 - x);
      check(a.exact && b.exact && a.value + b.value == 1, "symmetry");
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 1; i < xs.size(); ++i) {
      check(qm(xs[i - 1]).value < qm(xs[i]).value, "monotonicity");
    }

    std::size_t trips = 0;
    auto round_trip = [&](Rational const& q) {
      RationalCode code  = rational_to_lr(q);
      MediantInterval iv = lr_to_interval(code.stem);
      ContinuedFraction cf = rational_to_cf(q);
      check(iv.mediant() == ExtRational(q), "rational -> LR -> rational");
      check(iv.is_unimodular(), "unimodularity");
      check(cf.value() == q, "rational -> CF -> rational");
      check(lr_to_cf(code.right.stem).value() == q
                && lr_to_cf(code.left.stem).value() == q,
            "LR -> CF");
      LRWord back = cf_to_lr(cf);
      check(back == code.right.stem || back == code.left.stem, "CF -> LR");
      ++trips;
    };
    for (unsigned q = 1; q <= 100; ++q) {
      for (unsigned p = 1; p <= 3 * q; ++p) {
        if (mp::denominator(Rational(p, q)) == q) {
          round_trip(Rational(p, q));
        }
      }
    }
    for (int i = 0; i < 5000; ++i) {
      std::uint64_t q = 1 + rng.below(10000);
      std::uint64_t p = 1 + rng.below(3 * q);
      round_trip(Rational(Integer(p), Integer(q)));
    }
    check(lr_to_cf(LRWord::parse("LLRR"))
              == ContinuedFraction{{Integer(0), Integer(2), Integer(2)}},
          "syllable rule for 2/5");
    MediantInterval llr = lr_to_interval(LRWord::parse("LLR"));
    check(llr.left == ExtRational(1, 3) && llr.right == ExtRational(1, 2)
              && llr.mediant() == ExtRational(2, 5),
          "I_LLR");
    std::sort(failures.begin(), failures.end());
    failures.erase(std::unique(failures.begin(), failures.end()),
                   failures.end());
    std::string detail = "?-function fixed points, 1000 samples, "
                         + std::to_string(trips) + " round trips";
    for (auto const& f : failures) {
      detail += "; FAILED " + f;
    }
    return {failures.empty(), detail};
  }

  struct Criterion {
    int id;
    char const* name;
    std::function<Outcome()> run;
  };

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> const criteria{
      {1, "solver correctness", ac1_solver},
      {2, "symmetric fixture", ac2_symmetric},
      {3, "Minkowski membership iff symmetry (nearest neighbour)",
       ac3_nn_symmetry},
      {4, "ex1 convex combination", ac4_ex1},
      {5, "ex2 convolution", ac5_ex2},
      {6, "ex0 nearest-neighbour combination", ac6_ex0},
      {7, "Letac-Piccioni simulation", ac7_letac_piccioni},
      {8, "stationarity", ac8_stationarity},
      {9, "Hausdorff well-scaling", ac9_hausdorff},
      {10, "question-mark function and encodings", ac10_question_mark},
  };

  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }

  int failed = 0, ran = 0;
  for (Criterion const& c : criteria) {
    if (only != 0 && c.id != only) {
      continue;
    }
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (std::exception const& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "AC" << c.id << ' ' << (o.pass ? "PASS" : "FAIL") << "  "
              << c.name << ": " << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  if (ran == 0) {
    std::cerr << "no criterion " << only << '\n';
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
