#pragma once

// The three constructions showing that neither the set of filling step
// distributions nor a measure class of harmonic measures is convex or closed
// under convolution.

#include <array>
#include <cmath>
#include <algorithm>
#include <map>
#include <set>
#include <optional>
#include <vector>

#include "measure.hpp"
#include "simulator.hpp"
#include "solver.hpp"

namespace modwalk {

  ////////////////////////////////////////////////////////////////////////
  // ex0: nearest-neighbour walks on one level set of phi
  ////////////////////////////////////////////////////////////////////////

  // Fixture pair found by ex0_level_set_search(12); see data/ex0_fixture.json.
  inline NNParams<Rational> ex0_fixture_first() {
    return {Rational(1, 9), Rational(7, 9)};
  }
  inline NNParams<Rational> ex0_fixture_second() {
    return {Rational(4, 9), Rational(1, 9)};
  }

  struct LevelSetPair {
    NNParams<Rational> first;
    NNParams<Rational> second;
    Rational phi;
    double gap;  // |alpha(mixture at t = 1/2) - alpha(first)|
  };

  //! Deterministic search over nearest-neighbour parameters with
  //! denominators <= max_den and 0 < delta < 1 - af (delta -> -delta maps
  //! alpha to 1 - alpha and changes no gap). Points are
  //! grouped by their exact phi value; the pair on a common level set whose
  //! t = 1/2 mixture moves alpha the most is returned. Ties keep the first
  //! pair in lexicographic order of (af, delta).
  inline LevelSetPair ex0_level_set_search(unsigned max_den = 12) {
    std::map<Rational, std::vector<NNParams<Rational>>> levels;
    std::set<std::pair<Rational, Rational>> seen;
    for (unsigned q = 1; q <= max_den; ++q) {
      for (unsigned i = 1; i < q; ++i) {
        Rational af(i, q);
        for (unsigned j = 1; j < q; ++j) {
          Rational delta(j, q);
          if (!(delta < 1 - af)) {
            continue;
          }
          if (!seen.insert({af, delta}).second) {
            continue;
          }
          NNParams<Rational> nn{af, delta};
          levels[phi(nn)].push_back(nn);
        }
      }
    }
    std::optional<LevelSetPair> best;
    for (auto& [level, members] : levels) {
      std::sort(members.begin(), members.end(), [](auto const& l, auto const& r) {
        return l.af != r.af ? l.af < r.af : l.delta < r.delta;
      });
      for (std::size_t i = 0; i < members.size(); ++i) {
        double alpha = nn_solve(members[i]).params.alpha;
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          NNParams<Rational> mid{(members[i].af + members[j].af) / 2,
                                 (members[i].delta + members[j].delta) / 2};
          double gap = std::abs(nn_solve(mid).params.alpha - alpha);
          if (!best || gap > best->gap) {
            best = LevelSetPair{members[i], members[j], level, gap};
          }
        }
      }
    }
    if (!best) {
      throw InvalidInput("ex0_level_set_search: no level set with two points");
    }
    return *best;
  }

  struct Ex0Combination {
    Rational t;
    NNParams<Rational> params;
    Rational phi;
    double alpha;
    double gap;          // |alpha - common alpha|
    bool separated;      // gap > 1e3 * tol
  };

  struct Ex0Report {
    NNParams<Rational> first;
    NNParams<Rational> second;
    Rational phi_first;
    Rational phi_second;
    MasterSolution<Rational> solution_first;
    MasterSolution<Rational> solution_second;
    double alpha_difference;   // between the two fixture walks
    double tol;
    std::vector<Ex0Combination> combinations;

    bool equal_alpha() const {
      return alpha_difference <= tol;
    }
    bool all_separated() const {
      return std::all_of(combinations.begin(), combinations.end(),
                         [](auto const& c) { return c.separated; });
    }
  };

  inline Ex0Report example_ex0(double tol = 1e-12) {
    Ex0Report r;
    r.tol             = tol;
    r.first           = ex0_fixture_first();
    r.second          = ex0_fixture_second();
    r.phi_first       = phi(r.first);
    r.phi_second      = phi(r.second);
    r.solution_first  = solve_master(r.first.to_step(), tol);
    r.solution_second = solve_master(r.second.to_step(), tol);
    double alpha      = r.solution_first.triple.y;
    r.alpha_difference = std::abs(r.solution_second.triple.y - alpha);
    for (Rational t : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
      NNParams<Rational> mix{t * r.first.af + (1 - t) * r.second.af,
                             t * r.first.delta + (1 - t) * r.second.delta};
      double a = solve_master(mix.to_step(), tol).triple.y;
      double gap = std::abs(a - alpha);
      r.combinations.push_back({t, mix, phi(mix), a, gap, gap > 1e3 * tol});
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // ex1: convex combination of two filling measures
  ////////////////////////////////////////////////////////////////////////

  struct Ex1Report {
    HyperbolaPoint first;
    HyperbolaPoint second;
    Rational t;
    double minkowski_first;
    double minkowski_second;
    MasterSolution<QuadraticSurd> solution_first;
    MasterSolution<QuadraticSurd> solution_second;
    StepOnS<double> mixture;
    MasterSolution<double> solution_mixture;
    double minkowski_mixture;
    double alpha_gap;  // |alpha(mixture) - 1/2|
    double tol;

    bool endpoints_filling() const {
      return std::abs(minkowski_first) <= tol
             && std::abs(minkowski_second) <= tol;
    }
    bool mixture_filling() const {
      return alpha_gap <= 1e3 * tol;
    }
  };

  inline Ex1Report example_ex1(Rational const& bbar1, Rational const& bbar2,
                               Rational const& t, double tol = 1e-12) {
    if (!(0 < t && t < 1)) {
      throw InvalidInput("ex1: t must lie in (0, 1)");
    }
    Ex1Report r;
    r.first            = hyperbola_point(bbar1);
    r.second           = hyperbola_point(bbar2);
    r.t                = t;
    r.tol              = tol;
    r.minkowski_first  = as_double(minkowski_residual(r.first.step));
    r.minkowski_second = as_double(minkowski_residual(r.second.step));
    r.solution_first   = solve_master(r.first.step, tol);
    r.solution_second  = solve_master(r.second.step, tol);
    r.mixture = mixture(as_double(t), r.first.step.to_double(),
                        r.second.step.to_double());
    r.solution_mixture  = solve_master(r.mixture, tol);
    r.minkowski_mixture = minkowski_residual(r.mixture);
    r.alpha_gap         = std::abs(r.solution_mixture.triple.y - 0.5);
    return r;
  }

  struct MinkowskiGridCheck {
    SimReport simulation;
    std::vector<double> grid;        // p values
    std::vector<double> max_abs_z;   // per grid point, against (1/2, p)
    double threshold;

    double min_over_grid() const {
      return *std::min_element(max_abs_z.begin(), max_abs_z.end());
    }
    // True when every p on the grid is rejected.
    bool rejects_minkowski_class() const {
      return min_over_grid() > threshold;
    }
  };

  //! Simulates `mu` and tests its cylinder frequencies against
  //! kappa^{alpha0, p} for p = 1/(n+1), ..., n/(n+1).
  template <Scalar W>
  MinkowskiGridCheck class_grid_check(GroupMeasure<W> const& mu,
                                      double alpha0, SimConfig const& cfg,
                                      std::size_t grid_points = 99,
                                      double threshold = 4.0) {
    if (grid_points == 0) {
      throw InvalidInput("grid needs at least one point");
    }
    MinkowskiGridCheck out{estimate_cylinder_frequencies(mu, cfg), {}, {},
                           threshold};
    for (std::size_t k = 1; k <= grid_points; ++k) {
      double p = static_cast<double>(k) / static_cast<double>(grid_points + 1);
      ZTable z = compare_with_analytic(out.simulation, {alpha0, p}, cfg.depth,
                                       threshold);
      out.grid.push_back(p);
      out.max_abs_z.push_back(z.max_abs_z);
    }
    return out;
  }

  template <Scalar W>
  MinkowskiGridCheck minkowski_grid_check(GroupMeasure<W> const& mu,
                                          SimConfig const& cfg,
                                          std::size_t grid_points = 99,
                                          double threshold = 4.0) {
    return class_grid_check(mu, 0.5, cfg, grid_points, threshold);
  }

  ////////////////////////////////////////////////////////////////////////
  // ex2: convolution of two filling measures
  ////////////////////////////////////////////////////////////////////////

  struct Ex2Report {
    HyperbolaPoint point;
    GroupMeasure<QuadraticSurd> mu1;
    GroupMeasure<QuadraticSurd> mu2;           // a mu1 a
    GroupMeasure<QuadraticSurd> convolution;   // mu1 * mu2
    GroupMeasure<QuadraticSurd> mu1a;          // mu1 translated by a
    GroupMeasure<QuadraticSurd> mu_prime;      // strip_identity(mu1 a)
    GroupMeasure<QuadraticSurd> mu_prime_formula;
    bool convolution_is_square;   // mu1 * mu2 == (mu1 a) * (mu1 a)
    bool mu_prime_matches;        // pipeline == closed formula, exactly
    StepOnS<QuadraticSurd> step_prime;
    QuadraticSurd minkowski_exact;
    double minkowski;
    QuadraticSurd witness;        // 2b^2 - 2b bb - bb^2
    QuadraticSurd hyperbola;      // hyperbola equation, 0 on the branch
    QuadraticSurd difference;     // hyperbola - witness = -2b + bb
    MasterSolution<QuadraticSurd> solution;
  };

  inline Ex2Report example_ex2(Rational const& bbar, double tol = 1e-12) {
    Ex2Report r;
    r.point = hyperbola_point(bbar);
    QuadraticSurd const& b = r.point.bf;
    QuadraticSurd const bb(bbar);
    GroupWord const a{Letter::A};

    r.mu1         = r.point.step.to_measure();
    r.mu2         = conjugate(r.mu1, a);
    r.convolution = convolve(r.mu1, r.mu2);
    r.mu1a        = translate_right(r.mu1, a);
    r.convolution_is_square = r.convolution == convolve(r.mu1a, r.mu1a);
    r.mu_prime    = strip_identity_renormalize(r.mu1a);

    QuadraticSurd const c = QuadraticSurd(1) / (QuadraticSurd(2) * b + bb);
    r.mu_prime_formula.add(GroupWord{Letter::B}, b * c);
    r.mu_prime_formula.add(GroupWord{Letter::B, Letter::A}, b * c);
    r.mu_prime_formula.add(GroupWord{Letter::Bbar, Letter::A}, bb * c);
    r.mu_prime_matches = r.mu_prime == r.mu_prime_formula;

    r.step_prime      = StepOnS<QuadraticSurd>::from_measure(r.mu_prime);
    r.minkowski_exact = minkowski_residual(r.step_prime);
    r.minkowski       = as_double(r.minkowski_exact);
    QuadraticSurd const two(2);
    r.witness    = two * b * b - two * b * bb - bb * bb;
    r.hyperbola  = hyperbola_equation(b, bb);
    r.difference = r.hyperbola - r.witness;
    r.solution   = solve_master(r.step_prime, tol);
    return r;
  }

}  // namespace modwalk
