#include <catch_amalgamated.hpp>

#include <cmath>

#include <modwalk/denjoy.hpp>

#include "support/generators.hpp"

using namespace modwalk;

namespace {
  DenjoyParams<Rational> random_params(SplitMix64& rng) {
    return {testing::random_open_unit(rng, 50),
            testing::random_open_unit(rng, 50)};
  }

  GroupMeasure<Rational> letac_piccioni() {
    GroupMeasure<Rational> mu;
    for (char const* w : {"b", "ba", "ab", "aba", "B", "Ba", "aB", "aBa", "a"}) {
      mu.add(GroupWord::parse(w), Rational(1, 9));
    }
    return mu;
  }
}  // namespace

TEST_CASE("parameterizations round trip exactly") {
  SplitMix64 rng(41);
  for (int i = 0; i < 200; ++i) {
    DenjoyParams<Rational> d = random_params(rng);
    PiWeights<Rational> w    = params_to_pi(d);
    CHECK(w.is_normalized());
    CHECK(pi_to_params(w) == d);
    CHECK(solve_rn_problem(w) == d);
    CHECK(markov_base_to_params(params_to_markov_base(d)) == d);
    CHECK(swap_involution(swap_involution(d)) == d);
  }
  PiWeights<Rational> off{Rational(1), Rational(1, 2), Rational(1, 3)};
  CHECK_THROWS_AS(pi_to_params(off), NotNormalized);
  CHECK_THROWS_AS(solve_rn_problem(off), NotNormalized);
  CHECK_THROWS_AS((DenjoyParams<Rational>{Rational(0), Rational(1, 2)}.validate()),
                  InvalidInput);
}

TEST_CASE("cylinder masses form a probability measure") {
  SplitMix64 rng(42);
  for (int i = 0; i < 20; ++i) {
    DenjoyParams<Rational> d = random_params(rng);
    for (std::size_t depth = 1; depth <= 6; ++depth) {
      CHECK(family_mass(d, cylinders_at_depth(depth)) == 1);
    }
    for (Cylinder const& c : cylinders_up_to_depth(5)) {
      auto [l, r] = c.children();
      CHECK(cylinder_mass(d, l) + cylinder_mass(d, r) == cylinder_mass(d, c));
      CHECK(cylinder_mass(swap_involution(d), c.swapped())
            == cylinder_mass(d, c));
    }
  }
  DenjoyParams<Rational> d{Rational(1, 3), Rational(1, 4)};
  CHECK(cylinder_mass(d, Cylinder::parse("a")) == Rational(1, 4));
  CHECK(cylinder_mass(d, Cylinder::parse("aba")) == Rational(1, 12));
  CHECK(cylinder_mass(d, Cylinder::parse("Ba")) == Rational(1, 2));
}

TEST_CASE("Hausdorff constants") {
  HausdorffConstants h = hausdorff_constants();
  CHECK(h.dimension == Catch::Approx(std::log(2.0) / 2));
  QuadraticSurd root2 = QuadraticSurd::sqrt(2);
  CHECK(h.params.p == QuadraticSurd(1) / (QuadraticSurd(1) + root2));
  PiWeights<QuadraticSurd> w = params_to_pi(h.params);
  CHECK(w.pi_a == root2 / QuadraticSurd(2));
  for (Cylinder const& c : cylinders_up_to_depth(10)) {
    if (c.starts_with_a()) {
      double lhs = component_mass(0.5, c) / std::sqrt(2.0);
      CHECK(std::abs(lhs - std::pow(c.diameter(), h.dimension)) <= 1e-12);
    }
  }
}

TEST_CASE("Radon-Nikodym derivative matches the multiplicative cocycle") {
  SplitMix64 rng(43);
  for (int i = 0; i < 300; ++i) {
    DenjoyParams<Rational> d = random_params(rng);
    PiWeights<Rational> w    = params_to_pi(d);
    GroupWord g = testing::random_word(rng, rng.below(5));
    Cylinder c  = testing::random_cylinder(rng, g.length() + 2 + rng.below(2));
    Cylinder back(g.inverse() * c.prefix());
    CHECK(rn_derivative(d, g, c) == pi_product(w, back) / pi_product(w, c));
  }
}

TEST_CASE("Radon-Nikodym derivative of the generators") {
  DenjoyParams<Rational> d{Rational(2, 7), Rational(1, 3)};
  PiWeights<Rational> w = params_to_pi(d);
  GroupWord a{Letter::A};
  GroupWord b{Letter::B};
  for (Cylinder const& c : cylinders_at_depth(3)) {
    Rational expect_a = c.starts_with_a() ? 1 / w.pi_a : w.pi_a;
    CHECK(rn_derivative(d, a, c) == expect_a);
    Rational expect_b;
    if (c.starts_with_a()) {
      expect_b = w.pi_bbar_a / w.pi_a;
    } else if (c.prefix().front() == Letter::B) {
      expect_b = w.pi_a / w.pi_ba;
    } else {
      expect_b = w.pi_ba / w.pi_bbar_a;
    }
    CHECK(rn_derivative(d, b, c) == expect_b);
  }
  CHECK_THROWS_AS(rn_derivative(d, a, Cylinder::parse("a")), InvalidInput);
}

TEST_CASE("stationarity") {
  DenjoyParams<Rational> half{Rational(1, 2), Rational(1, 2)};
  CHECK(check_stationarity(half, letac_piccioni(), 8) == 0.0);
  DenjoyParams<Rational> off{Rational(1, 2), Rational(2, 5)};
  CHECK(check_stationarity(off, letac_piccioni(), 3) > 1e-3);
  GroupMeasure<Rational> sym{{GroupWord{Letter::A}, Rational(1, 3)},
                             {GroupWord{Letter::B}, Rational(1, 3)},
                             {GroupWord{Letter::Bbar}, Rational(1, 3)}};
  CHECK(check_stationarity(off, sym, 8) == 0.0);
  CHECK_THROWS_AS(check_stationarity(off, sym, 0), InvalidInput);
}
