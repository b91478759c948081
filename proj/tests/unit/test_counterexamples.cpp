#include <catch_amalgamated.hpp>

#include <cmath>
#include <fstream>

#include <json.hpp>

#include <modwalk/counterexamples.hpp>
#include <modwalk/io.hpp>

using namespace modwalk;
using R = Rational;

namespace {
  nlohmann::json load_fixture() {
    std::ifstream in(std::string(MODWALK_DATA_DIR) + "/ex0_fixture.json");
    REQUIRE(in);
    return nlohmann::json::parse(in);
  }

  NNParams<R> nn_from(nlohmann::json const& j) {
    return {parse_rational(j["af"].get<std::string>()),
            parse_rational(j["delta"].get<std::string>())};
  }
}  // namespace

TEST_CASE("ex0 fixture file agrees with the code") {
  nlohmann::json f = load_fixture();
  CHECK(nn_from(f["first"]) == ex0_fixture_first());
  CHECK(nn_from(f["second"]) == ex0_fixture_second());
  LevelSetPair found = ex0_level_set_search(f["search_max_den"].get<unsigned>());
  CHECK(found.first == ex0_fixture_first());
  CHECK(found.second == ex0_fixture_second());
  CHECK(found.phi == parse_rational(f["phi"].get<std::string>()));
  CHECK(std::abs(found.gap - f["mixture_gaps"]["1/2"].get<double>()) <= 1e-6);
}

TEST_CASE("ex0 report") {
  nlohmann::json f = load_fixture();
  Ex0Report r = example_ex0();
  CHECK(r.phi_first == r.phi_second);
  CHECK(r.equal_alpha());
  double alpha = f["alpha"].get<double>();
  CHECK(std::abs(r.solution_first.triple.y - alpha) <= 1e-12);
  CHECK(std::abs(r.solution_second.triple.y - alpha) <= 1e-12);
  CHECK(r.solution_first.max_residual() <= f["residual_bound"].get<double>());
  CHECK(r.solution_second.max_residual() <= f["residual_bound"].get<double>());
  REQUIRE(r.combinations.size() == 3);
  for (auto const& c : r.combinations) {
    CHECK(c.separated);
    CHECK(c.phi != r.phi_first);
    double expected = f["mixture_gaps"][to_string(c.t)].get<double>();
    CHECK(std::abs(c.gap - expected) <= f["gap_tol"].get<double>());
  }
  CHECK(r.all_separated());
}

TEST_CASE("ex1 endpoints fill, the mixture does not") {
  Ex1Report r = example_ex1(R(1, 2), R(1, 3), R(1, 2));
  CHECK(r.minkowski_first == 0.0);
  CHECK(r.minkowski_second == 0.0);
  CHECK(r.endpoints_filling());
  CHECK(std::abs(r.solution_first.triple.y - 0.5) <= 1e-12);
  CHECK(std::abs(r.solution_second.triple.y - 0.5) <= 1e-12);
  CHECK(std::abs(r.mixture.total() - 1.0) <= 1e-15);
  CHECK(std::abs(r.solution_mixture.triple.y - 0.49829540519699167) <= 1e-12);
  CHECK(r.alpha_gap > 1e-3);
  CHECK_FALSE(r.mixture_filling());
  CHECK(std::abs(r.minkowski_mixture) > 1e-3);
  CHECK_THROWS_AS(example_ex1(R(1, 2), R(1, 3), R(1)), InvalidInput);
  // Equal endpoints give a filling mixture.
  CHECK(example_ex1(R(1, 2), R(1, 2), R(1, 3)).mixture_filling());
}

TEST_CASE("ex2 convolution is exact") {
  Ex2Report r = example_ex2(R(1, 2));
  CHECK(r.convolution_is_square);
  CHECK(r.mu_prime_matches);
  QuadraticSurd const s7(R(0), R(1), R(7));
  CHECK(r.mu_prime.mass(GroupWord{Letter::B})
        == QuadraticSurd(R(5, 18)) - QuadraticSurd(R(1, 18)) * s7);
  CHECK(r.mu_prime.mass(GroupWord{Letter::Bbar, Letter::A})
        == QuadraticSurd(R(4, 9)) + QuadraticSurd(R(1, 9)) * s7);
  CHECK(r.minkowski_exact
        == QuadraticSurd(R(20, 81)) + QuadraticSurd(R(14, 81)) * s7);
  CHECK(r.minkowski == Catch::Approx(0.704204).epsilon(1e-6));
  CHECK(r.hyperbola == 0);
  CHECK(r.difference == QuadraticSurd(R(-1)) + QuadraticSurd(R(1, 2)) * s7);
  CHECK(r.difference == r.hyperbola - r.witness);
  CHECK(std::abs(r.solution.triple.y - 0.22768771132020893) <= 1e-12);
  CHECK(r.solution.max_residual() <= 1e-12);

  for (R bb : {R(1, 5), R(2, 3), R(9, 10)}) {
    Ex2Report q = example_ex2(bb);
    CHECK(q.mu_prime_matches);
    CHECK(q.convolution_is_square);
    CHECK(q.minkowski_exact != 0);
  }
}

TEST_CASE("grid check rejects a non-filling walk") {
  Ex1Report r = example_ex1(R(1, 2), R(1, 3), R(1, 2));
  SimConfig cfg;
  cfg.paths = 20000;
  cfg.seed  = 3;
  GroupMeasure<double> mu = r.mixture.to_measure();
  MinkowskiGridCheck own = class_grid_check(mu, r.solution_mixture.triple.y,
                                            cfg, 19);
  CHECK(own.grid.size() == 19);
  CHECK(own.max_abs_z.size() == 19);
  CHECK_FALSE(own.rejects_minkowski_class());
  // alpha = 0.3 is far from the truth.
  CHECK(class_grid_check(mu, 0.3, cfg, 19).rejects_minkowski_class());
  CHECK_THROWS_AS(class_grid_check(mu, 0.5, cfg, 0), InvalidInput);
}
