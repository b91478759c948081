#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include <modwalk/boundary.hpp>

#include "support/generators.hpp"

using namespace modwalk;

namespace {
  Cylinder cyl(char const* s) {
    return Cylinder::parse(s);
  }

  std::set<Cylinder> as_set(std::vector<Cylinder> const& v) {
    return {v.begin(), v.end()};
  }

  bool family_contains(std::vector<Cylinder> const& fam, GroupWord const& xi) {
    for (Cylinder const& c : fam) {
      if (xi.starts_with(c.prefix())) {
        return true;
      }
    }
    return false;
  }
}  // namespace

TEST_CASE("canonical prefixes") {
  CHECK_THROWS_AS(Cylinder(GroupWord::parse("ab")), InvalidInput);
  CHECK_THROWS_AS(Cylinder(GroupWord{}), InvalidInput);
  CHECK(Cylinder::shadow_of(GroupWord::parse("ab")) == cyl("aba"));
  CHECK(cyl("a").depth() == 1);
  CHECK(cyl("ba").depth() == 1);
  CHECK(cyl("abaBa").depth() == 3);
  CHECK(cyl("ba").parent() == std::nullopt);
  CHECK(cyl("abaBa").parent() == cyl("aba"));
  auto [l, r] = cyl("Ba").children();
  CHECK(l == cyl("Baba"));
  CHECK(r == cyl("BaBa"));
  CHECK(cyl("aba").diameter() == Catch::Approx(std::exp(-3.0)));
}

TEST_CASE("cylinders of a fixed depth partition the boundary") {
  for (std::size_t d = 1; d <= 8; ++d) {
    auto level = cylinders_at_depth(d);
    CHECK(level.size() == 3 * (std::size_t{1} << (d - 1)));
    for (std::size_t i = 0; i < level.size(); ++i) {
      CHECK(level[i].depth() == d);
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        CHECK_FALSE(level[i].contains(level[j]));
        CHECK_FALSE(level[j].contains(level[i]));
      }
    }
  }
  CHECK_THROWS_AS(cylinders_at_depth(0), InvalidInput);
}

TEST_CASE("action of generators on root cylinders") {
  GroupWord a{Letter::A};
  GroupWord b{Letter::B};
  CHECK(as_set(act_on_cylinder(a, cyl("a"))) == std::set{cyl("ba"), cyl("Ba")});
  CHECK(act_on_cylinder(a, cyl("ba")) == std::vector{cyl("aba")});
  CHECK(act_on_cylinder(b, cyl("Ba")) == std::vector{cyl("a")});
  CHECK(act_on_cylinder(GroupWord{}, cyl("aba")) == std::vector{cyl("aba")});
}

TEST_CASE("action agrees with pointwise action on long words") {
  SplitMix64 rng(21);
  for (int i = 0; i < 300; ++i) {
    GroupWord h = testing::random_word(rng, rng.below(6));
    Cylinder c  = testing::random_cylinder(rng, 1 + rng.below(4));
    auto image  = act_on_cylinder(h, c);
    for (int k = 0; k < 20; ++k) {
      // A long reduced word stands in for a boundary point; its first
      // letters are unaffected by multiplication with short h.
      GroupWord xi = testing::random_word(rng, 40);
      GroupWord pre = h.inverse() * xi;
      CHECK(family_contains(image, xi) == pre.starts_with(c.prefix()));
    }
  }
}

TEST_CASE("action is compatible with composition") {
  SplitMix64 rng(22);
  for (int i = 0; i < 200; ++i) {
    GroupWord g = testing::random_word(rng, rng.below(4));
    GroupWord h = testing::random_word(rng, rng.below(4));
    Cylinder c  = testing::random_cylinder(rng, 1 + rng.below(3));
    std::vector<Cylinder> two_step;
    for (Cylinder const& x : act_on_cylinder(h, c)) {
      auto y = act_on_cylinder(g, x);
      two_step.insert(two_step.end(), y.begin(), y.end());
    }
    CHECK(as_set(coarsen(two_step)) == as_set(act_on_cylinder(g * h, c)));
  }
}

TEST_CASE("refine and coarsen") {
  auto pieces = refine_to_length(cyl("a"), 5);
  CHECK(pieces.size() == 4);
  CHECK(coarsen(pieces) == std::vector{cyl("a")});
  auto all = cylinders_at_depth(4);
  auto roots = coarsen(all);
  CHECK(as_set(roots) == std::set{cyl("a"), cyl("ba"), cyl("Ba")});
}

TEST_CASE("cylinder of a prefix") {
  GroupWord w = GroupWord::parse("babaBab");
  CHECK(cylinder_of_prefix(w, 1) == cyl("ba"));
  CHECK(cylinder_of_prefix(w, 3) == cyl("babaBa"));
  CHECK(cylinder_of_prefix(w, 4) == std::nullopt);
  CHECK(cyl("aba").swapped() == cyl("aBa"));
}
