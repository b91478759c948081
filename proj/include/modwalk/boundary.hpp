#pragma once

// The boundary of Z2 * Z3 as the space of admissible infinite words, and its
// cylinder sets (shadows).

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <ostream>
#include <set>
#include <utility>
#include <vector>

#include "error.hpp"
#include "group.hpp"

namespace modwalk {

  //! Cylinder set of all infinite words beginning with a prefix g.
  //!
  //! The prefix is canonical: nonempty, reduced, and ending in `a`. Since the
  //! shadow of g equals the shadow of ga when g ends in a b-type letter, every
  //! shadow has exactly one such representative. The depth of a cylinder is
  //! its level in the cylinder tree, i.e. the number of `a` letters in the
  //! prefix; the three root cylinders have depth 1.
  class Cylinder {
   public:
    explicit Cylinder(GroupWord prefix) : _prefix(std::move(prefix)) {
      if (_prefix.empty() || _prefix.back() != Letter::A) {
        throw InvalidInput("cylinder prefix must be nonempty and end in a: \""
                           + _prefix.str() + "\"");
      }
    }

    // Shadow of an arbitrary nonidentity element, canonicalized.
    static Cylinder shadow_of(GroupWord g) {
      if (g.empty()) {
        throw InvalidInput("the identity has no shadow");
      }
      if (g.back() != Letter::A) {
        g.push_back(Letter::A);
      }
      return Cylinder(std::move(g));
    }

    static Cylinder parse(std::string_view s) {
      return shadow_of(GroupWord::parse(s));
    }

    GroupWord const& prefix() const noexcept {
      return _prefix;
    }

    std::size_t depth() const noexcept {
      return _prefix.count_a();
    }

    // True for cylinders inside the shadow of a.
    bool starts_with_a() const noexcept {
      return _prefix.front() == Letter::A;
    }

    std::pair<Cylinder, Cylinder> children() const {
      GroupWord left  = _prefix;
      GroupWord right = _prefix;
      left.push_back(Letter::B).push_back(Letter::A);
      right.push_back(Letter::Bbar).push_back(Letter::A);
      return {Cylinder(std::move(left)), Cylinder(std::move(right))};
    }

    // Parent in the cylinder tree; nullopt for the three roots.
    std::optional<Cylinder> parent() const {
      if (_prefix.length() < 3) {
        return std::nullopt;
      }
      return Cylinder(_prefix.prefix(_prefix.length() - 2));
    }

    // diam = e^{-|g|} for the ultrametric e^{-(gromov product)}.
    double diameter() const {
      return std::exp(-static_cast<double>(_prefix.length()));
    }

    bool contains(Cylinder const& other) const noexcept {
      return other._prefix.starts_with(_prefix);
    }

    Cylinder swapped() const {
      return Cylinder(_prefix.swapped());
    }

    std::string str() const {
      return _prefix.str();
    }

    friend bool operator==(Cylinder const&, Cylinder const&) = default;
    friend bool operator<(Cylinder const& l, Cylinder const& r) {
      return l._prefix < r._prefix;
    }
    friend std::ostream& operator<<(std::ostream& os, Cylinder const& c) {
      return os << "C_" << c._prefix.str();
    }

   private:
    GroupWord _prefix;
  };

  // {C_a, C_ba, C_Ba}: a partition of the whole boundary.
  inline std::array<Cylinder, 3> cylinder_partition_root() {
    return {Cylinder(GroupWord{Letter::A}),
            Cylinder(GroupWord{Letter::B, Letter::A}),
            Cylinder(GroupWord{Letter::Bbar, Letter::A})};
  }

  inline std::pair<Cylinder, Cylinder> cylinder_children(Cylinder const& c) {
    return c.children();
  }

  inline double cylinder_diameter(Cylinder const& c) {
    return c.diameter();
  }

  // The 3 * 2^{depth-1} cylinders of the given depth, in shortlex order.
  inline std::vector<Cylinder> cylinders_at_depth(std::size_t depth) {
    if (depth == 0) {
      throw InvalidInput("cylinder depth must be at least 1");
    }
    auto roots = cylinder_partition_root();
    std::vector<Cylinder> level(roots.begin(), roots.end());
    for (std::size_t d = 1; d < depth; ++d) {
      std::vector<Cylinder> next;
      next.reserve(level.size() * 2);
      for (Cylinder const& c : level) {
        auto [l, r] = c.children();
        next.push_back(std::move(l));
        next.push_back(std::move(r));
      }
      level = std::move(next);
    }
    std::sort(level.begin(), level.end());
    return level;
  }

  inline std::vector<Cylinder> cylinders_up_to_depth(std::size_t depth) {
    std::vector<Cylinder> out;
    for (std::size_t d = 1; d <= depth; ++d) {
      auto level = cylinders_at_depth(d);
      out.insert(out.end(), level.begin(), level.end());
    }
    return out;
  }

  // Subcylinders of c whose prefixes have at least min_length letters.
  inline std::vector<Cylinder> refine_to_length(Cylinder const& c,
                                                std::size_t min_length) {
    std::vector<Cylinder> out{c};
    while (out.front().prefix().length() < min_length) {
      std::vector<Cylinder> next;
      next.reserve(out.size() * 2);
      for (Cylinder const& x : out) {
        auto [l, r] = x.children();
        next.push_back(std::move(l));
        next.push_back(std::move(r));
      }
      out = std::move(next);
    }
    return out;
  }

  // Replaces every pair of sibling cylinders by their parent until no pair
  // remains. The union of the family is unchanged.
  inline std::vector<Cylinder> coarsen(std::vector<Cylinder> family) {
    std::set<Cylinder> pool(family.begin(), family.end());
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = pool.begin(); it != pool.end(); ++it) {
        auto parent = it->parent();
        if (!parent) {
          continue;
        }
        auto [l, r] = parent->children();
        if (pool.contains(l) && pool.contains(r)) {
          pool.erase(l);
          pool.erase(r);
          pool.insert(*parent);
          changed = true;
          break;
        }
      }
    }
    return {pool.begin(), pool.end()};
  }

  //! The image h C as a minimal family of disjoint cylinders.
  //!
  //! C is refined until every prefix has at least |h| + 2 letters, so that
  //! reducing h g' cannot reach the final `b a` / `B a` pair of a refined
  //! prefix g'. Each refined piece then maps onto the single cylinder of the
  //! reduced word h g', and sibling images are merged back.
  inline std::vector<Cylinder> act_on_cylinder(GroupWord const& h,
                                               Cylinder const& c) {
    std::vector<Cylinder> images;
    for (Cylinder const& piece : refine_to_length(c, h.length() + 2)) {
      images.emplace_back(h * piece.prefix());
    }
    return coarsen(std::move(images));
  }

  // Cylinder of the requested depth containing every infinite word that
  // extends `w`, or nullopt when w has fewer than `depth` letters `a`.
  inline std::optional<Cylinder> cylinder_of_prefix(GroupWord const& w,
                                                    std::size_t depth) {
    if (depth == 0) {
      throw InvalidInput("cylinder depth must be at least 1");
    }
    std::size_t seen = 0;
    for (std::size_t i = 0; i < w.length(); ++i) {
      if (w[i] == Letter::A && ++seen == depth) {
        return Cylinder(w.prefix(i + 1));
      }
    }
    return std::nullopt;
  }

}  // namespace modwalk
