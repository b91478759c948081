#pragma once

#include <map>
#include <ostream>
#include <utility>

#include "error.hpp"
#include "group.hpp"
#include "scalar.hpp"

namespace modwalk {

  //! Finitely supported nonnegative measure on the group.
  //!
  //! Only strictly positive weights are stored. With an exact weight type
  //! (Rational, QuadraticSurd) all operations are exact, and equality of
  //! measures is an identity test.
  template <Scalar W>
  class GroupMeasure {
   public:
    using weight_type    = W;
    using container_type = std::map<GroupWord, W>;
    using const_iterator = typename container_type::const_iterator;

    GroupMeasure() = default;

    GroupMeasure(std::initializer_list<std::pair<GroupWord, W>> init) {
      for (auto const& [g, w] : init) {
        add(g, w);
      }
    }

    static GroupMeasure dirac(GroupWord g) {
      GroupMeasure m;
      m.add(std::move(g), from_int<W>(1));
      return m;
    }

    // Adds mass w at g; zero contributions are dropped.
    GroupMeasure& add(GroupWord const& g, W const& w) {
      if (sign_of(w) < 0) {
        throw InvalidInput("negative weight at " + g.str());
      }
      if (sign_of(w) == 0) {
        return *this;
      }
      auto it = _weights.find(g);
      if (it == _weights.end()) {
        _weights.emplace(g, w);
      } else {
        it->second = it->second + w;
      }
      return *this;
    }

    W mass(GroupWord const& g) const {
      auto it = _weights.find(g);
      return it == _weights.end() ? from_int<W>(0) : it->second;
    }

    W total() const {
      W s = from_int<W>(0);
      for (auto const& [g, w] : _weights) {
        s = s + w;
      }
      return s;
    }

    bool is_probability(double tol = 1e-12) const {
      return nearly_equal(total(), from_int<W>(1), tol);
    }

    std::size_t size() const noexcept {
      return _weights.size();
    }
    bool empty() const noexcept {
      return _weights.empty();
    }
    const_iterator begin() const noexcept {
      return _weights.begin();
    }
    const_iterator end() const noexcept {
      return _weights.end();
    }

    template <Scalar U, typename F>
    GroupMeasure<U> transform(F&& f) const {
      GroupMeasure<U> out;
      for (auto const& [g, w] : _weights) {
        out.add(g, f(w));
      }
      return out;
    }

    // Same measure with weights rounded to double.
    GroupMeasure<double> to_double() const {
      return transform<double>([](W const& w) { return as_double(w); });
    }

    friend bool operator==(GroupMeasure const& l, GroupMeasure const& r) {
      return l._weights == r._weights;
    }

    friend std::ostream& operator<<(std::ostream& os, GroupMeasure const& m) {
      os << "{";
      bool first = true;
      for (auto const& [g, w] : m._weights) {
        os << (first ? "" : ", ") << g << ": " << ScalarTraits<W>::str(w);
        first = false;
      }
      return os << "}";
    }

   private:
    container_type _weights;
  };

  namespace detail {
    template <Scalar W>
    void require_probability(GroupMeasure<W> const& m, char const* what) {
      if (!m.is_probability()) {
        throw InvalidInput(std::string(what)
                           + ": input is not a probability measure");
      }
    }
  }  // namespace detail

  // (m1 * m2)(g) = sum_h m1(h) m2(h^{-1} g).
  template <Scalar W>
  GroupMeasure<W> convolve(GroupMeasure<W> const& m1,
                           GroupMeasure<W> const& m2) {
    detail::require_probability(m1, "convolve");
    detail::require_probability(m2, "convolve");
    GroupMeasure<W> out;
    for (auto const& [h1, w1] : m1) {
      for (auto const& [h2, w2] : m2) {
        out.add(h1 * h2, w1 * w2);
      }
    }
    return out;
  }

  // Mass at h moves to h g.
  template <Scalar W>
  GroupMeasure<W> translate_right(GroupMeasure<W> const& m,
                                  GroupWord const& g) {
    GroupMeasure<W> out;
    for (auto const& [h, w] : m) {
      out.add(h * g, w);
    }
    return out;
  }

  // Mass at h moves to g h g^{-1}.
  template <Scalar W>
  GroupMeasure<W> conjugate(GroupMeasure<W> const& m, GroupWord const& g) {
    GroupWord gi = g.inverse();
    GroupMeasure<W> out;
    for (auto const& [h, w] : m) {
      out.add(g * h * gi, w);
    }
    return out;
  }

  // Removes the atom at e and renormalizes; the lazy walk has the same
  // harmonic measure.
  template <Scalar W>
  GroupMeasure<W> strip_identity_renormalize(GroupMeasure<W> const& m) {
    detail::require_probability(m, "strip_identity_renormalize");
    W at_e = m.mass(GroupWord::identity());
    W rest = from_int<W>(1) - at_e;
    if (sign_of(rest) <= 0) {
      throw InvalidInput("strip_identity_renormalize: all mass is at e");
    }
    GroupMeasure<W> out;
    for (auto const& [h, w] : m) {
      if (!h.is_identity()) {
        out.add(h, w / rest);
      }
    }
    return out;
  }

  // t m1 + (1 - t) m2.
  template <Scalar W>
  GroupMeasure<W> mixture(W const& t, GroupMeasure<W> const& m1,
                          GroupMeasure<W> const& m2) {
    GroupMeasure<W> out;
    W s = from_int<W>(1) - t;
    for (auto const& [h, w] : m1) {
      out.add(h, t * w);
    }
    for (auto const& [h, w] : m2) {
      out.add(h, s * w);
    }
    return out;
  }

}  // namespace modwalk
