#pragma once

// Reduced words in the free product Z2 * Z3 = <a | a^2> * <b | b^3>, which is
// isomorphic to the modular group PSL(2, Z).

#include <algorithm>
#include <array>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace modwalk {

  // External characters: 'a', 'b', and 'B' for b-bar = b^{-1} = b^2.
  enum class Letter : char { A = 'a', B = 'b', Bbar = 'B' };

  constexpr bool is_b_type(Letter l) noexcept {
    return l != Letter::A;
  }

  constexpr Letter inverse(Letter l) noexcept {
    switch (l) {
      case Letter::A:
        return Letter::A;
      case Letter::B:
        return Letter::Bbar;
      case Letter::Bbar:
        return Letter::B;
    }
    return l;
  }

  constexpr char to_char(Letter l) noexcept {
    return static_cast<char>(l);
  }

  //! A reduced word of the group: letters alternate between `a` and the
  //! b-type letters {b, B}. The empty word is the identity e.
  //!
  //! Reduction is eager; every product is stored in normal form.
  class GroupWord {
   public:
    GroupWord() = default;

    GroupWord(std::initializer_list<Letter> letters) {
      for (Letter l : letters) {
        push_back(l);
      }
    }

    static GroupWord identity() {
      return {};
    }

    // Throws InvalidInput on characters outside {a, b, B} or on non-reduced
    // adjacency such as "aa" or "bB".
    static GroupWord parse(std::string_view s) {
      GroupWord w;
      for (char c : s) {
        Letter l;
        switch (c) {
          case 'a':
            l = Letter::A;
            break;
          case 'b':
            l = Letter::B;
            break;
          case 'B':
            l = Letter::Bbar;
            break;
          default:
            throw InvalidInput("invalid letter '" + std::string(1, c)
                               + "' in word \"" + std::string(s) + "\"");
        }
        if (!w._letters.empty()
            && is_b_type(w._letters.back()) == is_b_type(l)) {
          throw InvalidInput("non-admissible adjacency in word \""
                             + std::string(s) + "\"");
        }
        w._letters.push_back(l);
      }
      return w;
    }

    std::string str() const {
      std::string s;
      s.reserve(_letters.size());
      for (Letter l : _letters) {
        s.push_back(to_char(l));
      }
      return s;
    }

    std::size_t length() const noexcept {
      return _letters.size();
    }
    bool empty() const noexcept {
      return _letters.empty();
    }
    bool is_identity() const noexcept {
      return _letters.empty();
    }
    std::span<Letter const> letters() const noexcept {
      return _letters;
    }
    Letter operator[](std::size_t i) const {
      return _letters[i];
    }
    Letter front() const {
      return _letters.front();
    }
    Letter back() const {
      return _letters.back();
    }

    // Number of `a` letters.
    std::size_t count_a() const noexcept {
      std::size_t n = 0;
      for (Letter l : _letters) {
        n += l == Letter::A;
      }
      return n;
    }

    GroupWord prefix(std::size_t n) const {
      GroupWord w;
      w._letters.assign(_letters.begin(),
                        _letters.begin()
                            + static_cast<std::ptrdiff_t>(
                                std::min(n, _letters.size())));
      return w;
    }

    bool starts_with(GroupWord const& p) const noexcept {
      if (p.length() > length()) {
        return false;
      }
      for (std::size_t i = 0; i < p.length(); ++i) {
        if (_letters[i] != p._letters[i]) {
          return false;
        }
      }
      return true;
    }

    // Right multiplication by a single generator, reducing at the tail.
    GroupWord& push_back(Letter l) {
      if (_letters.empty()) {
        _letters.push_back(l);
        return *this;
      }
      Letter top = _letters.back();
      if (l == Letter::A) {
        if (top == Letter::A) {
          _letters.pop_back();
        } else {
          _letters.push_back(l);
        }
        return *this;
      }
      if (!is_b_type(top)) {
        _letters.push_back(l);
        return *this;
      }
      // Both in Z3: b*b = B, B*B = b, b*B = e.
      _letters.pop_back();
      if (top == l) {
        _letters.push_back(modwalk::inverse(l));
      }
      return *this;
    }

    GroupWord& operator*=(GroupWord const& rhs) {
      // Copy first so that w *= w is well defined.
      if (&rhs == this) {
        GroupWord copy = rhs;
        return *this *= copy;
      }
      for (Letter l : rhs._letters) {
        push_back(l);
      }
      return *this;
    }

    friend GroupWord operator*(GroupWord lhs, GroupWord const& rhs) {
      return lhs *= rhs;
    }

    GroupWord inverse() const {
      GroupWord w;
      w._letters.reserve(_letters.size());
      for (auto it = _letters.rbegin(); it != _letters.rend(); ++it) {
        w._letters.push_back(modwalk::inverse(*it));
      }
      return w;
    }

    // Swap b <-> B, the automorphism exchanging the two b-type generators.
    GroupWord swapped() const {
      GroupWord w = *this;
      for (Letter& l : w._letters) {
        if (is_b_type(l)) {
          l = modwalk::inverse(l);
        }
      }
      return w;
    }

    friend bool operator==(GroupWord const&, GroupWord const&) = default;

    // Shortlex order, so that printed measures list short words first.
    friend bool operator<(GroupWord const& l, GroupWord const& r) {
      if (l.length() != r.length()) {
        return l.length() < r.length();
      }
      return l._letters < r._letters;
    }

    friend std::ostream& operator<<(std::ostream& os, GroupWord const& w) {
      return os << (w.empty() ? std::string("e") : w.str());
    }

   private:
    std::vector<Letter> _letters;
  };

  inline GroupWord reduce_concat(GroupWord const& u, GroupWord const& v) {
    return u * v;
  }

  inline GroupWord inverse(GroupWord const& w) {
    return w.inverse();
  }

  inline std::size_t word_length(GroupWord const& w) noexcept {
    return w.length();
  }

  inline GroupWord parse_word(std::string_view s) {
    return GroupWord::parse(s);
  }

  inline std::string format_word(GroupWord const& w) {
    return w.str();
  }

  // Length of the longest common prefix.
  inline std::size_t gromov_product(GroupWord const& u, GroupWord const& v) {
    std::size_t n = std::min(u.length(), v.length());
    std::size_t i = 0;
    while (i < n && u[i] == v[i]) {
      ++i;
    }
    return i;
  }

  // All reduced words of length exactly n, in shortlex order.
  inline std::vector<GroupWord> words_of_length(std::size_t n) {
    std::vector<GroupWord> out;
    if (n == 0) {
      out.emplace_back();
      return out;
    }
    for (GroupWord const& w : words_of_length(n - 1)) {
      for (Letter l : {Letter::Bbar, Letter::A, Letter::B}) {
        if (!w.empty() && is_b_type(w.back()) == is_b_type(l)) {
          continue;
        }
        GroupWord x = w;
        x.push_back(l);
        out.push_back(std::move(x));
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // PSL(2, Z) representation
  ////////////////////////////////////////////////////////////////////////

  //! Integer 2x2 matrix [[a, b], [c, d]].
  struct Matrix2 {
    Integer a = 1, b = 0, c = 0, d = 1;

    friend Matrix2 operator*(Matrix2 const& x, Matrix2 const& y) {
      return {x.a * y.a + x.b * y.c,
              x.a * y.b + x.b * y.d,
              x.c * y.a + x.d * y.c,
              x.c * y.b + x.d * y.d};
    }

    Integer det() const {
      return a * d - b * c;
    }

    // Representative modulo +-I: the first nonzero entry of the top row is
    // positive.
    Matrix2 canonical() const {
      bool flip = a != 0 ? a < 0 : b < 0;
      if (!flip) {
        return *this;
      }
      return {-a, -b, -c, -d};
    }

    friend bool operator==(Matrix2 const&, Matrix2 const&) = default;

    friend std::ostream& operator<<(std::ostream& os, Matrix2 const& m) {
      return os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d
                << "]]";
    }
  };

  // a -> S : z -> -1/z,  b -> T : z -> -1/(z+1),  B -> T^2.
  inline Matrix2 generator_matrix(Letter l) {
    switch (l) {
      case Letter::A:
        return {0, -1, 1, 0};
      case Letter::B:
        return {0, -1, 1, 1};
      case Letter::Bbar:
        return {-1, -1, 1, 0};
    }
    return {};
  }

  inline Matrix2 word_to_matrix(GroupWord const& w) {
    Matrix2 m;
    for (Letter l : w.letters()) {
      m = m * generator_matrix(l);
    }
    return m.canonical();
  }

}  // namespace modwalk
