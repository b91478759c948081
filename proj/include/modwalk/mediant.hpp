#pragma once

// Mediant (Stern-Brocot) encoding of the extended positive ray by words in
// {L, R}, continued fractions, and the boundary correspondence from
// admissible words to the extended real line.

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "rational.hpp"

namespace modwalk {

  //! Extended rational p/q in lowest terms with q >= 0; 1/0 is +infinity and
  //! -1/0 is -infinity.
  class ExtRational {
   public:
    ExtRational() : _num(0), _den(1) {}
    ExtRational(Integer num, Integer den) : _num(std::move(num)),
                                            _den(std::move(den)) {
      normalize();
    }
    ExtRational(Rational const& q)  // NOLINT(runtime/explicit)
        : _num(mp::numerator(q)), _den(mp::denominator(q)) {}

    static ExtRational infinity(bool negative = false) {
      return {negative ? -1 : 1, 0};
    }

    static ExtRational parse(std::string_view s) {
      // Accept both ASCII '-' and U+2212 for the negative ray.
      std::string t(s);
      if (t.rfind("\xE2\x88\x92", 0) == 0) {
        t = "-" + t.substr(3);
      }
      auto slash = t.find('/');
      if (slash != std::string::npos) {
        std::string_view den = std::string_view(t).substr(slash + 1);
        if (den == "0") {
          std::string_view num = std::string_view(t).substr(0, slash);
          if (num == "1" || num == "+1") {
            return infinity(false);
          }
          if (num == "-1") {
            return infinity(true);
          }
          throw InvalidInput("infinity must be written 1/0 or -1/0");
        }
      }
      return ExtRational(parse_rational(t));
    }

    Integer const& num() const noexcept {
      return _num;
    }
    Integer const& den() const noexcept {
      return _den;
    }
    bool is_infinite() const noexcept {
      return _den == 0;
    }

    Rational to_rational() const {
      if (is_infinite()) {
        throw InvalidInput("infinite value has no rational form");
      }
      return Rational(_num, _den);
    }

    double to_double() const {
      if (is_infinite()) {
        return _num > 0 ? HUGE_VAL : -HUGE_VAL;
      }
      return modwalk::to_double(Rational(_num, _den));
    }

    std::string str() const {
      return _num.str() + "/" + _den.str();
    }

    friend bool operator==(ExtRational const&, ExtRational const&) = default;

    friend bool operator<(ExtRational const& l, ExtRational const& r) {
      // Cross multiplication is valid because denominators are >= 0 and the
      // infinities are normalized to +-1/0.
      if (l.is_infinite() && r.is_infinite()) {
        return l._num < r._num;
      }
      return l._num * r._den < r._num * l._den;
    }

    friend std::ostream& operator<<(std::ostream& os, ExtRational const& x) {
      return os << x.str();
    }

   private:
    void normalize() {
      if (_den < 0) {
        _den = -_den;
        _num = -_num;
      }
      if (_den == 0) {
        if (_num == 0) {
          throw InvalidInput("0/0 is not an extended rational");
        }
        _num = _num > 0 ? 1 : -1;
        return;
      }
      Integer g = mp::gcd(_num < 0 ? Integer(-_num) : _num, _den);
      _num /= g;
      _den /= g;
    }

    Integer _num;
    Integer _den;
  };

  // Farey sum p1/q1 (+) p2/q2 = (p1 + p2)/(q1 + q2).
  inline ExtRational farey_sum(ExtRational const& x, ExtRational const& y) {
    return {x.num() + y.num(), x.den() + y.den()};
  }

  // The boundary map of S : z -> -1/z.
  inline ExtRational apply_s(ExtRational const& x) {
    return {-x.den(), x.num()};
  }

  //! Finite word over {L, R}.
  class LRWord {
   public:
    LRWord() = default;

    static LRWord parse(std::string_view s) {
      LRWord w;
      for (char c : s) {
        if (c != 'L' && c != 'R') {
          throw InvalidInput("invalid letter '" + std::string(1, c)
                             + "' in LR word");
        }
      }
      w._letters = std::string(s);
      return w;
    }

    std::string const& str() const noexcept {
      return _letters;
    }
    std::size_t length() const noexcept {
      return _letters.size();
    }
    bool empty() const noexcept {
      return _letters.empty();
    }
    char operator[](std::size_t i) const {
      return _letters[i];
    }
    LRWord& push_back(char c) {
      if (c != 'L' && c != 'R') {
        throw InvalidInput("LR words use only L and R");
      }
      _letters.push_back(c);
      return *this;
    }
    friend LRWord operator+(LRWord w, char c) {
      return w.push_back(c);
    }

    friend bool operator==(LRWord const&, LRWord const&) = default;
    friend std::ostream& operator<<(std::ostream& os, LRWord const& w) {
      return os << w._letters;
    }

   private:
    std::string _letters;
  };

  //! Infinite LR code: a finite stem followed by an optional constant tail
  //! L^inf or R^inf.
  struct InfiniteLRCode {
    LRWord stem;
    std::optional<char> tail;

    std::string str() const {
      return stem.str() + (tail ? std::string("(") + *tail + ")^inf" : "");
    }
    friend bool operator==(InfiniteLRCode const&,
                           InfiniteLRCode const&) = default;
  };

  //! Interval I_w = w([0, inf]) of the mediant tree.
  //!
  //! Endpoints are nonnegative extended rationals in lowest terms and satisfy
  //! the unimodularity relation p2 q1 - p1 q2 = 1.
  struct MediantInterval {
    ExtRational left;
    ExtRational right;

    ExtRational mediant() const {
      return farey_sum(left, right);
    }

    Integer determinant() const {
      return right.num() * left.den() - left.num() * right.den();
    }

    bool is_unimodular() const {
      return determinant() == 1;
    }

    bool contains(ExtRational const& x) const {
      return !(x < left) && !(right < x);
    }

    friend bool operator==(MediantInterval const&,
                           MediantInterval const&) = default;
    friend std::ostream& operator<<(std::ostream& os,
                                    MediantInterval const& i) {
      return os << "[" << i.left << ", " << i.right << "]";
    }
  };

  //! Closed interval on the extended real line; produced by tau_enclosure for
  //! prefixes on either side of the boundary.
  struct ExtInterval {
    ExtRational left;
    ExtRational right;

    bool contains(ExtInterval const& o) const {
      return !(o.left < left) && !(right < o.right);
    }
    friend bool operator==(ExtInterval const&, ExtInterval const&) = default;
    friend std::ostream& operator<<(std::ostream& os, ExtInterval const& i) {
      return os << "[" << i.left << ", " << i.right << "]";
    }
  };

  // L = [[1,0],[1,1]] : z -> z/(z+1),  R = [[1,1],[0,1]] : z -> z+1.
  inline Matrix2 lr_matrix(LRWord const& w) {
    Matrix2 m;
    Matrix2 const L{1, 0, 1, 1};
    Matrix2 const R{1, 1, 0, 1};
    for (std::size_t i = 0; i < w.length(); ++i) {
      m = m * (w[i] == 'L' ? L : R);
    }
    return m;
  }

  inline MediantInterval lr_to_interval(LRWord const& w) {
    Matrix2 m = lr_matrix(w);
    // [M(0), M(inf)] = [b/d, a/c].
    return {ExtRational(m.b, m.d), ExtRational(m.a, m.c)};
  }

  struct RationalCode {
    LRWord stem;            // w with w(1) = q
    InfiniteLRCode left;    // w L R^inf
    InfiniteLRCode right;   // w R L^inf
  };

  // Binary search through the mediant tree. Termination is guaranteed since
  // every positive rational is the mediant of exactly one node.
  inline RationalCode rational_to_lr(Rational const& q) {
    if (q <= 0) {
      throw InvalidInput("rational_to_lr needs a positive rational, got "
                         + to_string(q));
    }
    ExtRational target(q);
    ExtRational lo(0, 1);
    ExtRational hi = ExtRational::infinity();
    LRWord w;
    while (true) {
      ExtRational m = farey_sum(lo, hi);
      if (m == target) {
        break;
      }
      if (target < m) {
        w.push_back('L');
        hi = m;
      } else {
        w.push_back('R');
        lo = m;
      }
    }
    return {w, {w + 'L', 'R'}, {w + 'R', 'L'}};
  }

  //! Continued fraction [n1; m1, n2, m2, ...] with n1 >= 0 and all later
  //! digits >= 1.
  struct ContinuedFraction {
    std::vector<Integer> digits;

    void validate() const {
      if (digits.empty()) {
        throw InvalidInput("continued fraction needs at least one digit");
      }
      if (digits.front() < 0) {
        throw InvalidInput("first continued fraction digit must be >= 0");
      }
      for (std::size_t i = 1; i < digits.size(); ++i) {
        if (digits[i] < 1) {
          throw InvalidInput("continued fraction digits after the first must "
                             "be >= 1");
        }
      }
    }

    // Value of the finite fraction; [0] evaluates to 0.
    Rational value() const {
      validate();
      Rational v = Rational(digits.back());
      for (std::size_t i = digits.size() - 1; i-- > 0;) {
        v = Rational(digits[i]) + 1 / v;
      }
      return v;
    }

    std::string str() const {
      std::string s = "[";
      for (std::size_t i = 0; i < digits.size(); ++i) {
        s += (i == 0 ? "" : i == 1 ? "; " : ", ") + digits[i].str();
      }
      return s + "]";
    }

    friend bool operator==(ContinuedFraction const&,
                           ContinuedFraction const&) = default;
  };

  // Syllable rule R^{n1} L^{m1} R^{n2} ... -> [n1; m1, n2, ...]; a word that
  // starts with L has n1 = 0. The empty word maps to [0].
  inline ContinuedFraction lr_to_cf(LRWord const& w) {
    ContinuedFraction cf;
    char current = 'R';
    Integer run  = 0;
    for (std::size_t i = 0; i < w.length(); ++i) {
      if (w[i] == current) {
        ++run;
      } else {
        cf.digits.push_back(run);
        current = w[i];
        run     = 1;
      }
    }
    if (run > 0 || cf.digits.empty()) {
      cf.digits.push_back(run);
    }
    return cf;
  }

  inline LRWord cf_to_lr(ContinuedFraction const& cf) {
    cf.validate();
    LRWord w;
    for (std::size_t i = 0; i < cf.digits.size(); ++i) {
      char c = i % 2 == 0 ? 'R' : 'L';
      for (Integer k = 0; k < cf.digits[i]; ++k) {
        w.push_back(c);
      }
    }
    return w;
  }

  // Euclid's algorithm; the expansion with last digit > 1 unless q is an
  // integer or of the form [..; 1].
  inline ContinuedFraction rational_to_cf(Rational const& q) {
    if (q < 0) {
      throw InvalidInput("rational_to_cf needs a nonnegative rational");
    }
    ContinuedFraction cf;
    Integer n = mp::numerator(q);
    Integer d = mp::denominator(q);
    while (d != 0) {
      cf.digits.push_back(n / d);
      Integer r = n % d;
      n         = d;
      d         = r;
    }
    return cf;
  }

  ////////////////////////////////////////////////////////////////////////
  // Boundary correspondence
  ////////////////////////////////////////////////////////////////////////

  // Letterwise ab -> R, aB -> L on a prefix starting with a; a trailing a is
  // ignored.
  inline LRWord boundary_to_lr(GroupWord const& prefix) {
    if (prefix.empty() || prefix.front() != Letter::A) {
      throw InvalidInput("boundary_to_lr needs a prefix starting with a, got \""
                         + prefix.str() + "\"");
    }
    LRWord w;
    for (std::size_t i = 1; i < prefix.length(); i += 2) {
      w.push_back(prefix[i] == Letter::B ? 'R' : 'L');
    }
    return w;
  }

  // Interval of the extended real line containing the image of every
  // boundary point that extends `prefix`. Prefixes starting with a b-type
  // letter go to the negative ray through z -> -1/z.
  inline ExtInterval tau_enclosure(GroupWord const& prefix) {
    if (prefix.empty()) {
      throw InvalidInput("tau_enclosure needs a nonempty prefix");
    }
    if (prefix.front() == Letter::A) {
      MediantInterval i = lr_to_interval(boundary_to_lr(prefix));
      return {i.left, i.right};
    }
    ExtInterval pos = tau_enclosure(GroupWord{Letter::A} * prefix);
    return {apply_s(pos.left), apply_s(pos.right)};
  }

}  // namespace modwalk
