#pragma once

#include <cmath>
#include <compare>
#include <ostream>
#include <sstream>
#include <string>

#include "error.hpp"
#include "rational.hpp"

namespace modwalk {

  //! Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).
  //!
  //! Values with b == 0 are plain rationals and combine freely with any
  //! radicand; two values with nonzero irrational parts must share d.
  //! Comparison is exact: the sign of a + b*sqrt(d) is decided by comparing
  //! a^2 with b^2 d.
  class QuadraticSurd {
   public:
    QuadraticSurd() = default;
    QuadraticSurd(int a) : _a(a) {}  // NOLINT(runtime/explicit)
    QuadraticSurd(Rational a) : _a(std::move(a)) {}  // NOLINT
    QuadraticSurd(Rational a, Rational b, Rational radicand)
        : _a(std::move(a)), _b(std::move(b)), _d(std::move(radicand)) {
      if (_d < 0) {
        throw InvalidInput("negative radicand");
      }
      if (auto r = exact_sqrt(_d)) {
        _a += _b * *r;
        _b = 0;
      } else {
        reduce_radicand();
      }
      normalize();
    }

    static QuadraticSurd sqrt(Rational const& radicand) {
      return QuadraticSurd(0, 1, radicand);
    }

    Rational const& rational_part() const noexcept {
      return _a;
    }
    Rational const& irrational_coefficient() const noexcept {
      return _b;
    }
    Rational const& radicand() const noexcept {
      return _d;
    }
    bool is_rational() const noexcept {
      return _b == 0;
    }

    int sign() const {
      int sa = _a.sign();
      int sb = _b.sign();
      if (sb == 0) {
        return sa;
      }
      if (sa == 0 || sa == sb) {
        return sb;
      }
      Rational lhs = _a * _a;
      Rational rhs = _b * _b * _d;
      if (lhs == rhs) {
        return 0;
      }
      return lhs > rhs ? sa : sb;
    }

    double to_double() const {
      if (_b == 0) {
        return modwalk::to_double(_a);
      }
      double root = std::sqrt(modwalk::to_double(_d));
      if (_a.sign() * _b.sign() < 0) {
        // a + b sqrt d = (a^2 - b^2 d) / (a - b sqrt d) avoids cancellation.
        Rational norm = _a * _a - _b * _b * _d;
        return modwalk::to_double(norm)
               / (modwalk::to_double(_a) - modwalk::to_double(_b) * root);
      }
      return modwalk::to_double(_a) + modwalk::to_double(_b) * root;
    }

    QuadraticSurd conjugate() const {
      QuadraticSurd r = *this;
      r._b = -r._b;
      return r;
    }

    QuadraticSurd operator-() const {
      QuadraticSurd r = *this;
      r._a = -r._a;
      r._b = -r._b;
      return r;
    }

    QuadraticSurd& operator+=(QuadraticSurd const& o) {
      adopt_radicand(o);
      _a += o._a;
      _b += o._b;
      normalize();
      return *this;
    }
    QuadraticSurd& operator-=(QuadraticSurd const& o) {
      adopt_radicand(o);
      _a -= o._a;
      _b -= o._b;
      normalize();
      return *this;
    }
    QuadraticSurd& operator*=(QuadraticSurd const& o) {
      adopt_radicand(o);
      Rational a = _a * o._a + _b * o._b * _d;
      Rational b = _a * o._b + _b * o._a;
      _a        = std::move(a);
      _b        = std::move(b);
      normalize();
      return *this;
    }
    QuadraticSurd& operator/=(QuadraticSurd const& o) {
      Rational norm = o._a * o._a - o._b * o._b * o._d;
      if (norm == 0) {
        throw InvalidInput("division by zero in quadratic field");
      }
      QuadraticSurd inv = o.conjugate();
      inv._a /= norm;
      inv._b /= norm;
      return *this *= inv;
    }

    friend QuadraticSurd operator+(QuadraticSurd l, QuadraticSurd const& r) {
      return l += r;
    }
    friend QuadraticSurd operator-(QuadraticSurd l, QuadraticSurd const& r) {
      return l -= r;
    }
    friend QuadraticSurd operator*(QuadraticSurd l, QuadraticSurd const& r) {
      return l *= r;
    }
    friend QuadraticSurd operator/(QuadraticSurd l, QuadraticSurd const& r) {
      return l /= r;
    }

    friend bool operator==(QuadraticSurd const& l, QuadraticSurd const& r) {
      if (l._b == 0 && r._b == 0) {
        return l._a == r._a;
      }
      return l._a == r._a && l._b == r._b && l._d == r._d;
    }
    friend std::strong_ordering operator<=>(QuadraticSurd const& l,
                                            QuadraticSurd const& r) {
      int s = (l - r).sign();
      return s < 0   ? std::strong_ordering::less
             : s > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    std::string str() const {
      if (_b == 0) {
        return to_string(_a);
      }
      std::string s;
      if (_a != 0) {
        s = to_string(_a) + (_b > 0 ? "+" : "-");
      } else if (_b < 0) {
        s = "-";
      }
      Rational mag = _b < 0 ? Rational(-_b) : _b;
      if (mag != 1) {
        s += to_string(mag) + "*";
      }
      return s + "sqrt(" + to_string(_d) + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, QuadraticSurd const& q) {
      return os << q.str();
    }

   private:
    void adopt_radicand(QuadraticSurd const& o) {
      if (o._b == 0) {
        return;
      }
      if (_b == 0) {
        _d = o._d;
        return;
      }
      if (_d != o._d) {
        throw InvalidInput("mixing quadratic fields Q(sqrt(" + to_string(_d)
                           + ")) and Q(sqrt(" + to_string(o._d) + "))");
      }
    }

    // sqrt(p/q) = sqrt(p q)/q, then square factors k^2 of p q move into b,
    // so equal fields always share one squarefree integer radicand.
    void reduce_radicand() {
      Integer const q = mp::denominator(_d);
      Integer n       = mp::numerator(_d) * q;
      _b /= Rational(q);
      Integer k = 2;
      while (k <= 1000000 && k * k <= n) {
        Integer const k2 = k * k;
        while (n % k2 == 0) {
          n /= k2;
          _b *= Rational(k);
        }
        ++k;
      }
      _d = Rational(n);
    }

    void normalize() {
      if (_b == 0) {
        _d = 0;
      }
    }

    Rational _a = 0;
    Rational _b = 0;
    Rational _d = 0;
  };

  ////////////////////////////////////////////////////////////////////////
  // Scalar traits over the three numeric regimes
  ////////////////////////////////////////////////////////////////////////

  // Rational and QuadraticSurd are exact; double carries explicit tolerances.
  template <typename T>
  struct ScalarTraits;

  template <>
  struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static double to_double(Rational const& x) {
      return modwalk::to_double(x);
    }
    static Rational from_rational(Rational const& q) {
      return q;
    }
    static int sign(Rational const& x) {
      return x.sign();
    }
    static std::string str(Rational const& x) {
      return to_string(x);
    }
  };

  template <>
  struct ScalarTraits<QuadraticSurd> {
    static constexpr bool exact = true;
    static double to_double(QuadraticSurd const& x) {
      return x.to_double();
    }
    static QuadraticSurd from_rational(Rational const& q) {
      return QuadraticSurd(q);
    }
    static int sign(QuadraticSurd const& x) {
      return x.sign();
    }
    static std::string str(QuadraticSurd const& x) {
      return x.str();
    }
  };

  template <>
  struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double to_double(double x) {
      return x;
    }
    static double from_rational(Rational const& q) {
      return modwalk::to_double(q);
    }
    static int sign(double x) {
      return (x > 0) - (x < 0);
    }
    static std::string str(double x) {
      std::ostringstream os;
      os.precision(17);
      os << x;
      return os.str();
    }
  };

  template <typename T>
  concept Scalar = requires { ScalarTraits<T>::exact; };

  template <Scalar T>
  double as_double(T const& x) {
    return ScalarTraits<T>::to_double(x);
  }

  template <Scalar T>
  int sign_of(T const& x) {
    return ScalarTraits<T>::sign(x);
  }

  template <Scalar T>
  T from_rational(Rational const& q) {
    return ScalarTraits<T>::from_rational(q);
  }

  template <Scalar T>
  T from_int(int n) {
    return ScalarTraits<T>::from_rational(Rational(n));
  }

  // Tolerance-aware equality: exact for exact scalars, absolute for double.
  template <Scalar T>
  bool nearly_equal(T const& x, T const& y, double tol) {
    if constexpr (ScalarTraits<T>::exact) {
      (void) tol;
      return x == y;
    } else {
      return std::abs(x - y) <= tol;
    }
  }

}  // namespace modwalk
