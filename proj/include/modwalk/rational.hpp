#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace modwalk {

  namespace mp = boost::multiprecision;

  // Expression templates are disabled so that `auto` and generic code never
  // capture lazily evaluated temporaries.
  using Integer  = mp::number<mp::cpp_int_backend<>, mp::et_off>;
  using Rational = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>,
                              mp::et_off>;

  inline Rational make_rational(Integer const& num, Integer const& den) {
    if (den == 0) {
      throw InvalidInput("zero denominator");
    }
    return Rational(num, den);
  }

  inline std::string to_string(Rational const& q) {
    if (mp::denominator(q) == 1) {
      return mp::numerator(q).str();
    }
    return mp::numerator(q).str() + "/" + mp::denominator(q).str();
  }

  inline std::string to_string(Integer const& n) {
    return n.str();
  }

  inline double to_double(Rational const& q) {
    return q.convert_to<double>();
  }

  namespace detail {
    inline Integer parse_integer(std::string_view s, std::string_view whole) {
      if (s.empty()) {
        throw InvalidInput("malformed number '" + std::string(whole) + "'");
      }
      for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
          throw InvalidInput("malformed number '" + std::string(whole) + "'");
        }
      }
      // Leading zeros would select octal in the Integer constructor.
      auto nz = s.find_first_not_of('0');
      return nz == std::string_view::npos ? Integer(0)
                                          : Integer(std::string(s.substr(nz)));
    }

    inline Integer pow10(long e) {
      Integer r = 1;
      for (long i = 0; i < e; ++i) {
        r *= 10;
      }
      return r;
    }
  }  // namespace detail

  // Accepts "p/q", integers, and decimals with an optional exponent
  // ("0.25", "-1.5e-3"). Decimals are converted exactly.
  inline Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
      s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
      s.remove_suffix(1);
    }
    if (s.empty()) {
      throw InvalidInput("empty number");
    }
    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
      negative = s.front() == '-';
      s.remove_prefix(1);
    }
    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      Integer num = detail::parse_integer(s.substr(0, slash), text);
      Integer den = detail::parse_integer(s.substr(slash + 1), text);
      value = make_rational(num, den);
    } else {
      long exponent = 0;
      if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view es = s.substr(e + 1);
        bool eneg = false;
        if (!es.empty() && (es.front() == '-' || es.front() == '+')) {
          eneg = es.front() == '-';
          es.remove_prefix(1);
        }
        Integer ei = detail::parse_integer(es, text);
        if (ei > 100000) {
          throw InvalidInput("exponent out of range in '" + std::string(text)
                             + "'");
        }
        exponent = ei.convert_to<long>();
        if (eneg) {
          exponent = -exponent;
        }
        s = s.substr(0, e);
      }
      std::string digits;
      if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) {
          throw InvalidInput("malformed number '" + std::string(text) + "'");
        }
        digits = std::string(ip) + std::string(fp);
        exponent -= static_cast<long>(fp.size());
      } else {
        digits = std::string(s);
      }
      Integer mant = detail::parse_integer(digits, text);
      if (exponent >= 0) {
        value = Rational(mant * detail::pow10(exponent));
      } else {
        value = make_rational(mant, detail::pow10(-exponent));
      }
    }
    return negative ? Rational(-value) : value;
  }

  // Exact square root of a nonnegative rational when it exists.
  inline std::optional<Rational> exact_sqrt(Rational const& q) {
    if (q < 0) {
      return std::nullopt;
    }
    Integer n = mp::numerator(q);
    Integer d = mp::denominator(q);
    Integer rn = mp::sqrt(n);
    Integer rd = mp::sqrt(d);
    if (rn * rn != n || rd * rd != d) {
      return std::nullopt;
    }
    return Rational(rn, rd);
  }

}  // namespace modwalk
