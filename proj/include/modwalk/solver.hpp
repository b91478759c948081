#pragma once

// Passage probabilities and harmonic measures of random walks whose step
// distribution is supported on S = {a, b, B, ba, Ba}.
//
// With x = pi_a, y = pi_ba, ybar = pi_Ba the passage probabilities solve
//
//   x    = af + bf ybar + bbf y + bp x ybar + bbp x y
//   y    = af x y + bf x + bbf ybar + bp + bbp x ybar
//   ybar = af x ybar + bf y + bbf x + bp x y + bbp
//
// (af, bf, bbf, bp, bbp are the weights of a, b, B, ba, Ba) and the harmonic
// measure is kappa^{alpha,p} with alpha = y and p = x / (1 + x).

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "denjoy.hpp"
#include "error.hpp"
#include "measure.hpp"
#include "scalar.hpp"

namespace modwalk {

  //! Step distribution on S with weights of a, b, B, ba, Ba.
  template <Scalar K>
  struct StepOnS {
    K af        = from_int<K>(0);
    K bf        = from_int<K>(0);
    K bbarf     = from_int<K>(0);
    K bprime    = from_int<K>(0);
    K bbarprime = from_int<K>(0);

    K total() const {
      return af + bf + bbarf + bprime + bbarprime;
    }

    // Support inside one of {a}, {b, B}, {ba, Ba}: the semigroup generated is
    // then a proper subset of the group.
    bool is_degenerate() const {
      K const zero = from_int<K>(0);
      int groups   = (zero < af) + (zero < bf || zero < bbarf)
                   + (zero < bprime || zero < bbarprime);
      return groups <= 1;
    }

    void validate(double tol = 1e-12) const {
      K const zero = from_int<K>(0);
      if (af < zero || bf < zero || bbarf < zero || bprime < zero
          || bbarprime < zero) {
        throw InvalidInput("step weights must be nonnegative");
      }
      if (!nearly_equal(total(), from_int<K>(1), tol)) {
        throw InvalidInput("step weights must sum to 1, got "
                           + ScalarTraits<K>::str(total()));
      }
      if (is_degenerate()) {
        throw Degenerate("support does not generate the group as a semigroup");
      }
    }

    // b <-> B, ba <-> Ba.
    StepOnS swapped() const {
      return {af, bbarf, bf, bbarprime, bprime};
    }

    StepOnS<double> to_double() const {
      return {as_double(af), as_double(bf), as_double(bbarf),
              as_double(bprime), as_double(bbarprime)};
    }

    GroupMeasure<K> to_measure() const {
      GroupMeasure<K> m;
      m.add(GroupWord{Letter::A}, af);
      m.add(GroupWord{Letter::B}, bf);
      m.add(GroupWord{Letter::Bbar}, bbarf);
      m.add(GroupWord{Letter::B, Letter::A}, bprime);
      m.add(GroupWord{Letter::Bbar, Letter::A}, bbarprime);
      return m;
    }

    // Throws InvalidInput when the measure charges anything outside S.
    static StepOnS from_measure(GroupMeasure<K> const& m) {
      StepOnS s;
      for (auto const& [g, w] : m) {
        std::string key = g.str();
        if (key == "a") {
          s.af = w;
        } else if (key == "b") {
          s.bf = w;
        } else if (key == "B") {
          s.bbarf = w;
        } else if (key == "ba") {
          s.bprime = w;
        } else if (key == "Ba") {
          s.bbarprime = w;
        } else {
          throw InvalidInput("measure charges " + (g.empty() ? "e" : key)
                             + ", which is outside {a, b, B, ba, Ba}");
        }
      }
      return s;
    }

    friend bool operator==(StepOnS const&, StepOnS const&) = default;
  };

  template <Scalar K>
  StepOnS<K> mixture(K const& t, StepOnS<K> const& m1, StepOnS<K> const& m2) {
    K const s = from_int<K>(1) - t;
    return {t * m1.af + s * m2.af, t * m1.bf + s * m2.bf,
            t * m1.bbarf + s * m2.bbarf, t * m1.bprime + s * m2.bprime,
            t * m1.bbarprime + s * m2.bbarprime};
  }

  //! Passage probabilities (pi_a, pi_ba, pi_Ba) with y + ybar = 1.
  struct PassageTriple {
    double x;
    double y;
    double ybar;
  };

  //! A y^2 + B y + C.
  template <Scalar K>
  struct Quadratic {
    K a2 = from_int<K>(0);
    K a1 = from_int<K>(0);
    K a0 = from_int<K>(0);

    K operator()(K const& y) const {
      return (a2 * y + a1) * y + a0;
    }
  };

  //! Signed LHS - RHS of the Denjoy-class relation at alpha:
  //! [alpha - bbf(1-alpha) - bp] [af(1-alpha) + bp alpha + bbf]
  //!   - [af alpha + bbp(1-alpha) + bf] [(1-alpha) - bf alpha - bbp].
  //!
  //! Zero exactly when the harmonic measure lies in the class with this
  //! alpha; as a function of alpha it is the y-equation of the master system.
  template <Scalar K>
  K denjoy_membership_residual(StepOnS<K> const& mu, K const& alpha) {
    K const one = from_int<K>(1);
    K const beta = one - alpha;
    K lhs = (alpha - mu.bbarf * beta - mu.bprime)
            * (mu.af * beta + mu.bprime * alpha + mu.bbarf);
    K rhs = (mu.af * alpha + mu.bbarprime * beta + mu.bf)
            * (beta - mu.bf * alpha - mu.bbarprime);
    return lhs - rhs;
  }

  //! Signed LHS - RHS of the Minkowski-class relation
  //! (1 - bbf - 2bp)(af + bp + 2bbf) = (af + bbp + 2bf)(1 - bf - 2bbp).
  //! It equals 4 times denjoy_membership_residual at alpha = 1/2.
  template <Scalar K>
  K minkowski_residual(StepOnS<K> const& mu) {
    K const one = from_int<K>(1);
    K const two = from_int<K>(2);
    K lhs = (one - mu.bbarf - two * mu.bprime)
            * (mu.af + mu.bprime + two * mu.bbarf);
    K rhs = (mu.af + mu.bbarprime + two * mu.bf)
            * (one - mu.bf - two * mu.bbarprime);
    return lhs - rhs;
  }

  // The y-equation expanded to A y^2 + B y + C with coefficients in K.
  template <Scalar K>
  Quadratic<K> master_quadratic(StepOnS<K> const& mu) {
    K const one = from_int<K>(1);
    // lhs = (p1 y + q1)(p2 y + q2), rhs = (p3 y + q3)(p4 y + q4)
    K p1 = one + mu.bbarf;
    K q1 = K(from_int<K>(0) - mu.bbarf - mu.bprime);
    K p2 = mu.bprime - mu.af;
    K q2 = mu.af + mu.bbarf;
    K p3 = mu.af - mu.bbarprime;
    K q3 = mu.bbarprime + mu.bf;
    K p4 = K(from_int<K>(0) - one - mu.bf);
    K q4 = one - mu.bbarprime;
    return {p1 * p2 - p3 * p4, p1 * q2 + q1 * p2 - p3 * q4 - q3 * p4,
            q1 * q2 - q3 * q4};
  }

  // x = (1 - bf y - bbf ybar - bp - bbp) / (1 - bp ybar - bbp y).
  template <Scalar K>
  K passage_x(StepOnS<K> const& mu, K const& y) {
    K const one  = from_int<K>(1);
    K const ybar = one - y;
    return (one - mu.bf * y - mu.bbarf * ybar - mu.bprime - mu.bbarprime)
           / (one - mu.bprime * ybar - mu.bbarprime * y);
  }

  //! Signed residuals RHS - LHS of the three master equations.
  template <Scalar K>
  std::array<K, 3> master_residuals(StepOnS<K> const& mu, K const& x,
                                    K const& y, K const& ybar) {
    return {mu.af + mu.bf * ybar + mu.bbarf * y + mu.bprime * x * ybar
                + mu.bbarprime * x * y - x,
            mu.af * x * y + mu.bf * x + mu.bbarf * ybar + mu.bprime
                + mu.bbarprime * x * ybar - y,
            mu.af * x * ybar + mu.bf * y + mu.bbarf * x + mu.bprime * x * y
                + mu.bbarprime - ybar};
  }

  template <Scalar K>
  std::array<double, 3> residual(StepOnS<K> const& mu, PassageTriple const& t) {
    return master_residuals(mu.to_double(), t.x, t.y, t.ybar);
  }

  struct SolveOptions {
    double enclosure_width = 1e-15;  // bisection stops below this width
    double residual_tol    = 1e-12;  // max |residual| accepted
  };

  //! Solution of the master system together with its certificate.
  template <Scalar K>
  struct MasterSolution {
    PassageTriple triple;
    std::optional<K> exact_x;     // set when the root is known in closed form
    std::optional<K> exact_y;
    Rational enclosure_lo;        // y lies in [enclosure_lo, enclosure_hi]
    Rational enclosure_hi;
    Quadratic<K> quadratic;
    std::array<double, 3> residuals;
    std::size_t bisection_steps = 0;

    double max_residual() const {
      return std::max({std::abs(residuals[0]), std::abs(residuals[1]),
                       std::abs(residuals[2])});
    }

    // alpha = y, p = x / (1 + x).
    DenjoyParams<double> params() const {
      return {triple.y, triple.x / (1.0 + triple.x)};
    }

    std::optional<DenjoyParams<K>> exact_params() const {
      if (!exact_x || !exact_y) {
        return std::nullopt;
      }
      return DenjoyParams<K>{*exact_y, *exact_x / (from_int<K>(1) + *exact_x)};
    }
  };

  namespace detail {
    template <Scalar K>
    int sign_at(Quadratic<K> const& q, Rational const& y) {
      return sign_of(q(from_rational<K>(y)));
    }

    template <Scalar K>
    bool in_open_unit(K const& y) {
      return from_int<K>(0) < y && y < from_int<K>(1);
    }
  }  // namespace detail

  //! Unique solution of the master system in the open unit cube.
  //!
  //! The y-equation is expanded to exact coefficients in K. A vanishing
  //! leading coefficient is solved linearly; for rational K a rational
  //! discriminant root gives the exact solution; otherwise the root in (0, 1)
  //! is bracketed by the sign change between y = 0 and y = 1 and refined by
  //! bisection on dyadic rationals, with every sign decided in K. Anything
  //! other than one simple root in (0, 1) throws, since the uniqueness theorem
  //! excludes it.
  template <Scalar K>
  MasterSolution<K> solve_master(StepOnS<K> const& mu,
                                 SolveOptions const& opts = {}) {
    mu.validate();
    MasterSolution<K> sol;
    Quadratic<K> const q = master_quadratic(mu);
    sol.quadratic        = q;

    int const s0 = sign_of(q(from_int<K>(0)));
    int const s1 = sign_of(q(from_int<K>(1)));
    if (s0 == 0 || s1 == 0) {
      throw NoRootInCube("y-equation vanishes on the boundary of (0, 1)");
    }
    if (s0 == s1) {
      // Either no root or two roots in (0, 1).
      if (sign_of(q.a2) != 0) {
        K vertex = K(from_int<K>(0) - q.a1) / (from_int<K>(2) * q.a2);
        if (detail::in_open_unit(vertex) && sign_of(q(vertex)) == -s0) {
          throw MultipleRoots("y-equation has two roots in (0, 1)");
        }
      }
      throw NoRootInCube("y-equation has no root in (0, 1)");
    }

    if (sign_of(q.a2) == 0) {
      sol.exact_y = K(from_int<K>(0) - q.a0) / q.a1;
    } else if constexpr (std::is_same_v<K, Rational>) {
      Rational disc = q.a1 * q.a1 - 4 * q.a2 * q.a0;
      if (auto root = exact_sqrt(disc)) {
        for (Rational cand : {Rational((-q.a1 - *root) / (2 * q.a2)),
                              Rational((-q.a1 + *root) / (2 * q.a2))}) {
          if (detail::in_open_unit(cand)) {
            sol.exact_y = cand;
          }
        }
      }
    }

    Rational lo = 0;
    Rational hi = 1;
    if (sol.exact_y) {
      if constexpr (std::is_same_v<K, double>) {
        lo = hi = Rational(*sol.exact_y);
      } else if constexpr (std::is_same_v<K, Rational>) {
        lo = hi = *sol.exact_y;
      } else {
        // Rational bracket of an element of a quadratic field.
        while (Rational(hi - lo) > Rational(opts.enclosure_width)) {
          Rational mid = (lo + hi) / 2;
          if (from_rational<K>(mid) < *sol.exact_y) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
      }
    } else {
      Rational const width(opts.enclosure_width);
      while (Rational(hi - lo) > width) {
        Rational mid = (lo + hi) / 2;
        int s        = detail::sign_at(q, mid);
        if (s == 0) {
          lo = hi = mid;
          if constexpr (ScalarTraits<K>::exact) {
            sol.exact_y = from_rational<K>(mid);
          }
          break;
        }
        if (s == s0) {
          lo = mid;
        } else {
          hi = mid;
        }
        ++sol.bisection_steps;
      }
    }
    sol.enclosure_lo = lo;
    sol.enclosure_hi = hi;

    K y = sol.exact_y ? *sol.exact_y : from_rational<K>((lo + hi) / 2);
    K x = passage_x(mu, y);
    if (sol.exact_y) {
      sol.exact_x = x;
    }
    sol.triple.y    = as_double(y);
    sol.triple.ybar = 1.0 - sol.triple.y;
    sol.triple.x    = as_double(x);

    if (!(0.0 < sol.triple.x && sol.triple.x < 1.0 && 0.0 < sol.triple.y
          && sol.triple.y < 1.0)) {
      throw SolverFailure("solution left the open unit cube");
    }
    sol.residuals = residual(mu, sol.triple);
    if (sol.max_residual() > opts.residual_tol) {
      throw SolverFailure("master residual "
                          + std::to_string(sol.max_residual())
                          + " exceeds tolerance");
    }
    return sol;
  }

  // Residual tolerance `tol`; the bisection width is tightened accordingly.
  template <Scalar K>
  MasterSolution<K> solve_master(StepOnS<K> const& mu, double tol) {
    return solve_master(mu,
                        SolveOptions{std::min(1e-15, tol * 1e-3), tol});
  }

  // alpha = pi_ba, p = pi_a / (1 + pi_a); always 0 < p < 1/2.
  template <Scalar K>
  DenjoyParams<double> harmonic_params(StepOnS<K> const& mu) {
    return solve_master(mu).params();
  }

  //! Signed residual with a verdict at the caller's tolerance.
  struct MembershipVerdict {
    double residual;
    double tol;
    bool member;
  };

  template <Scalar K>
  MembershipVerdict classify_denjoy(StepOnS<K> const& mu, K const& alpha,
                                    double tol) {
    K r = denjoy_membership_residual(mu, alpha);
    bool member;
    if constexpr (ScalarTraits<K>::exact) {
      member = sign_of(r) == 0;
    } else {
      member = std::abs(r) <= tol;
    }
    return {as_double(r), tol, member};
  }

  template <Scalar K>
  MembershipVerdict classify_minkowski(StepOnS<K> const& mu, double tol) {
    K r = minkowski_residual(mu);
    bool member;
    if constexpr (ScalarTraits<K>::exact) {
      member = sign_of(r) == 0;
    } else {
      member = std::abs(r) <= tol;
    }
    return {as_double(r), tol, member};
  }

  //! All real roots in (0, 1) of the membership relation viewed as a
  //! polynomial in alpha. The harmonic alpha is always one of them; more than
  //! one root would contradict uniqueness and is reported, not resolved.
  template <Scalar K>
  std::vector<double> membership_roots(StepOnS<K> const& mu) {
    Quadratic<double> q{as_double(master_quadratic(mu).a2),
                        as_double(master_quadratic(mu).a1),
                        as_double(master_quadratic(mu).a0)};
    std::vector<double> roots;
    auto keep = [&](double r) {
      if (0.0 < r && r < 1.0) {
        roots.push_back(r);
      }
    };
    if (q.a2 == 0.0) {
      if (q.a1 != 0.0) {
        keep(-q.a0 / q.a1);
      }
      return roots;
    }
    double disc = q.a1 * q.a1 - 4.0 * q.a2 * q.a0;
    if (disc < 0.0) {
      return roots;
    }
    double sq = std::sqrt(disc);
    // Stable pair of roots.
    double t = -0.5 * (q.a1 + (q.a1 >= 0 ? sq : -sq));
    if (t != 0.0) {
      keep(t / q.a2);
      keep(q.a0 / t);
    } else {
      keep(0.0);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
  }

  ////////////////////////////////////////////////////////////////////////
  // Nearest-neighbour walks
  ////////////////////////////////////////////////////////////////////////

  //! mu(a) = af, mu(b) = (1 - af + delta)/2, mu(B) = (1 - af - delta)/2.
  template <Scalar K>
  struct NNParams {
    K af;
    K delta;

    void validate() const {
      K const zero = from_int<K>(0);
      K const one  = from_int<K>(1);
      K const room = one - af;
      if (!(zero < af && af < one)) {
        throw InvalidInput("nearest-neighbour walk needs 0 < af < 1");
      }
      if (delta > room || K(zero - delta) > room) {
        throw InvalidInput("nearest-neighbour walk needs |delta| <= 1 - af");
      }
    }

    StepOnS<K> to_step() const {
      validate();
      K const one  = from_int<K>(1);
      K const half = from_rational<K>(Rational(1, 2));
      return {af, half * (one - af + delta), half * (one - af - delta),
              from_int<K>(0), from_int<K>(0)};
    }

    friend bool operator==(NNParams const&, NNParams const&) = default;
  };

  // Phi(af, delta) = af delta / (4 - (af + 1)^2 + delta^2); the denominator
  // is positive on the whole parameter range.
  template <Scalar K>
  K phi(NNParams<K> const& nn) {
    nn.validate();
    K const one = from_int<K>(1);
    K const s   = nn.af + one;
    return nn.af * nn.delta / (from_int<K>(4) - s * s + nn.delta * nn.delta);
  }

  struct NNSolution {
    double z;  // y - ybar
    PassageTriple triple;
    DenjoyParams<double> params;
  };

  //! Closed form for nearest-neighbour walks: z = 0 when delta = 0, otherwise
  //! z = sgn(delta) (sqrt(D^2 + 1) - |D|) with D = 1 / (2 Phi).
  template <Scalar K>
  NNSolution nn_solve(NNParams<K> const& nn) {
    nn.validate();
    double const af    = as_double(nn.af);
    double const delta = as_double(nn.delta);
    double z           = 0.0;
    if (sign_of(nn.delta) != 0) {
      K const s = nn.af + from_int<K>(1);
      double D  = as_double(K((from_int<K>(4) - s * s + nn.delta * nn.delta)
                              / (from_int<K>(2) * nn.af * nn.delta)));
      // sqrt(D^2 + 1) - |D| without cancellation.
      double mag = 1.0 / (std::hypot(D, 1.0) + std::abs(D));
      z          = delta > 0 ? mag : -mag;
    }
    NNSolution out;
    out.z           = z;
    out.triple.y    = 0.5 * (1.0 + z);
    out.triple.ybar = 1.0 - out.triple.y;
    double const u  = 1.0 + af - delta * z;
    out.triple.x    = 0.5 * u;
    out.params      = {out.triple.y, u / (u + 2.0)};
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // The family mu = (1 - 2b - bb) a + b (b + ba) + bb B
  ////////////////////////////////////////////////////////////////////////

  // 2b^2 - 2b bb - bb^2 - 2b + bb: zero exactly on the Minkowski hyperbola.
  template <Scalar K>
  K hyperbola_equation(K const& b, K const& bb) {
    K const two = from_int<K>(2);
    return two * b * b - two * b * bb - bb * bb - two * b + bb;
  }

  template <Scalar K>
  StepOnS<K> hyperbola_family(K const& b, K const& bb) {
    K const one = from_int<K>(1);
    K const two = from_int<K>(2);
    return {one - two * b - bb, b, bb, b, from_int<K>(0)};
  }

  struct HyperbolaPoint {
    Rational bbarf;
    QuadraticSurd bf;               // ((1 + bb) - sqrt(1 + 3 bb^2)) / 2
    StepOnS<QuadraticSurd> step;
  };

  //! Point of the hyperbola branch joining (0, 0) and (0, 1) above the given
  //! bbarf in (0, 1). The result is exact in Q(sqrt(1 + 3 bbarf^2)).
  inline HyperbolaPoint hyperbola_point(Rational const& bbarf) {
    if (!(0 < bbarf && bbarf < 1)) {
      throw InvalidInput("hyperbola_point: bbarf must lie in (0, 1), got "
                         + to_string(bbarf));
    }
    Rational const radicand = 1 + 3 * bbarf * bbarf;
    QuadraticSurd bf(Rational((1 + bbarf) / 2), Rational(-1, 2), radicand);
    QuadraticSurd const bb(bbarf);
    if (!(QuadraticSurd(0) < bf)
        || QuadraticSurd(1) < QuadraticSurd(2) * bf + bb) {
      throw InvalidInput("hyperbola_point: no admissible root");
    }
    return {bbarf, bf, hyperbola_family(bf, bb)};
  }

}  // namespace modwalk
