#pragma once

// The Minkowski-Denjoy family kappa^{alpha,p} = p kappa^alpha +
// (1 - p) a kappa^alpha on the boundary, its parameterizations, and the
// Minkowski question-mark function.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "boundary.hpp"
#include "error.hpp"
#include "measure.hpp"
#include "mediant.hpp"
#include "scalar.hpp"

namespace modwalk {

  //! Parameters (alpha, p) of kappa^{alpha,p}; both in (0, 1).
  template <Scalar T>
  struct DenjoyParams {
    T alpha;
    T p;

    void validate() const {
      T const zero = from_int<T>(0);
      T const one  = from_int<T>(1);
      if (!(zero < alpha && alpha < one && zero < p && p < one)) {
        throw InvalidInput("Denjoy parameters must satisfy 0 < alpha, p < 1");
      }
    }

    DenjoyParams<double> to_double() const {
      return {as_double(alpha), as_double(p)};
    }

    friend bool operator==(DenjoyParams const&, DenjoyParams const&) = default;
  };

  //! Weights (pi_a, pi_ba, pi_bbar_a); normalized when pi_ba + pi_bbar_a = 1.
  template <Scalar T>
  struct PiWeights {
    T pi_a;
    T pi_ba;
    T pi_bbar_a;

    bool is_normalized(double tol = 1e-12) const {
      return nearly_equal(T(pi_ba + pi_bbar_a), from_int<T>(1), tol);
    }

    friend bool operator==(PiWeights const&, PiWeights const&) = default;
  };

  //! Base distribution sigma on {a, b, B} of a multiplicative Markov measure.
  template <Scalar T>
  struct MarkovBase {
    T sigma_a;
    T sigma_b;
    T sigma_bbar;

    friend bool operator==(MarkovBase const&, MarkovBase const&) = default;
  };

  template <Scalar T>
  PiWeights<T> params_to_pi(DenjoyParams<T> const& d) {
    d.validate();
    T const one = from_int<T>(1);
    return {d.p / (one - d.p), d.alpha, one - d.alpha};
  }

  template <Scalar T>
  DenjoyParams<T> pi_to_params(PiWeights<T> const& w, double tol = 1e-12) {
    if (!w.is_normalized(tol)) {
      throw NotNormalized("pi_ba + pi_bbar_a = "
                          + ScalarTraits<T>::str(w.pi_ba + w.pi_bbar_a)
                          + " != 1");
    }
    T const one = from_int<T>(1);
    return {w.pi_ba, w.pi_a / (one + w.pi_a)};
  }

  // The Radon-Nikodym problem for the product cocycle of w is solvable iff w
  // is normalized; the unique normalized solution is returned.
  template <Scalar T>
  DenjoyParams<T> solve_rn_problem(PiWeights<T> const& w,
                                   double tol = 1e-12) {
    T const zero = from_int<T>(0);
    if (!(zero < w.pi_a && zero < w.pi_ba && zero < w.pi_bbar_a)) {
      throw InvalidInput("cocycle weights must be positive");
    }
    DenjoyParams<T> d = pi_to_params(w, tol);
    d.validate();
    return d;
  }

  // alpha = sigma(b) / (sigma(b) + sigma(B)), p = sigma(a).
  template <Scalar T>
  DenjoyParams<T> markov_base_to_params(MarkovBase<T> const& m) {
    T const zero = from_int<T>(0);
    if (!(zero < m.sigma_a && zero < m.sigma_b && zero < m.sigma_bbar)
        || !nearly_equal(T(m.sigma_a + m.sigma_b + m.sigma_bbar),
                         from_int<T>(1), 1e-12)) {
      throw InvalidInput("Markov base must be a positive probability vector");
    }
    return {m.sigma_b / (m.sigma_b + m.sigma_bbar), m.sigma_a};
  }

  template <Scalar T>
  MarkovBase<T> params_to_markov_base(DenjoyParams<T> const& d) {
    d.validate();
    T const one = from_int<T>(1);
    T const q   = one - d.p;
    return {d.p, q * d.alpha, q * (one - d.alpha)};
  }

  // (alpha, p) -> (1 - alpha, p): the image under the b <-> B automorphism.
  template <Scalar T>
  DenjoyParams<T> swap_involution(DenjoyParams<T> const& d) {
    return {from_int<T>(1) - d.alpha, d.p};
  }

  namespace detail {
    // Product of alpha_beta over the b-type letters of the prefix.
    template <Scalar T>
    T bernoulli_product(T const& alpha, GroupWord const& g) {
      T const one = from_int<T>(1);
      T const bbar = one - alpha;
      T r = one;
      for (Letter l : g.letters()) {
        if (l == Letter::B) {
          r = r * alpha;
        } else if (l == Letter::Bbar) {
          r = r * bbar;
        }
      }
      return r;
    }
  }  // namespace detail

  // Mass of c under kappa^alpha when c lies in the shadow of a, and under its
  // translate a kappa^alpha otherwise. Both are probability measures on their
  // half of the boundary.
  template <Scalar T>
  T component_mass(T const& alpha, Cylinder const& c) {
    return detail::bernoulli_product(alpha, c.prefix());
  }

  // kappa_g = p prod alpha_beta for g = a b1 a ... bn a, and
  // (1 - p) prod alpha_beta for g = b1 a ... bn a.
  template <Scalar T>
  T cylinder_mass(DenjoyParams<T> const& d, Cylinder const& c) {
    T w = c.starts_with_a() ? d.p : T(from_int<T>(1) - d.p);
    return w * component_mass(d.alpha, c);
  }

  // Multiplicative weight pi_g over the canonical prefix of c.
  template <Scalar T>
  T pi_product(PiWeights<T> const& w, Cylinder const& c) {
    T r = c.starts_with_a() ? w.pi_a : from_int<T>(1);
    for (Letter l : c.prefix().letters()) {
      if (l == Letter::B) {
        r = r * w.pi_ba;
      } else if (l == Letter::Bbar) {
        r = r * w.pi_bbar_a;
      }
    }
    return r;
  }

  // Mass of a finite disjoint family of cylinders.
  template <Scalar T>
  T family_mass(DenjoyParams<T> const& d, std::vector<Cylinder> const& cs) {
    T s = from_int<T>(0);
    for (Cylinder const& c : cs) {
      s = s + cylinder_mass(d, c);
    }
    return s;
  }

  //! Value of d(g kappa)/d kappa on the cylinder c, as the mass ratio
  //! kappa(g^{-1} c) / kappa(c).
  //!
  //! The derivative is constant on c once depth(c) > |g| + 1, which is
  //! required; shallower cylinders throw InvalidInput.
  template <Scalar T>
  T rn_derivative(DenjoyParams<T> const& d, GroupWord const& g,
                  Cylinder const& c) {
    if (c.depth() <= g.length() + 1) {
      throw InvalidInput("rn_derivative: cylinder " + c.str()
                         + " is too shallow for |g| = "
                         + std::to_string(g.length()));
    }
    std::vector<Cylinder> image = act_on_cylinder(g.inverse(), c);
    if (image.size() != 1) {
      throw SolverFailure("rn_derivative: g^{-1} c is not a single cylinder");
    }
    return cylinder_mass(d, image.front()) / cylinder_mass(d, c);
  }

  //! Largest stationarity defect |nu(c) - sum_h mu(h) nu(h^{-1} c)| of
  //! nu = kappa^{alpha,p} over all cylinders of depth <= `depth`.
  //!
  //! Computed in the scalar type of the inputs (exactly for rational
  //! parameters and weights) and reported as a double.
  template <Scalar T>
  double check_stationarity(DenjoyParams<T> const& d,
                            GroupMeasure<T> const& mu, std::size_t depth) {
    if (depth == 0) {
      throw InvalidInput("check_stationarity: depth must be >= 1");
    }
    d.validate();
    double worst = 0.0;
    for (Cylinder const& c : cylinders_up_to_depth(depth)) {
      T image_mass = from_int<T>(0);
      for (auto const& [h, w] : mu) {
        image_mass = image_mass
                     + w * family_mass(d, act_on_cylinder(h.inverse(), c));
      }
      worst = std::max(worst,
                       std::abs(as_double(T(cylinder_mass(d, c) - image_mass))));
    }
    return worst;
  }

  struct HausdorffConstants {
    double dimension;                      // log 2 / 2
    DenjoyParams<QuadraticSurd> params;    // alpha = 1/2, p = 1/(1 + sqrt 2)
  };

  // The Hausdorff measure of the ultrametric e^{-(.|.)} on the boundary is
  // proportional to kappa^{1/2, p} with p = 1/(1 + sqrt 2) = sqrt 2 - 1.
  inline HausdorffConstants hausdorff_constants() {
    QuadraticSurd root2 = QuadraticSurd::sqrt(2);
    return {std::log(2.0) / 2.0,
            {QuadraticSurd(Rational(1, 2)), root2 - QuadraticSurd(1)}};
  }

  struct QuestionMarkValue {
    Rational value;      // dyadic rational
    std::size_t digits;  // binary digits used (k in p/2^k, 0 for 0 and 1)
    bool exact;          // false when the expansion was cut at `depth`

    // p/2^k form, reduced.
    std::string dyadic_str() const {
      Integer num = mp::numerator(value);
      Integer den = mp::denominator(value);
      unsigned k  = 0;
      while (den > 1) {
        den >>= 1;
        ++k;
      }
      return num.str() + "/2^" + std::to_string(k);
    }
  };

  //! Minkowski question-mark function at a rational x in [0, 1].
  //!
  //! x has code L w' R L^inf in the mediant tree; after the leading L each L
  //! is a binary digit 0 and each R a digit 1. The result is exact when the
  //! finite part fits into `depth` digits, otherwise the first `depth` digits
  //! are returned and `exact` is false.
  inline QuestionMarkValue question_mark(Rational const& x, std::size_t depth) {
    if (x < 0 || x > 1) {
      throw InvalidInput("question_mark: x must lie in [0, 1], got "
                         + to_string(x));
    }
    if (depth == 0) {
      throw InvalidInput("question_mark: depth must be >= 1");
    }
    if (x == 0 || x == 1) {
      return {x, 0, true};
    }
    LRWord code = rational_to_lr(x).stem + 'R';
    // code[0] == 'L' because x < 1.
    std::size_t n = std::min(code.length() - 1, depth);
    Integer num = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      num = 2 * num + (code[i] == 'R' ? 1 : 0);
    }
    Integer den = Integer(1) << static_cast<unsigned>(n);
    return {Rational(num, den), n, code.length() - 1 <= depth};
  }

}  // namespace modwalk
