#pragma once

// JSON and CSV encodings used by the command-line tool.
//
// Numbers are accepted as "p/q" strings, decimal strings, or JSON numbers
// (converted through their shortest round-trip decimal). Reports carry
// doubles printed with 17 significant digits next to exact strings.

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "counterexamples.hpp"
#include "denjoy.hpp"
#include "error.hpp"
#include "mediant.hpp"
#include "rational.hpp"
#include "scalar.hpp"
#include "simulator.hpp"
#include "solver.hpp"

namespace modwalk::io {

  using nlohmann::json;

  inline Rational rational_from_json(json const& v, std::string const& what) {
    if (v.is_string()) {
      return parse_rational(v.get<std::string>());
    }
    if (v.is_number()) {
      return parse_rational(v.dump());
    }
    throw InvalidInput(what + ": expected a number or a \"p/q\" string");
  }

  inline json parse_json(std::string const& text) {
    try {
      return json::parse(text);
    } catch (json::parse_error const& e) {
      throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
  }

  // Keys "a", "b", "bb", "ba", "bba"; missing keys are zero.
  inline StepOnS<Rational> step_from_json(json const& j) {
    if (!j.is_object()) {
      throw InvalidInput("step distribution must be a JSON object");
    }
    StepOnS<Rational> s;
    for (auto const& [key, value] : j.items()) {
      Rational w = rational_from_json(value, "mu." + key);
      if (key == "a") {
        s.af = w;
      } else if (key == "b") {
        s.bf = w;
      } else if (key == "bb") {
        s.bbarf = w;
      } else if (key == "ba") {
        s.bprime = w;
      } else if (key == "bba") {
        s.bbarprime = w;
      } else {
        throw InvalidInput("unknown step key \"" + key
                           + "\" (expected a, b, bb, ba, bba)");
      }
    }
    return s;
  }

  // Arbitrary finitely supported measure. Keys are products of letters a, b,
  // B ("bb" = B, "bba" = Ba, "e" or "" = identity), so StepOnS objects are
  // read with the same meaning.
  inline GroupMeasure<Rational> measure_from_json(json const& j) {
    if (!j.is_object() || j.empty()) {
      throw InvalidInput("measure must be a nonempty JSON object");
    }
    GroupMeasure<Rational> m;
    for (auto const& [key, value] : j.items()) {
      GroupWord g;
      if (key != "e") {
        for (char c : key) {
          switch (c) {
            case 'a':
              g.push_back(Letter::A);
              break;
            case 'b':
              g.push_back(Letter::B);
              break;
            case 'B':
              g.push_back(Letter::Bbar);
              break;
            default:
              throw InvalidInput("invalid letter in measure key \"" + key
                                 + "\"");
          }
        }
      }
      m.add(g, rational_from_json(value, "mu." + key));
    }
    if (m.total() != 1) {
      throw InvalidInput("measure weights must sum to 1, got "
                         + to_string(m.total()));
    }
    return m;
  }

  template <Scalar K>
  json step_to_json(StepOnS<K> const& s) {
    auto str = [](K const& x) { return ScalarTraits<K>::str(x); };
    return {{"a", str(s.af)},      {"b", str(s.bf)},
            {"bb", str(s.bbarf)},  {"ba", str(s.bprime)},
            {"bba", str(s.bbarprime)}};
  }

  inline DenjoyParams<Rational> params_from_json(json const& j) {
    if (!j.is_object() || !j.contains("alpha") || !j.contains("p")) {
      throw InvalidInput("Denjoy parameters need keys \"alpha\" and \"p\"");
    }
    DenjoyParams<Rational> d{rational_from_json(j["alpha"], "alpha"),
                             rational_from_json(j["p"], "p")};
    d.validate();
    return d;
  }

  template <Scalar K>
  json measure_to_json(GroupMeasure<K> const& m) {
    json out = json::object();
    for (auto const& [g, w] : m) {
      out[g.empty() ? "e" : g.str()] = {{"exact", ScalarTraits<K>::str(w)},
                                        {"value", as_double(w)}};
    }
    return out;
  }

  template <Scalar K>
  json solution_to_json(StepOnS<K> const& mu, MasterSolution<K> const& sol) {
    DenjoyParams<double> d = sol.params();
    json out{{"x", sol.triple.x},
             {"y", sol.triple.y},
             {"ybar", sol.triple.ybar},
             {"alpha", d.alpha},
             {"p", d.p},
             {"residuals", sol.residuals},
             {"minkowski_residual", as_double(minkowski_residual(mu))},
             {"enclosure",
              {to_string(sol.enclosure_lo), to_string(sol.enclosure_hi)}}};
    json exact = json::object();
    if constexpr (ScalarTraits<K>::exact) {
      exact["minkowski_residual"]
          = ScalarTraits<K>::str(minkowski_residual(mu));
    }
    if (auto e = sol.exact_params()) {
      exact["x"]     = ScalarTraits<K>::str(*sol.exact_x);
      exact["y"]     = ScalarTraits<K>::str(*sol.exact_y);
      exact["ybar"]  = ScalarTraits<K>::str(from_int<K>(1) - *sol.exact_y);
      exact["alpha"] = ScalarTraits<K>::str(e->alpha);
      exact["p"]     = ScalarTraits<K>::str(e->p);
    }
    out["exact"] = exact;
    return out;
  }

  inline json verdict_to_json(MembershipVerdict const& v) {
    return {{"residual", v.residual}, {"tol", v.tol}, {"member", v.member}};
  }

  inline json estimate_to_json(Estimate const& e) {
    return {{"estimate", e.estimate},
            {"stderr", e.stderr_},
            {"count", e.count},
            {"n", e.n}};
  }

  inline json sim_report_to_json(SimReport const& r) {
    json cyl = json::object();
    for (auto const& [c, e] : r.cylinder_freq) {
      cyl[c.str()] = estimate_to_json(e);
    }
    json pas = json::object();
    for (auto const& [g, e] : r.passage) {
      pas[g.empty() ? "e" : g.str()] = estimate_to_json(e);
    }
    return {{"cylinder_freq", cyl},
            {"passage", pas},
            {"paths_used", r.paths_used},
            {"steps_used", r.steps_used},
            {"seed", r.seed},
            {"depth", r.depth},
            {"unresolved", r.unresolved},
            {"degenerate_support", r.degenerate_support},
            {"warnings", r.warnings},
            {"rng", kRngVersion}};
  }

  inline std::string csv_double(double x) {
    return ScalarTraits<double>::str(x);
  }

  // Columns kind,key,estimate,stderr,n.
  inline std::string sim_report_to_csv(SimReport const& r) {
    std::ostringstream os;
    os << "kind,key,estimate,stderr,n\n";
    for (auto const& [c, e] : r.cylinder_freq) {
      os << "cylinder," << c.str() << ',' << csv_double(e.estimate) << ','
         << csv_double(e.stderr_) << ',' << e.n << '\n';
    }
    for (auto const& [g, e] : r.passage) {
      os << "passage," << (g.empty() ? "e" : g.str()) << ','
         << csv_double(e.estimate) << ',' << csv_double(e.stderr_) << ','
         << e.n << '\n';
    }
    return os.str();
  }

  inline json ztable_to_json(ZTable const& t) {
    json rows = json::array();
    for (ZRow const& r : t.rows) {
      rows.push_back({{"cylinder", r.cylinder.str()},
                      {"estimate", r.estimate},
                      {"expected", r.expected},
                      {"stderr", r.stderr_},
                      {"z", r.z}});
    }
    return {{"rows", rows},
            {"max_abs_z", t.max_abs_z},
            {"threshold", t.threshold},
            {"pass", t.pass}};
  }

  inline json nn_to_json(NNParams<Rational> const& nn) {
    return {{"af", to_string(nn.af)}, {"delta", to_string(nn.delta)}};
  }

  inline json ex0_to_json(Ex0Report const& r) {
    json combos = json::array();
    for (auto const& c : r.combinations) {
      combos.push_back({{"t", to_string(c.t)},
                        {"params", nn_to_json(c.params)},
                        {"phi", to_string(c.phi)},
                        {"alpha", c.alpha},
                        {"gap", c.gap},
                        {"separated", c.separated}});
    }
    return {{"example", "ex0"},
            {"first", nn_to_json(r.first)},
            {"second", nn_to_json(r.second)},
            {"phi_first", to_string(r.phi_first)},
            {"phi_second", to_string(r.phi_second)},
            {"alpha_first", r.solution_first.triple.y},
            {"alpha_second", r.solution_second.triple.y},
            {"residual_first", r.solution_first.max_residual()},
            {"residual_second", r.solution_second.max_residual()},
            {"alpha_difference", r.alpha_difference},
            {"equal_alpha", r.equal_alpha()},
            {"tol", r.tol},
            {"combinations", combos},
            {"all_separated", r.all_separated()}};
  }

  inline json hyperbola_to_json(HyperbolaPoint const& h) {
    return {{"bbarf", to_string(h.bbarf)},
            {"bf", h.bf.str()},
            {"bf_value", h.bf.to_double()},
            {"mu", step_to_json(h.step)}};
  }

  inline json ex1_to_json(Ex1Report const& r) {
    return {{"example", "ex1"},
            {"first", hyperbola_to_json(r.first)},
            {"second", hyperbola_to_json(r.second)},
            {"t", to_string(r.t)},
            {"minkowski_first", r.minkowski_first},
            {"minkowski_second", r.minkowski_second},
            {"alpha_first", r.solution_first.triple.y},
            {"alpha_second", r.solution_second.triple.y},
            {"endpoints_filling", r.endpoints_filling()},
            {"mixture", step_to_json(r.mixture)},
            {"mixture_solution", solution_to_json(r.mixture,
                                                  r.solution_mixture)},
            {"alpha_gap", r.alpha_gap},
            {"mixture_filling", r.mixture_filling()},
            {"tol", r.tol}};
  }

  inline json ex2_to_json(Ex2Report const& r) {
    return {{"example", "ex2"},
            {"point", hyperbola_to_json(r.point)},
            {"mu2", measure_to_json(r.mu2)},
            {"convolution_support", r.convolution.size()},
            {"convolution_is_square", r.convolution_is_square},
            {"mu_prime", measure_to_json(r.mu_prime)},
            {"mu_prime_matches_formula", r.mu_prime_matches},
            {"minkowski_residual", r.minkowski},
            {"minkowski_residual_exact", r.minkowski_exact.str()},
            {"witness", r.witness.str()},
            {"hyperbola", r.hyperbola.str()},
            {"difference", r.difference.str()},
            {"solution", solution_to_json(r.step_prime, r.solution)}};
  }

  inline json grid_check_to_json(MinkowskiGridCheck const& g) {
    return {{"simulation", sim_report_to_json(g.simulation)},
            {"grid_points", g.grid.size()},
            {"min_max_abs_z", g.min_over_grid()},
            {"threshold", g.threshold},
            {"rejects_minkowski_class", g.rejects_minkowski_class()}};
  }

}  // namespace modwalk::io
