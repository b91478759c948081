// modwalk: harmonic measures of random walks on the modular group.
//
// Exit codes: 0 success, 2 invalid input, 3 degenerate measure,
// 4 solver failure or internal contradiction, 5 too many unresolved paths.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <modwalk/io.hpp>
#include <modwalk/modwalk.hpp>

namespace {

  using namespace modwalk;
  using nlohmann::json;

  enum Exit : int {
    kOk           = 0,
    kInvalid      = 2,
    kDegenerate   = 3,
    kSolver       = 4,
    kUnresolved   = 5,
  };

  // --mu accepts inline JSON, @file, or a path to an existing file.
  std::string read_json_arg(std::string const& arg) {
    std::string path;
    if (!arg.empty() && arg.front() == '@') {
      path = arg.substr(1);
    } else if (!arg.empty() && arg.front() != '{') {
      std::ifstream probe(arg);
      if (probe) {
        path = arg;
      }
    }
    if (path.empty()) {
      return arg;
    }
    std::ifstream in(path);
    if (!in) {
      throw InvalidInput("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void emit(json const& j) {
    std::cout << j.dump(2) << '\n';
  }

  std::uint64_t resolve_seed(std::optional<std::uint64_t> const& flag) {
    if (flag) {
      return *flag;
    }
    if (char const* env = std::getenv("MODWALK_SEED")) {
      try {
        std::size_t used = 0;
        std::uint64_t v  = std::stoull(env, &used);
        if (used == std::string(env).size()) {
          return v;
        }
      } catch (std::exception const&) {
      }
      throw InvalidInput("MODWALK_SEED is not an unsigned integer");
    }
    return 1;
  }

  struct SimFlags {
    std::uint64_t paths = 100000;
    std::uint64_t steps = 0;
    std::size_t depth   = 3;
    std::optional<std::uint64_t> seed;
    bool allow_short = false;

    void add_to(CLI::App* app) {
      app->add_option("--paths", paths, "number of sample paths")
          ->check(CLI::PositiveNumber);
      app->add_option("--steps", steps,
                      "steps per path (default 4*(20*depth+100), minimum 20*depth+100)");
      app->add_option("--depth", depth, "cylinder depth")
          ->check(CLI::Range(std::size_t{1}, kMaxSimDepth));
      app->add_option("--seed", seed, "RNG seed (fallback: MODWALK_SEED)");
      app->add_flag("--allow-short-steps", allow_short,
                    "accept steps below the policy minimum");
    }

    SimConfig config() const {
      SimConfig cfg;
      cfg.paths             = paths;
      cfg.steps             = steps;
      cfg.depth             = depth;
      cfg.seed              = resolve_seed(seed);
      cfg.allow_short_steps = allow_short;
      return cfg;
    }
  };

  //////////////////////////////////////////////////////////////////////
  // Commands
  //////////////////////////////////////////////////////////////////////

  void cmd_solve(std::string const& mu_arg, double tol,
                 std::string const& format) {
    StepOnS<Rational> mu = io::step_from_json(io::parse_json(read_json_arg(mu_arg)));
    MasterSolution<Rational> sol = solve_master(mu, tol);
    json out = io::solution_to_json(mu, sol);
    if (format == "csv") {
      std::cout << "quantity,value,exact\n";
      for (char const* key : {"x", "y", "ybar", "alpha", "p"}) {
        std::cout << key << ',' << io::csv_double(out[key].get<double>())
                  << ',' << out["exact"].value(key, "") << '\n';
      }
      for (int i = 0; i < 3; ++i) {
        std::cout << "residual" << i + 1 << ','
                  << io::csv_double(sol.residuals[i]) << ",\n";
      }
      std::cout << "minkowski_residual,"
                << io::csv_double(out["minkowski_residual"].get<double>())
                << ',' << out["exact"].value("minkowski_residual", "") << '\n';
      return;
    }
    emit(out);
  }

  void cmd_classify(std::string const& mu_arg,
                    std::optional<std::string> const& alpha_arg, double tol) {
    StepOnS<Rational> mu = io::step_from_json(io::parse_json(read_json_arg(mu_arg)));
    mu.validate();
    MasterSolution<Rational> sol = solve_master(mu);
    json out;
    if (alpha_arg) {
      Rational alpha = parse_rational(*alpha_arg);
      if (!(0 < alpha && alpha < 1)) {
        throw InvalidInput("--alpha must lie in (0, 1)");
      }
      MembershipVerdict v = classify_denjoy(mu, alpha, tol);
      out["alpha"]        = to_string(alpha);
      out["denjoy"]       = io::verdict_to_json(v);
      out["denjoy"]["residual_exact"]
          = to_string(denjoy_membership_residual(mu, alpha));
    } else {
      // Harmonic alpha: the residual vanishes up to rounding.
      double alpha  = sol.triple.y;
      out["alpha"]  = alpha;
      out["denjoy"] = io::verdict_to_json(
          classify_denjoy(mu.to_double(), alpha, tol));
    }
    MembershipVerdict mink = classify_minkowski(mu, tol);
    out["minkowski"]       = io::verdict_to_json(mink);
    out["minkowski"]["residual_exact"] = to_string(minkowski_residual(mu));
    DenjoyParams<double> h = sol.params();
    out["harmonic"]        = {{"alpha", h.alpha}, {"p", h.p}};
    std::vector<double> roots = membership_roots(mu);
    out["membership_roots"]   = roots;
    out["multiple_roots"]     = roots.size() > 1;
    emit(out);
  }

  void cmd_simulate(std::string const& mu_arg, SimFlags const& flags,
                    std::string const& targets_arg, bool compare,
                    std::string const& format) {
    GroupMeasure<Rational> mu
        = io::measure_from_json(io::parse_json(read_json_arg(mu_arg)));
    std::vector<GroupWord> targets;
    std::stringstream ss(targets_arg);
    for (std::string item; std::getline(ss, item, ',');) {
      if (!item.empty()) {
        targets.push_back(item == "e" ? GroupWord{} : GroupWord::parse(item));
      }
    }
    SimConfig cfg = flags.config();
    SimReport rep = simulate(mu, targets, cfg);
    for (std::string const& w : rep.warnings) {
      std::cerr << "warning: " << w << '\n';
    }
    if (format == "csv") {
      std::cout << io::sim_report_to_csv(rep);
      return;
    }
    json out = io::sim_report_to_json(rep);
    if (compare) {
      StepOnS<Rational> step = StepOnS<Rational>::from_measure(mu);
      DenjoyParams<double> d = harmonic_params(step);
      out["analytic"]        = {{"alpha", d.alpha}, {"p", d.p}};
      out["comparison"]
          = io::ztable_to_json(compare_with_analytic(rep, d, cfg.depth));
    }
    emit(out);
  }

  void cmd_qmark(std::string const& x_arg, std::size_t depth) {
    Rational x          = parse_rational(x_arg);
    QuestionMarkValue q = question_mark(x, depth);
    emit({{"x", to_string(x)},
          {"value", to_string(q.value)},
          {"dyadic", q.dyadic_str()},
          {"decimal", to_double(q.value)},
          {"digits", q.digits},
          {"exact", q.exact}});
  }

  ContinuedFraction parse_cf(std::string text) {
    for (char& c : text) {
      if (c == '[' || c == ']' || c == ';' || c == ',') {
        c = ' ';
      }
    }
    std::istringstream in(text);
    ContinuedFraction cf;
    for (std::string tok; in >> tok;) {
      Rational v = parse_rational(tok);
      if (mp::denominator(v) != 1) {
        throw InvalidInput("continued fraction digits must be integers");
      }
      cf.digits.push_back(mp::numerator(v));
    }
    cf.validate();
    return cf;
  }

  json cf_to_json(ContinuedFraction const& cf) {
    json digits = json::array();
    for (Integer const& d : cf.digits) {
      digits.push_back(d.str());
    }
    return {{"digits", digits}, {"str", cf.str()}};
  }

  void cmd_encode(std::optional<std::string> const& rational_arg,
                  std::optional<std::string> const& lr_arg,
                  std::optional<std::string> const& cf_arg) {
    int given = rational_arg.has_value() + lr_arg.has_value()
                + cf_arg.has_value();
    if (given != 1) {
      throw InvalidInput("encode takes exactly one of --rational, --lr, --cf");
    }
    Rational q;
    json out;
    if (rational_arg) {
      q = parse_rational(*rational_arg);
      out["input"] = {{"rational", *rational_arg}};
    } else if (lr_arg) {
      LRWord w = LRWord::parse(*lr_arg);
      q        = lr_to_interval(w).mediant().to_rational();
      out["input"] = {{"lr", *lr_arg}};
    } else {
      q = parse_cf(*cf_arg).value();
      out["input"] = {{"cf", *cf_arg}};
    }
    RationalCode code = rational_to_lr(q);
    MediantInterval iv = lr_to_interval(code.stem);
    out["rational"]    = to_string(q);
    out["decimal"]     = to_double(q);
    out["stem"]        = code.stem.str();
    out["left_code"]   = code.left.str();
    out["right_code"]  = code.right.str();
    out["interval"]    = {iv.left.str(), iv.right.str()};
    out["interval_str"] = iv.left.str() + ".." + iv.right.str();
    out["mediant"]     = iv.mediant().str();
    out["unimodular"]  = iv.is_unimodular();
    out["cf"]          = cf_to_json(rational_to_cf(q));
    out["cf_right"]    = cf_to_json(lr_to_cf(code.right.stem));
    out["cf_left"]     = cf_to_json(lr_to_cf(code.left.stem));
    emit(out);
  }

  void cmd_measure(std::string const& alpha_arg, std::string const& p_arg,
                   std::string const& cylinder_arg) {
    DenjoyParams<Rational> d{parse_rational(alpha_arg), parse_rational(p_arg)};
    d.validate();
    Cylinder c    = Cylinder::parse(cylinder_arg);
    Rational mass = cylinder_mass(d, c);
    json out{{"alpha", to_string(d.alpha)},
             {"p", to_string(d.p)},
             {"cylinder", c.str()},
             {"depth", c.depth()},
             {"mass", to_string(mass)},
             {"mass_decimal", to_double(mass)},
             {"diameter", c.diameter()}};
    if (c.starts_with_a()) {
      ExtInterval iv = tau_enclosure(c.prefix());
      out["enclosure"] = {iv.left.str(), iv.right.str()};
    }
    emit(out);
  }

  void cmd_example(std::string const& name, std::string const& t_arg,
                   std::string const& bbar_arg, std::string const& bbar2_arg,
                   bool simulate_flag, SimFlags const& flags) {
    Rational t = parse_rational(t_arg);
    json out;
    std::optional<GroupMeasure<double>> sim_measure;
    double class_alpha = 0.5;
    if (name == "ex0") {
      Ex0Report r = example_ex0();
      out         = io::ex0_to_json(r);
      class_alpha = r.solution_first.triple.y;
      if (!(0 < t && t < 1)) {
        throw InvalidInput("--t must lie in (0, 1)");
      }
      NNParams<Rational> mix{t * r.first.af + (1 - t) * r.second.af,
                             t * r.first.delta + (1 - t) * r.second.delta};
      sim_measure = mix.to_step().to_measure().to_double();
    } else if (name == "ex1") {
      Ex1Report r = example_ex1(parse_rational(bbar_arg),
                                parse_rational(bbar2_arg), t);
      out         = io::ex1_to_json(r);
      sim_measure = r.mixture.to_measure();
    } else if (name == "ex2") {
      Ex2Report r = example_ex2(parse_rational(bbar_arg));
      out         = io::ex2_to_json(r);
      sim_measure = r.mu_prime.to_double();
    } else {
      throw InvalidInput("unknown example \"" + name + "\" (ex0, ex1, ex2)");
    }
    if (simulate_flag) {
      SimConfig cfg = flags.config();
      MinkowskiGridCheck g = class_grid_check(*sim_measure, class_alpha, cfg);
      json sim             = io::grid_check_to_json(g);
      sim["class_alpha"]   = class_alpha;
      StepOnS<double> step = StepOnS<double>::from_measure(*sim_measure);
      sim["own_params"]    = io::ztable_to_json(
          compare_with_analytic(g.simulation, harmonic_params(step), cfg.depth));
      out["simulation"] = sim;
    }
    emit(out);
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic measures of random walks on the modular group"};
  app.require_subcommand(1);

  std::string mu_arg;
  double tol = 1e-12;
  std::string format = "json";

  auto* solve = app.add_subcommand("solve", "solve the master system");
  solve->add_option("--mu", mu_arg, "step distribution (JSON, @file or path)")
      ->required();
  solve->add_option("--tol", tol, "residual tolerance")
      ->check(CLI::PositiveNumber);
  solve->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  std::optional<std::string> alpha_opt;
  auto* classify = app.add_subcommand("classify", "Denjoy/Minkowski membership");
  classify->add_option("--mu", mu_arg)->required();
  classify->add_option("--alpha", alpha_opt, "class parameter (default: harmonic)");
  classify->add_option("--tol", tol)->check(CLI::PositiveNumber);

  SimFlags sim_flags;
  std::string targets_arg;
  bool compare = false;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo sample paths");
  sim->add_option("--mu", mu_arg)->required();
  sim_flags.add_to(sim);
  sim->add_option("--targets", targets_arg, "comma-separated target words");
  sim->add_flag("--compare", compare,
                "compare with the analytic harmonic measure");
  sim->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  std::string x_arg;
  std::size_t qdepth = 64;
  auto* qmark = app.add_subcommand("qmark", "Minkowski question-mark function");
  qmark->add_option("--x", x_arg, "rational in [0, 1]")->required();
  qmark->add_option("--depth", qdepth, "binary digits")
      ->check(CLI::PositiveNumber);

  std::optional<std::string> rational_arg, lr_arg, cf_arg;
  auto* encode = app.add_subcommand("encode", "mediant and continued fraction codes");
  encode->add_option("--rational", rational_arg);
  encode->add_option("--lr", lr_arg);
  encode->add_option("--cf", cf_arg, "digits, e.g. \"0;2,2\"");

  std::string alpha_arg, p_arg, cylinder_arg;
  auto* measure = app.add_subcommand("measure", "mass of a cylinder");
  measure->add_option("--alpha", alpha_arg)->required();
  measure->add_option("--p", p_arg)->required();
  measure->add_option("--cylinder", cylinder_arg)->required();

  std::string example_name, t_arg = "1/2", bbar_arg = "1/2", bbar2_arg = "1/2";
  bool example_sim = false;
  SimFlags ex_flags;
  auto* example = app.add_subcommand("example", "reproduce ex0, ex1, ex2");
  example->add_option("name", example_name, "ex0 | ex1 | ex2")->required();
  example->add_option("--t", t_arg, "combination weight");
  example->add_option("--bbar", bbar_arg, "hyperbola parameter");
  example->add_option("--bbar2", bbar2_arg, "second hyperbola parameter (ex1)");
  example->add_flag("--simulate", example_sim, "append Monte Carlo z-scores");
  ex_flags.add_to(example);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*solve) {
      cmd_solve(mu_arg, tol, format);
    } else if (*classify) {
      cmd_classify(mu_arg, alpha_opt, tol);
    } else if (*sim) {
      cmd_simulate(mu_arg, sim_flags, targets_arg, compare, format);
    } else if (*qmark) {
      cmd_qmark(x_arg, qdepth);
    } else if (*encode) {
      cmd_encode(rational_arg, lr_arg, cf_arg);
    } else if (*measure) {
      cmd_measure(alpha_arg, p_arg, cylinder_arg);
    } else if (*example) {
      cmd_example(example_name, t_arg, bbar_arg, bbar2_arg, example_sim,
                  ex_flags);
    }
  } catch (Degenerate const& e) {
    std::cerr << "degenerate: " << e.what() << '\n';
    return kDegenerate;
  } catch (SolverFailure const& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolver;
  } catch (Unresolved const& e) {
    std::cerr << "unresolved: " << e.what() << '\n';
    return kUnresolved;
  } catch (Error const& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (std::exception const& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kSolver;
  }
  return kOk;
}
