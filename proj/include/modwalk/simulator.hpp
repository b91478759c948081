#pragma once

// Monte Carlo sample paths of (Gamma, mu) for finitely supported mu.
//
// Increments are applied on the right: g_n = h_1 h_2 ... h_n. Path i draws
// its increments from SplitMix64::stream(seed, i), so reports do not depend
// on how paths are grouped into batches.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "boundary.hpp"
#include "denjoy.hpp"
#include "error.hpp"
#include "group.hpp"
#include "measure.hpp"
#include "rng.hpp"

namespace modwalk {

  struct SimConfig {
    std::uint64_t paths = 100000;
    std::uint64_t steps = 0;           // 0 selects default_steps(depth)
    std::uint64_t seed  = 1;
    std::size_t depth   = 3;
    bool allow_short_steps = false;    // accept steps below the policy, warn

    // Default policy: the readout at time T needs T well above the depth.
    static constexpr std::uint64_t min_steps(std::size_t depth) noexcept {
      return 20 * static_cast<std::uint64_t>(depth) + 100;
    }

    // Slow walks such as the symmetric nearest-neighbour one leave a few
    // percent of paths unresolved at the minimum.
    static constexpr std::uint64_t default_steps(std::size_t depth) noexcept {
      return 4 * min_steps(depth);
    }

    std::uint64_t effective_steps() const noexcept {
      return steps == 0 ? default_steps(depth) : steps;
    }
  };

  inline constexpr std::size_t kMaxSimDepth = 20;
  inline constexpr double kMaxUnresolvedFraction = 0.01;

  struct Estimate {
    double estimate = 0.0;
    double stderr_  = 0.0;
    std::uint64_t count = 0;  // paths with the event
    std::uint64_t n     = 0;  // paths in the sample
  };

  struct SimReport {
    std::map<Cylinder, Estimate> cylinder_freq;
    std::map<GroupWord, Estimate> passage;
    std::uint64_t paths_used = 0;
    std::uint64_t steps_used = 0;
    std::uint64_t seed       = 0;
    std::size_t depth        = 0;
    std::uint64_t unresolved = 0;
    bool degenerate_support  = false;
    std::vector<std::string> warnings;
  };

  namespace detail {
    // Binomial standard error sqrt(q(1 - q)/n).
    inline double binomial_se(double q, std::uint64_t n) {
      return n == 0 ? 0.0 : std::sqrt(q * (1.0 - q) / static_cast<double>(n));
    }

    inline Estimate make_estimate(std::uint64_t count, std::uint64_t n) {
      double q = n == 0 ? 0.0
                        : static_cast<double>(count) / static_cast<double>(n);
      return {q, binomial_se(q, n), count, n};
    }
  }  // namespace detail

  //! Increment table with cumulative weights for inversion sampling.
  class StepSampler {
   public:
    template <Scalar W>
    explicit StepSampler(GroupMeasure<W> const& mu) {
      if (mu.empty()) {
        throw InvalidInput("step distribution is empty");
      }
      if (!mu.is_probability(1e-12)) {
        throw InvalidInput("step distribution must have total mass 1");
      }
      double acc = 0.0;
      for (auto const& [g, w] : mu) {
        acc += as_double(w);
        _steps.push_back(g);
        _cumulative.push_back(acc);
      }
      _cumulative.back() = std::numeric_limits<double>::infinity();
    }

    GroupWord const& draw(SplitMix64& rng) const {
      double u = rng.uniform01();
      auto it  = std::upper_bound(_cumulative.begin(), _cumulative.end(), u);
      return _steps[static_cast<std::size_t>(it - _cumulative.begin())];
    }

    std::vector<GroupWord> const& support() const noexcept {
      return _steps;
    }

   private:
    std::vector<GroupWord> _steps;
    std::vector<double> _cumulative;
  };

  struct PathSample {
    GroupWord final;
    std::vector<bool> visited;  // parallel to the target list
  };

  //! One path of `steps` increments from e, flagging which targets were
  //! visited at some time 0 <= n <= steps.
  inline PathSample sample_path(StepSampler const& sampler, std::uint64_t steps,
                                SplitMix64& rng,
                                std::vector<GroupWord> const& targets = {}) {
    PathSample out;
    out.visited.assign(targets.size(), false);
    auto mark = [&] {
      for (std::size_t i = 0; i < targets.size(); ++i) {
        if (!out.visited[i] && out.final == targets[i]) {
          out.visited[i] = true;
        }
      }
    };
    mark();
    for (std::uint64_t n = 0; n < steps; ++n) {
      for (Letter l : sampler.draw(rng).letters()) {
        out.final.push_back(l);
      }
      mark();
    }
    return out;
  }

  template <Scalar W>
  PathSample sample_path(GroupMeasure<W> const& mu, std::uint64_t steps,
                         SplitMix64& rng,
                         std::vector<GroupWord> const& targets = {}) {
    return sample_path(StepSampler(mu), steps, rng, targets);
  }

  //! Heuristic non-degeneracy test: searches products of support elements
  //! up to `max_factors` factors for both a and b. Supports generating the
  //! group as a semigroup are detected once a and b appear; a miss is
  //! reported as possibly degenerate.
  inline bool support_generates(std::vector<GroupWord> const& support,
                                std::size_t max_factors = 6,
                                std::size_t max_pool = 20000) {
    GroupWord const a{Letter::A};
    GroupWord const b{Letter::B};
    std::set<GroupWord> seen(support.begin(), support.end());
    std::vector<GroupWord> frontier(support.begin(), support.end());
    for (std::size_t k = 1; k <= max_factors; ++k) {
      if (seen.contains(a) && seen.contains(b)) {
        return true;
      }
      std::vector<GroupWord> next;
      for (GroupWord const& g : frontier) {
        for (GroupWord const& h : support) {
          GroupWord gh = g * h;
          if (seen.insert(gh).second) {
            next.push_back(std::move(gh));
          }
          if (seen.size() > max_pool) {
            return seen.contains(a) && seen.contains(b);
          }
        }
      }
      frontier = std::move(next);
    }
    return seen.contains(a) && seen.contains(b);
  }

  //! Passage and cylinder frequency estimates from one set of paths.
  //!
  //! Passage estimates count visits up to the final step and thus
  //! underestimate pi_g by the probability of a first visit later; the steps
  //! policy makes this small. The cylinder of each path is read off the
  //! prefix of its position at the final step. Paths whose position has
  //! fewer than `depth` letters a are unresolved; more than 1% unresolved
  //! throws Unresolved.
  template <Scalar W>
  SimReport simulate(GroupMeasure<W> const& mu,
                     std::vector<GroupWord> const& targets,
                     SimConfig const& cfg) {
    if (cfg.paths == 0) {
      throw InvalidInput("simulation needs at least one path");
    }
    if (cfg.depth == 0 || cfg.depth > kMaxSimDepth) {
      throw InvalidInput("simulation depth must lie in [1, "
                         + std::to_string(kMaxSimDepth) + "]");
    }
    SimReport rep;
    rep.steps_used = cfg.effective_steps();
    if (rep.steps_used < SimConfig::min_steps(cfg.depth)) {
      if (!cfg.allow_short_steps) {
        throw InvalidInput("steps must be at least 20 * depth + 100 = "
                           + std::to_string(SimConfig::min_steps(cfg.depth))
                           + " (override with allow_short_steps)");
      }
      rep.warnings.push_back("steps below the policy minimum; cylinder "
                             "readout and passage estimates may be biased");
    }
    StepSampler const sampler(mu);
    rep.paths_used         = cfg.paths;
    rep.seed               = cfg.seed;
    rep.depth              = cfg.depth;
    rep.degenerate_support = !support_generates(sampler.support());
    if (rep.degenerate_support) {
      rep.warnings.push_back("support may not generate the group as a "
                             "semigroup");
    }

    std::vector<Cylinder> const partition = cylinders_at_depth(cfg.depth);
    std::map<Cylinder, std::uint64_t> hits;
    for (Cylinder const& c : partition) {
      hits.emplace(c, 0);
    }
    std::vector<std::uint64_t> visits(targets.size(), 0);

    for (std::uint64_t i = 0; i < cfg.paths; ++i) {
      SplitMix64 rng = SplitMix64::stream(cfg.seed, i);
      PathSample s   = sample_path(sampler, rep.steps_used, rng, targets);
      for (std::size_t t = 0; t < targets.size(); ++t) {
        visits[t] += s.visited[t] ? 1 : 0;
      }
      if (auto c = cylinder_of_prefix(s.final, cfg.depth)) {
        ++hits[*c];
      } else {
        ++rep.unresolved;
      }
    }

    for (std::size_t t = 0; t < targets.size(); ++t) {
      rep.passage[targets[t]] = detail::make_estimate(visits[t], cfg.paths);
    }
    std::uint64_t const resolved = cfg.paths - rep.unresolved;
    for (auto const& [c, k] : hits) {
      rep.cylinder_freq[c] = detail::make_estimate(k, resolved);
    }
    if (static_cast<double>(rep.unresolved)
        > kMaxUnresolvedFraction * static_cast<double>(cfg.paths)) {
      throw Unresolved(std::to_string(rep.unresolved) + " of "
                       + std::to_string(cfg.paths)
                       + " paths did not resolve a depth-"
                       + std::to_string(cfg.depth) + " cylinder");
    }
    return rep;
  }

  template <Scalar W>
  SimReport estimate_passage(GroupMeasure<W> const& mu,
                             std::vector<GroupWord> const& targets,
                             SimConfig const& cfg) {
    return simulate(mu, targets, cfg);
  }

  template <Scalar W>
  SimReport estimate_cylinder_frequencies(GroupMeasure<W> const& mu,
                                          SimConfig const& cfg) {
    return simulate(mu, {}, cfg);
  }

  struct ZRow {
    Cylinder cylinder;
    double estimate;
    double expected;
    double stderr_;
    double z;
  };

  struct ZTable {
    std::vector<ZRow> rows;
    double max_abs_z = 0.0;
    double threshold = 4.0;
    bool pass        = true;  // max |z| <= threshold
  };

  //! z = (nu_hat(C) - kappa^{alpha,p}(C)) / SE per cylinder of the report.
  //!
  //! When the empirical SE vanishes (estimate 0 or 1) the binomial SE of the
  //! expected value is used instead.
  inline ZTable compare_with_analytic(SimReport const& rep,
                                      DenjoyParams<double> const& d,
                                      std::size_t depth,
                                      double threshold = 4.0) {
    if (rep.paths_used == 0 || rep.paths_used == rep.unresolved) {
      throw InvalidInput("report contains no resolved paths");
    }
    if (depth != rep.depth) {
      throw InvalidInput("depth mismatch: report has depth "
                         + std::to_string(rep.depth) + ", requested "
                         + std::to_string(depth));
    }
    if (rep.degenerate_support) {
      throw Degenerate("refusing to compare a possibly degenerate walk "
                       "with a harmonic measure");
    }
    d.validate();
    ZTable table;
    table.threshold = threshold;
    for (auto const& [c, e] : rep.cylinder_freq) {
      double expected = cylinder_mass(d, c);
      double se       = e.stderr_ > 0.0 ? e.stderr_
                                        : detail::binomial_se(expected, e.n);
      double diff     = e.estimate - expected;
      double z = se > 0.0 ? diff / se
                          : (diff == 0.0
                                 ? 0.0
                                 : std::copysign(
                                       std::numeric_limits<double>::infinity(),
                                       diff));
      table.rows.push_back({c, e.estimate, expected, se, z});
      table.max_abs_z = std::max(table.max_abs_z, std::abs(z));
    }
    table.pass = table.max_abs_z <= threshold;
    return table;
  }

}  // namespace modwalk
