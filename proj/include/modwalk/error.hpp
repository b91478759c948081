#pragma once

#include <stdexcept>
#include <string>

namespace modwalk {

  // Every failure raised by the library derives from Error; the subclass
  // identifies the category the CLI maps onto an exit code.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class InvalidInput : public Error {
   public:
    using Error::Error;
  };

  // Step distribution whose support does not generate the group as a semigroup.
  class Degenerate : public Error {
   public:
    using Error::Error;
  };

  // The analytic solver hit a state that the uniqueness theorem rules out.
  class SolverFailure : public Error {
   public:
    using Error::Error;
  };

  class NoRootInCube : public SolverFailure {
   public:
    using SolverFailure::SolverFailure;
  };

  class MultipleRoots : public SolverFailure {
   public:
    using SolverFailure::SolverFailure;
  };

  // Weights (pi_a, pi_ba, pi_bbar_a) with pi_ba + pi_bbar_a != 1.
  class NotNormalized : public Error {
   public:
    using Error::Error;
  };

  // Too many simulated paths ended before the requested cylinder depth.
  class Unresolved : public Error {
   public:
    using Error::Error;
  };

}  // namespace modwalk
