#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordsum/ordinal.hpp"
#include "ordsum/realize.hpp"
#include "ordsum/sequence.hpp"

namespace ordsum {

struct PropertyFailure {
  std::uint64_t seed = 0;  // replaying the trial with this seed reproduces it
  std::string description;
};

struct PropertyReport {
  std::string name;
  std::size_t trials = 0;
  std::vector<PropertyFailure> failures;
  std::size_t skipped = 0;

  bool passed(double skip_ceiling = 0.2) const {
    if (!failures.empty()) return false;
    return trials == 0 || static_cast<double>(skipped) <= skip_ceiling * static_cast<double>(trials);
  }
};

// Harness bounds; the CLI can override them from a config file.
struct HarnessBounds {
  std::size_t rank_entry_bound = 32;   // rank_oracle_finite precondition
  std::size_t descent_budget = 10000;
  std::size_t walk_budget = kDefaultWalkBudget;
  double skip_ceiling = 0.2;
};

// Rank of a finite-support natural-valued sequence in the predecessor order,
// by literal memoized sup+ recursion over canonical moves. Throws
// std::domain_error outside the finite-support natural class.
Ordinal rank_oracle_finite(const OmegaSequence& s,
                           const HarnessBounds& bounds = HarnessBounds{});

// True when the sum strictly drops along the move.
bool check_descent(const OmegaSequence& s, const Move& m);

// The move recovered from the realization at position eta: pivot = owning
// source, cap = rank, keep = the finite offender set. The successor sequence
// keeps a sum >= eta. Throws std::domain_error when eta >= sum_s(s).
Move approach_move(const OmegaSequence& s, const Ordinal& eta);

PropertyReport minimality_suite(std::size_t trials, std::uint64_t seed,
                                const HarnessBounds& bounds = HarnessBounds{});
PropertyReport impossibility_fixtures();
PropertyReport monotonicity_suite(std::size_t trials, std::uint64_t seed);
PropertyReport rank_suite(std::size_t trials, std::uint64_t seed,
                          const HarnessBounds& bounds = HarnessBounds{});
PropertyReport realization_suite(std::size_t trials, std::uint64_t seed,
                                 const HarnessBounds& bounds = HarnessBounds{});
PropertyReport sumh_suite(std::size_t trials, std::uint64_t seed);

// Named suite lookup used by the command line; name "all" runs every suite.
std::vector<PropertyReport> run_suites(const std::string& name, std::size_t trials,
                                       std::uint64_t seed,
                                       const HarnessBounds& bounds = HarnessBounds{});

std::string render_report(const PropertyReport& r, bool machine, double skip_ceiling = 0.2);

}  // namespace ordsum
