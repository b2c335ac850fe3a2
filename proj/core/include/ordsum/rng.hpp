#pragma once

#include <cstdint>

#include "ordsum/ordinal.hpp"
#include "ordsum/sequence.hpp"

namespace ordsum {

// SplitMix64. Hand-rolled so streams are identical across platforms and
// standard library versions; per-trial seeds are derived by mixing the trial
// index into the master seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial) {
    Rng g(master_seed + 0x9e3779b97f4a7c15ULL * (trial + 1));
    g.next();
    return g;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform-ish in [0, n); n >= 1
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::uint64_t state_;
};

// Random ordinal with exponent nesting depth at most `depth`, at most
// `max_terms` CNF terms and coefficients in [1, max_coeff].
Ordinal random_ordinal(Rng& g, unsigned depth = 2, unsigned max_terms = 3,
                       unsigned max_coeff = 4);

// Random limit ordinal with the same shape bounds.
Ordinal random_limit_ordinal(Rng& g, unsigned depth = 2, unsigned max_terms = 3,
                             unsigned max_coeff = 4);

// Uniformly-shaped random ordinal strictly below x; x > 0.
Ordinal random_below(Rng& g, const Ordinal& x);

// Random sequence descriptor (prefix of at most max_prefix entries,
// Const or Approach tail).
OmegaSequence random_sequence(Rng& g, unsigned max_prefix = 4, unsigned depth = 2);

// Random legal move on a sequence with at least one nonzero term. Caps are
// drawn from 0, small naturals, fundamental-sequence points of zeta and
// one-monomial reductions of the pivot term.
Move random_move(Rng& g, const OmegaSequence& s);

}  // namespace ordsum
