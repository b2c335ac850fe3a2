#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "ordsum/ordinal.hpp"

namespace ordsum {

// Every tail term equals value.
struct ConstTail {
  Ordinal value;
};

// The j-th tail term (j >= 0) is base + mu[j+1] along the canonical
// fundamental sequence of the limit ordinal mu. Terms strictly increase with
// supremum base + mu.
struct ApproachTail {
  Ordinal base;
  Ordinal mu;
};

using TailSpec = std::variant<ConstTail, ApproachTail>;

// A finitely-described w-indexed ordinal sequence: a finite exceptional
// prefix followed by a structured infinite tail.
class OmegaSequence {
 public:
  OmegaSequence();  // all-zero sequence
  OmegaSequence(std::vector<Ordinal> prefix, TailSpec tail);

  const std::vector<Ordinal>& prefix() const { return prefix_; }
  const TailSpec& tail() const { return tail_; }

  Ordinal term_at(std::size_t i) const;
  bool is_all_zero() const;

  bool operator==(const OmegaSequence& other) const;

 private:
  std::vector<Ordinal> prefix_;
  TailSpec tail_;
};

enum class SumClause { s1, s2 };

// The (zeta, epsilon, specials, hearts/diamonds, clause) analysis of a
// sequence per the defining recipe of the infinitary sum.
struct SumDecomposition {
  Ordinal zeta;
  Ordinal epsilon;
  std::vector<std::pair<std::size_t, Ordinal>> e_special;  // index, value; value >= epsilon
  std::vector<std::pair<std::size_t, Ordinal>> z_special;  // index, value; value > zeta
  std::vector<std::pair<std::size_t, Ordinal>> hearts;     // zeta + heart == value
  // hat(zeta) + diamond == value; present only when zeta > 0
  std::optional<std::vector<std::pair<std::size_t, Ordinal>>> diamonds;
  SumClause clause = SumClause::s2;
};

// A canonical predecessor step (pivot, keep-set, cap): the pivot term drops
// to cap, terms with index in keep stay, every other term becomes
// min(term, cap). Doubles as the Left game move.
struct Move {
  std::size_t pivot = 0;
  std::vector<std::size_t> keep;  // pivot must not be a member
  Ordinal cap;
};

Ordinal term_at(const OmegaSequence& s, std::size_t i);

// (zeta, epsilon): least ordinals such that only finitely many terms are
// > zeta (respectively >= epsilon). Prefix entries never affect either.
std::pair<Ordinal, Ordinal> invariants_of(const OmegaSequence& s);

SumDecomposition decompose(const OmegaSequence& s);

// Removes zero prefix entries, absorbs entries equal to a Const tail value,
// sorts the prefix descending. All sums and invariants are unchanged.
OmegaSequence normalize(const OmegaSequence& s);

inline constexpr std::size_t kDefaultMovePrefixCutoff = 4096;

// Pointwise-maximal predecessor for the given move. Capping an Approach tail
// below its supremum turns it into a Const tail; surviving increasing tail
// terms move into the prefix, up to prefix_cutoff entries.
OmegaSequence apply_move(const OmegaSequence& s, const Move& m,
                         std::size_t prefix_cutoff = kDefaultMovePrefixCutoff);

// Applies randomly generated legal moves until none exists, returning the
// chain of successors (excluding s itself). Deterministic in the seed.
std::vector<OmegaSequence> random_descent(const OmegaSequence& s, std::uint64_t seed,
                                          std::size_t step_budget = 10000);

}  // namespace ordsum
