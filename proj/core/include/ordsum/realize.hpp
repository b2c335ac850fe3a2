#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ordsum/ordinal.hpp"
#include "ordsum/sequence.hpp"

namespace ordsum {

// Index into the realized sequence: prefix positions first, tail slot j at
// prefix length + j.
using SourceIndex = std::size_t;

struct Block {
  SourceIndex source;
  Ordinal src_lo;
  Ordinal src_hi;  // half-open source rank interval [src_lo, src_hi)
};

Ordinal block_length(const Block& b);

struct SingleSegment {
  Block block;
};

enum class FamilyKind {
  // one full chunk [chunk_lo, chunk_hi) per member; short leading blocks
  // are absorbed; target length block_len * w
  equal_blocks,
  // member blocks [chunk_lo, t_j) of increasing length, cofinal in the
  // target length
  increasing_blocks,
  // chains of w^sigma slices: sub-chain u takes the u-th slice of every
  // long-enough chunk; head blocks of full length come first
  graded_chains,
  // w stacked sub-chains, each consuming whole sources; exists to express
  // overclaiming realizations that the ormf check must reject
  stacked_chains,
};

struct FamilySegment {
  FamilyKind kind = FamilyKind::equal_blocks;
  Ordinal total;     // target length of the family
  Ordinal chunk_lo;  // where member chunks start inside their source
  Ordinal chunk_hi;  // sup (exclusive) of member chunk ranks
  Ordinal block_len; // equal: member length; graded/stacked: sub-chain length
  Ordinal slice;     // graded: w^sigma
  std::vector<Block> head;  // explicit blocks before the scheduled members
  // graded: prefix-source chunks sliced like tail slots (source, chunk length)
  std::vector<std::pair<SourceIndex, Ordinal>> graded_prefix;
  std::size_t first_slot = 0;  // first tail slot of the scheduled part
};

using Segment = std::variant<SingleSegment, FamilySegment>;

// A symbolic ormf mixed-sum realization: ordered segments of blocks and
// block families over the terms of a sequence.
class BlockPlan {
 public:
  BlockPlan(OmegaSequence sequence, std::vector<Segment> segments, Ordinal claimed_total);

  const OmegaSequence& sequence() const { return seq_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const Ordinal& claimed_total() const { return total_; }
  const Ordinal& segment_start(std::size_t k) const { return starts_[k]; }

  Ordinal source_value(SourceIndex i) const { return seq_.term_at(i); }
  std::size_t prefix_size() const { return seq_.prefix().size(); }

 private:
  OmegaSequence seq_;
  std::vector<Segment> segments_;
  Ordinal total_;
  std::vector<Ordinal> starts_;
};

inline constexpr std::size_t kDefaultWalkBudget = 200000;

// Carruth merge: all additive monomials of the inputs in decreasing length
// order; realizes finite_natural_sum(xs).
BlockPlan realize_finite(std::span<const Ordinal> xs);

// The ormf realization of sum_s(s): one segment per S-summand, specials
// before the zeta families on equal exponents.
BlockPlan realize(const OmegaSequence& s);

// Stacks w sub-chains each consuming whole sources of an Approach-tailed
// sequence, realizing subchain_len * w. Such plans overclaim the sum and are
// rejected by check_ormf.
BlockPlan stacked_plan(const OmegaSequence& s);

struct Location {
  SourceIndex source;
  Ordinal rank;  // position within the source, h_source(eta)
};

// Owner and rank of target position eta. Throws std::domain_error when
// eta >= claimed_total, std::length_error when the walk budget runs out.
Location locate(const BlockPlan& p, const Ordinal& eta,
                std::size_t budget = kDefaultWalkBudget);

struct OffenderSet {
  bool finite = true;
  std::vector<SourceIndex> sources;  // sorted, owner excluded
  std::string infinite_reason;       // set when !finite
};

// Sources owning an earlier-target point of rank >= the rank of eta
// (the offender set of the ormf condition), owner excluded.
OffenderSet offenders(const BlockPlan& p, const Ordinal& eta,
                      std::size_t budget = kDefaultWalkBudget);

// offenders() for plans that pass check_ormf; throws std::runtime_error when
// the set is infinite.
std::vector<SourceIndex> finite_set_F(const BlockPlan& p, const Ordinal& eta,
                                      std::size_t budget = kDefaultWalkBudget);

struct OrmfWitness {
  Ordinal eta;
  std::string description;
};

struct OrmfReport {
  bool pass = false;
  bool malformed = false;       // partition violation, reported distinctly
  std::string detail;
  std::optional<OrmfWitness> witness;
  std::size_t positions_sampled = 0;
  std::size_t pairs_checked = 0;
};

// Block-level schematic check (family patterns prove finiteness or fail with
// a witness) plus pointwise sampling of sample_budget positions.
OrmfReport check_ormf(const BlockPlan& p, std::size_t sample_budget,
                      std::uint64_t seed = 12345);

// Blocks of one source in target order; used by the partition check and the
// truncation analysis.
std::vector<Block> source_blocks(const BlockPlan& p, SourceIndex i,
                                 std::size_t budget = kDefaultWalkBudget);

// The sequence of truncated order types delta_i = type(A_i restricted below
// eta), as a descriptor when expressible.
std::optional<OmegaSequence> truncated_sequence(const BlockPlan& p, const Ordinal& eta,
                                                std::size_t budget = kDefaultWalkBudget);

}  // namespace ordsum
