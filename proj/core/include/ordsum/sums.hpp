#pragma once

#include <span>
#include <vector>

#include "ordsum/ordinal.hpp"
#include "ordsum/sequence.hpp"

namespace ordsum {

// The infinitary sum. With d = decompose(s):
//   (S2)  (zeta (x) w)  (+)  hearts...                    when d.clause == s2
//   (S1)  (hat(zeta) (x) w) (+) w^{xi0} (+) diamonds...   when d.clause == s1,
// where xi0 is the last additive exponent of zeta. The all-zero sequence
// sums to 0.
Ordinal sum_s(const OmegaSequence& s);

// Formula (S2) applied unconditionally.
Ordinal sum_s2(const OmegaSequence& s);

// Formula (S1) applied unconditionally. Throws std::domain_error when
// zeta == 0.
Ordinal sum_s1(const OmegaSequence& s);

// Supremum of the partial Hessenberg natural sums of the terms.
Ordinal sum_h(const OmegaSequence& s);

// Natural sum of the first n terms; the brute-force lower bound for sum_h.
Ordinal partial_natural_sum(const OmegaSequence& s, std::size_t n);

// Left fold of the natural sum; [] gives 0.
Ordinal finite_natural_sum(std::span<const Ordinal> xs);

// A finitely-described well-founded tree: a node has finitely many explicit
// children, optionally followed by one subtree repeated w times.
struct TreeDesc {
  bool is_leaf = true;
  std::vector<TreeDesc> children;
  std::vector<TreeDesc> repeated;  // empty or a single entry

  static TreeDesc leaf() { return TreeDesc{}; }
  static TreeDesc node(std::vector<TreeDesc> children, std::vector<TreeDesc> repeated = {});

  bool operator==(const TreeDesc& other) const;
};

enum class TreeSizeMode { tree, formula_root };

// tree mode: leaves count 1 and every node adds 1 (+) to the infinitary sum
// of its children sizes. formula-root mode: a node with a repeated child is
// an w-disjunction (bare infinitary sum), a node with only finite children
// is a conjunction (natural sum of children sizes); atoms count 1.
Ordinal tree_size(const TreeDesc& t, TreeSizeMode mode = TreeSizeMode::tree);

}  // namespace ordsum
