#include "ordsum/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace ordsum {

Ordinal random_ordinal(Rng& g, unsigned depth, unsigned max_terms, unsigned max_coeff) {
  if (depth == 0 || g.chance(1, 4)) return Ordinal(g.below(max_coeff + 1));
  unsigned want = 1 + static_cast<unsigned>(g.below(max_terms));
  std::vector<Ordinal> exps;
  for (unsigned k = 0; k < want; ++k) exps.push_back(random_ordinal(g, depth - 1, max_terms, max_coeff));
  std::sort(exps.begin(), exps.end(), [](const Ordinal& a, const Ordinal& b) { return a > b; });
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  std::vector<CnfTerm> terms;
  for (auto& e : exps) terms.push_back(CnfTerm{std::move(e), Nat(1 + g.below(max_coeff))});
  if (!terms.empty() && terms.back().exponent.is_zero() && g.chance(1, 2)) terms.pop_back();
  return Ordinal::from_terms(std::move(terms));
}

Ordinal random_limit_ordinal(Rng& g, unsigned depth, unsigned max_terms, unsigned max_coeff) {
  for (;;) {
    Ordinal a = random_ordinal(g, depth, max_terms, max_coeff);
    if (classify(a) == OrdinalKind::limit) return a;
    // force a limit by appending w as the smallest monomial
    if (a.is_zero()) return Ordinal::omega();
    if (a.last().exponent > Ordinal(std::uint64_t{1}))
      return classical_add(a, Ordinal::omega());
    if (classify(a) == OrdinalKind::successor && a.terms().size() > 1) {
      auto terms = a.terms();
      terms.pop_back();
      return Ordinal::from_terms(std::move(terms));
    }
  }
}

Ordinal random_below(Rng& g, const Ordinal& x) {
  if (x.is_zero()) throw std::domain_error("random_below: zero bound");
  const auto& terms = x.terms();
  std::size_t k = g.below(terms.size());
  std::vector<CnfTerm> out(terms.begin(), terms.begin() + k);
  const CnfTerm& t = terms[k];
  Nat c = Nat(g.next()) % t.coefficient;  // in [0, coeff)
  if (c > 0) out.push_back(CnfTerm{t.exponent, c});
  Ordinal head = Ordinal::from_terms(std::move(out));
  // optionally extend with something below w^{exponent}
  if (!t.exponent.is_zero() && g.chance(2, 3)) {
    Ordinal e = g.chance(1, 3) ? Ordinal() : random_below(g, t.exponent);
    Ordinal small = Ordinal::omega_pow(e, Nat(1 + g.below(3)));
    return classical_add(head, small);
  }
  return head;
}

OmegaSequence random_sequence(Rng& g, unsigned max_prefix, unsigned depth) {
  std::vector<Ordinal> prefix;
  unsigned n = static_cast<unsigned>(g.below(max_prefix + 1));
  for (unsigned i = 0; i < n; ++i) prefix.push_back(random_ordinal(g, depth));
  TailSpec tail;
  if (g.chance(1, 2)) {
    tail = ConstTail{random_ordinal(g, depth)};
  } else {
    Ordinal base = g.chance(1, 2) ? Ordinal() : random_ordinal(g, depth);
    tail = ApproachTail{std::move(base), random_limit_ordinal(g, depth)};
  }
  return OmegaSequence(std::move(prefix), std::move(tail));
}

Move random_move(Rng& g, const OmegaSequence& s) {
  // candidate pivots: prefix indices with nonzero terms, plus early tail slots
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < s.prefix().size(); ++i)
    if (!s.prefix()[i].is_zero()) pivots.push_back(i);
  std::size_t len = s.prefix().size();
  for (std::size_t j = 0; j < 3; ++j)
    if (!s.term_at(len + j).is_zero()) pivots.push_back(len + j);
  if (pivots.empty()) throw std::domain_error("random_move: all terms are zero");
  std::size_t pivot = pivots[g.below(pivots.size())];
  Ordinal v = s.term_at(pivot);

  std::vector<Ordinal> candidates;
  candidates.emplace_back();                      // 0
  candidates.emplace_back(g.below(4));            // small natural
  Ordinal zeta = invariants_of(s).first;
  if (classify(zeta) == OrdinalKind::limit)
    candidates.push_back(fundamental_sequence(zeta, 1 + g.below(3)));
  if (classify(v) == OrdinalKind::limit)
    candidates.push_back(fundamental_sequence(v, 1 + g.below(3)));
  candidates.push_back(hat(v));                   // drop the last monomial
  candidates.push_back(random_below(g, v));

  std::vector<Ordinal> legal;
  for (auto& c : candidates)
    if (c < v) legal.push_back(std::move(c));
  Move m;
  m.pivot = pivot;
  m.cap = legal[g.below(legal.size())];

  std::size_t keep_count = g.below(3);
  for (std::size_t k = 0; k < keep_count; ++k) {
    std::size_t idx = g.below(len + 3);
    if (idx != pivot && std::find(m.keep.begin(), m.keep.end(), idx) == m.keep.end())
      m.keep.push_back(idx);
  }
  return m;
}

}  // namespace ordsum
