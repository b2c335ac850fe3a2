#include "ordsum/sequence.hpp"

#include <algorithm>
#include <stdexcept>

#include "ordsum/rng.hpp"

namespace ordsum {

namespace {

void check_tail(const TailSpec& tail) {
  if (const auto* ap = std::get_if<ApproachTail>(&tail)) {
    if (classify(ap->mu) != OrdinalKind::limit)
      throw std::domain_error("ApproachTail: mu must be a limit ordinal");
  }
}

Ordinal tail_term(const TailSpec& tail, std::size_t j) {
  if (const auto* c = std::get_if<ConstTail>(&tail)) return c->value;
  const auto& ap = std::get<ApproachTail>(tail);
  return classical_add(ap.base, fundamental_sequence(ap.mu, j + 1));
}

// supremum of the tail terms (exclusive for Approach, attained for Const)
Ordinal tail_limit(const TailSpec& tail) {
  if (const auto* c = std::get_if<ConstTail>(&tail)) return c->value;
  const auto& ap = std::get<ApproachTail>(tail);
  return classical_add(ap.base, ap.mu);
}

}  // namespace

OmegaSequence::OmegaSequence() : tail_(ConstTail{Ordinal()}) {}

OmegaSequence::OmegaSequence(std::vector<Ordinal> prefix, TailSpec tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  check_tail(tail_);
}

Ordinal OmegaSequence::term_at(std::size_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  return tail_term(tail_, i - prefix_.size());
}

bool OmegaSequence::is_all_zero() const {
  if (!std::holds_alternative<ConstTail>(tail_)) return false;
  if (!std::get<ConstTail>(tail_).value.is_zero()) return false;
  return std::all_of(prefix_.begin(), prefix_.end(),
                     [](const Ordinal& v) { return v.is_zero(); });
}

bool OmegaSequence::operator==(const OmegaSequence& other) const {
  if (prefix_ != other.prefix_) return false;
  if (tail_.index() != other.tail_.index()) return false;
  if (const auto* c = std::get_if<ConstTail>(&tail_))
    return c->value == std::get<ConstTail>(other.tail_).value;
  const auto& a = std::get<ApproachTail>(tail_);
  const auto& b = std::get<ApproachTail>(other.tail_);
  return a.base == b.base && a.mu == b.mu;
}

Ordinal term_at(const OmegaSequence& s, std::size_t i) { return s.term_at(i); }

std::pair<Ordinal, Ordinal> invariants_of(const OmegaSequence& s) {
  if (const auto* c = std::get_if<ConstTail>(&s.tail())) {
    return {c->value, classical_add(c->value, Ordinal(std::uint64_t{1}))};
  }
  Ordinal lim = tail_limit(s.tail());
  return {lim, lim};
}

SumDecomposition decompose(const OmegaSequence& s) {
  SumDecomposition d;
  std::tie(d.zeta, d.epsilon) = invariants_of(s);
  for (std::size_t i = 0; i < s.prefix().size(); ++i) {
    const Ordinal& v = s.prefix()[i];
    if (v >= d.epsilon) d.e_special.emplace_back(i, v);
    if (v > d.zeta) d.z_special.emplace_back(i, v);
  }
  for (const auto& [i, v] : d.e_special) d.hearts.emplace_back(i, left_subtract(v, d.zeta));
  if (!d.zeta.is_zero()) {
    Ordinal zh = hat(d.zeta);
    std::vector<std::pair<std::size_t, Ordinal>> ds;
    for (const auto& [i, v] : d.e_special) ds.emplace_back(i, left_subtract(v, zh));
    d.diamonds = std::move(ds);
  }
  bool s1 = !d.zeta.is_zero() && classify(last_exponent(d.zeta)) == OrdinalKind::limit &&
            d.zeta == d.epsilon;
  d.clause = s1 ? SumClause::s1 : SumClause::s2;
  return d;
}

OmegaSequence normalize(const OmegaSequence& s) {
  std::vector<Ordinal> prefix;
  const Ordinal* const_value = nullptr;
  if (const auto* c = std::get_if<ConstTail>(&s.tail())) const_value = &c->value;
  for (const auto& v : s.prefix()) {
    if (v.is_zero()) continue;
    if (const_value && v == *const_value) continue;
    prefix.push_back(v);
  }
  std::sort(prefix.begin(), prefix.end(), [](const Ordinal& a, const Ordinal& b) { return a > b; });
  return OmegaSequence(std::move(prefix), s.tail());
}

OmegaSequence apply_move(const OmegaSequence& s, const Move& m, std::size_t prefix_cutoff) {
  if (!(m.cap < s.term_at(m.pivot))) throw std::domain_error("apply_move: cap >= pivot term");
  for (std::size_t k : m.keep)
    if (k == m.pivot) throw std::domain_error("apply_move: pivot in keep set");

  std::size_t len = s.prefix().size();
  std::size_t need = std::max(len, m.pivot + 1);
  for (std::size_t k : m.keep) need = std::max(need, k + 1);

  TailSpec new_tail;
  if (const auto* c = std::get_if<ConstTail>(&s.tail())) {
    new_tail = ConstTail{std::min(c->value, m.cap)};
  } else if (m.cap >= tail_limit(s.tail())) {
    new_tail = s.tail();  // every tail term is below the cap already
  } else {
    // surviving increasing tail terms below the cap become prefix entries
    std::size_t j = 0;
    while (tail_term(s.tail(), j) <= m.cap) {
      ++j;
      if (len + j > prefix_cutoff)
        throw std::length_error("apply_move: prefix cutoff exceeded while capping tail");
    }
    need = std::max(need, len + j);
    new_tail = ConstTail{m.cap};
  }
  if (need > prefix_cutoff) throw std::length_error("apply_move: prefix cutoff exceeded");

  std::vector<Ordinal> prefix;
  prefix.reserve(need);
  for (std::size_t i = 0; i < need; ++i) {
    Ordinal v = s.term_at(i);
    if (i == m.pivot)
      prefix.push_back(m.cap);
    else if (std::find(m.keep.begin(), m.keep.end(), i) != m.keep.end())
      prefix.push_back(std::move(v));
    else
      prefix.push_back(std::min(v, m.cap));
  }
  return OmegaSequence(std::move(prefix), std::move(new_tail));
}

std::vector<OmegaSequence> random_descent(const OmegaSequence& s, std::uint64_t seed,
                                          std::size_t step_budget) {
  Rng g(seed);
  std::vector<OmegaSequence> chain;
  OmegaSequence cur = normalize(s);
  while (!cur.is_all_zero()) {
    if (chain.size() >= step_budget)
      throw std::length_error("random_descent: step budget exhausted");
    Move m = random_move(g, cur);
    cur = normalize(apply_move(cur, m));
    chain.push_back(cur);
  }
  return chain;
}

}  // namespace ordsum
