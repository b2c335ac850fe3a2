#include "ordsum/verify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ordsum/notation.hpp"
#include "ordsum/rng.hpp"
#include "ordsum/sums.hpp"

namespace ordsum {

namespace {

using FiniteState = std::vector<std::uint64_t>;  // sorted descending, no zeros

FiniteState canonical_state(std::vector<std::uint64_t> vals) {
  vals.erase(std::remove(vals.begin(), vals.end(), 0u), vals.end());
  std::sort(vals.begin(), vals.end(), std::greater<>());
  return vals;
}

std::uint64_t rank_rec(const FiniteState& st, std::map<FiniteState, std::uint64_t>& memo) {
  auto it = memo.find(st);
  if (it != memo.end()) return it->second;
  std::uint64_t best = 0;  // sup+ over all canonical predecessors
  std::set<FiniteState> succs;
  for (std::size_t pivot = 0; pivot < st.size(); ++pivot) {
    if (pivot > 0 && st[pivot] == st[pivot - 1]) continue;  // same value, same successors
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < st.size(); ++i)
      if (i != pivot) rest.push_back(i);
    for (std::uint64_t cap = 0; cap < st[pivot]; ++cap) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rest.size()); ++mask) {
        FiniteState next;
        next.push_back(cap);
        for (std::size_t r = 0; r < rest.size(); ++r) {
          std::uint64_t v = st[rest[r]];
          next.push_back((mask >> r) & 1 ? v : std::min(v, cap));
        }
        succs.insert(canonical_state(std::move(next)));
      }
    }
  }
  for (const auto& t : succs) best = std::max(best, rank_rec(t, memo) + 1);
  memo[st] = best;
  return best;
}

std::string seq_str(const OmegaSequence& s) { return print_sequence(s); }

void fail(PropertyReport& rep, std::uint64_t seed, std::string what) {
  rep.failures.push_back(PropertyFailure{seed, std::move(what)});
}

// pointwise-smaller variant of s (possibly equal)
OmegaSequence pointwise_smaller(Rng& g, const OmegaSequence& s) {
  std::vector<Ordinal> prefix = s.prefix();
  for (auto& v : prefix)
    if (!v.is_zero() && g.chance(1, 2)) v = random_below(g, v);
  TailSpec tail = s.tail();
  if (const auto* c = std::get_if<ConstTail>(&tail)) {
    if (!c->value.is_zero() && g.chance(1, 2)) tail = ConstTail{random_below(g, c->value)};
  } else {
    const auto& ap = std::get<ApproachTail>(tail);
    switch (g.below(3)) {
      case 0: break;  // leave the tail alone
      case 1:
        if (!ap.base.is_zero()) tail = ApproachTail{random_below(g, ap.base), ap.mu};
        break;
      default: {
        // flatten below the first tail term
        Ordinal t0 = classical_add(ap.base, fundamental_sequence(ap.mu, 1));
        tail = ConstTail{g.chance(1, 2) ? t0 : random_below(g, t0)};
        break;
      }
    }
  }
  return OmegaSequence(std::move(prefix), std::move(tail));
}

bool pointwise_leq_sample(const OmegaSequence& a, const OmegaSequence& b, std::size_t upto) {
  for (std::size_t i = 0; i < upto; ++i)
    if (a.term_at(i) > b.term_at(i)) return false;
  return true;
}

}  // namespace

Ordinal rank_oracle_finite(const OmegaSequence& s, const HarnessBounds& bounds) {
  const auto* c = std::get_if<ConstTail>(&s.tail());
  if (!c || !c->value.is_zero())
    throw std::domain_error("rank_oracle_finite: tail must be const 0");
  std::vector<std::uint64_t> vals;
  for (const auto& v : s.prefix()) {
    if (!v.is_finite()) throw std::domain_error("rank_oracle_finite: infinite entry");
    Nat n = v.finite_value();
    if (n > Nat(bounds.rank_entry_bound))
      throw std::domain_error("rank_oracle_finite: entry above the harness bound");
    vals.push_back(n.convert_to<std::uint64_t>());
  }
  std::map<FiniteState, std::uint64_t> memo;
  return Ordinal(rank_rec(canonical_state(std::move(vals)), memo));
}

bool check_descent(const OmegaSequence& s, const Move& m) {
  return sum_s(apply_move(s, m)) < sum_s(s);
}

Move approach_move(const OmegaSequence& s, const Ordinal& eta) {
  if (!(eta < sum_s(s))) throw std::domain_error("approach_move: eta >= sum");
  BlockPlan plan = realize(s);
  Location loc = locate(plan, eta);
  Move m;
  m.pivot = loc.source;
  m.cap = loc.rank;
  for (SourceIndex j : finite_set_F(plan, eta))
    if (j != loc.source) m.keep.push_back(j);
  return m;
}

PropertyReport minimality_suite(std::size_t trials, std::uint64_t seed,
                                const HarnessBounds& bounds) {
  PropertyReport rep;
  rep.name = "minimality";
  if (trials > 0) {
    // fixture: the first split between the two clause evaluations
    OmegaSequence powers = parse_sequence("[1 ; approach 0 ~ w^w]");
    if (!(sum_s(powers) == parse_ordinal("w^w") && sum_s2(powers) == parse_ordinal("w^(w + 1)")))
      fail(rep, seed, "w^i fixture: expected sum_s = w^w and sum_s2 = w^(w + 1)");
  }
  for (std::uint64_t t = 0; t < trials; ++t) {
    ++rep.trials;
    Rng g = Rng::for_trial(seed, t);
    OmegaSequence s = random_sequence(g);
    if (sum_s(s) > sum_s2(s)) {
      fail(rep, t, "sum_s exceeds sum_s2 on " + seq_str(s));
      continue;
    }
    if (!invariants_of(s).first.is_zero() && sum_s1(s) > sum_s2(s))
      fail(rep, t, "sum_s1 exceeds sum_s2 on " + seq_str(s));
    // finite-support natural sequences: rank agrees with the sum
    std::vector<Ordinal> nat;
    for (std::size_t i = 0, n = g.below(4); i < n; ++i) nat.emplace_back(g.below(7));
    OmegaSequence fin(nat, ConstTail{Ordinal()});
    Ordinal rank = rank_oracle_finite(fin, bounds);
    if (rank != sum_s(fin) || rank != finite_natural_sum(nat))
      fail(rep, t, "rank oracle disagrees on " + seq_str(fin));
  }
  return rep;
}

PropertyReport impossibility_fixtures() {
  PropertyReport rep;
  rep.name = "impossibility";
  rep.trials = 1;
  Ordinal w2 = parse_ordinal("w*2");
  // the witness chain (2,2,...), (1,2,2,...), (1,1,2,...): all values equal
  for (std::size_t zeros = 0; zeros <= 3; ++zeros) {
    std::vector<Ordinal> prefix(zeros, Ordinal(std::uint64_t{1}));
    OmegaSequence s(prefix, ConstTail{Ordinal(std::uint64_t{2})});
    if (sum_s(s) != w2) fail(rep, 0, "descending-chain witness is not constant at " + seq_str(s));
  }
  // mutually cofinal reindexings all evaluate to w^2
  Ordinal w_sq = parse_ordinal("w^2");
  std::vector<OmegaSequence> cofinal = {
      parse_sequence("[ ; approach 0 ~ w]"),
      parse_sequence("[5, 27 ; approach 26 ~ w]"),
      parse_sequence("[4, 27, 256, 3125 ; approach 3124 ~ w]"),
  };
  for (const auto& s : cofinal)
    if (sum_s(s) != w_sq) fail(rep, 0, "mutually cofinal fixture differs at " + seq_str(s));
  return rep;
}

PropertyReport monotonicity_suite(std::size_t trials, std::uint64_t seed) {
  PropertyReport rep;
  rep.name = "monotonicity";
  if (trials > 0) {
    // documented non-property: strict e-special monotonicity fails
    OmegaSequence a = parse_sequence("[0 ; approach 0 ~ w]");
    OmegaSequence b = parse_sequence("[w ; approach 0 ~ w]");
    OmegaSequence c = parse_sequence("[ ; const w]");
    if (!(sum_s(a) == sum_s(b) && sum_s(b) == sum_s(c) && sum_s(c) == parse_ordinal("w^2")))
      fail(rep, seed, "e-special equality fixture broken");
  }
  for (std::uint64_t t = 0; t < trials; ++t) {
    ++rep.trials;
    Rng g = Rng::for_trial(seed, t);
    OmegaSequence big = random_sequence(g);
    OmegaSequence small = pointwise_smaller(g, big);
    if (!pointwise_leq_sample(small, big, 24)) {
      ++rep.skipped;
      continue;
    }
    if (sum_s(small) > sum_s(big))
      fail(rep, t, "weak monotonicity of sum_s: " + seq_str(small) + " vs " + seq_str(big));
    if (sum_s2(small) > sum_s2(big))
      fail(rep, t, "weak monotonicity of sum_s2: " + seq_str(small) + " vs " + seq_str(big));

    // strict monotonicity on z-special entries: lower one prefix entry
    Ordinal zeta = invariants_of(big).first;
    std::vector<Ordinal> prefix = big.prefix();
    Ordinal v = classical_add(zeta, Ordinal(1 + g.below(3)));
    if (g.chance(1, 2)) v = classical_add(v, Ordinal::omega_pow(random_below(g, Ordinal::omega())));
    std::size_t at = prefix.size();
    prefix.push_back(v);
    OmegaSequence zbig(prefix, big.tail());
    Ordinal lowered = random_below(g, v);
    if (lowered < zeta) lowered = zeta;
    prefix[at] = lowered;
    OmegaSequence zsmall(prefix, big.tail());
    if (!(sum_s(zsmall) < sum_s(zbig)))
      fail(rep, t, "strict z-monotonicity of sum_s: " + seq_str(zsmall) + " vs " + seq_str(zbig));
    if (!(sum_s2(zsmall) < sum_s2(zbig)))
      fail(rep, t, "strict z-monotonicity of sum_s2: " + seq_str(zsmall) + " vs " + seq_str(zbig));
  }
  return rep;
}

PropertyReport rank_suite(std::size_t trials, std::uint64_t seed, const HarnessBounds& bounds) {
  PropertyReport rep;
  rep.name = "rank";
  for (std::uint64_t t = 0; t < trials; ++t) {
    ++rep.trials;
    Rng g = Rng::for_trial(seed, t);
    OmegaSequence s = normalize(random_sequence(g));
    if (s.is_all_zero()) {
      ++rep.skipped;
      continue;
    }
    // downward: any move strictly decreases the sum
    Move m = random_move(g, s);
    try {
      if (!check_descent(s, m)) {
        fail(rep, t, "move failed to decrease the sum on " + seq_str(s));
        continue;
      }
    } catch (const std::length_error&) {
      ++rep.skipped;
      continue;
    }
    // upward: some predecessor reaches at least eta, for eta below the sum
    Ordinal total = sum_s(s);
    Ordinal eta = random_below(g, total);
    try {
      Move am = approach_move(s, eta);
      Ordinal reached = sum_s(apply_move(s, am));
      if (!(eta <= reached && reached < total))
        fail(rep, t, "approach move out of range on " + seq_str(s));
    } catch (const std::length_error&) {
      ++rep.skipped;
    }
  }
  return rep;
}

PropertyReport realization_suite(std::size_t trials, std::uint64_t seed,
                                 const HarnessBounds& bounds) {
  PropertyReport rep;
  rep.name = "realization";
  for (std::uint64_t t = 0; t < trials; ++t) {
    ++rep.trials;
    Rng g = Rng::for_trial(seed, t);
    OmegaSequence s = random_sequence(g);
    BlockPlan plan = realize(s);
    if (plan.claimed_total() != sum_s(s)) {
      fail(rep, t, "plan total differs from the sum on " + seq_str(s));
      continue;
    }
    OrmfReport ormf = check_ormf(plan, 16, seed ^ t);
    if (!ormf.pass) {
      fail(rep, t, "ormf check failed on " + seq_str(s) + ": " + ormf.detail);
      continue;
    }
    if (plan.claimed_total().is_zero()) continue;
    // locate is injective with increasing ranks per source
    std::map<SourceIndex, Ordinal> last_rank;
    std::set<std::pair<SourceIndex, std::string>> seen;
    std::vector<Ordinal> etas;
    for (int k = 0; k < 12; ++k) etas.push_back(random_below(g, plan.claimed_total()));
    std::sort(etas.begin(), etas.end());
    etas.erase(std::unique(etas.begin(), etas.end()), etas.end());
    for (const auto& eta : etas) {
      Location loc = locate(plan, eta);
      if (!seen.insert({loc.source, print_ordinal(loc.rank)}).second) {
        fail(rep, t, "locate is not injective on " + seq_str(s));
        break;
      }
      auto it = last_rank.find(loc.source);
      if (it != last_rank.end() && !(it->second < loc.rank)) {
        fail(rep, t, "ranks do not increase with eta on " + seq_str(s));
        break;
      }
      last_rank[loc.source] = loc.rank;
      if (loc.rank >= plan.source_value(loc.source)) {
        fail(rep, t, "rank outside the source on " + seq_str(s));
        break;
      }
    }
    // truncation: the sum of the order types below eta straddles eta
    Ordinal eta = random_below(g, plan.claimed_total());
    auto trunc = truncated_sequence(plan, eta);
    if (!trunc) {
      ++rep.skipped;
      continue;
    }
    Ordinal tsum = sum_s(*trunc);
    if (!pointwise_leq_sample(*trunc, s, 24))
      fail(rep, t, "truncation not pointwise below on " + seq_str(s));
    else if (!(tsum < sum_s(s)) || !(eta <= tsum))
      fail(rep, t, "truncation sum out of range on " + seq_str(s) + " at " + print_ordinal(eta));
  }
  return rep;
}

PropertyReport sumh_suite(std::size_t trials, std::uint64_t seed) {
  PropertyReport rep;
  rep.name = "sumh";
  if (trials > 0) {
    Ordinal w = Ordinal::omega();
    if (sum_h(parse_sequence("[ ; const 1]")) != w || sum_h(parse_sequence("[ ; const 2]")) != w)
      fail(rep, seed, "constant tails of 1 and 2 must both give w");
  }
  for (std::uint64_t t = 0; t < trials; ++t) {
    ++rep.trials;
    Rng g = Rng::for_trial(seed, t);
    OmegaSequence s = random_sequence(g);
    Ordinal h = sum_h(s);
    // prefix partial sums stay below, and approach the value from below
    bool ok = true;
    for (std::size_t n = 0; n <= 12 && ok; ++n)
      if (partial_natural_sum(s, n) > h) {
        fail(rep, t, "partial sum exceeds sum_h on " + seq_str(s));
        ok = false;
      }
    if (!ok) continue;
    if (!h.is_zero()) {
      Ordinal m = random_below(g, h);
      bool beaten = false;
      for (std::size_t n = 0; n <= 4096 && !beaten; ++n)
        if (partial_natural_sum(s, n) > m) beaten = true;
      if (!beaten) {
        ++rep.skipped;  // slow approach; the bound, not the value, ran out
      }
    }
    if (h > sum_s(s)) fail(rep, t, "sum_h exceeds sum_s on " + seq_str(s));
  }
  return rep;
}

std::vector<PropertyReport> run_suites(const std::string& name, std::size_t trials,
                                       std::uint64_t seed, const HarnessBounds& bounds) {
  std::vector<PropertyReport> out;
  auto want = [&](const char* n) { return name == "all" || name == n; };
  if (want("minimality")) out.push_back(minimality_suite(trials, seed, bounds));
  if (want("impossibility")) out.push_back(impossibility_fixtures());
  if (want("monotonicity")) out.push_back(monotonicity_suite(trials, seed));
  if (want("rank")) out.push_back(rank_suite(trials, seed, bounds));
  if (want("realization")) out.push_back(realization_suite(trials, seed, bounds));
  if (want("sumh")) out.push_back(sumh_suite(trials, seed));
  if (out.empty()) throw std::domain_error("unknown suite: " + name);
  return out;
}

std::string render_report(const PropertyReport& r, bool machine, double skip_ceiling) {
  std::ostringstream os;
  if (machine) {
    os << "suite\t" << r.name << "\ttrials\t" << r.trials << "\tfailures\t" << r.failures.size()
       << "\tskipped\t" << r.skipped << "\tresult\t" << (r.passed(skip_ceiling) ? "pass" : "fail")
       << "\n";
    for (const auto& f : r.failures)
      os << "failure\t" << r.name << "\tseed\t" << f.seed << "\t" << f.description << "\n";
    return os.str();
  }
  os << (r.passed(skip_ceiling) ? "PASS" : "FAIL") << " " << r.name << ": " << r.trials
     << " trials, " << r.failures.size() << " failures, " << r.skipped << " skipped\n";
  for (const auto& f : r.failures)
    os << "  failure (seed " << f.seed << "): " << f.description << "\n";
  return os.str();
}

}  // namespace ordsum
