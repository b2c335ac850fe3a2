#include "ordsum/realize.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ordsum/rng.hpp"
#include "ordsum/sums.hpp"

namespace ordsum {

namespace {

Ordinal one() { return Ordinal(std::uint64_t{1}); }

// predecessor of a successor ordinal
Ordinal pred(const Ordinal& x) {
  if (classify(x) != OrdinalKind::successor) throw std::domain_error("pred: not a successor");
  auto terms = x.terms();
  if (terms.back().coefficient > 1)
    terms.back().coefficient -= 1;
  else
    terms.pop_back();
  return Ordinal::from_terms(std::move(terms));
}

// x = w^e * q + r with q < w and r < w^e; pre: x < w^{e+1}
std::pair<Nat, Ordinal> divmod_pow(const Ordinal& x, const Ordinal& e) {
  Nat q = 0;
  std::vector<CnfTerm> rest;
  for (const auto& t : x.terms()) {
    if (t.exponent > e) throw std::logic_error("divmod_pow: value too large");
    if (t.exponent == e)
      q = t.coefficient;
    else
      rest.push_back(t);
  }
  return {std::move(q), Ordinal::from_terms(std::move(rest))};
}

std::uint64_t to_index(const Nat& q) {
  if (q > Nat(1) << 48) throw std::length_error("member index out of range");
  return q.convert_to<std::uint64_t>();
}

// pairing for the stacked fixture: slot(u, n) = 2^u (2n + 1) - 1
std::size_t stacked_slot(std::uint64_t u, std::uint64_t n) {
  if (u >= 40 || n >= (std::uint64_t{1} << 20)) throw std::length_error("stacked index overflow");
  return static_cast<std::size_t>(((2 * n + 1) << u) - 1);
}

std::pair<std::uint64_t, std::uint64_t> stacked_coords(std::size_t slot) {
  std::uint64_t v = static_cast<std::uint64_t>(slot) + 1;
  std::uint64_t u = 0;
  while ((v & 1) == 0) {
    v >>= 1;
    ++u;
  }
  return {u, (v - 1) / 2};
}

Ordinal segment_total(const Segment& seg) {
  if (const auto* s = std::get_if<SingleSegment>(&seg)) return block_length(s->block);
  return std::get<FamilySegment>(seg).total;
}

struct SlotView {
  const OmegaSequence* seq;
  std::size_t len;

  Ordinal term(std::size_t slot) const { return seq->term_at(len + slot); }
};

// chunk length of slot j in a family drawing from [chunk_lo, ...)
Ordinal slot_chunk(const SlotView& sv, const FamilySegment& fam, std::size_t slot) {
  return left_subtract(std::min(sv.term(slot), fam.chunk_hi), fam.chunk_lo);
}

}  // namespace

Ordinal block_length(const Block& b) { return left_subtract(b.src_hi, b.src_lo); }

BlockPlan::BlockPlan(OmegaSequence sequence, std::vector<Segment> segments, Ordinal claimed_total)
    : seq_(std::move(sequence)), segments_(std::move(segments)), total_(std::move(claimed_total)) {
  Ordinal at;
  starts_.reserve(segments_.size());
  for (const auto& seg : segments_) {
    starts_.push_back(at);
    at = classical_add(at, segment_total(seg));
  }
  if (at != total_) throw std::logic_error("BlockPlan: segment lengths do not add up");
}

// ---------------------------------------------------------------------------
// construction

namespace {

struct SItem {
  Ordinal exp;       // contributes S-summand w^exp
  bool zeta = false;
  std::size_t level = 0;     // zeta items: 0 = largest monomial of zeta
  SourceIndex source = 0;    // special items
};

}  // namespace

BlockPlan realize(const OmegaSequence& s) {
  SumDecomposition d = decompose(s);
  const std::size_t len = s.prefix().size();
  const bool use_diamonds = d.clause == SumClause::s1;
  SlotView sv{&s, len};

  // per-special payload (heart or diamond) and its leading additive exponent
  std::set<std::size_t> special_index;
  std::vector<std::optional<Ordinal>> payload(len);  // engaged for specials
  for (const auto& [i, v] : d.e_special) special_index.insert(i);
  const auto& pays = use_diamonds ? *d.diamonds : d.hearts;
  for (const auto& [i, v] : pays) payload[i] = v;

  std::vector<SItem> items;
  for (const auto& [i, v] : pays)
    for (const auto& mono : additive_terms(v)) items.push_back(SItem{mono.leading().exponent, false, 0, i});

  // zeta monomial exponents, largest first, with interval boundaries
  std::vector<Ordinal> zexp;
  std::vector<Ordinal> hlo, zhi;  // chunk bounds per level
  if (!d.zeta.is_zero()) {
    for (const auto& m : additive_terms(d.zeta)) zexp.push_back(m.leading().exponent);
    Ordinal at;
    for (const auto& e : zexp) {
      hlo.push_back(at);
      at = classical_add(at, Ordinal::omega_pow(e));
      zhi.push_back(at);
    }
    for (std::size_t q = 0; q < zexp.size(); ++q) {
      bool last = q + 1 == zexp.size();
      Ordinal e = (last && use_diamonds) ? zexp[q] : classical_add(zexp[q], one());
      items.push_back(SItem{std::move(e), true, q, 0});
    }
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const SItem& a, const SItem& b) { return a.exp > b.exp; });

  const bool const_tail = std::holds_alternative<ConstTail>(s.tail());
  const std::size_t last_level = zexp.empty() ? 0 : zexp.size() - 1;

  std::vector<Ordinal> pos(len);  // per-prefix-source consumption
  std::vector<Segment> segments;
  Ordinal total;

  auto scan_first_slot = [&](const Ordinal& bound) {
    for (std::size_t j = 0; j < 64; ++j)
      if (sv.term(j) > bound) return j;
    throw std::logic_error("realize: no tail slot above chunk base");
  };

  for (const auto& item : items) {
    if (!item.zeta) {
      Ordinal hi = classical_add(pos[item.source], Ordinal::omega_pow(item.exp));
      segments.push_back(SingleSegment{Block{item.source, pos[item.source], hi}});
      pos[item.source] = hi;
      total = classical_add(total, Ordinal::omega_pow(item.exp));
      continue;
    }
    std::size_t q = item.level;
    const Ordinal& h = hlo[q];
    const Ordinal& z = zhi[q];
    bool level_s1 = use_diamonds && q == last_level;
    bool level_graded = !use_diamonds && q == last_level && !const_tail;

    FamilySegment fam;
    fam.chunk_lo = h;
    fam.chunk_hi = level_s1 || level_graded ? d.zeta : z;
    if (level_s1) {
      fam.kind = FamilyKind::increasing_blocks;
      fam.total = Ordinal::omega_pow(zexp[q]);
    } else if (level_graded) {
      fam.kind = FamilyKind::graded_chains;
      fam.block_len = Ordinal::omega_pow(zexp[q]);
      fam.slice = Ordinal::omega_pow(pred(zexp[q]));
      fam.total = Ordinal::omega_pow(classical_add(zexp[q], one()));
    } else {
      fam.kind = FamilyKind::equal_blocks;
      fam.block_len = Ordinal::omega_pow(zexp[q]);
      fam.total = Ordinal::omega_pow(classical_add(zexp[q], one()));
    }

    for (std::size_t i = 0; i < len; ++i) {
      if (special_index.count(i)) {
        const Ordinal& v = *payload[i];
        bool joins = v.is_zero() || (!level_s1 && v.leading().exponent <= zexp[q]);
        if (!joins) continue;
        if (level_s1) continue;  // diamond payloads never reach the last level
        if (pos[i] != h) throw std::logic_error("realize: special chunk misaligned");
        if (level_graded) {
          // full-length leftovers go in front of the chains
          fam.head.push_back(Block{i, h, d.zeta});
          pos[i] = d.zeta;
        } else {
          fam.head.push_back(Block{i, h, z});
          pos[i] = z;
        }
        continue;
      }
      const Ordinal& v = s.prefix()[i];
      if (!(v > h)) continue;
      if (level_s1 || level_graded) {
        // v < zeta here: values >= epsilon = zeta are special
        if (level_s1)
          fam.head.push_back(Block{i, h, v});
        else
          fam.graded_prefix.emplace_back(i, left_subtract(v, h));
        pos[i] = v;
      } else {
        Ordinal hi = std::min(v, z);
        fam.head.push_back(Block{i, h, hi});
        pos[i] = hi;
      }
    }

    if (level_s1 || level_graded) {
      fam.first_slot = scan_first_slot(h);
    } else {
      fam.first_slot = 0;
      Ordinal t0 = sv.term(0);
      if (t0 < z) throw std::logic_error("realize: tail slot below full chunk");
    }
    total = classical_add(total, fam.total);
    segments.push_back(std::move(fam));
  }

  Ordinal expect = sum_s(s);
  if (total != expect) throw std::logic_error("realize: total does not match the sum");
  return BlockPlan(s, std::move(segments), std::move(total));
}

BlockPlan realize_finite(std::span<const Ordinal> xs) {
  std::vector<Ordinal> prefix(xs.begin(), xs.end());
  return realize(OmegaSequence(std::move(prefix), ConstTail{Ordinal()}));
}

BlockPlan stacked_plan(const OmegaSequence& s) {
  if (!std::holds_alternative<ApproachTail>(s.tail()))
    throw std::domain_error("stacked_plan: needs an Approach tail");
  const auto& ap = std::get<ApproachTail>(s.tail());
  Ordinal lim = classical_add(ap.base, ap.mu);
  std::size_t len = s.prefix().size();

  std::vector<Segment> segments;
  Ordinal total;
  for (std::size_t i = 0; i < len; ++i) {
    const Ordinal& v = s.prefix()[i];
    if (v.is_zero()) continue;
    Ordinal hi = classical_add(total, v);
    segments.push_back(SingleSegment{Block{i, Ordinal(), v}});
    total = hi;
  }
  FamilySegment fam;
  fam.kind = FamilyKind::stacked_chains;
  fam.chunk_lo = Ordinal();
  fam.chunk_hi = lim;
  fam.block_len = lim;  // each sub-chain is cofinal in the tail limit
  fam.total = natural_product(lim, Ordinal::omega());
  fam.first_slot = 0;
  total = classical_add(total, fam.total);
  segments.push_back(std::move(fam));
  return BlockPlan(s, std::move(segments), std::move(total));
}

// ---------------------------------------------------------------------------
// position queries

namespace {

// lexicographic member coordinate inside a family segment
struct MemberKey {
  int phase = 0;   // 0 = head, 1 = scheduled part
  Nat a;           // head index / uniform member / sub-chain
  std::uint64_t b = 0;  // member within a sub-chain

  bool operator<(const MemberKey& o) const {
    if (phase != o.phase) return phase < o.phase;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
};

struct Resolved {
  std::size_t seg = 0;
  Block block;
  Ordinal inner;   // offset within the block
  MemberKey key;   // meaningful for family segments
};

// walk one graded sub-chain u; calls fn(block, member_index) for each member
// in order, returns when fn returns false
template <class Fn>
void walk_graded_chain(const BlockPlan& p, const FamilySegment& fam, const Nat& u, Fn&& fn,
                       std::size_t budget) {
  SlotView sv{&p.sequence(), p.prefix_size()};
  Ordinal lo_u = classical_add(fam.chunk_lo, natural_product(fam.slice, Ordinal(Nat(u))));
  Ordinal hi_u = classical_add(lo_u, fam.slice);
  std::uint64_t member = 0;
  for (const auto& [src, dlen] : fam.graded_prefix) {
    Ordinal top = classical_add(fam.chunk_lo, dlen);
    if (top > lo_u) {
      Block b{src, lo_u, std::min(hi_u, top)};
      if (!fn(b, member)) return;
      ++member;
    }
  }
  for (std::size_t j = fam.first_slot;; ++j) {
    if (budget-- == 0) throw std::length_error("graded chain walk budget exhausted");
    Ordinal top = std::min(sv.term(j), fam.chunk_hi);
    if (top > lo_u) {
      Block b{sv.len + j, lo_u, std::min(hi_u, top)};
      if (!fn(b, member)) return;
      ++member;
    }
  }
}

Resolved resolve_family(const BlockPlan& p, std::size_t seg, const FamilySegment& fam,
                        const Ordinal& offset, std::size_t budget) {
  SlotView sv{&p.sequence(), p.prefix_size()};
  Resolved r;
  r.seg = seg;
  switch (fam.kind) {
    case FamilyKind::equal_blocks: {
      Ordinal at;
      for (std::size_t hidx = 0; hidx < fam.head.size(); ++hidx) {
        Ordinal nxt = classical_add(at, block_length(fam.head[hidx]));
        if (offset < nxt) {
          r.block = fam.head[hidx];
          r.inner = left_subtract(offset, at);
          r.key = MemberKey{0, Nat(hidx), 0};
          return r;
        }
        at = nxt;
      }
      Ordinal rem = left_subtract(offset, at);
      auto [q, inner] = divmod_pow(rem, fam.block_len.leading().exponent);
      std::size_t j = fam.first_slot + static_cast<std::size_t>(to_index(q));
      r.block = Block{sv.len + j, fam.chunk_lo, fam.chunk_hi};
      r.inner = std::move(inner);
      r.key = MemberKey{1, q, 0};
      return r;
    }
    case FamilyKind::increasing_blocks: {
      Ordinal at;
      for (std::size_t hidx = 0; hidx < fam.head.size(); ++hidx) {
        Ordinal nxt = classical_add(at, block_length(fam.head[hidx]));
        if (offset < nxt) {
          r.block = fam.head[hidx];
          r.inner = left_subtract(offset, at);
          r.key = MemberKey{0, Nat(hidx), 0};
          return r;
        }
        at = nxt;
      }
      for (std::size_t j = fam.first_slot;; ++j) {
        if (budget-- == 0) throw std::length_error("locate: walk budget exhausted");
        Block b{sv.len + j, fam.chunk_lo, std::min(sv.term(j), fam.chunk_hi)};
        Ordinal nxt = classical_add(at, block_length(b));
        if (offset < nxt) {
          r.block = b;
          r.inner = left_subtract(offset, at);
          r.key = MemberKey{1, Nat(j - fam.first_slot), 0};
          return r;
        }
        at = nxt;
      }
    }
    case FamilyKind::graded_chains: {
      auto [q, rem] = divmod_pow(offset, fam.block_len.leading().exponent);
      if (q < fam.head.size()) {
        std::size_t hidx = static_cast<std::size_t>(to_index(q));
        r.block = fam.head[hidx];
        r.inner = std::move(rem);
        r.key = MemberKey{0, Nat(hidx), 0};
        return r;
      }
      Nat u = q - fam.head.size();
      Ordinal at;
      bool found = false;
      walk_graded_chain(
          p, fam, u,
          [&](const Block& b, std::uint64_t) {
            Ordinal nxt = classical_add(at, block_length(b));
            if (rem < nxt) {
              r.block = b;
              r.inner = left_subtract(rem, at);
              // members of one chain are ordered by source index
              r.key = MemberKey{1, u, static_cast<std::uint64_t>(b.source)};
              found = true;
              return false;
            }
            at = nxt;
            return true;
          },
          budget);
      if (!found) throw std::logic_error("graded chain ran short");
      return r;
    }
    case FamilyKind::stacked_chains: {
      auto [u, rem] = [&] {
        // sub-chain length may have several CNF terms; divide via repeated subtraction
        Nat uu = 0;
        Ordinal rm = offset;
        while (rm >= fam.block_len) {
          rm = left_subtract(rm, fam.block_len);
          ++uu;
          if (uu > 1000000) throw std::length_error("stacked: sub-chain index overflow");
        }
        return std::make_pair(std::move(uu), std::move(rm));
      }();
      Ordinal at;
      for (std::uint64_t n = 0;; ++n) {
        if (budget-- == 0) throw std::length_error("locate: walk budget exhausted");
        std::size_t j = stacked_slot(to_index(u), n);
        Block b{sv.len + j, Ordinal(), sv.term(j)};
        Ordinal nxt = classical_add(at, block_length(b));
        if (rem < nxt) {
          r.block = b;
          r.inner = left_subtract(rem, at);
          r.key = MemberKey{1, u, n};
          return r;
        }
        at = nxt;
      }
    }
  }
  throw std::logic_error("resolve_family: bad kind");
}

Resolved resolve(const BlockPlan& p, const Ordinal& eta, std::size_t budget) {
  if (!(eta < p.claimed_total())) throw std::domain_error("locate: position beyond the plan");
  std::size_t k = 0;
  while (k + 1 < p.segments().size() && p.segment_start(k + 1) <= eta) ++k;
  Ordinal offset = left_subtract(eta, p.segment_start(k));
  if (const auto* single = std::get_if<SingleSegment>(&p.segments()[k])) {
    Resolved r;
    r.seg = k;
    r.block = single->block;
    r.inner = std::move(offset);
    return r;
  }
  return resolve_family(p, k, std::get<FamilySegment>(p.segments()[k]), offset, budget);
}

}  // namespace

Location locate(const BlockPlan& p, const Ordinal& eta, std::size_t budget) {
  Resolved r = resolve(p, eta, budget);
  return Location{r.block.source, classical_add(r.block.src_lo, r.inner)};
}

OffenderSet offenders(const BlockPlan& p, const Ordinal& eta, std::size_t budget) {
  Resolved r = resolve(p, eta, budget);
  Ordinal rho = classical_add(r.block.src_lo, r.inner);
  SlotView sv{&p.sequence(), p.prefix_size()};
  OffenderSet out;
  std::set<SourceIndex> acc;

  auto add = [&](SourceIndex j, const Ordinal& reach) {
    if (j != r.block.source && reach > rho) acc.insert(j);
  };
  auto infinite = [&](std::size_t seg, const char* what) {
    out.finite = false;
    std::ostringstream os;
    os << "segment " << seg << ": " << what
       << " puts points of arbitrarily high rank before this position";
    out.infinite_reason = os.str();
  };

  for (std::size_t k = 0; k < r.seg && out.finite; ++k) {
    if (const auto* single = std::get_if<SingleSegment>(&p.segments()[k])) {
      add(single->block.source, single->block.src_hi);
      continue;
    }
    const auto& fam = std::get<FamilySegment>(p.segments()[k]);
    for (const auto& b : fam.head) add(b.source, b.src_hi);
    for (const auto& [src, dlen] : fam.graded_prefix)
      add(src, classical_add(fam.chunk_lo, dlen));
    if (fam.chunk_hi > rho) infinite(k, "an infinite scheduled family");
  }
  if (!out.finite) return out;

  // portion of the containing segment strictly before eta
  if (const auto* fam_p = std::get_if<FamilySegment>(&p.segments()[r.seg])) {
    const auto& fam = *fam_p;
    std::size_t nheads =
        r.key.phase == 0 ? static_cast<std::size_t>(to_index(r.key.a)) : fam.head.size();
    for (std::size_t h = 0; h < nheads; ++h) add(fam.head[h].source, fam.head[h].src_hi);
    if (r.key.phase == 1) {
      switch (fam.kind) {
        case FamilyKind::equal_blocks: {
          std::uint64_t q = to_index(r.key.a);
          for (std::uint64_t m = 0; m < q; ++m)
            add(sv.len + fam.first_slot + static_cast<std::size_t>(m), fam.chunk_hi);
          break;
        }
        case FamilyKind::increasing_blocks: {
          std::uint64_t n = to_index(r.key.a);
          for (std::uint64_t m = 0; m < n; ++m) {
            std::size_t j = fam.first_slot + static_cast<std::size_t>(m);
            add(sv.len + j, std::min(sv.term(j), fam.chunk_hi));
          }
          break;
        }
        case FamilyKind::graded_chains: {
          // earlier sub-chains stay strictly below this slice; same-chain
          // members before this one are the only candidates
          walk_graded_chain(
              p, fam, r.key.a,
              [&](const Block& b, std::uint64_t) {
                if (static_cast<std::uint64_t>(b.source) >= r.key.b) return false;
                add(b.source, b.src_hi);
                return true;
              },
              budget);
          break;
        }
        case FamilyKind::stacked_chains: {
          if (r.key.a > 0 && fam.chunk_hi > rho) {
            infinite(r.seg, "earlier stacked sub-chains");
            return out;
          }
          for (std::uint64_t m = 0; m < r.key.b; ++m) {
            std::size_t j = stacked_slot(to_index(r.key.a), m);
            add(sv.len + j, sv.term(j));
          }
          break;
        }
      }
    }
  }
  out.sources.assign(acc.begin(), acc.end());
  return out;
}

std::vector<SourceIndex> finite_set_F(const BlockPlan& p, const Ordinal& eta,
                                      std::size_t budget) {
  OffenderSet o = offenders(p, eta, budget);
  if (!o.finite) throw std::runtime_error("finite_set_F: offender set is infinite: " + o.infinite_reason);
  return std::move(o.sources);
}

// ---------------------------------------------------------------------------
// per-source views

namespace {

struct SourceBlock {
  Block block;
  std::size_t seg;
  MemberKey key;
};

std::vector<SourceBlock> source_blocks_keyed(const BlockPlan& p, SourceIndex i,
                                             std::size_t budget) {
  SlotView sv{&p.sequence(), p.prefix_size()};
  std::vector<SourceBlock> out;
  for (std::size_t k = 0; k < p.segments().size(); ++k) {
    if (const auto* single = std::get_if<SingleSegment>(&p.segments()[k])) {
      if (single->block.source == i) out.push_back({single->block, k, MemberKey{}});
      continue;
    }
    const auto& fam = std::get<FamilySegment>(p.segments()[k]);
    for (std::size_t h = 0; h < fam.head.size(); ++h)
      if (fam.head[h].source == i) out.push_back({fam.head[h], k, MemberKey{0, Nat(h), 0}});
    switch (fam.kind) {
      case FamilyKind::equal_blocks: {
        if (i >= sv.len && i - sv.len >= fam.first_slot) {
          Nat q = Nat(i - sv.len - fam.first_slot);
          out.push_back({Block{i, fam.chunk_lo, fam.chunk_hi}, k, MemberKey{1, q, 0}});
        }
        break;
      }
      case FamilyKind::increasing_blocks: {
        if (i >= sv.len && i - sv.len >= fam.first_slot) {
          std::size_t j = i - sv.len;
          out.push_back({Block{i, fam.chunk_lo, std::min(sv.term(j), fam.chunk_hi)}, k,
                         MemberKey{1, Nat(j - fam.first_slot), 0}});
        }
        break;
      }
      case FamilyKind::graded_chains: {
        Ordinal d;
        bool participates = false;
        for (const auto& [src, dlen] : fam.graded_prefix)
          if (src == i) {
            d = dlen;
            participates = true;
          }
        if (!participates && i >= sv.len && i - sv.len >= fam.first_slot) {
          d = slot_chunk(sv, fam, i - sv.len);
          participates = !d.is_zero();
        }
        if (!participates) break;
        Ordinal at = fam.chunk_lo;
        Ordinal top = classical_add(fam.chunk_lo, d);
        for (Nat u = 0; at < top; ++u) {
          if (budget-- == 0) throw std::length_error("source_blocks: budget exhausted");
          Ordinal hi = std::min(classical_add(at, fam.slice), top);
          out.push_back({Block{i, at, hi}, k, MemberKey{1, u, static_cast<std::uint64_t>(i)}});
          at = hi;
        }
        break;
      }
      case FamilyKind::stacked_chains: {
        if (i >= sv.len) {
          auto [u, n] = stacked_coords(i - sv.len);
          out.push_back({Block{i, Ordinal(), sv.term(i - sv.len)}, k, MemberKey{1, Nat(u), n}});
        }
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Block> source_blocks(const BlockPlan& p, SourceIndex i, std::size_t budget) {
  std::vector<Block> out;
  for (auto& sb : source_blocks_keyed(p, i, budget)) out.push_back(std::move(sb.block));
  return out;
}

// ---------------------------------------------------------------------------
// ormf checking

OrmfReport check_ormf(const BlockPlan& p, std::size_t sample_budget, std::uint64_t seed) {
  OrmfReport rep;
  SlotView sv{&p.sequence(), p.prefix_size()};

  // partition: per-source blocks must tile [0, value) in increasing order
  std::vector<SourceIndex> probes;
  for (std::size_t i = 0; i < sv.len; ++i) probes.push_back(i);
  for (std::size_t j = 0; j < 12; ++j) probes.push_back(sv.len + j);
  for (SourceIndex i : probes) {
    Ordinal value = p.source_value(i);
    Ordinal at;
    for (const auto& b : source_blocks(p, i)) {
      if (b.src_lo != at || !(b.src_hi > b.src_lo)) {
        rep.malformed = true;
        std::ostringstream os;
        os << "source " << i << ": blocks do not tile the source in order";
        rep.detail = os.str();
        return rep;
      }
      at = b.src_hi;
    }
    if (at != value) {
      rep.malformed = true;
      std::ostringstream os;
      os << "source " << i << ": blocks cover a proper initial segment only";
      rep.detail = os.str();
      return rep;
    }
  }

  // schematic: an infinite scheduled part must stay rank-below every later
  // block start; stacked sub-chains fail against their own later sub-chains
  auto min_rank = [&](const Segment& seg) {
    if (const auto* single = std::get_if<SingleSegment>(&seg)) return single->block.src_lo;
    return std::get<FamilySegment>(seg).chunk_lo;
  };
  for (std::size_t k = 0; k < p.segments().size(); ++k) {
    const auto* fam = std::get_if<FamilySegment>(&p.segments()[k]);
    if (!fam) continue;
    if (fam->kind == FamilyKind::stacked_chains && fam->chunk_hi > fam->chunk_lo) {
      rep.witness = OrmfWitness{
          classical_add(p.segment_start(k), fam->block_len),
          "start of the second stacked sub-chain: every earlier sub-chain keeps "
          "infinitely many sources at equal or higher rank"};
      return rep;
    }
    for (std::size_t k2 = k + 1; k2 < p.segments().size(); ++k2) {
      if (fam->chunk_hi > min_rank(p.segments()[k2])) {
        rep.witness = OrmfWitness{
            p.segment_start(k2),
            "a later block starts below the rank reach of an earlier scheduled family"};
        return rep;
      }
    }
  }

  // pointwise samples: locate consistency and offender soundness
  if (!p.claimed_total().is_zero()) {
    Rng g(seed);
    std::vector<Ordinal> etas;
    for (std::size_t t = 0; t < sample_budget; ++t) etas.push_back(random_below(g, p.claimed_total()));
    for (const auto& eta : etas) {
      OffenderSet o = offenders(p, eta);
      if (!o.finite) {
        rep.witness = OrmfWitness{eta, o.infinite_reason};
        return rep;
      }
      ++rep.positions_sampled;
    }
    // sampled pairs theta < eta: an earlier equal-or-higher-rank point's
    // source must be in the offender set
    for (std::size_t t = 0; t + 1 < etas.size() && t < sample_budget; ++t) {
      Ordinal a = etas[t], b = etas[t + 1];
      if (a == b) continue;
      Ordinal theta = std::min(a, b), eta = std::max(a, b);
      Location lt = locate(p, theta), le = locate(p, eta);
      if (lt.source != le.source && lt.rank >= le.rank) {
        auto f = finite_set_F(p, eta);
        if (!std::binary_search(f.begin(), f.end(), lt.source)) {
          rep.witness = OrmfWitness{eta, "offender set misses an observed earlier point"};
          rep.detail = "pointwise Eq-4.1 sample failed";
          return rep;
        }
      }
      ++rep.pairs_checked;
    }
  }
  rep.pass = true;
  return rep;
}

// ---------------------------------------------------------------------------
// truncation (order types below a position)

std::optional<OmegaSequence> truncated_sequence(const BlockPlan& p, const Ordinal& eta,
                                                std::size_t budget) {
  Resolved r = resolve(p, eta, budget);
  SlotView sv{&p.sequence(), p.prefix_size()};
  const auto& segs = p.segments();

  // prefix sources: walk their blocks against eta's position
  std::vector<Ordinal> deltas(sv.len);
  for (std::size_t i = 0; i < sv.len; ++i) {
    Ordinal delta;
    for (const auto& sb : source_blocks_keyed(p, i, budget)) {
      if (sb.seg > r.seg) break;
      if (sb.seg < r.seg) {
        delta = sb.block.src_hi;
        continue;
      }
      if (std::holds_alternative<SingleSegment>(segs[r.seg])) {
        if (sb.block.source == r.block.source) delta = classical_add(sb.block.src_lo, r.inner);
        break;
      }
      if (sb.key < r.key)
        delta = sb.block.src_hi;
      else if (i == r.block.source && !(r.key < sb.key) && !(sb.key < r.key))
        delta = classical_add(sb.block.src_lo, r.inner);
    }
    deltas[i] = std::move(delta);
  }

  // generic tail slots: consumption from zeta families before eta's segment
  bool slots_full = false;  // increasing/graded family completed => slots used up
  Ordinal generic;          // otherwise every slot is consumed to this rank
  for (std::size_t k = 0; k < r.seg; ++k) {
    const auto* fam = std::get_if<FamilySegment>(&segs[k]);
    if (!fam) continue;
    switch (fam->kind) {
      case FamilyKind::equal_blocks: generic = fam->chunk_hi; break;
      case FamilyKind::increasing_blocks:
      case FamilyKind::graded_chains: slots_full = true; break;
      case FamilyKind::stacked_chains: return std::nullopt;
    }
  }

  std::vector<Ordinal> slot_exceptions;  // values for slots 0..E-1
  auto slot_value = [&](std::size_t j) { return sv.term(j); };
  if (slots_full) {
    // every slot fully consumed; the truncated tail is the original tail
    std::vector<Ordinal> prefix = std::move(deltas);
    return OmegaSequence(std::move(prefix), p.sequence().tail());
  }

  if (const auto* fam = std::get_if<FamilySegment>(&segs[r.seg])) {
    switch (fam->kind) {
      case FamilyKind::stacked_chains: return std::nullopt;
      case FamilyKind::equal_blocks: {
        if (r.key.phase == 1) {
          std::uint64_t q = to_index(r.key.a);
          if (q > budget) return std::nullopt;
          for (std::uint64_t m = 0; m < q; ++m) slot_exceptions.push_back(fam->chunk_hi);
          slot_exceptions.push_back(classical_add(r.block.src_lo, r.inner));  // eta's slot
          // slots before first_slot never exist here (first_slot == 0)
        }
        generic = fam->chunk_lo;
        break;
      }
      case FamilyKind::increasing_blocks: {
        generic = fam->chunk_lo;
        for (std::size_t j = 0; j < fam->first_slot; ++j)
          slot_exceptions.push_back(slot_value(j));  // exhausted below the chunk base
        if (r.key.phase == 1) {
          std::uint64_t n = to_index(r.key.a);
          if (n > budget) return std::nullopt;
          for (std::uint64_t m = 0; m < n; ++m)
            slot_exceptions.push_back(slot_value(fam->first_slot + static_cast<std::size_t>(m)));
          slot_exceptions.push_back(classical_add(r.block.src_lo, r.inner));
        }
        break;
      }
      case FamilyKind::graded_chains: {
        for (std::size_t j = 0; j < fam->first_slot; ++j) slot_exceptions.push_back(slot_value(j));
        if (r.key.phase == 0) {
          generic = fam->chunk_lo;
          break;
        }
        Nat u = r.key.a;
        Ordinal reached = classical_add(fam->chunk_lo, natural_product(fam->slice, Ordinal(u)));
        generic = reached;
        // slots exhausted before slice u, then chain-u members up to eta's
        bool done = false;
        for (std::size_t j = fam->first_slot; !done; ++j) {
          if (j - fam->first_slot > budget) return std::nullopt;
          Ordinal d = slot_chunk(sv, *fam, j);
          Ordinal top = classical_add(fam->chunk_lo, d);
          SourceIndex src = sv.len + j;
          if (!(top > reached)) {
            slot_exceptions.push_back(slot_value(j));  // exhausted
            continue;
          }
          if (static_cast<std::uint64_t>(src) < r.key.b) {
            slot_exceptions.push_back(std::min(classical_add(reached, fam->slice), top));
          } else {
            if (src == r.block.source)
              slot_exceptions.push_back(classical_add(r.block.src_lo, r.inner));
            else
              slot_exceptions.push_back(reached);  // not yet reached in this chain
            done = true;
          }
        }
        break;
      }
    }
  }

  // cap exceptions at their true term values and assemble the descriptor
  std::vector<Ordinal> prefix = std::move(deltas);
  for (std::size_t j = 0; j < slot_exceptions.size(); ++j)
    prefix.push_back(std::min(slot_exceptions[j], slot_value(j)));
  return OmegaSequence(std::move(prefix), ConstTail{generic});
}

}  // namespace ordsum
