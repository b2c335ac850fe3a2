#include "ordsum/sequence.hpp"

#include <algorithm>

#include "doctest.h"
#include "ordsum/notation.hpp"
#include "ordsum/rng.hpp"
#include "ordsum/sums.hpp"

using namespace ordsum;

namespace {
Ordinal O(const char* s) { return parse_ordinal(s); }
OmegaSequence S(const char* s) { return parse_sequence(s); }
}

TEST_CASE("term_at") {
  CHECK(S("[1, w ; const 2]").term_at(0) == O("1"));
  CHECK(S("[ ; approach 0 ~ w]").term_at(4) == O("5"));
  CHECK(S("[ ; const 0]").term_at(10) == O("0"));
}

TEST_CASE("invariants_of") {
  auto [z1, e1] = invariants_of(S("[1, w, w^w ; const 2]"));
  CHECK(z1 == O("2"));
  CHECK(e1 == O("3"));
  auto [z2, e2] = invariants_of(S("[w^w, w^(w^w) ; approach 0 ~ w^w]"));
  CHECK(z2 == O("w^w"));
  CHECK(e2 == O("w^w"));
  auto [z3, e3] = invariants_of(S("[ ; const 0]"));
  CHECK(z3 == O("0"));
  CHECK(e3 == O("1"));
}

TEST_CASE("decompose on the worked examples") {
  SumDecomposition a = decompose(S("[1, w, w^w ; const 2]"));
  CHECK(a.clause == SumClause::s2);
  REQUIRE(a.e_special.size() == 2);
  CHECK(a.e_special[0].second == O("w"));
  CHECK(a.e_special[1].second == O("w^w"));
  CHECK(a.hearts[0].second == O("w"));
  CHECK(a.hearts[1].second == O("w^w"));

  SumDecomposition e =
      decompose(S("[w^w + w, w^w*2, w^w*2 + w, w^(w^w) + 2 ; approach w^w ~ w^w]"));
  CHECK(e.zeta == O("w^w*2"));
  CHECK(e.clause == SumClause::s1);
  REQUIRE(e.e_special.size() == 3);  // the first entry stays below zeta
  CHECK(e.e_special[0].first == 1);
  REQUIRE(e.diamonds.has_value());
  CHECK((*e.diamonds)[0].second == O("w^w"));
  CHECK((*e.diamonds)[1].second == O("w^w + w"));
  CHECK((*e.diamonds)[2].second == O("w^(w^w) + 2"));

  SumDecomposition z = decompose(S("[ ; const 0]"));
  CHECK(z.e_special.empty());
  CHECK(z.clause == SumClause::s2);
}

TEST_CASE("decomposition invariants on random sequences") {
  Rng g(37);
  for (int t = 0; t < 500; ++t) {
    OmegaSequence s = random_sequence(g);
    SumDecomposition d = decompose(s);
    // z-specials are exactly the e-specials above zeta
    for (const auto& [i, v] : d.z_special) {
      CHECK(v > d.zeta);
      CHECK(std::find(d.e_special.begin(), d.e_special.end(), std::make_pair(i, v)) !=
            d.e_special.end());
    }
    if (classify(d.epsilon) == OrdinalKind::successor) {
      CHECK(classical_add(d.zeta, Ordinal(std::uint64_t{1})) == d.epsilon);
      CHECK(d.z_special == d.e_special);
    } else {
      CHECK(d.zeta == d.epsilon);
    }
    for (std::size_t k = 0; k < d.e_special.size(); ++k) {
      const auto& [i, v] = d.e_special[k];
      CHECK(classical_add(d.zeta, d.hearts[k].second) == v);
      if (!d.zeta.is_zero()) {
        CHECK(classical_add(hat(d.zeta), (*d.diamonds)[k].second) == v);
        // w^{xi0} + heart = diamond
        CHECK(classical_add(Ordinal::omega_pow(last_exponent(d.zeta)), d.hearts[k].second) ==
              (*d.diamonds)[k].second);
      }
    }
    if (d.clause == SumClause::s1) {
      CHECK(!d.zeta.is_zero());
      CHECK(classify(last_exponent(d.zeta)) == OrdinalKind::limit);
      CHECK(d.zeta == d.epsilon);
    }
  }
}

TEST_CASE("normalize") {
  CHECK(normalize(S("[0, 5, 0 ; const 1]")) == S("[5 ; const 1]"));
  CHECK(normalize(S("[2, 7 ; const 2]")) == S("[7 ; const 2]"));
  CHECK(normalize(S("[w, 1 ; const 0]")) == S("[w, 1 ; const 0]"));
  CHECK(normalize(S("[1, w ; const 0]")) == S("[w, 1 ; const 0]"));
  Rng g(41);
  for (int t = 0; t < 300; ++t) {
    OmegaSequence s = random_sequence(g);
    CHECK(normalize(normalize(s)) == normalize(s));
    CHECK(sum_s(normalize(s)) == sum_s(s));
    CHECK(sum_s2(normalize(s)) == sum_s2(s));
    CHECK(sum_h(normalize(s)) == sum_h(s));
    CHECK(invariants_of(normalize(s)) == invariants_of(s));
  }
}

TEST_CASE("apply_move") {
  // capping a constant tail
  OmegaSequence a = apply_move(S("[ ; const w]"), Move{0, {}, O("3")});
  CHECK(normalize(a) == S("[ ; const 3]"));
  // capping kills the special entry, the remnant is absorbed
  OmegaSequence b = apply_move(S("[w^w ; const 2]"), Move{0, {}, O("1")});
  CHECK(normalize(b) == S("[ ; const 1]"));
  OmegaSequence c = apply_move(S("[5 ; const 0]"), Move{0, {}, O("4")});
  CHECK(normalize(c) == S("[4 ; const 0]"));
  // an Approach tail capped below its limit flattens to a constant
  OmegaSequence d = apply_move(S("[ ; approach 0 ~ w]"), Move{2, {}, O("2")});
  CHECK(d.term_at(0) == O("1"));
  CHECK(d.term_at(1) == O("2"));
  CHECK(d.term_at(5) == O("2"));
  // keeping an index preserves its term
  OmegaSequence e = apply_move(S("[w^2, w^3 ; const w]"), Move{0, {1}, O("w")});
  CHECK(e.term_at(0) == O("w"));
  CHECK(e.term_at(1) == O("w^3"));
  CHECK(e.term_at(9) == O("w"));
  CHECK_THROWS_AS(apply_move(S("[ ; const 1]"), Move{0, {}, O("5")}), std::domain_error);
  CHECK_THROWS_AS(apply_move(S("[3 ; const 0]"), Move{0, {0}, O("1")}), std::domain_error);
}

TEST_CASE("moves decrease pointwise") {
  Rng g(43);
  for (int t = 0; t < 400; ++t) {
    OmegaSequence s = normalize(random_sequence(g));
    if (s.is_all_zero()) continue;
    Move m = random_move(g, s);
    OmegaSequence next = apply_move(s, m);
    for (std::size_t i = 0; i < 24; ++i) CHECK(next.term_at(i) <= s.term_at(i));
    CHECK(next.term_at(m.pivot) < s.term_at(m.pivot));
    CHECK(next.term_at(m.pivot) == m.cap);
  }
}

TEST_CASE("random descent terminates") {
  CHECK(random_descent(S("[ ; const 0]"), 1).empty());
  auto chain = random_descent(S("[2 ; const 0]"), 2);
  CHECK(!chain.empty());
  CHECK(chain.back().is_all_zero());
  CHECK(!random_descent(S("[ ; const w]"), 3).empty());
  Rng g(47);
  for (int t = 0; t < 60; ++t) {
    OmegaSequence s = random_sequence(g, 3, 2);
    auto c = random_descent(s, 1000 + t);
    if (!c.empty()) CHECK(c.back().is_all_zero());
  }
}

TEST_CASE("zero insertion leaves everything unchanged") {
  Rng g(53);
  for (int t = 0; t < 200; ++t) {
    OmegaSequence s = normalize(random_sequence(g));
    std::vector<Ordinal> prefix = s.prefix();
    std::size_t at = g.below(prefix.size() + 1);
    prefix.insert(prefix.begin() + at, Ordinal());
    OmegaSequence padded(prefix, s.tail());
    CHECK(invariants_of(padded) == invariants_of(s));
    CHECK(sum_s(padded) == sum_s(s));
    CHECK(sum_s2(padded) == sum_s2(s));
    CHECK(sum_h(padded) == sum_h(s));
    if (s.is_all_zero()) continue;
    // a move avoiding the inserted zero commutes with dropping it
    Move m = random_move(g, s);
    Move shifted = m;
    if (shifted.pivot >= at) ++shifted.pivot;
    for (auto& k : shifted.keep)
      if (k >= at) ++k;
    CHECK(normalize(apply_move(padded, shifted)) == normalize(apply_move(s, m)));
  }
}
