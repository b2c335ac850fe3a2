#include "ordsum/notation.hpp"

#include <functional>
#include <map>
#include <set>

#include "doctest.h"
#include "ordsum/rng.hpp"

using namespace ordsum;

TEST_CASE("ordinal grammar") {
  CHECK(print_ordinal(parse_ordinal("w^w + w*3")) == "w^w + w*3");
  CHECK(print_ordinal(parse_ordinal("0")) == "0");
  CHECK(print_ordinal(parse_ordinal("w^(w^w) + 2")) == "w^(w^w) + 2");
  CHECK(print_ordinal(parse_ordinal("w^2*2 + w")) == "w^2*2 + w");
  CHECK(print_ordinal(parse_ordinal("w^(w + 1)")) == "w^(w + 1)");
  // "+" is the classical sum, so absorption happens while parsing
  CHECK(parse_ordinal("1 + w") == Ordinal::omega());
  CHECK(parse_ordinal("w + w^2 + w") == parse_ordinal("w^2 + w"));
  CHECK(parse_ordinal("w*2 + w*3") == parse_ordinal("w*5"));
}

TEST_CASE("whitespace is free between tokens") {
  CHECK(parse_ordinal("w^w+w*3") == parse_ordinal("  w^w  +  w  *  3 "));
  CHECK(parse_sequence("[1,w;const 2]") == parse_sequence("[ 1 , w ; const 2 ]"));
  CHECK(parse_tree("node(leaf,rep(leaf))") == parse_tree(" node( leaf , rep( leaf ) ) "));
}

TEST_CASE("ordinal grammar rejections") {
  CHECK_THROWS_AS(parse_ordinal("w^w^w"), ParseError);
  CHECK_THROWS_AS(parse_ordinal("w +"), ParseError);
  CHECK_THROWS_AS(parse_ordinal("q"), ParseError);
  try {
    parse_ordinal("w^w + $");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("sequence grammar") {
  OmegaSequence a = parse_sequence("[1, w, w^w ; const 2]");
  CHECK(a.prefix().size() == 3);
  CHECK(a.term_at(1) == Ordinal::omega());
  CHECK(a.term_at(17) == Ordinal(std::uint64_t{2}));
  OmegaSequence zero = parse_sequence("[ ; const 0]");
  CHECK(zero.is_all_zero());
  OmegaSequence ap = parse_sequence("[ ; approach 0 ~ w^w]");
  CHECK(ap.term_at(0) == Ordinal::omega());
  CHECK(ap.term_at(1) == parse_ordinal("w^2"));
  CHECK_THROWS_AS(parse_sequence("[ ; approach 0 ~ 5]"), ParseError);
  CHECK_THROWS_AS(parse_sequence("[1, 2 const 0]"), ParseError);
  CHECK(print_sequence(a) == "[1, w, w^w ; const 2]");
  CHECK(print_sequence(zero) == "[ ; const 0]");
  CHECK(print_sequence(ap) == "[ ; approach 0 ~ w^w]");
}

TEST_CASE("tree grammar") {
  TreeDesc psi0 = parse_tree("node(rep(leaf))");
  CHECK(!psi0.is_leaf);
  CHECK(psi0.children.empty());
  REQUIRE(psi0.repeated.size() == 1);
  CHECK(psi0.repeated[0].is_leaf);
  CHECK(parse_tree("leaf").is_leaf);
  TreeDesc mixed = parse_tree("node(leaf, rep(node(leaf, leaf)))");
  CHECK(mixed.children.size() == 1);
  CHECK(mixed.repeated.size() == 1);
  CHECK(print_tree(mixed) == "node(leaf, rep(node(leaf, leaf)))");
  CHECK_THROWS_AS(parse_tree("node(rep(leaf), leaf)"), ParseError);
  CHECK_THROWS_AS(parse_tree("node("), ParseError);
}

TEST_CASE("round trips on random values") {
  Rng g(23);
  for (int t = 0; t < 2000; ++t) {
    Ordinal a = random_ordinal(g, 3, 4, 9);
    CHECK(parse_ordinal(print_ordinal(a)) == a);
  }
  for (int t = 0; t < 1000; ++t) {
    OmegaSequence s = random_sequence(g);
    CHECK(parse_sequence(print_sequence(s)) == s);
  }
}

TEST_CASE("printing is injective") {
  Rng g(29);
  std::map<std::string, Ordinal> seen;
  for (int t = 0; t < 3000; ++t) {
    Ordinal a = random_ordinal(g, 3, 4, 9);
    auto [it, fresh] = seen.emplace(print_ordinal(a), a);
    if (!fresh) CHECK(it->second == a);
  }
}

TEST_CASE("random trees round trip") {
  Rng g(31);
  std::function<TreeDesc(unsigned)> gen = [&](unsigned depth) -> TreeDesc {
    if (depth == 0 || g.chance(1, 3)) return TreeDesc::leaf();
    std::vector<TreeDesc> children;
    for (std::size_t i = 0, n = g.below(3); i < n; ++i) children.push_back(gen(depth - 1));
    std::vector<TreeDesc> rep;
    if (g.chance(1, 2)) rep.push_back(gen(depth - 1));
    if (children.empty() && rep.empty()) return TreeDesc::leaf();
    return TreeDesc::node(std::move(children), std::move(rep));
  };
  for (int t = 0; t < 1000; ++t) {
    TreeDesc d = gen(3);
    CHECK(parse_tree(print_tree(d)) == d);
  }
}
