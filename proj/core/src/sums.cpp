#include "ordsum/sums.hpp"

#include <stdexcept>
#include <utility>

namespace ordsum {

namespace {

Ordinal eval_s2(const SumDecomposition& d) {
  Ordinal acc = natural_product(d.zeta, Ordinal::omega());
  for (const auto& [i, h] : d.hearts) acc = natural_sum(acc, h);
  return acc;
}

Ordinal eval_s1(const SumDecomposition& d) {
  if (d.zeta.is_zero()) throw std::domain_error("sum_s1: zeta == 0");
  Ordinal acc = natural_product(hat(d.zeta), Ordinal::omega());
  acc = natural_sum(acc, Ordinal::omega_pow(last_exponent(d.zeta)));
  for (const auto& [i, v] : *d.diamonds) acc = natural_sum(acc, v);
  return acc;
}

}  // namespace

Ordinal sum_s(const OmegaSequence& s) {
  SumDecomposition d = decompose(s);
  return d.clause == SumClause::s1 ? eval_s1(d) : eval_s2(d);
}

Ordinal sum_s2(const OmegaSequence& s) { return eval_s2(decompose(s)); }

Ordinal sum_s1(const OmegaSequence& s) { return eval_s1(decompose(s)); }

Ordinal partial_natural_sum(const OmegaSequence& s, std::size_t n) {
  Ordinal acc;
  for (std::size_t i = 0; i < n; ++i) acc = natural_sum(acc, s.term_at(i));
  return acc;
}

Ordinal sum_h(const OmegaSequence& s) {
  Ordinal e = partial_natural_sum(s, s.prefix().size());
  auto keep_above = [&](const Ordinal& bound, bool strict) {
    std::vector<CnfTerm> out;
    for (const auto& t : e.terms())
      if (strict ? t.exponent > bound : t.exponent >= bound) out.push_back(t);
    return Ordinal::from_terms(std::move(out));
  };
  if (const auto* c = std::get_if<ConstTail>(&s.tail())) {
    if (c->value.is_zero()) return e;
    Ordinal g = c->value.leading().exponent;
    Ordinal bump = Ordinal::omega_pow(classical_add(g, Ordinal(std::uint64_t{1})));
    return natural_sum(keep_above(g, true), bump);
  }
  Ordinal lim = classical_add(std::get<ApproachTail>(s.tail()).base,
                              std::get<ApproachTail>(s.tail()).mu);
  if (lim.terms().size() == 1 && lim.leading().coefficient == 1) {
    // single additive monomial w^r: tail partial sums are cofinal in it
    Ordinal r = lim.leading().exponent;
    return natural_sum(keep_above(r, false), Ordinal::omega_pow(r));
  }
  // leading coefficients accumulate without bound at the leading exponent
  Ordinal rt = lim.leading().exponent;
  Ordinal bump = Ordinal::omega_pow(classical_add(rt, Ordinal(std::uint64_t{1})));
  return natural_sum(keep_above(rt, true), bump);
}

Ordinal finite_natural_sum(std::span<const Ordinal> xs) {
  Ordinal acc;
  for (const auto& x : xs) acc = natural_sum(acc, x);
  return acc;
}

TreeDesc TreeDesc::node(std::vector<TreeDesc> children, std::vector<TreeDesc> repeated) {
  if (repeated.size() > 1) throw std::domain_error("TreeDesc: at most one repeated child");
  TreeDesc t;
  t.is_leaf = false;
  t.children = std::move(children);
  t.repeated = std::move(repeated);
  return t;
}

bool TreeDesc::operator==(const TreeDesc& other) const {
  return is_leaf == other.is_leaf && children == other.children && repeated == other.repeated;
}

Ordinal tree_size(const TreeDesc& t, TreeSizeMode mode) {
  if (t.is_leaf) return Ordinal(std::uint64_t{1});
  std::vector<Ordinal> sizes;
  for (const auto& c : t.children) sizes.push_back(tree_size(c, mode));
  Ordinal x;
  if (t.repeated.empty()) {
    // equals sum_s over the padded-with-zeros sequence
    x = finite_natural_sum(sizes);
  } else {
    Ordinal rep = tree_size(t.repeated.front(), mode);
    x = sum_s(OmegaSequence(sizes, ConstTail{rep}));
  }
  if (mode == TreeSizeMode::formula_root) return x;
  return natural_sum(Ordinal(std::uint64_t{1}), x);
}

}  // namespace ordsum
