#include "ordsum/ordinal.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace ordsum {

Ordinal::Ordinal(const Nat& n) {
  if (n < 0) throw std::domain_error("Ordinal: negative natural");
  if (n > 0) terms_.push_back(CnfTerm{Ordinal(), n});
}

Ordinal::Ordinal(std::uint64_t n) : Ordinal(Nat(n)) {}

Ordinal Ordinal::omega() { return omega_pow(Ordinal(std::uint64_t{1})); }

Ordinal Ordinal::omega_pow(const Ordinal& exponent, const Nat& coefficient) {
  if (coefficient < 0) throw std::domain_error("omega_pow: negative coefficient");
  Ordinal r;
  if (coefficient > 0) r.terms_.push_back(CnfTerm{exponent, coefficient});
  return r;
}

Ordinal Ordinal::from_terms(std::vector<CnfTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient < 1) throw std::domain_error("from_terms: coefficient < 1");
    if (i + 1 < terms.size() && !(terms[i + 1].exponent < terms[i].exponent))
      throw std::domain_error("from_terms: exponents not strictly decreasing");
  }
  Ordinal r;
  r.terms_ = std::move(terms);
  return r;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

const CnfTerm& Ordinal::leading() const {
  if (terms_.empty()) throw std::domain_error("leading: zero ordinal");
  return terms_.front();
}

const CnfTerm& Ordinal::last() const {
  if (terms_.empty()) throw std::domain_error("last: zero ordinal");
  return terms_.back();
}

Nat Ordinal::finite_value() const {
  if (!is_finite()) throw std::domain_error("finite_value: infinite ordinal");
  return terms_.empty() ? Nat(0) : terms_[0].coefficient;
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& other) const {
  std::size_t n = std::min(terms_.size(), other.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = terms_[i] <=> other.terms_[i];
    if (c != 0) return c;
  }
  if (terms_.size() != other.terms_.size())
    return terms_.size() < other.terms_.size() ? std::strong_ordering::less
                                               : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool Ordinal::operator==(const Ordinal& other) const { return (*this <=> other) == 0; }

std::strong_ordering CnfTerm::operator<=>(const CnfTerm& other) const {
  auto c = exponent <=> other.exponent;
  if (c != 0) return c;
  if (coefficient != other.coefficient)
    return coefficient < other.coefficient ? std::strong_ordering::less
                                           : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool CnfTerm::operator==(const CnfTerm& other) const { return (*this <=> other) == 0; }

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) { return a <=> b; }

OrdinalKind classify(const Ordinal& a) {
  if (a.is_zero()) return OrdinalKind::zero;
  return a.last().exponent.is_zero() ? OrdinalKind::successor : OrdinalKind::limit;
}

Ordinal classical_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const Ordinal& lead = b.leading().exponent;
  std::vector<CnfTerm> out;
  std::size_t i = 0;
  while (i < a.terms().size() && a.terms()[i].exponent > lead) out.push_back(a.terms()[i++]);
  CnfTerm head = b.leading();
  if (i < a.terms().size() && a.terms()[i].exponent == lead)
    head.coefficient += a.terms()[i].coefficient;
  out.push_back(std::move(head));
  out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
  return Ordinal::from_terms(std::move(out));
}

Ordinal left_subtract(const Ordinal& a, const Ordinal& c) {
  const auto& ta = a.terms();
  const auto& tc = c.terms();
  std::size_t i = 0;
  for (;; ++i) {
    if (i == tc.size()) {
      return Ordinal::from_terms(std::vector<CnfTerm>(ta.begin() + i, ta.end()));
    }
    if (i == ta.size()) throw std::domain_error("left_subtract: c > a");
    auto ec = tc[i].exponent <=> ta[i].exponent;
    if (ec > 0) throw std::domain_error("left_subtract: c > a");
    if (ec < 0) {
      // the rest of c is absorbed by a's larger term
      return Ordinal::from_terms(std::vector<CnfTerm>(ta.begin() + i, ta.end()));
    }
    if (tc[i].coefficient > ta[i].coefficient) throw std::domain_error("left_subtract: c > a");
    if (tc[i].coefficient < ta[i].coefficient) {
      std::vector<CnfTerm> out;
      out.push_back(CnfTerm{ta[i].exponent, ta[i].coefficient - tc[i].coefficient});
      out.insert(out.end(), ta.begin() + i + 1, ta.end());
      return Ordinal::from_terms(std::move(out));
    }
  }
}

Ordinal natural_sum(const Ordinal& a, const Ordinal& b) {
  std::vector<CnfTerm> out;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::size_t i = 0, j = 0;
  while (i < ta.size() || j < tb.size()) {
    if (j == tb.size() || (i < ta.size() && ta[i].exponent > tb[j].exponent)) {
      out.push_back(ta[i++]);
    } else if (i == ta.size() || tb[j].exponent > ta[i].exponent) {
      out.push_back(tb[j++]);
    } else {
      out.push_back(CnfTerm{ta[i].exponent, ta[i].coefficient + tb[j].coefficient});
      ++i;
      ++j;
    }
  }
  return Ordinal::from_terms(std::move(out));
}

Ordinal natural_product(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal();
  std::map<Ordinal, Nat> acc;
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms())
      acc[natural_sum(ta.exponent, tb.exponent)] += ta.coefficient * tb.coefficient;
  std::vector<CnfTerm> out;
  for (auto it = acc.rbegin(); it != acc.rend(); ++it)
    out.push_back(CnfTerm{it->first, it->second});
  return Ordinal::from_terms(std::move(out));
}

std::vector<Ordinal> additive_terms(const Ordinal& a) {
  std::vector<Ordinal> out;
  for (const auto& t : a.terms())
    for (Nat k = 0; k < t.coefficient; ++k) out.push_back(Ordinal::omega_pow(t.exponent));
  return out;
}

Ordinal hat(const Ordinal& z) {
  if (z.is_zero()) throw std::domain_error("hat: zero ordinal");
  std::vector<CnfTerm> out = z.terms();
  if (out.back().coefficient > 1)
    out.back().coefficient -= 1;
  else
    out.pop_back();
  return Ordinal::from_terms(std::move(out));
}

Ordinal last_exponent(const Ordinal& z) {
  if (z.is_zero()) throw std::domain_error("last_exponent: zero ordinal");
  return z.last().exponent;
}

Ordinal fundamental_sequence(const Ordinal& lam, std::uint64_t n) {
  if (classify(lam) != OrdinalKind::limit)
    throw std::domain_error("fundamental_sequence: not a limit ordinal");
  if (n < 1) throw std::domain_error("fundamental_sequence: n must be >= 1");
  // peel the final monomial w^e off lam
  std::vector<CnfTerm> head = lam.terms();
  Ordinal e = head.back().exponent;
  if (head.back().coefficient > 1)
    head.back().coefficient -= 1;
  else
    head.pop_back();
  Ordinal h = Ordinal::from_terms(std::move(head));
  Ordinal step;
  if (classify(e) == OrdinalKind::successor) {
    // w^{g+1}[n] = w^g * n, with g the right predecessor of the exponent
    std::vector<CnfTerm> et = e.terms();
    if (et.back().coefficient > 1)
      et.back().coefficient -= 1;
    else
      et.pop_back();
    step = Ordinal::omega_pow(Ordinal::from_terms(std::move(et)), Nat(n));
  } else {
    step = Ordinal::omega_pow(fundamental_sequence(e, n));
  }
  return classical_add(h, step);
}

Ordinal sup_plus(std::span<const Ordinal> values) {
  if (values.empty()) return Ordinal();
  const Ordinal* best = &values[0];
  for (const auto& v : values)
    if (v > *best) best = &v;
  return classical_add(*best, Ordinal(std::uint64_t{1}));
}

std::uint64_t hessenberg_oracle_nat(std::uint64_t a, std::uint64_t b) {
  // v(a, b) = sup+ { v(a', b), v(a, b') : a' < a, b' < b }, filled by
  // increasing a + b so every predecessor is already computed.
  std::vector<std::vector<std::uint64_t>> v(a + 1, std::vector<std::uint64_t>(b + 1, 0));
  for (std::uint64_t s = 0; s <= a + b; ++s) {
    for (std::uint64_t x = 0; x <= a && x <= s; ++x) {
      std::uint64_t y = s - x;
      if (y > b) continue;
      std::uint64_t bound = 0;  // sup+ of the finite predecessor set
      for (std::uint64_t x2 = 0; x2 < x; ++x2) bound = std::max(bound, v[x2][y] + 1);
      for (std::uint64_t y2 = 0; y2 < y; ++y2) bound = std::max(bound, v[x][y2] + 1);
      v[x][y] = bound;
    }
  }
  return v[a][b];
}

}  // namespace ordsum
