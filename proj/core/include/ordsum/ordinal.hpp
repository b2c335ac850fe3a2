#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace ordsum {

// Arbitrary-precision natural number. Only nonnegative values are used.
using Nat = boost::multiprecision::cpp_int;

struct CnfTerm;

// An ordinal below epsilon_0 in Cantor normal form
//
//   w^{e_h}*c_h + ... + w^{e_0}*c_0
//
// with strictly decreasing exponents and coefficients >= 1. The empty term
// list is 0. Exponents are Ordinals themselves, so values are finite
// well-founded trees and equality is structural.
class Ordinal {
 public:
  Ordinal() = default;
  explicit Ordinal(const Nat& n);
  explicit Ordinal(std::uint64_t n);

  static Ordinal omega();
  static Ordinal omega_pow(const Ordinal& exponent, const Nat& coefficient = Nat(1));
  // Validates strictly decreasing exponents and positive coefficients.
  static Ordinal from_terms(std::vector<CnfTerm> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  const std::vector<CnfTerm>& terms() const { return terms_; }
  const CnfTerm& leading() const;  // pre: nonzero
  const CnfTerm& last() const;     // pre: nonzero
  Nat finite_value() const;        // pre: is_finite()

  std::strong_ordering operator<=>(const Ordinal& other) const;
  bool operator==(const Ordinal& other) const;

 private:
  std::vector<CnfTerm> terms_;
};

struct CnfTerm {
  Ordinal exponent;
  Nat coefficient;  // >= 1

  std::strong_ordering operator<=>(const CnfTerm& other) const;
  bool operator==(const CnfTerm& other) const;
};

enum class OrdinalKind { zero, successor, limit };

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);

OrdinalKind classify(const Ordinal& a);

// Classical (non-commutative) ordinal sum.
Ordinal classical_add(const Ordinal& a, const Ordinal& b);

// The unique x with classical_add(c, x) == a. Throws std::domain_error when c > a.
Ordinal left_subtract(const Ordinal& a, const Ordinal& c);

// Hessenberg natural sum: CNF terms merged, coefficients added at shared
// exponents. Commutative, associative, strictly monotone in each argument.
Ordinal natural_sum(const Ordinal& a, const Ordinal& b);

// H-natural product: w^a (x) w^b = w^{natural_sum(a,b)}, extended by
// distributivity; 0 if either factor is 0.
Ordinal natural_product(const Ordinal& a, const Ordinal& b);

// Additive normal form: the monomials w^{e_s} >= ... >= w^{e_0} whose
// concatenation (classical or natural, equal here) gives back a.
std::vector<Ordinal> additive_terms(const Ordinal& a);

// a with the last additive monomial removed. Throws std::domain_error on 0.
Ordinal hat(const Ordinal& z);

// Exponent of the last additive monomial. Throws std::domain_error on 0.
Ordinal last_exponent(const Ordinal& z);

// Canonical fundamental sequence lam[n], n >= 1, for lam a limit ordinal:
//   (H + w^e*k)[n] = H + w^e*(k-1) + (w^e)[n]  for the final CNF term,
//   (w^{g+1})[n]   = w^g * n,
//   (w^{l})[n]     = w^{l[n]}                  for l limit.
// Strictly increasing in n with supremum lam. Throws std::domain_error when
// lam is not a limit.
Ordinal fundamental_sequence(const Ordinal& lam, std::uint64_t n);

// Least strict upper bound of a finite set: max + 1, or 0 on the empty set.
Ordinal sup_plus(std::span<const Ordinal> values);

// Literal sup+ recursion of the minimal strictly monotone binary operation on
// naturals; must equal a + b. Kept independent of the CNF arithmetic above.
std::uint64_t hessenberg_oracle_nat(std::uint64_t a, std::uint64_t b);

inline bool operator<(const Ordinal& a, const Ordinal& b) { return (a <=> b) < 0; }
inline bool operator>(const Ordinal& a, const Ordinal& b) { return (a <=> b) > 0; }
inline bool operator<=(const Ordinal& a, const Ordinal& b) { return (a <=> b) <= 0; }
inline bool operator>=(const Ordinal& a, const Ordinal& b) { return (a <=> b) >= 0; }

}  // namespace ordsum
