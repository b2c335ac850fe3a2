#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "ordsum/ordinal.hpp"
#include "ordsum/sequence.hpp"
#include "ordsum/sums.hpp"

namespace ordsum {

// Syntax error with the byte offset of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar (whitespace between tokens is ignored):
//   ordinal := term ("+" term)*          -- "+" is the classical sum
//   term    := "w" ["^" factor] ["*" nat] | nat
//   factor  := nat | "w" | "(" ordinal ")"
// "w^w^w" is rejected; nested exponents need parentheses.
Ordinal parse_ordinal(std::string_view text);

// Canonical rendering; round-trips through parse_ordinal.
std::string print_ordinal(const Ordinal& a);

// seq  := "[" [ordinal ("," ordinal)*] ";" tail "]"
// tail := "const" ordinal | "approach" ordinal "~" ordinal
// The second approach argument must be a limit ordinal.
OmegaSequence parse_sequence(std::string_view text);

std::string print_sequence(const OmegaSequence& s);

// tree := "leaf" | "node(" [tree ("," tree)*] ["," "rep(" tree ")"] ")"
// A bare "rep(...)" argument is also accepted as the only child list entry.
TreeDesc parse_tree(std::string_view text);

std::string print_tree(const TreeDesc& t);

}  // namespace ordsum
