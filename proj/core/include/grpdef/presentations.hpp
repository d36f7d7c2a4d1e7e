#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "grpdef/numeric.hpp"
#include "grpdef/smith.hpp"
#include "grpdef/words.hpp"

namespace grpdef {

/// A relator root^exponent with root primitive (not a proper power).
class PowerRelator {
public:
  /// Normalizes `relator` to maximal-root form. Throws EmptyWordError when
  /// the relator is trivial.
  explicit PowerRelator(const Word& relator);

  /// Takes root and exponent as given, renormalizing if `root` is itself a
  /// proper power (the exponents multiply).
  PowerRelator(const Word& root, std::int64_t exponent);

  const Word& root() const { return root_; }
  std::int64_t exponent() const { return exponent_; }
  Word full() const { return root_.pow(exponent_); }

  friend bool operator==(const PowerRelator&, const PowerRelator&) = default;

private:
  Word root_;
  std::int64_t exponent_ = 1;
};

class Presentation {
public:
  Presentation() = default;
  Presentation(std::vector<std::string> generator_names, std::vector<PowerRelator> relators);

  std::size_t rank() const { return names_.size(); }
  const std::vector<std::string>& generator_names() const { return names_; }
  const std::vector<PowerRelator>& relators() const { return relators_; }

  /// Index of a generator name, or rank() if absent.
  std::size_t find_generator(std::string_view name) const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

private:
  std::vector<std::string> names_;
  std::vector<PowerRelator> relators_;
};

/// Parses `< a, b | a^2, b^3, (a b)^7 >`. Supports `[x, y]` commutators,
/// nested parenthesized powers and `#` line comments.
Presentation parse_presentation(std::string_view text);

/// Parses a single word over the generators of `names` using the same
/// grammar as a relator.
Word parse_word(std::string_view text, const std::vector<std::string>& names);

/// Parses `w1; w2; ...` (empty entries skipped).
std::vector<Word> parse_word_list(std::string_view text, const std::vector<std::string>& names);

std::string render_word(const Word& w, const std::vector<std::string>& names);
std::string render_relator(const PowerRelator& r, const std::vector<std::string>& names);
std::string render_presentation(const Presentation& p);

std::int64_t deficiency(const Presentation& p);

/// n - sum over relators of p^(-nu_p(relator)).
Rational p_deficiency(const Presentation& p, std::int64_t prime);

/// Row i holds the exponent sums of the full relator i.
IntegerMatrix abelianization_matrix(const Presentation& p);

struct AbelianInvariants {
  std::size_t betti = 0;
  std::vector<BigInt> torsion;  // d1 | d2 | ..., each >= 2

  /// Dimension of H1 tensor F_p: betti plus torsion factors divisible by p.
  std::size_t p_rank(std::int64_t prime) const;

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

/// Abelian invariants of the group with relation matrix `m` on `generators`
/// columns.
AbelianInvariants abelian_invariants(const IntegerMatrix& m);
AbelianInvariants abelian_invariants(const Presentation& p);

bool has_infinite_abelianization(const Presentation& p);

}  // namespace grpdef
