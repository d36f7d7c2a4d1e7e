#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace grpdef {

/// Index of a free generator, 0-based.
struct GeneratorId {
  std::size_t index = 0;

  friend auto operator<=>(const GeneratorId&, const GeneratorId&) = default;
};

/// A generator or its inverse. Encoded as +(g+1) / -(g+1).
class Letter {
public:
  constexpr Letter() = default;
  constexpr Letter(std::size_t generator, int sign)
      : code_(sign < 0 ? -static_cast<std::int32_t>(generator + 1)
                       : static_cast<std::int32_t>(generator + 1)) {}

  constexpr std::size_t generator() const {
    return static_cast<std::size_t>((code_ < 0 ? -code_ : code_) - 1);
  }
  constexpr int sign() const { return code_ < 0 ? -1 : 1; }
  constexpr bool inverted() const { return code_ < 0; }
  constexpr Letter inverse() const { return from_code(-code_); }
  constexpr std::int32_t code() const { return code_; }

  static constexpr Letter from_code(std::int32_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr auto operator<=>(Letter, Letter) = default;

private:
  std::int32_t code_ = 1;
};

/// Freely reduced word in the free group of a given rank.
///
/// Every constructor reduces eagerly, so a Word value is always in free
/// normal form. Equality of Word values is therefore equality in F_rank.
class Word {
public:
  Word() = default;
  explicit Word(std::size_t rank) : rank_(rank) {}

  /// Reduces `letters`; throws InputError if a generator index is >= rank.
  Word(std::span<const Letter> letters, std::size_t rank);

  static Word generator(std::size_t g, std::size_t rank, int sign = 1);

  /// Compact notation: lowercase letter = generator, uppercase = inverse,
  /// 'a' is generator 0. Whitespace is ignored.
  static Word from_compact(std::string_view text, std::size_t rank);

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  Word inverse() const;
  Word pow(std::int64_t exponent) const;

  /// Concatenate then reduce.
  friend Word operator*(const Word& lhs, const Word& rhs);
  Word& operator*=(const Word& rhs);

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& lhs, const Word& rhs) {
    if (auto c = lhs.rank_ <=> rhs.rank_; c != 0) return c;
    return lhs.letters_ <=> rhs.letters_;
  }

  /// Compact notation rendering (only valid for rank <= 26).
  std::string to_compact() const;

private:
  std::size_t rank_ = 0;
  std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence.
Word free_reduce(std::span<const Letter> letters, std::size_t rank);

struct CyclicDecomposition {
  Word conjugator;
  Word core;
};

/// w = conjugator * core * conjugator^-1 with core cyclically reduced.
CyclicDecomposition cyclic_reduce(const Word& w);

struct PowerForm {
  Word root;
  std::int64_t exponent = 1;
};

/// w = root^exponent with exponent maximal. Throws EmptyWordError on the
/// trivial word.
PowerForm maximal_root(const Word& w);

/// Largest k with w = s^(p^k). Throws EmptyWordError / InputError.
int nu_p(const Word& w, std::int64_t p);

std::int64_t exponent_sum(const Word& w, GeneratorId g);

/// True iff the cyclic reductions are cyclic rotations of each other.
bool are_conjugate(const Word& lhs, const Word& rhs);

/// Smallest period of a letter sequence (KMP failure function).
std::size_t smallest_period(std::span<const Letter> letters);

}  // namespace grpdef
