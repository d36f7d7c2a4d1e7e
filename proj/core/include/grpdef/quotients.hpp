#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "grpdef/presentations.hpp"
#include "grpdef/words.hpp"

namespace grpdef {

/// Permutation of {0, ..., degree-1}, acting on the right: the image of a
/// point p under `a * b` is b[a[p]].
class Permutation {
public:
  using Point = std::uint32_t;

  Permutation() = default;
  /// Throws InputError unless `images` is a bijection of 0..size-1.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);
  /// Cycle (0 1 ... k-1)^shift embedded in degree k: x -> x + shift mod k.
  static Permutation translation(std::size_t modulus, std::size_t shift);

  std::size_t degree() const { return images_.size(); }
  Point operator[](std::size_t p) const { return images_[p]; }
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  Permutation pow(std::int64_t e) const;
  /// lcm of the cycle lengths.
  std::int64_t order() const;
  std::vector<std::vector<Point>> cycles() const;

  friend Permutation operator*(const Permutation& lhs, const Permutation& rhs);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const;
};

/// A homomorphism candidate F_n -> Sym(degree) given by generator images.
class QuotientWitness {
public:
  QuotientWitness() = default;
  QuotientWitness(std::size_t degree, std::vector<Permutation> generator_images);

  std::size_t degree() const { return degree_; }
  std::size_t rank() const { return images_.size(); }
  const std::vector<Permutation>& generator_images() const { return images_; }

  friend bool operator==(const QuotientWitness&, const QuotientWitness&) = default;

private:
  std::size_t degree_ = 1;
  std::vector<Permutation> images_;
};

enum class TableOrigin { kernel_of_witness, todd_coxeter, explicit_action };

/// Complete right action of the free generators and their inverses on
/// cosets. Coset 0 is the subgroup itself.
class CosetTable {
public:
  using Coset = std::uint32_t;

  CosetTable() = default;
  /// `forward[g][c]` is the image of coset c under generator g. Inverse
  /// columns are derived. Throws InputError unless every column is a
  /// bijection.
  CosetTable(std::size_t count, std::vector<std::vector<Coset>> forward, TableOrigin origin);

  std::size_t count() const { return count_; }
  std::size_t rank() const { return forward_.size(); }
  TableOrigin origin() const { return origin_; }

  Coset act(Coset c, Letter l) const {
    return l.inverted() ? backward_[l.generator()][c] : forward_[l.generator()][c];
  }
  Coset act(Coset c, const Word& w) const;
  const std::vector<Coset>& column(std::size_t generator) const { return forward_[generator]; }
  const std::vector<Coset>& inverse_column(std::size_t generator) const { return backward_[generator]; }

  /// Permutation of the cosets induced by `w`.
  Permutation action_of(const Word& w) const;

  friend bool operator==(const CosetTable& a, const CosetTable& b) {
    return a.count_ == b.count_ && a.forward_ == b.forward_;
  }

private:
  std::size_t count_ = 0;
  std::vector<std::vector<Coset>> forward_;
  std::vector<std::vector<Coset>> backward_;
  TableOrigin origin_ = TableOrigin::explicit_action;
};

/// Default caps.
inline constexpr std::size_t kDefaultImageCap = 200'000;
inline constexpr std::size_t kDefaultMaxCosets = 100'000;
inline constexpr std::uint64_t kDefaultSearchNodes = 10'000'000;

Permutation evaluate_word(const QuotientWitness& w, const Word& word);

bool verify_homomorphism(const Presentation& p, const QuotientWitness& w);

/// Order of the image of each relator root. Throws NotAHomomorphism.
std::vector<std::int64_t> relator_root_orders(const Presentation& p, const QuotientWitness& w);

bool is_no_collapse(const Presentation& p, const QuotientWitness& w);

/// Image group in BFS order from the identity (generators in order, then
/// inverses). Throws BudgetExceeded past `cap` elements.
std::vector<Permutation> image_closure(const QuotientWitness& w, std::size_t cap = kDefaultImageCap);

/// Right regular action of the image group: the coset table of the kernel.
CosetTable regular_coset_table(const QuotientWitness& w, std::size_t cap = kDefaultImageCap);

/// Disjoint union of witnesses over the same generators.
QuotientWitness combine_witnesses(std::span<const QuotientWitness> parts);

// ---------------------------------------------------------------------------
// Witness search

struct NoCollapse {};
/// Any homomorphism; achieved orders are reported by relator_root_orders.
struct AnyHomomorphism {};
using OrderTargets = std::variant<NoCollapse, std::vector<std::int64_t>, AnyHomomorphism>;

struct SymmetricDegrees {
  std::size_t lo = 2;
  std::size_t hi = 8;
};
struct CyclicModuli {
  std::size_t lo = 2;
  std::size_t hi = 8;
};
using SearchFamily = std::variant<SymmetricDegrees, CyclicModuli>;

enum class SearchMode { first, exhaustive_minimal };

struct SearchBudget {
  std::uint64_t max_nodes = kDefaultSearchNodes;
  std::chrono::milliseconds time_limit{0};  // 0 = unlimited
};

struct SearchRequest {
  OrderTargets targets = NoCollapse{};
  SearchFamily family = SymmetricDegrees{};
  SearchBudget budget;
  SearchMode mode = SearchMode::exhaustive_minimal;
  std::size_t threads = 1;
};

enum class SearchStatus { found, exhausted, budget_hit };

struct SearchOutcome {
  SearchStatus status = SearchStatus::exhausted;
  std::optional<QuotientWitness> witness;
  std::uint64_t nodes = 0;
};

/// Largest symmetric degree the search accepts.
inline constexpr std::size_t kMaxSearchDegree = 10;

SearchOutcome search_witness(const Presentation& p, const SearchRequest& request);

/// Lexicographically least permutation of the given cycle type.
Permutation least_of_cycle_type(std::size_t degree, std::vector<std::size_t> cycle_lengths);

}  // namespace grpdef
