#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grpdef/presentations.hpp"
#include "grpdef/quotients.hpp"
#include "grpdef/words.hpp"

namespace grpdef {

using Coset = CosetTable::Coset;

/// Prefix-closed coset representatives from a BFS spanning tree of the coset
/// graph.
class SchreierTransversal {
public:
  SchreierTransversal() = default;

  std::size_t count() const { return reps_.size(); }
  const Word& representative(Coset c) const { return reps_[c]; }
  const std::vector<Word>& representatives() const { return reps_; }

  /// True when the edge c --x_g--> c.x_g lies in the spanning tree.
  bool is_tree_edge(Coset c, std::size_t generator) const {
    return tree_[c * rank_ + generator];
  }

  /// Index of the Schreier generator (c, x_g), or nullopt for tree edges.
  std::optional<std::size_t> generator_index(Coset c, std::size_t generator) const;

  /// Non-tree edges (coset, generator) in table order.
  const std::vector<std::pair<Coset, std::size_t>>& schreier_generators() const { return labels_; }

  friend SchreierTransversal schreier_transversal(const CosetTable& t);

private:
  std::size_t rank_ = 0;
  std::vector<Word> reps_;
  std::vector<bool> tree_;
  std::vector<std::int64_t> label_index_;
  std::vector<std::pair<Coset, std::size_t>> labels_;
};

/// BFS from coset 0, generators in order before their inverses.
SchreierTransversal schreier_transversal(const CosetTable& t);

/// Reidemeister-Schreier rewrite of `w` read from `start`. Result is a word
/// in the Schreier generators.
Word rewrite_word(const Word& w, Coset start, const CosetTable& t, const SchreierTransversal& s);

enum class RewriteMode { full, power_aware };

struct RelatorOrigin {
  std::size_t source_relator = 0;
  Coset coset = 0;
};

struct SubgroupPresentation {
  std::vector<std::pair<Coset, std::size_t>> schreier_generators;
  std::vector<Word> relators;

  // Provenance.
  Presentation source;
  std::size_t index = 0;
  RewriteMode mode = RewriteMode::full;
  std::vector<std::int64_t> cycle_lengths;  // per source relator root (power-aware)
  std::vector<RelatorOrigin> origins;       // parallel to relators
  bool simplified = false;

  std::size_t generator_count() const { return schreier_generators.size(); }
  std::int64_t deficiency() const {
    return static_cast<std::int64_t>(schreier_generators.size()) -
           static_cast<std::int64_t>(relators.size());
  }

  std::string generator_label(std::size_t i) const;
  std::vector<std::string> generator_labels() const;
};

/// Every source relator rewritten from every coset.
SubgroupPresentation reidemeister_schreier_full(const Presentation& p, const CosetTable& t);

/// One rewritten relator per cycle of each root's action on the cosets.
/// Throws RegularityViolation if some root acts with unequal cycle lengths.
SubgroupPresentation reidemeister_schreier_power_aware(const Presentation& p, const CosetTable& t);

/// Cycle structure check used by power-aware rewriting: returns the common
/// cycle length of each relator root, or throws RegularityViolation.
std::vector<std::int64_t> root_cycle_lengths(const Presentation& p, const CosetTable& t);

/// Machine check that the conjugate of relator i by rep(s) is a conjugate of
/// the retained cycle-representative conjugate by an element of the subgroup.
struct ConjugateDecomposition {
  Coset cycle_representative = 0;  // t
  std::int64_t shift = 0;          // l, with t . root^l = s
  Word subgroup_element;           // h' = rep(s) root^-l rep(t)^-1
  bool identity_holds = false;     // rep(s) r rep(s)^-1 == h' rep(t) r rep(t)^-1 h'^-1
  bool in_subgroup = false;        // h' fixes coset 0
  bool verified() const { return identity_holds && in_subgroup; }
};

ConjugateDecomposition verify_conjugate_decomposition(const Presentation& p, const CosetTable& t,
                                                      const SchreierTransversal& s,
                                                      std::size_t relator_index, Coset coset);

struct TietzeOptions {
  /// Drop a generator together with a relator that is exactly that generator.
  bool eliminate_unit_relators = false;
  /// Substitute away generators that occur exactly once in some relator, as
  /// long as the total relator length stays within this factor.
  bool substitute = false;
  double max_length_factor = 1.5;
};

SubgroupPresentation tietze_simplify(const SubgroupPresentation& q, const TietzeOptions& options = {});

/// Exponent-sum matrix over the Schreier generators.
IntegerMatrix abelianization_matrix(const SubgroupPresentation& q);
AbelianInvariants abelian_invariants(const SubgroupPresentation& q);

}  // namespace grpdef
