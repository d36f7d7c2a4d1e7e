#include "grpdef/rewriting.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "grpdef/errors.hpp"

namespace grpdef {

std::optional<std::size_t> SchreierTransversal::generator_index(Coset c, std::size_t generator) const {
  const std::int64_t idx = label_index_[c * rank_ + generator];
  if (idx < 0) return std::nullopt;
  return static_cast<std::size_t>(idx);
}

SchreierTransversal schreier_transversal(const CosetTable& t) {
  SchreierTransversal s;
  const std::size_t n = t.rank();
  s.rank_ = n;
  s.reps_.assign(t.count(), Word(n));
  s.tree_.assign(t.count() * n, false);
  std::vector<bool> seen(t.count(), false);
  std::vector<Coset> queue{0};
  seen[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Coset c = queue[head];
    for (int sign : {1, -1})
      for (std::size_t g = 0; g < n; ++g) {
        const Letter l(g, sign);
        const Coset d = t.act(c, l);
        if (seen[d]) continue;
        seen[d] = true;
        queue.push_back(d);
        s.reps_[d] = s.reps_[c] * Word(std::span<const Letter>(&l, 1), n);
        // Orient the tree edge along the positive generator.
        if (sign > 0)
          s.tree_[c * n + g] = true;
        else
          s.tree_[d * n + g] = true;
      }
  }
  if (queue.size() != t.count()) throw InputError("coset table is not connected");

  s.label_index_.assign(t.count() * n, -1);
  for (std::size_t c = 0; c < t.count(); ++c)
    for (std::size_t g = 0; g < n; ++g)
      if (!s.tree_[c * n + g]) {
        s.label_index_[c * n + g] = static_cast<std::int64_t>(s.labels_.size());
        s.labels_.emplace_back(static_cast<Coset>(c), g);
      }
  return s;
}

Word rewrite_word(const Word& w, Coset start, const CosetTable& t, const SchreierTransversal& s) {
  std::vector<Letter> out;
  Coset c = start;
  for (Letter l : w) {
    const std::size_t g = l.generator();
    if (!l.inverted()) {
      if (auto idx = s.generator_index(c, g)) out.emplace_back(*idx, 1);
      c = t.act(c, l);
    } else {
      const Coset d = t.act(c, l);
      if (auto idx = s.generator_index(d, g)) out.emplace_back(*idx, -1);
      c = d;
    }
  }
  return Word(out, s.schreier_generators().size());
}

std::string SubgroupPresentation::generator_label(std::size_t i) const {
  const auto [c, g] = schreier_generators.at(i);
  const std::string name =
      g < source.generator_names().size() ? source.generator_names()[g] : "x" + std::to_string(g);
  return "(" + std::to_string(c) + "," + name + ")";
}

std::vector<std::string> SubgroupPresentation::generator_labels() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < schreier_generators.size(); ++i) out.push_back(generator_label(i));
  return out;
}

namespace {

void check_table(const Presentation& p, const CosetTable& t) {
  if (t.rank() != p.rank()) throw InputError("coset table rank does not match the presentation");
}

}  // namespace

SubgroupPresentation reidemeister_schreier_full(const Presentation& p, const CosetTable& t) {
  check_table(p, t);
  const SchreierTransversal s = schreier_transversal(t);
  SubgroupPresentation q;
  q.schreier_generators = s.schreier_generators();
  q.source = p;
  q.index = t.count();
  q.mode = RewriteMode::full;
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    const Word r = p.relators()[i].full();
    for (std::size_t c = 0; c < t.count(); ++c) {
      q.relators.push_back(rewrite_word(r, static_cast<Coset>(c), t, s));
      q.origins.push_back({i, static_cast<Coset>(c)});
    }
  }
  return q;
}

namespace {

// Cycles of a permutation of cosets, each listed from its least coset, in
// order of least coset.
std::vector<std::vector<Coset>> ordered_cycles(const Permutation& perm) {
  std::vector<std::vector<Coset>> out;
  for (auto& cyc : perm.cycles()) out.emplace_back(cyc.begin(), cyc.end());
  // Permutation::cycles already starts each cycle at its least point and
  // orders cycles by that point.
  return out;
}

}  // namespace

std::vector<std::int64_t> root_cycle_lengths(const Presentation& p, const CosetTable& t) {
  check_table(p, t);
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    const auto cycles = ordered_cycles(t.action_of(p.relators()[i].root()));
    const std::size_t len = cycles.front().size();
    for (const auto& c : cycles)
      if (c.size() != len)
        throw RegularityViolation("root of relator " + std::to_string(i) +
                                  " acts with cycles of unequal length");
    out.push_back(static_cast<std::int64_t>(len));
  }
  return out;
}

SubgroupPresentation reidemeister_schreier_power_aware(const Presentation& p, const CosetTable& t) {
  check_table(p, t);
  const SchreierTransversal s = schreier_transversal(t);
  SubgroupPresentation q;
  q.schreier_generators = s.schreier_generators();
  q.source = p;
  q.index = t.count();
  q.mode = RewriteMode::power_aware;
  q.cycle_lengths = root_cycle_lengths(p, t);
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    const Word r = p.relators()[i].full();
    for (const auto& cycle : ordered_cycles(t.action_of(p.relators()[i].root()))) {
      q.relators.push_back(rewrite_word(r, cycle.front(), t, s));
      q.origins.push_back({i, cycle.front()});
    }
  }
  return q;
}

ConjugateDecomposition verify_conjugate_decomposition(const Presentation& p, const CosetTable& t,
                                                      const SchreierTransversal& s,
                                                      std::size_t relator_index, Coset coset) {
  check_table(p, t);
  if (relator_index >= p.relators().size()) throw InputError("relator index out of range");
  if (coset >= t.count()) throw InputError("coset out of range");
  const auto& rel = p.relators()[relator_index];
  const Word& root = rel.root();

  // Walk the root's cycle backwards from s to its least coset.
  const Permutation action = t.action_of(root);
  const std::int64_t period = static_cast<std::int64_t>(root_cycle_lengths(p, t)[relator_index]);
  Coset least = coset;
  std::int64_t shift = 0;
  {
    Coset c = coset;
    const Permutation back = action.inverse();
    for (std::int64_t step = 1; step < period; ++step) {
      c = back[c];
      if (c < least) {
        least = c;
        shift = step;
      }
    }
  }

  ConjugateDecomposition out;
  out.cycle_representative = least;
  out.shift = shift;
  const Word& rep_s = s.representative(coset);
  const Word& rep_t = s.representative(least);
  out.subgroup_element = rep_s * root.pow(-shift) * rep_t.inverse();

  const Word r = rel.full();
  const Word lhs = rep_s * r * rep_s.inverse();
  const Word& h = out.subgroup_element;
  const Word rhs = h * rep_t * r * rep_t.inverse() * h.inverse();
  out.identity_holds = lhs == rhs;
  out.in_subgroup = t.act(0, h) == 0;
  return out;
}

// ---------------------------------------------------------------------------
// Tietze simplification

namespace {

// Canonical representative of a cyclic word up to rotation and inversion.
std::vector<Letter> cyclic_key(const Word& core) {
  const auto letters = core.letters();
  const std::size_t n = letters.size();
  std::vector<Letter> best;
  const Word inv = core.inverse();
  for (const Word* w : {&core, &inv}) {
    const auto ls = w->letters();
    for (std::size_t shift = 0; shift < n; ++shift) {
      std::vector<Letter> rot(ls.begin() + static_cast<std::ptrdiff_t>(shift), ls.end());
      rot.insert(rot.end(), ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(shift));
      if (best.empty() || rot < best) best = std::move(rot);
    }
  }
  return best;
}

void cleanup(SubgroupPresentation& q) {
  std::set<std::vector<Letter>> seen;
  std::vector<Word> relators;
  std::vector<RelatorOrigin> origins;
  for (std::size_t i = 0; i < q.relators.size(); ++i) {
    Word core = cyclic_reduce(q.relators[i]).core;
    if (core.empty()) continue;
    if (!seen.insert(cyclic_key(core)).second) continue;
    relators.push_back(std::move(core));
    if (i < q.origins.size()) origins.push_back(q.origins[i]);
  }
  q.relators = std::move(relators);
  q.origins = std::move(origins);
}

// Replace generator `g` by `image` (a word in the other generators, same
// rank) everywhere, then drop generator g and renumber.
void eliminate(SubgroupPresentation& q, std::size_t g, const Word& image, std::size_t drop_relator) {
  const std::size_t rank = q.schreier_generators.size();
  const Word image_inv = image.inverse();
  std::vector<Word> relators;
  std::vector<RelatorOrigin> origins;
  for (std::size_t i = 0; i < q.relators.size(); ++i) {
    if (i == drop_relator) continue;
    std::vector<Letter> letters;
    for (Letter l : q.relators[i]) {
      if (l.generator() != g) {
        letters.push_back(l);
        continue;
      }
      const Word& sub = l.inverted() ? image_inv : image;
      letters.insert(letters.end(), sub.begin(), sub.end());
    }
    // Renumber past g.
    for (Letter& l : letters)
      if (l.generator() > g) l = Letter(l.generator() - 1, l.sign());
    relators.emplace_back(letters, rank - 1);
    if (i < q.origins.size()) origins.push_back(q.origins[i]);
  }
  q.schreier_generators.erase(q.schreier_generators.begin() + static_cast<std::ptrdiff_t>(g));
  q.relators = std::move(relators);
  q.origins = std::move(origins);
}

std::size_t total_length(const SubgroupPresentation& q) {
  std::size_t n = 0;
  for (const auto& r : q.relators) n += r.size();
  return n;
}

}  // namespace

SubgroupPresentation tietze_simplify(const SubgroupPresentation& input, const TietzeOptions& options) {
  SubgroupPresentation q = input;
  q.simplified = true;
  cleanup(q);

  if (options.eliminate_unit_relators) {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < q.relators.size(); ++i) {
        if (q.relators[i].size() != 1) continue;
        eliminate(q, q.relators[i][0].generator(), Word(q.schreier_generators.size()), i);
        cleanup(q);
        changed = true;
        break;
      }
    }
  }

  if (options.substitute) {
    const double budget = options.max_length_factor * static_cast<double>(std::max<std::size_t>(1, total_length(q)));
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < q.relators.size() && !changed; ++i) {
        const Word& r = q.relators[i];
        std::map<std::size_t, std::size_t> occurrences;
        for (Letter l : r) ++occurrences[l.generator()];
        for (const auto& [g, count] : occurrences) {
          if (count != 1) continue;
          // r = A x^e B  =>  x = (B A)^-e
          const auto letters = r.letters();
          std::size_t pos = 0;
          while (letters[pos].generator() != g) ++pos;
          const int e = letters[pos].sign();
          const std::size_t rank = q.schreier_generators.size();
          Word a(letters.subspan(0, pos), rank);
          Word b(letters.subspan(pos + 1), rank);
          Word image = (b * a).inverse();
          if (e < 0) image = image.inverse();

          SubgroupPresentation trial = q;
          eliminate(trial, g, image, i);
          cleanup(trial);
          if (static_cast<double>(total_length(trial)) > budget) continue;
          q = std::move(trial);
          changed = true;
          break;
        }
      }
    }
  }
  return q;
}

IntegerMatrix abelianization_matrix(const SubgroupPresentation& q) {
  IntegerMatrix m(q.relators.size(), q.generator_count());
  for (std::size_t i = 0; i < q.relators.size(); ++i)
    for (Letter l : q.relators[i]) m(i, l.generator()) += l.sign();
  return m;
}

AbelianInvariants abelian_invariants(const SubgroupPresentation& q) {
  return abelian_invariants(abelianization_matrix(q));
}

}  // namespace grpdef
