#include "grpdef/quotients.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "grpdef/errors.hpp"
#include "grpdef/numeric.hpp"

namespace grpdef {

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || hit[p]) throw InputError("image array is not a permutation");
    hit[p] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  Permutation p;
  p.images_.resize(degree);
  std::iota(p.images_.begin(), p.images_.end(), Point{0});
  return p;
}

Permutation Permutation::translation(std::size_t modulus, std::size_t shift) {
  Permutation p;
  p.images_.resize(modulus);
  for (std::size_t x = 0; x < modulus; ++x) p.images_[x] = static_cast<Point>((x + shift) % modulus);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[images_[i]] = static_cast<Point>(i);
  return p;
}

Permutation Permutation::pow(std::int64_t e) const {
  const std::int64_t ord = order();
  e %= ord;
  if (e < 0) e += ord;
  Permutation out = identity(degree());
  for (std::size_t p = 0; p < degree(); ++p) {
    Point x = static_cast<Point>(p);
    for (std::int64_t i = 0; i < e; ++i) x = images_[x];
    out.images_[p] = x;
  }
  return out;
}

std::int64_t Permutation::order() const {
  std::int64_t ord = 1;
  for (const auto& c : cycles()) ord = lcm_checked(ord, static_cast<std::int64_t>(c.size()));
  return ord;
}

std::vector<std::vector<Permutation::Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t s = 0; s < images_.size(); ++s) {
    if (seen[s]) continue;
    std::vector<Point> cycle;
    for (Point x = static_cast<Point>(s); !seen[x]; x = images_[x]) {
      seen[x] = true;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

Permutation operator*(const Permutation& lhs, const Permutation& rhs) {
  if (lhs.degree() != rhs.degree()) throw InputError("degree mismatch in permutation product");
  Permutation out;
  out.images_.resize(lhs.degree());
  for (std::size_t p = 0; p < lhs.degree(); ++p) out.images_[p] = rhs.images_[lhs.images_[p]];
  return out;
}

std::size_t PermutationHash::operator()(const Permutation& p) const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

Permutation least_of_cycle_type(std::size_t degree, std::vector<std::size_t> cycle_lengths) {
  std::sort(cycle_lengths.begin(), cycle_lengths.end());
  std::vector<Permutation::Point> images(degree);
  std::size_t start = 0;
  for (std::size_t len : cycle_lengths) {
    if (len == 0 || start + len > degree) throw InputError("cycle type does not fit the degree");
    for (std::size_t i = 0; i < len; ++i)
      images[start + i] = static_cast<Permutation::Point>(start + (i + 1) % len);
    start += len;
  }
  if (start != degree) throw InputError("cycle type does not sum to the degree");
  return Permutation(std::move(images));
}

// ---------------------------------------------------------------------------
// QuotientWitness and CosetTable

QuotientWitness::QuotientWitness(std::size_t degree, std::vector<Permutation> generator_images)
    : degree_(degree), images_(std::move(generator_images)) {
  if (degree_ == 0) throw InputError("witness degree must be positive");
  for (const auto& p : images_)
    if (p.degree() != degree_) throw InputError("witness images must share the degree");
}

CosetTable::CosetTable(std::size_t count, std::vector<std::vector<Coset>> forward, TableOrigin origin)
    : count_(count), forward_(std::move(forward)), origin_(origin) {
  if (count_ == 0) throw InputError("coset table needs at least one coset");
  backward_.resize(forward_.size());
  for (std::size_t g = 0; g < forward_.size(); ++g) {
    if (forward_[g].size() != count_) throw InputError("coset table column has wrong length");
    backward_[g].assign(count_, std::numeric_limits<Coset>::max());
    for (std::size_t c = 0; c < count_; ++c) {
      const Coset d = forward_[g][c];
      if (d >= count_ || backward_[g][d] != std::numeric_limits<Coset>::max())
        throw InputError("coset table column is not a permutation");
      backward_[g][d] = static_cast<Coset>(c);
    }
  }
}

CosetTable::Coset CosetTable::act(Coset c, const Word& w) const {
  for (Letter l : w) c = act(c, l);
  return c;
}

Permutation CosetTable::action_of(const Word& w) const {
  std::vector<Permutation::Point> images(count_);
  for (std::size_t c = 0; c < count_; ++c) images[c] = act(static_cast<Coset>(c), w);
  return Permutation(std::move(images));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

void check_rank(const QuotientWitness& w, std::size_t rank) {
  if (w.rank() != rank)
    throw InputError("witness has " + std::to_string(w.rank()) + " generator images, expected " +
                     std::to_string(rank));
}

}  // namespace

Permutation evaluate_word(const QuotientWitness& w, const Word& word) {
  check_rank(w, word.rank());
  std::vector<Permutation> inverses;
  inverses.reserve(w.rank());
  for (const auto& g : w.generator_images()) inverses.push_back(g.inverse());
  std::vector<Permutation::Point> images(w.degree());
  for (std::size_t p = 0; p < w.degree(); ++p) {
    auto x = static_cast<Permutation::Point>(p);
    for (Letter l : word)
      x = l.inverted() ? inverses[l.generator()][x] : w.generator_images()[l.generator()][x];
    images[p] = x;
  }
  return Permutation(std::move(images));
}

bool verify_homomorphism(const Presentation& p, const QuotientWitness& w) {
  check_rank(w, p.rank());
  for (const auto& r : p.relators()) {
    const std::int64_t ord = evaluate_word(w, r.root()).order();
    if (r.exponent() % ord != 0) return false;
  }
  return true;
}

std::vector<std::int64_t> relator_root_orders(const Presentation& p, const QuotientWitness& w) {
  check_rank(w, p.rank());
  std::vector<std::int64_t> out;
  out.reserve(p.relators().size());
  for (const auto& r : p.relators()) {
    const std::int64_t ord = evaluate_word(w, r.root()).order();
    if (r.exponent() % ord != 0) throw NotAHomomorphism();
    out.push_back(ord);
  }
  return out;
}

bool is_no_collapse(const Presentation& p, const QuotientWitness& w) {
  const auto orders = relator_root_orders(p, w);
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (orders[i] != p.relators()[i].exponent()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Closure

std::vector<Permutation> image_closure(const QuotientWitness& w, std::size_t cap) {
  std::vector<Permutation> steps(w.generator_images());
  for (const auto& g : w.generator_images()) steps.push_back(g.inverse());

  std::vector<Permutation> elements{Permutation::identity(w.degree())};
  std::unordered_map<Permutation, std::size_t, PermutationHash> index{{elements.front(), 0}};
  if (cap < 1) throw BudgetExceeded("image closure exceeded its element cap", cap);
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& s : steps) {
      Permutation next = elements[head] * s;
      if (index.contains(next)) continue;
      if (elements.size() >= cap) throw BudgetExceeded("image closure exceeded its element cap", cap);
      index.emplace(next, elements.size());
      elements.push_back(std::move(next));
    }
  }
  return elements;
}

CosetTable regular_coset_table(const QuotientWitness& w, std::size_t cap) {
  const auto elements = image_closure(w, cap);
  std::unordered_map<Permutation, std::size_t, PermutationHash> index;
  index.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], i);
  std::vector<std::vector<CosetTable::Coset>> forward(w.rank());
  for (std::size_t g = 0; g < w.rank(); ++g) {
    forward[g].resize(elements.size());
    for (std::size_t e = 0; e < elements.size(); ++e)
      forward[g][e] =
          static_cast<CosetTable::Coset>(index.at(elements[e] * w.generator_images()[g]));
  }
  return CosetTable(elements.size(), std::move(forward), TableOrigin::kernel_of_witness);
}

QuotientWitness combine_witnesses(std::span<const QuotientWitness> parts) {
  if (parts.empty()) throw InputError("cannot combine an empty list of witnesses");
  const std::size_t rank = parts.front().rank();
  std::size_t degree = 0;
  for (const auto& part : parts) {
    if (part.rank() != rank) throw InputError("witnesses disagree on the generator count");
    degree += part.degree();
  }
  std::vector<Permutation> images;
  for (std::size_t g = 0; g < rank; ++g) {
    std::vector<Permutation::Point> img;
    img.reserve(degree);
    std::size_t offset = 0;
    for (const auto& part : parts) {
      for (auto x : part.generator_images()[g].images())
        img.push_back(static_cast<Permutation::Point>(x + offset));
      offset += part.degree();
    }
    images.emplace_back(std::move(img));
  }
  return QuotientWitness(degree, std::move(images));
}

// ---------------------------------------------------------------------------
// Search

namespace {

using Clock = std::chrono::steady_clock;

struct Shared {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> budget_hit{false};
  std::uint64_t max_nodes = 0;
  Clock::time_point deadline = Clock::time_point::max();

  // Returns false once the budget is spent.
  bool tick() {
    const std::uint64_t n = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (n > max_nodes) {
      budget_hit = true;
      return false;
    }
    if ((n & 1023u) == 0 && Clock::now() > deadline) {
      budget_hit = true;
      return false;
    }
    return !budget_hit.load(std::memory_order_relaxed);
  }
};

// Per-relator acceptance of an achieved root order.
struct RelatorRule {
  std::size_t relator = 0;
  std::int64_t exponent = 1;
  std::optional<std::int64_t> exact;  // required order; otherwise "divides exponent"

  bool accepts(std::int64_t order) const {
    return exact ? order == *exact : exponent % order == 0;
  }
};

std::vector<RelatorRule> make_rules(const Presentation& p, const OrderTargets& targets) {
  std::vector<RelatorRule> rules;
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    RelatorRule rule{i, p.relators()[i].exponent(), std::nullopt};
    if (std::holds_alternative<NoCollapse>(targets)) {
      rule.exact = rule.exponent;
    } else if (const auto* t = std::get_if<std::vector<std::int64_t>>(&targets)) {
      if (t->size() != p.relators().size())
        throw InputError("need one target order per relator");
      const std::int64_t k = (*t)[i];
      if (k < 1 || rule.exponent % k != 0)
        throw InputError("target order " + std::to_string(k) + " does not divide exponent " +
                         std::to_string(rule.exponent));
      rule.exact = k;
    }
    rules.push_back(rule);
  }
  return rules;
}

std::size_t max_generator(const Word& w) {
  std::size_t m = 0;
  for (Letter l : w) m = std::max(m, l.generator());
  return m;
}

// Generator g's image is constrained by every relator whose root is a single
// letter of g; other relators are checked once their last generator is set.
struct Constraints {
  std::vector<std::vector<RelatorRule>> single;  // per generator
  std::vector<std::vector<RelatorRule>> checks;  // per level
};

Constraints make_constraints(const Presentation& p, const std::vector<RelatorRule>& rules) {
  Constraints c;
  c.single.resize(p.rank());
  c.checks.resize(p.rank());
  for (const auto& rule : rules) {
    const Word& root = p.relators()[rule.relator].root();
    if (root.size() == 1)
      c.single[root[0].generator()].push_back(rule);
    else
      c.checks[max_generator(root)].push_back(rule);
  }
  return c;
}

bool single_ok(const std::vector<RelatorRule>& rules, std::int64_t order) {
  for (const auto& r : rules)
    if (!r.accepts(order)) return false;
  return true;
}

// Candidate spaces. Each supplies per-level candidate lists in lexicographic
// order of the image arrays, an assignment step, and relator checks.

class SymmetricSpace {
public:
  SymmetricSpace(const Presentation& p, const Constraints& constraints, std::size_t degree)
      : p_(p), constraints_(constraints), degree_(degree) {
    std::vector<std::uint8_t> perm(degree);
    std::iota(perm.begin(), perm.end(), std::uint8_t{0});
    do {
      table_.insert(table_.end(), perm.begin(), perm.end());
      orders_.push_back(order_of(perm.data()));
    } while (std::next_permutation(perm.begin(), perm.end()));
    const std::size_t total = orders_.size();

    candidates_.resize(p.rank());
    for (std::size_t g = 0; g < p.rank(); ++g) {
      if (g == 0) {
        // Conjugation acts on assignments preserving validity, so the least
        // valid assignment starts with the least element of its class.
        std::vector<std::uint32_t> reps;
        for (const auto& type : partitions(degree)) {
          const Permutation rep = least_of_cycle_type(degree, type);
          const std::uint32_t idx = rank_of(rep);
          if (single_ok(constraints.single[0], orders_[idx])) reps.push_back(idx);
        }
        std::sort(reps.begin(), reps.end());
        candidates_[0] = std::move(reps);
      } else {
        for (std::uint32_t i = 0; i < total; ++i)
          if (single_ok(constraints.single[g], orders_[i])) candidates_[g].push_back(i);
      }
    }
  }

  struct State {
    std::vector<std::vector<std::uint8_t>> fwd;
    std::vector<std::vector<std::uint8_t>> inv;
    std::vector<std::uint32_t> chosen;
  };

  State make_state() const {
    State s;
    s.fwd.assign(p_.rank(), std::vector<std::uint8_t>(degree_));
    s.inv.assign(p_.rank(), std::vector<std::uint8_t>(degree_));
    s.chosen.assign(p_.rank(), 0);
    return s;
  }

  std::size_t levels() const { return p_.rank(); }
  const std::vector<std::uint32_t>& candidates(std::size_t g) const { return candidates_[g]; }

  void assign(State& s, std::size_t g, std::uint32_t cand) const {
    const std::uint8_t* img = &table_[static_cast<std::size_t>(cand) * degree_];
    s.chosen[g] = cand;
    for (std::size_t x = 0; x < degree_; ++x) {
      s.fwd[g][x] = img[x];
      s.inv[g][img[x]] = static_cast<std::uint8_t>(x);
    }
  }

  bool check(const State& s, std::size_t g) const {
    std::uint8_t image[kMaxSearchDegree];
    for (const auto& rule : constraints_.checks[g]) {
      const Word& root = p_.relators()[rule.relator].root();
      for (std::size_t x = 0; x < degree_; ++x) {
        std::uint8_t y = static_cast<std::uint8_t>(x);
        for (Letter l : root) y = l.inverted() ? s.inv[l.generator()][y] : s.fwd[l.generator()][y];
        image[x] = y;
      }
      if (!rule.accepts(order_of(image))) return false;
    }
    return true;
  }

  QuotientWitness witness(const State& s) const {
    std::vector<Permutation> images;
    for (std::size_t g = 0; g < p_.rank(); ++g)
      images.emplace_back(std::vector<Permutation::Point>(s.fwd[g].begin(), s.fwd[g].end()));
    return QuotientWitness(degree_, std::move(images));
  }

private:
  std::int64_t order_of(const std::uint8_t* img) const {
    bool seen[kMaxSearchDegree] = {};
    std::int64_t ord = 1;
    for (std::size_t s = 0; s < degree_; ++s) {
      if (seen[s]) continue;
      std::int64_t len = 0;
      for (std::size_t x = s; !seen[x]; x = img[x]) {
        seen[x] = true;
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  // Lexicographic rank of a permutation (Lehmer code).
  std::uint32_t rank_of(const Permutation& p) const {
    std::uint32_t r = 0;
    std::vector<bool> used(degree_, false);
    for (std::size_t i = 0; i < degree_; ++i) {
      std::uint32_t smaller = 0;
      for (std::size_t v = 0; v < p[i]; ++v)
        if (!used[v]) ++smaller;
      used[p[i]] = true;
      std::uint32_t fact = 1;
      for (std::size_t k = 2; k < degree_ - i; ++k) fact *= static_cast<std::uint32_t>(k);
      r += smaller * fact;
    }
    return r;
  }

  static std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t max_part) {
      if (left == 0) {
        out.push_back(cur);
        return;
      }
      for (std::size_t part = std::min(left, max_part); part >= 1; --part) {
        cur.push_back(part);
        rec(left - part, part);
        cur.pop_back();
      }
    };
    rec(n, n);
    return out;
  }

  const Presentation& p_;
  const Constraints& constraints_;
  std::size_t degree_;
  std::vector<std::uint8_t> table_;
  std::vector<std::int64_t> orders_;
  std::vector<std::vector<std::uint32_t>> candidates_;
};

class CyclicSpace {
public:
  CyclicSpace(const Presentation& p, const Constraints& constraints, std::size_t modulus)
      : p_(p), constraints_(constraints), modulus_(modulus) {
    candidates_.resize(p.rank());
    for (std::size_t g = 0; g < p.rank(); ++g)
      for (std::uint32_t r = 0; r < modulus; ++r)
        if (single_ok(constraints.single[g], order_of(r))) candidates_[g].push_back(r);
    sums_.resize(p.relators().size());
    for (std::size_t i = 0; i < p.relators().size(); ++i)
      for (std::size_t g = 0; g < p.rank(); ++g)
        sums_[i].push_back(exponent_sum(p.relators()[i].root(), GeneratorId{g}));
  }

  struct State {
    std::vector<std::uint32_t> shift;
  };
  State make_state() const { return {std::vector<std::uint32_t>(p_.rank(), 0)}; }

  std::size_t levels() const { return p_.rank(); }
  const std::vector<std::uint32_t>& candidates(std::size_t g) const { return candidates_[g]; }
  void assign(State& s, std::size_t g, std::uint32_t cand) const { s.shift[g] = cand; }

  bool check(const State& s, std::size_t g) const {
    const auto m = static_cast<std::int64_t>(modulus_);
    for (const auto& rule : constraints_.checks[g]) {
      std::int64_t total = 0;
      for (std::size_t h = 0; h <= g; ++h)
        total = (total + (sums_[rule.relator][h] % m) * s.shift[h]) % m;
      if (total < 0) total += m;
      if (!rule.accepts(order_of(static_cast<std::uint32_t>(total)))) return false;
    }
    return true;
  }

  QuotientWitness witness(const State& s) const {
    std::vector<Permutation> images;
    for (std::size_t g = 0; g < p_.rank(); ++g)
      images.push_back(Permutation::translation(modulus_, s.shift[g]));
    return QuotientWitness(modulus_, std::move(images));
  }

private:
  std::int64_t order_of(std::uint32_t r) const {
    const auto m = static_cast<std::int64_t>(modulus_);
    return m / std::gcd(m, static_cast<std::int64_t>(r));
  }

  const Presentation& p_;
  const Constraints& constraints_;
  std::size_t modulus_;
  std::vector<std::vector<std::uint32_t>> candidates_;
  std::vector<std::vector<std::int64_t>> sums_;
};

template <class Space>
bool descend(const Space& space, typename Space::State& state, std::size_t level, Shared& shared) {
  if (level == space.levels()) return true;
  for (std::uint32_t cand : space.candidates(level)) {
    if (!shared.tick()) return false;
    space.assign(state, level, cand);
    if (!space.check(state, level)) continue;
    if (descend(space, state, level + 1, shared)) return true;
    if (shared.budget_hit) return false;
  }
  return false;
}

// Searches one degree. Workers pull first-level candidates in increasing
// order; the least successful index wins, so the result does not depend on
// the number of workers.
template <class Space>
SearchStatus search_space(const Space& space, Shared& shared, std::size_t threads,
                          SearchMode mode, std::optional<QuotientWitness>& out) {
  if (space.levels() == 0) {
    out = space.witness(space.make_state());
    return SearchStatus::found;
  }
  const auto& first = space.candidates(0);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{kNone};
  std::atomic<std::size_t> aborted{kNone};
  std::mutex mu;
  std::optional<QuotientWitness> best_witness;

  auto worker = [&] {
    auto state = space.make_state();
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= first.size() || i > best.load()) return;
      if (mode == SearchMode::first && best.load() != kNone) return;
      if (shared.budget_hit) {
        std::size_t a = aborted.load();
        while (i < a && !aborted.compare_exchange_weak(a, i)) {}
        return;
      }
      if (!shared.tick()) {
        std::size_t a = aborted.load();
        while (i < a && !aborted.compare_exchange_weak(a, i)) {}
        return;
      }
      space.assign(state, 0, first[i]);
      bool ok = space.check(state, 0) && descend(space, state, 1, shared);
      if (ok) {
        std::lock_guard lock(mu);
        if (i < best.load()) {
          best = i;
          best_witness = space.witness(state);
        }
      } else if (shared.budget_hit) {
        std::size_t a = aborted.load();
        while (i < a && !aborted.compare_exchange_weak(a, i)) {}
        return;
      }
    }
  };

  const std::size_t n = std::max<std::size_t>(1, threads);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  }

  if (best.load() != kNone && (mode == SearchMode::first || best.load() < aborted.load())) {
    out = std::move(best_witness);
    return SearchStatus::found;
  }
  return aborted.load() != kNone || shared.budget_hit ? SearchStatus::budget_hit
                                                       : SearchStatus::exhausted;
}

}  // namespace

SearchOutcome search_witness(const Presentation& p, const SearchRequest& request) {
  const auto rules = make_rules(p, request.targets);
  const auto constraints = make_constraints(p, rules);

  Shared shared;
  shared.max_nodes = request.budget.max_nodes;
  if (request.budget.time_limit.count() > 0)
    shared.deadline = Clock::now() + request.budget.time_limit;

  SearchOutcome outcome;
  auto run = [&](const auto& space) {
    std::optional<QuotientWitness> found;
    const SearchStatus status = search_space(space, shared, request.threads, request.mode, found);
    if (status == SearchStatus::found) {
      outcome.status = SearchStatus::found;
      outcome.witness = std::move(found);
      return true;
    }
    if (status == SearchStatus::budget_hit) {
      outcome.status = SearchStatus::budget_hit;
      return true;
    }
    return false;
  };

  if (const auto* sym = std::get_if<SymmetricDegrees>(&request.family)) {
    if (sym->lo < 1 || sym->lo > sym->hi) throw InputError("empty degree range");
    if (sym->hi > kMaxSearchDegree)
      throw InputError("symmetric search degree is limited to " + std::to_string(kMaxSearchDegree));
    for (std::size_t d = sym->lo; d <= sym->hi; ++d)
      if (run(SymmetricSpace(p, constraints, d))) break;
  } else {
    const auto& cyc = std::get<CyclicModuli>(request.family);
    if (cyc.lo < 1 || cyc.lo > cyc.hi) throw InputError("empty modulus range");
    for (std::size_t k = cyc.lo; k <= cyc.hi; ++k)
      if (run(CyclicSpace(p, constraints, k))) break;
  }
  outcome.nodes = std::min(shared.nodes.load(), shared.max_nodes);
  return outcome;
}

}  // namespace grpdef
