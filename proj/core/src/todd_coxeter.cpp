#include "grpdef/todd_coxeter.hpp"

#include <deque>
#include <limits>

#include "grpdef/errors.hpp"

namespace grpdef {

namespace {

constexpr std::int64_t kUndefined = -1;

// Columns: 2g is generator g, 2g+1 its inverse.
inline std::size_t column_of(Letter l) { return 2 * l.generator() + (l.inverted() ? 1 : 0); }
inline std::size_t inverse_column(std::size_t col) { return col ^ 1u; }

class Enumerator {
public:
  Enumerator(std::size_t rank, std::size_t max_cosets) : width_(2 * rank), max_cosets_(max_cosets) {
    add_coset();
  }

  void scan_and_fill(std::int64_t alpha, const std::vector<std::size_t>& w) {
    if (w.empty()) return;
    std::int64_t f = alpha;
    std::int64_t b = alpha;
    std::size_t i = 0;
    std::size_t j = w.size();  // one past the last unscanned letter
    for (;;) {
      while (i < j && entry(f, w[i]) != kUndefined) f = entry(f, w[i++]);
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && entry(b, inverse_column(w[j - 1])) != kUndefined)
        b = entry(b, inverse_column(w[--j]));
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        // Deduction closes the cycle.
        set(f, w[i], b);
        return;
      }
      define(f, w[i]);
    }
  }

  void define(std::int64_t c, std::size_t col) {
    if (live_ >= max_cosets_)
      throw BudgetExceeded("coset enumeration exceeded its coset cap", max_cosets_);
    const std::int64_t d = add_coset();
    set(c, col, d);
  }

  bool alive(std::int64_t c) const { return forward_[c] == c; }
  std::int64_t entry(std::int64_t c, std::size_t col) const { return table_[c * width_ + col]; }
  std::size_t size() const { return forward_.size(); }
  std::size_t width() const { return width_; }

private:
  std::int64_t add_coset() {
    const auto c = static_cast<std::int64_t>(forward_.size());
    forward_.push_back(c);
    table_.resize(table_.size() + width_, kUndefined);
    ++live_;
    return c;
  }

  std::int64_t& cell(std::int64_t c, std::size_t col) { return table_[c * width_ + col]; }

  void set(std::int64_t c, std::size_t col, std::int64_t d) {
    cell(c, col) = d;
    cell(d, inverse_column(col)) = c;
  }

  std::int64_t rep(std::int64_t c) {
    std::int64_t r = c;
    while (forward_[r] != r) r = forward_[r];
    while (forward_[c] != r) {
      const std::int64_t next = forward_[c];
      forward_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(std::int64_t k, std::int64_t l) {
    const std::int64_t a = rep(k);
    const std::int64_t b = rep(l);
    if (a == b) return;
    const std::int64_t lo = std::min(a, b);
    const std::int64_t hi = std::max(a, b);
    forward_[hi] = lo;
    --live_;
    queue_.push_back(hi);
  }

  void coincidence(std::int64_t a, std::int64_t b) {
    merge(a, b);
    while (!queue_.empty()) {
      const std::int64_t gamma = queue_.front();
      queue_.pop_front();
      for (std::size_t col = 0; col < width_; ++col) {
        const std::int64_t delta = entry(gamma, col);
        if (delta == kUndefined) continue;
        const std::size_t inv = inverse_column(col);
        if (cell(delta, inv) == gamma) cell(delta, inv) = kUndefined;
        const std::int64_t mu = rep(gamma);
        const std::int64_t nu = rep(delta);
        if (entry(mu, col) != kUndefined) {
          merge(nu, entry(mu, col));
        } else if (entry(nu, inv) != kUndefined) {
          merge(mu, entry(nu, inv));
        } else {
          cell(mu, col) = nu;
          cell(nu, inv) = mu;
        }
      }
    }
  }

  std::size_t width_;
  std::size_t max_cosets_;
  std::size_t live_ = 0;
  std::vector<std::int64_t> forward_;  // union-find parent; == self when live
  std::vector<std::int64_t> table_;
  std::deque<std::int64_t> queue_;
};

std::vector<std::size_t> columns(const Word& w) {
  std::vector<std::size_t> out;
  out.reserve(w.size());
  for (Letter l : w) out.push_back(column_of(l));
  return out;
}

}  // namespace

CosetTable canonical_renumbering(const CosetTable& t) {
  const std::size_t n = t.rank();
  constexpr auto kUnset = std::numeric_limits<CosetTable::Coset>::max();
  std::vector<CosetTable::Coset> order;
  std::vector<CosetTable::Coset> label(t.count(), kUnset);
  label[0] = 0;
  order.push_back(0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const auto c = order[head];
    for (int sign : {1, -1})
      for (std::size_t g = 0; g < n; ++g) {
        const auto d = t.act(c, Letter(g, sign));
        if (label[d] == kUnset) {
          label[d] = static_cast<CosetTable::Coset>(order.size());
          order.push_back(d);
        }
      }
  }
  if (order.size() != t.count()) throw InputError("coset table is not connected");
  std::vector<std::vector<CosetTable::Coset>> forward(n, std::vector<CosetTable::Coset>(t.count()));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t c = 0; c < t.count(); ++c) forward[g][label[c]] = label[t.column(g)[c]];
  return CosetTable(t.count(), std::move(forward), t.origin());
}

CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup_generators,
                        std::size_t max_cosets) {
  const std::size_t n = p.rank();
  if (n == 0) return CosetTable(1, {}, TableOrigin::todd_coxeter);
  if (max_cosets < 1) throw BudgetExceeded("coset enumeration exceeded its coset cap", max_cosets);

  std::vector<std::vector<std::size_t>> relators;
  for (const auto& r : p.relators()) relators.push_back(columns(r.full()));

  Enumerator e(n, max_cosets);
  for (const auto& h : subgroup_generators) {
    if (h.rank() != n) throw InputError("subgroup generator has the wrong rank");
    e.scan_and_fill(0, columns(h));
  }

  for (std::int64_t alpha = 0; alpha < static_cast<std::int64_t>(e.size()); ++alpha) {
    for (const auto& r : relators) {
      if (!e.alive(alpha)) break;
      e.scan_and_fill(alpha, r);
    }
    for (std::size_t col = 0; col < e.width() && e.alive(alpha); ++col)
      if (e.entry(alpha, col) == kUndefined) e.define(alpha, col);
  }

  // Compact live cosets; coset 0 is always live (it is the least rep).
  std::vector<std::int64_t> label(e.size(), -1);
  std::size_t count = 0;
  for (std::size_t c = 0; c < e.size(); ++c)
    if (e.alive(static_cast<std::int64_t>(c))) label[c] = static_cast<std::int64_t>(count++);
  std::vector<std::vector<CosetTable::Coset>> forward(n, std::vector<CosetTable::Coset>(count));
  for (std::size_t c = 0; c < e.size(); ++c) {
    if (label[c] < 0) continue;
    for (std::size_t g = 0; g < n; ++g) {
      const std::int64_t d = e.entry(static_cast<std::int64_t>(c), 2 * g);
      if (d == kUndefined || label[d] < 0)
        throw std::logic_error("coset enumeration finished with an incomplete table");
      forward[g][label[c]] = static_cast<CosetTable::Coset>(label[d]);
    }
  }
  return canonical_renumbering(CosetTable(count, std::move(forward), TableOrigin::todd_coxeter));
}

}  // namespace grpdef
