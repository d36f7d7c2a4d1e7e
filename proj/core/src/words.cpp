#include "grpdef/words.hpp"

#include <algorithm>
#include <cctype>

#include "grpdef/errors.hpp"
#include "grpdef/numeric.hpp"

namespace grpdef {

namespace {

void check_rank(std::span<const Letter> letters, std::size_t rank) {
  for (Letter l : letters)
    if (l.generator() >= rank)
      throw InputError("generator index " + std::to_string(l.generator()) +
                       " out of range for rank " + std::to_string(rank));
}

// Appends `l` to a reduced stack, cancelling against the top.
inline void push_reduced(std::vector<Letter>& stack, Letter l) {
  if (!stack.empty() && stack.back() == l.inverse())
    stack.pop_back();
  else
    stack.push_back(l);
}

}  // namespace

Word::Word(std::span<const Letter> letters, std::size_t rank) : rank_(rank) {
  check_rank(letters, rank);
  letters_.reserve(letters.size());
  for (Letter l : letters) push_reduced(letters_, l);
}

Word Word::generator(std::size_t g, std::size_t rank, int sign) {
  const Letter l(g, sign);
  return Word(std::span<const Letter>(&l, 1), rank);
}

Word Word::from_compact(std::string_view text, std::size_t rank) {
  std::vector<Letter> letters;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c >= 'a' && c <= 'z')
      letters.emplace_back(static_cast<std::size_t>(c - 'a'), 1);
    else if (c >= 'A' && c <= 'Z')
      letters.emplace_back(static_cast<std::size_t>(c - 'A'), -1);
    else
      throw InputError(std::string("bad compact word character '") + c + "'");
  }
  return Word(letters, rank);
}

Word Word::inverse() const {
  Word out(rank_);
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    out.letters_.push_back(it->inverse());
  return out;
}

Word Word::pow(std::int64_t exponent) const {
  const Word base = exponent < 0 ? inverse() : *this;
  const std::int64_t count = exponent < 0 ? -exponent : exponent;
  Word out(rank_);
  if (base.empty() || count == 0) return out;
  // Powers of a reduced word reduce only across the seams, so conjugate
  // out the non-cyclic part and repeat the cyclic core literally.
  const auto [conj, core] = cyclic_reduce(base);
  std::vector<Letter> letters(conj.letters_);
  letters.reserve(conj.size() * 2 + core.size() * static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i)
    letters.insert(letters.end(), core.letters_.begin(), core.letters_.end());
  const Word tail = conj.inverse();
  letters.insert(letters.end(), tail.letters_.begin(), tail.letters_.end());
  out.letters_ = std::move(letters);
  return out;
}

Word operator*(const Word& lhs, const Word& rhs) {
  Word out(lhs);
  out *= rhs;
  return out;
}

Word& Word::operator*=(const Word& rhs) {
  if (rhs.rank_ != rank_) throw InputError("rank mismatch in word product");
  letters_.reserve(letters_.size() + rhs.letters_.size());
  for (Letter l : rhs.letters_) push_reduced(letters_, l);
  return *this;
}

std::string Word::to_compact() const {
  std::string out;
  out.reserve(letters_.size());
  for (Letter l : letters_) {
    const char base = l.inverted() ? 'A' : 'a';
    out.push_back(static_cast<char>(base + static_cast<char>(l.generator())));
  }
  return out;
}

Word free_reduce(std::span<const Letter> letters, std::size_t rank) {
  return Word(letters, rank);
}

CyclicDecomposition cyclic_reduce(const Word& w) {
  const auto letters = w.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return {Word(letters.subspan(0, lo), w.rank()), Word(letters.subspan(lo, hi - lo), w.rank())};
}

std::size_t smallest_period(std::span<const Letter> letters) {
  const std::size_t n = letters.size();
  if (n == 0) return 0;
  std::vector<std::size_t> fail(n + 1, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = fail[i];
    while (k > 0 && letters[i] != letters[k]) k = fail[k];
    fail[i + 1] = letters[i] == letters[k] ? k + 1 : 0;
  }
  return n - fail[n];
}

PowerForm maximal_root(const Word& w) {
  if (w.empty()) throw EmptyWordError();
  const auto [conj, core] = cyclic_reduce(w);
  const std::size_t n = core.size();
  const std::size_t period = smallest_period(core.letters());
  if (n % period != 0) return {w, 1};
  const Word primitive(core.letters().subspan(0, period), w.rank());
  return {conj * primitive * conj.inverse(), static_cast<std::int64_t>(n / period)};
}

int nu_p(const Word& w, std::int64_t p) {
  if (w.empty()) throw EmptyWordError();
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  return p_adic_valuation(maximal_root(w).exponent, p);
}

std::int64_t exponent_sum(const Word& w, GeneratorId g) {
  if (g.index >= w.rank()) throw InputError("generator index out of range");
  std::int64_t sum = 0;
  for (Letter l : w)
    if (l.generator() == g.index) sum += l.sign();
  return sum;
}

bool are_conjugate(const Word& lhs, const Word& rhs) {
  if (lhs.rank() != rhs.rank()) throw InputError("rank mismatch in conjugacy test");
  const Word a = cyclic_reduce(lhs).core;
  const Word b = cyclic_reduce(rhs).core;
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  std::vector<Letter> doubled(a.begin(), a.end());
  doubled.insert(doubled.end(), a.begin(), a.end());
  const auto needle = b.letters();
  return std::search(doubled.begin(), doubled.end(), needle.begin(), needle.end()) !=
         doubled.end();
}

}  // namespace grpdef
