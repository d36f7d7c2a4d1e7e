#include <doctest.h>

#include "generators.hpp"
#include "grpdef/errors.hpp"
#include "grpdef/words.hpp"
#include "oracles.hpp"

using namespace grpdef;

namespace {

Word w2(const char* s) { return Word::from_compact(s, 2); }

}  // namespace

TEST_CASE("free reduction") {
  const std::vector<Letter> cancel{Letter(0, 1), Letter(0, -1)};
  CHECK(free_reduce(cancel, 2).empty());
  const std::vector<Letter> single{Letter(0, 1), Letter(1, 1), Letter(1, -1), Letter(0, 1)};
  CHECK(free_reduce(single, 2) == w2("aa"));
  const std::vector<Letter> reduced{Letter(0, 1), Letter(1, 1), Letter(0, -1)};
  CHECK(free_reduce(reduced, 2).to_compact() == "abA");
  CHECK_THROWS_AS(free_reduce(std::vector<Letter>{Letter(2, 1)}, 2), InputError);
}

TEST_CASE("free reduction is idempotent and never lengthens") {
  gen::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    std::vector<Letter> letters;
    const std::size_t len = gen::uniform(rng, 0, 20);
    for (std::size_t j = 0; j < len; ++j) letters.emplace_back(gen::uniform(rng, 0, 1), gen::uniform(rng, 0, 1) ? 1 : -1);
    const Word w = free_reduce(letters, 2);
    CHECK(w.size() <= letters.size());
    CHECK(free_reduce(w.letters(), 2) == w);
    for (std::size_t j = 1; j < w.size(); ++j) CHECK(w[j] != w[j - 1].inverse());
  }
}

TEST_CASE("cyclic reduction") {
  auto d = cyclic_reduce(w2("abA"));
  CHECK(d.conjugator == w2("a"));
  CHECK(d.core == w2("b"));
  d = cyclic_reduce(w2("ab"));
  CHECK(d.conjugator.empty());
  CHECK(d.core == w2("ab"));
  d = cyclic_reduce(Word(2));
  CHECK(d.conjugator.empty());
  CHECK(d.core.empty());

  gen::Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const Word w = gen::word(rng, 3, 14);
    const auto c = cyclic_reduce(w);
    CHECK(c.conjugator * c.core * c.conjugator.inverse() == w);
    if (c.core.size() >= 2) CHECK(c.core[0] != c.core[c.core.size() - 1].inverse());
  }
}

TEST_CASE("maximal roots") {
  auto r = maximal_root(w2("abab"));
  CHECK(r.root == w2("ab"));
  CHECK(r.exponent == 2);
  r = maximal_root(w2("abA"));
  CHECK(r.root == w2("abA"));
  CHECK(r.exponent == 1);
  r = maximal_root(w2("baaaB"));
  CHECK(r.root == w2("baB"));
  CHECK(r.exponent == 3);
  CHECK(oracle::max_exponent(w2("baaaB")) == 3);
  CHECK_THROWS_AS(maximal_root(Word(2)), EmptyWordError);
}

TEST_CASE("maximal roots agree with brute-force root enumeration") {
  gen::Rng rng(2024);
  for (int i = 0; i < 1500; ++i) {
    const std::size_t rank = gen::uniform(rng, 1, 3);
    const Word w = gen::power_biased_word(rng, rank, 12);
    const PowerForm pf = maximal_root(w);
    CHECK(oracle::naive_power(pf.root, pf.exponent) == w);
    CHECK(pf.exponent == oracle::max_exponent(w));
    CHECK(maximal_root(pf.root).exponent == 1);
  }
}

TEST_CASE("p-adic power valuation") {
  const Word comm = w2("abAB");
  CHECK(nu_p(comm.pow(4), 2) == 2);
  CHECK(oracle::nu_p(comm.pow(4), 2) == 2);
  CHECK(nu_p(w2("abab"), 3) == 0);
  CHECK(nu_p(Word::from_compact("aaaaaaaaa", 1), 3) == 2);
  CHECK_THROWS_AS(nu_p(Word(2), 2), EmptyWordError);
  CHECK_THROWS_AS(nu_p(w2("ab"), 4), InputError);

  gen::Rng rng(99);
  for (int i = 0; i < 500; ++i) {
    const Word w = gen::power_biased_word(rng, 2, 12);
    for (std::int64_t p : {2, 3, 5}) CHECK(nu_p(w, p) == oracle::nu_p(w, p));
  }
}

TEST_CASE("exponent sums") {
  CHECK(exponent_sum(w2("abA"), GeneratorId{0}) == 0);
  CHECK(exponent_sum(w2("abA"), GeneratorId{1}) == 1);
  CHECK(exponent_sum(w2("aaBBB"), GeneratorId{1}) == -3);

  gen::Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    const Word x = gen::word(rng, 2, 10), y = gen::word(rng, 2, 10);
    for (std::size_t g = 0; g < 2; ++g)
      CHECK(exponent_sum(x * y, GeneratorId{g}) == exponent_sum(x, GeneratorId{g}) + exponent_sum(y, GeneratorId{g}));
  }
}

TEST_CASE("conjugacy by rotation") {
  CHECK(are_conjugate(w2("ab"), w2("ba")));
  CHECK_FALSE(are_conjugate(w2("ab"), w2("Ab")));
  CHECK(are_conjugate(Word(2), Word(2)));

  gen::Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    const Word x = gen::word(rng, 2, 8);
    const Word c = gen::word(rng, 2, 5);
    const Word y = c * x * c.inverse();
    CHECK(are_conjugate(x, x));
    CHECK(are_conjugate(x, y));
    CHECK(are_conjugate(y, x));
    const Word d = gen::word(rng, 2, 5);
    CHECK(are_conjugate(y, d * y * d.inverse()));
  }
}

TEST_CASE("compact notation round trip and powers") {
  CHECK(w2("aB").to_compact() == "aB");
  CHECK(w2("ab").pow(-2) == w2("BABA"));
  CHECK(w2("ab").pow(0).empty());
  CHECK(smallest_period(w2("abab").letters()) == 2);
  CHECK(smallest_period(w2("aba").letters()) == 2);
}
