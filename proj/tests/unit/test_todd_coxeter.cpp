#include <doctest.h>

#include "generators.hpp"
#include "grpdef/errors.hpp"
#include "grpdef/todd_coxeter.hpp"

using namespace grpdef;

namespace {

Presentation pres(const char* text) { return parse_presentation(text); }

}  // namespace

TEST_CASE("enumerating small groups") {
  CHECK(todd_coxeter(pres("< a | a^3 >"), {}).count() == 3);
  CHECK(todd_coxeter(pres("< a, b | a^2, b^2, (a b)^3 >"), {}).count() == 6);
  CHECK(todd_coxeter(pres("< a, b | a^2, b^3, (a b)^5 >"), {}).count() == 60);
  CHECK(todd_coxeter(pres("< a, b | a^2, b^3, (a b)^4 >"), {}).count() == 24);
  CHECK(todd_coxeter(pres("< a, b | a^2, b^3, (a b)^3 >"), {}).count() == 12);
  const Presentation p = pres("< a, b | a^2, b^2, (a b)^3 >");
  CHECK(todd_coxeter(p, {Word::from_compact("a", 2)}).count() == 3);
}

TEST_CASE("trivial presentations give one coset") {
  CHECK(todd_coxeter(pres("< a | a >"), {}).count() == 1);
  CHECK(todd_coxeter(Presentation({}, {}), {}).count() == 1);
}

TEST_CASE("coset cap is reported as a budget failure") {
  CHECK_THROWS_AS(todd_coxeter(pres("< a, b | a^2, b^3, (a b)^7 >"), {}, 10000), BudgetExceeded);
  CHECK_THROWS_AS(todd_coxeter(pres("< a, b | >"), {}, 100), BudgetExceeded);
}

TEST_CASE("output is canonically numbered") {
  const CosetTable t = todd_coxeter(pres("< a, b | a^2, b^3, (a b)^5 >"), {});
  CHECK(canonical_renumbering(t) == t);
  CHECK(t.origin() == TableOrigin::todd_coxeter);
}

TEST_CASE("kernel enumeration agrees with image closure") {
  gen::Rng rng(61);
  for (int i = 0; i < 40; ++i) {
    const auto f = gen::no_collapse_fixture(rng, 24);
    const auto elements = image_closure(f.witness);
    const CosetTable regular = regular_coset_table(f.witness);
    std::vector<Word> kernel;
    const std::size_t n = f.presentation.rank();
    // The kernel is generated by the Schreier generators of the regular table.
    std::vector<Word> reps(regular.count(), Word(n));
    std::vector<bool> seen(regular.count(), false);
    seen[0] = true;
    std::vector<CosetTable::Coset> queue{0};
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (std::size_t g = 0; g < n; ++g) {
        const auto d = regular.act(queue[h], Letter(g, 1));
        if (!seen[d]) {
          seen[d] = true;
          reps[d] = reps[queue[h]] * Word::generator(g, n);
          queue.push_back(d);
        }
      }
    for (std::size_t c = 0; c < regular.count(); ++c)
      for (std::size_t g = 0; g < n; ++g) {
        const auto d = regular.act(static_cast<CosetTable::Coset>(c), Letter(g, 1));
        const Word s = reps[c] * Word::generator(g, n) * reps[d].inverse();
        if (!s.empty()) kernel.push_back(s);
      }
    const Presentation free(f.presentation.generator_names(), {});
    CHECK(todd_coxeter(free, kernel).count() == elements.size());
  }
}
