#include <doctest.h>

#include "generators.hpp"
#include "grpdef/analysis.hpp"
#include "grpdef/errors.hpp"
#include "oracles.hpp"

using namespace grpdef;

namespace {

Presentation pres(const char* text) { return parse_presentation(text); }

QuotientWitness find(const Presentation& p, std::size_t lo, std::size_t hi) {
  SearchRequest req;
  req.family = SymmetricDegrees{lo, hi};
  const auto out = search_witness(p, req);
  REQUIRE(out.witness);
  return *out.witness;
}

QuotientWitness trivial(std::size_t rank) {
  return QuotientWitness(1, std::vector<Permutation>(rank, Permutation::identity(1)));
}

}  // namespace

TEST_CASE("residual deficiency lower bounds") {
  const Presentation p = pres("< a, b | a^2, b^3, (a b)^7 >");
  const auto w = find(p, 2, 8);
  const RdefBound b = rdef_lower_bound(p, w);
  CHECK(b.value == make_rational(43, 42));
  CHECK(b.exact);
  CHECK(b.realized_orders == std::vector<std::int64_t>{2, 3, 7});

  const RdefBound t = rdef_lower_bound(p, trivial(2));
  CHECK(t.value == -1);
  CHECK_FALSE(t.exact);

  const Presentation c = pres("< a, b | [a, b]^5 >");
  const RdefBound cb = rdef_lower_bound(c, find(c, 2, 6));
  CHECK(cb.value == make_rational(9, 5));
  CHECK(cb.exact);
}

TEST_CASE("bound never exceeds the rank and dominates the deficiency") {
  gen::Rng rng(101);
  for (int i = 0; i < 100; ++i) {
    const auto f = gen::no_collapse_fixture(rng);
    const RdefBound b = rdef_lower_bound(f.presentation, f.witness);
    CHECK(b.value <= make_rational(static_cast<std::int64_t>(f.presentation.rank())));
    CHECK(b.value >= make_rational(deficiency(f.presentation)));
  }
}

TEST_CASE("deficiency bound") {
  const Presentation p = pres("< a, b | a^2, b^3, (a b)^7 >");
  CHECK(deficiency_bound(p, find(p, 2, 8)) == 5);
  const QuotientWitness w(2, {Permutation({1, 0}), Permutation({0, 1})});
  CHECK(deficiency_bound(pres("< a, b | >"), w) == 3);
  CHECK(deficiency_bound(p, trivial(2)) == rdef_lower_bound(p, trivial(2)).value);
}

TEST_CASE("certificates") {
  const Presentation p = pres("< a, b | a^2, b^3, (a b)^7 >");
  SearchRequest req;
  req.family = SymmetricDegrees{2, 8};
  const AutoCertifyResult r = certify_large(p, req);
  REQUIRE(r.certificate);
  const auto& c = *r.certificate;
  CHECK(c.index == 168);
  CHECK(c.achieved_deficiency == 5);
  CHECK(c.predicted_deficiency == 5);
  CHECK(c.verdict == Verdict::certified_large);
  CHECK(c.subgroup_digest.size() == 64);
  CHECK(abelian_invariants(c.subgroup).betti == 6);
  CHECK(abelian_invariants(c.subgroup).torsion.empty());
  CHECK(certify_large(p, c.witness).subgroup_digest == c.subgroup_digest);

  const Presentation finite = pres("< a, b | a^2, b^3, (a b)^3 >");
  const auto fc = certify_large(finite, req);
  REQUIRE(fc.certificate);
  CHECK(fc.certificate->rdef_lower == make_rational(5, 6));
  CHECK(fc.certificate->predicted_deficiency <= 1);
  CHECK(fc.certificate->verdict == Verdict::inconclusive);

  const Presentation cox = pres("< a, b, c | a^7, b^7, c^7, (a b)^7, (b c)^7 >");
  req.family = SymmetricDegrees{7, 7};
  const auto cc = certify_large(cox, req);
  REQUIRE(cc.certificate);
  CHECK(cc.certificate->verdict == Verdict::certified_large);

  req.family = SymmetricDegrees{2, 4};
  CHECK(certify_large(p, req).status == CertifyStatus::not_found);
}

TEST_CASE("family formulas") {
  auto v = family_rdef(Triangle{3, 3, 4});
  CHECK(v.rdef == make_rational(13, 12));
  CHECK(v.greater_than_one);
  CHECK_THROWS_AS(family_rdef(Coxeter{std::vector<std::vector<std::int64_t>>(4, std::vector<std::int64_t>(4, 7))}),
                  InputError);
  std::vector<std::vector<std::int64_t>> m(4, std::vector<std::int64_t>(4, 7));
  for (int i = 0; i < 4; ++i) m[i][i] = 1;
  v = family_rdef(Coxeter{m});
  CHECK(v.rdef == make_rational(8, 7));
  CHECK(v.greater_than_one);
  v = family_rdef(Tetrahedral{0, 0, 0, 3, 3, 3});
  CHECK(v.rdef == 2);
  CHECK(v.rdef >= make_rational(3, 2));
  v = family_rdef(OneRelatorQuotient{{2, 3}, 7});
  CHECK(v.rdef == 2 - make_rational(1, 2) - make_rational(1, 3) - make_rational(1, 7));
  v = family_rdef(Chain{{0, 2}, {3, 3}});
  CHECK(v.rdef == 2 - make_rational(1, 2) - make_rational(2, 3));
  v = family_rdef(Star{{0, 0, 0}, {3, 3, 3}});
  CHECK(v.rdef == 2);

  CHECK_THROWS_AS(family_rdef(Triangle{1, 3, 4}), InputError);
  CHECK_THROWS_AS(family_rdef(Star{{0, 0, 0}, {3, 3}}), InputError);
  CHECK_THROWS_AS(family_rdef(Tetrahedral{1, 0, 0, 3, 3, 3}), InputError);
  m[0][1] = 5;
  CHECK_THROWS_AS(family_rdef(Coxeter{m}), InputError);
  m[0][1] = m[1][0] = kInfinity;
  CHECK(family_rdef(Coxeter{m}).rdef == 2 - make_rational(5, 7));
}

TEST_CASE("triangle classification") {
  for (std::int64_t l = 2; l <= 12; ++l)
    for (std::int64_t m = 2; m <= 12; ++m)
      for (std::int64_t n = 2; n <= 12; ++n) {
        const bool hyperbolic = make_rational(1, l) + make_rational(1, m) + make_rational(1, n) < 1;
        CHECK(family_rdef(Triangle{l, m, n}).greater_than_one == hyperbolic);
      }
}

TEST_CASE("Thomas test") {
  const Presentation p = pres("< a, b | a^2, b^3, (a b)^7 >");
  CHECK(thomas_infiniteness(p, find(p, 2, 8)) == ThomasVerdict::infinite);
  const Presentation q = pres("< a, b | a^2, b^3, (a b)^3 >");
  CHECK(thomas_infiniteness(q, find(q, 2, 6)) == ThomasVerdict::unknown);
  CHECK(thomas_infiniteness(p, trivial(2)) == ThomasVerdict::unknown);
  CHECK_THROWS_AS(thomas_infiniteness(p, QuotientWitness(3, {Permutation({1, 2, 0}), Permutation({0, 1, 2})})),
                  NotAHomomorphism);
}

TEST_CASE("relative size") {
  const QuotientWitness w(2, {Permutation({1, 0})});
  auto r = relative_size({Word::from_compact("aaaa", 1)}, w);
  CHECK(r.entries[0].nu == 2);
  CHECK(r.entries[0].in_kernel);
  CHECK(r.entries[0].attaining_divisor == 1);
  r = relative_size({Word::from_compact("aaa", 1)}, w);
  CHECK(r.entries[0].nu == 3);
  CHECK_FALSE(r.entries[0].in_kernel);
  const QuotientWitness w2(2, {Permutation({1, 0}), Permutation({1, 0})});
  r = relative_size({Word::from_compact("aa", 2), Word::from_compact("bb", 2)}, w2);
  CHECK(r.total == 1);
  CHECK_THROWS_AS(relative_size({Word(2)}, w2), EmptyWordError);
}

TEST_CASE("relative size agrees with root enumeration") {
  gen::Rng rng(103);
  for (int i = 0; i < 400; ++i) {
    const QuotientWitness w = gen::witness(rng, 2, gen::uniform(rng, 1, 4));
    const Word g = gen::power_biased_word(rng, 2, 12);
    std::vector<oracle::Perm> images;
    for (const auto& p : w.generator_images()) images.push_back(p.images());
    CHECK(relative_size({g}, w).entries[0].nu == oracle::relative_nu(g, images, w.degree()));
  }
}

TEST_CASE("supermultiplicativity checks") {
  const Presentation p = pres("< a, b | a^2, b^3, (a b)^7 >");
  const auto w = find(p, 2, 8);
  const auto report = check_supermultiplicativity(p, w, w);
  CHECK(report.subgroup_deficiency - 1 == 4);
  CHECK(report.deficiency_equality);
  CHECK(report.sampled >= 100);
  CHECK(report.root_bound_holds == report.sampled);
  CHECK(report.relsize_inequality);

  const QuotientWitness w2(2, {Permutation({1, 0}), Permutation({0, 1})});
  const auto free = check_supermultiplicativity(pres("< a, b | >"), w2, w2);
  CHECK(free.subgroup_deficiency - 1 == 2);
  CHECK(free.deficiency_equality);

  const QuotientWitness c2(2, {Permutation({1, 0})});
  const auto cyc = check_supermultiplicativity(pres("< a | a^2 >"), c2, c2);
  CHECK(cyc.subgroup_deficiency - 1 == -1);
  CHECK(cyc.deficiency_equality);
}

TEST_CASE("power-quotient certificates") {
  PowerQuotientRequest req;
  req.rank = 2;
  req.elements = {Word::from_compact("abAB", 2)};
  req.q = 5;
  const auto r = power_quotient_certificate(req);
  CHECK(r.rdef_if_no_collapse == make_rational(9, 5));
  REQUIRE(r.result.certificate);
  CHECK(r.result.certificate->rdef_lower == make_rational(9, 5));
  CHECK(r.result.certificate->verdict == Verdict::certified_large);

  req.elements = {Word::from_compact("a", 2), Word::from_compact("b", 2), Word::from_compact("ab", 2)};
  req.q = 2;
  const auto low = power_quotient_certificate(req);
  CHECK(low.threshold == 3);
  CHECK(low.rdef_if_no_collapse == make_rational(1, 2));
  CHECK((!low.result.certificate || low.result.certificate->verdict == Verdict::inconclusive));

  req.rank = 3;
  req.elements = {Word::from_compact("a", 3)};
  req.q = 4;
  req.search.family = CyclicModuli{2, 4};
  const auto cyc = power_quotient_certificate(req);
  REQUIRE(cyc.result.certificate);
  CHECK(cyc.rdef_if_no_collapse == make_rational(11, 4));
  CHECK(cyc.result.certificate->verdict == Verdict::certified_large);

  req.rank = 2;
  req.elements = {Word::from_compact("abab", 2)};
  req.q = 3;
  req.search.family = SymmetricDegrees{2, 7};
  const auto proper = power_quotient_certificate(req);
  CHECK(proper.notes.size() == 1);
  CHECK(proper.presentation.relators()[0].exponent() == 6);
}

TEST_CASE("closed forms") {
  const auto f = closed_form_free(2);
  CHECK(f.deficiency_gradient == 1);
  CHECK(f.euler_characteristic == -1);
  const auto s3 = closed_form_surface(3);
  CHECK(s3.deficiency == 5);
  CHECK(s3.euler_characteristic == -4);
  CHECK(closed_form_surface(2).deficiency_gradient == 2);
  CHECK(closed_form_invariants(SurfaceGroup{4}).l2_betti == 6);
  CHECK(closed_form_invariants(FreeGroup{5}).deficiency == 5);
  CHECK_THROWS_AS(closed_form_free(1), InputError);
  CHECK_THROWS_AS(closed_form_surface(1), InputError);
}
