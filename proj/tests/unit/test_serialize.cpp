#include <doctest.h>

#include "generators.hpp"
#include "grpdef/errors.hpp"
#include "grpdef/serialize.hpp"

using namespace grpdef;

TEST_CASE("rationals are written in lowest terms") {
  const json j = rational_json(make_rational(6, -4));
  CHECK(j == json{{"num", -3}, {"den", 2}});
  CHECK(rational_from_json(j) == make_rational(-3, 2));
  const Rational huge(BigInt(1) << 80, BigInt(3));
  CHECK(rational_json(huge)["num"].is_string());
  CHECK(rational_from_json(rational_json(huge)) == huge);
  CHECK_THROWS_AS(rational_from_json(json{{"num", 1}, {"den", 0}}), InputError);
}

TEST_CASE("presentation JSON round trip") {
  const Presentation p = parse_presentation("< a, b | a^2, b^3, (a b)^7, [a, b] >");
  const json j = presentation_json(p);
  CHECK(j["generators"] == json{"a", "b"});
  CHECK(j["relators"][2] == json{{"root", "a b"}, {"exponent", 7}});
  CHECK(presentation_from_json(j) == p);
  CHECK_THROWS_AS(presentation_from_json(json{{"generators", {"a"}}}), InputError);
}

TEST_CASE("witness JSON") {
  const QuotientWitness w(3, {Permutation({1, 0, 2}), Permutation({1, 2, 0})});
  const json j = witness_json(w, {"a", "b"});
  CHECK(j == json::parse(R"({"degree": 3, "images": {"a": [1, 0, 2], "b": [1, 2, 0]}})"));
  CHECK(witness_from_json(j, {"a", "b"}) == w);
  CHECK_THROWS_AS(witness_from_json(j, {"a"}), InputError);
  CHECK_THROWS_AS(witness_from_json(j, {"a", "b", "c"}), InputError);
  CHECK_THROWS_AS(witness_from_json(json::parse(R"({"degree": 2, "images": {"a": [0, 0]}})"), {"a"}), InputError);
  CHECK_THROWS_AS(witness_from_json(json::parse(R"({"degree": 3, "images": {"a": [0, 1]}})"), {"a"}), InputError);
}

TEST_CASE("coset table JSON") {
  const CosetTable t = regular_coset_table(QuotientWitness(3, {Permutation({1, 2, 0})}));
  const json j = coset_table_json(t, {"a"});
  CHECK(j["count"] == 3);
  CHECK(j["action"]["a"] == json{1, 2, 0});
  CHECK(j["action"]["a^-1"] == json{2, 0, 1});
}

TEST_CASE("subgroup JSON uses coset-generator labels") {
  const Presentation p = parse_presentation("< a | a^2 >");
  const auto q = reidemeister_schreier_power_aware(p, regular_coset_table(QuotientWitness(2, {Permutation({1, 0})})));
  const json j = subgroup_json(q);
  CHECK(j["generators"] == json{"(1,a)"});
  CHECK(j["relators"] == json{"(1,a)"});
  CHECK(j["provenance"]["mode"] == "power-aware");
  CHECK(j["provenance"]["index"] == 2);
  CHECK(j["provenance"]["cycle_lengths"] == json{2});
}

TEST_CASE("certificates verify and detect tampering") {
  const Presentation p = parse_presentation("< a, b | a^2, b^3, (a b)^7 >");
  SearchRequest req;
  req.family = SymmetricDegrees{2, 8};
  const auto cert = *certify_large(p, req).certificate;
  json j = certificate_json(cert);
  CHECK(j["rdef_lower"] == json{{"num", 43}, {"den", 42}});
  CHECK(j["predicted"] == json{{"num", 5}, {"den", 1}});
  CHECK(j["achieved"] == 5);
  CHECK(j["verdict"] == "certified-large");
  CHECK(j["index"] == 168);
  CHECK(j.contains("versions"));

  const json reparsed = json::parse(j.dump());
  CHECK(verify_certificate(reparsed).ok);

  json bad = reparsed;
  bad["subgroup_presentation_digest"] = std::string(64, '0');
  const auto check = verify_certificate(bad);
  CHECK_FALSE(check.ok);
  CHECK(check.mismatches.size() == 1);

  bad = reparsed;
  bad["achieved"] = 6;
  CHECK_FALSE(verify_certificate(bad).ok);

  bad = reparsed;
  bad["witness"]["images"]["a"] = json{0, 1, 2, 3, 4, 5, 6};
  CHECK_THROWS_AS(verify_certificate(bad), NotAHomomorphism);
}
