#include "grpdef/serialize.hpp"

#include "grpdef/errors.hpp"

namespace grpdef {

namespace {

json bigint_json(const BigInt& v) {
  if (v >= INT64_MIN && v <= INT64_MAX) return static_cast<std::int64_t>(v);
  return v.str();
}

BigInt bigint_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw InputError("expected an integer");
}

}  // namespace

json rational_json(const Rational& r) {
  return {{"num", bigint_json(numerator_of(r))}, {"den", bigint_json(denominator_of(r))}};
}

Rational rational_from_json(const json& j) {
  const BigInt den = bigint_from_json(j.at("den"));
  if (den == 0) throw InputError("zero denominator");
  return make_rational(bigint_from_json(j.at("num")), den);
}

json presentation_json(const Presentation& p) {
  json relators = json::array();
  for (const auto& r : p.relators())
    relators.push_back({{"root", render_word(r.root(), p.generator_names())}, {"exponent", r.exponent()}});
  return {{"generators", p.generator_names()}, {"relators", relators}};
}

Presentation presentation_from_json(const json& j) {
  try {
    auto names = j.at("generators").get<std::vector<std::string>>();
    std::vector<PowerRelator> relators;
    for (const auto& r : j.at("relators")) {
      const Word root = parse_word(r.at("root").get<std::string>(), names);
      if (root.empty()) throw InputError("relator root is trivial");
      relators.emplace_back(root, r.at("exponent").get<std::int64_t>());
    }
    return Presentation(std::move(names), std::move(relators));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed presentation JSON: ") + e.what());
  }
}

json abelian_json(const AbelianInvariants& a) {
  json torsion = json::array();
  for (const auto& d : a.torsion) torsion.push_back(bigint_json(d));
  return {{"betti", a.betti}, {"torsion", torsion}};
}

json witness_json(const QuotientWitness& w, const std::vector<std::string>& names) {
  if (names.size() != w.rank()) throw InputError("witness rank does not match generator names");
  json images = json::object();
  for (std::size_t g = 0; g < w.rank(); ++g) images[names[g]] = w.generator_images()[g].images();
  return {{"degree", w.degree()}, {"images", images}};
}

QuotientWitness witness_from_json(const json& j, const std::vector<std::string>& names) {
  try {
    const auto degree = j.at("degree").get<std::size_t>();
    const auto& images = j.at("images");
    if (!images.is_object()) throw InputError("witness images must be an object");
    for (const auto& [key, _] : images.items())
      if (std::find(names.begin(), names.end(), key) == names.end())
        throw InputError("witness names unknown generator '" + key + "'");
    std::vector<Permutation> perms;
    for (const auto& name : names) {
      if (!images.contains(name)) throw InputError("witness has no image for generator '" + name + "'");
      auto arr = images.at(name).get<std::vector<Permutation::Point>>();
      if (arr.size() != degree) throw InputError("image of '" + name + "' has the wrong length");
      perms.emplace_back(std::move(arr));
    }
    return QuotientWitness(degree, std::move(perms));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed witness JSON: ") + e.what());
  }
}

json coset_table_json(const CosetTable& t, const std::vector<std::string>& names) {
  if (names.size() != t.rank()) throw InputError("table rank does not match generator names");
  json action = json::object();
  for (std::size_t g = 0; g < t.rank(); ++g) {
    action[names[g]] = t.column(g);
    action[names[g] + "^-1"] = t.inverse_column(g);
  }
  return {{"count", t.count()}, {"action", action}};
}

json subgroup_json(const SubgroupPresentation& q) {
  const auto labels = q.generator_labels();
  json relators = json::array();
  for (const auto& r : q.relators) relators.push_back(render_word(r, labels));
  json origins = json::array();
  for (const auto& o : q.origins) origins.push_back({{"relator", o.source_relator}, {"coset", o.coset}});
  return {
      {"generators", labels},
      {"relators", relators},
      {"deficiency", q.deficiency()},
      {"provenance",
       {{"mode", q.mode == RewriteMode::full ? "full" : "power-aware"},
        {"index", q.index},
        {"source", presentation_json(q.source)},
        {"cycle_lengths", q.cycle_lengths},
        {"simplified", q.simplified},
        {"origins", origins}}},
  };
}

const char* verdict_name(Verdict v) {
  return v == Verdict::certified_large ? "certified-large" : "inconclusive";
}

json certificate_json(const LargenessCertificate& c) {
  json j = {
      {"presentation", presentation_json(c.presentation)},
      {"presentation_text", render_presentation(c.presentation)},
      {"witness", witness_json(c.witness, c.presentation.generator_names())},
      {"index", c.index},
      {"orders", c.orders},
      {"rdef_lower", rational_json(c.rdef_lower)},
      {"predicted", rational_json(c.predicted_deficiency)},
      {"achieved", c.achieved_deficiency},
      {"verdict", verdict_name(c.verdict)},
      {"subgroup_generators", c.subgroup.generator_count()},
      {"subgroup_relators", c.subgroup.relators.size()},
      {"subgroup_presentation_digest", c.subgroup_digest},
      {"versions", {{"grpdef", kVersion}, {"certificate_format", kCertificateFormat}}},
  };
  if (!c.notes.empty()) j["notes"] = c.notes;
  return j;
}

CertificateCheck verify_certificate(const json& j, const CertifyOptions& options) {
  CertificateCheck check;
  Presentation p;
  QuotientWitness w;
  try {
    p = presentation_from_json(j.at("presentation"));
    w = witness_from_json(j.at("witness"), p.generator_names());
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed certificate JSON: ") + e.what());
  }
  check.recomputed = certify_large(p, w, options);
  const json fresh = certificate_json(check.recomputed);
  for (const char* key : {"index", "orders", "rdef_lower", "predicted", "achieved", "verdict",
                          "subgroup_presentation_digest"}) {
    if (!j.contains(key))
      check.mismatches.push_back(std::string(key) + " missing");
    else if (j.at(key) != fresh.at(key))
      check.mismatches.push_back(std::string(key) + ": recorded " + j.at(key).dump() + ", recomputed " +
                                 fresh.at(key).dump());
  }
  check.ok = check.mismatches.empty();
  return check;
}

}  // namespace grpdef
