#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "grpdef/analysis.hpp"
#include "grpdef/presentations.hpp"
#include "grpdef/quotients.hpp"
#include "grpdef/rewriting.hpp"

namespace grpdef {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kCertificateFormat = 1;

using nlohmann::json;

/// {"num": n, "den": d} in lowest terms, d > 0. Values outside the 64-bit
/// range are written as decimal strings.
json rational_json(const Rational& r);
Rational rational_from_json(const json& j);

json presentation_json(const Presentation& p);
Presentation presentation_from_json(const json& j);

json abelian_json(const AbelianInvariants& a);

/// {"degree": d, "images": {"<generator>": [...]}}.
json witness_json(const QuotientWitness& w, const std::vector<std::string>& names);
QuotientWitness witness_from_json(const json& j, const std::vector<std::string>& names);

/// {"count": n, "action": {"<g>": [...], "<g>^-1": [...]}}.
json coset_table_json(const CosetTable& t, const std::vector<std::string>& names);

json subgroup_json(const SubgroupPresentation& q);

json certificate_json(const LargenessCertificate& c);

struct CertificateCheck {
  bool ok = false;
  std::vector<std::string> mismatches;
  LargenessCertificate recomputed;
};

/// Rebuilds the certificate from its presentation and witness and compares
/// every recorded field, including the subgroup digest.
CertificateCheck verify_certificate(const json& j, const CertifyOptions& options = {});

const char* verdict_name(Verdict v);

}  // namespace grpdef
