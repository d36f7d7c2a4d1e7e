#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "grpdef/numeric.hpp"
#include "grpdef/presentations.hpp"
#include "grpdef/quotients.hpp"
#include "grpdef/rewriting.hpp"

namespace grpdef {

/// n - sum 1/k_i for the root orders k_i realized in a finite quotient.
struct RdefBound {
  Rational value;
  std::vector<std::int64_t> realized_orders;
  bool exact = false;  // witness is no-collapse
};

RdefBound rdef_lower_bound(const Presentation& p, const QuotientWitness& w);

/// 1 + |image| (rdef_lower - 1).
Rational deficiency_bound(const Presentation& p, const QuotientWitness& w,
                          std::size_t image_cap = kDefaultImageCap);

enum class Verdict { certified_large, inconclusive };

struct LargenessCertificate {
  Presentation presentation;
  QuotientWitness witness;
  std::size_t index = 0;
  std::vector<std::int64_t> orders;
  Rational rdef_lower;
  Rational predicted_deficiency;
  SubgroupPresentation subgroup;
  std::int64_t achieved_deficiency = 0;
  Verdict verdict = Verdict::inconclusive;
  /// SHA-256 of the canonical subgroup presentation rendering.
  std::string subgroup_digest;
  /// Notes about input normalization (power-quotient certificates).
  std::vector<std::string> notes;
};

struct CertifyOptions {
  std::size_t image_cap = kDefaultImageCap;
};

/// Runs the kernel-table, power-aware rewriting and counting pipeline.
LargenessCertificate certify_large(const Presentation& p, const QuotientWitness& w,
                                   const CertifyOptions& options = {});

enum class CertifyStatus { certificate, not_found, budget_hit };

struct AutoCertifyResult {
  CertifyStatus status = CertifyStatus::not_found;
  std::optional<LargenessCertificate> certificate;
  std::uint64_t search_nodes = 0;
};

/// Searches a no-collapse witness first, then certifies.
AutoCertifyResult certify_large(const Presentation& p, const SearchRequest& search,
                                const CertifyOptions& options = {});

/// Hex SHA-256 of the subgroup presentation's canonical text.
std::string subgroup_digest(const SubgroupPresentation& q);
std::string canonical_text(const SubgroupPresentation& q);

// ---------------------------------------------------------------------------
// Family formulas

/// Parameter value meaning "infinity" (Coxeter) or "no power" (e_i = 0).
inline constexpr std::int64_t kInfinity = 0;

struct Triangle {
  std::int64_t l, m, n;
};
struct OneRelatorQuotient {
  std::vector<std::int64_t> orders;  // m_1..m_n
  std::int64_t s;
};
struct Coxeter {
  std::vector<std::vector<std::int64_t>> matrix;  // symmetric; off-diagonal >= 2 or kInfinity
};
struct Tetrahedral {
  std::int64_t e1, e2, e3, m, p, q;
};
struct Chain {
  std::vector<std::int64_t> e;  // e_i = 0 or >= 2
  std::vector<std::int64_t> m;  // m_i >= 3, same length as e
};
struct Star {
  std::vector<std::int64_t> e;  // n >= 3 entries
  std::vector<std::int64_t> m;  // 2n - 3 entries, each >= 3
};
using Family = std::variant<Triangle, OneRelatorQuotient, Coxeter, Tetrahedral, Chain, Star>;

struct FamilyValue {
  Rational rdef;
  bool greater_than_one = false;
};

FamilyValue family_rdef(const Family& family);

// ---------------------------------------------------------------------------

enum class ThomasVerdict { infinite, unknown };

ThomasVerdict thomas_infiniteness(const Presentation& p, const QuotientWitness& w);

struct RelSizeEntry {
  Word element;
  Word root;                   // maximal root u
  std::int64_t exponent = 1;   // element = u^exponent
  bool in_kernel = false;
  std::int64_t attaining_divisor = 1;  // minimal root is u^d
  std::int64_t nu = 1;
};

struct RelSizeReport {
  std::vector<RelSizeEntry> entries;
  Rational total;
};

/// Relative size in the free group of rank w.rank() with respect to the
/// kernel of `w`.
RelSizeReport relative_size(const std::vector<Word>& elements, const QuotientWitness& w);

/// nu(g; H, K cap H) where H = kernel of `subgroup` and K = kernel of
/// `normal`, both inside the free group. `g` must lie in H.
std::int64_t relative_nu_in_kernel(const Word& g, const QuotientWitness& subgroup,
                                   const QuotientWitness& normal);

struct SupermultiplicativityReport {
  std::size_t index = 0;
  Rational rdef_lower;
  std::int64_t subgroup_deficiency = 0;
  bool deficiency_inequality = false;   // def(Q_H) - 1 >= index (rdef - 1)
  bool deficiency_equality = false;
  std::size_t sampled = 0;
  std::size_t root_bound_holds = 0;     // samples with nu(g; H, K∩H) * l >= nu(g; G, K)
  Rational relsize_conjugates;          // over the conjugate-expanded relators
  Rational relsize_bound;               // index * relsize of the relators
  bool relsize_inequality = false;
};

struct SupermultiplicativityOptions {
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::size_t max_word_length = 6;
  std::size_t image_cap = kDefaultImageCap;
};

SupermultiplicativityReport check_supermultiplicativity(const Presentation& p,
                                                        const QuotientWitness& w,
                                                        const QuotientWitness& normal,
                                                        const SupermultiplicativityOptions& options = {});

struct PowerQuotientRequest {
  std::size_t rank = 2;
  std::vector<Word> elements;
  std::int64_t q = 2;
  SearchRequest search;
  CertifyOptions certify;
};

struct PowerQuotientResult {
  Presentation presentation;
  Rational threshold;            // m / (d - 1)
  Rational rdef_if_no_collapse;  // d - sum 1/q_i
  AutoCertifyResult result;
  std::vector<std::string> notes;
};

/// Certificate attempt for < x_1..x_d | g_1^q, ..., g_m^q >.
PowerQuotientResult power_quotient_certificate(const PowerQuotientRequest& request);

/// Generator names used for rank-d free groups: a, b, c, ...
std::vector<std::string> default_generator_names(std::size_t rank);

struct ClosedFormInvariants {
  enum class Kind { free, surface } kind = Kind::free;
  std::int64_t parameter = 2;  // rank m or genus g
  Rational deficiency;
  Rational rank;
  Rational deficiency_gradient;
  Rational rank_gradient;
  Rational euler_characteristic;
  Rational l2_betti;
};

ClosedFormInvariants closed_form_free(std::int64_t m);
ClosedFormInvariants closed_form_surface(std::int64_t g);

struct FreeGroup {
  std::int64_t rank;
};
struct SurfaceGroup {
  std::int64_t genus;
};
using ClosedFormFamily = std::variant<FreeGroup, SurfaceGroup>;

ClosedFormInvariants closed_form_invariants(const ClosedFormFamily& family);

}  // namespace grpdef
