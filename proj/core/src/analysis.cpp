#include "grpdef/analysis.hpp"

#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include "grpdef/errors.hpp"

namespace grpdef {

namespace {

Rational inverse_sum(const std::vector<std::int64_t>& values) {
  Rational total = 0;
  for (std::int64_t v : values)
    if (v != 0) total += Rational(BigInt(1), BigInt(v));
  return total;
}

Rational as_rational(std::int64_t v) { return Rational(BigInt(v)); }

}  // namespace

RdefBound rdef_lower_bound(const Presentation& p, const QuotientWitness& w) {
  RdefBound out;
  out.realized_orders = relator_root_orders(p, w);
  out.value = as_rational(static_cast<std::int64_t>(p.rank())) - inverse_sum(out.realized_orders);
  out.exact = true;
  for (std::size_t i = 0; i < out.realized_orders.size(); ++i)
    if (out.realized_orders[i] != p.relators()[i].exponent()) out.exact = false;
  return out;
}

Rational deficiency_bound(const Presentation& p, const QuotientWitness& w, std::size_t image_cap) {
  const RdefBound bound = rdef_lower_bound(p, w);
  const auto index = static_cast<std::int64_t>(image_closure(w, image_cap).size());
  return 1 + as_rational(index) * (bound.value - 1);
}

// ---------------------------------------------------------------------------
// Certificates

std::string canonical_text(const SubgroupPresentation& q) {
  std::ostringstream out;
  out << "mode " << (q.mode == RewriteMode::full ? "full" : "power-aware") << "\n";
  out << "index " << q.index << "\n";
  const auto labels = q.generator_labels();
  out << "generators";
  for (const auto& l : labels) out << ' ' << l;
  out << "\n";
  for (const auto& r : q.relators) out << "relator " << render_word(r, labels) << "\n";
  return out.str();
}

std::string subgroup_digest(const SubgroupPresentation& q) {
  const std::string text = canonical_text(q);
  unsigned char hash[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), hash, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(hash[i]);
  return hex.str();
}

LargenessCertificate certify_large(const Presentation& p, const QuotientWitness& w,
                                   const CertifyOptions& options) {
  LargenessCertificate cert;
  cert.presentation = p;
  cert.witness = w;
  const RdefBound bound = rdef_lower_bound(p, w);
  cert.orders = bound.realized_orders;
  cert.rdef_lower = bound.value;

  const CosetTable table = regular_coset_table(w, options.image_cap);
  cert.index = table.count();
  cert.subgroup = reidemeister_schreier_power_aware(p, table);
  cert.achieved_deficiency = cert.subgroup.deficiency();
  cert.predicted_deficiency = 1 + as_rational(static_cast<std::int64_t>(cert.index)) * (cert.rdef_lower - 1);
  if (as_rational(cert.achieved_deficiency) != cert.predicted_deficiency)
    throw std::logic_error("counted subgroup deficiency " + std::to_string(cert.achieved_deficiency) +
                           " disagrees with predicted " + to_string(cert.predicted_deficiency));
  cert.verdict = cert.achieved_deficiency >= 2 ? Verdict::certified_large : Verdict::inconclusive;
  cert.subgroup_digest = subgroup_digest(cert.subgroup);
  return cert;
}

AutoCertifyResult certify_large(const Presentation& p, const SearchRequest& search,
                                const CertifyOptions& options) {
  SearchRequest request = search;
  request.targets = NoCollapse{};
  const SearchOutcome found = search_witness(p, request);
  AutoCertifyResult out;
  out.search_nodes = found.nodes;
  switch (found.status) {
    case SearchStatus::found:
      out.status = CertifyStatus::certificate;
      out.certificate = certify_large(p, *found.witness, options);
      break;
    case SearchStatus::exhausted:
      out.status = CertifyStatus::not_found;
      break;
    case SearchStatus::budget_hit:
      out.status = CertifyStatus::budget_hit;
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Family formulas

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

// 1/e with the convention that 0 (no power / infinity) contributes nothing.
Rational reciprocal_or_zero(std::int64_t e) {
  return e == 0 ? Rational(0) : Rational(BigInt(1), BigInt(e));
}

void require_power_or_free(std::int64_t e, const std::string& what) {
  require(e == 0 || e >= 2, what + " must be 0 or at least 2");
}

}  // namespace

FamilyValue family_rdef(const Family& family) {
  Rational value;
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Triangle>) {
          require(f.l >= 2 && f.m >= 2 && f.n >= 2, "triangle parameters must be at least 2");
          value = 2 - reciprocal_or_zero(f.l) - reciprocal_or_zero(f.m) - reciprocal_or_zero(f.n);
        } else if constexpr (std::is_same_v<T, OneRelatorQuotient>) {
          require(!f.orders.empty(), "need at least one generator order");
          for (auto m : f.orders) require(m >= 2, "generator orders must be at least 2");
          require(f.s >= 2, "relator power must be at least 2");
          value = as_rational(static_cast<std::int64_t>(f.orders.size()));
          for (auto m : f.orders) value -= reciprocal_or_zero(m);
          value -= reciprocal_or_zero(f.s);
        } else if constexpr (std::is_same_v<T, Coxeter>) {
          const std::size_t n = f.matrix.size();
          require(n >= 1, "Coxeter matrix must be non-empty");
          for (const auto& row : f.matrix) require(row.size() == n, "Coxeter matrix must be square");
          value = Rational(BigInt(n), BigInt(2));
          for (std::size_t i = 0; i < n; ++i) {
            require(f.matrix[i][i] == 0 || f.matrix[i][i] == 1, "Coxeter diagonal must be 1");
            for (std::size_t j = i + 1; j < n; ++j) {
              const std::int64_t m = f.matrix[i][j];
              require(m == f.matrix[j][i], "Coxeter matrix must be symmetric");
              require(m == kInfinity || m >= 2, "Coxeter entries must be at least 2 or infinite");
              value -= reciprocal_or_zero(m);
            }
          }
        } else if constexpr (std::is_same_v<T, Tetrahedral>) {
          for (auto e : {f.e1, f.e2, f.e3}) require_power_or_free(e, "generator power");
          require(f.m >= 2 && f.p >= 2 && f.q >= 2, "relator powers must be at least 2");
          value = 3 - reciprocal_or_zero(f.e1) - reciprocal_or_zero(f.e2) - reciprocal_or_zero(f.e3) -
                  reciprocal_or_zero(f.m) - reciprocal_or_zero(f.p) - reciprocal_or_zero(f.q);
        } else if constexpr (std::is_same_v<T, Chain>) {
          require(f.e.size() >= 2, "chain needs at least 2 generators");
          require(f.m.size() == f.e.size(), "chain needs one relator power per generator");
          value = as_rational(static_cast<std::int64_t>(f.e.size()));
          for (auto e : f.e) {
            require_power_or_free(e, "generator power");
            value -= reciprocal_or_zero(e);
          }
          for (auto m : f.m) {
            require(m >= 3, "chain relator powers must be at least 3");
            value -= reciprocal_or_zero(m);
          }
        } else if constexpr (std::is_same_v<T, Star>) {
          const std::size_t n = f.e.size();
          require(n >= 3, "star needs at least 3 generators");
          require(f.m.size() == 2 * n - 3, "star needs 2n-3 relator powers");
          value = as_rational(static_cast<std::int64_t>(n));
          for (auto e : f.e) {
            require_power_or_free(e, "generator power");
            value -= reciprocal_or_zero(e);
          }
          for (auto m : f.m) {
            require(m >= 3, "star relator powers must be at least 3");
            value -= reciprocal_or_zero(m);
          }
        }
      },
      family);
  return {value, value > 1};
}

// ---------------------------------------------------------------------------

ThomasVerdict thomas_infiniteness(const Presentation& p, const QuotientWitness& w) {
  if (!is_no_collapse(p, w)) return ThomasVerdict::unknown;
  std::vector<std::int64_t> exponents;
  for (const auto& r : p.relators()) exponents.push_back(r.exponent());
  const Rational quantity = as_rational(static_cast<std::int64_t>(p.rank())) - inverse_sum(exponents);
  return quantity >= 1 ? ThomasVerdict::infinite : ThomasVerdict::unknown;
}

namespace {

std::vector<std::int64_t> divisors(std::int64_t m) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= m; ++d)
    if (m % d == 0) out.push_back(d);
  return out;
}

RelSizeEntry relative_entry(const Word& g, const QuotientWitness& w) {
  if (g.empty()) throw EmptyWordError();
  RelSizeEntry e;
  e.element = g;
  const PowerForm pf = maximal_root(g);
  e.root = pf.root;
  e.exponent = pf.exponent;
  e.in_kernel = evaluate_word(w, g).is_identity();
  if (!e.in_kernel) {
    // Every root of g is u^d with d | m; the largest arising exponent is m.
    e.nu = pf.exponent;
    e.attaining_divisor = 1;
    return e;
  }
  const Permutation root_image = evaluate_word(w, pf.root);
  e.nu = 0;
  for (std::int64_t d : divisors(pf.exponent)) {
    const std::int64_t ord = root_image.pow(d).order();
    if (ord > e.nu) {
      e.nu = ord;
      e.attaining_divisor = d;
    }
  }
  return e;
}

}  // namespace

RelSizeReport relative_size(const std::vector<Word>& elements, const QuotientWitness& w) {
  RelSizeReport report;
  report.total = 0;
  for (const auto& g : elements) {
    report.entries.push_back(relative_entry(g, w));
    report.total += Rational(BigInt(1), BigInt(report.entries.back().nu));
  }
  return report;
}

std::int64_t relative_nu_in_kernel(const Word& g, const QuotientWitness& subgroup,
                                   const QuotientWitness& normal) {
  if (g.empty()) throw EmptyWordError();
  if (!evaluate_word(subgroup, g).is_identity())
    throw InputError("element does not lie in the subgroup");
  const PowerForm pf = maximal_root(g);
  const bool in_normal = evaluate_word(normal, g).is_identity();
  const Permutation in_h = evaluate_word(subgroup, pf.root);
  const Permutation in_k = evaluate_word(normal, pf.root);
  std::int64_t best = 0;
  for (std::int64_t d : divisors(pf.exponent)) {
    if (!in_h.pow(d).is_identity()) continue;  // u^d must lie in H
    const std::int64_t value = in_normal ? in_k.pow(d).order() : pf.exponent / d;
    best = std::max(best, value);
  }
  return best;
}

SupermultiplicativityReport check_supermultiplicativity(const Presentation& p,
                                                        const QuotientWitness& w,
                                                        const QuotientWitness& normal,
                                                        const SupermultiplicativityOptions& options) {
  if (normal.rank() != p.rank()) throw InputError("second witness has the wrong generator count");
  SupermultiplicativityReport report;
  const RdefBound bound = rdef_lower_bound(p, w);
  report.rdef_lower = bound.value;
  const CosetTable table = regular_coset_table(w, options.image_cap);
  report.index = table.count();
  const SubgroupPresentation q = reidemeister_schreier_power_aware(p, table);
  report.subgroup_deficiency = q.deficiency();
  const Rational lhs = as_rational(report.subgroup_deficiency - 1);
  const Rational rhs = as_rational(static_cast<std::int64_t>(report.index)) * (bound.value - 1);
  report.deficiency_inequality = lhs >= rhs;
  report.deficiency_equality = lhs == rhs;

  // Sampled kernel elements.
  const std::size_t n = p.rank();
  if (n > 0) {
    const SchreierTransversal s = schreier_transversal(table);
    std::mt19937_64 rng(options.seed);
    auto random_word = [&](std::size_t min_len) {
      std::uniform_int_distribution<std::size_t> len_dist(min_len, std::max(min_len, options.max_word_length));
      std::uniform_int_distribution<std::size_t> gen_dist(0, n - 1);
      std::bernoulli_distribution sign_dist(0.5);
      std::vector<Letter> letters;
      const std::size_t len = len_dist(rng);
      for (std::size_t i = 0; i < len; ++i) letters.emplace_back(gen_dist(rng), sign_dist(rng) ? 1 : -1);
      return Word(letters, n);
    };
    std::size_t attempts = 0;
    while (report.sampled < options.samples && attempts < options.samples * 20) {
      ++attempts;
      Word g(n);
      switch (attempts % 3) {
        case 0: {
          const Word v = random_word(1);
          g = v.pow(evaluate_word(w, v).order());
          break;
        }
        case 1: {
          const Word v = random_word(1);
          const Word c = random_word(0);
          g = c * v.pow(evaluate_word(w, v).order()) * c.inverse();
          break;
        }
        default: {
          const auto& gens = s.schreier_generators();
          if (gens.empty()) continue;
          std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
          Word prod(n);
          for (int k = 0; k < 2; ++k) {
            const auto [c, x] = gens[pick(rng)];
            const Coset d = table.act(c, Letter(x, 1));
            prod *= s.representative(c) * Word::generator(x, n) * s.representative(d).inverse();
          }
          g = prod;
          break;
        }
      }
      if (g.empty()) continue;
      const RelSizeEntry in_g = relative_entry(g, normal);
      const Word minimal_root = in_g.root.pow(in_g.attaining_divisor);
      const std::int64_t l = evaluate_word(w, minimal_root).order();
      const std::int64_t nu_h = relative_nu_in_kernel(g, w, normal);
      ++report.sampled;
      if (nu_h * l >= in_g.nu) ++report.root_bound_holds;
    }

    // Conjugate-expanded relator set versus the relator set.
    std::vector<Word> relators;
    for (const auto& r : p.relators()) relators.push_back(r.full());
    report.relsize_bound = as_rational(static_cast<std::int64_t>(report.index)) *
                           relative_size(relators, normal).total;
    report.relsize_conjugates = 0;
    for (const auto& origin : q.origins) {
      const Word& t = s.representative(origin.coset);
      const Word conj = t * relators[origin.source_relator] * t.inverse();
      report.relsize_conjugates += Rational(BigInt(1), BigInt(relative_nu_in_kernel(conj, w, normal)));
    }
    report.relsize_inequality = report.relsize_conjugates <= report.relsize_bound;
  } else {
    report.relsize_inequality = true;
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<std::string> default_generator_names(std::size_t rank) {
  if (rank > 26) throw InputError("at most 26 generators are supported here");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < rank; ++i) names.emplace_back(1, static_cast<char>('a' + i));
  return names;
}

PowerQuotientResult power_quotient_certificate(const PowerQuotientRequest& request) {
  if (request.rank < 2) throw InputError("power quotients need rank at least 2");
  if (request.q < 2) throw InputError("q must be at least 2");
  if (request.elements.empty()) throw InputError("need at least one element");
  PowerQuotientResult out;
  std::vector<PowerRelator> relators;
  std::vector<std::int64_t> powers;
  for (std::size_t i = 0; i < request.elements.size(); ++i) {
    const Word& g = request.elements[i];
    if (g.rank() != request.rank) throw InputError("element has the wrong rank");
    const PowerForm pf = maximal_root(g);
    if (pf.exponent > 1)
      out.notes.push_back("element " + std::to_string(i + 1) + " is a proper power (exponent " +
                          std::to_string(pf.exponent) + "); using its root with power " +
                          std::to_string(pf.exponent * request.q));
    relators.emplace_back(pf.root, pf.exponent * request.q);
    powers.push_back(pf.exponent * request.q);
  }
  out.presentation = Presentation(default_generator_names(request.rank), std::move(relators));
  out.threshold = Rational(BigInt(request.elements.size()), BigInt(request.rank - 1));
  out.rdef_if_no_collapse = as_rational(static_cast<std::int64_t>(request.rank)) - inverse_sum(powers);
  out.result = certify_large(out.presentation, request.search, request.certify);
  if (out.result.certificate) out.result.certificate->notes = out.notes;
  return out;
}

ClosedFormInvariants closed_form_free(std::int64_t m) {
  if (m < 2) throw InputError("free group rank must be at least 2");
  ClosedFormInvariants c;
  c.kind = ClosedFormInvariants::Kind::free;
  c.parameter = m;
  c.deficiency = as_rational(m);
  c.rank = as_rational(m);
  c.deficiency_gradient = as_rational(m - 1);
  c.rank_gradient = as_rational(m - 1);
  c.l2_betti = as_rational(m - 1);
  c.euler_characteristic = as_rational(1 - m);
  return c;
}

ClosedFormInvariants closed_form_surface(std::int64_t g) {
  if (g < 2) throw InputError("surface genus must be at least 2");
  ClosedFormInvariants c;
  c.kind = ClosedFormInvariants::Kind::surface;
  c.parameter = g;
  c.deficiency = as_rational(2 * g - 1);
  c.rank = as_rational(2 * g);
  c.deficiency_gradient = as_rational(2 * g - 2);
  c.rank_gradient = as_rational(2 * g - 2);
  c.l2_betti = as_rational(2 * g - 2);
  c.euler_characteristic = as_rational(2 - 2 * g);
  return c;
}

ClosedFormInvariants closed_form_invariants(const ClosedFormFamily& family) {
  if (const auto* f = std::get_if<FreeGroup>(&family)) return closed_form_free(f->rank);
  return closed_form_surface(std::get<SurfaceGroup>(family).genus);
}

}  // namespace grpdef
