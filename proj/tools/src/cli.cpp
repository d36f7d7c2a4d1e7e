#include "grpdef/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "grpdef/analysis.hpp"
#include "grpdef/errors.hpp"
#include "grpdef/serialize.hpp"
#include "grpdef/todd_coxeter.hpp"

namespace grpdef::cli {

namespace {

using nlohmann::json;

struct Globals {
  bool json = false;
  std::size_t max_image = kDefaultImageCap;
  std::size_t max_cosets = kDefaultMaxCosets;
  std::uint64_t search_nodes = kDefaultSearchNodes;
  std::int64_t time_ms = 0;
  std::size_t threads = 1;
};

std::size_t threads_from_env() {
  const char* value = std::getenv("GRPDEF_THREADS");
  if (value == nullptr || *value == '\0') return 1;
  try {
    const long n = std::stol(value);
    return n >= 1 ? static_cast<std::size_t>(n) : 1;
  } catch (const std::exception&) {
    throw InputError(std::string("GRPDEF_THREADS is not a positive integer: ") + value);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Presentation load_presentation(const std::string& path) { return parse_presentation(read_file(path)); }

QuotientWitness load_witness(const std::string& path, const std::vector<std::string>& names) {
  return witness_from_json(read_json(path), names);
}

struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

// "lo..hi" or a single number.
Range parse_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    std::size_t used = 0;
    Range r;
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoul(text, &used);
      if (used != text.size()) throw InputError("");
    } else {
      const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
      r.lo = std::stoul(a, &used);
      if (used != a.size()) throw InputError("");
      r.hi = std::stoul(b, &used);
      if (used != b.size()) throw InputError("");
    }
    if (r.lo > r.hi) throw InputError("");
    return r;
  } catch (const std::exception&) {
    throw InputError("bad range '" + text + "' (expected lo..hi)");
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("bad integer list '" + text + "'");
    }
  }
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

SearchBudget budget_of(const Globals& g) {
  SearchBudget b;
  b.max_nodes = g.search_nodes;
  b.time_limit = std::chrono::milliseconds(g.time_ms);
  return b;
}

SearchFamily family_of(const std::optional<std::string>& degrees, const std::optional<std::string>& cyclic) {
  if (degrees && cyclic) throw InputError("--degrees and --cyclic are mutually exclusive");
  if (cyclic) {
    const Range r = parse_range(*cyclic);
    return CyclicModuli{r.lo, r.hi};
  }
  const Range r = parse_range(degrees.value_or("2..8"));
  return SymmetricDegrees{r.lo, r.hi};
}

std::string rational_text(const Rational& r) { return to_string(r); }

std::string join(const std::vector<std::int64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

std::string torsion_text(const AbelianInvariants& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.torsion.size(); ++i) out += (i ? ", " : "") + a.torsion[i].str();
  return out + "]";
}

// Builds "key: value" lines.
class Lines {
public:
  template <class T>
  Lines& add(const std::string& key, const T& value) {
    out_ << key << ": " << value << "\n";
    return *this;
  }
  Lines& raw(const std::string& line) {
    out_ << line << "\n";
    return *this;
  }
  std::string str() const { return out_.str(); }

private:
  std::ostringstream out_;
};

// ---------------------------------------------------------------------------
// Commands

struct AnalyzeArgs {
  std::string file;
  std::vector<std::int64_t> primes;
};

CommandResult run_analyze(const AnalyzeArgs& a) {
  const Presentation p = load_presentation(a.file);
  std::vector<std::int64_t> primes = a.primes.empty() ? std::vector<std::int64_t>{2, 3} : a.primes;
  for (auto q : primes)
    if (!is_prime(q)) throw InputError(std::to_string(q) + " is not prime");

  const AbelianInvariants ab = abelian_invariants(p);
  const IntegerMatrix m = abelianization_matrix(p);
  Rational upper = Rational(BigInt(p.rank()));
  for (const auto& r : p.relators()) upper -= Rational(BigInt(1), BigInt(r.exponent()));

  CommandResult res;
  json matrix = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(static_cast<std::int64_t>(m(i, j)));
    matrix.push_back(row);
  }
  json defs = json::object(), ranks = json::object();
  Lines text;
  text.add("presentation", render_presentation(p))
      .add("generators", p.rank())
      .add("relators", p.relators().size())
      .add("deficiency", deficiency(p));
  for (auto q : primes) {
    const Rational d = p_deficiency(p, q);
    defs[std::to_string(q)] = rational_json(d);
    ranks[std::to_string(q)] = ab.p_rank(q);
    text.add("def_" + std::to_string(q), rational_text(d));
  }
  text.add("betti", ab.betti).add("torsion", torsion_text(ab));
  for (auto q : primes) text.add("d_" + std::to_string(q), ab.p_rank(q));
  text.add("infinite_abelianization", ab.betti >= 1 ? "yes" : "no")
      .add("rdef_if_no_collapse", rational_text(upper));

  res.payload = {
      {"presentation", presentation_json(p)},
      {"deficiency", deficiency(p)},
      {"p_deficiency", defs},
      {"abelianization_matrix", matrix},
      {"betti", ab.betti},
      {"torsion", abelian_json(ab)["torsion"]},
      {"d_p", ranks},
      {"infinite_abelianization", ab.betti >= 1},
      {"deficiency_at_most_betti", deficiency(p) <= static_cast<std::int64_t>(ab.betti)},
      {"rdef_if_no_collapse", rational_json(upper)},
  };
  res.human_text = text.str();
  return res;
}

struct WitnessArgs {
  std::string file;
  bool no_collapse = false;
  bool any = false;
  std::optional<std::string> orders;
  std::optional<std::string> degrees;
  std::optional<std::string> cyclic;
  bool exhaustive = false;
};

CommandResult run_witness(const WitnessArgs& a, const Globals& g) {
  const Presentation p = load_presentation(a.file);
  SearchRequest req;
  const int chosen = int(a.no_collapse) + int(a.any) + int(a.orders.has_value());
  if (chosen > 1) throw InputError("choose one of --no-collapse, --orders, --any");
  if (a.orders) {
    const auto orders = parse_int_list(*a.orders);
    if (orders.size() != p.relators().size())
      throw InputError("--orders needs one entry per relator (" + std::to_string(p.relators().size()) + ")");
    req.targets = orders;
  } else if (a.any) {
    req.targets = AnyHomomorphism{};
  } else {
    req.targets = NoCollapse{};
  }
  req.family = family_of(a.degrees, a.cyclic);
  req.mode = a.exhaustive ? SearchMode::exhaustive_minimal : SearchMode::first;
  req.budget = budget_of(g);
  req.threads = g.threads;

  const SearchOutcome out = search_witness(p, req);
  CommandResult res;
  Lines text;
  if (out.status == SearchStatus::found) {
    const auto orders = relator_root_orders(p, *out.witness);
    res.payload = {{"status", "found"},
                   {"witness", witness_json(*out.witness, p.generator_names())},
                   {"orders", orders},
                   {"no_collapse", is_no_collapse(p, *out.witness)},
                   {"nodes", out.nodes}};
    text.add("status", "found").add("degree", out.witness->degree()).add("orders", join(orders));
    for (std::size_t i = 0; i < p.rank(); ++i)
      text.add("  " + p.generator_names()[i],
               json(out.witness->generator_images()[i].images()).dump());
    try {
      const std::size_t size = image_closure(*out.witness, g.max_image).size();
      res.payload["image_size"] = size;
      text.add("image_size", size);
    } catch (const BudgetExceeded&) {
      text.add("image_size", "over --max-image");
    }
    res.exit_code = kSuccess;
  } else {
    const bool budget = out.status == SearchStatus::budget_hit;
    res.payload = {{"status", "unknown"},
                   {"reason", budget ? "budget-exceeded" : "search-space-exhausted"},
                   {"nodes", out.nodes}};
    text.add("status", "unknown")
        .add("reason", budget ? "search budget exceeded" : "no witness in the searched range");
    res.exit_code = budget ? kBudgetExceeded : kInconclusive;
  }
  text.add("nodes", out.nodes);
  res.human_text = text.str();
  return res;
}

std::string certificate_text(const LargenessCertificate& c) {
  Lines text;
  text.add("presentation", render_presentation(c.presentation))
      .add("degree", c.witness.degree())
      .add("index", c.index)
      .add("orders", join(c.orders))
      .add("rdef_lower", rational_text(c.rdef_lower))
      .add("predicted", rational_text(c.predicted_deficiency))
      .add("subgroup_generators", c.subgroup.generator_count())
      .add("subgroup_relators", c.subgroup.relators.size())
      .add("achieved", c.achieved_deficiency)
      .add("verdict", verdict_name(c.verdict))
      .add("digest", c.subgroup_digest);
  for (const auto& n : c.notes) text.add("note", n);
  return text.str();
}

struct CertifyArgs {
  std::optional<std::string> file;
  std::optional<std::string> witness;
  std::optional<std::string> degrees;
  std::optional<std::string> cyclic;
  std::optional<std::string> verify;
  std::optional<std::string> output;
};

CommandResult certificate_result(const LargenessCertificate& c, const std::optional<std::string>& output) {
  CommandResult res;
  res.payload = certificate_json(c);
  res.human_text = certificate_text(c);
  res.exit_code = c.verdict == Verdict::certified_large ? kSuccess : kInconclusive;
  if (output) {
    std::ofstream f(*output);
    if (!f) throw InputError("cannot write '" + *output + "'");
    f << res.payload.dump(2) << "\n";
  }
  return res;
}

CommandResult run_certify(const CertifyArgs& a, const Globals& g) {
  CertifyOptions options;
  options.image_cap = g.max_image;
  if (a.verify) {
    if (a.file || a.witness || a.degrees || a.cyclic)
      throw InputError("--verify takes only a certificate file");
    const CertificateCheck check = verify_certificate(read_json(*a.verify), options);
    CommandResult res;
    res.payload = {{"verified", check.ok},
                   {"mismatches", check.mismatches},
                   {"verdict", verdict_name(check.recomputed.verdict)},
                   {"subgroup_presentation_digest", check.recomputed.subgroup_digest}};
    Lines text;
    text.add("verified", check.ok ? "yes" : "no")
        .add("verdict", verdict_name(check.recomputed.verdict))
        .add("digest", check.recomputed.subgroup_digest);
    for (const auto& m : check.mismatches) text.add("mismatch", m);
    res.human_text = text.str();
    res.exit_code = check.ok ? kSuccess : kInconclusive;
    return res;
  }
  if (!a.file) throw InputError("certify needs a presentation file or --verify");
  const Presentation p = load_presentation(*a.file);
  if (a.witness) {
    if (a.degrees || a.cyclic) throw InputError("--witness excludes --degrees/--cyclic");
    return certificate_result(certify_large(p, load_witness(*a.witness, p.generator_names()), options), a.output);
  }
  SearchRequest req;
  req.family = family_of(a.degrees, a.cyclic);
  req.mode = SearchMode::exhaustive_minimal;
  req.budget = budget_of(g);
  req.threads = g.threads;
  const AutoCertifyResult auto_result = certify_large(p, req, options);
  if (auto_result.certificate) return certificate_result(*auto_result.certificate, a.output);
  CommandResult res;
  const bool budget = auto_result.status == CertifyStatus::budget_hit;
  res.payload = {{"status", "unknown"},
                 {"verdict", "inconclusive"},
                 {"reason", budget ? "budget-exceeded" : "no-witness-in-range"},
                 {"nodes", auto_result.search_nodes}};
  res.human_text = Lines()
                       .add("verdict", "inconclusive")
                       .add("reason", budget ? "search budget exceeded"
                                             : "no no-collapse witness in the searched range")
                       .str();
  res.exit_code = budget ? kBudgetExceeded : kInconclusive;
  return res;
}

struct SubgroupArgs {
  std::string file;
  std::string witness;
  bool full = false;
  bool power_aware = false;
  bool simplify = false;
};

CommandResult run_subgroup(const SubgroupArgs& a, const Globals& g) {
  if (a.full && a.power_aware) throw InputError("--full and --power-aware are mutually exclusive");
  const Presentation p = load_presentation(a.file);
  const QuotientWitness w = load_witness(a.witness, p.generator_names());
  if (!verify_homomorphism(p, w)) throw NotAHomomorphism();
  const CosetTable table = regular_coset_table(w, g.max_image);
  SubgroupPresentation q =
      a.full ? reidemeister_schreier_full(p, table) : reidemeister_schreier_power_aware(p, table);
  if (a.simplify) q = tietze_simplify(q);
  const AbelianInvariants ab = abelian_invariants(q);

  CommandResult res;
  res.payload = subgroup_json(q);
  res.payload["abelian_invariants"] = abelian_json(ab);
  res.payload["digest"] = subgroup_digest(q);
  Lines text;
  text.add("mode", a.full ? "full" : "power-aware")
      .add("index", q.index)
      .add("generators", q.generator_count())
      .add("relators", q.relators.size())
      .add("deficiency", q.deficiency())
      .add("betti", ab.betti)
      .add("torsion", torsion_text(ab));
  if (!q.cycle_lengths.empty()) text.add("cycle_lengths", join(q.cycle_lengths));
  res.human_text = text.str();
  return res;
}

CommandResult family_result(const Family& f) {
  const FamilyValue v = family_rdef(f);
  CommandResult res;
  res.payload = {{"rdef", rational_json(v.rdef)}, {"greater_than_one", v.greater_than_one}};
  res.human_text = Lines().add("rdef", rational_text(v.rdef)).add("greater_than_one", v.greater_than_one ? "yes" : "no").str();
  return res;
}

std::int64_t coxeter_entry(const json& e) {
  if (e.is_null()) return kInfinity;
  if (e.is_string()) {
    const auto s = e.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "oo") return kInfinity;
    throw InputError("bad Coxeter matrix entry '" + s + "'");
  }
  if (!e.is_number_integer()) throw InputError("Coxeter matrix entries must be integers or \"inf\"");
  return e.get<std::int64_t>();
}

Coxeter load_coxeter(const std::string& path) {
  const json j = read_json(path);
  const json& rows = j.is_object() && j.contains("matrix") ? j.at("matrix") : j;
  if (!rows.is_array()) throw InputError("Coxeter matrix must be a JSON array of rows");
  Coxeter c;
  for (const auto& row : rows) {
    if (!row.is_array()) throw InputError("Coxeter matrix rows must be arrays");
    std::vector<std::int64_t> r;
    for (const auto& e : row) r.push_back(coxeter_entry(e));
    c.matrix.push_back(std::move(r));
  }
  return c;
}

struct RelsizeArgs {
  std::size_t rank = 2;
  std::string witness;
  std::string elements;
};

CommandResult run_relsize(const RelsizeArgs& a) {
  const auto names = default_generator_names(a.rank);
  const QuotientWitness w = load_witness(a.witness, names);
  const auto elements = parse_word_list(a.elements, names);
  if (elements.empty()) throw InputError("no elements given");
  const RelSizeReport report = relative_size(elements, w);
  CommandResult res;
  json entries = json::array();
  Lines text;
  for (const auto& e : report.entries) {
    entries.push_back({{"element", render_word(e.element, names)},
                       {"root", render_word(e.root, names)},
                       {"exponent", e.exponent},
                       {"in_kernel", e.in_kernel},
                       {"attaining_divisor", e.attaining_divisor},
                       {"nu", e.nu}});
    text.add(render_word(e.element, names),
             "nu=" + std::to_string(e.nu) + " root=" + render_word(e.root, names) + " exponent=" +
                 std::to_string(e.exponent) + (e.in_kernel ? " in-kernel d=" + std::to_string(e.attaining_divisor) : ""));
  }
  text.add("relsize", rational_text(report.total));
  res.payload = {{"entries", entries}, {"relsize", rational_json(report.total)}};
  res.human_text = text.str();
  return res;
}

struct PowerQuotientArgs {
  std::size_t rank = 2;
  std::string elements;
  std::int64_t q = 2;
  std::optional<std::string> degrees;
  std::optional<std::string> cyclic;
};

CommandResult run_power_quotient(const PowerQuotientArgs& a, const Globals& g) {
  PowerQuotientRequest req;
  req.rank = a.rank;
  req.q = a.q;
  req.elements = parse_word_list(a.elements, default_generator_names(a.rank));
  req.search.family = family_of(a.degrees, a.cyclic);
  req.search.mode = SearchMode::exhaustive_minimal;
  req.search.budget = budget_of(g);
  req.search.threads = g.threads;
  req.certify.image_cap = g.max_image;
  const PowerQuotientResult r = power_quotient_certificate(req);

  CommandResult res;
  const bool above = r.rdef_if_no_collapse > 1;
  res.payload = {{"presentation", presentation_json(r.presentation)},
                 {"threshold", rational_json(r.threshold)},
                 {"rdef_if_no_collapse", rational_json(r.rdef_if_no_collapse)},
                 {"above_threshold", above},
                 {"notes", r.notes}};
  Lines text;
  text.add("presentation", render_presentation(r.presentation))
      .add("threshold", rational_text(r.threshold))
      .add("rdef_if_no_collapse", rational_text(r.rdef_if_no_collapse));
  for (const auto& n : r.notes) text.add("note", n);
  if (r.result.certificate) {
    const auto& c = *r.result.certificate;
    res.payload["status"] = "found";
    res.payload["certificate"] = certificate_json(c);
    res.payload["verdict"] = verdict_name(c.verdict);
    text.raw(certificate_text(c));
    res.exit_code = c.verdict == Verdict::certified_large ? kSuccess : kInconclusive;
  } else {
    const bool budget = r.result.status == CertifyStatus::budget_hit;
    res.payload["status"] = "unknown";
    res.payload["verdict"] = "inconclusive";
    res.payload["reason"] = budget ? "budget-exceeded" : "no-witness-in-range";
    text.add("verdict", "inconclusive").add("reason", budget ? "search budget exceeded" : "no witness in range");
    res.exit_code = budget ? kBudgetExceeded : kInconclusive;
  }
  res.human_text = text.str();
  return res;
}

struct ToddCoxeterArgs {
  std::string file;
  std::string subgroup;
};

CommandResult run_todd_coxeter(const ToddCoxeterArgs& a, const Globals& g) {
  const Presentation p = load_presentation(a.file);
  const auto words = parse_word_list(a.subgroup, p.generator_names());
  const CosetTable t = todd_coxeter(p, words, g.max_cosets);
  CommandResult res;
  res.payload = coset_table_json(t, p.generator_names());
  res.payload["index"] = t.count();
  Lines text;
  text.add("index", t.count());
  if (t.count() <= 64)
    for (std::size_t i = 0; i < t.rank(); ++i)
      text.add("  " + p.generator_names()[i], json(t.column(i)).dump());
  res.human_text = text.str();
  return res;
}

struct ThomasArgs {
  std::string file;
  std::string witness;
};

CommandResult run_thomas(const ThomasArgs& a) {
  const Presentation p = load_presentation(a.file);
  const QuotientWitness w = load_witness(a.witness, p.generator_names());
  const ThomasVerdict v = thomas_infiniteness(p, w);
  Rational quantity = Rational(BigInt(p.rank()));
  for (const auto& r : p.relators()) quantity -= Rational(BigInt(1), BigInt(r.exponent()));
  const bool no_collapse = is_no_collapse(p, w);
  CommandResult res;
  const char* verdict = v == ThomasVerdict::infinite ? "infinite" : "unknown";
  res.payload = {{"verdict", verdict},
                 {"no_collapse", no_collapse},
                 {"quantity", rational_json(quantity)},
                 {"orders", relator_root_orders(p, w)}};
  res.human_text = Lines()
                       .add("verdict", verdict)
                       .add("no_collapse", no_collapse ? "yes" : "no")
                       .add("n - sum 1/m_i", rational_text(quantity))
                       .str();
  res.exit_code = v == ThomasVerdict::infinite ? kSuccess : kInconclusive;
  return res;
}

void emit(const CommandResult& res, const Globals& g, std::ostream& out) {
  if (g.json)
    out << res.payload.dump(2) << "\n";
  else
    out << res.human_text;
}

CommandResult failure(int code, const std::string& kind, const std::string& message, const Globals& g,
                      std::ostream& out, std::ostream& err) {
  CommandResult res;
  res.exit_code = code;
  res.payload = {{"error", kind}, {"message", message}};
  res.human_text = "error: " + message + "\n";
  err << "grpdef: " << message << "\n";
  if (g.json) out << res.payload.dump(2) << "\n";
  return res;
}

}  // namespace

CommandResult dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"Deficiency analysis and largeness certificates for finite presentations", "grpdef"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", g.json, "Print the JSON payload only");
  app.add_option("--max-image", g.max_image, "Cap on image-group size")->check(CLI::PositiveNumber);
  app.add_option("--max-cosets", g.max_cosets, "Cap on live cosets in Todd-Coxeter")->check(CLI::PositiveNumber);
  app.add_option("--search-nodes", g.search_nodes, "Backtracking node budget for witness search")
      ->check(CLI::PositiveNumber);
  app.add_option("--time-ms", g.time_ms, "Wall-clock budget for witness search (0 = none)")
      ->check(CLI::NonNegativeNumber);
  auto* threads_opt = app.add_option("--threads", g.threads, "Search worker threads (default: GRPDEF_THREADS or 1)")
                          ->check(CLI::PositiveNumber);

  std::function<CommandResult()> action;

  AnalyzeArgs analyze;
  auto* c_analyze = app.add_subcommand("analyze", "Deficiency, p-deficiency and abelian invariants");
  c_analyze->add_option("file", analyze.file, "Presentation file")->required();
  c_analyze->add_option("--p", analyze.primes, "Prime for def_p and d_p (repeatable; default 2 and 3)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  c_analyze->callback([&] { action = [&] { return run_analyze(analyze); }; });

  WitnessArgs witness;
  auto* c_witness = app.add_subcommand("witness", "Search a finite quotient witness");
  c_witness->add_option("file", witness.file, "Presentation file")->required();
  c_witness->add_flag("--no-collapse", witness.no_collapse, "Require root orders equal to the exponents (default)");
  c_witness->add_flag("--any", witness.any, "Accept any homomorphism and report the orders reached");
  c_witness->add_option("--orders", witness.orders, "Target root orders k1,k2,...");
  c_witness->add_option("--degrees", witness.degrees, "Symmetric degrees lo..hi (default 2..8)");
  c_witness->add_option("--cyclic", witness.cyclic, "Cyclic moduli lo..hi");
  c_witness->add_flag("--exhaustive", witness.exhaustive, "Return the lexicographically least witness");
  c_witness->callback([&] { action = [&] { return run_witness(witness, g); }; });

  CertifyArgs certify;
  auto* c_certify = app.add_subcommand("certify", "Build or verify a largeness certificate");
  c_certify->add_option("file", certify.file, "Presentation file");
  c_certify->add_option("--witness", certify.witness, "Witness JSON file");
  c_certify->add_option("--degrees", certify.degrees, "Search symmetric degrees lo..hi (default 2..8)");
  c_certify->add_option("--cyclic", certify.cyclic, "Search cyclic moduli lo..hi");
  c_certify->add_option("--verify", certify.verify, "Recompute and check a certificate JSON file");
  c_certify->add_option("-o,--output", certify.output, "Also write the certificate JSON to this file");
  c_certify->callback([&] { action = [&] { return run_certify(certify, g); }; });

  SubgroupArgs subgroup;
  auto* c_subgroup = app.add_subcommand("subgroup", "Reidemeister-Schreier presentation of a witness kernel");
  c_subgroup->add_option("file", subgroup.file, "Presentation file")->required();
  c_subgroup->add_option("--witness", subgroup.witness, "Witness JSON file")->required();
  c_subgroup->add_flag("--full", subgroup.full, "Rewrite every relator from every coset");
  c_subgroup->add_flag("--power-aware", subgroup.power_aware, "One relator per root cycle (default)");
  c_subgroup->add_flag("--simplify", subgroup.simplify, "Deduplicate relators");
  c_subgroup->callback([&] { action = [&] { return run_subgroup(subgroup, g); }; });

  auto* c_family = app.add_subcommand("family", "Residual deficiency formulas for standard families");
  c_family->require_subcommand(1);
  std::vector<std::int64_t> tri;
  auto* f_tri = c_family->add_subcommand("triangle", "Triangle group (l,m,n)");
  f_tri->add_option("params", tri, "l m n")->required()->expected(3);
  f_tri->callback([&] { action = [&] { return family_result(Triangle{tri[0], tri[1], tri[2]}); }; });

  std::string cox_file;
  auto* f_cox = c_family->add_subcommand("coxeter", "Coxeter group from a JSON matrix (\"inf\" for infinity)");
  f_cox->add_option("matrix", cox_file, "Matrix JSON file")->required();
  f_cox->callback([&] { action = [&] { return family_result(load_coxeter(cox_file)); }; });

  std::vector<std::int64_t> tet;
  auto* f_tet = c_family->add_subcommand("tetra", "Tetrahedral family e1 e2 e3 m p q (e_i = 0 for none)");
  f_tet->add_option("params", tet, "e1 e2 e3 m p q")->required()->expected(6);
  f_tet->callback([&] {
    action = [&] { return family_result(Tetrahedral{tet[0], tet[1], tet[2], tet[3], tet[4], tet[5]}); };
  });

  std::string chain_e, chain_m;
  auto* f_chain = c_family->add_subcommand("chain", "Chain family: e1,...,en m1,...,mn");
  f_chain->add_option("e", chain_e, "e1,...,en")->required();
  f_chain->add_option("m", chain_m, "m1,...,mn")->required();
  f_chain->callback([&] {
    action = [&] { return family_result(Chain{parse_int_list(chain_e), parse_int_list(chain_m)}); };
  });

  std::string star_e, star_m;
  auto* f_star = c_family->add_subcommand("star", "Star family: e1,...,en m1,...,m(2n-3)");
  f_star->add_option("e", star_e, "e1,...,en")->required();
  f_star->add_option("m", star_m, "m1,...,m(2n-3)")->required();
  f_star->callback([&] {
    action = [&] { return family_result(Star{parse_int_list(star_e), parse_int_list(star_m)}); };
  });

  std::string orq_m;
  std::int64_t orq_s = 0;
  auto* f_orq = c_family->add_subcommand("orq", "One-relator quotient: m1,...,mn s");
  f_orq->add_option("orders", orq_m, "m1,...,mn")->required();
  f_orq->add_option("s", orq_s, "Exponent of the extra relator")->required();
  f_orq->callback([&] {
    action = [&] { return family_result(OneRelatorQuotient{parse_int_list(orq_m), orq_s}); };
  });

  RelsizeArgs relsize;
  auto* c_relsize = app.add_subcommand("relsize", "Relative size in a free group against a witness kernel");
  c_relsize->add_option("rank", relsize.rank, "Free rank (generators a, b, c, ...)")->required()->check(CLI::PositiveNumber);
  c_relsize->add_option("--witness", relsize.witness, "Witness JSON file")->required();
  c_relsize->add_option("--elements", relsize.elements, "Elements \"w1; w2; ...\"")->required();
  c_relsize->callback([&] { action = [&] { return run_relsize(relsize); }; });

  PowerQuotientArgs pq;
  auto* c_pq = app.add_subcommand("power-quotient", "Certificate attempt for < x_1..x_d | g_1^q, ... >");
  c_pq->add_option("rank", pq.rank, "Free rank d")->required();
  c_pq->add_option("--elements", pq.elements, "Elements \"g1; g2; ...\"")->required();
  c_pq->add_option("--q", pq.q, "Power q")->required();
  c_pq->add_option("--degrees", pq.degrees, "Search symmetric degrees lo..hi (default 2..8)");
  c_pq->add_option("--cyclic", pq.cyclic, "Search cyclic moduli lo..hi");
  c_pq->callback([&] { action = [&] { return run_power_quotient(pq, g); }; });

  ToddCoxeterArgs tc;
  auto* c_tc = app.add_subcommand("todd-coxeter", "Coset enumeration");
  c_tc->add_option("file", tc.file, "Presentation file")->required();
  c_tc->add_option("--subgroup", tc.subgroup, "Subgroup generators \"w1; w2\"");
  c_tc->callback([&] { action = [&] { return run_todd_coxeter(tc, g); }; });

  ThomasArgs thomas;
  auto* c_thomas = app.add_subcommand("thomas", "Infiniteness test from a no-collapse witness");
  c_thomas->add_option("file", thomas.file, "Presentation file")->required();
  c_thomas->add_option("--witness", thomas.witness, "Witness JSON file")->required();
  c_thomas->callback([&] { action = [&] { return run_thomas(thomas); }; });

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("grpdef");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return {kSuccess, json::object(), app.help()};
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return {kSuccess, json::object(), app.help()};
  } catch (const CLI::ParseError& e) {
    CommandResult res = failure(kInputError, "usage", e.what(), g, out, err);
    err << app.help();
    return res;
  }

  try {
    if (threads_opt->count() == 0) g.threads = threads_from_env();
    CommandResult res = action();
    emit(res, g, out);
    return res;
  } catch (const ParseError& e) {
    return failure(kInputError, "parse-error", e.what(), g, out, err);
  } catch (const InputError& e) {
    return failure(kInputError, "input-error", e.what(), g, out, err);
  } catch (const RegularityViolation& e) {
    return failure(kInputError, "regularity-violation", e.what(), g, out, err);
  } catch (const BudgetExceeded& e) {
    return failure(kBudgetExceeded, "budget-exceeded", e.what(), g, out, err);
  }
}

}  // namespace grpdef::cli
