#include "grpdef/presentations.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "grpdef/errors.hpp"

namespace grpdef {

namespace {

// Words longer than this after power expansion are rejected at parse time.
constexpr std::size_t kMaxExpandedLength = 10'000'000;

}  // namespace

PowerRelator::PowerRelator(const Word& relator) {
  auto [root, exponent] = maximal_root(relator);
  root_ = std::move(root);
  exponent_ = exponent;
}

PowerRelator::PowerRelator(const Word& root, std::int64_t exponent) {
  if (exponent < 1) throw InputError("relator exponent must be positive");
  auto [primitive, inner] = maximal_root(root);
  root_ = std::move(primitive);
  exponent_ = inner * exponent;
}

Presentation::Presentation(std::vector<std::string> generator_names,
                           std::vector<PowerRelator> relators)
    : names_(std::move(generator_names)), relators_(std::move(relators)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InputError("empty generator name");
    if (!seen.insert(n).second) throw InputError("duplicate generator name '" + n + "'");
  }
  for (const auto& r : relators_)
    if (r.root().rank() != names_.size())
      throw InputError("relator rank does not match generator count");
}

std::size_t Presentation::find_generator(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  return static_cast<std::size_t>(it - names_.begin());
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Presentation presentation() {
    expect('<');
    std::vector<std::string> names;
    names.push_back(name());
    while (peek() == ',') {
      advance();
      names.push_back(name());
    }
    {
      std::set<std::string> seen;
      for (const auto& n : names)
        if (!seen.insert(n).second) fail("duplicate generator name '" + n + "'");
    }
    names_ = &names;
    expect('|');
    std::vector<PowerRelator> relators;
    if (peek() != '>') {
      relators.push_back(relator());
      while (peek() == ',') {
        advance();
        relators.push_back(relator());
      }
    }
    expect('>');
    if (peek() != '\0') fail("trailing input after presentation");
    return Presentation(std::move(names), std::move(relators));
  }

  Word standalone_word(const std::vector<std::string>& names) {
    names_ = &names;
    Word w = word();
    if (peek() != '\0') fail("trailing input after word");
    return w;
  }

private:
  PowerRelator relator() {
    const auto [line, col] = position();
    Word w = word();
    if (w.empty())
      throw ParseError("relator reduces to the trivial word", line, col);
    return PowerRelator(w);
  }

  Word word() {
    Word w(names_->size());
    bool any = false;
    for (;;) {
      const char c = peek();
      if (c == '(' || c == '[' || std::isalpha(static_cast<unsigned char>(c))) {
        w *= atom();
        any = true;
        if (w.size() > kMaxExpandedLength) fail("word too long after expansion");
      } else {
        break;
      }
    }
    if (!any) fail("expected a word");
    return w;
  }

  Word atom() {
    Word base = this->base();
    if (peek() == '^') {
      advance();
      const std::int64_t e = integer();
      if (e == 0) fail("exponent 0 is not allowed");
      const std::int64_t magnitude = e < 0 ? -e : e;
      if (!base.empty() &&
          base.size() > kMaxExpandedLength / static_cast<std::size_t>(magnitude))
        fail("word too long after expansion");
      base = base.pow(e);
    }
    return base;
  }

  Word base() {
    const char c = peek();
    const std::size_t rank = names_->size();
    if (c == '(') {
      advance();
      Word inner = word();
      expect(')');
      return inner;
    }
    if (c == '[') {
      advance();
      Word x = word();
      expect(',');
      Word y = word();
      expect(']');
      return x * y * x.inverse() * y.inverse();
    }
    const auto [line, col] = position();
    const std::string n = name();
    const auto it = std::find(names_->begin(), names_->end(), n);
    if (it == names_->end()) throw ParseError("unknown generator '" + n + "'", line, col);
    return Word::generator(static_cast<std::size_t>(it - names_->begin()), rank);
  }

  std::string name() {
    skip();
    if (!std::isalpha(static_cast<unsigned char>(cur()))) fail("expected a generator name");
    std::string out;
    while (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_') {
      out.push_back(cur());
      step();
    }
    return out;
  }

  std::int64_t integer() {
    skip();
    std::string digits;
    if (cur() == '-') {
      digits.push_back('-');
      step();
    }
    while (std::isdigit(static_cast<unsigned char>(cur()))) {
      digits.push_back(cur());
      step();
    }
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) fail("expected an integer");
    return value;
  }

  char cur() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void step() {
    if (pos_ >= text_.size()) return;
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    for (;;) {
      const char c = cur();
      if (c == '#') {
        while (cur() != '\n' && cur() != '\0') step();
      } else if (c != '\0' && std::isspace(static_cast<unsigned char>(c))) {
        step();
      } else {
        return;
      }
    }
  }

  char peek() {
    skip();
    return cur();
  }

  void advance() {
    skip();
    step();
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    step();
  }

  std::pair<std::size_t, std::size_t> position() {
    skip();
    return {line_, col_};
  }

  [[noreturn]] void fail(const std::string& what) {
    skip();
    throw ParseError(what, line_, col_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  const std::vector<std::string>* names_ = nullptr;
};

}  // namespace

Presentation parse_presentation(std::string_view text) { return Parser(text).presentation(); }

Word parse_word(std::string_view text, const std::vector<std::string>& names) {
  return Parser(text).standalone_word(names);
}

std::vector<Word> parse_word_list(std::string_view text, const std::vector<std::string>& names) {
  std::vector<Word> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    const std::string_view piece = text.substr(start, end - start);
    if (piece.find_first_not_of(" \t\r\n") != std::string_view::npos)
      out.push_back(parse_word(piece, names));
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

std::string render_word(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  const auto letters = w.letters();
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    const std::int64_t power = static_cast<std::int64_t>(j - i) * letters[i].sign();
    if (!out.empty()) out.push_back(' ');
    out += names.at(letters[i].generator());
    if (power != 1) out += "^" + std::to_string(power);
    i = j;
  }
  return out;
}

std::string render_relator(const PowerRelator& r, const std::vector<std::string>& names) {
  const std::string root = render_word(r.root(), names);
  if (r.exponent() == 1) return root;
  if (r.root().size() == 1) {
    const Letter l = r.root().letters()[0];
    const std::int64_t e = l.inverted() ? -r.exponent() : r.exponent();
    return names[l.generator()] + "^" + std::to_string(e);
  }
  return "(" + root + ")^" + std::to_string(r.exponent());
}

std::string render_presentation(const Presentation& p) {
  std::string out = "< ";
  for (std::size_t i = 0; i < p.rank(); ++i) {
    if (i) out += ", ";
    out += p.generator_names()[i];
  }
  out += " | ";
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    if (i) out += ", ";
    out += render_relator(p.relators()[i], p.generator_names());
  }
  out += p.relators().empty() ? ">" : " >";
  return out;
}

// ---------------------------------------------------------------------------
// Invariants

std::int64_t deficiency(const Presentation& p) {
  return static_cast<std::int64_t>(p.rank()) - static_cast<std::int64_t>(p.relators().size());
}

Rational p_deficiency(const Presentation& p, std::int64_t prime) {
  if (!is_prime(prime)) throw InputError(std::to_string(prime) + " is not prime");
  Rational value(static_cast<long long>(p.rank()));
  for (const auto& r : p.relators()) {
    const int nu = p_adic_valuation(r.exponent(), prime);
    BigInt denom = boost::multiprecision::pow(BigInt(prime), static_cast<unsigned>(nu));
    value -= Rational(BigInt(1), denom);
  }
  return value;
}

IntegerMatrix abelianization_matrix(const Presentation& p) {
  IntegerMatrix m(p.relators().size(), p.rank());
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    const auto& r = p.relators()[i];
    for (Letter l : r.root()) m(i, l.generator()) += l.sign();
    for (std::size_t j = 0; j < p.rank(); ++j) m(i, j) *= r.exponent();
  }
  return m;
}

std::size_t AbelianInvariants::p_rank(std::int64_t prime) const {
  if (!is_prime(prime)) throw InputError(std::to_string(prime) + " is not prime");
  std::size_t count = betti;
  for (const auto& d : torsion)
    if (d % prime == 0) ++count;
  return count;
}

AbelianInvariants abelian_invariants(const IntegerMatrix& m) {
  AbelianInvariants out;
  std::size_t nonzero = 0;
  for (const BigInt& d : smith_diagonal(m)) {
    if (d == 0) continue;
    ++nonzero;
    if (d >= 2) out.torsion.push_back(d);
  }
  out.betti = m.cols() - nonzero;
  return out;
}

AbelianInvariants abelian_invariants(const Presentation& p) {
  return abelian_invariants(abelianization_matrix(p));
}

bool has_infinite_abelianization(const Presentation& p) { return abelian_invariants(p).betti >= 1; }

}  // namespace grpdef
