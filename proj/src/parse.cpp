#include "qserre/parse.hpp"

#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

namespace qserre {

ParseError::ParseError(std::size_t position, const std::string& what)
    : std::invalid_argument("parse error at column " + std::to_string(position + 1) + ": " + what),
      position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, AlphabetPtr alphabet) : text_(text), alphabet_(std::move(alphabet)) {}

  NcPoly parse() {
    NcPoly p = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& what) const { throw ParseError(at, what); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool starts_primary() {
    const char c = peek();
    return c == '(' || std::isalnum(static_cast<unsigned char>(c));
  }

  NcPoly expr() {
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    NcPoly acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  NcPoly term() {
    NcPoly acc = power();
    for (;;) {
      if (accept('*')) {
        acc = acc * power();
      } else if (peek() == '/') {
        const std::size_t at = pos_;
        ++pos_;
        NcPoly d = power();
        if (!d.is_scalar()) fail_at(at, "division by a non-scalar");
        if (d.is_zero()) fail_at(at, "division by zero");
        acc = acc * d.coefficient(Word{}).inverse();
      } else if (starts_primary()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  NcPoly power() {
    NcPoly base = primary();
    if (!accept('^')) return base;
    skip_space();
    if (peek() == '-') fail("negative exponent");
    const long k = integer();
    NcPoly r(alphabet_, QRat(1));
    for (long i = 0; i < k; ++i) r = r * base;
    return r;
  }

  long integer() {
    skip_space();
    const std::size_t start = pos_;
    bool neg = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail_at(start, "expected an integer");
    if (pos_ - digits > 9) fail_at(start, "integer too large");
    const long v = std::stol(std::string(text_.substr(digits, pos_ - digits)));
    return neg ? -v : v;
  }

  NcPoly primary() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NcPoly inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return NcPoly(alphabet_, QRat(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));

    if (name == "q") return NcPoly(alphabet_, QRat::q());
    if (name == "s") return NcPoly(alphabet_, QRat::s());
    if (auto l = alphabet_->find(name)) return NcPoly::letter(alphabet_, *l);
    if ((name == "P" || name == "K" || name == "C" || name == "Q") && peek() == '(') return form(name, start);
    fail_at(start, "unknown symbol '" + name + "'");
  }

  void require_x(std::size_t at, const std::string& form) const {
    if (!alphabet_->has_family("x")) fail_at(at, form + " needs the x alphabet");
  }

  NcPoly form(const std::string& name, std::size_t at) {
    expect('(');
    try {
      if (name == "P") {
        skip_space();
        const std::size_t gen_at = pos_;
        NcPoly g = primary();
        if (g.size() != 1 || g.degree() != 1 || !g.leading().second.is_one())
          fail_at(gen_at, "P needs a single letter");
        expect(';');
        const long mu = integer();
        expect(',');
        const long lambda = integer();
        expect(')');
        return qproduct(alphabet_, g.leading().first[0], SpectralWindow(lambda, mu));
      }
      require_x(at, name);
      if (name == "K" || name == "C") {
        int n = 1;
        if (!accept(')')) {
          n = static_cast<int>(integer());
          expect(')');
        }
        return name == "K" ? k_element(alphabet_, n) : c_element(alphabet_, n);
      }
      const long lambda = integer();
      long nu = 0;
      if (accept(',')) nu = integer();
      expect(')');
      return big_q(alphabet_, alphabet_->family_count("x"), SpectralWindow(lambda, nu));
    } catch (const ParseError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      fail_at(at, e.what());
    }
  }

  std::string_view text_;
  AlphabetPtr alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace

NcPoly parse_poly(std::string_view text, const AlphabetPtr& alphabet) { return Parser(text, alphabet).parse(); }

QRat parse_scalar(std::string_view text) {
  static const AlphabetPtr none = std::make_shared<const Alphabet>(std::vector<Alphabet::Family>{});
  NcPoly p = parse_poly(text, none);
  return p.coefficient(Word{});
}

void write_rules(std::ostream& os, const RuleSet& rules) {
  os << "# alphabet:";
  for (const auto& f : rules.alphabet()->families()) os << " " << f.name << " " << f.count;
  os << "\n# completed_degree: ";
  if (rules.completed_degree() == kUnboundedDegree) os << "unbounded";
  else os << rules.completed_degree();
  os << "\n";
  for (const auto& r : rules.rules()) os << r.lhs.to_string(*rules.alphabet()) << " -> " << r.rhs.to_string() << "\n";
}

RuleSet read_rules(std::istream& is) {
  AlphabetPtr alphabet;
  int completed = -1;
  bool have_degree = false;
  std::vector<RewriteRule> rules;
  std::string line;
  int line_no = 0;
  auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
  while (std::getline(is, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream hs(line.substr(first + 1));
      std::string key;
      hs >> key;
      if (key == "alphabet:") {
        std::vector<Alphabet::Family> families;
        std::string fname;
        int count;
        while (hs >> fname >> count) families.push_back({fname, count});
        alphabet = std::make_shared<const Alphabet>(std::move(families));
      } else if (key == "completed_degree:") {
        std::string v;
        hs >> v;
        try {
          completed = v == "unbounded" ? kUnboundedDegree : std::stoi(v);
        } catch (const std::exception&) {
          throw std::invalid_argument(where() + "bad completed_degree '" + v + "'");
        }
        have_degree = true;
      }
      continue;
    }
    if (!alphabet) throw std::invalid_argument(where() + "rule before the alphabet header");
    const auto arrow = line.find("->");
    if (arrow == std::string::npos) throw std::invalid_argument(where() + "expected 'LHS -> POLY'");
    try {
      NcPoly lhs = parse_poly(line.substr(0, arrow), alphabet);
      if (lhs.size() != 1 || !lhs.leading().second.is_one())
        throw std::invalid_argument("left side must be a single word");
      rules.push_back({lhs.leading().first, parse_poly(line.substr(arrow + 2), alphabet)});
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where() + e.what());
    }
  }
  if (!alphabet) throw std::invalid_argument("rule file has no alphabet header");
  if (!have_degree) throw std::invalid_argument("rule file has no completed_degree header");
  return RuleSet(alphabet, std::move(rules), completed);
}

}  // namespace qserre
