#pragma once

// Expression syntax and the rule-set text format.
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := power (['*'|'/'] power)*        juxtaposition multiplies
//   power   := primary ['^' integer]
//   primary := integer | q | s | x<k> | chi<k> | e<k> | '(' expr ')'
//            | P(x<k>; mu, lambda) | K() | C() | Q(lambda) | Q(lambda, nu)
//
// Division is only by nonzero scalars. K, C and Q need the x alphabet; K and
// C take an optional pair index, K(n).

#include "qserre/rewrite.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qserre {

class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t position, const std::string& what);
  /// 0-based offset into the input.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

NcPoly parse_poly(std::string_view text, const AlphabetPtr& alphabet);
/// Parses an element of Q(s); letters are rejected.
QRat parse_scalar(std::string_view text);

/// `# alphabet: x 3`, `# completed_degree: 10` then one `LHS -> POLY` per rule.
void write_rules(std::ostream& os, const RuleSet& rules);
RuleSet read_rules(std::istream& is);

}  // namespace qserre
