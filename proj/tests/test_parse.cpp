#include "qserre/parse.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace qserre;

namespace {

QRat q() { return QRat::q(); }

std::size_t error_position(std::string_view text, const AlphabetPtr& a) {
  try {
    parse_poly(text, a);
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("no parse error for " << text);
  return 0;
}

}  // namespace

TEST_CASE("scalars") {
  CHECK(parse_scalar("q") == q());
  CHECK(parse_scalar("s^2") == q());
  CHECK(parse_scalar("(1+q)/q") == (QRat(1) + q()) / q());
  CHECK(parse_scalar("1/(1-q)") == (QRat(1) - q()).inverse());
  CHECK(parse_scalar("-3/4") == QRat(-3) / QRat(4));
  CHECK(parse_scalar("2 q^3") == QRat(2) * QRat::q_pow(3));
  CHECK(parse_scalar("(q^2-1)/(q-1)") == QRat(1) + q());
  CHECK_THROWS_AS(parse_scalar("x1"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1/(q-q)"), ParseError);
}

TEST_CASE("polynomials") {
  auto a = Alphabet::x_family(2);
  CHECK(parse_poly("x2*x1*x1", a) == NcPoly(a, Word{1, 0, 0}));
  CHECK(parse_poly("x2 x1 x1", a) == NcPoly(a, Word{1, 0, 0}));
  CHECK(parse_poly("x1^3", a) == NcPoly(a, Word{0, 0, 0}));
  CHECK(parse_poly("(x1 + x2)^2", a) ==
        NcPoly(a, Word{0, 0}) + NcPoly(a, Word{0, 1}) + NcPoly(a, Word{1, 0}) + NcPoly(a, Word{1, 1}));
  CHECK(parse_poly("x1^0", a) == NcPoly(a, QRat(1)));
  CHECK(parse_poly("x1 x2 / (1-q)", a) == (QRat(1) - q()).inverse() * NcPoly(a, Word{0, 1}));
  CHECK(parse_poly("-x1 + 1", a) == NcPoly(a, QRat(1)) - NcPoly(a, Word{0}));
}

TEST_CASE("named forms") {
  auto a = Alphabet::x_family(2);
  CHECK(parse_poly("P(x1; 1, 1)", a) == NcPoly(a, QRat(1)));
  CHECK(parse_poly("P(x2; 0, 2)", a) == qproduct(a, 1, {2, 0}));
  CHECK(parse_poly("P(x1; -1, 1)", a) == qproduct(a, 0, {1, -1}));
  CHECK(parse_poly("C() - q*K()", a) == NcPoly(a, Word{0, 1}));
  CHECK(parse_poly("K(1)", a) == k_element(a));
  CHECK(parse_poly("Q(2)", a) == big_q(a, 2, {2, 0}));
  CHECK(parse_poly("Q(3, 1)", a) == big_q(a, 2, {3, 1}));
  CHECK_THROWS_AS(parse_poly("P(x1; 2, 1)", a), ParseError);
  CHECK_THROWS_AS(parse_poly("K(2)", a), ParseError);
  CHECK_THROWS_AS(parse_poly("K()", Alphabet::chi_e(2)), ParseError);
}

TEST_CASE("errors carry positions") {
  auto a = Alphabet::x_family(2);
  CHECK(error_position("x1 + y", a) == 5);
  CHECK(error_position("x3", a) == 0);
  CHECK(error_position("x1 * (x2", a) == 8);
  CHECK(error_position("x1 ^ -1", a) == 5);
  CHECK(error_position("x1 / x2", a) == 3);
  CHECK(error_position("", a) == 0);
  CHECK(error_position("x1 )", a) == 3);
  try {
    parse_poly("x1 + y", a);
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("column 6") != std::string::npos);
    CHECK(msg.find("'y'") != std::string::npos);
  }
}

TEST_CASE("printing then parsing is the identity") {
  std::mt19937_64 rng(31);
  for (const auto& a : {Alphabet::x_family(3), Alphabet::chi_e(2)}) {
    for (int i = 0; i < 100; ++i) {
      NcPoly p = testing::random_poly(rng, a, 4, 5);
      p.add_term(testing::random_word(rng, a->size(), 2), testing::random_qrat(rng, true));
      CAPTURE(p.to_string());
      CHECK(parse_poly(p.to_string(), a) == p);
    }
  }
}

TEST_CASE("rule files round trip") {
  for (const RuleSet& rs : {complete(base_rules(3), 5), chi_e_rules(2), base_rules(1)}) {
    std::stringstream ss;
    write_rules(ss, rs);
    const RuleSet back = read_rules(ss);
    CHECK(*back.alphabet() == *rs.alphabet());
    CHECK(back.completed_degree() == rs.completed_degree());
    REQUIRE(back.size() == rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
      CHECK(back.rules()[i].lhs == rs.rules()[i].lhs);
      CHECK(back.rules()[i].rhs == rs.rules()[i].rhs);
    }
  }
}

TEST_CASE("malformed rule files") {
  auto read = [](const std::string& text) {
    std::istringstream is(text);
    return read_rules(is);
  };
  CHECK_THROWS_AS(read("x2 x1 -> x1 x2\n"), std::invalid_argument);
  CHECK_THROWS_AS(read("# alphabet: x 2\n# completed_degree: 4\nx2 x1 x1\n"), std::invalid_argument);
  CHECK_THROWS_AS(read("# alphabet: x 2\n# completed_degree: 4\nx1 x2 -> x2 x1\n"), std::invalid_argument);
  CHECK_THROWS_AS(read("# alphabet: x 2\nx1 -> x2\n"), std::invalid_argument);
  CHECK_THROWS_AS(read("# completed_degree: 4\n"), std::invalid_argument);
  CHECK_NOTHROW(read("# alphabet: x 2\n# completed_degree: unbounded\n\nx2 x1 -> x1 x2\n"));
}
