#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <utility>
#include <vector>

#include "kbrec/order.hpp"
#include "support/support.hpp"

using namespace kbrec;
using namespace kbrec::testsupport;

namespace {

Term fx() { return F("f", {V("x")}); }

TermGenOptions order_gen() {
  TermGenOptions opt;
  opt.symbols = {{"f", 2}, {"g", 1}, {"h", 1}, {"a", 0}, {"b", 0}};
  opt.vars = {"x", "y", "z"};
  opt.max_depth = 3;
  return opt;
}

}  // namespace

TEST_CASE("lpo compares by subterm, precedence and lexicographic cases") {
  Precedence none;
  CHECK(lpo_gt(none, F("f", {fx()}), fx()));
  CHECK_FALSE(lpo_gt(none, V("x"), fx()));
  CHECK(lpo_gt(none, fx(), V("x")));
  CHECK_FALSE(lpo_gt(none, V("x"), V("x")));
  CHECK_FALSE(lpo_gt(none, V("x"), V("y")));

  CHECK(lpo_gt(none, F("g", {fx()}), F("g", {V("x")})));
  CHECK_FALSE(lpo_gt(none, F("g", {V("x")}), F("g", {fx()})));

  SUBCASE("precedence drives comparisons of distinct roots") {
    Precedence fg = Precedence::from_pairs({{"f", "g"}});
    CHECK(lpo_gt(fg, fx(), F("g", {V("x")})));
    CHECK_FALSE(lpo_gt(fg, F("g", {V("x")}), fx()));
    CHECK(lpo_gt(fg, F("f", {fx()}), F("g", {fx()})));
    CHECK_FALSE(lpo_gt(fg, fx(), F("g", {fx()})));
  }

  SUBCASE("equal roots compare argument tuples lexicographically") {
    Precedence ba = Precedence::from_pairs({{"b", "a"}});
    CHECK(lpo_gt(ba, F("f", {F("b"), F("a")}), F("f", {F("a"), F("b")})));
    CHECK_FALSE(lpo_gt(ba, F("f", {F("a"), F("b")}), F("f", {F("b"), F("a")})));
  }

  SUBCASE("ground constants need precedence") {
    Precedence none2;
    CHECK_FALSE(lpo_gt(none2, F("a"), F("b")));
    CHECK_FALSE(lpo_gt(none2, F("b"), F("a")));
    Precedence ab = Precedence::from_pairs({{"a", "b"}});
    CHECK(lpo_gt(ab, F("a"), F("b")));
  }
}

TEST_CASE("orient tries left-to-right first") {
  Precedence none;
  CHECK(orient(none, F("f", {fx()}), fx()) == Orientation::LeftToRight);
  CHECK(orient(none, F("g", {V("x")}), F("g", {fx()})) ==
        Orientation::RightToLeft);
  CHECK(orient(none, fx(), F("g", {V("x")})) == Orientation::Unorientable);
  CHECK(orient(none, V("x"), V("y")) == Orientation::Unorientable);
  CHECK(orient(none, fx(), fx()) == Orientation::Unorientable);

  Precedence fg = Precedence::from_pairs({{"f", "g"}});
  CHECK(orient(fg, fx(), F("g", {V("x")})) == Orientation::LeftToRight);
  CHECK(orient(fg, F("g", {V("x")}), fx()) == Orientation::RightToLeft);

  CHECK(orient(none, F("f", {V("x"), V("y")}), F("f", {V("y"), V("x")})) ==
        Orientation::Unorientable);
}

TEST_CASE("check_termination demands a strict decrease per rule") {
  Precedence none;
  Trs twoUnary = {{1, F("f", {fx()}), fx()},
                  {2, F("g", {F("g", {V("x")})}), F("g", {V("x")})}};
  CHECK(check_termination(none, twoUnary));

  Trs loop = {{1, F("f"), F("f")}};
  CHECK_FALSE(check_termination(none, loop));

  Trs varLhs = {{1, V("x"), fx()}};
  CHECK_FALSE(check_termination(none, varLhs));

  Trs extraVar = {{1, fx(), V("y")}};
  CHECK_FALSE(check_termination(none, extraVar));

  Trs needsPrec = {{1, fx(), F("g", {V("x")})}};
  CHECK_FALSE(check_termination(none, needsPrec));
  CHECK(check_termination(Precedence::from_pairs({{"f", "g"}}), needsPrec));

  CHECK(check_termination(none, {}));
}

TEST_CASE("precedences close transitively and reject cycles") {
  Precedence p = Precedence::from_pairs({{"f", "g"}, {"g", "h"}});
  CHECK(p.gt("f", "g"));
  CHECK(p.gt("g", "h"));
  CHECK(p.gt("f", "h"));
  CHECK_FALSE(p.gt("h", "f"));
  CHECK_FALSE(p.gt("f", "f"));

  CHECK_THROWS_AS(Precedence::from_pairs({{"f", "g"}, {"g", "f"}}), InputError);
  CHECK_THROWS_AS(Precedence::from_pairs({{"f", "f"}}), InputError);
  CHECK_THROWS_AS(
      Precedence::from_pairs({{"f", "g"}, {"g", "h"}, {"h", "f"}}), InputError);
  CHECK(Precedence{}.empty());
}

TEST_CASE("parse_precedence reads comma-separated chains") {
  Precedence p = parse_precedence("PREC f > g > h, a > b");
  CHECK(p.gt("f", "g"));
  CHECK(p.gt("g", "h"));
  CHECK(p.gt("f", "h"));
  CHECK(p.gt("a", "b"));
  CHECK_FALSE(p.gt("a", "h"));

  CHECK(parse_precedence("f > g") == Precedence::from_pairs({{"f", "g"}}));
  CHECK(parse_precedence("").empty());
  CHECK(parse_precedence("   \n ").empty());

  CHECK_THROWS_AS(parse_precedence("f >"), InputError);
  CHECK_THROWS_AS(parse_precedence("f g"), InputError);
  CHECK_THROWS_AS(parse_precedence("> g"), InputError);
  CHECK_THROWS_AS(parse_precedence("f > g, g > f"), InputError);
}

TEST_CASE("lpo is a strict order stable under substitution") {
  Rng rng(7301);
  TermGenOptions big = order_gen();
  big.max_depth = 4;
  TermGenOptions mid = order_gen();
  TermGenOptions small = order_gen();
  small.max_depth = 2;
  std::vector<std::string> names = {"f", "g", "h", "a", "b"};

  int transitive_hits = 0;
  int stability_hits = 0;
  for (int round = 0; round < 1000; ++round) {
    Precedence prec = random_precedence(rng, names, 4);
    Term s = random_term(rng, big);
    mid.vars = vars(s);
    Term t = random_term(rng, mid);
    small.vars = vars(t);
    Term u = random_term(rng, small);

    CHECK_FALSE(lpo_gt(prec, s, s));
    bool both_ways = lpo_gt(prec, s, t) && lpo_gt(prec, t, s);
    CHECK_FALSE(both_ways);
    if (lpo_gt(prec, s, t)) {
      for (int tries = 0; tries < 10; ++tries) {
        if (lpo_gt(prec, t, u)) {
          ++transitive_hits;
          CHECK(lpo_gt(prec, s, u));
        }
        u = random_term(rng, small);
      }
      Subst sigma = random_subst(rng, vars(s), big);
      ++stability_hits;
      CHECK(lpo_gt(prec, apply_subst(sigma, s), apply_subst(sigma, t)));
    }

    for (const Position& p : positions(s)) {
      if (p.empty()) continue;
      CHECK(lpo_gt(prec, s, subterm_at(s, p)));
    }
  }
  CHECK(transitive_hits > 20);
  CHECK(stability_hits > 100);
}
