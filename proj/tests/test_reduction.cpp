#include <doctest.h>

#include "lamshift/parse.hpp"
#include "lamshift/reduction.hpp"

using namespace lamshift;

namespace {

Term P(const char* s) { return parse(s); }

}  // namespace

TEST_CASE("decompose finds the unique redex") {
  // beta at the top
  Decomposition d = decompose(P("(\\x. x) (\\y. y)"));
  auto& s = std::get<Split>(d);
  CHECK(s.ctx.frames.empty());
  CHECK(std::holds_alternative<BetaRedex>(s.redex));

  // capture with F = ([] (shift k2. \x. x x)) ((\x. x x) (\x. x x))
  Term t = P("< (shift k1. (\\x. x) (k1 (\\x. x))) (shift k2. \\x. x x) ((\\x. x x) (\\x. x x)) >");
  d = decompose(t);
  auto& s2 = std::get<Split>(d);
  CHECK(s2.ctx.frames.empty());
  auto& cap = std::get<CaptureRedex>(s2.redex);
  CHECK(cap.ctx.frames.size() == 2);
  CHECK(alpha_equal(plug(cap.ctx, mk_var("hole")),
                    P("(hole (shift k2. \\x. x x)) ((\\x. x x) (\\x. x x))")));

  // open-stuck classification
  d = decompose(P("x (\\y. y)"));
  auto& nf = std::get<NormalForm>(d);
  auto& open = std::get<OpenStuckNf>(nf);
  CHECK(open.ctx.frames.empty());
  CHECK(open.head == VarName{"x", 0});
}

TEST_CASE("single steps") {
  // the first displayed reduction of the capture example
  Term t0 = P("< (shift k1. (\\x. x) (k1 (\\x. x))) (shift k2. \\x. x x) ((\\x. x x) (\\x. x x)) >");
  Term expect = P("< (\\x. x) ((\\x9. < (x9 (shift k2. \\x. x x)) ((\\x. x x) (\\x. x x)) >) (\\x. x)) >");
  auto t1 = step(t0);
  REQUIRE(t1.has_value());
  CHECK(alpha_equal(*t1, expect));

  // <v> -> v
  CHECK(alpha_equal(*step(P("< \\x. x >")), P("\\x. x")));

  // values are normal forms
  CHECK_FALSE(step(P("\\x. x")).has_value());
  CHECK_FALSE(step(P("shift k. k k")).has_value());
  CHECK_FALSE(step(P("x (\\y. y)")).has_value());
}

TEST_CASE("evaluate") {
  Term t = P("< (shift k1. (\\x. x) (k1 (\\x. x))) (shift k2. \\x. x x) ((\\x. x x) (\\x. x x)) >");
  Outcome o = evaluate(t, 100);
  auto& v = std::get<ValueNf>(o);
  CHECK(alpha_equal(v.value, P("\\x. x x")));

  o = evaluate(P("(\\x. x x) (\\x. x x)"), 1000);
  auto& f = std::get<FuelExhausted>(o);
  CHECK(f.steps == 1000);

  o = evaluate(P("x (\\y. y)"), 5);
  CHECK(std::holds_alternative<OpenStuckNf>(o));

  o = evaluate(P("(\\y. y) (shift k. k)"), 50);
  CHECK(std::holds_alternative<ControlStuckNf>(o));
}

TEST_CASE("trace reproduces the worked capture example") {
  Term t = P("< (shift k1. (\\x. x) (k1 (\\x. x))) (shift k2. \\x. x x) ((\\x. x x) (\\x. x x)) >");
  auto ts = trace(t, 100);
  // the six displayed intermediate terms plus the final answer
  const char* expected[] = {
      "< (shift k1. (\\x. x) (k1 (\\x. x))) (shift k2. \\x. x x) ((\\x. x x) (\\x. x x)) >",
      "< (\\x. x) ((\\u. < (u (shift k2. \\x. x x)) ((\\x. x x) (\\x. x x)) >) (\\x. x)) >",
      "< (\\x. x) (< ((\\x. x) (shift k2. \\x. x x)) ((\\x. x x) (\\x. x x)) >) >",
      "< (\\x. x) (< \\x. x x >) >",
      "< (\\x. x) (\\x. x x) >",
      "< \\x. x x >",
      "\\x. x x",
  };
  REQUIRE(ts.size() == 7);
  for (size_t i = 0; i < 7; ++i) CHECK(alpha_equal(ts[i], P(expected[i])));

  auto single = trace(P("\\x. x"), 10);
  CHECK(single.size() == 1);

  auto nested = trace(P("< < \\y. y > >"), 10);
  REQUIRE(nested.size() == 3);
  CHECK(alpha_equal(nested[0], P("< < \\y. y > >")));
  CHECK(alpha_equal(nested[1], P("< \\y. y >")));
  CHECK(alpha_equal(nested[2], P("\\y. y")));
}

TEST_CASE("divergence by cycle") {
  CHECK(proves_divergence_by_cycle(P("(\\x. x x) (\\x. x x)"), 50));
  CHECK(proves_divergence_by_cycle(P("x ((\\x. x x) (\\x. x x))"), 50));
  CHECK_FALSE(proves_divergence_by_cycle(P("(\\x. x) (\\y. y)"), 50));
  // self-application loops back to an alpha-equal term
  Term theta2 = P("(\\x. \\y. y (\\z. x x y z)) (\\x. \\y. y (\\z. x x y z))");
  CHECK(proves_divergence_by_cycle(mk_app(mk_app(theta2, P("\\q. q")), P("\\r. r")), 200));
  // grows forever without revisiting a term
  CHECK_FALSE(proves_divergence_by_cycle(mk_app(mk_app(theta2, P("\\q. q q")), P("\\r. r")), 200));
}

TEST_CASE("evaluation respects the size cap") {
  Term theta2 = P("(\\x. \\y. y (\\z. x x y z)) (\\x. \\y. y (\\z. x x y z))");
  Term grower = mk_app(mk_app(theta2, P("\\q. q q")), P("\\r. r"));
  EvalLimits lim;
  lim.fuel = 1u << 20;
  lim.max_term_size = 2048;
  Outcome o = evaluate(grower, lim);
  auto& f = std::get<FuelExhausted>(o);
  CHECK(f.last->size > 2048);
  CHECK(f.steps < lim.fuel);
}
