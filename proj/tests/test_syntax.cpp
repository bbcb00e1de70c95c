#include <doctest.h>

#include "lamshift/bisim.hpp"
#include "lamshift/parse.hpp"
#include "lamshift/syntax.hpp"

using namespace lamshift;

TEST_CASE("free variables") {
  CHECK(free_vars(parse("\\x. x")).empty());
  auto fv = free_vars(parse("x y"));
  CHECK(fv == std::set<VarName>{VarName{"x", 0}, VarName{"y", 0}});
  // shift binds its variable
  fv = free_vars(parse("shift k. x (k y)"));
  CHECK(fv == std::set<VarName>{VarName{"x", 0}, VarName{"y", 0}});
}

TEST_CASE("substitution") {
  // substitute(x, x, \y. y)
  Term t = substitute(parse("x"), VarName{"x", 0}, parse("\\y. y"));
  CHECK(alpha_equal(t, parse("\\y. y")));

  // capture avoided: (\y. x y)[x := y] is alpha-equal to \z. y z
  t = substitute(parse("\\y. x y"), VarName{"x", 0}, parse("y"));
  CHECK(alpha_equal(t, parse("\\z. y z")));
  CHECK(print(t) == "\\y%1. y y%1");

  // non-value replacement rejected
  CHECK_THROWS_AS(substitute(parse("x"), VarName{"x", 0}, parse("x x")),
                  std::invalid_argument);

  // identity cases
  Term body = parse("\\y. y y");
  CHECK(substitute(body, VarName{"x", 0}, parse("\\z. z")) == body);  // x not free
  CHECK(alpha_equal(substitute(parse("x x"), VarName{"x", 0}, mk_var("x")), parse("x x")));
}

TEST_CASE("alpha equality") {
  CHECK(alpha_equal(parse("\\x. x"), parse("\\y. y")));
  CHECK(alpha_equal(parse("shift k. k x"), parse("shift j. j x")));
  CHECK_FALSE(alpha_equal(parse("\\x. x"), parse("\\x. \\y. x")));
  CHECK_FALSE(alpha_equal(parse("x"), parse("y")));
  CHECK_FALSE(alpha_equal(parse("shift k. k x"), parse("shift j. j y")));
}

TEST_CASE("plugging frames innermost first") {
  CHECK(alpha_equal(plug(EvalCtx{}, parse("x")), parse("x")));

  EvalCtx e;
  e.frames.push_back(Frame::fun_before(parse("(\\x. x x) (\\x. x x)")));
  e.frames.push_back(Frame::arg_of_value(parse("\\x. x")));
  CHECK(print(plug(e, parse("y"))) == "(\\x. x) (y ((\\x. x x) (\\x. x x)))");
}

TEST_CASE("split at first reset") {
  // no delimiter: pure
  EvalCtx pure;
  pure.frames.push_back(Frame::fun_before(parse("z")));
  auto s = split_at_first_reset(pure);
  CHECK(std::holds_alternative<SplitPure>(s));

  // <[]> splits into empty outer and empty inner
  EvalCtx del;
  del.frames.push_back(Frame::delimiter());
  s = split_at_first_reset(del);
  auto& around = std::get<SplitAround>(s);
  CHECK(around.outer.frames.empty());
  CHECK(around.inner.frames.empty());

  // (\z. z) <[] t>  ->  outer (\z. z) [], inner [] t
  EvalCtx e;
  e.frames.push_back(Frame::fun_before(parse("t")));
  e.frames.push_back(Frame::delimiter());
  e.frames.push_back(Frame::arg_of_value(parse("\\z. z")));
  s = split_at_first_reset(e);
  auto& a2 = std::get<SplitAround>(s);
  Term x = mk_var("x");
  // replug identity: outer[<inner[x]>] == e[x]
  CHECK(alpha_equal(plug(a2.outer, mk_reset(plug(a2.inner, x))), plug(e, x)));
  CHECK(print(plug(a2.outer, x)) == "(\\z. z) x");
  CHECK(print(plug(a2.inner, x)) == "x t");
}

TEST_CASE("parser basics") {
  CHECK(print(parse("\\x. x")) == "\\x. x");
  Term omega2 = parse("<(\\x. x x) (\\x. x x)>");
  CHECK(omega2->kind == TermKind::Reset);
  Term sh = parse("shift k. i (k i)");
  CHECK(sh->kind == TermKind::Shift);
  CHECK(print(parse("x y z")) == "x y z");  // left associative
  CHECK(print(parse("(x y) z")) == "x y z");
  CHECK_FALSE(print(parse("x (y z)")) == "x y z");
  CHECK(print(parse("<x>")) == "<x>");

  CHECK_THROWS_AS(parse("shift"), ParseError);
  CHECK_THROWS_AS(parse("(x"), ParseError);
  CHECK_THROWS_AS(parse("\\shift. x"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);

  // errors carry positions
  try {
    parse("x $");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.column == 3);
  }

  // comments
  CHECK(alpha_equal(parse("x -- trailing\n y"), parse("x y")));
}

TEST_CASE("printer round trip on fresh-indexed names") {
  Term t = mk_lam(VarName{"y", 1}, mk_app(mk_var("y"), mk_var(VarName{"y", 1})));
  CHECK(print(t) == "\\y%1. y y%1");
  CHECK(alpha_equal(parse(print(t)), t));
}

TEST_CASE("canonical pair") {
  TermPair p = canonical_pair(parse("\\x. x"), parse("\\y. y"));
  CHECK(term_eq(p.left, p.right));

  // shared checker-fresh variables stay shared, distinct ones stay distinct
  Term l = mk_app(mk_var(VarName{"f", 3}), mk_var(VarName{"z", 7}));
  Term r = mk_app(mk_var(VarName{"f", 3}), mk_var(VarName{"w", 2}));
  TermPair q = canonical_pair(l, r);
  CHECK(term_eq(q.left->a, q.right->a));
  CHECK_FALSE(term_eq(q.left->b, q.right->b));

  // alpha-variant pair inputs give identical canonical pairs
  TermPair a = canonical_pair(parse("\\x. x q"), parse("\\u. u u"));
  TermPair b = canonical_pair(parse("\\v. v q"), parse("\\w. w w"));
  CHECK(term_eq(a.left, b.left));
  CHECK(term_eq(a.right, b.right));

  // surface variables are left alone
  TermPair c = canonical_pair(parse("x"), parse("x"));
  CHECK(print(c.left) == "x");
}
