#include <doctest.h>

#include "gen.hpp"
#include "lamshift/bisim.hpp"
#include "lamshift/parse.hpp"
#include "lamshift/reduction.hpp"

using namespace lamshift;
using lamshift::testing::TermGen;

namespace {

constexpr int kCases = 2000;  // the acceptance suite runs the full 10000

CheckConfig prop_cfg() {
  CheckConfig cfg;
  cfg.fuel = 200;
  cfg.max_pairs = 150;
  cfg.up_to_depth = 4;
  return cfg;
}

}  // namespace

TEST_CASE("property: parse/print round trip") {
  TermGen gen(0x5071);
  for (int i = 0; i < kCases; ++i) {
    Term t = gen.term(8);
    CAPTURE(print(t));
    CHECK(alpha_equal(parse(print(t)), t));
  }
}

TEST_CASE("property: substitution basics") {
  TermGen gen(0x5072);
  for (int i = 0; i < kCases; ++i) {
    Term t = gen.term(6);
    VarName x{"x", 0};
    // t[x := x] == t
    CHECK(alpha_equal(substitute(t, x, mk_var(x)), t));
    // free_vars(t[x:=v]) within (fv(t) - x) + fv(v)
    Term v = gen.closed_value(3);
    auto fv_after = free_vars(substitute(t, x, v));
    auto fv_before = free_vars(t);
    fv_before.erase(x);
    for (const auto& var : fv_after) CHECK(fv_before.count(var));
  }
}

TEST_CASE("property: split/plug inverse on random contexts") {
  TermGen gen(0x5080);
  for (int i = 0; i < kCases; ++i) {
    EvalCtx e;
    uint32_t len = gen.pick(6);
    for (uint32_t j = 0; j < len; ++j) {
      switch (gen.pick(3)) {
        case 0: e.frames.push_back(Frame::delimiter()); break;
        case 1: e.frames.push_back(Frame::fun_before(gen.term(3))); break;
        default: {
          Term t = gen.term(3);
          e.frames.push_back(Frame::arg_of_value(is_value(t) ? t : mk_lam(VarName{"v", 0}, t)));
        }
      }
    }
    Term probe = mk_var(VarName{"hole", 0});
    SplitResult s = split_at_first_reset(e);
    if (const auto* p = std::get_if<SplitPure>(&s)) {
      CHECK(alpha_equal(plug(p->inner, probe), plug(e, probe)));
      CHECK(as_pure(e).has_value());
    } else {
      const auto& a = std::get<SplitAround>(s);
      for (const auto& f : a.inner.frames) CHECK(f.kind != FrameKind::Delimiter);
      CHECK(alpha_equal(plug(a.outer, mk_reset(plug(a.inner, probe))), plug(e, probe)));
    }
  }
}

TEST_CASE("property: reduction determinism and replug identity") {
  TermGen gen(0x5073);
  for (int i = 0; i < kCases; ++i) {
    Term t = gen.term(8);
    Decomposition d = decompose(t);
    if (const auto* nf = std::get_if<NormalForm>(&d)) {
      CHECK(alpha_equal(replug(*nf), t));
      CHECK_FALSE(step(t).has_value());
    } else {
      const auto& s = std::get<Split>(d);
      CHECK(alpha_equal(plug(s.ctx, redex_term(s.redex)), t));
    }
    auto ts = trace(t, 40);
    for (size_t j = 0; j + 1 < ts.size(); ++j) {
      auto next = step(ts[j]);
      REQUIRE(next.has_value());
      CHECK(alpha_equal(*next, ts[j + 1]));
    }
  }
}

TEST_CASE("property: reduction commutes with value substitution") {
  TermGen gen(0x5074);
  int exercised = 0;
  for (int i = 0; i < kCases; ++i) {
    Term t = gen.term(7);
    auto next = step(t);
    if (!next) continue;
    Term v = gen.closed_value(3);
    VarName x{"x", 0};
    if (!occurs_free(t, x)) continue;
    ++exercised;
    auto stepped = step(substitute(t, x, v));
    REQUIRE(stepped.has_value());
    CHECK(alpha_equal(*stepped, substitute(*next, x, v)));
  }
  CHECK(exercised > kCases / 20);
}

TEST_CASE("property: delimited terms never get control-stuck") {
  TermGen gen(0x5075);
  for (int i = 0; i < kCases; ++i) {
    Term t = mk_reset(gen.term(7));
    Outcome o = evaluate(t, 200);
    CHECK_FALSE(std::holds_alternative<ControlStuckNf>(o));
    // every intermediate reduct is a value or keeps its outer delimiter
    auto ts = trace(t, 30);
    for (const auto& u : ts)
      CHECK((is_value(u) || u->kind == TermKind::Reset));
  }
}

TEST_CASE("property: fuel monotonicity") {
  TermGen gen(0x5076);
  for (int i = 0; i < kCases / 4; ++i) {
    Term t = gen.term(7);
    Outcome o = evaluate(t, 60);
    if (std::holds_alternative<FuelExhausted>(o)) continue;
    Outcome o2 = evaluate(t, 200);
    CHECK(o.index() == o2.index());
    CHECK(alpha_equal(outcome_term(o), outcome_term(o2)));
  }
}

TEST_CASE("property: reset idempotence at checker level") {
  TermGen gen(0x5077);
  CheckConfig cfg = prop_cfg();
  int bisimilar = 0;
  for (int i = 0; i < kCases / 4; ++i) {
    Term t = gen.term(6);
    if (std::holds_alternative<FuelExhausted>(evaluate(mk_reset(t), cfg.fuel))) continue;
    Verdict v = check(mk_reset(t), mk_reset(mk_reset(t)), cfg);
    INFO(print(t));
    CHECK_FALSE(std::holds_alternative<NotBisimilar>(v));
    bisimilar += std::holds_alternative<Bisimilar>(v) ? 1 : 0;
  }
  CHECK(bisimilar > 0);
}

TEST_CASE("property: plain bisimilarity is contained in refined") {
  TermGen gen(0x5078);
  CheckConfig cfg = prop_cfg();
  int plain_hits = 0;
  for (int i = 0; i < kCases / 4; ++i) {
    Term t0 = gen.term(6);
    Term t1;
    switch (gen.pick(4)) {
      case 0: t1 = mk_reset(t0); break;
      case 1: t1 = gen.term(6); break;
      case 2: t1 = mk_app(mk_lam(VarName{"e", 0}, mk_var("e")), t0); break;
      default: t1 = t0; break;
    }
    cfg.mode = Mode::Plain;
    Verdict p = check(t0, t1, cfg);
    if (!std::holds_alternative<Bisimilar>(p)) continue;
    ++plain_hits;
    cfg.mode = Mode::Refined;
    Verdict r = check(t0, t1, cfg);
    INFO(print(t0), " vs ", print(t1));
    CHECK_FALSE(std::holds_alternative<NotBisimilar>(r));
  }
  CHECK(plain_hits > 0);
}

TEST_CASE("property: every bisimilar witness replays closed") {
  TermGen gen(0x5079);
  CheckConfig cfg = prop_cfg();
  int witnesses = 0;
  for (int i = 0; i < kCases / 8; ++i) {
    Term t0 = gen.term(5);
    Term t1 = gen.pick(2) == 0 ? mk_reset(t0) : gen.term(5);
    for (Mode m : {Mode::Plain, Mode::Refined}) {
      cfg.mode = m;
      Verdict v = check(t0, t1, cfg);
      if (const auto* b = std::get_if<Bisimilar>(&v)) {
        ++witnesses;
        std::string why;
        INFO(print(t0), " vs ", print(t1), ": ", why);
        CHECK(witness_closed(b->witness, cfg, &why));
      }
    }
  }
  CHECK(witnesses > 0);
}

TEST_CASE("property: beta-omega pairs are never rejected") {
  TermGen gen(0x507a);
  CheckConfig cfg = prop_cfg();
  for (int i = 0; i < kCases / 8; ++i) {
    VarName x{"hole", 0};
    PureCtx f = gen.pure_ctx(1 + gen.pick(2), x);
    Term t = gen.term(4);
    Term lhs = mk_app(mk_lam(x, plug(f, mk_var(x))), t);
    Term rhs = plug(f, t);
    Verdict v = check(lhs, rhs, cfg);
    INFO(print(lhs), "  vs  ", print(rhs));
    CHECK_FALSE(std::holds_alternative<NotBisimilar>(v));
    // when the plugged terms themselves evaluate, the verdict is positive
    if (!std::holds_alternative<FuelExhausted>(evaluate(lhs, cfg.fuel)) &&
        !std::holds_alternative<FuelExhausted>(evaluate(rhs, cfg.fuel))) {
      bool bisim_or_budget = std::holds_alternative<Bisimilar>(v) ||
                             (std::holds_alternative<Inconclusive>(v) &&
                              std::get<Inconclusive>(v).reason ==
                                  InconclusiveReason::PairBudgetExceeded);
      CHECK(bisim_or_budget);
    }
  }
}
