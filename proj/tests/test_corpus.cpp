#include <doctest.h>

#include <sstream>

#include "lamshift/corpus.hpp"
#include "lamshift/parse.hpp"

using namespace lamshift;

TEST_CASE("corpus parsing") {
  std::istringstream in(R"(-- a comment
name: sample
left: \x. x
right: \y. y
plain: bisimilar
refined: bisimilar
distinguisher: not-found
source: smoke
)");
  auto fx = load_corpus(in, "inline");
  REQUIRE(fx.size() == 1);
  CHECK(fx[0].name == "sample");
  CHECK(alpha_equal(fx[0].left, fx[0].right));
  CHECK(fx[0].expected_plain == VerdictClass::Bisimilar);
  CHECK(fx[0].expected_distinguisher == DistinguisherExpectation::NotFoundAtBound);
}

TEST_CASE("corpus rejects malformed stanzas") {
  std::istringstream missing("name: broken\nleft: x\n");
  CHECK_THROWS(load_corpus(missing, "inline"));

  std::istringstream badterm(
      "name: bad\nleft: (x\nright: x\nplain: bisimilar\nrefined: bisimilar\n"
      "distinguisher: not-found\n");
  CHECK_THROWS(load_corpus(badterm, "inline"));

  std::istringstream badverdict(
      "name: bad\nleft: x\nright: x\nplain: maybe\nrefined: bisimilar\n"
      "distinguisher: not-found\n");
  CHECK_THROWS(load_corpus(badverdict, "inline"));
}

TEST_CASE("shipped corpus loads and carries the expected fixtures") {
  auto fx = load_corpus();
  CHECK(fx.size() >= 40);
  auto has = [&](const std::string& name) {
    for (const auto& f : fx)
      if (f.name == name) return true;
    return false;
  };
  for (const char* name :
       {"defs-identity", "defs-omega", "defs-looping", "defs-theta", "defs-delta",
        "example-2-trace", "reset-idempotence-value", "reset-idempotence-open",
        "turing-vs-delimited", "curry-vs-delimited", "turing-vs-curry", "incompleteness-dupl",
        "stuck-ext", "eta", "open-stuck-reset", "shift-reset-body-app", "shift-reset-body-open",
        "beta-omega-f1-val", "prop6-f1-kuse", "prop7-f1-kuse", "prop8-f1-stuck"}) {
    INFO(name);
    CHECK(has(name));
  }

  // expected-verdict invariant: plain bisimilar forces refined bisimilar
  for (const auto& f : fx) {
    if (f.expected_plain == VerdictClass::Bisimilar) {
      INFO(f.name);
      CHECK(f.expected_refined == VerdictClass::Bisimilar);
    }
  }
}
