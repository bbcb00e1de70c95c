#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "lamshift/reduction.hpp"
#include "lamshift/syntax.hpp"

namespace lamshift {

// Monotone fresh-name source owned by one checker run. Bases "a" and "c"
// are reserved for canonical renaming and never handed out.
class FreshSupply {
 public:
  explicit FreshSupply(uint32_t start = 1) : next_(start) {}
  VarName fresh(std::string base = "x") { return VarName{std::move(base), next_++}; }
  void ensure_above(uint32_t index) { if (index >= next_) next_ = index + 1; }

 private:
  uint32_t next_;
};

struct TermPair {
  Term left;
  Term right;
};

bool pair_alpha_equal(const TermPair& p, const TermPair& q);

// Jointly renames checker-fresh free variables and all bound variables of
// both sides into a canonical sequence, so alpha-variant pairs collide in
// the visited set while shared fresh variables stay shared.
TermPair canonical_pair(const Term& t0, const Term& t1);

// v . y: a variable applies, an abstraction substitutes; avoids the
// administrative beta redex when comparing values.
Term app_val(const Term& v, const VarName& y);

struct ContextsObligation {
  EvalCtx left;
  EvalCtx right;
};
using Obligation = std::variant<TermPair, ContextsObligation>;

struct MatchMismatch {
  std::string description;
};
using MatchResult = std::variant<MatchMismatch, std::vector<Obligation>>;

enum class Mode { Plain, Refined };

// Matches two evaluation outcomes, emitting the proof obligations of the
// normal-form rules; FuelExhausted inputs are a precondition violation.
MatchResult nf_match(const Outcome& o0, const Outcome& o1, Mode mode, FreshSupply& supply);

// Relates two evaluation contexts by splitting at the first enclosing
// delimiter; shape disagreement is a mismatch.
MatchResult ctx_obligations(const EvalCtx& e0, const EvalCtx& e1, FreshSupply& supply);

struct CheckConfig {
  uint64_t fuel = 10000;
  uint32_t max_pairs = 5000;
  Mode mode = Mode::Plain;
  bool up_to_context = true;
  uint32_t up_to_depth = 6;
  bool assume_divergence = false;
};

struct Bisimilar {
  std::vector<TermPair> witness;  // insertion order; successor-closed
};
struct NotBisimilar {
  std::vector<TermPair> trace;  // root pair down to the mismatching pair
  std::string mismatch;
};
enum class InconclusiveReason { FuelExhausted, PairBudgetExceeded };
struct Inconclusive {
  InconclusiveReason reason;
  std::vector<TermPair> frontier;
};
using Verdict = std::variant<Bisimilar, NotBisimilar, Inconclusive>;

// On-the-fly worklist check: Bisimilar and NotBisimilar are definitive,
// Inconclusive reports fuel or budget exhaustion with the open pairs.
Verdict check(const Term& t0, const Term& t1, const CheckConfig& cfg = {});

// Sound bounded test for membership of p in the substitutive, reflexive
// and context closure of rel.
bool member_closc(const TermPair& p, const std::vector<TermPair>& rel, uint32_t depth);

enum class CandidateStyle { BigStep, SmallStep };

struct CandidateReport {
  struct Entry {
    TermPair pair;
    bool forward;  // false for the inverse direction
    bool pass;
    std::string detail;
  };
  std::vector<Entry> entries;
  bool all_pass = true;
};

// Verifies a user-supplied candidate relation: BigStep checks the
// closure condition on every evaluated pair, SmallStep follows single
// left-hand steps and searches right-hand reducts within the fuel bound.
CandidateReport verify_candidate(const std::vector<TermPair>& rel, const CheckConfig& cfg,
                                 CandidateStyle style);

// Machine-checks the successor-closure of a Bisimilar witness by
// replaying every pair through evaluation and matching.
bool witness_closed(const std::vector<TermPair>& witness, const CheckConfig& cfg,
                    std::string* first_failure = nullptr);

std::string verdict_json(const Verdict& v);

}  // namespace lamshift
