#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "lamshift/syntax.hpp"

namespace lamshift {

// The three redex shapes: (\x. t) v, <F[shift k. t]>, <v>.
struct BetaRedex {
  VarName binder;
  Term body;
  Term arg;  // value
};
struct CaptureRedex {
  PureCtx ctx;  // no delimiter around the hole
  VarName binder;
  Term body;
};
struct ResetValueRedex {
  Term value;
};
using Redex = std::variant<BetaRedex, CaptureRedex, ResetValueRedex>;

Term redex_term(const Redex& r);
// Contracts the redex: beta substitutes, capture reifies the pure context
// as \x. <F[x]> with x chosen fresh for F, reset-of-value drops the
// delimiter.
Term contract(const Redex& r);

struct ValueNf {
  Term value;
};
struct ControlStuckNf {  // F[shift k. body]
  PureCtx ctx;
  VarName binder;
  Term body;
};
struct OpenStuckNf {  // E[head arg]
  EvalCtx ctx;
  VarName head;
  Term arg;  // value
};
using NormalForm = std::variant<ValueNf, ControlStuckNf, OpenStuckNf>;

Term replug(const NormalForm& n);

struct FuelExhausted {
  Term last;
  uint64_t steps;
};
using Outcome = std::variant<ValueNf, ControlStuckNf, OpenStuckNf, FuelExhausted>;

Term outcome_term(const Outcome& o);
const char* outcome_class_name(const Outcome& o);

struct Split {
  EvalCtx ctx;
  Redex redex;
};
// Unique decomposition: every term is either a normal form or E[r] for
// exactly one E and r; found by a single left-to-right scan.
using Decomposition = std::variant<NormalForm, Split>;

Decomposition decompose(const Term& t);

// One deterministic reduction step; nothing iff t is a normal form.
std::optional<Term> step(const Term& t);

struct EvalLimits {
  uint64_t fuel = 10000;
  // Terms growing past this node count are reported as FuelExhausted;
  // keeps runaway expansions from stalling searches.
  uint32_t max_term_size = 1u << 22;
};

Outcome evaluate(const Term& t, uint64_t fuel);
Outcome evaluate(const Term& t, const EvalLimits& limits);

// [t, step(t), ...] up to a normal form or the fuel bound.
std::vector<Term> trace(const Term& t, uint64_t fuel);

// True iff the reduction sequence from t revisits an alpha-equivalent
// term within the given number of steps -- a proof of divergence.
bool proves_divergence_by_cycle(const Term& t, uint64_t fuel);

}  // namespace lamshift
