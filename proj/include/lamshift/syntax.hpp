#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace lamshift {

// Variable names carry an integer slot so renaming never has to invent
// string suffixes; slot 0 is what the surface syntax produces, higher
// slots print as `base%index`.
struct VarName {
  std::string base;
  uint32_t index = 0;

  friend bool operator==(const VarName&, const VarName&) = default;
  friend auto operator<=>(const VarName&, const VarName&) = default;
};

std::string to_string(const VarName& v);

enum class TermKind { Var, Lam, App, Shift, Reset };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

// Immutable, structurally shared tree. `size` is the node count, used
// for growth caps during evaluation.
struct TermNode {
  TermKind kind;
  VarName var;   // Var payload, or Lam/Shift binder
  Term a;        // Lam/Shift/Reset body; App function
  Term b;        // App argument
  uint32_t size = 1;
};

Term mk_var(VarName v);
Term mk_var(std::string base, uint32_t index = 0);
Term mk_lam(VarName binder, Term body);
Term mk_app(Term fun, Term arg);
Term mk_shift(VarName binder, Term body);
Term mk_reset(Term body);

bool is_value(const Term& t);

std::set<VarName> free_vars(const Term& t);
bool occurs_free(const Term& t, const VarName& x);

// Smallest index >= base.index + 1 making {base.base, index} miss `avoid`.
VarName fresh_like(const VarName& base, const std::set<VarName>& avoid);

// Capture-avoiding substitution of a value v for x in t. The reduction
// rules only ever substitute values, so non-values are rejected.
Term substitute(const Term& t, const VarName& x, const Term& v);

bool alpha_equal(const Term& t0, const Term& t1);

// Structural (name-exact) equality and hashing; used on canonical forms.
bool term_eq(const Term& t0, const Term& t1);
size_t term_hash(const Term& t);
uint64_t term_hash_seeded(const Term& t, uint64_t seed);

// Largest fresh-supply index occurring anywhere in t (bound or free).
uint32_t max_var_index(const Term& t);

// Joint renaming used by the checker: bound variables become a%1, a%2, ...
// per term, and free supply-generated variables (index > 0) become c%1,
// c%2, ... via the shared map, preserving sharing across the two terms of
// a pair. Surface variables (index 0) are left alone.
struct CanonicalRenaming {
  std::map<VarName, VarName> free_map;
  uint32_t next_free = 1;
};

Term canonicalize(const Term& t, CanonicalRenaming& ren);
Term canonical_term(const Term& t);

// ---------------------------------------------------------------------
// Contexts. Stored inside-out: frames[0] is the frame immediately around
// the hole, so plugging and splitting at the first delimiter are single
// scans.

enum class FrameKind { AppArgOfValue, AppFunBefore, Delimiter };

struct Frame {
  FrameKind kind;
  Term t;  // the value for AppArgOfValue, the argument for AppFunBefore

  static Frame arg_of_value(Term v) { return {FrameKind::AppArgOfValue, std::move(v)}; }
  static Frame fun_before(Term arg) { return {FrameKind::AppFunBefore, std::move(arg)}; }
  static Frame delimiter() { return {FrameKind::Delimiter, nullptr}; }
};

bool frame_eq(const Frame& f0, const Frame& f1);

// F ::= [] | v F | F t   (no delimiter around the hole)
struct PureCtx {
  std::vector<Frame> frames;
};

// E ::= [] | v E | E t | <E>
struct EvalCtx {
  std::vector<Frame> frames;
};

EvalCtx to_eval_ctx(const PureCtx& f);
std::optional<PureCtx> as_pure(const EvalCtx& e);

Term plug(const PureCtx& f, const Term& t);
Term plug(const EvalCtx& e, const Term& t);
Term plug_frame(const Frame& f, const Term& t);

std::set<VarName> free_vars(const EvalCtx& e);

struct SplitPure {
  PureCtx inner;
};
struct SplitAround {
  EvalCtx outer;  // everything beyond the first enclosing delimiter
  PureCtx inner;  // maximal pure prefix around the hole
};
using SplitResult = std::variant<SplitPure, SplitAround>;

// Decomposes e as either a pure context or outer[<inner>], consuming the
// first delimiter.
SplitResult split_at_first_reset(const EvalCtx& e);

}  // namespace lamshift
