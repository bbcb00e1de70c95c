#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lamshift/syntax.hpp"

namespace lamshift {

enum class Observable { ConvergesToValue, ConvergesToControlStuck, NoObservationAtFuel };

const char* to_string(Observable o);

// Maps the evaluation outcome of a closed term to its observable; open
// terms are rejected.
Observable observe(const Term& t, uint64_t fuel);

struct SearchBounds {
  uint32_t context_size = 6;      // max number of context frames
  uint32_t value_pool_size = 5;   // how many pool values to draw from
  uint64_t fuel = 10000;
};

// The probe values every search draws from: identity, omega, and the
// three shift-based probes that separate the stock counterexamples.
const std::vector<Term>& builtin_value_pool();
std::vector<Term> value_pool(const SearchBounds& bounds, const std::vector<Term>& extensions = {});

// Exhaustive stream of closed evaluation contexts of at most
// `context_size` frames, sizes ascending, frame choices lexicographic.
class ContextEnumerator {
 public:
  ContextEnumerator(const SearchBounds& bounds, std::vector<Term> pool);
  bool next(EvalCtx& out);

 private:
  void build(EvalCtx& out) const;

  std::vector<Term> pool_;
  uint32_t max_size_;
  uint32_t size_ = 0;
  std::vector<uint32_t> digits_;
  bool done_ = false;
  bool first_ = true;
};

struct Distinguisher {
  EvalCtx context;
  std::vector<std::pair<VarName, Term>> substitution;  // closing values, by variable
  Observable left;
  Observable right;
};

struct DistinguishOptions {
  std::vector<Term> pool_extensions;
  unsigned jobs = 1;
};

// Searches closing substitutions and evaluation contexts for a pair of
// genuinely differing observables; fuel exhaustion never counts as a
// difference. Returns the first hit in (substitution, context) order, or
// nothing once the bounded space is exhausted.
std::optional<Distinguisher> distinguish(const Term& t0, const Term& t1,
                                         const SearchBounds& bounds,
                                         const DistinguishOptions& opts = {});

std::string distinguisher_json(const Distinguisher& d);

}  // namespace lamshift
