#include "lamshift/ctxeq.hpp"

#include <atomic>
#include <deque>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "lamshift/parse.hpp"
#include "lamshift/reduction.hpp"

namespace lamshift {

const char* to_string(Observable o) {
  switch (o) {
    case Observable::ConvergesToValue: return "converges-to-value";
    case Observable::ConvergesToControlStuck: return "converges-to-control-stuck";
    default: return "no-observation-at-fuel";
  }
}

Observable observe(const Term& t, uint64_t fuel) {
  if (!free_vars(t).empty())
    throw std::invalid_argument("observe: term must be closed");
  Outcome o = evaluate(t, EvalLimits{fuel});
  switch (o.index()) {
    case 0: return Observable::ConvergesToValue;
    case 1: return Observable::ConvergesToControlStuck;
    case 2: throw std::logic_error("observe: closed term evaluated to an open-stuck form");
    default: return Observable::NoObservationAtFuel;
  }
}

const std::vector<Term>& builtin_value_pool() {
  static const std::vector<Term> pool = [] {
    std::vector<Term> p;
    p.push_back(parse("\\x. x"));
    p.push_back(parse("\\x. x x"));
    p.push_back(parse("\\y. shift k. (\\x. x x) (\\x. x x)"));
    p.push_back(parse("\\y. shift k. \\x. x"));
    p.push_back(parse("\\y. <y (\\x. x)>"));
    return p;
  }();
  return pool;
}

std::vector<Term> value_pool(const SearchBounds& bounds, const std::vector<Term>& extensions) {
  std::vector<Term> pool = builtin_value_pool();
  for (const auto& v : extensions) {
    if (!is_value(v) || !free_vars(v).empty())
      throw std::invalid_argument("value_pool: extensions must be closed values");
    bool dup = false;
    for (const auto& p : pool) dup = dup || alpha_equal(p, v);
    if (!dup) pool.push_back(v);
  }
  if (pool.size() > bounds.value_pool_size) pool.resize(bounds.value_pool_size);
  return pool;
}

// Frame alphabet for a pool of n values: indices [0, n) are v [], then
// [n, 2n) are [] v, and 2n is the delimiter.
namespace {

Frame nth_frame(const std::vector<Term>& pool, uint32_t i) {
  const uint32_t n = static_cast<uint32_t>(pool.size());
  if (i < n) return Frame::arg_of_value(pool[i]);
  if (i < 2 * n) return Frame::fun_before(pool[i - n]);
  return Frame::delimiter();
}

}  // namespace

ContextEnumerator::ContextEnumerator(const SearchBounds& bounds, std::vector<Term> pool)
    : pool_(std::move(pool)), max_size_(bounds.context_size) {}

void ContextEnumerator::build(EvalCtx& out) const {
  out.frames.clear();
  for (uint32_t d : digits_) out.frames.push_back(nth_frame(pool_, d));
}

bool ContextEnumerator::next(EvalCtx& out) {
  if (done_) return false;
  if (first_) {
    first_ = false;
    build(out);  // the empty context
    return true;
  }
  const uint32_t radix = static_cast<uint32_t>(2 * pool_.size() + 1);
  for (size_t i = digits_.size(); i-- > 0;) {
    if (++digits_[i] < radix) {
      build(out);
      return true;
    }
    digits_[i] = 0;
  }
  if (size_ == max_size_) {
    done_ = true;
    return false;
  }
  digits_.assign(++size_, 0);
  build(out);
  return true;
}

// ---------------------------------------------------------------------
// Distinguisher search.
//
// The search factors through evaluated normal forms: plugging one more
// frame around the normal form of E[t] evaluates to the same outcome as
// the full E'[t], so states are (nf0, nf1) pairs, deduplicated up to
// alpha. Dead states (either side without a normal form, or both sides
// equal) cannot be separated by any further frames and are dropped.

namespace {

constexpr uint32_t kSearchTermSizeCap = 1u << 14;

struct Classified {
  bool normal;
  Observable obs;
  Term nf;  // the replugged normal form when normal
};

Classified classify(const Term& t, uint64_t fuel) {
  Term cur = t;
  std::unordered_set<uint64_t> seen;
  seen.insert(term_hash_seeded(canonical_term(cur), 0x77));
  for (uint64_t i = 0; i < fuel; ++i) {
    Decomposition d = decompose(cur);
    if (const auto* nf = std::get_if<NormalForm>(&d)) {
      Observable o = std::holds_alternative<ControlStuckNf>(*nf)
                         ? Observable::ConvergesToControlStuck
                         : Observable::ConvergesToValue;
      if (std::holds_alternative<OpenStuckNf>(*nf))
        throw std::logic_error("distinguish: closed term evaluated to an open-stuck form");
      return {true, o, replug(*nf)};
    }
    const auto& s = std::get<Split>(d);
    cur = plug(s.ctx, contract(s.redex));
    if (cur->size > kSearchTermSizeCap) break;
    if (!seen.insert(term_hash_seeded(canonical_term(cur), 0x77)).second) break;  // cycle
  }
  return {false, Observable::NoObservationAtFuel, nullptr};
}

struct SearchState {
  Term nf0, nf1;
  std::vector<Frame> rep;  // representative context, innermost first
  bool both_stuck = false;
};

bool is_control_stuck(const Term& nf) {
  Decomposition d = decompose(nf);
  const auto* n = std::get_if<NormalForm>(&d);
  return n != nullptr && std::holds_alternative<ControlStuckNf>(*n);
}

// A control-stuck normal form whose shift binder is unused discards
// whatever pure frames pile around it the moment a delimiter closes:
// <P[F[shift k. b]]> contracts to <b> for any P when k is not free in b.
// Extending such a pair with anything but a delimiter is futile.
bool only_delimiter_helps(const Term& nf0, const Term& nf1) {
  for (const Term* t : {&nf0, &nf1}) {
    Decomposition d = decompose(*t);
    const auto* nf = std::get_if<NormalForm>(&d);
    if (nf == nullptr) return false;
    const auto* cs = std::get_if<ControlStuckNf>(nf);
    if (cs == nullptr || occurs_free(cs->body, cs->binder)) return false;
  }
  return true;
}

std::pair<uint64_t, uint64_t> state_key(const Term& a, const Term& b) {
  return {term_hash_seeded(canonical_term(a), 0xaaa1),
          term_hash_seeded(canonical_term(b), 0xbbb2)};
}

struct KeyHash {
  size_t operator()(const std::pair<uint64_t, uint64_t>& k) const {
    return static_cast<size_t>(k.first ^ (k.second * 0x9e3779b97f4a7c15ull));
  }
};

std::optional<Distinguisher> search_one_substitution(
    const Term& s0, const Term& s1, const std::vector<std::pair<VarName, Term>>& subst,
    const std::vector<Term>& pool, const SearchBounds& bounds, const std::atomic<bool>* stop) {
  Classified c0 = classify(s0, bounds.fuel);
  Classified c1 = classify(s1, bounds.fuel);
  if (!c0.normal || !c1.normal) return std::nullopt;
  if (c0.obs != c1.obs) return Distinguisher{EvalCtx{}, subst, c0.obs, c1.obs};
  if (alpha_equal(c0.nf, c1.nf)) return std::nullopt;

  const uint32_t nframes = static_cast<uint32_t>(2 * pool.size() + 1);
  std::unordered_set<std::pair<uint64_t, uint64_t>, KeyHash> seen;
  std::deque<SearchState> queue;
  seen.insert(state_key(c0.nf, c1.nf));
  queue.push_back(SearchState{c0.nf, c1.nf, {}, is_control_stuck(c0.nf) && is_control_stuck(c1.nf)});

  while (!queue.empty()) {
    if (stop && stop->load(std::memory_order_relaxed)) return std::nullopt;
    SearchState st = std::move(queue.front());
    queue.pop_front();
    const bool delimiter_only = st.both_stuck && only_delimiter_helps(st.nf0, st.nf1);
    for (uint32_t fi = 0; fi < nframes; ++fi) {
      Frame f = nth_frame(pool, fi);
      if (delimiter_only && f.kind != FrameKind::Delimiter) continue;
      if (st.both_stuck && f.kind != FrameKind::Delimiter) {
        // pure frames keep a stuck pair stuck: same observables, already
        // distinct, never revisited. Enqueue without re-evaluating.
        if (st.rep.size() + 1 < bounds.context_size) {
          std::vector<Frame> rep = st.rep;
          rep.push_back(f);
          queue.push_back(
              SearchState{plug_frame(f, st.nf0), plug_frame(f, st.nf1), std::move(rep), true});
        }
        continue;
      }
      Classified e0 = classify(plug_frame(f, st.nf0), bounds.fuel);
      Classified e1 = classify(plug_frame(f, st.nf1), bounds.fuel);
      if (!e0.normal || !e1.normal) continue;  // no observation can ever surface
      std::vector<Frame> rep = st.rep;
      rep.push_back(f);
      if (e0.obs != e1.obs)
        return Distinguisher{EvalCtx{std::move(rep)}, subst, e0.obs, e1.obs};
      if (alpha_equal(e0.nf, e1.nf)) continue;
      if (!seen.insert(state_key(e0.nf, e1.nf)).second) continue;
      if (rep.size() < bounds.context_size)
        queue.push_back(SearchState{e0.nf, e1.nf, std::move(rep),
                                    is_control_stuck(e0.nf) && is_control_stuck(e1.nf)});
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Distinguisher> distinguish(const Term& t0, const Term& t1,
                                         const SearchBounds& bounds,
                                         const DistinguishOptions& opts) {
  std::vector<Term> pool = value_pool(bounds, opts.pool_extensions);
  if (pool.empty()) throw std::invalid_argument("distinguish: empty value pool");

  std::set<VarName> fvs_set = free_vars(t0);
  {
    auto f1 = free_vars(t1);
    fvs_set.insert(f1.begin(), f1.end());
  }
  std::vector<VarName> fvs(fvs_set.begin(), fvs_set.end());

  // enumerate substitutions odometer-style over the pool
  uint64_t count = 1;
  for (size_t i = 0; i < fvs.size(); ++i) {
    count *= pool.size();
    if (count > 1u << 20) throw std::invalid_argument("distinguish: too many free variables");
  }

  auto nth_subst = [&](uint64_t n) {
    std::vector<std::pair<VarName, Term>> subst;
    for (const auto& v : fvs) {
      subst.emplace_back(v, pool[n % pool.size()]);
      n /= pool.size();
    }
    return subst;
  };
  auto apply = [](Term t, const std::vector<std::pair<VarName, Term>>& subst) {
    for (const auto& [v, val] : subst) t = substitute(t, v, val);
    return t;
  };

  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1 || count == 1) {
    for (uint64_t n = 0; n < count; ++n) {
      auto subst = nth_subst(n);
      auto found =
          search_one_substitution(apply(t0, subst), apply(t1, subst), subst, pool, bounds, nullptr);
      if (found) return found;
    }
    return std::nullopt;
  }

  // Partition substitutions across workers; the smallest index that finds
  // a witness wins, so the result does not depend on scheduling.
  std::vector<std::optional<Distinguisher>> results(count);
  std::atomic<uint64_t> best_found{count};
  std::atomic<uint64_t> next{0};
  std::atomic<bool> stop{false};
  auto worker = [&] {
    for (;;) {
      uint64_t n = next.fetch_add(1);
      if (n >= count) return;
      if (n > best_found.load()) continue;
      auto subst = nth_subst(n);
      auto found =
          search_one_substitution(apply(t0, subst), apply(t1, subst), subst, pool, bounds, &stop);
      if (found) {
        results[n] = std::move(found);
        uint64_t cur = best_found.load();
        while (n < cur && !best_found.compare_exchange_weak(cur, n)) {}
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned i = 0; i < jobs; ++i) threads.emplace_back(worker);
  for (auto& th : threads) th.join();
  uint64_t best = best_found.load();
  if (best < count) return results[best];
  return std::nullopt;
}

std::string distinguisher_json(const Distinguisher& d) {
  nlohmann::json j;
  j["context"] = print(d.context);
  nlohmann::json s = nlohmann::json::object();
  for (const auto& [v, val] : d.substitution) s[to_string(v)] = print(val);
  j["substitution"] = s;
  j["observables"] = {to_string(d.left), to_string(d.right)};
  return j.dump(2);
}

}  // namespace lamshift
