#include "lamshift/bisim.hpp"

#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "lamshift/parse.hpp"

namespace lamshift {

bool pair_alpha_equal(const TermPair& p, const TermPair& q) {
  return alpha_equal(p.left, q.left) && alpha_equal(p.right, q.right);
}

TermPair canonical_pair(const Term& t0, const Term& t1) {
  CanonicalRenaming ren;
  Term l = canonicalize(t0, ren);
  Term r = canonicalize(t1, ren);
  return TermPair{std::move(l), std::move(r)};
}

Term app_val(const Term& v, const VarName& y) {
  if (!is_value(v)) throw std::invalid_argument("app_val: left operand must be a value");
  if (v->kind == TermKind::Var) return mk_app(v, mk_var(y));
  return substitute(v->a, v->var, mk_var(y));
}

namespace {

uint32_t max_index_of(const TermPair& p) {
  return std::max(max_var_index(p.left), max_var_index(p.right));
}

std::pair<uint64_t, uint64_t> pair_fingerprint(const TermPair& p) {
  return {term_hash_seeded(p.left, 0x1234abcd), term_hash_seeded(p.right, 0xdcba4321)};
}

struct FingerprintHash {
  size_t operator()(const std::pair<uint64_t, uint64_t>& k) const {
    return static_cast<size_t>(k.first ^ (k.second * 0x9e3779b97f4a7c15ull));
  }
};

}  // namespace

MatchResult ctx_obligations(const EvalCtx& e0, const EvalCtx& e1, FreshSupply& supply) {
  SplitResult s0 = split_at_first_reset(e0);
  SplitResult s1 = split_at_first_reset(e1);
  const bool pure0 = std::holds_alternative<SplitPure>(s0);
  const bool pure1 = std::holds_alternative<SplitPure>(s1);
  if (pure0 != pure1) {
    return MatchMismatch{"context shapes differ at the first enclosing delimiter: " + print(e0) +
                         " vs " + print(e1)};
  }
  std::vector<Obligation> obs;
  if (pure0) {
    Term x = mk_var(supply.fresh("x"));
    obs.push_back(TermPair{plug(std::get<SplitPure>(s0).inner, x),
                           plug(std::get<SplitPure>(s1).inner, x)});
    return obs;
  }
  const auto& a0 = std::get<SplitAround>(s0);
  const auto& a1 = std::get<SplitAround>(s1);
  Term x = mk_var(supply.fresh("x"));
  obs.push_back(TermPair{plug(a0.outer, x), plug(a1.outer, x)});
  Term x2 = mk_var(supply.fresh("x"));
  obs.push_back(TermPair{mk_reset(plug(a0.inner, x2)), mk_reset(plug(a1.inner, x2))});
  return obs;
}

MatchResult nf_match(const Outcome& o0, const Outcome& o1, Mode mode, FreshSupply& supply) {
  if (std::holds_alternative<FuelExhausted>(o0) || std::holds_alternative<FuelExhausted>(o1))
    throw std::invalid_argument("nf_match: outcomes must be normal forms");
  supply.ensure_above(max_var_index(outcome_term(o0)));
  supply.ensure_above(max_var_index(outcome_term(o1)));

  if (const auto* v0 = std::get_if<ValueNf>(&o0)) {
    if (const auto* v1 = std::get_if<ValueNf>(&o1)) {
      VarName x = supply.fresh("x");
      return std::vector<Obligation>{TermPair{app_val(v0->value, x), app_val(v1->value, x)}};
    }
  }
  if (const auto* c0 = std::get_if<ControlStuckNf>(&o0)) {
    if (const auto* c1 = std::get_if<ControlStuckNf>(&o1)) {
      if (mode == Mode::Plain) {
        // align the two shift binders; their names are never a mismatch cause
        Term b0 = c0->body;
        Term b1 = c1->body;
        if (!(c0->binder == c1->binder)) {
          VarName k = supply.fresh("k");
          b0 = substitute(b0, c0->binder, mk_var(k));
          b1 = substitute(b1, c1->binder, mk_var(k));
        }
        std::vector<Obligation> obs;
        obs.push_back(ContextsObligation{to_eval_ctx(c0->ctx), to_eval_ctx(c1->ctx)});
        obs.push_back(TermPair{mk_reset(b0), mk_reset(b1)});
        return obs;
      }
      // refined rule: simulate the capture under an abstract outer continuation
      VarName kp = supply.fresh("k");
      VarName x = supply.fresh("x");
      auto wrap = [&](const ControlStuckNf& c) {
        Term cont = mk_lam(x, mk_reset(mk_app(mk_var(kp), plug(c.ctx, mk_var(x)))));
        return mk_reset(substitute(c.body, c.binder, cont));
      };
      return std::vector<Obligation>{TermPair{wrap(*c0), wrap(*c1)}};
    }
  }
  if (const auto* p0 = std::get_if<OpenStuckNf>(&o0)) {
    if (const auto* p1 = std::get_if<OpenStuckNf>(&o1)) {
      if (!(p0->head == p1->head)) {
        return MatchMismatch{"open-stuck head variables differ: " + to_string(p0->head) + " vs " +
                             to_string(p1->head)};
      }
      VarName y = supply.fresh("y");
      std::vector<Obligation> obs;
      obs.push_back(ContextsObligation{p0->ctx, p1->ctx});
      obs.push_back(TermPair{app_val(p0->arg, y), app_val(p1->arg, y)});
      return obs;
    }
  }
  return MatchMismatch{std::string("outcome classes differ: ") + outcome_class_name(o0) + " (" +
                       print(outcome_term(o0)) + ") vs " + outcome_class_name(o1) + " (" +
                       print(outcome_term(o1)) + ")"};
}

// ---------------------------------------------------------------------
// Bounded closure membership

namespace {

constexpr uint64_t kCycleProbeFuel = 512;

VarName matcher_fresh(const char* base, std::initializer_list<const Term*> terms) {
  std::set<VarName> avoid;
  for (const Term* t : terms) {
    auto fv = free_vars(*t);
    avoid.insert(fv.begin(), fv.end());
  }
  return fresh_like(VarName{base, 0}, avoid);
}

class ClosureMatcher {
 public:
  explicit ClosureMatcher(const std::vector<TermPair>& rel) : rel_(rel) {}

  bool related(const Term& l, const Term& r, uint32_t depth) {
    if (alpha_equal(l, r)) return true;
    for (const auto& b : rel_)
      if (alpha_equal(b.left, l) && alpha_equal(b.right, r)) return true;
    if (depth == 0) return false;

    Key key{term_hash_seeded(canonical_term(l), 0xc10),
            term_hash_seeded(canonical_term(r), 0xc20), depth};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    memo_[key] = false;  // guard against re-entry while computing

    bool ok = congruence(l, r, depth) || base_instance(l, r, depth) ||
              substitutive(l, r, depth) || context_rule(l, r, depth);
    memo_[key] = ok;
    return ok;
  }

  bool ctx_related(const EvalCtx& e0, const EvalCtx& e1, uint32_t depth) {
    SplitResult s0 = split_at_first_reset(e0);
    SplitResult s1 = split_at_first_reset(e1);
    const bool pure0 = std::holds_alternative<SplitPure>(s0);
    if (pure0 != std::holds_alternative<SplitPure>(s1)) return false;
    Term probe0 = plug(e0, mk_var("@"));
    Term probe1 = plug(e1, mk_var("@"));
    VarName z = matcher_fresh("z", {&probe0, &probe1});
    if (pure0) {
      return related(plug(std::get<SplitPure>(s0).inner, mk_var(z)),
                     plug(std::get<SplitPure>(s1).inner, mk_var(z)), depth);
    }
    const auto& a0 = std::get<SplitAround>(s0);
    const auto& a1 = std::get<SplitAround>(s1);
    return related(plug(a0.outer, mk_var(z)), plug(a1.outer, mk_var(z)), depth) &&
           related(mk_reset(plug(a0.inner, mk_var(z))), mk_reset(plug(a1.inner, mk_var(z))), depth);
  }

 private:
  struct Key {
    uint64_t hl, hr;
    uint32_t depth;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      return static_cast<size_t>(k.hl ^ (k.hr * 0x9e3779b97f4a7c15ull) ^ k.depth);
    }
  };

  bool congruence(const Term& l, const Term& r, uint32_t depth) {
    if (l->kind != r->kind) return false;
    if (l->kind != TermKind::Lam && l->kind != TermKind::Shift) return false;
    VarName z = matcher_fresh("u", {&l, &r});
    Term b0 = substitute(l->a, l->var, mk_var(z));
    Term b1 = substitute(r->a, r->var, mk_var(z));
    return related(b0, b1, depth - 1);
  }

  // First-order matching of a relation pair instantiated at value
  // positions (the substitutivity rule applied to a base pair).
  bool base_instance(const Term& l, const Term& r, uint32_t depth) {
    for (const auto& b : rel_) {
      std::map<VarName, Term> s0, s1;
      if (!match_values(b.left, l, s0)) continue;
      if (!match_values(b.right, r, s1)) continue;
      bool ok = true;
      for (const auto& [v, w0] : s0) {
        auto it = s1.find(v);
        if (it == s1.end()) continue;  // one-sided variable, any value works
        if (alpha_equal(w0, it->second)) continue;
        VarName z = matcher_fresh("z", {&w0, &it->second});
        if (!related(app_val(w0, z), app_val(it->second, z), depth - 1)) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
    return false;
  }

  static bool match_rec(const Term& pat, const Term& sub,
                        std::vector<std::pair<VarName, VarName>>& env,
                        std::vector<VarName>& sub_bound, std::map<VarName, Term>& out) {
    if (pat->kind == TermKind::Var) {
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == pat->var)
          return sub->kind == TermKind::Var && sub->var == it->second;
      }
      // free pattern variable: bind to a value not referring to local binders
      if (!is_value(sub)) return false;
      auto fv = free_vars(sub);
      for (const auto& bv : sub_bound)
        if (fv.count(bv)) return false;
      auto [it, inserted] = out.try_emplace(pat->var, sub);
      if (!inserted) return alpha_equal(it->second, sub);
      return true;
    }
    if (pat->kind != sub->kind) return false;
    switch (pat->kind) {
      case TermKind::Lam:
      case TermKind::Shift: {
        env.emplace_back(pat->var, sub->var);
        sub_bound.push_back(sub->var);
        bool ok = match_rec(pat->a, sub->a, env, sub_bound, out);
        env.pop_back();
        sub_bound.pop_back();
        return ok;
      }
      case TermKind::App:
        return match_rec(pat->a, sub->a, env, sub_bound, out) &&
               match_rec(pat->b, sub->b, env, sub_bound, out);
      case TermKind::Reset:
        return match_rec(pat->a, sub->a, env, sub_bound, out);
      default:
        return false;
    }
  }

  static bool match_values(const Term& pat, const Term& sub, std::map<VarName, Term>& out) {
    std::vector<std::pair<VarName, VarName>> env;
    std::vector<VarName> sub_bound;
    return match_rec(pat, sub, env, sub_bound, out);
  }

  // ---- anti-unification for the substitutivity route ----

  struct Hole {
    Term l, r;
    std::vector<std::pair<Term, Term>> ancestors;  // enclosing value pairs, nearest last
  };

  using ForcedSet = std::unordered_set<uint64_t>;

  static uint64_t cut_key(const Term& l, const Term& r) {
    return term_hash_seeded(canonical_term(l), 0xau) ^
           (term_hash_seeded(canonical_term(r), 0xbu) * 0x9e3779b97f4a7c15ull);
  }

  // Returns false when this whole position must become a hole.
  static bool au_rec(const Term& l, const Term& r,
                     std::vector<std::pair<VarName, VarName>>& env,
                     std::vector<std::pair<Term, Term>>& value_ancestors,
                     const ForcedSet& forced, std::vector<Hole>& out) {
    if (forced.count(cut_key(l, r))) return false;
    if (l->kind != r->kind) return false;
    switch (l->kind) {
      case TermKind::Var: {
        for (auto it = env.rbegin(); it != env.rend(); ++it) {
          if (it->first == l->var || it->second == r->var)
            return it->first == l->var && it->second == r->var;
        }
        return l->var == r->var;
      }
      case TermKind::Lam:
      case TermKind::Shift: {
        std::vector<Hole> sub;
        env.emplace_back(l->var, r->var);
        value_ancestors.emplace_back(l, r);
        bool ok = au_rec(l->a, r->a, env, value_ancestors, forced, sub);
        value_ancestors.pop_back();
        env.pop_back();
        if (!ok) return false;  // body is one mismatching block: cut at this binder
        for (const auto& h : sub) {
          // a hole mentioning the binder cannot be substituted in from outside
          if (occurs_free(h.l, l->var) || occurs_free(h.r, r->var)) return false;
        }
        out.insert(out.end(), sub.begin(), sub.end());
        return true;
      }
      case TermKind::App: {
        std::vector<Hole> sub;
        if (!au_rec(l->a, r->a, env, value_ancestors, forced, sub))
          sub.push_back(Hole{l->a, r->a, value_ancestors});
        if (!au_rec(l->b, r->b, env, value_ancestors, forced, sub))
          sub.push_back(Hole{l->b, r->b, value_ancestors});
        out.insert(out.end(), sub.begin(), sub.end());
        return true;
      }
      case TermKind::Reset: {
        std::vector<Hole> sub;
        if (!au_rec(l->a, r->a, env, value_ancestors, forced, sub))
          sub.push_back(Hole{l->a, r->a, value_ancestors});
        out.insert(out.end(), sub.begin(), sub.end());
        return true;
      }
    }
    return false;
  }

  // Substitutivity over the reflexive skeleton: anti-unify the two sides,
  // require every mismatching block to be a pair of values related after
  // application to a fresh variable. Failed blocks are hoisted to their
  // nearest enclosing value position and the decomposition is retried.
  bool substitutive(const Term& l, const Term& r, uint32_t depth) {
    ForcedSet forced;
    for (int iter = 0; iter < 16; ++iter) {
      std::vector<Hole> holes;
      std::vector<std::pair<VarName, VarName>> env;
      std::vector<std::pair<Term, Term>> anc;
      if (!au_rec(l, r, env, anc, forced, holes)) holes.push_back(Hole{l, r, {}});
      if (holes.size() == 1 && holes[0].l == l && holes[0].r == r &&
          !(is_value(l) && is_value(r)))
        return false;  // no usable skeleton

      const Hole* failing = nullptr;
      for (size_t i = 0; i < holes.size(); ++i) {
        bool dup = false;
        for (size_t j = 0; j < i; ++j) {
          if (alpha_equal(holes[j].l, holes[i].l) && alpha_equal(holes[j].r, holes[i].r)) {
            dup = true;
            break;
          }
        }
        if (dup) continue;
        const Hole& h = holes[i];
        bool ok = is_value(h.l) && is_value(h.r);
        if (ok) {
          VarName z = matcher_fresh("z", {&h.l, &h.r});
          ok = related(app_val(h.l, z), app_val(h.r, z), depth - 1);
        }
        if (!ok) {
          failing = &h;
          break;
        }
      }
      if (!failing) return !holes.empty();
      if (failing->ancestors.empty()) return false;
      forced.insert(cut_key(failing->ancestors.back().first, failing->ancestors.back().second));
    }
    return false;
  }

  // The context closure rule: strip an evaluation-context pair and relate
  // both the hole fillings and the contexts. A pair of values in the hole
  // must be related as values (through the fresh application), not merely
  // as terms: composing a bare variable pair into a context would let a
  // candidate like {(x, y)} certify itself.
  bool hole_related(const Term& s0, const Term& s1, uint32_t depth) {
    if (is_value(s0) && is_value(s1)) {
      if (alpha_equal(s0, s1)) return true;
      VarName z = matcher_fresh("z", {&s0, &s1});
      return related(app_val(s0, z), app_val(s1, z), depth - 1);
    }
    return related(s0, s1, depth - 1);
  }

  bool context_rule(const Term& l, const Term& r, uint32_t depth) {
    auto d0 = decompositions(l);
    auto d1 = decompositions(r);
    for (const auto& [e0, s0] : d0) {
      for (const auto& [e1, s1] : d1) {
        if (e0.frames.empty() && e1.frames.empty()) continue;
        if (!hole_related(s0, s1, depth)) continue;
        if (ctx_related(e0, e1, depth - 1)) return true;
      }
    }
    return false;
  }

  static void decomps_rec(const Term& t, std::vector<Frame>& outside_in,
                          std::vector<std::pair<EvalCtx, Term>>& out) {
    EvalCtx e;
    e.frames.assign(outside_in.rbegin(), outside_in.rend());
    out.emplace_back(std::move(e), t);
    switch (t->kind) {
      case TermKind::App:
        outside_in.push_back(Frame::fun_before(t->b));
        decomps_rec(t->a, outside_in, out);
        outside_in.pop_back();
        if (is_value(t->a)) {
          outside_in.push_back(Frame::arg_of_value(t->a));
          decomps_rec(t->b, outside_in, out);
          outside_in.pop_back();
        }
        break;
      case TermKind::Reset:
        outside_in.push_back(Frame::delimiter());
        decomps_rec(t->a, outside_in, out);
        outside_in.pop_back();
        break;
      default:
        break;
    }
  }

  static std::vector<std::pair<EvalCtx, Term>> decompositions(const Term& t) {
    std::vector<std::pair<EvalCtx, Term>> out;
    std::vector<Frame> path;
    decomps_rec(t, path, out);
    return out;
  }

  const std::vector<TermPair>& rel_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

}  // namespace

bool member_closc(const TermPair& p, const std::vector<TermPair>& rel, uint32_t depth) {
  ClosureMatcher m(rel);
  return m.related(p.left, p.right, depth);
}

// ---------------------------------------------------------------------
// The worklist checker

namespace {

struct SideResult {
  Outcome outcome;
  bool diverges;  // divergence proven by a reduction cycle
};

SideResult eval_side(const Term& t, uint64_t fuel) {
  Outcome o = evaluate(t, EvalLimits{fuel});
  bool div = false;
  if (std::holds_alternative<FuelExhausted>(o))
    div = proves_divergence_by_cycle(t, std::min<uint64_t>(fuel, kCycleProbeFuel));
  return {std::move(o), div};
}

void validate(const CheckConfig& cfg) {
  if (cfg.fuel == 0 || cfg.max_pairs == 0 || cfg.up_to_depth == 0)
    throw std::invalid_argument("check: fuel, max_pairs and up_to_depth must be positive");
}

}  // namespace

Verdict check(const Term& t0, const Term& t1, const CheckConfig& cfg) {
  validate(cfg);
  FreshSupply supply(std::max(max_var_index(t0), max_var_index(t1)) + 1);

  struct Rec {
    TermPair pair;
    int parent;
  };
  std::vector<Rec> recs;
  std::vector<TermPair> visited_pairs;
  std::unordered_map<std::pair<uint64_t, uint64_t>, std::vector<int>, FingerprintHash> index;
  std::deque<int> work;
  std::vector<TermPair> frontier;

  auto seen = [&](const TermPair& c) {
    auto it = index.find(pair_fingerprint(c));
    if (it == index.end()) return false;
    for (int i : it->second)
      if (term_eq(recs[i].pair.left, c.left) && term_eq(recs[i].pair.right, c.right)) return true;
    return false;
  };

  bool budget_hit = false;
  auto push = [&](TermPair c, int parent) {
    if (seen(c)) return;
    if (cfg.up_to_context && member_closc(c, visited_pairs, cfg.up_to_depth)) return;
    if (recs.size() >= cfg.max_pairs) {
      budget_hit = true;
      frontier.push_back(std::move(c));
      return;
    }
    int id = static_cast<int>(recs.size());
    index[pair_fingerprint(c)].push_back(id);
    recs.push_back(Rec{c, parent});
    visited_pairs.push_back(std::move(c));
    work.push_back(id);
  };

  auto trace_of = [&](int i) {
    std::vector<TermPair> t;
    for (int j = i; j >= 0; j = recs[j].parent) t.push_back(recs[j].pair);
    std::reverse(t.begin(), t.end());
    return t;
  };

  push(canonical_pair(t0, t1), -1);

  while (!work.empty() && !budget_hit) {
    int id = work.front();
    work.pop_front();
    const TermPair p = recs[id].pair;
    supply.ensure_above(max_index_of(p));

    SideResult l = eval_side(p.left, cfg.fuel);
    SideResult r = eval_side(p.right, cfg.fuel);
    const bool lx = std::holds_alternative<FuelExhausted>(l.outcome);
    const bool rx = std::holds_alternative<FuelExhausted>(r.outcome);

    if (lx && rx) {
      if ((l.diverges && r.diverges) || cfg.assume_divergence) continue;  // vacuously related
      frontier.push_back(p);
      continue;
    }
    if (lx != rx) {
      const SideResult& stuck = lx ? l : r;
      const SideResult& done = lx ? r : l;
      if (stuck.diverges || cfg.assume_divergence) {
        std::string why = std::string(lx ? "left" : "right") + " side diverges (" +
                          (stuck.diverges ? "reduction cycle" : "assumed from fuel exhaustion") +
                          ") while the other side evaluates to a " +
                          outcome_class_name(done.outcome) + " normal form";
        return NotBisimilar{trace_of(id), std::move(why)};
      }
      frontier.push_back(p);
      continue;
    }

    MatchResult m = nf_match(l.outcome, r.outcome, cfg.mode, supply);
    if (auto* mm = std::get_if<MatchMismatch>(&m))
      return NotBisimilar{trace_of(id), std::move(mm->description)};

    std::vector<TermPair> next;
    for (const auto& ob : std::get<std::vector<Obligation>>(m)) {
      if (const auto* tp = std::get_if<TermPair>(&ob)) {
        next.push_back(*tp);
        continue;
      }
      const auto& co = std::get<ContextsObligation>(ob);
      MatchResult cm = ctx_obligations(co.left, co.right, supply);
      if (auto* mm = std::get_if<MatchMismatch>(&cm))
        return NotBisimilar{trace_of(id), std::move(mm->description)};
      for (const auto& ob2 : std::get<std::vector<Obligation>>(cm))
        next.push_back(std::get<TermPair>(ob2));
    }
    for (const auto& tp : next) push(canonical_pair(tp.left, tp.right), id);
  }

  if (budget_hit) {
    for (int id : work) frontier.push_back(recs[id].pair);
    return Inconclusive{InconclusiveReason::PairBudgetExceeded, std::move(frontier)};
  }
  if (!frontier.empty())
    return Inconclusive{InconclusiveReason::FuelExhausted, std::move(frontier)};
  return Bisimilar{std::move(visited_pairs)};
}

// ---------------------------------------------------------------------
// Candidate relation verification

namespace {

bool discharge_obligations(const MatchResult& m, const std::vector<TermPair>& rel,
                           const CheckConfig& cfg, FreshSupply& supply, std::string& detail) {
  if (const auto* mm = std::get_if<MatchMismatch>(&m)) {
    detail = mm->description;
    return false;
  }
  for (const auto& ob : std::get<std::vector<Obligation>>(m)) {
    std::vector<TermPair> terms;
    if (const auto* tp = std::get_if<TermPair>(&ob)) {
      terms.push_back(*tp);
    } else {
      const auto& co = std::get<ContextsObligation>(ob);
      MatchResult cm = ctx_obligations(co.left, co.right, supply);
      if (const auto* mm = std::get_if<MatchMismatch>(&cm)) {
        detail = mm->description;
        return false;
      }
      for (const auto& ob2 : std::get<std::vector<Obligation>>(cm))
        terms.push_back(std::get<TermPair>(ob2));
    }
    for (const auto& tp : terms) {
      if (!member_closc(tp, rel, cfg.up_to_depth)) {
        detail = "obligation (" + print(tp.left) + ", " + print(tp.right) +
                 ") is not in the closure of the candidate at depth " +
                 std::to_string(cfg.up_to_depth);
        return false;
      }
    }
  }
  return true;
}

bool verify_pair_bigstep(const TermPair& p, const std::vector<TermPair>& rel,
                         const CheckConfig& cfg, std::string& detail) {
  FreshSupply supply(max_index_of(p) + 1);
  Outcome o0 = evaluate(p.left, EvalLimits{cfg.fuel});
  if (std::holds_alternative<FuelExhausted>(o0)) {
    if (proves_divergence_by_cycle(p.left, std::min<uint64_t>(cfg.fuel, kCycleProbeFuel)) ||
        cfg.assume_divergence)
      return true;  // left side does not evaluate; nothing to match
    detail = "left side reaches no normal form within fuel (divergence unproven)";
    return false;
  }
  Outcome o1 = evaluate(p.right, EvalLimits{cfg.fuel});
  if (std::holds_alternative<FuelExhausted>(o1)) {
    detail = std::string("left side evaluates to a ") + outcome_class_name(o0) +
             " normal form but the right side reaches none within fuel";
    return false;
  }
  return discharge_obligations(nf_match(o0, o1, cfg.mode, supply), rel, cfg, supply, detail);
}

bool verify_pair_smallstep(const TermPair& p, const std::vector<TermPair>& rel,
                           const CheckConfig& cfg, std::string& detail) {
  FreshSupply supply(max_index_of(p) + 1);
  Decomposition d = decompose(p.left);
  if (const auto* nf = std::get_if<NormalForm>(&d)) {
    Outcome o0 = std::visit([](auto x) -> Outcome { return x; }, *nf);
    Outcome o1 = evaluate(p.right, EvalLimits{cfg.fuel});
    if (std::holds_alternative<FuelExhausted>(o1)) {
      detail = "left side is a normal form but the right side reaches none within fuel";
      return false;
    }
    return discharge_obligations(nf_match(o0, o1, cfg.mode, supply), rel, cfg, supply, detail);
  }
  const auto& s = std::get<Split>(d);
  Term l1 = plug(s.ctx, contract(s.redex));
  Term cur = p.right;
  for (uint64_t j = 0;; ++j) {
    if (member_closc(TermPair{l1, cur}, rel, cfg.up_to_depth)) return true;
    if (j >= cfg.fuel) break;
    auto next = step(cur);
    if (!next) break;
    cur = *next;
  }
  detail = "single step of the left side, (" + print(l1) +
           "), matches no right-side reduct within fuel " + std::to_string(cfg.fuel) +
           " up to closure";
  return false;
}

}  // namespace

CandidateReport verify_candidate(const std::vector<TermPair>& rel, const CheckConfig& cfg,
                                 CandidateStyle style) {
  validate(cfg);
  CandidateReport report;
  for (bool forward : {true, false}) {
    std::vector<TermPair> oriented;
    oriented.reserve(rel.size());
    for (const auto& p : rel)
      oriented.push_back(forward ? p : TermPair{p.right, p.left});
    for (const auto& p : oriented) {
      CandidateReport::Entry e{p, forward, true, ""};
      e.pass = style == CandidateStyle::BigStep
                   ? verify_pair_bigstep(p, oriented, cfg, e.detail)
                   : verify_pair_smallstep(p, oriented, cfg, e.detail);
      report.all_pass = report.all_pass && e.pass;
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

bool witness_closed(const std::vector<TermPair>& witness, const CheckConfig& cfg,
                    std::string* first_failure) {
  auto fail = [&](const std::string& msg) {
    if (first_failure) *first_failure = msg;
    return false;
  };
  auto in_witness = [&](const TermPair& c) {
    for (const auto& w : witness)
      if (term_eq(w.left, c.left) && term_eq(w.right, c.right)) return true;
    return false;
  };
  for (const auto& p : witness) {
    FreshSupply supply(max_index_of(p) + 1);
    SideResult l = eval_side(p.left, cfg.fuel);
    SideResult r = eval_side(p.right, cfg.fuel);
    const bool lx = std::holds_alternative<FuelExhausted>(l.outcome);
    const bool rx = std::holds_alternative<FuelExhausted>(r.outcome);
    if (lx || rx) {
      if (lx && rx && ((l.diverges && r.diverges) || cfg.assume_divergence)) continue;
      return fail("pair (" + print(p.left) + ", " + print(p.right) + ") does not evaluate");
    }
    MatchResult m = nf_match(l.outcome, r.outcome, cfg.mode, supply);
    if (const auto* mm = std::get_if<MatchMismatch>(&m)) return fail(mm->description);
    std::vector<TermPair> obs;
    for (const auto& ob : std::get<std::vector<Obligation>>(m)) {
      if (const auto* tp = std::get_if<TermPair>(&ob)) {
        obs.push_back(*tp);
        continue;
      }
      const auto& co = std::get<ContextsObligation>(ob);
      MatchResult cm = ctx_obligations(co.left, co.right, supply);
      if (const auto* mm = std::get_if<MatchMismatch>(&cm)) return fail(mm->description);
      for (const auto& ob2 : std::get<std::vector<Obligation>>(cm))
        obs.push_back(std::get<TermPair>(ob2));
    }
    for (const auto& ob : obs) {
      TermPair c = canonical_pair(ob.left, ob.right);
      if (in_witness(c)) continue;
      if (cfg.up_to_context && member_closc(c, witness, cfg.up_to_depth)) continue;
      return fail("obligation (" + print(c.left) + ", " + print(c.right) +
                  ") escapes the witness");
    }
  }
  return true;
}

// ---------------------------------------------------------------------

std::string verdict_json(const Verdict& v) {
  nlohmann::json j;
  auto pairs_json = [](const std::vector<TermPair>& ps) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& p : ps) a.push_back({{"left", print(p.left)}, {"right", print(p.right)}});
    return a;
  };
  j["pairs"] = nlohmann::json::array();
  j["trace"] = nlohmann::json::array();
  j["mismatch"] = "";
  if (const auto* b = std::get_if<Bisimilar>(&v)) {
    j["verdict"] = "bisimilar";
    j["pairs"] = pairs_json(b->witness);
  } else if (const auto* n = std::get_if<NotBisimilar>(&v)) {
    j["verdict"] = "not-bisimilar";
    j["trace"] = pairs_json(n->trace);
    j["mismatch"] = n->mismatch;
  } else {
    const auto& i = std::get<Inconclusive>(v);
    j["verdict"] = "inconclusive";
    j["reason"] = i.reason == InconclusiveReason::FuelExhausted ? "fuel-exhausted"
                                                                : "pair-budget-exceeded";
    j["pairs"] = pairs_json(i.frontier);
  }
  return j.dump(2);
}

}  // namespace lamshift
