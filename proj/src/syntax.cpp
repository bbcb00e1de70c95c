#include "lamshift/syntax.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace lamshift {

std::string to_string(const VarName& v) {
  if (v.index == 0) return v.base;
  return v.base + "%" + std::to_string(v.index);
}

namespace {

Term mk(TermKind k, VarName v, Term a, Term b) {
  uint32_t size = 1;
  if (a) size += a->size;
  if (b) size += b->size;
  return std::make_shared<const TermNode>(TermNode{k, std::move(v), std::move(a), std::move(b), size});
}

}  // namespace

Term mk_var(VarName v) { return mk(TermKind::Var, std::move(v), nullptr, nullptr); }
Term mk_var(std::string base, uint32_t index) { return mk_var(VarName{std::move(base), index}); }
Term mk_lam(VarName binder, Term body) { return mk(TermKind::Lam, std::move(binder), std::move(body), nullptr); }
Term mk_app(Term fun, Term arg) { return mk(TermKind::App, VarName{}, std::move(fun), std::move(arg)); }
Term mk_shift(VarName binder, Term body) { return mk(TermKind::Shift, std::move(binder), std::move(body), nullptr); }
Term mk_reset(Term body) { return mk(TermKind::Reset, VarName{}, std::move(body), nullptr); }

bool is_value(const Term& t) {
  return t->kind == TermKind::Var || t->kind == TermKind::Lam;
}

namespace {

void free_vars_into(const Term& t, std::vector<VarName>& bound, std::set<VarName>& out) {
  switch (t->kind) {
    case TermKind::Var:
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        if (*it == t->var) return;
      out.insert(t->var);
      return;
    case TermKind::Lam:
    case TermKind::Shift:
      bound.push_back(t->var);
      free_vars_into(t->a, bound, out);
      bound.pop_back();
      return;
    case TermKind::App:
      free_vars_into(t->a, bound, out);
      free_vars_into(t->b, bound, out);
      return;
    case TermKind::Reset:
      free_vars_into(t->a, bound, out);
      return;
  }
}

}  // namespace

std::set<VarName> free_vars(const Term& t) {
  std::set<VarName> out;
  std::vector<VarName> bound;
  free_vars_into(t, bound, out);
  return out;
}

bool occurs_free(const Term& t, const VarName& x) {
  switch (t->kind) {
    case TermKind::Var:
      return t->var == x;
    case TermKind::Lam:
    case TermKind::Shift:
      return t->var != x && occurs_free(t->a, x);
    case TermKind::App:
      return occurs_free(t->a, x) || occurs_free(t->b, x);
    case TermKind::Reset:
      return occurs_free(t->a, x);
  }
  return false;
}

VarName fresh_like(const VarName& base, const std::set<VarName>& avoid) {
  for (uint32_t i = base.index + 1;; ++i) {
    VarName cand{base.base, i};
    if (!avoid.count(cand)) return cand;
  }
}

namespace {

Term subst_rec(const Term& t, const VarName& x, const Term& v, const std::set<VarName>& fv_v) {
  switch (t->kind) {
    case TermKind::Var:
      return t->var == x ? v : t;
    case TermKind::App: {
      Term f = subst_rec(t->a, x, v, fv_v);
      Term a = subst_rec(t->b, x, v, fv_v);
      if (f == t->a && a == t->b) return t;
      return mk_app(std::move(f), std::move(a));
    }
    case TermKind::Reset: {
      Term b = subst_rec(t->a, x, v, fv_v);
      return b == t->a ? t : mk_reset(std::move(b));
    }
    case TermKind::Lam:
    case TermKind::Shift: {
      if (t->var == x || !occurs_free(t->a, x)) return t;
      VarName binder = t->var;
      Term body = t->a;
      if (fv_v.count(binder)) {
        // binder would capture a free variable of v; rename it first
        std::set<VarName> avoid = fv_v;
        auto fvb = free_vars(body);
        avoid.insert(fvb.begin(), fvb.end());
        avoid.insert(x);
        VarName renamed = fresh_like(binder, avoid);
        body = subst_rec(body, binder, mk_var(renamed), {});
        binder = renamed;
      }
      Term nb = subst_rec(body, x, v, fv_v);
      return t->kind == TermKind::Lam ? mk_lam(binder, std::move(nb)) : mk_shift(binder, std::move(nb));
    }
  }
  return t;
}

}  // namespace

Term substitute(const Term& t, const VarName& x, const Term& v) {
  if (!is_value(v))
    throw std::invalid_argument("substitute: replacement for " + to_string(x) + " must be a value");
  return subst_rec(t, x, v, free_vars(v));
}

namespace {

bool alpha_rec(const Term& t0, const Term& t1, std::vector<std::pair<VarName, VarName>>& env) {
  if (t0 == t1 && env.empty()) return true;
  if (t0->kind != t1->kind) return false;
  switch (t0->kind) {
    case TermKind::Var: {
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == t0->var || it->second == t1->var)
          return it->first == t0->var && it->second == t1->var;
      }
      return t0->var == t1->var;
    }
    case TermKind::Lam:
    case TermKind::Shift: {
      env.emplace_back(t0->var, t1->var);
      bool ok = alpha_rec(t0->a, t1->a, env);
      env.pop_back();
      return ok;
    }
    case TermKind::App:
      return alpha_rec(t0->a, t1->a, env) && alpha_rec(t0->b, t1->b, env);
    case TermKind::Reset:
      return alpha_rec(t0->a, t1->a, env);
  }
  return false;
}

}  // namespace

bool alpha_equal(const Term& t0, const Term& t1) {
  std::vector<std::pair<VarName, VarName>> env;
  return alpha_rec(t0, t1, env);
}

bool term_eq(const Term& t0, const Term& t1) {
  if (t0 == t1) return true;
  if (t0->kind != t1->kind || t0->size != t1->size) return false;
  switch (t0->kind) {
    case TermKind::Var:
      return t0->var == t1->var;
    case TermKind::Lam:
    case TermKind::Shift:
      return t0->var == t1->var && term_eq(t0->a, t1->a);
    case TermKind::App:
      return term_eq(t0->a, t1->a) && term_eq(t0->b, t1->b);
    case TermKind::Reset:
      return term_eq(t0->a, t1->a);
  }
  return false;
}

namespace {

uint64_t mix(uint64_t h, uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

uint64_t hash_rec(const Term& t, uint64_t seed) {
  uint64_t h = mix(seed, static_cast<uint64_t>(t->kind) + 1);
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Lam:
    case TermKind::Shift:
      h = mix(h, std::hash<std::string>{}(t->var.base));
      h = mix(h, t->var.index);
      if (t->a) h = mix(h, hash_rec(t->a, seed + 0x51));
      break;
    case TermKind::App:
      h = mix(h, hash_rec(t->a, seed + 0x52));
      h = mix(h, hash_rec(t->b, seed + 0x53));
      break;
    case TermKind::Reset:
      h = mix(h, hash_rec(t->a, seed + 0x54));
      break;
  }
  return h;
}

}  // namespace

size_t term_hash(const Term& t) { return static_cast<size_t>(hash_rec(t, 0xabcdef12345ull)); }
uint64_t term_hash_seeded(const Term& t, uint64_t seed) { return hash_rec(t, seed); }

uint32_t max_var_index(const Term& t) {
  uint32_t m = t->var.index;
  if (t->a) m = std::max(m, max_var_index(t->a));
  if (t->b) m = std::max(m, max_var_index(t->b));
  return m;
}

namespace {

Term canon_rec(const Term& t, CanonicalRenaming& ren,
               std::vector<std::pair<VarName, VarName>>& bound, uint32_t& next_bound) {
  switch (t->kind) {
    case TermKind::Var: {
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        if (it->first == t->var) return mk_var(it->second);
      if (t->var.index == 0) return t;  // surface variable, keep
      auto [it, inserted] = ren.free_map.try_emplace(t->var);
      if (inserted) it->second = VarName{"c", ren.next_free++};
      return mk_var(it->second);
    }
    case TermKind::Lam:
    case TermKind::Shift: {
      VarName nv{"a", next_bound++};
      bound.emplace_back(t->var, nv);
      Term body = canon_rec(t->a, ren, bound, next_bound);
      bound.pop_back();
      return t->kind == TermKind::Lam ? mk_lam(nv, std::move(body)) : mk_shift(nv, std::move(body));
    }
    case TermKind::App: {
      Term f = canon_rec(t->a, ren, bound, next_bound);
      Term a = canon_rec(t->b, ren, bound, next_bound);
      return mk_app(std::move(f), std::move(a));
    }
    case TermKind::Reset:
      return mk_reset(canon_rec(t->a, ren, bound, next_bound));
  }
  return t;
}

}  // namespace

Term canonicalize(const Term& t, CanonicalRenaming& ren) {
  std::vector<std::pair<VarName, VarName>> bound;
  uint32_t next_bound = 1;
  return canon_rec(t, ren, bound, next_bound);
}

Term canonical_term(const Term& t) {
  CanonicalRenaming ren;
  return canonicalize(t, ren);
}

// ---------------------------------------------------------------------
// Contexts

bool frame_eq(const Frame& f0, const Frame& f1) {
  if (f0.kind != f1.kind) return false;
  if (f0.kind == FrameKind::Delimiter) return true;
  return term_eq(f0.t, f1.t);
}

EvalCtx to_eval_ctx(const PureCtx& f) { return EvalCtx{f.frames}; }

std::optional<PureCtx> as_pure(const EvalCtx& e) {
  for (const auto& f : e.frames)
    if (f.kind == FrameKind::Delimiter) return std::nullopt;
  return PureCtx{e.frames};
}

Term plug_frame(const Frame& f, const Term& t) {
  switch (f.kind) {
    case FrameKind::AppArgOfValue: return mk_app(f.t, t);
    case FrameKind::AppFunBefore: return mk_app(t, f.t);
    case FrameKind::Delimiter: return mk_reset(t);
  }
  return t;
}

namespace {

Term plug_frames(const std::vector<Frame>& frames, Term t) {
  for (const auto& f : frames) t = plug_frame(f, t);
  return t;
}

}  // namespace

Term plug(const PureCtx& f, const Term& t) { return plug_frames(f.frames, t); }
Term plug(const EvalCtx& e, const Term& t) { return plug_frames(e.frames, t); }

std::set<VarName> free_vars(const EvalCtx& e) {
  std::set<VarName> out;
  for (const auto& f : e.frames) {
    if (f.kind == FrameKind::Delimiter) continue;
    auto fv = free_vars(f.t);
    out.insert(fv.begin(), fv.end());
  }
  return out;
}

SplitResult split_at_first_reset(const EvalCtx& e) {
  for (size_t i = 0; i < e.frames.size(); ++i) {
    if (e.frames[i].kind == FrameKind::Delimiter) {
      PureCtx inner{std::vector<Frame>(e.frames.begin(), e.frames.begin() + i)};
      EvalCtx outer{std::vector<Frame>(e.frames.begin() + i + 1, e.frames.end())};
      return SplitAround{std::move(outer), std::move(inner)};
    }
  }
  return SplitPure{PureCtx{e.frames}};
}

}  // namespace lamshift
