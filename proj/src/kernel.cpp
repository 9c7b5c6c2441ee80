#include "cck/kernel.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cck/guard.hpp"
#include "cck/pretty.hpp"

namespace cck {

namespace {

[[noreturn]] void fail(const std::string& rule, const std::string& msg) {
  throw TypeError(Diagnostic{rule, msg});
}

TermPtr infer_mut(Context& ctx, const TermPtr& t, const ReductionConfig& cfg);

Sort infer_sort_mut(Context& ctx, const TermPtr& t, const ReductionConfig& cfg,
                    const std::string& rule) {
  TermPtr ty = whnf(ctx, infer_mut(ctx, t, cfg), cfg);
  const auto* s = ty->as<SortT>();
  if (!s) fail(rule, pretty_print(t) + " is not a type (its type is " + pretty_print(ty) + ")");
  return s->sort;
}

void check_mut(Context& ctx, const TermPtr& t, const TermPtr& type, const ReductionConfig& cfg,
               const std::string& rule = "(cum)") {
  TermPtr actual = infer_mut(ctx, t, cfg);
  if (!subtype(ctx, actual, type, cfg))
    fail(rule, pretty_print(t) + " has type " + pretty_print(normalize(ctx, actual, cfg)) +
                   ", which is not included in " + pretty_print(normalize(ctx, type, cfg)));
}

std::string fresh_for(const Context& ctx, const std::string& hint, const TermPtr& scope) {
  NameSet avoid = ctx.dom();
  if (scope) {
    NameSet fv = free_vars(scope);
    avoid.insert(fv.begin(), fv.end());
  }
  return fresh_name(hint.empty() ? "x" : hint, avoid);
}

// Consume leading products of `t`, instantiating them with `args`.
TermPtr instantiate_products(Context& ctx, TermPtr t, const std::vector<TermPtr>& args,
                             std::size_t from, std::size_t to, const ReductionConfig& cfg,
                             const std::string& rule) {
  for (std::size_t i = from; i < to; ++i) {
    t = whnf(ctx, t, cfg);
    const auto* p = t->as<PiT>();
    if (!p) fail(rule, "expected a product while instantiating arguments");
    t = open_binder(p->codomain, args[i]);
  }
  return t;
}

// Number of products of an arity, whnf-ing between binders.
int arity_binder_count(Context& ctx, TermPtr a, const ReductionConfig& cfg) {
  a = whnf(ctx, a, cfg);
  const auto* p = a->as<PiT>();
  if (!p) return 0;
  std::string x = fresh_for(ctx, p->hint, p->codomain);
  ScopedEntries sc(ctx);
  sc.push(AssumEntry{x, p->domain});
  return 1 + arity_binder_count(ctx, open_binder(p->codomain, var(x)), cfg);
}

TermPtr infer_case(Context& ctx, const CaseT& c, const ReductionConfig& cfg) {
  TermPtr scr_ty = whnf(ctx, infer_mut(ctx, c.scrutinee, cfg), cfg);
  SpineView sv = spine(scr_ty);
  const auto* ir = sv.head->as<IndRefT>();
  if (!ir || !ir->block->ind_index(ir->name))
    fail("(case)", "scrutinee has type " + pretty_print(scr_ty) + ", which is not inductive");
  const BlockPtr& block = ir->block;
  const std::string& d = ir->name;
  const int n = block->param_count;
  const TermPtr& decl = *block->decl_type(d);

  int total = arity_binder_count(ctx, decl, cfg);
  if (static_cast<int>(sv.args.size()) != total)
    fail("(case)", "scrutinee type " + pretty_print(scr_ty) + " is not fully applied");
  std::vector<TermPtr> params(sv.args.begin(), sv.args.begin() + n);
  std::vector<TermPtr> indices(sv.args.begin() + n, sv.args.end());

  TermPtr motive_ty = infer_mut(ctx, c.motive, cfg);
  TermPtr arity = instantiate_products(ctx, decl, params, 0, params.size(), cfg, "(case)");
  check_elim_constraint(ctx, block, d, params, arity, motive_ty, cfg);

  std::vector<int> ctors = ctors_of_inductive(*block, d);
  if (ctors.size() != c.branches.size())
    fail("(case) branches", "case on " + d + " needs " + std::to_string(ctors.size()) +
                                " branches, found " + std::to_string(c.branches.size()));

  for (std::size_t k = 0; k < ctors.size(); ++k) {
    const auto& [cname, craw] = block->con_decls[ctors[k]];
    TermPtr cty = replace_ind_names(craw, block);
    cty = instantiate_products(ctx, cty, params, 0, params.size(), cfg, "(case)");
    NameSet avoid = ctx.dom();
    NameSet fv = free_vars(cty);
    avoid.insert(fv.begin(), fv.end());
    OpenedTelescope tel = strip_pis(cty, avoid);
    SpineView concl = spine(tel.tail);
    std::vector<TermPtr> concl_indices(
        concl.args.begin() + std::min<std::size_t>(n, concl.args.size()), concl.args.end());
    TermPtr applied_ctor = ind_ref(block, cname);
    for (auto& p : params) applied_ctor = app(applied_ctor, p);
    TermPtr expected = c.motive;
    for (auto& w : concl_indices) expected = app(expected, w);
    for (auto& b : tel.binders) applied_ctor = app(applied_ctor, var(b.name));
    expected = app(expected, applied_ctor);
    expected = rebuild_pis(tel.binders, expected);
    check_mut(ctx, c.branches[k], expected, cfg, "(case)");
  }

  TermPtr result = c.motive;
  for (auto& u : indices) result = app(result, u);
  return app(result, c.scrutinee);
}

TermPtr infer_fix(Context& ctx, const TermPtr& t, const FixT& fx, const ReductionConfig& cfg) {
  if (fx.defs.empty() || fx.index < 0 || fx.index >= static_cast<int>(fx.defs.size()))
    fail("(fix)", "fixpoint selector out of range");
  std::set<std::string> seen;
  for (auto& d : fx.defs) {
    if (!seen.insert(d.name).second) fail("(fix)", "duplicate fixpoint name " + d.name);
    if (ctx.has_name(d.name)) fail("(fix)", "fixpoint name " + d.name + " already declared");
    if (d.rec_arg < 0) fail("(fix)", "recursive position of " + d.name + " must be positive");
    infer_sort_mut(ctx, d.type, cfg, "(fix)");
  }
  {
    ScopedEntries sc(ctx);
    for (auto& d : fx.defs) sc.push(AssumEntry{d.name, d.type});
    for (auto& d : fx.defs) check_mut(ctx, d.body, d.type, cfg, "(fix)");
  }
  check_fix_block(ctx, fx, cfg);
  return fx.defs[fx.index].type;
}

TermPtr infer_mut(Context& ctx, const TermPtr& t, const ReductionConfig& cfg) {
  if (const auto* v = t->as<VarT>()) {
    if (const TermPtr* ty = ctx.lookup_type(v->name)) return *ty;
    fail("(var)", "unbound variable " + v->name);
  }
  if (t->is<BoundT>()) fail("(var)", "dangling bound variable");
  if (const auto* s = t->as<SortT>())
    return s->sort.prop ? type_u(0) : type_u(s->sort.level + 1);
  if (const auto* p = t->as<PiT>()) {
    Sort s1 = infer_sort_mut(ctx, p->domain, cfg, "(Π)");
    std::string x = fresh_for(ctx, p->hint, p->codomain);
    ScopedEntries sc(ctx);
    sc.push(AssumEntry{x, p->domain});
    Sort s2 = infer_sort_mut(ctx, open_binder(p->codomain, var(x)), cfg, "(Π)");
    return sort(product_sort(s1, s2));
  }
  if (const auto* l = t->as<LamT>()) {
    infer_sort_mut(ctx, l->domain, cfg, "(λ)");
    std::string x = fresh_for(ctx, l->hint, l->body);
    TermPtr body_ty;
    {
      ScopedEntries sc(ctx);
      sc.push(AssumEntry{x, l->domain});
      body_ty = infer_mut(ctx, open_binder(l->body, var(x)), cfg);
    }
    return pi(x, l->domain, body_ty);
  }
  if (const auto* a = t->as<AppT>()) {
    TermPtr fn_ty = whnf(ctx, infer_mut(ctx, a->fn, cfg), cfg);
    const auto* p = fn_ty->as<PiT>();
    if (!p)
      fail("(app)", "applied term " + pretty_print(a->fn) + " has non-product type " +
                        pretty_print(fn_ty));
    check_mut(ctx, a->arg, p->domain, cfg, "(app)");
    return open_binder(p->codomain, a->arg);
  }
  if (const auto* l = t->as<LetT>()) {
    TermPtr ann = l->def_type;
    if (ann) {
      infer_sort_mut(ctx, ann, cfg, "(let)");
      check_mut(ctx, l->def, ann, cfg, "(let)");
    } else {
      ann = infer_mut(ctx, l->def, cfg);
    }
    std::string x = fresh_for(ctx, l->hint, l->body);
    TermPtr body_ty;
    {
      ScopedEntries sc(ctx);
      sc.push(DefEntry{x, l->def, ann});
      body_ty = infer_mut(ctx, open_binder(l->body, var(x)), cfg);
    }
    return substitute(body_ty, x, l->def);
  }
  if (const auto* c = t->as<CaseT>()) return infer_case(ctx, *c, cfg);
  if (const auto* ir = t->as<IndRefT>()) {
    bool is_ind = ir->block->ind_index(ir->name).has_value();
    const std::string rule = is_ind ? "(ind-type)" : "(ind-cons)";
    if (!ir->block->has_name(ir->name)) fail(rule, ir->name + " is not declared by its block");
    if (!ctx.contains_block(*ir->block))
      fail(rule, "inductive block of " + ir->name + " is not in the context");
    return replace_ind_names(*ir->block->decl_type(ir->name), ir->block);
  }
  if (const auto* f = t->as<FixT>()) return infer_fix(ctx, t, *f, cfg);
  fail("(var)", "unrecognized term");
}

// Every telescope binder type of a constructor must use x strictly
// positively: x absent, or the type is a product telescope ending in an
// application of x in which x appears nowhere else.
bool strictly_positive(Context& ctx, const std::string& x, const TermPtr& m) {
  if (!free_vars(m).count(x)) return true;
  NameSet avoid = ctx.dom();
  NameSet fv = free_vars(m);
  avoid.insert(fv.begin(), fv.end());
  OpenedTelescope tel = strip_pis(m, avoid);
  for (auto& b : tel.binders)
    if (free_vars(b.domain).count(x)) return false;
  SpineView sv = spine(tel.tail);
  const auto* hv = sv.head->as<VarT>();
  if (!hv || hv->name != x) return false;
  for (auto& a : sv.args)
    if (free_vars(a).count(x)) return false;
  return true;
}

// Every occurrence of a block name inside constructor types must be fully
// applied, saturating its arity.
void check_saturated(const TermPtr& t, const std::map<std::string, int>& arity_args,
                     const std::string& where) {
  SpineView sv = spine(t);
  if (const auto* v = sv.head->as<VarT>()) {
    auto it = arity_args.find(v->name);
    if (it != arity_args.end() && static_cast<int>(sv.args.size()) != it->second)
      fail("(ind-wf) constructor form",
           v->name + " is not fully applied in " + where);
  } else {
    const Term& h = *sv.head;
    if (const auto* p = h.as<PiT>()) {
      check_saturated(p->domain, arity_args, where);
      check_saturated(p->codomain, arity_args, where);
    } else if (const auto* l = h.as<LamT>()) {
      check_saturated(l->domain, arity_args, where);
      check_saturated(l->body, arity_args, where);
    } else if (const auto* l = h.as<LetT>()) {
      check_saturated(l->def, arity_args, where);
      if (l->def_type) check_saturated(l->def_type, arity_args, where);
      check_saturated(l->body, arity_args, where);
    } else if (const auto* c = h.as<CaseT>()) {
      check_saturated(c->scrutinee, arity_args, where);
      check_saturated(c->motive, arity_args, where);
      for (auto& b : c->branches) check_saturated(b, arity_args, where);
    }
  }
  for (auto& a : sv.args) check_saturated(a, arity_args, where);
}

}  // namespace

bool product_rule(Sort s1, Sort s2, Sort s3) {
  if (s2.prop && s3.prop) return true;
  if (!s1.prop && !s2.prop && !s3.prop) return s3.level >= std::max(s1.level, s2.level);
  return false;
}

Sort product_sort(Sort s1, Sort s2) {
  if (s2.prop) return Sort::mk_prop();
  int lifted = s1.prop ? 0 : s1.level;
  return Sort::mk_type(std::max(lifted, s2.level));
}

std::optional<Sort> is_arity(const Context& ctx, const TermPtr& a, const ReductionConfig& cfg) {
  Context c = ctx;
  TermPtr cur = a;
  for (;;) {
    cur = whnf(c, cur, cfg);
    if (const auto* s = cur->as<SortT>()) return s->sort;
    const auto* p = cur->as<PiT>();
    if (!p) return std::nullopt;
    std::string x = fresh_for(c, p->hint, p->codomain);
    c.push(AssumEntry{x, p->domain});
    cur = open_binder(p->codomain, var(x));
  }
}

TermPtr infer(const Context& ctx, const TermPtr& t, const ReductionConfig& cfg) {
  Context c = ctx;
  return infer_mut(c, t, cfg);
}

Sort infer_sort(const Context& ctx, const TermPtr& t, const ReductionConfig& cfg) {
  Context c = ctx;
  return infer_sort_mut(c, t, cfg, "(Π)");
}

void check(const Context& ctx, const TermPtr& t, const TermPtr& type,
           const ReductionConfig& cfg) {
  Context c = ctx;
  check_mut(c, t, type, cfg);
}

bool judgmental_eq(const Context& ctx, const TermPtr& t, const TermPtr& u, const TermPtr& type,
                   const ReductionConfig& cfg) {
  check(ctx, t, type, cfg);
  check(ctx, u, type, cfg);
  return conv(ctx, t, u, cfg);
}

void check_elim_constraint(const Context& ctx, const BlockPtr& block, const std::string& ind,
                           std::vector<TermPtr> qs, const TermPtr& arity,
                           const TermPtr& candidate, const ReductionConfig& cfg) {
  Context c = ctx;
  ScopedEntries sc(c);
  TermPtr a = whnf(c, arity, cfg);
  TermPtr b = whnf(c, candidate, cfg);
  while (const auto* pa = a->as<PiT>()) {
    const auto* pb = b->as<PiT>();
    if (!pb || !conv(c, pa->domain, pb->domain, cfg))
      fail("(case) C", "motive must start with the inductive's remaining arguments");
    std::string u = fresh_for(c, pa->hint, pa->codomain);
    sc.push(AssumEntry{u, pa->domain});
    qs.push_back(var(u));
    a = whnf(c, open_binder(pa->codomain, var(u)), cfg);
    b = whnf(c, open_binder(pb->codomain, var(u)), cfg);
  }
  const auto* sa = a->as<SortT>();
  if (!sa) fail("(case) C", "inductive arity does not end in a sort");
  const auto* pb = b->as<PiT>();
  TermPtr applied = ind_ref(block, ind);
  for (auto& q : qs) applied = app(applied, q);
  if (!pb || !conv(c, pb->domain, applied, cfg))
    fail("(case) C", "motive must abstract over " + pretty_print(applied));
  std::string y = fresh_for(c, pb->hint, pb->codomain);
  sc.push(AssumEntry{y, pb->domain});
  TermPtr tail = whnf(c, open_binder(pb->codomain, var(y)), cfg);
  const auto* st = tail->as<SortT>();
  if (!st) fail("(case) C", "motive must end in a sort");
  if (!sa->sort.prop) return;       // a Type-sorted inductive eliminates anywhere
  if (st->sort.prop) return;        // Prop into Prop
  std::vector<int> ctors = ctors_of_inductive(*block, ind);
  if (ctors.empty()) return;        // empty propositions eliminate anywhere
  if (ctors.size() > 1)
    fail("(case) C", "large elimination of a multi-constructor proposition");
  TermPtr cty = replace_ind_names(block->con_decls[ctors[0]].second, block);
  const int n = block->param_count;
  for (int i = 0; i < n; ++i) {
    cty = whnf(c, cty, cfg);
    const auto* p = cty->as<PiT>();
    if (!p) fail("(case) C", "constructor lacks the shared parameters");
    if (static_cast<int>(qs.size()) < n) fail("(case) C", "missing parameter instances");
    cty = open_binder(p->codomain, qs[i]);
  }
  for (;;) {
    cty = whnf(c, cty, cfg);
    const auto* p = cty->as<PiT>();
    if (!p) break;
    Sort s = infer_sort_mut(c, p->domain, cfg, "(case) C");
    if (!s.prop)
      fail("(case) C",
           "large elimination: constructor argument " + pretty_print(p->domain) +
               " is not a proposition");
    std::string v = fresh_for(c, p->hint, p->codomain);
    sc.push(AssumEntry{v, p->domain});
    cty = open_binder(p->codomain, var(v));
  }
}

void admit_inductive(const Context& ctx, const BlockPtr& block, const ReductionConfig& cfg) {
  const InductiveBlock& b = *block;
  if (b.ind_decls.empty()) fail("(ind-wf) names", "block declares no inductive type");
  if (b.param_count < 0) fail("(ind-wf) parameters", "negative parameter count");
  std::set<std::string> seen;
  auto check_name = [&](const std::string& n) {
    if (!seen.insert(n).second) fail("(ind-wf) names", "duplicate block name " + n);
    if (ctx.has_name(n)) fail("(ind-wf) names", n + " is already declared");
  };
  for (auto& [n, ty] : b.ind_decls) check_name(n);
  for (auto& [n, ty] : b.con_decls) check_name(n);

  // Shared leading parameter telescope, compared structurally.
  const int n = b.param_count;
  std::vector<TermPtr> ref_domains;
  {
    TermPtr cur = b.ind_decls[0].second;
    for (int i = 0; i < n; ++i) {
      const auto* p = cur->as<PiT>();
      if (!p)
        fail("(ind-wf) parameters",
             b.ind_decls[0].first + " has fewer than " + std::to_string(n) + " parameters");
      ref_domains.push_back(p->domain);
      cur = p->codomain;
    }
  }
  auto check_params = [&](const std::string& who, const TermPtr& ty) {
    TermPtr cur = ty;
    for (int i = 0; i < n; ++i) {
      const auto* p = cur->as<PiT>();
      if (!p) fail("(ind-wf) parameters", who + " lacks the shared parameter telescope");
      if (!alpha_eq(p->domain, ref_domains[i]))
        fail("(ind-wf) parameters",
             who + " differs from the shared parameters at position " + std::to_string(i + 1));
      cur = p->codomain;
    }
  };
  for (auto& [name, ty] : b.ind_decls) check_params(name, ty);
  for (auto& [name, ty] : b.con_decls) check_params(name, ty);

  // Arities, of sort other than Prop, typed without the block in scope.
  Context c = ctx;
  std::map<std::string, int> arity_args;
  for (auto& [name, ty] : b.ind_decls) {
    infer_sort_mut(c, ty, cfg, "(ind-wf) arity");
    auto tail = is_arity(c, ty, cfg);
    if (!tail) fail("(ind-wf) arity", name + " is not declared at an arity");
    if (tail->prop) fail("(ind-wf) arity", name + " would be a Prop-sorted inductive type");
    arity_args[name] = arity_binder_count(c, ty, cfg);
  }

  // Constructors, typed with the inductives in scope as assumptions.
  ScopedEntries sc(c);
  for (auto& [name, ty] : b.ind_decls) sc.push(AssumEntry{name, ty});
  for (auto& [cname, cty] : b.con_decls) {
    infer_sort_mut(c, cty, cfg, "(ind-cons)");
    check_saturated(cty, arity_args, "the type of " + cname);

    NameSet avoid = c.dom();
    NameSet fv = free_vars(cty);
    avoid.insert(fv.begin(), fv.end());
    OpenedTelescope tel = strip_pis(cty, avoid);
    if (static_cast<int>(tel.binders.size()) < n)
      fail("(ind-wf) parameters", cname + " lacks the shared parameter telescope");
    SpineView concl = spine(tel.tail);
    const auto* hv = concl.head->as<VarT>();
    if (!hv || !b.ind_index(hv->name))
      fail("(ind-wf) constructor form",
           cname + " does not conclude in an inductive of its block");
    for (int i = 0; i < n; ++i) {
      const auto* av = concl.args[i]->as<VarT>();
      if (!av || av->name != tel.binders[i].name)
        fail("(ind-wf) parameter use",
             cname + " must pass the shared parameters unchanged to " + hv->name);
    }
    for (auto& [iname, ity] : b.ind_decls) {
      for (auto& bd : tel.binders)
        if (!strictly_positive(c, iname, bd.domain))
          fail("(ind-wf) positivity",
               iname + " occurs non-positively in an argument of " + cname);
    }
  }
}

void wf_context(const Context& ctx, const ReductionConfig& cfg) {
  Context acc;
  for (auto& e : ctx.entries()) {
    if (const auto* a = std::get_if<AssumEntry>(&e)) {
      if (acc.has_name(a->name)) fail("(wf)", a->name + " is declared twice");
      infer_sort_mut(acc, a->type, cfg, "(wf)");
      acc.push(*a);
    } else if (const auto* d = std::get_if<DefEntry>(&e)) {
      if (acc.has_name(d->name)) fail("(wf)", d->name + " is declared twice");
      infer_sort_mut(acc, d->type, cfg, "(wf)");
      check_mut(acc, d->body, d->type, cfg, "(wf)");
      acc.push(*d);
    } else if (const auto* i = std::get_if<IndEntry>(&e)) {
      admit_inductive(acc, i->block, cfg);
      acc.push(*i);
    }
  }
}

}  // namespace cck
