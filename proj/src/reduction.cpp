#include "cck/reduction.hpp"

namespace cck {

namespace {

struct Fuel {
  long long left;
  void tick() {
    if (--left < 0) throw FuelExhausted("reduction step budget exhausted");
  }
};

TermPtr whnf_fuel(const Context& ctx, TermPtr t, Fuel& f);

TermPtr rebuild_app(TermPtr head, const std::vector<TermPtr>& args, std::size_t from = 0) {
  for (std::size_t i = from; i < args.size(); ++i) head = app(head, args[i]);
  return head;
}

TermPtr whnf_fuel(const Context& ctx, TermPtr t, Fuel& f) {
  for (;;) {
    SpineView sv = spine(t);
    const TermPtr& h = sv.head;
    if (const auto* l = h->as<LetT>()) {
      f.tick();
      t = rebuild_app(open_binder(l->body, l->def), sv.args);
      continue;
    }
    if (const auto* la = h->as<LamT>()) {
      if (sv.args.empty()) return t;
      f.tick();
      t = rebuild_app(open_binder(la->body, sv.args[0]), sv.args, 1);
      continue;
    }
    if (const auto* v = h->as<VarT>()) {
      if (const DefEntry* d = ctx.find_def(v->name)) {
        f.tick();
        t = rebuild_app(d->body, sv.args);
        continue;
      }
      return t;
    }
    if (const auto* c = h->as<CaseT>()) {
      TermPtr scr = whnf_fuel(ctx, c->scrutinee, f);
      SpineView ssv = spine(scr);
      const auto* ir = ssv.head->as<IndRefT>();
      if (ir && ir->block->ctor_index(ir->name)) {
        auto d = ctor_conclusion_head(*ir->block, ir->name);
        if (d) {
          auto ctors = ctors_of_inductive(*ir->block, *d);
          int slot = -1;
          for (std::size_t k = 0; k < ctors.size(); ++k)
            if (ir->block->con_decls[ctors[k]].first == ir->name) {
              slot = static_cast<int>(k);
              break;
            }
          int n = ir->block->param_count;
          if (slot >= 0 && static_cast<int>(ssv.args.size()) >= n &&
              slot < static_cast<int>(c->branches.size())) {
            f.tick();
            TermPtr applied = c->branches[slot];
            for (std::size_t i = n; i < ssv.args.size(); ++i) applied = app(applied, ssv.args[i]);
            t = rebuild_app(applied, sv.args);
            continue;
          }
        }
      }
      return rebuild_app(case_of(scr, c->motive, c->branches), sv.args);
    }
    if (const auto* fx = h->as<FixT>()) {
      const FixDef& def = fx->defs[fx->index];
      int k = def.rec_arg;
      if (static_cast<int>(sv.args.size()) < k + 1) return t;
      TermPtr rec = whnf_fuel(ctx, sv.args[k], f);
      SpineView rsv = spine(rec);
      const auto* ir = rsv.head->as<IndRefT>();
      std::vector<TermPtr> args2 = sv.args;
      args2[k] = rec;
      if (ir && ir->block->ctor_index(ir->name)) {
        f.tick();
        std::vector<Binding> subs;
        for (std::size_t i = 0; i < fx->defs.size(); ++i)
          subs.push_back({fx->defs[i].name, fix(static_cast<int>(i), fx->defs)});
        t = rebuild_app(simultaneous_subst(def.body, subs), args2);
        continue;
      }
      return rebuild_app(h, args2);
    }
    return t;  // sort, product, bound, inductive reference heads
  }
}

TermPtr normalize_fuel(const Context& ctx, TermPtr t, Fuel& f) {
  t = whnf_fuel(ctx, t, f);
  SpineView sv = spine(t);
  const TermPtr& h = sv.head;
  TermPtr nh = h;
  if (const auto* p = h->as<PiT>()) {
    TermPtr dom = normalize_fuel(ctx, p->domain, f);
    NameSet avoid = ctx.dom();
    NameSet fv = free_vars(p->codomain);
    avoid.insert(fv.begin(), fv.end());
    std::string x = fresh_name(p->hint.empty() ? "x" : p->hint, avoid);
    TermPtr cod = normalize_fuel(ctx, open_binder(p->codomain, var(x)), f);
    nh = pi(x, dom, cod);
  } else if (const auto* la = h->as<LamT>()) {
    TermPtr dom = normalize_fuel(ctx, la->domain, f);
    NameSet avoid = ctx.dom();
    NameSet fv = free_vars(la->body);
    avoid.insert(fv.begin(), fv.end());
    std::string x = fresh_name(la->hint.empty() ? "x" : la->hint, avoid);
    TermPtr body = normalize_fuel(ctx, open_binder(la->body, var(x)), f);
    nh = lam(x, dom, body);
  } else if (const auto* c = h->as<CaseT>()) {
    TermPtr scr = normalize_fuel(ctx, c->scrutinee, f);
    TermPtr motive = normalize_fuel(ctx, c->motive, f);
    std::vector<TermPtr> branches;
    branches.reserve(c->branches.size());
    for (auto& br : c->branches) branches.push_back(normalize_fuel(ctx, br, f));
    nh = case_of(scr, motive, branches);
  }
  // Fixpoints and inductive references are kept verbatim: their attached
  // declarations are compared structurally by conversion.
  TermPtr out = nh;
  for (auto& a : sv.args) out = app(out, normalize_fuel(ctx, a, f));
  return out;
}

bool subtype_norm(const Context& ctx, const TermPtr& a, const TermPtr& b, Fuel& f) {
  if (alpha_eq(a, b)) return true;
  const auto* sa = a->as<SortT>();
  const auto* sb = b->as<SortT>();
  if (sa && sb) {
    if (sa->sort.prop) return !sb->sort.prop;
    if (sb->sort.prop) return false;
    return sa->sort.level < sb->sort.level;
  }
  const auto* pa = a->as<PiT>();
  const auto* pb = b->as<PiT>();
  if (pa && pb) {
    if (!alpha_eq(pa->domain, pb->domain)) return false;
    NameSet avoid = ctx.dom();
    NameSet fa = free_vars(pa->codomain);
    NameSet fb = free_vars(pb->codomain);
    avoid.insert(fa.begin(), fa.end());
    avoid.insert(fb.begin(), fb.end());
    std::string x = fresh_name(pa->hint.empty() ? "x" : pa->hint, avoid);
    return subtype_norm(ctx, open_binder(pa->codomain, var(x)), open_binder(pb->codomain, var(x)),
                        f);
  }
  return false;
}

}  // namespace

TermPtr whnf(const Context& ctx, const TermPtr& t, const ReductionConfig& cfg) {
  Fuel f{cfg.max_steps};
  return whnf_fuel(ctx, t, f);
}

TermPtr normalize(const Context& ctx, const TermPtr& t, const ReductionConfig& cfg) {
  Fuel f{cfg.max_steps};
  return normalize_fuel(ctx, t, f);
}

bool conv(const Context& ctx, const TermPtr& a, const TermPtr& b, const ReductionConfig& cfg) {
  if (alpha_eq(a, b)) return true;
  Fuel f{cfg.max_steps};
  return alpha_eq(normalize_fuel(ctx, a, f), normalize_fuel(ctx, b, f));
}

bool subtype(const Context& ctx, const TermPtr& a, const TermPtr& b,
             const ReductionConfig& cfg) {
  Fuel f{cfg.max_steps};
  return subtype_norm(ctx, normalize_fuel(ctx, a, f), normalize_fuel(ctx, b, f), f);
}

std::optional<std::string> ctor_conclusion_head(const InductiveBlock& b, const std::string& ctor) {
  const TermPtr* ty = b.decl_type(ctor);
  if (!ty || !b.ctor_index(ctor)) return std::nullopt;
  TermPtr cur = *ty;
  while (const auto* p = cur->as<PiT>()) cur = p->codomain;
  SpineView sv = spine(cur);
  if (const auto* v = sv.head->as<VarT>())
    if (b.ind_index(v->name)) return v->name;
  return std::nullopt;
}

std::vector<int> ctors_of_inductive(const InductiveBlock& b, const std::string& ind) {
  std::vector<int> out;
  for (std::size_t i = 0; i < b.con_decls.size(); ++i) {
    auto head = ctor_conclusion_head(b, b.con_decls[i].first);
    if (head && *head == ind) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace cck
