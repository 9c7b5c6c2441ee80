#include "cck/guard.hpp"

#include <map>

#include "cck/pretty.hpp"
#include "cck/reduction.hpp"

namespace cck {

Constraint less_of(Constraint c) {
  return c == Constraint::Empty ? Constraint::Empty : Constraint::Smaller;
}

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw TypeError(Diagnostic{"F guard", msg});
}

struct GuardEnv {
  Context& ctx;  // carries every binder in scope, for inference and whnf
  const ReductionConfig& cfg;
  std::map<std::string, Constraint> constraints;
  std::map<std::string, int> fix_args;  // recursive function -> 0-based rec position
};

Constraint ci(GuardEnv& env, const TermPtr& t);

Constraint ci_case(GuardEnv& env, const CaseT& c) {
  Constraint ce = ci(env, c.scrutinee);
  ci(env, c.motive);
  TermPtr sty = whnf(env.ctx, infer(env.ctx, c.scrutinee, env.cfg), env.cfg);
  SpineView sv = spine(sty);
  const auto* ir = sv.head->as<IndRefT>();
  if (!ir || !ir->block->ind_index(ir->name)) {
    for (auto& b : c.branches) ci(env, b);
    return Constraint::Empty;
  }
  const InductiveBlock& blk = *ir->block;
  const int n = blk.param_count;
  std::vector<int> ctors = ctors_of_inductive(blk, ir->name);
  std::set<std::string> block_dom = blk.dom();

  std::vector<Constraint> branch_cs;
  for (std::size_t k = 0; k < c.branches.size(); ++k) {
    TermPtr br = c.branches[k];
    ScopedEntries sc(env.ctx);
    std::vector<std::string> bound;
    if (k < ctors.size()) {
      // Walk the raw constructor type: the <z test looks at the declared
      // argument types, whose block references are still bare names.
      TermPtr cur = blk.con_decls[ctors[k]].second;
      for (int i = 0; i < n; ++i)
        if (const auto* p = cur->as<PiT>()) cur = p->codomain;
      while (const auto* p = cur->as<PiT>()) {
        const auto* la = br->as<LamT>();
        if (!la) break;
        bool mentions = false;
        for (auto& nm : free_vars(p->domain))
          if (block_dom.count(nm)) {
            mentions = true;
            break;
          }
        NameSet avoid = env.ctx.dom();
        NameSet fv = free_vars(la->body);
        avoid.insert(fv.begin(), fv.end());
        std::string x = fresh_name(la->hint.empty() ? "v" : la->hint, avoid);
        sc.push(AssumEntry{x, la->domain});
        env.constraints[x] = mentions ? less_of(ce) : Constraint::Empty;
        bound.push_back(x);
        br = open_binder(la->body, var(x));
        cur = p->codomain;
      }
    }
    branch_cs.push_back(ci(env, br));
    for (auto& nm : bound) env.constraints.erase(nm);
  }
  if (branch_cs.empty()) return Constraint::Empty;
  for (auto bc : branch_cs)
    if (bc != branch_cs[0]) return Constraint::Empty;
  return branch_cs[0];
}

Constraint ci(GuardEnv& env, const TermPtr& t) {
  if (const auto* v = t->as<VarT>()) {
    if (env.fix_args.count(v->name))
      fail("recursive call on non-smaller argument: " + v->name +
           " used as a first-class value");
    auto it = env.constraints.find(v->name);
    return it == env.constraints.end() ? Constraint::Empty : it->second;
  }
  if (t->is<AppT>()) {
    SpineView sv = spine(t);
    if (const auto* hv = sv.head->as<VarT>()) {
      auto it = env.fix_args.find(hv->name);
      if (it != env.fix_args.end()) {
        int k = it->second;
        if (static_cast<int>(sv.args.size()) < k + 1)
          fail("recursive binder count mismatch: call to " + hv->name + " supplies " +
               std::to_string(sv.args.size()) + " of " + std::to_string(k + 1) +
               " required arguments");
        for (std::size_t i = 0; i < sv.args.size(); ++i) {
          Constraint ca = ci(env, sv.args[i]);
          if (static_cast<int>(i) == k && ca != Constraint::Smaller)
            fail("recursive call on non-smaller argument: " + hv->name + " applied to " +
                 pretty_print(sv.args[i]));
        }
        return Constraint::Empty;
      }
    }
    Constraint ch = ci(env, sv.head);
    for (auto& a : sv.args) ci(env, a);
    return ch;
  }
  if (const auto* la = t->as<LamT>()) {
    ci(env, la->domain);
    NameSet avoid = env.ctx.dom();
    NameSet fv = free_vars(la->body);
    avoid.insert(fv.begin(), fv.end());
    std::string x = fresh_name(la->hint.empty() ? "x" : la->hint, avoid);
    ScopedEntries sc(env.ctx);
    sc.push(AssumEntry{x, la->domain});
    Constraint c = ci(env, open_binder(la->body, var(x)));
    env.constraints.erase(x);
    return c;
  }
  if (const auto* p = t->as<PiT>()) {
    ci(env, p->domain);
    NameSet avoid = env.ctx.dom();
    NameSet fv = free_vars(p->codomain);
    avoid.insert(fv.begin(), fv.end());
    std::string x = fresh_name(p->hint.empty() ? "x" : p->hint, avoid);
    ScopedEntries sc(env.ctx);
    sc.push(AssumEntry{x, p->domain});
    ci(env, open_binder(p->codomain, var(x)));
    env.constraints.erase(x);
    return Constraint::Empty;
  }
  if (const auto* l = t->as<LetT>()) {
    ci(env, l->def);
    if (l->def_type) ci(env, l->def_type);
    TermPtr ann = l->def_type ? l->def_type : infer(env.ctx, l->def, env.cfg);
    NameSet avoid = env.ctx.dom();
    NameSet fv = free_vars(l->body);
    avoid.insert(fv.begin(), fv.end());
    std::string x = fresh_name(l->hint.empty() ? "x" : l->hint, avoid);
    ScopedEntries sc(env.ctx);
    sc.push(DefEntry{x, l->def, ann});
    ci(env, open_binder(l->body, var(x)));
    env.constraints.erase(x);
    return Constraint::Empty;
  }
  if (const auto* c = t->as<CaseT>()) return ci_case(env, *c);
  if (const auto* f = t->as<FixT>()) {
    // Nested fixpoints are traversed with their own binders unconstrained:
    // they never manufacture smallness for the enclosing recursion.
    ScopedEntries sc(env.ctx);
    for (auto& d : f->defs) {
      ci(env, d.type);
      sc.push(AssumEntry{d.name, d.type});
    }
    for (auto& d : f->defs) ci(env, d.body);
    return Constraint::Empty;
  }
  return Constraint::Empty;  // sorts, inductive references
}

}  // namespace

void check_fix_block(const Context& ctx0, const FixT& fx, const ReductionConfig& cfg) {
  Context ctx = ctx0;
  ScopedEntries outer(ctx);
  for (auto& d : fx.defs)
    if (!ctx.has_name(d.name)) outer.push(AssumEntry{d.name, d.type});

  for (auto& def : fx.defs) {
    GuardEnv env{ctx, cfg, {}, {}};
    for (auto& d : fx.defs) env.fix_args[d.name] = d.rec_arg;
    ScopedEntries sc(ctx);
    TermPtr cur = def.body;
    for (int j = 0; j <= def.rec_arg; ++j) {
      const auto* la = cur->as<LamT>();
      if (!la)
        fail("recursive binder count mismatch: " + def.name + " must begin with " +
             std::to_string(def.rec_arg + 1) + " abstractions");
      NameSet avoid = ctx.dom();
      NameSet fv = free_vars(la->body);
      avoid.insert(fv.begin(), fv.end());
      std::string x = fresh_name(la->hint.empty() ? "y" : la->hint, avoid);
      sc.push(AssumEntry{x, la->domain});
      if (j == def.rec_arg) {
        env.constraints[x] = Constraint::Equal;
        TermPtr dom = whnf(ctx, la->domain, cfg);
        const auto* ir = spine(dom).head->as<IndRefT>();
        if (!ir || !ir->block->ind_index(ir->name))
          fail("recursive argument not an inductive type: " + def.name + " recurs on " +
               pretty_print(dom));
      } else {
        env.constraints[x] = Constraint::Empty;
      }
      cur = open_binder(la->body, var(x));
    }
    ci(env, cur);
  }
}

}  // namespace cck
