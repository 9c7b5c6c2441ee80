#include "cck/pretty.hpp"

#include "cck/reduction.hpp"

namespace cck {

namespace {

// Precedence levels: 0 binder forms, 1 arrows, 2 application, 3 atoms.
std::string pp(const TermPtr& t, int prec, NameSet avoid);

std::string wrap(bool needed, const std::string& s) { return needed ? "(" + s + ")" : s; }

bool codomain_dependent(const TermPtr& codomain) {
  std::string probe = fresh_name("y", free_vars(codomain));
  NameSet fv = free_vars(open_binder(codomain, var(probe)));
  return fv.count(probe) > 0;
}

std::string pp_case(const CaseT& c, NameSet avoid) {
  OpenedTelescope tel = strip_lams(c.motive, avoid);
  std::string out = "match " + pp(c.scrutinee, 2, avoid);
  if (!tel.binders.empty()) {
    const OpenedBinder& y = tel.binders.back();
    SpineView dom = spine(y.domain);
    const auto* ir = dom.head->as<IndRefT>();
    if (ir && ir->block->ind_index(ir->name)) {
      const InductiveBlock& blk = *ir->block;
      int n = blk.param_count;
      out += " as " + y.name + " in " + ir->name;
      for (int i = 0; i < n && i < static_cast<int>(dom.args.size()); ++i)
        out += " " + pp(dom.args[i], 3, avoid);
      for (std::size_t i = 0; i + 1 < tel.binders.size(); ++i) out += " " + tel.binders[i].name;
      for (auto& b : tel.binders) avoid.insert(b.name);
      out += " return " + pp(tel.tail, 0, avoid);
      out += " with";
      std::vector<int> ctors = ctors_of_inductive(blk, ir->name);
      for (std::size_t k = 0; k < c.branches.size(); ++k) {
        out += " |";
        int args = 0;
        std::string cname = "?";
        if (k < ctors.size()) {
          cname = blk.con_decls[ctors[k]].first;
          args = count_pis(blk.con_decls[ctors[k]].second) - n;
        }
        out += " " + cname;
        NameSet branch_avoid = avoid;
        OpenedTelescope btel = strip_lams(c.branches[k], branch_avoid, args);
        TermPtr body = btel.tail;
        for (auto& b : btel.binders) {
          out += " " + b.name;
          branch_avoid.insert(b.name);
        }
        for (int extra = static_cast<int>(btel.binders.size()); extra < args; ++extra) {
          std::string v = fresh_name("v", branch_avoid);
          branch_avoid.insert(v);
          out += " " + v;
          body = app(body, var(v));
        }
        out += " => " + pp(body, 0, branch_avoid);
      }
      return out + " end";
    }
  }
  // No recognizable motive telescope: fall back to an explicit return form.
  out += " return " + pp(c.motive, 2, avoid) + " with";
  for (auto& b : c.branches) out += " | ? => " + pp(b, 0, avoid);
  return out + " end";
}

std::string pp(const TermPtr& t, int prec, NameSet avoid) {
  if (const auto* v = t->as<VarT>()) return v->name;
  if (const auto* b = t->as<BoundT>()) return b->hint + "#" + std::to_string(b->index);
  if (const auto* s = t->as<SortT>()) return pretty_sort(s->sort);
  if (const auto* ir = t->as<IndRefT>()) return ir->name;
  if (t->is<AppT>()) {
    SpineView sv = spine(t);
    std::string out = pp(sv.head, 2, avoid);
    for (auto& a : sv.args) out += " " + pp(a, 3, avoid);
    return wrap(prec > 2, out);
  }
  if (const auto* p = t->as<PiT>()) {
    if (!codomain_dependent(p->codomain)) {
      std::string dummy = fresh_name("_", avoid);
      std::string out = pp(p->domain, 2, avoid) + " -> " +
                        pp(open_binder(p->codomain, var(dummy)), 1, avoid);
      return wrap(prec > 1, out);
    }
    NameSet inner = avoid;
    NameSet fv = free_vars(p->codomain);
    inner.insert(fv.begin(), fv.end());
    std::string x = fresh_name(p->hint.empty() ? "x" : p->hint, inner);
    inner.insert(x);
    std::string out = "forall (" + x + " : " + pp(p->domain, 0, avoid) + "), " +
                      pp(open_binder(p->codomain, var(x)), 0, inner);
    return wrap(prec > 0, out);
  }
  if (const auto* l = t->as<LamT>()) {
    NameSet inner = avoid;
    NameSet fv = free_vars(l->body);
    inner.insert(fv.begin(), fv.end());
    std::string x = fresh_name(l->hint.empty() ? "x" : l->hint, inner);
    inner.insert(x);
    std::string out = "fun (" + x + " : " + pp(l->domain, 0, avoid) + ") => " +
                      pp(open_binder(l->body, var(x)), 0, inner);
    return wrap(prec > 0, out);
  }
  if (const auto* l = t->as<LetT>()) {
    NameSet inner = avoid;
    NameSet fv = free_vars(l->body);
    inner.insert(fv.begin(), fv.end());
    std::string x = fresh_name(l->hint.empty() ? "x" : l->hint, inner);
    inner.insert(x);
    std::string out = "let " + x + " := " + pp(l->def, 0, avoid);
    if (l->def_type) out += " : " + pp(l->def_type, 0, avoid);
    out += " in " + pp(open_binder(l->body, var(x)), 0, inner);
    return wrap(prec > 0, out);
  }
  if (const auto* c = t->as<CaseT>()) return wrap(prec > 0, pp_case(*c, avoid));
  if (const auto* f = t->as<FixT>()) {
    std::string out;
    for (std::size_t i = 0; i < f->defs.size(); ++i) {
      const FixDef& d = f->defs[i];
      out += (i == 0 ? "fix " : " with ") + d.name + " / " + std::to_string(d.rec_arg + 1) +
             " : " + pp(d.type, 0, avoid) + " := " + pp(d.body, 0, avoid);
    }
    out += " for " + f->defs[f->index].name;
    return wrap(prec > 0, out);
  }
  return "?";
}

}  // namespace

std::string pretty_sort(const Sort& s) {
  return s.prop ? "Prop" : "Type" + std::to_string(s.level);
}

std::string pretty_print(const TermPtr& t) {
  NameSet avoid = free_vars(t);
  return pp(t, 0, avoid);
}

}  // namespace cck
