#include "cck/syntax.hpp"

#include <algorithm>

namespace cck {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

TermPtr mk(TermData d) { return std::make_shared<Term>(std::move(d)); }

}  // namespace

std::set<std::string> InductiveBlock::dom() const {
  std::set<std::string> out;
  for (auto& [n, t] : ind_decls) out.insert(n);
  for (auto& [n, t] : con_decls) out.insert(n);
  return out;
}

std::optional<int> InductiveBlock::ind_index(const std::string& name) const {
  for (size_t i = 0; i < ind_decls.size(); ++i)
    if (ind_decls[i].first == name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> InductiveBlock::ctor_index(const std::string& name) const {
  for (size_t i = 0; i < con_decls.size(); ++i)
    if (con_decls[i].first == name) return static_cast<int>(i);
  return std::nullopt;
}

const TermPtr* InductiveBlock::decl_type(const std::string& name) const {
  for (auto& [n, t] : ind_decls)
    if (n == name) return &t;
  for (auto& [n, t] : con_decls)
    if (n == name) return &t;
  return nullptr;
}

bool InductiveBlock::has_name(const std::string& name) const {
  return decl_type(name) != nullptr;
}

bool block_eq(const InductiveBlock& a, const InductiveBlock& b) {
  if (&a == &b) return true;
  if (a.param_count != b.param_count) return false;
  if (a.ind_decls.size() != b.ind_decls.size()) return false;
  if (a.con_decls.size() != b.con_decls.size()) return false;
  for (size_t i = 0; i < a.ind_decls.size(); ++i) {
    if (a.ind_decls[i].first != b.ind_decls[i].first) return false;
    if (!alpha_eq(a.ind_decls[i].second, b.ind_decls[i].second)) return false;
  }
  for (size_t i = 0; i < a.con_decls.size(); ++i) {
    if (a.con_decls[i].first != b.con_decls[i].first) return false;
    if (!alpha_eq(a.con_decls[i].second, b.con_decls[i].second)) return false;
  }
  return true;
}

bool Context::has_name(const std::string& name) const {
  for (auto& e : entries_) {
    bool hit = std::visit(Overload{
                              [&](const AssumEntry& a) { return a.name == name; },
                              [&](const DefEntry& d) { return d.name == name; },
                              [&](const IndEntry& i) { return i.block->has_name(name); },
                          },
                          e);
    if (hit) return true;
  }
  return false;
}

const AssumEntry* Context::find_assum(const std::string& name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (auto* a = std::get_if<AssumEntry>(&*it); a && a->name == name) return a;
  return nullptr;
}

const DefEntry* Context::find_def(const std::string& name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (auto* d = std::get_if<DefEntry>(&*it); d && d->name == name) return d;
  return nullptr;
}

const TermPtr* Context::lookup_type(const std::string& name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (auto* a = std::get_if<AssumEntry>(&*it); a && a->name == name) return &a->type;
    if (auto* d = std::get_if<DefEntry>(&*it); d && d->name == name) return &d->type;
  }
  return nullptr;
}

const BlockPtr* Context::find_block_with(const std::string& name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (auto* i = std::get_if<IndEntry>(&*it); i && i->block->has_name(name))
      return &i->block;
  return nullptr;
}

bool Context::contains_block(const InductiveBlock& block) const {
  for (auto& e : entries_)
    if (auto* i = std::get_if<IndEntry>(&e); i && block_eq(*i->block, block))
      return true;
  return false;
}

std::optional<int> Context::value_position(const std::string& name) const {
  std::optional<int> found;
  int pos = 0;
  for (auto& e : entries_) {
    if (auto* a = std::get_if<AssumEntry>(&e)) {
      if (a->name == name) found = pos;
      ++pos;
    } else if (auto* d = std::get_if<DefEntry>(&e)) {
      if (d->name == name) found = pos;
      ++pos;
    }
  }
  return found;
}

std::set<std::string> Context::dom() const {
  std::set<std::string> out;
  for (auto& e : entries_) {
    std::visit(Overload{
                   [&](const AssumEntry& a) { out.insert(a.name); },
                   [&](const DefEntry& d) { out.insert(d.name); },
                   [&](const IndEntry& i) {
                     auto sub = i.block->dom();
                     out.insert(sub.begin(), sub.end());
                   },
               },
               e);
  }
  return out;
}

TermPtr var(const std::string& name) { return mk(VarT{name}); }
TermPtr bound(int index, const std::string& hint) { return mk(BoundT{index, hint}); }
TermPtr sort(Sort s) { return mk(SortT{s}); }
TermPtr prop() { return sort(Sort::mk_prop()); }
TermPtr type_u(int level) { return sort(Sort::mk_type(level)); }

TermPtr pi(const std::string& name, TermPtr domain, TermPtr codomain) {
  return mk(PiT{name, std::move(domain), close_over(codomain, name)});
}

TermPtr arrow(TermPtr domain, TermPtr codomain) {
  return mk(PiT{"_", std::move(domain), std::move(codomain)});
}

TermPtr lam(const std::string& name, TermPtr domain, TermPtr body) {
  return mk(LamT{name, std::move(domain), close_over(body, name)});
}

TermPtr let_in(const std::string& name, TermPtr def, TermPtr def_type, TermPtr body) {
  return mk(LetT{name, std::move(def), std::move(def_type), close_over(body, name)});
}

TermPtr app(TermPtr fn, TermPtr arg) { return mk(AppT{std::move(fn), std::move(arg)}); }

TermPtr app(TermPtr fn, const std::vector<TermPtr>& args) {
  TermPtr acc = std::move(fn);
  for (auto& a : args) acc = app(acc, a);
  return acc;
}

TermPtr case_of(TermPtr scrutinee, TermPtr motive, std::vector<TermPtr> branches) {
  return mk(CaseT{std::move(scrutinee), std::move(motive), std::move(branches)});
}

TermPtr ind_ref(BlockPtr block, const std::string& name) {
  return mk(IndRefT{std::move(block), name});
}

TermPtr fix(int index, std::vector<FixDef> defs) {
  return mk(FixT{index, std::move(defs)});
}

TermPtr pi_raw(const std::string& hint, TermPtr domain, TermPtr codomain) {
  return mk(PiT{hint, std::move(domain), std::move(codomain)});
}
TermPtr lam_raw(const std::string& hint, TermPtr domain, TermPtr body) {
  return mk(LamT{hint, std::move(domain), std::move(body)});
}
TermPtr let_raw(const std::string& hint, TermPtr def, TermPtr def_type, TermPtr body) {
  return mk(LetT{hint, std::move(def), std::move(def_type), std::move(body)});
}

namespace {

void collect_free(const TermPtr& t, NameSet& out) {
  std::visit(Overload{
                 [&](const VarT& v) { out.insert(v.name); },
                 [&](const BoundT&) {},
                 [&](const SortT&) {},
                 [&](const PiT& p) {
                   collect_free(p.domain, out);
                   collect_free(p.codomain, out);
                 },
                 [&](const LamT& l) {
                   collect_free(l.domain, out);
                   collect_free(l.body, out);
                 },
                 [&](const LetT& l) {
                   collect_free(l.def, out);
                   if (l.def_type) collect_free(l.def_type, out);
                   collect_free(l.body, out);
                 },
                 [&](const AppT& a) {
                   collect_free(a.fn, out);
                   collect_free(a.arg, out);
                 },
                 [&](const CaseT& c) {
                   collect_free(c.scrutinee, out);
                   collect_free(c.motive, out);
                   for (auto& b : c.branches) collect_free(b, out);
                 },
                 [&](const IndRefT& i) {
                   NameSet inner;
                   for (auto& [n, ty] : i.block->ind_decls) collect_free(ty, inner);
                   for (auto& [n, ty] : i.block->con_decls) collect_free(ty, inner);
                   for (auto& n : i.block->dom()) inner.erase(n);
                   out.insert(inner.begin(), inner.end());
                 },
                 [&](const FixT& f) {
                   NameSet inner;
                   for (auto& d : f.defs) {
                     collect_free(d.type, inner);
                     collect_free(d.body, inner);
                   }
                   for (auto& d : f.defs) inner.erase(d.name);
                   out.insert(inner.begin(), inner.end());
                 },
             },
             t->data());
}

bool intersects(const NameSet& a, const NameSet& b) {
  for (auto& x : a)
    if (b.count(x)) return true;
  return false;
}

}  // namespace

NameSet free_vars(const TermPtr& t) {
  NameSet out;
  collect_free(t, out);
  return out;
}

namespace {

// One traversal serving substitute and simultaneous_subst. Bindings whose
// name is bound by an inductive or fix node are dropped there; if a remaining
// replacement would capture an internal name, the node is left unchanged.
// Every case returns the original pointer when nothing below it changed, so
// untouched subtrees (and in particular inductive blocks) keep their identity.
TermPtr subst_rec(const TermPtr& t, const std::vector<Binding>& delta) {
  if (delta.empty()) return t;
  return std::visit(
      Overload{
          [&](const VarT& v) -> TermPtr {
            for (auto& [x, u] : delta)
              if (x == v.name) return u;
            return t;
          },
          [&](const BoundT&) -> TermPtr { return t; },
          [&](const SortT&) -> TermPtr { return t; },
          [&](const PiT& p) -> TermPtr {
            TermPtr d = subst_rec(p.domain, delta);
            TermPtr c = subst_rec(p.codomain, delta);
            if (d == p.domain && c == p.codomain) return t;
            return mk(PiT{p.hint, std::move(d), std::move(c)});
          },
          [&](const LamT& l) -> TermPtr {
            TermPtr d = subst_rec(l.domain, delta);
            TermPtr b = subst_rec(l.body, delta);
            if (d == l.domain && b == l.body) return t;
            return mk(LamT{l.hint, std::move(d), std::move(b)});
          },
          [&](const LetT& l) -> TermPtr {
            TermPtr d = subst_rec(l.def, delta);
            TermPtr dt = l.def_type ? subst_rec(l.def_type, delta) : nullptr;
            TermPtr b = subst_rec(l.body, delta);
            if (d == l.def && dt == l.def_type && b == l.body) return t;
            return mk(LetT{l.hint, std::move(d), std::move(dt), std::move(b)});
          },
          [&](const AppT& a) -> TermPtr {
            TermPtr f = subst_rec(a.fn, delta);
            TermPtr x = subst_rec(a.arg, delta);
            if (f == a.fn && x == a.arg) return t;
            return mk(AppT{std::move(f), std::move(x)});
          },
          [&](const CaseT& c) -> TermPtr {
            TermPtr s = subst_rec(c.scrutinee, delta);
            TermPtr m = subst_rec(c.motive, delta);
            bool same = s == c.scrutinee && m == c.motive;
            std::vector<TermPtr> bs;
            bs.reserve(c.branches.size());
            for (auto& b : c.branches) {
              bs.push_back(subst_rec(b, delta));
              same = same && bs.back() == b;
            }
            if (same) return t;
            return mk(CaseT{std::move(s), std::move(m), std::move(bs)});
          },
          [&](const IndRefT& i) -> TermPtr {
            auto names = i.block->dom();
            std::vector<Binding> kept;
            for (auto& b : delta)
              if (!names.count(b.first)) kept.push_back(b);
            if (kept.empty()) return t;
            std::vector<TermPtr> ind_tys, con_tys;
            bool same = true;
            for (auto& [n, ty] : i.block->ind_decls) {
              ind_tys.push_back(subst_rec(ty, kept));
              same = same && ind_tys.back() == ty;
            }
            for (auto& [n, ty] : i.block->con_decls) {
              con_tys.push_back(subst_rec(ty, kept));
              same = same && con_tys.back() == ty;
            }
            if (same) return t;
            for (auto& b : kept)
              if (intersects(free_vars(b.second), names)) return t;
            auto blk = std::make_shared<InductiveBlock>(*i.block);
            for (std::size_t k = 0; k < blk->ind_decls.size(); ++k)
              blk->ind_decls[k].second = ind_tys[k];
            for (std::size_t k = 0; k < blk->con_decls.size(); ++k)
              blk->con_decls[k].second = con_tys[k];
            return mk(IndRefT{std::move(blk), i.name});
          },
          [&](const FixT& f) -> TermPtr {
            NameSet names;
            for (auto& d : f.defs) names.insert(d.name);
            std::vector<Binding> kept;
            for (auto& b : delta)
              if (!names.count(b.first)) kept.push_back(b);
            if (kept.empty()) return t;
            std::vector<FixDef> defs = f.defs;
            bool same = true;
            for (auto& d : defs) {
              TermPtr nt = subst_rec(d.type, kept);
              TermPtr nb = subst_rec(d.body, kept);
              same = same && nt == d.type && nb == d.body;
              d.type = std::move(nt);
              d.body = std::move(nb);
            }
            if (same) return t;
            for (auto& b : kept)
              if (intersects(free_vars(b.second), names)) return t;
            return mk(FixT{f.index, std::move(defs)});
          },
      },
      t->data());
}

}  // namespace

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& u) {
  return subst_rec(t, {{x, u}});
}

TermPtr simultaneous_subst(const TermPtr& t, const std::vector<Binding>& delta) {
  return subst_rec(t, delta);
}

TermPtr sequential_subst(const TermPtr& t, const std::vector<Binding>& delta) {
  TermPtr acc = t;
  for (auto& [x, u] : delta) acc = substitute(acc, x, u);
  return acc;
}

TermPtr replace_ind_names(const TermPtr& a, const BlockPtr& d) {
  std::vector<Binding> delta;
  for (auto& [n, ty] : d->ind_decls) delta.emplace_back(n, ind_ref(d, n));
  for (auto& [n, ty] : d->con_decls) delta.emplace_back(n, ind_ref(d, n));
  return subst_rec(a, delta);
}

namespace {

TermPtr open_rec(const TermPtr& t, int depth, const TermPtr& arg) {
  return std::visit(
      Overload{
          [&](const VarT&) -> TermPtr { return t; },
          [&](const BoundT& b) -> TermPtr { return b.index == depth ? arg : t; },
          [&](const SortT&) -> TermPtr { return t; },
          [&](const PiT& p) -> TermPtr {
            TermPtr d = open_rec(p.domain, depth, arg);
            TermPtr c = open_rec(p.codomain, depth + 1, arg);
            if (d == p.domain && c == p.codomain) return t;
            return mk(PiT{p.hint, std::move(d), std::move(c)});
          },
          [&](const LamT& l) -> TermPtr {
            TermPtr d = open_rec(l.domain, depth, arg);
            TermPtr b = open_rec(l.body, depth + 1, arg);
            if (d == l.domain && b == l.body) return t;
            return mk(LamT{l.hint, std::move(d), std::move(b)});
          },
          [&](const LetT& l) -> TermPtr {
            TermPtr d = open_rec(l.def, depth, arg);
            TermPtr dt = l.def_type ? open_rec(l.def_type, depth, arg) : nullptr;
            TermPtr b = open_rec(l.body, depth + 1, arg);
            if (d == l.def && dt == l.def_type && b == l.body) return t;
            return mk(LetT{l.hint, std::move(d), std::move(dt), std::move(b)});
          },
          [&](const AppT& a) -> TermPtr {
            TermPtr f = open_rec(a.fn, depth, arg);
            TermPtr x = open_rec(a.arg, depth, arg);
            if (f == a.fn && x == a.arg) return t;
            return mk(AppT{std::move(f), std::move(x)});
          },
          [&](const CaseT& c) -> TermPtr {
            TermPtr s = open_rec(c.scrutinee, depth, arg);
            TermPtr m = open_rec(c.motive, depth, arg);
            bool same = s == c.scrutinee && m == c.motive;
            std::vector<TermPtr> bs;
            bs.reserve(c.branches.size());
            for (auto& b : c.branches) {
              bs.push_back(open_rec(b, depth, arg));
              same = same && bs.back() == b;
            }
            if (same) return t;
            return mk(CaseT{std::move(s), std::move(m), std::move(bs)});
          },
          [&](const IndRefT& i) -> TermPtr {
            std::vector<TermPtr> ind_tys, con_tys;
            bool same = true;
            for (auto& [n, ty] : i.block->ind_decls) {
              ind_tys.push_back(open_rec(ty, depth, arg));
              same = same && ind_tys.back() == ty;
            }
            for (auto& [n, ty] : i.block->con_decls) {
              con_tys.push_back(open_rec(ty, depth, arg));
              same = same && con_tys.back() == ty;
            }
            if (same) return t;
            auto blk = std::make_shared<InductiveBlock>(*i.block);
            for (std::size_t k = 0; k < blk->ind_decls.size(); ++k)
              blk->ind_decls[k].second = ind_tys[k];
            for (std::size_t k = 0; k < blk->con_decls.size(); ++k)
              blk->con_decls[k].second = con_tys[k];
            return mk(IndRefT{std::move(blk), i.name});
          },
          [&](const FixT& f) -> TermPtr {
            std::vector<FixDef> defs = f.defs;
            bool changed = false;
            for (auto& d : defs) {
              auto nt = open_rec(d.type, depth, arg);
              auto nb = open_rec(d.body, depth, arg);
              changed |= nt != d.type || nb != d.body;
              d.type = nt;
              d.body = nb;
            }
            if (!changed) return t;
            return mk(FixT{f.index, std::move(defs)});
          },
      },
      t->data());
}

TermPtr close_rec(const TermPtr& t, int depth, const std::string& name) {
  return std::visit(
      Overload{
          [&](const VarT& v) -> TermPtr {
            return v.name == name ? bound(depth, name) : t;
          },
          [&](const BoundT&) -> TermPtr { return t; },
          [&](const SortT&) -> TermPtr { return t; },
          [&](const PiT& p) -> TermPtr {
            TermPtr d = close_rec(p.domain, depth, name);
            TermPtr c = close_rec(p.codomain, depth + 1, name);
            if (d == p.domain && c == p.codomain) return t;
            return mk(PiT{p.hint, std::move(d), std::move(c)});
          },
          [&](const LamT& l) -> TermPtr {
            TermPtr d = close_rec(l.domain, depth, name);
            TermPtr b = close_rec(l.body, depth + 1, name);
            if (d == l.domain && b == l.body) return t;
            return mk(LamT{l.hint, std::move(d), std::move(b)});
          },
          [&](const LetT& l) -> TermPtr {
            TermPtr d = close_rec(l.def, depth, name);
            TermPtr dt = l.def_type ? close_rec(l.def_type, depth, name) : nullptr;
            TermPtr b = close_rec(l.body, depth + 1, name);
            if (d == l.def && dt == l.def_type && b == l.body) return t;
            return mk(LetT{l.hint, std::move(d), std::move(dt), std::move(b)});
          },
          [&](const AppT& a) -> TermPtr {
            TermPtr f = close_rec(a.fn, depth, name);
            TermPtr x = close_rec(a.arg, depth, name);
            if (f == a.fn && x == a.arg) return t;
            return mk(AppT{std::move(f), std::move(x)});
          },
          [&](const CaseT& c) -> TermPtr {
            TermPtr s = close_rec(c.scrutinee, depth, name);
            TermPtr m = close_rec(c.motive, depth, name);
            bool same = s == c.scrutinee && m == c.motive;
            std::vector<TermPtr> bs;
            bs.reserve(c.branches.size());
            for (auto& b : c.branches) {
              bs.push_back(close_rec(b, depth, name));
              same = same && bs.back() == b;
            }
            if (same) return t;
            return mk(CaseT{std::move(s), std::move(m), std::move(bs)});
          },
          [&](const IndRefT& i) -> TermPtr {
            if (i.block->has_name(name)) return t;
            std::vector<TermPtr> ind_tys, con_tys;
            bool same = true;
            for (auto& [n, ty] : i.block->ind_decls) {
              ind_tys.push_back(close_rec(ty, depth, name));
              same = same && ind_tys.back() == ty;
            }
            for (auto& [n, ty] : i.block->con_decls) {
              con_tys.push_back(close_rec(ty, depth, name));
              same = same && con_tys.back() == ty;
            }
            if (same) return t;
            auto blk = std::make_shared<InductiveBlock>(*i.block);
            for (std::size_t k = 0; k < blk->ind_decls.size(); ++k)
              blk->ind_decls[k].second = ind_tys[k];
            for (std::size_t k = 0; k < blk->con_decls.size(); ++k)
              blk->con_decls[k].second = con_tys[k];
            return mk(IndRefT{std::move(blk), i.name});
          },
          [&](const FixT& f) -> TermPtr {
            for (auto& d : f.defs)
              if (d.name == name) return t;
            std::vector<FixDef> defs = f.defs;
            bool changed = false;
            for (auto& d : defs) {
              auto nt = close_rec(d.type, depth, name);
              auto nb = close_rec(d.body, depth, name);
              changed |= nt != d.type || nb != d.body;
              d.type = nt;
              d.body = nb;
            }
            if (!changed) return t;
            return mk(FixT{f.index, std::move(defs)});
          },
      },
      t->data());
}

}  // namespace

TermPtr open_binder(const TermPtr& body, const TermPtr& arg) {
  return open_rec(body, 0, arg);
}

TermPtr close_over(const TermPtr& t, const std::string& name) {
  return close_rec(t, 0, name);
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->data().index() != b->data().index()) return false;
  return std::visit(
      Overload{
          [&](const VarT& x) { return x.name == b->as<VarT>()->name; },
          [&](const BoundT& x) { return x.index == b->as<BoundT>()->index; },
          [&](const SortT& x) { return x.sort == b->as<SortT>()->sort; },
          [&](const PiT& x) {
            auto* y = b->as<PiT>();
            return alpha_eq(x.domain, y->domain) && alpha_eq(x.codomain, y->codomain);
          },
          [&](const LamT& x) {
            auto* y = b->as<LamT>();
            return alpha_eq(x.domain, y->domain) && alpha_eq(x.body, y->body);
          },
          [&](const LetT& x) {
            auto* y = b->as<LetT>();
            if (static_cast<bool>(x.def_type) != static_cast<bool>(y->def_type))
              return false;
            if (x.def_type && !alpha_eq(x.def_type, y->def_type)) return false;
            return alpha_eq(x.def, y->def) && alpha_eq(x.body, y->body);
          },
          [&](const AppT& x) {
            auto* y = b->as<AppT>();
            return alpha_eq(x.fn, y->fn) && alpha_eq(x.arg, y->arg);
          },
          [&](const CaseT& x) {
            auto* y = b->as<CaseT>();
            if (x.branches.size() != y->branches.size()) return false;
            if (!alpha_eq(x.scrutinee, y->scrutinee)) return false;
            if (!alpha_eq(x.motive, y->motive)) return false;
            for (size_t i = 0; i < x.branches.size(); ++i)
              if (!alpha_eq(x.branches[i], y->branches[i])) return false;
            return true;
          },
          [&](const IndRefT& x) {
            auto* y = b->as<IndRefT>();
            return x.name == y->name && block_eq(*x.block, *y->block);
          },
          [&](const FixT& x) {
            auto* y = b->as<FixT>();
            if (x.index != y->index || x.defs.size() != y->defs.size()) return false;
            for (size_t i = 0; i < x.defs.size(); ++i) {
              auto& d = x.defs[i];
              auto& e = y->defs[i];
              if (d.name != e.name || d.rec_arg != e.rec_arg) return false;
              if (!alpha_eq(d.type, e.type) || !alpha_eq(d.body, e.body)) return false;
            }
            return true;
          },
      },
      a->data());
}

SpineView spine(const TermPtr& t) {
  SpineView v;
  TermPtr cur = t;
  while (const auto* a = cur->as<AppT>()) {
    v.args.push_back(a->arg);
    cur = a->fn;
  }
  v.head = cur;
  std::reverse(v.args.begin(), v.args.end());
  return v;
}

OpenedTelescope strip_pis(const TermPtr& t, NameSet avoid, int limit) {
  OpenedTelescope tel;
  TermPtr cur = t;
  while (limit != 0) {
    const auto* p = cur->as<PiT>();
    if (!p) break;
    std::string x = fresh_name(p->hint.empty() ? "x" : p->hint, avoid);
    avoid.insert(x);
    tel.binders.push_back({x, p->domain});
    cur = open_binder(p->codomain, var(x));
    if (limit > 0) --limit;
  }
  tel.tail = cur;
  return tel;
}

OpenedTelescope strip_lams(const TermPtr& t, NameSet avoid, int limit) {
  OpenedTelescope tel;
  TermPtr cur = t;
  while (limit != 0) {
    const auto* l = cur->as<LamT>();
    if (!l) break;
    std::string x = fresh_name(l->hint.empty() ? "x" : l->hint, avoid);
    avoid.insert(x);
    tel.binders.push_back({x, l->domain});
    cur = open_binder(l->body, var(x));
    if (limit > 0) --limit;
  }
  tel.tail = cur;
  return tel;
}

TermPtr rebuild_pis(const std::vector<OpenedBinder>& binders, const TermPtr& tail) {
  TermPtr cur = tail;
  for (auto it = binders.rbegin(); it != binders.rend(); ++it)
    cur = pi(it->name, it->domain, cur);
  return cur;
}

TermPtr rebuild_pis(const OpenedTelescope& tel) { return rebuild_pis(tel.binders, tel.tail); }

TermPtr rebuild_lams(const std::vector<OpenedBinder>& binders, const TermPtr& tail) {
  TermPtr cur = tail;
  for (auto it = binders.rbegin(); it != binders.rend(); ++it)
    cur = lam(it->name, it->domain, cur);
  return cur;
}

int count_pis(const TermPtr& t) {
  int n = 0;
  TermPtr cur = t;
  while (const auto* p = cur->as<PiT>()) {
    ++n;
    cur = p->codomain;
  }
  return n;
}

std::string fresh_name(const std::string& hint, const NameSet& avoid) {
  std::string base = hint.empty() || hint == "_" ? "x" : hint;
  if (!avoid.count(base)) return base;
  std::string cand = base;
  do {
    cand += '\'';
  } while (avoid.count(cand));
  return cand;
}

Half term_size(const TermPtr& t) {
  return std::visit(
      Overload{
          [&](const VarT&) { return Half::whole(1); },
          [&](const BoundT&) { return Half::whole(1); },
          [&](const SortT&) { return Half::whole(1); },
          [&](const PiT& p) {
            return Half::whole(1) + term_size(p.domain) + term_size(p.codomain);
          },
          [&](const LamT& l) {
            return Half::whole(1) + term_size(l.domain) + term_size(l.body);
          },
          [&](const LetT& l) {
            auto s = Half::whole(1) + term_size(l.def) + term_size(l.body);
            if (l.def_type) s = s + term_size(l.def_type);
            return s;
          },
          [&](const AppT& a) {
            return Half::whole(1) + term_size(a.fn) + term_size(a.arg);
          },
          [&](const CaseT& c) {
            auto s = Half::whole(1) + term_size(c.scrutinee) + term_size(c.motive);
            for (auto& b : c.branches) s = s + term_size(b);
            return s;
          },
          [&](const IndRefT& i) {
            auto s = Half::whole(1);
            for (auto& [n, ty] : i.block->ind_decls) s = s + term_size(ty);
            for (auto& [n, ty] : i.block->con_decls) s = s + term_size(ty);
            return s;
          },
          [&](const FixT& f) {
            auto s = Half::whole(1);
            for (auto& d : f.defs) s = s + term_size(d.type) + term_size(d.body);
            return s;
          },
      },
      t->data());
}

Half context_size(const Context& ctx) {
  Half s = Half::half();
  for (auto& e : ctx.entries()) {
    std::visit(Overload{
                   [&](const AssumEntry& a) { s = s + term_size(a.type); },
                   [&](const DefEntry& d) {
                     s = s + term_size(d.body) + term_size(d.type);
                   },
                   [&](const IndEntry&) { s = s + Half::whole(1); },
               },
               e);
  }
  return s;
}

Half judgment_size(const Context& ctx, const TermPtr& t) {
  auto s = context_size(ctx) + term_size(t);
  return Half{s.halves - 1};
}

std::string Half::str() const {
  if (halves % 2 == 0) return std::to_string(halves / 2);
  return std::to_string(halves) + "/2";
}

}  // namespace cck
