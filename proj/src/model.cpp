#include "cck/model.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace cck {

std::string truth_str(Truth t) {
  switch (t) {
    case Truth::Yes:
      return "yes";
    case Truth::No:
      return "no";
    default:
      return "unknown";
  }
}

SemValue sem_fin(Hf v) {
  Sem s;
  s.data = SemFin{std::move(v)};
  return std::make_shared<Sem>(std::move(s));
}
SemValue sem_universe(int level) {
  Sem s;
  s.data = SemUniverse{level};
  return std::make_shared<Sem>(std::move(s));
}
SemValue sem_fn(std::function<SemValue(const SemValue&)> apply, std::string note) {
  Sem s;
  s.data = SemFn{std::move(apply), std::move(note)};
  return std::make_shared<Sem>(std::move(s));
}

namespace {

// Unary closure chain that gathers `m` arguments, then finishes.
SemValue collect_args(int m, std::function<SemValue(std::vector<SemValue>)> done,
                      const std::string& note) {
  struct Rec {
    static SemValue make(int m, std::vector<SemValue> acc,
                         std::shared_ptr<std::function<SemValue(std::vector<SemValue>)>> done,
                         std::string note) {
      if (m == 0) return (*done)(std::move(acc));
      return sem_fn(
          [m, acc = std::move(acc), done, note](const SemValue& a) {
            auto acc2 = acc;
            acc2.push_back(a);
            return make(m - 1, std::move(acc2), done, note);
          },
          note);
    }
  };
  auto sh = std::make_shared<std::function<SemValue(std::vector<SemValue>)>>(std::move(done));
  return Rec::make(m, {}, std::move(sh), note);
}

// All sets of rank < rank_cap stages, i.e. the cumulative stage V_rank_cap,
// truncated to at most `cap` sets per stage.
std::vector<Hf> universe_stage(int rank_cap, long long cap) {
  std::vector<Hf> cur;  // V_0
  for (int r = 0; r < rank_cap; ++r) {
    std::vector<Hf> next;
    if (cur.size() >= 20) return cur;  // 2^20 subsets is already past any cap
    unsigned long long count = 1ull << cur.size();
    if (static_cast<long long>(count) > cap) count = static_cast<unsigned long long>(cap);
    for (unsigned long long mask = 0; mask < count; ++mask) {
      std::vector<Hf> elems;
      for (std::size_t i = 0; i < cur.size(); ++i)
        if (mask & (1ull << i)) elems.push_back(cur[i]);
      next.push_back(hf_set(std::move(elems)));
    }
    std::sort(next.begin(), next.end(), [](const Hf& a, const Hf& b) { return hf_cmp(a, b) < 0; });
    next.erase(std::unique(next.begin(), next.end(),
                           [](const Hf& a, const Hf& b) { return hf_eq(a, b); }),
               next.end());
    cur = std::move(next);
  }
  return cur;
}

// Materialize a dependent function space as the set of its graphs.
Hf lower_space(ModelSession& s, const SemValue& domain,
               const std::function<SemValue(const SemValue&)>& codomain) {
  ModelSession::Members m = s.enumerate_members(domain);
  if (!m.complete) throw BoundExceeded("function space over an unbounded domain");
  if (static_cast<long long>(m.values.size()) > s.config().sample_budget)
    throw BoundExceeded("function space domain too large");
  std::vector<Hf> args;
  std::vector<std::vector<Hf>> choices;
  long long total = 1;
  for (auto& v : m.values) {
    args.push_back(s.lower(v));
    Hf cod = s.lower(codomain(v));
    if (cod->size() == 0) return hf_empty();  // no total choice exists
    choices.push_back(cod->elems());
    total *= static_cast<long long>(cod->size());
    if (total > s.config().enum_cap) throw BoundExceeded("function space too large");
  }
  std::vector<Hf> graphs;
  for (long long idx = 0; idx < total; ++idx) {
    long long rest = idx;
    std::vector<std::pair<Hf, Hf>> pairs;
    for (std::size_t i = 0; i < args.size(); ++i) {
      long long k = rest % static_cast<long long>(choices[i].size());
      rest /= static_cast<long long>(choices[i].size());
      pairs.emplace_back(args[i], choices[i][static_cast<std::size_t>(k)]);
    }
    graphs.push_back(aczel_lam(pairs));
  }
  return hf_set(std::move(graphs));
}

struct FamRow {
  int ind = 0;
  std::vector<Hf> params;
  std::vector<Hf> indices;
  Hf value;
};

Hf fam_row(int ind, const std::vector<Hf>& params, const std::vector<Hf>& indices,
           const Hf& value) {
  std::vector<Hf> comps;
  comps.push_back(vnat(static_cast<unsigned>(ind)));
  comps.insert(comps.end(), params.begin(), params.end());
  comps.insert(comps.end(), indices.begin(), indices.end());
  comps.push_back(value);
  return tuple(comps);
}

std::optional<FamRow> decode_fam_row(const BlockShapes& sh, const Hf& row) {
  auto comps = tuple_decode(row);
  if (!comps || comps->size() < 2) return std::nullopt;
  auto i = vnat_decode((*comps)[0]);
  if (!i || *i >= sh.ind_names.size()) return std::nullopt;
  int n = sh.param_count;
  int ic = sh.index_counts[*i];
  if (static_cast<int>(comps->size()) != 1 + n + ic + 1) return std::nullopt;
  FamRow r;
  r.ind = static_cast<int>(*i);
  r.params.assign(comps->begin() + 1, comps->begin() + 1 + n);
  r.indices.assign(comps->begin() + 1 + n, comps->begin() + 1 + n + ic);
  r.value = comps->back();
  return r;
}

bool hf_vec_eq(const std::vector<Hf>& a, const std::vector<Hf>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!hf_eq(a[i], b[i])) return false;
  return true;
}

// Shared state of one inductive block's rule-set view.
struct FamView {
  ModelSession* s = nullptr;
  std::shared_ptr<const Context> ctx;
  std::shared_ptr<const Env> env;
  std::shared_ptr<const BlockShapes> shapes;
  std::vector<Hf> params;
};

void fam_bind_params(const FamView& fv, Context& c, Env& e) {
  for (int i = 0; i < fv.shapes->param_count; ++i) {
    c.push(AssumEntry{fv.shapes->param_names[i], fv.shapes->param_domains[i]});
    e.push_back(sem_fin(fv.params[i]));
  }
}

std::vector<Hf> fam_candidates(const FamView& fv, const HfSet& have) {
  const BlockShapes& sh = *fv.shapes;
  const ModelConfig& cfg = fv.s->config();
  std::vector<Hf> out;
  HfSet seen;
  for (const CtorShape& cs : sh.ctors) {
    Context c0 = *fv.ctx;
    Env e0 = *fv.env;
    fam_bind_params(fv, c0, e0);
    std::function<void(const Context&, const Env&, std::vector<Hf>&)> go =
        [&](const Context& c, const Env& e, std::vector<Hf>& vals) {
          if (static_cast<long long>(out.size()) > cfg.frontier_cap)
            throw BoundExceeded("rule frontier too large");
          if (vals.size() == cs.args.size()) {
            std::vector<Hf> idx;
            for (auto& t : cs.conclusion_indices) idx.push_back(fv.s->lower(fv.s->interp(c, e, t)));
            std::vector<Hf> vc;
            vc.push_back(vnat(static_cast<unsigned>(cs.global_tag)));
            vc.insert(vc.end(), vals.begin(), vals.end());
            Hf row = fam_row(cs.ind, fv.params, idx, tuple(vc));
            if (seen.insert(row).second) out.push_back(row);
            return;
          }
          const CtorShape::Arg& a = cs.args[vals.size()];
          auto step = [&](const Hf& h) {
            Context c2 = c;
            Env e2 = e;
            c2.push(AssumEntry{a.name, a.domain});
            e2.push_back(sem_fin(h));
            vals.push_back(h);
            go(c2, e2, vals);
            vals.pop_back();
          };
          if (!a.recursive) {
            ModelSession::Members mm = fv.s->enumerate_members(fv.s->interp(c, e, a.domain));
            if (!mm.complete)
              throw BoundExceeded("cannot exhaust the type of argument " + a.name);
            for (auto& v : mm.values) step(fv.s->lower(v));
            return;
          }
          if (a.ho_tel.empty()) {
            std::vector<Hf> occ;
            for (auto& t : a.occ_args) occ.push_back(fv.s->lower(fv.s->interp(c, e, t)));
            if (static_cast<int>(occ.size()) < sh.param_count)
              throw BoundExceeded("undersaturated recursive occurrence");
            for (int i = 0; i < sh.param_count; ++i)
              if (!hf_eq(occ[i], fv.params[i]))
                throw BoundExceeded(
                    "recursive occurrence at a different parameter instantiation");
            std::vector<Hf> want(occ.begin() + sh.param_count, occ.end());
            for (const Hf& row : have) {
              auto d = decode_fam_row(sh, row);
              if (!d || d->ind != a.rec_ind) continue;
              if (!hf_vec_eq(d->params, fv.params) || !hf_vec_eq(d->indices, want)) continue;
              step(d->value);
            }
            return;
          }
          if (a.ho_tel.size() > 1)
            throw BoundExceeded("higher-order recursive argument with several binders");
          const OpenedBinder& yb = a.ho_tel[0];
          ModelSession::Members mm = fv.s->enumerate_members(fv.s->interp(c, e, yb.domain));
          if (!mm.complete) throw BoundExceeded("cannot exhaust the domain of " + a.name);
          std::vector<Hf> ys;
          std::vector<std::vector<Hf>> choices;
          long long total = 1;
          for (auto& y : mm.values) {
            Hf yh = fv.s->lower(y);
            Context c2 = c;
            Env e2 = e;
            c2.push(AssumEntry{yb.name, yb.domain});
            e2.push_back(sem_fin(yh));
            std::vector<Hf> occ;
            for (auto& t : a.occ_args) occ.push_back(fv.s->lower(fv.s->interp(c2, e2, t)));
            if (static_cast<int>(occ.size()) < sh.param_count)
              throw BoundExceeded("undersaturated recursive occurrence");
            for (int i = 0; i < sh.param_count; ++i)
              if (!hf_eq(occ[i], fv.params[i]))
                throw BoundExceeded(
                    "recursive occurrence at a different parameter instantiation");
            std::vector<Hf> want(occ.begin() + sh.param_count, occ.end());
            std::vector<Hf> vs;
            for (const Hf& row : have) {
              auto d = decode_fam_row(sh, row);
              if (!d || d->ind != a.rec_ind) continue;
              if (!hf_vec_eq(d->params, fv.params) || !hf_vec_eq(d->indices, want)) continue;
              vs.push_back(d->value);
            }
            if (vs.empty()) return;  // no graph can be assembled yet
            ys.push_back(yh);
            choices.push_back(std::move(vs));
            total *= static_cast<long long>(choices.back().size());
            if (total > cfg.enum_cap) throw BoundExceeded("too many candidate graphs");
          }
          for (long long idx = 0; idx < total; ++idx) {
            long long rest = idx;
            std::vector<std::pair<Hf, Hf>> pairs;
            for (std::size_t i = 0; i < ys.size(); ++i) {
              long long k = rest % static_cast<long long>(choices[i].size());
              rest /= static_cast<long long>(choices[i].size());
              pairs.emplace_back(ys[i], choices[i][static_cast<std::size_t>(k)]);
            }
            step(aczel_lam(pairs));
          }
        };
    std::vector<Hf> vals;
    go(c0, e0, vals);
  }
  std::sort(out.begin(), out.end(), [](const Hf& a, const Hf& b) { return hf_cmp(a, b) < 0; });
  return out;
}

std::optional<std::vector<Hf>> fam_premises(const FamView& fv, const Hf& row) {
  const BlockShapes& sh = *fv.shapes;
  auto d = decode_fam_row(sh, row);
  if (!d) return std::nullopt;
  auto vc = tuple_decode(d->value);
  if (!vc || vc->empty()) return std::nullopt;
  auto tag = vnat_decode((*vc)[0]);
  if (!tag || *tag < 1 || *tag > sh.ctors.size()) return std::nullopt;
  const CtorShape& cs = sh.ctors[*tag - 1];
  if (cs.ind != d->ind) return std::nullopt;
  if (vc->size() != 1 + cs.args.size()) return std::nullopt;

  Context c = *fv.ctx;
  Env e = *fv.env;
  for (int i = 0; i < sh.param_count; ++i) {
    c.push(AssumEntry{sh.param_names[i], sh.param_domains[i]});
    e.push_back(sem_fin(d->params[i]));
  }
  std::vector<Hf> prems;
  for (std::size_t j = 0; j < cs.args.size(); ++j) {
    const CtorShape::Arg& a = cs.args[j];
    Hf av = (*vc)[1 + j];
    if (a.recursive && a.ho_tel.empty()) {
      std::vector<Hf> occ;
      for (auto& t : a.occ_args) occ.push_back(fv.s->lower(fv.s->interp(c, e, t)));
      if (static_cast<int>(occ.size()) < sh.param_count) return std::nullopt;
      std::vector<Hf> op(occ.begin(), occ.begin() + sh.param_count);
      std::vector<Hf> oi(occ.begin() + sh.param_count, occ.end());
      prems.push_back(fam_row(a.rec_ind, op, oi, av));
    } else if (a.recursive) {
      if (a.ho_tel.size() > 1)
        throw BoundExceeded("higher-order recursive argument with several binders");
      const OpenedBinder& yb = a.ho_tel[0];
      ModelSession::Members mm = fv.s->enumerate_members(fv.s->interp(c, e, yb.domain));
      if (!mm.complete) throw BoundExceeded("cannot exhaust the domain of " + a.name);
      for (auto& y : mm.values) {
        Hf yh = fv.s->lower(y);
        Context c2 = c;
        Env e2 = e;
        c2.push(AssumEntry{yb.name, yb.domain});
        e2.push_back(sem_fin(yh));
        std::vector<Hf> occ;
        for (auto& t : a.occ_args) occ.push_back(fv.s->lower(fv.s->interp(c2, e2, t)));
        if (static_cast<int>(occ.size()) < sh.param_count) return std::nullopt;
        std::vector<Hf> op(occ.begin(), occ.begin() + sh.param_count);
        std::vector<Hf> oi(occ.begin() + sh.param_count, occ.end());
        prems.push_back(fam_row(a.rec_ind, op, oi, aczel_app(av, yh)));
      }
    }
    c.push(AssumEntry{a.name, a.domain});
    e.push_back(sem_fin(av));
  }
  for (std::size_t k = 0; k < cs.conclusion_indices.size(); ++k) {
    Hf got = fv.s->lower(fv.s->interp(c, e, cs.conclusion_indices[k]));
    if (!hf_eq(got, d->indices[k])) return std::nullopt;
  }
  return prems;
}

// ----- fixpoint evaluation -----

struct FixShared {
  ModelSession* s = nullptr;
  std::shared_ptr<const Context> ctx;
  std::shared_ptr<const Env> env;
  FixT fx;
  std::map<std::string, SemValue> memo;
  int depth = 0;
};

std::string fix_key(int def_idx, const std::vector<Hf>& args) {
  std::string k = std::to_string(def_idx);
  for (auto& a : args) k += "|" + hf_str(a);
  return k;
}

SemValue fix_call(const std::shared_ptr<FixShared>& fs, int def_idx,
                  const std::vector<SemValue>& args);

SemValue fix_self(const std::shared_ptr<FixShared>& fs, int def_idx) {
  const FixDef& d = fs->fx.defs[def_idx];
  return collect_args(
      d.rec_arg + 1,
      [fs, def_idx](std::vector<SemValue> args) { return fix_call(fs, def_idx, args); }, d.name);
}

SemValue fix_call(const std::shared_ptr<FixShared>& fs, int def_idx,
                  const std::vector<SemValue>& args) {
  std::vector<Hf> key;
  for (auto& a : args) key.push_back(fs->s->lower(a));
  std::string k = fix_key(def_idx, key);
  if (auto it = fs->memo.find(k); it != fs->memo.end()) return it->second;
  if (fs->depth >= fs->s->config().recursion_cap)
    throw BoundExceeded("recursive evaluation too deep");
  ++fs->depth;
  struct Guard {
    int& d;
    ~Guard() { --d; }
  } guard{fs->depth};
  Context c2 = *fs->ctx;
  Env e2 = *fs->env;
  for (std::size_t i = 0; i < fs->fx.defs.size(); ++i) {
    c2.push(AssumEntry{fs->fx.defs[i].name, fs->fx.defs[i].type});
    e2.push_back(fix_self(fs, static_cast<int>(i)));
  }
  SemValue r = fs->s->interp(c2, e2, fs->fx.defs[def_idx].body);
  for (auto& a : args) r = fs->s->sem_app(r, a);
  fs->memo[k] = r;
  return r;
}

// Dispatch data of one fixpoint definition inside its rule-set view.
struct DefDispatch {
  int argc = 0;
  BlockPtr block;
  int rec_ind = 0;
  bool params_known = false;
  std::vector<Hf> params;  // of the recursive argument's inductive
};

struct FixView {
  std::shared_ptr<FixShared> fs;
  std::vector<DefDispatch> infos;
};

std::optional<int> fix_dispatch(const FixView& xv, const std::vector<Hf>& comps) {
  int found = -1;
  for (std::size_t j = 0; j < xv.infos.size(); ++j) {
    const DefDispatch& di = xv.infos[j];
    if (static_cast<int>(comps.size()) != di.argc + 1) continue;
    auto vc = tuple_decode(comps[xv.fs->fx.defs[j].rec_arg]);
    if (!vc || vc->empty()) continue;
    auto tag = vnat_decode((*vc)[0]);
    if (!tag || *tag < 1) continue;
    auto sh = xv.fs->s->shapes_of(di.block);
    if (*tag > sh->ctors.size()) continue;
    if (sh->ctors[*tag - 1].ind != di.rec_ind) continue;
    if (found >= 0) throw BoundExceeded("ambiguous call-graph row");
    found = static_cast<int>(j);
  }
  if (found < 0) return std::nullopt;
  return found;
}

std::optional<std::vector<Hf>> fix_premises(const FixView& xv, const Hf& row) {
  auto comps = tuple_decode(row);
  if (!comps || comps->size() < 2) return std::nullopt;
  auto j = fix_dispatch(xv, *comps);
  if (!j) return std::nullopt;
  std::vector<Hf> args(comps->begin(), comps->end() - 1);
  Hf expected = comps->back();

  auto fs = xv.fs;
  auto rows = std::make_shared<std::vector<Hf>>();
  Context c2 = *fs->ctx;
  Env e2 = *fs->env;
  for (std::size_t i = 0; i < fs->fx.defs.size(); ++i) {
    const FixDef& d = fs->fx.defs[i];
    c2.push(AssumEntry{d.name, d.type});
    e2.push_back(collect_args(
        d.rec_arg + 1,
        [fs, i, rows](std::vector<SemValue> as) {
          std::vector<Hf> key;
          for (auto& a : as) key.push_back(fs->s->lower(a));
          SemValue r = fix_call(fs, static_cast<int>(i), as);
          key.push_back(fs->s->lower(r));
          rows->push_back(tuple(key));
          return r;
        },
        d.name));
  }
  try {
    SemValue b = fs->s->interp(c2, e2, fs->fx.defs[*j].body);
    for (auto& a : args) b = fs->s->sem_app(b, sem_fin(a));
    if (!hf_eq(fs->s->lower(b), expected)) return std::nullopt;
  } catch (const InterpUndefined&) {
    return std::nullopt;
  }
  return *rows;
}

std::vector<Hf> fix_candidates(const FixView& xv, const HfSet& have) {
  const auto& defs = xv.fs->fx.defs;
  const ModelConfig& cfg = xv.fs->s->config();
  std::vector<std::vector<std::vector<Hf>>> pool(defs.size());
  for (const Hf& row : have) {
    auto comps = tuple_decode(row);
    if (!comps || comps->size() < 2) continue;
    auto j = fix_dispatch(xv, *comps);
    if (!j) continue;
    pool[*j].emplace_back(comps->begin(), comps->end() - 1);
  }
  std::vector<Hf> out;
  HfSet seen;
  for (std::size_t i = 0; i < defs.size(); ++i) {
    const DefDispatch& di = xv.infos[i];
    if (!di.params_known)
      throw BoundExceeded("parameters of the recursive domain are not computable");
    auto sh = xv.fs->s->shapes_of(di.block);
    if (sh->index_counts[di.rec_ind] != 0)
      throw BoundExceeded("bottom-up extension over an indexed family");
    std::vector<std::vector<Hf>> templates;
    if (di.argc == 1) {
      templates.push_back({hf_empty()});
    } else {
      for (auto& av : pool[i]) templates.push_back(av);
    }
    for (const CtorShape& cs : sh->ctors) {
      if (cs.ind != di.rec_ind) continue;
      Context c0 = *xv.fs->ctx;
      Env e0 = *xv.fs->env;
      for (int p = 0; p < sh->param_count; ++p) {
        c0.push(AssumEntry{sh->param_names[p], sh->param_domains[p]});
        e0.push_back(sem_fin(di.params[p]));
      }
      std::function<void(const Context&, const Env&, std::vector<Hf>&)> go =
          [&](const Context& c, const Env& e, std::vector<Hf>& vals) {
            if (vals.size() == cs.args.size()) {
              std::vector<Hf> vc;
              vc.push_back(vnat(static_cast<unsigned>(cs.global_tag)));
              vc.insert(vc.end(), vals.begin(), vals.end());
              Hf rec_val = tuple(vc);
              for (auto tmpl : templates) {
                if (static_cast<long long>(out.size()) > cfg.frontier_cap)
                  throw BoundExceeded("call-graph frontier too large");
                tmpl[defs[i].rec_arg] = rec_val;
                try {
                  std::vector<SemValue> sv;
                  for (auto& h : tmpl) sv.push_back(sem_fin(h));
                  SemValue r = fix_call(xv.fs, static_cast<int>(i), sv);
                  std::vector<Hf> rc = tmpl;
                  rc.push_back(xv.fs->s->lower(r));
                  Hf row = tuple(rc);
                  if (seen.count(row)) continue;
                  auto prems = fix_premises(xv, row);
                  if (!prems) continue;
                  bool inside = true;
                  for (auto& p : *prems)
                    if (!have.count(p)) {
                      inside = false;
                      break;
                    }
                  if (!inside) continue;
                  seen.insert(row);
                  out.push_back(row);
                } catch (const BoundExceeded&) {
                  continue;
                } catch (const InterpUndefined&) {
                  continue;
                }
              }
              return;
            }
            const CtorShape::Arg& a = cs.args[vals.size()];
            auto step = [&](const Hf& h) {
              Context c2 = c;
              Env e2 = e;
              c2.push(AssumEntry{a.name, a.domain});
              e2.push_back(sem_fin(h));
              vals.push_back(h);
              go(c2, e2, vals);
              vals.pop_back();
            };
            if (a.recursive) {
              if (!a.ho_tel.empty()) return;  // no bottom-up guess for graphs
              HfSet subs;
              for (std::size_t mdef = 0; mdef < defs.size(); ++mdef) {
                if (xv.infos[mdef].block != di.block || xv.infos[mdef].rec_ind != a.rec_ind)
                  continue;
                for (auto& av : pool[mdef]) subs.insert(av[defs[mdef].rec_arg]);
              }
              for (auto& h : subs) step(h);
              return;
            }
            ModelSession::Members mm;
            try {
              mm = xv.fs->s->enumerate_members(xv.fs->s->interp(c, e, a.domain));
            } catch (const BoundExceeded&) {
              return;
            } catch (const InterpUndefined&) {
              return;
            }
            if (!mm.complete) return;
            for (auto& v : mm.values) step(xv.fs->s->lower(v));
          };
      std::vector<Hf> vals;
      go(c0, e0, vals);
    }
  }
  std::sort(out.begin(), out.end(), [](const Hf& a, const Hf& b) { return hf_cmp(a, b) < 0; });
  return out;
}

}  // namespace

ModelSession::ModelSession(ModelConfig cfg) : cfg_(std::move(cfg)) {}

std::shared_ptr<const BlockShapes> ModelSession::shapes_of(const BlockPtr& block) {
  auto it = shape_cache_.find(block.get());
  if (it != shape_cache_.end()) return it->second;

  const InductiveBlock& b = *block;
  auto out = std::make_shared<BlockShapes>();
  out->block = block;
  out->param_count = b.param_count;
  NameSet avoid = b.dom();
  for (auto& [nm, ty] : b.ind_decls) {
    auto fv = free_vars(ty);
    avoid.insert(fv.begin(), fv.end());
  }
  for (auto& [nm, ty] : b.con_decls) {
    auto fv = free_vars(ty);
    avoid.insert(fv.begin(), fv.end());
  }

  // Shared parameter telescope, read off the first declaration.
  TermPtr cur = b.ind_decls.empty() ? nullptr : b.ind_decls[0].second;
  for (int i = 0; i < b.param_count; ++i) {
    const auto* p = cur->as<PiT>();
    if (!p) throw InterpUndefined("parameter telescope is not a product chain");
    std::string x = fresh_name(p->hint.empty() ? "p" : p->hint, avoid);
    avoid.insert(x);
    out->param_names.push_back(x);
    out->param_domains.push_back(p->domain);
    cur = open_binder(p->codomain, var(x));
  }
  for (auto& [nm, ty] : b.ind_decls) {
    out->ind_names.push_back(nm);
    out->index_counts.push_back(count_pis(ty) - b.param_count);
  }

  for (std::size_t k = 0; k < b.con_decls.size(); ++k) {
    const auto& [cname, cty] = b.con_decls[k];
    CtorShape cs;
    cs.global_tag = static_cast<int>(k) + 1;
    cs.name = cname;
    NameSet cavoid = avoid;
    TermPtr c = cty;
    for (int i = 0; i < b.param_count; ++i) {
      const auto* p = c->as<PiT>();
      if (!p) throw InterpUndefined("constructor type is not a product chain");
      c = open_binder(p->codomain, var(out->param_names[i]));
    }
    while (const auto* p = c->as<PiT>()) {
      CtorShape::Arg a;
      a.name = fresh_name(p->hint.empty() ? "a" : p->hint, cavoid);
      cavoid.insert(a.name);
      TermPtr raw = p->domain;
      NameSet dfv = free_vars(raw);
      bool rec = false;
      for (auto& nm2 : b.dom())
        if (dfv.count(nm2)) rec = true;
      a.recursive = rec;
      a.domain = replace_ind_names(raw, block);
      if (rec) {
        OpenedTelescope tel = strip_pis(raw, cavoid);
        for (auto& ob : tel.binders) {
          cavoid.insert(ob.name);
          a.ho_tel.push_back({ob.name, replace_ind_names(ob.domain, block)});
        }
        SpineView sv = spine(tel.tail);
        const auto* hv = sv.head->as<VarT>();
        std::optional<int> ii;
        if (hv) ii = b.ind_index(hv->name);
        if (!ii) throw InterpUndefined("unrecognized recursive argument shape");
        a.rec_ind = *ii;
        for (auto& t : sv.args) a.occ_args.push_back(replace_ind_names(t, block));
      }
      cs.args.push_back(std::move(a));
      c = open_binder(p->codomain, var(cs.args.back().name));
    }
    SpineView conc = spine(c);
    const auto* hv = conc.head->as<VarT>();
    std::optional<int> ii;
    if (hv) ii = b.ind_index(hv->name);
    if (!ii) throw InterpUndefined("unrecognized constructor conclusion");
    cs.ind = *ii;
    for (std::size_t i = b.param_count; i < conc.args.size(); ++i)
      cs.conclusion_indices.push_back(replace_ind_names(conc.args[i], block));
    out->ctors.push_back(std::move(cs));
  }
  shape_cache_[block.get()] = out;
  return out;
}

RuleSet ModelSession::family_rule_set(const Context& ctx, const Env& env, const BlockPtr& block,
                                      const std::vector<Hf>& params) {
  auto shapes = shapes_of(block);
  if (static_cast<int>(params.size()) != shapes->param_count)
    throw InterpUndefined("wrong number of parameter values");
  auto fv = std::make_shared<FamView>();
  fv->s = this;
  fv->ctx = std::make_shared<Context>(ctx);
  fv->env = std::make_shared<Env>(env);
  fv->shapes = shapes;
  fv->params = params;
  RuleSet rs;
  for (auto& nm : shapes->ind_names) rs.label += (rs.label.empty() ? "" : "+") + nm;
  rs.exhaustive = true;
  rs.candidates = [fv](const HfSet& have) { return fam_candidates(*fv, have); };
  rs.premises_of = [fv](const Hf& row) { return fam_premises(*fv, row); };
  return rs;
}

const LfpResult& ModelSession::family_lfp(const Context& ctx, const Env& env,
                                          const BlockPtr& block, const std::vector<Hf>& params,
                                          int depth) {
  std::ostringstream key;
  key << block.get() << '/' << depth;
  for (auto& p : params) key << '|' << hf_str(p);
  auto it = lfp_cache_.find(key.str());
  if (it != lfp_cache_.end()) return it->second;
  RuleSet rs = family_rule_set(ctx, env, block, params);
  LfpResult r = lfp(rs, depth, cfg_.frontier_cap);
  return lfp_cache_.emplace(key.str(), std::move(r)).first->second;
}

RuleSet ModelSession::fix_rule_set(const Context& ctx, const Env& env, const TermPtr& fix_term) {
  const FixT* f = fix_term->as<FixT>();
  if (!f) throw InterpUndefined("not a fixpoint");
  auto xv = std::make_shared<FixView>();
  xv->fs = std::make_shared<FixShared>();
  xv->fs->s = this;
  xv->fs->ctx = std::make_shared<Context>(ctx);
  xv->fs->env = std::make_shared<Env>(env);
  xv->fs->fx = *f;
  NameSet avoid = ctx.dom();
  RuleSet rs;
  for (const FixDef& d : f->defs) {
    DefDispatch di;
    di.argc = d.rec_arg + 1;
    TermPtr cur = d.type;
    std::vector<OpenedBinder> binders;
    while (static_cast<int>(binders.size()) < di.argc) {
      const auto* p = cur->as<PiT>();
      if (!p) {
        cur = whnf(ctx, cur, cfg_.reduction);
        p = cur->as<PiT>();
        if (!p) throw InterpUndefined("fixpoint type has too few products");
      }
      std::string x = fresh_name(p->hint.empty() ? "x" : p->hint, avoid);
      avoid.insert(x);
      binders.push_back({x, p->domain});
      cur = open_binder(p->codomain, var(x));
    }
    SpineView sv = spine(whnf(ctx, binders.back().domain, cfg_.reduction));
    const auto* ir = sv.head->as<IndRefT>();
    if (!ir || !ir->block->ind_index(ir->name))
      throw InterpUndefined("recursive argument is not an inductive type");
    di.block = ir->block;
    di.rec_ind = *ir->block->ind_index(ir->name);
    int n = ir->block->param_count;
    di.params_known = true;
    try {
      for (int i = 0; i < n && i < static_cast<int>(sv.args.size()); ++i)
        di.params.push_back(lower(interp(ctx, env, sv.args[i])));
      if (static_cast<int>(di.params.size()) != n) di.params_known = false;
    } catch (const BoundExceeded&) {
      di.params_known = false;
    } catch (const InterpUndefined&) {
      di.params_known = false;
    }
    xv->infos.push_back(std::move(di));
    rs.label += (rs.label.empty() ? "" : "+") + d.name;
  }
  rs.exhaustive = false;
  rs.candidates = [xv](const HfSet& have) { return fix_candidates(*xv, have); };
  rs.premises_of = [xv](const Hf& row) { return fix_premises(*xv, row); };
  return rs;
}

SemValue ModelSession::sem_app(const SemValue& f, const SemValue& a) {
  if (const auto* fin = f->as<SemFin>()) return sem_fin(aczel_app(fin->value, lower(a)));
  if (const auto* fn = f->as<SemFn>()) return fn->apply(a);
  throw InterpUndefined("value is not a function");
}

SemValue ModelSession::interp(const Context& ctx, const Env& env, const TermPtr& t) {
  if (const auto* v = t->as<VarT>()) {
    if (auto pos = ctx.value_position(v->name)) {
      if (*pos < static_cast<int>(env.size())) return env[*pos];
      throw InterpUndefined("no value for " + v->name);
    }
    if (const BlockPtr* b = ctx.find_block_with(v->name))
      return interp(ctx, env, ind_ref(*b, v->name));
    throw InterpUndefined("unbound variable " + v->name);
  }
  if (t->is<BoundT>()) throw InterpUndefined("loose bound variable");
  if (const auto* s = t->as<SortT>()) {
    if (s->sort.prop) return sem_fin(vnat(2));  // {0, 1}
    return sem_universe(s->sort.level);
  }
  if (const auto* p = t->as<PiT>()) {
    SemValue domv = interp(ctx, env, p->domain);
    NameSet avoid = ctx.dom();
    auto bfv = free_vars(p->codomain);
    avoid.insert(bfv.begin(), bfv.end());
    std::string x = fresh_name(p->hint.empty() ? "x" : p->hint, avoid);
    TermPtr opened = open_binder(p->codomain, var(x));
    Context cctx = ctx;
    cctx.push(AssumEntry{x, p->domain});
    auto sctx = std::make_shared<Context>(std::move(cctx));
    auto senv = std::make_shared<Env>(env);
    ModelSession* self = this;
    auto codf = [self, sctx, senv, opened](const SemValue& a) {
      Env e2 = *senv;
      e2.push_back(a);
      return self->interp(*sctx, e2, opened);
    };
    try {
      return sem_fin(lower_space(*this, domv, codf));
    } catch (const BoundExceeded&) {
    } catch (const InterpUndefined&) {
    }
    Sem s;
    s.data = SemFunSpace{domv, codf};
    return std::make_shared<Sem>(std::move(s));
  }
  if (const auto* l = t->as<LamT>()) {
    NameSet avoid = ctx.dom();
    auto bfv = free_vars(l->body);
    avoid.insert(bfv.begin(), bfv.end());
    std::string x = fresh_name(l->hint.empty() ? "x" : l->hint, avoid);
    TermPtr opened = open_binder(l->body, var(x));
    Context cctx = ctx;
    cctx.push(AssumEntry{x, l->domain});
    auto sctx = std::make_shared<Context>(std::move(cctx));
    auto senv = std::make_shared<Env>(env);
    ModelSession* self = this;
    auto applyf = [self, sctx, senv, opened](const SemValue& a) {
      Env e2 = *senv;
      e2.push_back(a);
      return self->interp(*sctx, e2, opened);
    };
    try {
      SemValue domv = interp(ctx, env, l->domain);
      Members mm = enumerate_members(domv);
      if (mm.complete && static_cast<long long>(mm.values.size()) <= cfg_.sample_budget) {
        std::vector<std::pair<Hf, Hf>> pairs;
        for (auto& v : mm.values) pairs.emplace_back(lower(v), lower(applyf(v)));
        return sem_fin(aczel_lam(pairs));
      }
    } catch (const BoundExceeded&) {
    } catch (const InterpUndefined&) {
    }
    return sem_fn(applyf, l->hint.empty() ? "fun" : l->hint);
  }
  if (const auto* l = t->as<LetT>()) {
    SemValue v = interp(ctx, env, l->def);
    NameSet avoid = ctx.dom();
    auto bfv = free_vars(l->body);
    avoid.insert(bfv.begin(), bfv.end());
    std::string x = fresh_name(l->hint.empty() ? "x" : l->hint, avoid);
    Context cctx = ctx;
    cctx.push(DefEntry{x, l->def, l->def_type});
    Env e2 = env;
    e2.push_back(v);
    return interp(cctx, e2, open_binder(l->body, var(x)));
  }
  if (const auto* a = t->as<AppT>()) return sem_app(interp(ctx, env, a->fn), interp(ctx, env, a->arg));
  if (const auto* c = t->as<CaseT>()) {
    Hf v = lower(interp(ctx, env, c->scrutinee));
    auto comps = tuple_decode(v);
    if (!comps || comps->empty()) throw InterpUndefined("scrutinee is not a constructor value");
    auto tag = vnat_decode((*comps)[0]);
    if (!tag || *tag < 1) throw InterpUndefined("scrutinee is not a constructor value");
    NameSet avoid = ctx.dom();
    OpenedTelescope tel = strip_lams(c->motive, avoid);
    const IndRefT* ir = nullptr;
    for (auto it = tel.binders.rbegin(); it != tel.binders.rend() && !ir; ++it) {
      SpineView dom = spine(it->domain);
      const auto* cand = dom.head->as<IndRefT>();
      if (cand && cand->block->ind_index(cand->name)) ir = cand;
    }
    if (!ir) throw InterpUndefined("unreadable motive");
    std::vector<int> cshow = ctors_of_inductive(*ir->block, ir->name);
    int slot = -1;
    for (std::size_t k = 0; k < cshow.size(); ++k)
      if (cshow[k] == static_cast<int>(*tag) - 1) slot = static_cast<int>(k);
    if (slot < 0 || slot >= static_cast<int>(c->branches.size()))
      throw InterpUndefined("no branch for the scrutinee's constructor");
    SemValue b = interp(ctx, env, c->branches[slot]);
    for (std::size_t j = 1; j < comps->size(); ++j) b = sem_app(b, sem_fin((*comps)[j]));
    return b;
  }
  if (const auto* ir = t->as<IndRefT>()) {
    auto shapes = shapes_of(ir->block);
    auto sctx = std::make_shared<Context>(ctx);
    auto senv = std::make_shared<Env>(env);
    ModelSession* self = this;
    if (auto ii = ir->block->ind_index(ir->name)) {
      int m = count_pis(*ir->block->decl_type(ir->name));
      int n = ir->block->param_count;
      auto finish = [self, shapes, sctx, senv, ii, n](std::vector<SemValue> args) {
        std::vector<Hf> low;
        for (auto& a : args) low.push_back(self->lower(a));
        Sem s;
        SemIndFamily fam;
        fam.shapes = shapes;
        fam.ctx = sctx;
        fam.env = senv;
        fam.ind_index = *ii;
        fam.params.assign(low.begin(), low.begin() + n);
        fam.indices.assign(low.begin() + n, low.end());
        s.data = std::move(fam);
        return std::make_shared<Sem>(std::move(s));
      };
      if (m == 0) return finish({});
      return collect_args(m, finish, ir->name);
    }
    auto ci = ir->block->ctor_index(ir->name);
    if (!ci) throw InterpUndefined("unknown constructor " + ir->name);
    int m = count_pis(*ir->block->decl_type(ir->name));
    int n = ir->block->param_count;
    unsigned tag = static_cast<unsigned>(*ci) + 1;
    auto finish = [self, tag, n](std::vector<SemValue> args) {
      std::vector<Hf> comps;
      comps.push_back(vnat(tag));
      for (std::size_t j = static_cast<std::size_t>(n); j < args.size(); ++j)
        comps.push_back(self->lower(args[j]));
      return sem_fin(tuple(comps));
    };
    if (m == 0) return finish({});
    return collect_args(m, finish, ir->name);
  }
  if (const auto* f = t->as<FixT>()) {
    auto fs = std::make_shared<FixShared>();
    fs->s = this;
    fs->ctx = std::make_shared<Context>(ctx);
    fs->env = std::make_shared<Env>(env);
    fs->fx = *f;
    return fix_self(fs, f->index);
  }
  throw InterpUndefined("term has no interpretation");
}

Hf ModelSession::lower(const SemValue& v) {
  if (const auto* f = v->as<SemFin>()) return f->value;
  if (v->as<SemUniverse>()) throw BoundExceeded("a universe is not a bounded set");
  if (v->as<SemIndFamily>()) {
    Members m = enumerate_members(v);
    if (!m.complete) throw BoundExceeded("inductive type truncated at this depth");
    std::vector<Hf> el;
    for (auto& x : m.values) el.push_back(lower(x));
    return hf_set(std::move(el));
  }
  if (const auto* fs = v->as<SemFunSpace>()) return lower_space(*this, fs->domain, fs->codomain);
  throw BoundExceeded("symbolic function has no set form");
}

ModelSession::Members ModelSession::enumerate_members(const SemValue& type) {
  Members out;
  if (const auto* f = type->as<SemFin>()) {
    for (auto& e : f->value->elems()) out.values.push_back(sem_fin(e));
    out.complete = true;
    return out;
  }
  if (const auto* u = type->as<SemUniverse>()) {
    for (auto& h : universe_stage(cfg_.universe_rank + u->level, cfg_.sample_budget))
      out.values.push_back(sem_fin(h));
    out.complete = false;
    return out;
  }
  if (const auto* fam = type->as<SemIndFamily>()) {
    try {
      const LfpResult& r =
          family_lfp(*fam->ctx, *fam->env, fam->shapes->block, fam->params, cfg_.fixpoint_depth);
      for (auto& row : r.elements) {
        auto d = decode_fam_row(*fam->shapes, row);
        if (!d || d->ind != fam->ind_index) continue;
        if (!hf_vec_eq(d->params, fam->params) || !hf_vec_eq(d->indices, fam->indices)) continue;
        out.values.push_back(sem_fin(d->value));
      }
      out.complete = r.complete;
    } catch (const BoundExceeded&) {
      out.values.clear();
      out.complete = false;
    }
    return out;
  }
  if (const auto* fs = type->as<SemFunSpace>()) {
    try {
      Hf space = lower_space(*this, fs->domain, fs->codomain);
      for (auto& e : space->elems()) out.values.push_back(sem_fin(e));
      out.complete = true;
    } catch (const BoundExceeded&) {
      out.values.clear();
      out.complete = false;
    }
    return out;
  }
  out.complete = false;
  return out;
}

Truth ModelSession::mem_at_depth(const SemValue& v, const SemValue& type, int depth) {
  try {
    if (const auto* f = type->as<SemFin>())
      return hf_mem(lower(v), f->value) ? Truth::Yes : Truth::No;
    if (const auto* u = type->as<SemUniverse>())
      return lower(v)->rank() <= cfg_.universe_rank + u->level ? Truth::Yes : Truth::Unknown;
    if (const auto* fam = type->as<SemIndFamily>()) {
      Hf x = lower(v);
      Hf row = fam_row(fam->ind_index, fam->params, fam->indices, x);
      RuleSet rs = family_rule_set(*fam->ctx, *fam->env, fam->shapes->block, fam->params);
      try {
        if (derivable(rs, row, depth)) return Truth::Yes;
      } catch (const BoundExceeded&) {
      }
      const LfpResult& r =
          family_lfp(*fam->ctx, *fam->env, fam->shapes->block, fam->params, depth);
      if (r.set.count(row)) return Truth::Yes;
      return r.complete ? Truth::No : Truth::Unknown;
    }
    if (const auto* fs = type->as<SemFunSpace>()) {
      Members m = enumerate_members(fs->domain);
      bool unknown = !m.complete;
      long long used = 0;
      for (auto& x : m.values) {
        if (++used > cfg_.sample_budget) {
          unknown = true;
          break;
        }
        try {
          Truth r = mem_at_depth(sem_app(v, x), fs->codomain(x), depth);
          if (r == Truth::No) return Truth::No;
          if (r == Truth::Unknown) unknown = true;
        } catch (const BoundExceeded&) {
          unknown = true;
        } catch (const InterpUndefined&) {
          unknown = true;
        }
      }
      return unknown ? Truth::Unknown : Truth::Yes;
    }
    return Truth::Unknown;
  } catch (const BoundExceeded&) {
    return Truth::Unknown;
  } catch (const InterpUndefined&) {
    return Truth::Unknown;
  }
}

ModelSession::CtxInterp ModelSession::interp_ctx(const Context& ctx) {
  CtxInterp out;
  out.valuations.push_back({});
  Context pre;
  for (const auto& entry : ctx.entries()) {
    if (const auto* a = std::get_if<AssumEntry>(&entry)) {
      std::vector<Env> next;
      for (auto& g : out.valuations) {
        try {
          Members mm = enumerate_members(interp(pre, g, a->type));
          if (!mm.complete) out.complete = false;
          for (auto& v : mm.values) {
            Env g2 = g;
            g2.push_back(v);
            next.push_back(std::move(g2));
            if (static_cast<long long>(next.size()) > cfg_.sample_budget) {
              out.complete = false;
              break;
            }
          }
        } catch (const BoundExceeded&) {
          out.undefined = true;
        } catch (const InterpUndefined&) {
          out.undefined = true;
        }
        if (static_cast<long long>(next.size()) > cfg_.sample_budget) break;
      }
      out.valuations = std::move(next);
    } else if (const auto* d = std::get_if<DefEntry>(&entry)) {
      // A definition that cannot be interpreted within bounds poisons only
      // the judgments that use it, not the whole context.
      std::string nm = d->name;
      SemValue poison = sem_fn(
          [nm](const SemValue&) -> SemValue {
            throw InterpUndefined(nm + " could not be interpreted within bounds");
          },
          nm);
      for (auto& g : out.valuations) {
        SemValue v = poison;
        try {
          v = interp(pre, g, d->body);
          if (d->type) {
            SemValue tv = interp(pre, g, d->type);
            if (mem_at_depth(v, tv, cfg_.fixpoint_depth) == Truth::No) out.def_mismatch = true;
          }
        } catch (const BoundExceeded&) {
          v = poison;
        } catch (const InterpUndefined&) {
          v = poison;
        }
        g.push_back(v);
      }
    }
    pre.push(entry);
  }
  return out;
}

Truth ModelSession::check_judgment(const Context& ctx, const TermPtr& term, const TermPtr& type,
                                   int depth) {
  CtxInterp ci = interp_ctx(ctx);
  if (ci.def_mismatch) return Truth::No;
  if (ci.valuations.empty()) return Truth::Unknown;
  bool unknown = ci.undefined || !ci.complete;
  for (auto& g : ci.valuations) {
    try {
      SemValue v = interp(ctx, g, term);
      SemValue tv = interp(ctx, g, type);
      Truth r = mem_at_depth(v, tv, depth);
      if (r == Truth::No) return Truth::No;
      if (r == Truth::Unknown) unknown = true;
    } catch (const BoundExceeded&) {
      unknown = true;
    } catch (const InterpUndefined&) {
      unknown = true;
    }
  }
  return unknown ? Truth::Unknown : Truth::Yes;
}

}  // namespace cck
