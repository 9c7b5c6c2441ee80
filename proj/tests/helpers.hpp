// Shared fixtures: a hand-built unary-number block, its addition fixpoint,
// and a minimal loader that replays vernacular declarations into a context.
#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cck/kernel.hpp"
#include "cck/parser.hpp"
#include "cck/syntax.hpp"

namespace cck::testing {

inline BlockPtr nat_block() {
  auto blk = std::make_shared<InductiveBlock>();
  blk->param_count = 0;
  blk->ind_decls = {{"nat", type_u(0)}};
  blk->con_decls = {{"O", var("nat")}, {"S", arrow(var("nat"), var("nat"))}};
  return blk;
}

inline TermPtr numeral(const BlockPtr& nat, int k) {
  TermPtr t = ind_ref(nat, "O");
  for (int i = 0; i < k; ++i) t = app(ind_ref(nat, "S"), t);
  return t;
}

inline TermPtr plus_fix(const BlockPtr& nat) {
  TermPtr nref = ind_ref(nat, "nat");
  TermPtr ty = pi("m", nref, pi("n", nref, nref));
  TermPtr rec = app(app(var("plus"), var("m")), var("p"));
  TermPtr body =
      lam("m", nref,
          lam("n", nref,
              case_of(var("n"), lam("y", nref, nref),
                      {var("m"), lam("p", nref, app(ind_ref(nat, "S"), rec))})));
  return fix(0, {FixDef{"plus", 1, ty, body}});
}

struct Loaded {
  Context ctx;
  std::vector<VernacularItem> items;
  std::vector<BlockPtr> blocks;
};

// Admits blocks and checks definitions/fixpoints; Check/Assert/Eval/Model
// items are parsed and kept but not acted on.
inline Loaded load_program(const std::string& text, const ReductionConfig& cfg = {}) {
  Loaded ld;
  ld.items = parse_file(text);
  for (const auto& item : ld.items) {
    if (const auto* ind = std::get_if<ItemInductive>(&item.data)) {
      admit_inductive(ld.ctx, ind->block, cfg);
      ld.ctx.push(IndEntry{ind->block});
      ld.blocks.push_back(ind->block);
    } else if (const auto* def = std::get_if<ItemDefinition>(&item.data)) {
      TermPtr ty = def->type;
      if (ty)
        check(ld.ctx, def->body, ty, cfg);
      else
        ty = infer(ld.ctx, def->body, cfg);
      ld.ctx.push(DefEntry{def->name, def->body, ty});
    } else if (const auto* fxp = std::get_if<ItemFixpoint>(&item.data)) {
      std::vector<DefEntry> entries;
      for (std::size_t j = 0; j < fxp->defs.size(); ++j) {
        TermPtr f = fix(static_cast<int>(j), fxp->defs);
        entries.push_back(DefEntry{fxp->defs[j].name, f, infer(ld.ctx, f, cfg)});
      }
      for (DefEntry& e : entries) ld.ctx.push(std::move(e));
    }
  }
  return ld;
}

}  // namespace cck::testing
