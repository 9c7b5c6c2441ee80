#include "cck/driver.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "cck/kernel.hpp"
#include "cck/model.hpp"
#include "cck/parser.hpp"
#include "cck/pretty.hpp"

namespace cck {

namespace {

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void diag(std::ostream& err, const std::string& path, int line, int col, const std::string& rule,
          const std::string& msg) {
  err << path << ":" << line << ":" << col << ": error: " << rule << ": " << msg << "\n";
}

using Report = std::vector<std::pair<std::string, std::string>>;

ModelConfig model_config(const DriverOptions& opts) {
  ModelConfig cfg;
  cfg.universe_rank = opts.rank;
  cfg.fixpoint_depth = opts.depth;
  cfg.sample_budget = opts.samples;
  cfg.reduction.max_steps = opts.max_steps;
  return cfg;
}

struct Loaded {
  Context ctx;
  std::vector<BlockPtr> blocks;
};

// Replays every item. Returns 0 or the exit code of the first rejection.
int process_items(const std::string& path, const std::vector<VernacularItem>& items,
                  const DriverOptions& opts, ModelSession& session, Loaded& ld, std::ostream& out,
                  std::ostream& err, Report& report) {
  ReductionConfig rcfg{opts.max_steps};
  for (const VernacularItem& item : items) {
    try {
      if (const auto* ind = std::get_if<ItemInductive>(&item.data)) {
        admit_inductive(ld.ctx, ind->block, rcfg);
        ld.ctx.push(IndEntry{ind->block});
        ld.blocks.push_back(ind->block);
      } else if (const auto* def = std::get_if<ItemDefinition>(&item.data)) {
        if (ld.ctx.has_name(def->name))
          throw TypeError({"(wf)", "name already declared: " + def->name});
        TermPtr ty = def->type;
        if (ty)
          check(ld.ctx, def->body, ty, rcfg);
        else
          ty = infer(ld.ctx, def->body, rcfg);
        ld.ctx.push(DefEntry{def->name, def->body, ty});
      } else if (const auto* fxp = std::get_if<ItemFixpoint>(&item.data)) {
        std::vector<DefEntry> entries;
        for (std::size_t j = 0; j < fxp->defs.size(); ++j) {
          if (ld.ctx.has_name(fxp->defs[j].name))
            throw TypeError({"(wf)", "name already declared: " + fxp->defs[j].name});
          TermPtr f = fix(static_cast<int>(j), fxp->defs);
          TermPtr ty = infer(ld.ctx, f, rcfg);
          entries.push_back(DefEntry{fxp->defs[j].name, f, ty});
        }
        for (DefEntry& e : entries) ld.ctx.push(std::move(e));
      } else if (const auto* chk = std::get_if<ItemCheck>(&item.data)) {
        TermPtr ty = chk->type;
        if (ty)
          check(ld.ctx, chk->term, ty, rcfg);
        else
          ty = infer(ld.ctx, chk->term, rcfg);
        out << pretty_print(chk->term) << " : " << pretty_print(ty) << "\n";
      } else if (const auto* asr = std::get_if<ItemAssert>(&item.data)) {
        if (!judgmental_eq(ld.ctx, asr->lhs, asr->rhs, asr->type, rcfg))
          throw TypeError({"(conv)", "assertion failed: " + pretty_print(asr->lhs) +
                                         " = " + pretty_print(asr->rhs) + " : " +
                                         pretty_print(asr->type)});
      } else if (const auto* ev = std::get_if<ItemEval>(&item.data)) {
        infer(ld.ctx, ev->term, rcfg);
        out << pretty_print(normalize(ld.ctx, ev->term, rcfg)) << "\n";
      } else if (const auto* mdl = std::get_if<ItemModel>(&item.data)) {
        TermPtr t = parse_term(mdl->term_name, ld.blocks);
        TermPtr ty = parse_term(mdl->type_name, ld.blocks);
        check(ld.ctx, t, ty, rcfg);
        Truth tr = session.check_judgment(ld.ctx, t, ty, mdl->depth);
        out << "JUDGMENT " << mdl->term_name << ": " << truth_str(tr) << " (depth=" << mdl->depth
            << ", samples=" << opts.samples << ")\n";
        report.emplace_back("judgment_" + mdl->term_name, truth_str(tr));
      }
    } catch (const TypeError& e) {
      diag(err, path, item.line, item.col, e.diag().rule, e.diag().message);
      return 1;
    } catch (const FuelExhausted& e) {
      diag(err, path, item.line, item.col, "reduction", e.what());
      return 1;
    } catch (const ParseError& e) {
      diag(err, path, item.line, item.col, "parse", e.what());
      return 1;
    }
  }
  return 0;
}

int load_file(const std::string& path, const DriverOptions& opts, ModelSession& session,
              Loaded& ld, std::ostream& out, std::ostream& err, Report& report) {
  std::optional<std::string> text = slurp(path);
  if (!text) {
    err << path << ": cannot read file\n";
    return 2;
  }
  std::vector<VernacularItem> items;
  try {
    items = parse_file(*text);
  } catch (const ParseError& e) {
    diag(err, path, e.line, e.col, "parse", e.what());
    return 1;
  }
  return process_items(path, items, opts, session, ld, out, err, report);
}

int write_report(const DriverOptions& opts, const Report& report, std::ostream& err) {
  if (opts.report_path.empty()) return 0;
  std::ofstream f(opts.report_path);
  if (!f) {
    err << opts.report_path << ": cannot write report\n";
    return 2;
  }
  for (auto& [k, v] : report) f << k << "=" << v << "\n";
  return 0;
}

}  // namespace

int cmd_check(const std::string& path, const DriverOptions& opts, std::ostream& out,
              std::ostream& err) {
  ModelSession session(model_config(opts));
  Loaded ld;
  Report report;
  int rc = load_file(path, opts, session, ld, out, err, report);
  report.emplace_back("status", rc == 0 ? "ok" : "error");
  int rrc = write_report(opts, report, err);
  return rc != 0 ? rc : rrc;
}

int cmd_norm(const std::string& path, const DriverOptions& opts, std::ostream& out,
             std::ostream& err) {
  if (opts.term.empty()) {
    err << "norm: missing --term\n";
    return 2;
  }
  ModelSession session(model_config(opts));
  Loaded ld;
  Report report;
  std::ostringstream sink;
  int rc = load_file(path, opts, session, ld, sink, err, report);
  if (rc != 0) return rc;
  ReductionConfig rcfg{opts.max_steps};
  try {
    TermPtr t = parse_term(opts.term, ld.blocks);
    infer(ld.ctx, t, rcfg);
    std::string nf = pretty_print(normalize(ld.ctx, t, rcfg));
    out << nf << "\n";
    report.emplace_back("normal_form", nf);
  } catch (const ParseError& e) {
    diag(err, path, e.line, e.col, "parse", e.what());
    return 1;
  } catch (const TypeError& e) {
    diag(err, path, 0, 0, e.diag().rule, e.diag().message);
    return 1;
  } catch (const FuelExhausted& e) {
    diag(err, path, 0, 0, "reduction", e.what());
    return 1;
  }
  return write_report(opts, report, err);
}

int cmd_model(const std::string& path, const DriverOptions& opts, std::ostream& out,
              std::ostream& err) {
  if (opts.term.empty() || opts.type_name.empty()) {
    err << "model: missing --term or --type\n";
    return 2;
  }
  ModelSession session(model_config(opts));
  Loaded ld;
  Report report;
  std::ostringstream sink;
  int rc = load_file(path, opts, session, ld, sink, err, report);
  if (rc != 0) return rc;
  ReductionConfig rcfg{opts.max_steps};
  try {
    TermPtr t = parse_term(opts.term, ld.blocks);
    TermPtr ty = parse_term(opts.type_name, ld.blocks);
    check(ld.ctx, t, ty, rcfg);
    std::string enc = "(not materializable within bounds)";
    ModelSession::CtxInterp ci = session.interp_ctx(ld.ctx);
    if (!ci.valuations.empty()) {
      try {
        enc = hf_str(session.lower(session.interp(ld.ctx, ci.valuations.front(), t)));
      } catch (const BoundExceeded&) {
      } catch (const InterpUndefined&) {
      }
    }
    Truth tr = session.check_judgment(ld.ctx, t, ty, opts.depth);
    out << enc << "\n";
    out << "member: " << truth_str(tr) << "\n";
    report.emplace_back("encoding", enc);
    report.emplace_back("member", truth_str(tr));
    report.emplace_back("depth", std::to_string(opts.depth));
    report.emplace_back("samples", std::to_string(opts.samples));
  } catch (const ParseError& e) {
    diag(err, path, e.line, e.col, "parse", e.what());
    return 1;
  } catch (const TypeError& e) {
    diag(err, path, 0, 0, e.diag().rule, e.diag().message);
    return 1;
  } catch (const FuelExhausted& e) {
    diag(err, path, 0, 0, "reduction", e.what());
    return 1;
  }
  return write_report(opts, report, err);
}

}  // namespace cck
