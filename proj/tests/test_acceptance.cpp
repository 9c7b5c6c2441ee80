// Acceptance checks. Each criterion prints exactly one line:
//   [PASS] criterion N: <name> (<elapsed> ms <= <budget> ms)
//   [FAIL] criterion N: <name> -- <reason>
// The process exits nonzero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cck/driver.hpp"
#include "cck/kernel.hpp"
#include "cck/model.hpp"
#include "cck/parser.hpp"
#include "cck/pretty.hpp"
#include "cck/reduction.hpp"
#include "cck/ruleset.hpp"
#include "helpers.hpp"

using namespace cck;

namespace {

int failures = 0;

const std::string kCorpus = CCK_CORPUS_DIR;
const std::string kCli = CCK_CLI_PATH;

const char* kPositive[] = {"bitt.cc", "nat.cc",  "poly_id.cc",    "prec.cc",
                           "titi.cc", "titif.cc", "toto.cc",      "treeforest.cc"};

struct Failure {
  std::string reason;
};

void criterion(int num, const std::string& name, double budget_ms,
               const std::function<void()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string reason;
  try {
    body();
  } catch (const Failure& f) {
    reason = f.reason;
  } catch (const std::exception& e) {
    reason = std::string("unexpected exception: ") + e.what();
  }
  auto t1 = std::chrono::steady_clock::now();
  double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  if (reason.empty() && ms > budget_ms) {
    std::ostringstream ss;
    ss << "took " << static_cast<long long>(ms) << " ms, budget " << budget_ms << " ms";
    reason = ss.str();
  }
  if (reason.empty()) {
    std::printf("[PASS] criterion %d: %s (%lld ms <= %lld ms)\n", num, name.c_str(),
                static_cast<long long>(ms), static_cast<long long>(budget_ms));
  } else {
    std::printf("[FAIL] criterion %d: %s -- %s\n", num, name.c_str(), reason.c_str());
    ++failures;
  }
  std::fflush(stdout);
}

[[noreturn]] void fail(const std::string& reason) { throw Failure{reason}; }

void expect(bool ok, const std::string& reason) {
  if (!ok) fail(reason);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) fail("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

testing::Loaded load_corpus_file(const std::string& name) {
  return testing::load_program(slurp(kCorpus + "/" + name));
}

// Unary-number encoding oracle: O |-> <1>, S v |-> <2, v>.
Hf enc(int k) {
  Hf t = tuple({vnat(1)});
  for (int i = 0; i < k; ++i) t = tuple({vnat(2), t});
  return t;
}

int run_check(const std::string& file, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  DriverOptions opts;
  int rc = cmd_check(file, opts, out, err);
  if (err_text) *err_text = err.str();
  return rc;
}

// ---- criterion bodies ----

void positive_corpus() {
  for (const char* f : kPositive) {
    std::string err;
    int rc = run_check(kCorpus + "/" + f, &err);
    if (rc != 0) fail(std::string(f) + " rejected: " + err);
  }
}

void negative_corpus() {
  const std::pair<const char*, const char*> expected[] = {
      {"bad_app_mismatch.cc", "(app)"},
      {"bad_case_branches.cc", "(case) branches"},
      {"bad_dup.cc", "(wf)"},
      {"bad_fix_eqz.cc", "F guard"},
      {"bad_fix_noninductive.cc", "F guard"},
      {"bad_fix_unrelated.cc", "F guard"},
      {"bad_motive.cc", "(case) C"},
      {"bad_mutual_swap.cc", "F guard"},
      {"bad_negative.cc", "(ind-wf) positivity"},
      {"bad_non_arity.cc", "(ind-wf) arity"},
      {"bad_param_mismatch.cc", "(ind-wf) parameter use"},
      {"bad_prop_arity.cc", "(ind-wf) arity"},
      {"bad_type_in_type.cc", "(cum)"},
      {"bad_unbound.cc", "(var)"},
      {"bad_unguarded.cc", "F guard"},
  };
  static_assert(sizeof(expected) / sizeof(expected[0]) >= 10);
  for (auto& [file, label] : expected) {
    std::string err;
    int rc = run_check(kCorpus + "/negative/" + file, &err);
    if (rc != 1) fail(std::string(file) + ": expected exit 1, got " + std::to_string(rc));
    if (err.find(label) == std::string::npos)
      fail(std::string(file) + ": diagnostic lacks '" + label + "': " + err);
  }
}

void consistency() {
  ReductionConfig rcfg;
  ModelSession session;
  Context empty;
  TermPtr falsum = parse_term("forall (x : Prop), x");

  // The supposed proofs: every synthetic candidate is refused by the checker.
  const char* candidates[] = {
      "Prop",
      "fun (x : Prop) => x",
      "fun (a : Prop) (p : a) => p",
      "forall (x : Prop), x",
  };
  for (const char* c : candidates) {
    bool rejected = false;
    try {
      check(empty, parse_term(c), falsum, rcfg);
    } catch (const TypeError&) {
      rejected = true;
    }
    if (!rejected) fail(std::string("candidate accepted: ") + c);
  }

  // No definition anywhere in the corpus proves it either.
  for (const char* f : kPositive) {
    auto ld = load_corpus_file(f);
    for (const auto& e : ld.ctx.entries()) {
      const auto* d = std::get_if<DefEntry>(&e);
      if (!d) continue;
      bool rejected = false;
      try {
        check(ld.ctx, d->body, falsum, rcfg);
      } catch (const TypeError&) {
        rejected = true;
      }
      if (!rejected) fail(std::string(f) + ": definition " + d->name + " accepted as a proof");
    }
  }

  // And its denotation is empty, exactly.
  Hf deno = session.lower(session.interp(empty, {}, falsum));
  expect(hf_eq(deno, hf_empty()), "denotation of the false proposition is not empty");
}

void addition_table() {
  auto ld = testing::load_program(
      "Inductive nat : Type0 := O : nat | S : nat -> nat.\n"
      "Fixpoint plus / 2 : forall (m : nat) (n : nat), nat :=\n"
      "  fun (m : nat) (n : nat) =>\n"
      "    match n as y in nat return nat with\n"
      "    | O => m\n"
      "    | S p => S (plus m p)\n"
      "    end.\n");
  ReductionConfig rcfg;
  ModelSession session;
  auto ci = session.interp_ctx(ld.ctx);
  expect(!ci.valuations.empty(), "no valuation");
  const Env& env = ci.valuations.front();
  BlockPtr nat = ld.blocks[0];

  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n) {
      TermPtr t = app(app(var("plus"), testing::numeral(nat, m)), testing::numeral(nat, n));
      TermPtr nf = normalize(ld.ctx, t, rcfg);
      if (!alpha_eq(nf, testing::numeral(nat, m + n)))
        fail("normalize plus " + std::to_string(m) + " " + std::to_string(n) + " gave " +
             pretty_print(nf));
      Hf v = session.lower(session.interp(ld.ctx, env, t));
      if (!hf_eq(v, enc(m + n)))
        fail("interp plus " + std::to_string(m) + " " + std::to_string(n) + " gave " + hf_str(v));
    }
}

struct Tree {
  int label = 0;  // 0 or 1
  std::vector<Tree> kids;
};

std::string forest_term(const std::vector<Tree>& kids);
std::string tree_term(const Tree& t) {
  return "(node bitt " + std::string(t.label ? "b1" : "b0") + " " + forest_term(t.kids) + ")";
}
std::string forest_term(const std::vector<Tree>& kids) {
  if (kids.empty()) return "(emptyf bitt)";
  std::string rest = forest_term(std::vector<Tree>(kids.begin() + 1, kids.end()));
  return "(consf bitt " + tree_term(kids.front()) + " " + rest + ")";
}
int tree_nodes(const Tree& t) {
  int n = 1;
  for (const Tree& k : t.kids) n += tree_nodes(k);
  return n;
}
int forest_nodes(const std::vector<Tree>& kids) {
  int n = 0;
  for (const Tree& k : kids) n += tree_nodes(k);
  return n;
}

void tree_sizes() {
  auto ld = load_corpus_file("treeforest.cc");
  ReductionConfig rcfg;
  ModelSession session;
  auto ci = session.interp_ctx(ld.ctx);
  expect(!ci.valuations.empty(), "no valuation");
  const Env& env = ci.valuations.front();
  const BlockPtr* natp = ld.ctx.find_block_with("nat");
  expect(natp != nullptr, "no nat block");
  BlockPtr nat = *natp;

  const DefEntry* tdef = ld.ctx.find_def("Tsize");
  const DefEntry* fdef = ld.ctx.find_def("Fsize");
  expect(tdef && fdef, "Tsize/Fsize missing");
  RuleSet rs = session.fix_rule_set(ld.ctx, env, tdef->body);
  Hf A = session.lower(session.interp(ld.ctx, env, parse_term("bitt", ld.blocks)));

  Tree leaf0{0, {}};
  Tree leaf1{1, {}};
  std::vector<Tree> samples = {
      leaf0,
      Tree{1, {leaf0}},
      Tree{0, {leaf0, leaf1}},
      Tree{1, {Tree{0, {leaf1}}, leaf0}},
      Tree{0, {Tree{1, {leaf0, leaf1}}}},
  };

  for (const Tree& t : samples) {
    int nodes = tree_nodes(t);
    TermPtr tt = parse_term(tree_term(t), ld.blocks);
    TermPtr sized = app(app(var("Tsize"), parse_term("bitt", ld.blocks)), tt);
    TermPtr nf = normalize(ld.ctx, sized, rcfg);
    if (!alpha_eq(nf, testing::numeral(nat, nodes)))
      fail("Tsize of " + tree_term(t) + " normalized to " + pretty_print(nf) + ", expected " +
           std::to_string(nodes));

    Hf tv = session.lower(session.interp(ld.ctx, env, tt));
    if (!derivable(rs, tuple({A, tv, enc(nodes)}), 32))
      fail("Tsize row not derivable for " + tree_term(t));
    if (derivable(rs, tuple({A, tv, enc(nodes + 1)}), 32))
      fail("wrong Tsize row derivable for " + tree_term(t));

    int fnodes = forest_nodes(t.kids);
    TermPtr ft = parse_term(forest_term(t.kids), ld.blocks);
    TermPtr fsized = app(app(var("Fsize"), parse_term("bitt", ld.blocks)), ft);
    TermPtr fnf = normalize(ld.ctx, fsized, rcfg);
    if (!alpha_eq(fnf, testing::numeral(nat, fnodes)))
      fail("Fsize of " + forest_term(t.kids) + " normalized to " + pretty_print(fnf));
    Hf fv = session.lower(session.interp(ld.ctx, env, ft));
    if (!derivable(rs, tuple({A, fv, enc(fnodes)}), 32))
      fail("Fsize row not derivable for " + forest_term(t.kids));
  }
}

void graph_laws() {
  std::mt19937 rng(20260816);
  std::vector<Hf> universe;
  for (unsigned i = 0; i < 5; ++i) universe.push_back(vnat(i));
  universe.push_back(kpair(vnat(0), vnat(2)));
  universe.push_back(hf_set({vnat(3)}));
  auto any = [&](const std::vector<Hf>& from) {
    std::uniform_int_distribution<std::size_t> d(0, from.size() - 1);
    return from[d(rng)];
  };

  for (int round = 0; round < 1000; ++round) {
    std::uniform_int_distribution<int> dlen(0, 4);
    std::vector<Hf> dom;
    int want = dlen(rng);
    while (static_cast<int>(dom.size()) < want) {
      Hf x = any(universe);
      bool dup = false;
      for (auto& d : dom) dup = dup || hf_eq(d, x);
      if (dup) break;
      dom.push_back(x);
    }
    std::vector<std::pair<Hf, Hf>> rows;
    for (auto& x : dom) rows.emplace_back(x, any(universe));
    Hf fn = aczel_lam(rows);
    for (auto& [x, y] : rows)
      if (!hf_eq(aczel_app(fn, x), y)) fail("application lost a tabulated value");
    if (!hf_eq(aczel_app(fn, vnat(9)), hf_empty())) fail("phantom value off the domain");
  }

  // Subsingleton families: over every domain of size <= 3 and every 0/1
  // assignment, the set of tabulated choice functions is included in 1, and
  // equals 1 exactly when every point gets 1.
  std::vector<Hf> points = {vnat(2), vnat(3), hf_set({vnat(1)})};
  Hf one = hf_set({hf_empty()});
  for (int n = 0; n <= 3; ++n)
    for (int mask = 0; mask < (1 << n); ++mask) {
      bool all_inhabited = true;
      for (int i = 0; i < n; ++i) all_inhabited = all_inhabited && ((mask >> i) & 1);
      std::vector<Hf> graphs;
      if (all_inhabited) {
        std::vector<std::pair<Hf, Hf>> rows;
        for (int i = 0; i < n; ++i) rows.emplace_back(points[i], hf_empty());
        graphs.push_back(aczel_lam(rows));
      }
      Hf product = hf_set(graphs);
      for (auto& g : product->elems())
        if (!hf_mem(g, one)) fail("a choice-function graph escaped 1");
      if (hf_eq(product, one) != all_inhabited) fail("product = 1 iff family all 1 failed");
      if (!all_inhabited && !hf_eq(product, hf_empty()))
        fail("empty family produced a nonempty product");
    }
}

void substitutivity() {
  auto ld = testing::load_program(
      "Inductive nat : Type0 := O : nat | S : nat -> nat.\n"
      "Fixpoint plus / 2 : forall (m : nat) (n : nat), nat :=\n"
      "  fun (m : nat) (n : nat) =>\n"
      "    match n as y in nat return nat with\n"
      "    | O => m\n"
      "    | S p => S (plus m p)\n"
      "    end.\n");
  ModelSession session;
  auto ci = session.interp_ctx(ld.ctx);
  const Env& env = ci.valuations.front();
  BlockPtr nat = ld.blocks[0];
  TermPtr nref = ind_ref(nat, "nat");

  std::mt19937 rng(777);
  std::uniform_int_distribution<int> small(0, 2);
  std::function<TermPtr(int, bool)> gen = [&](int depth, bool open) -> TermPtr {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? (open ? 1 : 0) : 4);
    switch (pick(rng)) {
      case 0:
        return testing::numeral(nat, small(rng));
      case 1:
        return open ? var("x") : testing::numeral(nat, small(rng));
      case 2:
        return app(ind_ref(nat, "S"), gen(depth - 1, open));
      case 3:
        return app(app(var("plus"), gen(depth - 1, open)), gen(depth - 1, open));
      default:
        return let_in("w", gen(depth - 1, open), nullptr,
                      app(ind_ref(nat, "S"), var("w")));
    }
  };

  for (int round = 0; round < 500; ++round) {
    TermPtr m = gen(3, true);
    TermPtr n = gen(2, false);
    TermPtr msub = substitute(m, "x", n);

    // Substitution = environment extension.
    Context extended = ld.ctx;
    extended.push(AssumEntry{"x", nref});
    Env env2 = env;
    env2.push_back(session.interp(ld.ctx, env, n));
    Hf via_env = session.lower(session.interp(extended, env2, m));
    Hf via_subst = session.lower(session.interp(ld.ctx, env, msub));
    if (!hf_eq(via_env, via_subst)) fail("substitution changed the denotation");

    // Beta redexes denote the same set as their contracta.
    Hf redex = session.lower(session.interp(ld.ctx, env, app(lam("x", nref, m), n)));
    if (!hf_eq(redex, via_subst)) fail("beta changed the denotation");
  }
}

void soundness() {
  for (const char* f : kPositive) {
    auto ld = load_corpus_file(f);
    ReductionConfig rcfg;
    ModelSession session;

    struct J {
      TermPtr term;
      TermPtr type;
      std::string label;
    };
    std::vector<J> js;
    for (const auto& e : ld.ctx.entries())
      if (const auto* d = std::get_if<DefEntry>(&e))
        js.push_back({d->body, d->type, "def " + d->name});
    for (const auto& item : ld.items) {
      if (const auto* chk = std::get_if<ItemCheck>(&item.data)) {
        TermPtr ty = chk->type ? chk->type : infer(ld.ctx, chk->term, rcfg);
        js.push_back({chk->term, ty, "check"});
      } else if (const auto* as = std::get_if<ItemAssert>(&item.data)) {
        js.push_back({as->lhs, as->type, "assert lhs"});
        js.push_back({as->rhs, as->type, "assert rhs"});
      } else if (const auto* ev = std::get_if<ItemEval>(&item.data)) {
        js.push_back({ev->term, infer(ld.ctx, ev->term, rcfg), "eval"});
      } else if (const auto* md = std::get_if<ItemModel>(&item.data)) {
        js.push_back({parse_term(md->term_name, ld.blocks), parse_term(md->type_name, ld.blocks),
                      "model " + md->term_name});
      }
    }
    for (const J& j : js) {
      Truth t = session.check_judgment(ld.ctx, j.term, j.type, 8);
      if (t == Truth::No)
        fail(std::string(f) + ": " + j.label + " judged a non-member");
    }
  }

  // Representative judgments that must come back definite.
  {
    auto ld = load_corpus_file("nat.cc");
    ModelSession session;
    Truth t = session.check_judgment(ld.ctx, parse_term("two", ld.blocks),
                                     parse_term("nat", ld.blocks), 8);
    expect(t == Truth::Yes, "two : nat not affirmed");
  }
  {
    auto ld = load_corpus_file("poly_id.cc");
    ModelSession session;
    Truth t = session.check_judgment(ld.ctx, parse_term("idp", ld.blocks),
                                     parse_term("P", ld.blocks), 8);
    expect(t == Truth::Yes, "idp : P not affirmed");
  }
  {
    auto ld = load_corpus_file("bitt.cc");
    ModelSession session;
    Truth t = session.check_judgment(ld.ctx, parse_term("flip", ld.blocks),
                                     parse_term("bb", ld.blocks), 8);
    expect(t == Truth::Yes, "flip : bitt -> bitt not affirmed");
  }
}

void path_independence() {
  auto ld = testing::load_program(
      "Definition I := fun (A : Type0) => A -> A.\n"
      "Definition P := forall (a : Prop), a -> a.\n");
  ReductionConfig rcfg;
  // P checks both as a proposition and, by cumulativity, as a Type0.
  check(ld.ctx, parse_term("P"), prop(), rcfg);
  check(ld.ctx, parse_term("P"), type_u(0), rcfg);

  ModelSession session;
  auto ci = session.interp_ctx(ld.ctx);
  const Env& env = ci.valuations.front();
  Hf one = vnat(1);
  Hf applied = session.lower(session.interp(ld.ctx, env, parse_term("I P")));
  Hf spelled = session.lower(session.interp(ld.ctx, env, parse_term("P -> P")));
  expect(hf_eq(applied, one), "I P does not denote 1");
  expect(hf_eq(spelled, one), "P -> P does not denote 1");
  expect(hf_eq(applied, spelled), "the two readings of I P disagree");
}

void proof_irrelevance() {
  ReductionConfig rcfg;
  bool saw_proof = false;
  for (const char* f : kPositive) {
    auto ld = load_corpus_file(f);
    ModelSession session;
    auto ci = session.interp_ctx(ld.ctx);
    const Env& env = ci.valuations.front();
    std::vector<std::pair<std::string, Hf>> proofs;
    for (const auto& e : ld.ctx.entries()) {
      const auto* d = std::get_if<DefEntry>(&e);
      if (!d) continue;
      Sort s{};
      try {
        s = infer_sort(ld.ctx, d->type, rcfg);
      } catch (const TypeError&) {
        continue;
      }
      if (!s.prop) continue;
      Hf v = session.lower(session.interp(ld.ctx, env, d->body));
      proofs.emplace_back(d->name, v);
    }
    for (auto& [name, v] : proofs) {
      saw_proof = true;
      if (!hf_eq(v, hf_empty()))
        fail(std::string(f) + ": proof " + name + " denotes " + hf_str(v));
    }
    for (std::size_t i = 0; i + 1 < proofs.size(); ++i)
      if (!hf_eq(proofs[i].second, proofs[i + 1].second))
        fail(std::string(f) + ": proofs " + proofs[i].first + " and " + proofs[i + 1].first +
             " differ");
  }
  expect(saw_proof, "no propositional definitions found in the corpus");
}

void least_fixed_points() {
  // The unary numbers: k rounds produce exactly the numerals below k.
  auto ld = testing::load_program("Inductive nat : Type0 := O : nat | S : nat -> nat.\n");
  ModelSession session;
  auto ci = session.interp_ctx(ld.ctx);
  RuleSet nat_rs = session.family_rule_set(ld.ctx, ci.valuations.front(), ld.blocks[0], {});
  for (int k : {1, 4, 7}) {
    LfpResult r = lfp(nat_rs, k, 100000);
    if (static_cast<int>(r.elements.size()) != k) fail("round count mismatch");
    for (int i = 0; i < k; ++i)
      if (!hf_eq(r.elements[i], tuple({vnat(0), enc(i)})))
        fail("stage " + std::to_string(i) + " is not the expected numeral");
    if (r.complete) fail("an infinite type reported completeness");
  }

  // Minimality on random finite systems: the iterated set equals an
  // independently computed closure, is closed, and is supported rule-wise.
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> num(0, 9);
  for (int round = 0; round < 100; ++round) {
    std::vector<Rule> rules;
    std::uniform_int_distribution<int> n_axioms(0, 2), n_rules(1, 8), n_prem(1, 2);
    for (int i = n_axioms(rng); i > 0; --i) rules.push_back(Rule{{}, vnat(num(rng))});
    for (int i = n_rules(rng); i > 0; --i) {
      std::vector<Hf> prems;
      for (int j = n_prem(rng); j > 0; --j) prems.push_back(vnat(num(rng)));
      rules.push_back(Rule{prems, vnat(num(rng))});
    }

    LfpResult r = lfp_explicit(rules, 64);
    if (!r.complete) fail("a finite system failed to stabilize");

    // Closed.
    for (auto& v : apply_operator(rules, r.set))
      if (!r.set.count(v)) fail("iterated set is not closed");

    // Equals the queue-saturation closure.
    HfSet oracle;
    {
      std::vector<const Rule*> pending;
      for (auto& rr : rules) pending.push_back(&rr);
      bool changed = true;
      while (changed) {
        changed = false;
        std::vector<const Rule*> still;
        for (const Rule* rr : pending) {
          bool ok = true;
          for (auto& p : rr->premises) ok = ok && oracle.count(p) > 0;
          if (ok) {
            if (oracle.insert(rr->conclusion).second) changed = true;
          } else {
            still.push_back(rr);
          }
        }
        pending = std::move(still);
      }
    }
    if (oracle.size() != r.set.size()) fail("iterated set differs from the closure");
    for (auto& v : oracle)
      if (!r.set.count(v)) fail("closure element missing from the iterated set");

    // Every member has a finite derivation.
    RuleSet sys = explicit_rules(rules, "rand");
    for (auto& v : r.set) {
      bool supported = derivable(sys, v, 64);
      // premises_of keeps one rule per conclusion; a member may be reachable
      // only through an alternative rule, but never through none at all.
      if (!supported) {
        bool has_rule = false;
        for (auto& rr : rules) has_rule = has_rule || hf_eq(rr.conclusion, v);
        if (!has_rule) fail("member with no supporting rule");
      }
    }
  }
}

// ---- CLI smoke (not a numbered criterion) ----

int run_cli(const std::string& args, std::string* out_text) {
  std::string cmd = kCli + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return -1;
  char buf[512];
  std::string out;
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  if (out_text) *out_text = out;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void cli_smoke() {
  std::string out;
  int rc = run_cli("model " + kCorpus + "/nat.cc --term two --type nat --depth 5", &out);
  expect(rc == 0, "model run failed with exit " + std::to_string(rc));
  expect(out == "⟨2,⟨2,⟨1⟩⟩⟩\nmember: yes\n",
         "model output mismatch: " + out);

  expect(run_cli("check " + kCorpus + "/nat.cc", nullptr) == 0, "check exit code");
  expect(run_cli("check " + kCorpus + "/negative/bad_unbound.cc", nullptr) == 1,
         "negative exit code");
  expect(run_cli("check " + kCorpus + "/no_such_file.cc", nullptr) == 2, "missing-file exit code");
  expect(run_cli("", nullptr) == 2, "usage exit code");

  rc = run_cli("norm " + kCorpus + "/nat.cc --term \"plus two three\"", &out);
  expect(rc == 0, "norm run failed");
  expect(out == "S (S (S (S (S O))))\n", "norm output mismatch: " + out);
}

}  // namespace

int main() {
  criterion(1, "positive corpus type-checks", 2000, positive_corpus);
  criterion(2, "negative corpus rejected with the expected rules", 2000, negative_corpus);
  criterion(3, "no proof of the false proposition; its denotation is empty", 1000, consistency);
  criterion(4, "addition agrees with the unary oracle, both semantics", 1000, addition_table);
  criterion(5, "tree sizes agree with a node-count oracle, both semantics", 1000, tree_sizes);
  criterion(6, "graph application laws and subsingleton products", 2000, graph_laws);
  criterion(7, "substitutivity and beta invariance of the denotation", 10000, substitutivity);
  criterion(8, "model soundness across every corpus judgment", 30000, soundness);
  criterion(9, "interpretation is independent of the typing path", 1000, path_independence);
  criterion(10, "proofs of propositions all denote the empty set", 1000, proof_irrelevance);
  criterion(11, "least fixed points are exact and minimal", 5000, least_fixed_points);
  criterion(12, "command-line interface round trip", 10000, cli_smoke);

  if (failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
