// Finitary set-theoretic evaluator.
//
// Terms are interpreted as hereditarily finite sets wherever the computation
// stays finite, and as symbolic values otherwise.  Functions are coded by
// their graphs, with application reading the graph: app(u, x) = {b | (x,b) in
// u}.  An inductive type denotes the least fixed point of a rule set over
// rows <i, params..., indices..., value>, iterated to a configured depth.  A
// fixpoint definition is queried through the rule set of its call graph: one
// row per evaluated call, <args..., result>, whose premises are the direct
// recursive calls.
//
// Every answer that cannot be computed exactly within the configured bounds
// is reported as Unknown (or raises BoundExceeded internally); the evaluator
// never guesses.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cck/hf.hpp"
#include "cck/reduction.hpp"
#include "cck/ruleset.hpp"
#include "cck/syntax.hpp"

namespace cck {

enum class Truth { Yes, No, Unknown };
std::string truth_str(Truth t);

class InterpUndefined : public std::runtime_error {
 public:
  explicit InterpUndefined(const std::string& what) : std::runtime_error(what) {}
};

struct ModelConfig {
  int universe_rank = 2;      // Type_i is truncated at rank universe_rank + i
  int fixpoint_depth = 32;    // rounds of rule-set iteration
  int sample_budget = 64;     // assumption samples per context valuation
  long long enum_cap = 4096;  // members enumerable from a single type
  long long frontier_cap = 2000;  // accumulated rule-set rows
  int recursion_cap = 512;         // nested recursive-call evaluations
  ReductionConfig reduction;
};

struct Sem;
using SemValue = std::shared_ptr<const Sem>;

// A concrete hereditarily finite set.
struct SemFin {
  Hf value;
};
// The rank-truncated universe standing in for Type_level.
struct SemUniverse {
  int level = 0;
};
// A dependent function space that could not be materialized into a set.
struct SemFunSpace {
  SemValue domain;
  std::function<SemValue(const SemValue&)> codomain;
};
struct BlockShapes;
// An inductive type at concrete parameter and index values.
struct SemIndFamily {
  std::shared_ptr<const BlockShapes> shapes;
  std::shared_ptr<const Context> ctx;
  std::shared_ptr<const std::vector<SemValue>> env;
  int ind_index = 0;
  std::vector<Hf> params;
  std::vector<Hf> indices;
};
// A function kept symbolic (unmaterialized lambda, constructor, fixpoint...).
struct SemFn {
  std::function<SemValue(const SemValue&)> apply;
  std::string note;
};

struct Sem {
  std::variant<SemFin, SemUniverse, SemFunSpace, SemIndFamily, SemFn> data;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&data);
  }
};

SemValue sem_fin(Hf v);
SemValue sem_universe(int level);
SemValue sem_fn(std::function<SemValue(const SemValue&)> apply, std::string note = "");

// One value per assumption/definition entry, in context order.
using Env = std::vector<SemValue>;

// Constructor shapes extracted from an inductive block, the raw material of
// its rule set.
struct CtorShape {
  int global_tag = 0;  // 1-based position in the block's constructor list
  int ind = 0;         // 0-based inductive it constructs
  std::string name;
  struct Arg {
    std::string name;
    TermPtr domain;  // block-internal names replaced by references
    bool recursive = false;
    std::vector<OpenedBinder> ho_tel;  // nonempty: higher-order occurrence
    int rec_ind = 0;
    std::vector<TermPtr> occ_args;  // parameter and index terms at the occurrence
  };
  std::vector<Arg> args;
  std::vector<TermPtr> conclusion_indices;
};

struct BlockShapes {
  BlockPtr block;
  int param_count = 0;
  std::vector<std::string> param_names;
  std::vector<TermPtr> param_domains;
  std::vector<std::string> ind_names;
  std::vector<int> index_counts;
  std::vector<CtorShape> ctors;
};

class ModelSession {
 public:
  explicit ModelSession(ModelConfig cfg = {});
  const ModelConfig& config() const { return cfg_; }

  SemValue interp(const Context& ctx, const Env& env, const TermPtr& t);
  SemValue sem_app(const SemValue& f, const SemValue& a);

  // Exact set denoted by a value; throws BoundExceeded when that set cannot
  // be computed within the bounds (truncated inductives, universes, spaces
  // over them).
  Hf lower(const SemValue& v);

  struct Members {
    std::vector<SemValue> values;
    bool complete = false;
  };
  Members enumerate_members(const SemValue& type);

  Truth mem_at_depth(const SemValue& v, const SemValue& type, int depth);

  std::shared_ptr<const BlockShapes> shapes_of(const BlockPtr& block);

  // Rule-set view of one inductive block at fixed parameter values. Rows are
  // tuples <i, params..., indices..., value>. candidates is exhaustive but
  // raises BoundExceeded rather than sample an infinite side condition.
  RuleSet family_rule_set(const Context& ctx, const Env& env, const BlockPtr& block,
                          const std::vector<Hf>& params);

  // Rule-set view of a fixpoint's call graph. Rows are tuples
  // <args..., result>; the defining clause is recovered from the recursive
  // argument's constructor tag. candidates only extends rows already seen,
  // so the view is declared non-exhaustive.
  RuleSet fix_rule_set(const Context& ctx, const Env& env, const TermPtr& fix_term);

  struct CtxInterp {
    std::vector<Env> valuations;
    bool complete = true;
    bool def_mismatch = false;  // a definition failed its own type
    bool undefined = false;     // some entry could not be interpreted
  };
  CtxInterp interp_ctx(const Context& ctx);

  // Soundness of one judgment: interprets the context, then checks
  // membership of the term's value in the type's value under every sampled
  // valuation.
  Truth check_judgment(const Context& ctx, const TermPtr& term, const TermPtr& type, int depth);

 private:
  ModelConfig cfg_;
  std::map<const InductiveBlock*, std::shared_ptr<const BlockShapes>> shape_cache_;
  // Iterating a family rule set is the dominant cost; results are keyed by
  // block identity, parameter values, and depth. Safe because declared names
  // are never rebound within a session, so a block's rules cannot change
  // meaning between contexts.
  std::map<std::string, LfpResult> lfp_cache_;
  const LfpResult& family_lfp(const Context& ctx, const Env& env, const BlockPtr& block,
                              const std::vector<Hf>& params, int depth);
};

}  // namespace cck
