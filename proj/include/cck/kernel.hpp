// The type checker: sorts, products, application, let, inductive blocks,
// case analysis, and structurally recursive fixpoints, over a cumulative
// predicative universe hierarchy with an impredicative-free Prop at the
// bottom.  Errors carry the name of the rule that failed.

#pragma once

#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "cck/reduction.hpp"
#include "cck/syntax.hpp"

namespace cck {

struct Diagnostic {
  std::string rule;  // e.g. "(app)", "(ind-wf) positivity", "F guard"
  std::string message;
  int line = -1;
  int col = -1;
};

class TypeError : public std::exception {
 public:
  explicit TypeError(Diagnostic d) : diag_(std::move(d)) {
    what_ = diag_.rule + ": " + diag_.message;
  }
  const Diagnostic& diag() const { return diag_; }
  const char* what() const noexcept override { return what_.c_str(); }

 private:
  Diagnostic diag_;
  std::string what_;
};

// The product sort relation: two products of propositions stay in Prop, and
// predicative products land at or above the max of the two levels.
bool product_rule(Sort s1, Sort s2, Sort s3);
// Minimal s3 with product_rule(s1', s2, s3) for some cumulative lift s1' of s1.
Sort product_sort(Sort s1, Sort s2);

// If A is (convertible to) an arity — products ending in a sort — its tail sort.
std::optional<Sort> is_arity(const Context& ctx, const TermPtr& a, const ReductionConfig& cfg);

TermPtr infer(const Context& ctx, const TermPtr& t, const ReductionConfig& cfg);
Sort infer_sort(const Context& ctx, const TermPtr& t, const ReductionConfig& cfg);
void check(const Context& ctx, const TermPtr& t, const TermPtr& type,
           const ReductionConfig& cfg);

// Decides t = u : A by checking both sides and comparing normal forms.
bool judgmental_eq(const Context& ctx, const TermPtr& t, const TermPtr& u,
                   const TermPtr& type, const ReductionConfig& cfg);

// Validates a block against ctx (fresh names, shared parameter telescope,
// arities, constructor shapes, full application of block names, strict
// positivity).  The caller pushes the entry on success.
void admit_inductive(const Context& ctx, const BlockPtr& block, const ReductionConfig& cfg);

// Replays a context from the left, checking every entry.
void wf_context(const Context& ctx, const ReductionConfig& cfg);

// The elimination constraint: may an inductive with arity tail `arity`
// (after the already-consumed arguments `qs`) be analysed with a motive of
// type `candidate`?  Propositional inductives only eliminate into Prop,
// except when the block has at most one constructor whose non-parameter
// arguments are all propositions.
void check_elim_constraint(const Context& ctx, const BlockPtr& block, const std::string& ind,
                           std::vector<TermPtr> qs, const TermPtr& arity,
                           const TermPtr& candidate, const ReductionConfig& cfg);

}  // namespace cck
