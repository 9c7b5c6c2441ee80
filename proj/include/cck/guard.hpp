// Termination admission for fixpoint blocks: the guarded-by-destructors
// discipline.  Inside the i-th body, the recursive binder z carries the
// constraint =z, variables bound by matching on a constrained scrutinee
// carry <z when their declared type mentions the inductive block, and every
// recursive call must supply a <z argument at its recursive position.

#pragma once

#include "cck/kernel.hpp"
#include "cck/syntax.hpp"

namespace cck {

enum class Constraint { Empty, Smaller, Equal };  // epsilon, <z, =z

// <epsilon = epsilon, <(=z) = <z, <(<z) = <z.
Constraint less_of(Constraint c);

struct ConstrainedEntry {
  std::string name;
  Constraint constraint = Constraint::Empty;
};

// Throws TypeError ("F guard" and "(fix)" diagnostics) when some body makes
// a recursive call whose recursive-position argument is not structurally
// smaller, uses a recursive function first-class, or has the wrong binder
// telescope.
void check_fix_block(const Context& ctx, const FixT& fx, const ReductionConfig& cfg);

}  // namespace cck
