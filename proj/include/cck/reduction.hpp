// Reduction and conversion.
//
// whnf applies the four generators head-on: beta, delta (unfolding context
// definitions), zeta (let), and iota (case on a constructor-headed
// scrutinee, fixpoint unfolding when the recursive argument is
// constructor-headed).  normalize pushes that everywhere, going under
// binders with fresh variables.  Conversion compares normal forms up to
// alpha; subtyping adds sort inclusion and the product congruence.

#pragma once

#include <stdexcept>
#include <string>

#include "cck/syntax.hpp"

namespace cck {

struct ReductionConfig {
  long long max_steps = 100000;
};

struct FuelExhausted : std::runtime_error {
  explicit FuelExhausted(const std::string& what) : std::runtime_error(what) {}
};

TermPtr whnf(const Context& ctx, const TermPtr& t, const ReductionConfig& cfg);
TermPtr normalize(const Context& ctx, const TermPtr& t, const ReductionConfig& cfg);

bool conv(const Context& ctx, const TermPtr& a, const TermPtr& b, const ReductionConfig& cfg);
bool subtype(const Context& ctx, const TermPtr& a, const TermPtr& b, const ReductionConfig& cfg);

// Which inductive of the block a constructor builds (tail head of its type).
std::optional<std::string> ctor_conclusion_head(const InductiveBlock& b, const std::string& ctor);
// Positions in con_decls of the constructors of one inductive, in order.
std::vector<int> ctors_of_inductive(const InductiveBlock& b, const std::string& ind);

}  // namespace cck
