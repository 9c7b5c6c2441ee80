// Rule sets over hereditarily finite sets and their least fixed points.
//
// A rule derives one conclusion from finitely many premises.  A rule set is
// either given explicitly as a list of rules, or intensionally through two
// callables: `candidates` produces the conclusions derivable in one step
// from a set already obtained, and `premises_of` recovers the premise list
// a conclusion was derived from (at most one list per conclusion, which is
// what makes the induced operator deterministic).

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cck/hf.hpp"

namespace cck {

struct BoundExceeded : std::runtime_error {
  explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct Rule {
  std::vector<Hf> premises;
  Hf conclusion;
};

struct RuleSet {
  std::string label;
  // Conclusions derivable in one step from `have` (premises all inside it).
  std::function<std::vector<Hf>(const HfSet& have)> candidates;
  // The unique premise list deriving `conclusion`, if it is derivable at all.
  std::function<std::optional<std::vector<Hf>>(const Hf& conclusion)> premises_of;
  // Whether `candidates` produces every one-step conclusion. When false, a
  // stabilized iteration is not evidence that the fixed point was reached.
  bool exhaustive = true;
};

struct LfpResult {
  std::vector<Hf> elements;  // insertion order
  HfSet set;
  bool complete = false;  // reached a fixed point within the caps
  int iterations = 0;
};

// One application of the operator induced by an explicit rule list.
HfSet apply_operator(const std::vector<Rule>& rules, const HfSet& x);

// Iterate the operator from the empty set, at most `depth` rounds.
LfpResult lfp_explicit(const std::vector<Rule>& rules, int depth);

// Same for an intensional rule set; `size_cap` bounds the accumulated set.
LfpResult lfp(const RuleSet& rs, int depth, long long size_cap);

// Top-down derivability: premises recovered by `premises_of`, recursively,
// with at most `depth` nested layers.
bool derivable(const RuleSet& rs, const Hf& conclusion, int depth);

RuleSet explicit_rules(std::vector<Rule> rules, std::string label = "explicit");

}  // namespace cck
