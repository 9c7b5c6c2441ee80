#include "cck/ruleset.hpp"

namespace cck {

HfSet apply_operator(const std::vector<Rule>& rules, const HfSet& x) {
  HfSet out;
  for (auto& r : rules) {
    bool ok = true;
    for (auto& p : r.premises)
      if (!x.count(p)) {
        ok = false;
        break;
      }
    if (ok) out.insert(r.conclusion);
  }
  return out;
}

LfpResult lfp_explicit(const std::vector<Rule>& rules, int depth) {
  LfpResult res;
  for (int i = 0; i < depth; ++i) {
    HfSet next = apply_operator(rules, res.set);
    bool grew = false;
    for (auto& v : next)
      if (res.set.insert(v).second) {
        res.elements.push_back(v);
        grew = true;
      }
    ++res.iterations;
    if (!grew) {
      res.complete = true;
      break;
    }
  }
  if (!res.complete) {
    // One extra probe: stabilized exactly at the last round.
    HfSet next = apply_operator(rules, res.set);
    bool grew = false;
    for (auto& v : next)
      if (!res.set.count(v)) grew = true;
    res.complete = !grew;
  }
  return res;
}

LfpResult lfp(const RuleSet& rs, int depth, long long size_cap) {
  LfpResult res;
  for (int i = 0; i < depth; ++i) {
    std::vector<Hf> next = rs.candidates(res.set);
    bool grew = false;
    for (auto& v : next) {
      if (res.set.insert(v).second) {
        res.elements.push_back(v);
        grew = true;
        if (static_cast<long long>(res.elements.size()) > size_cap)
          throw BoundExceeded("rule set " + rs.label + ": accumulated set exceeds cap");
      }
    }
    ++res.iterations;
    if (!grew) {
      res.complete = rs.exhaustive;
      break;
    }
  }
  return res;
}

namespace {
bool derivable_rec(const RuleSet& rs, const Hf& conclusion, int depth, HfSet& in_progress) {
  if (depth <= 0) return false;
  if (in_progress.count(conclusion)) return false;  // cyclic support is no support
  auto prems = rs.premises_of(conclusion);
  if (!prems) return false;
  in_progress.insert(conclusion);
  bool ok = true;
  for (auto& p : *prems)
    if (!derivable_rec(rs, p, depth - 1, in_progress)) {
      ok = false;
      break;
    }
  in_progress.erase(conclusion);
  return ok;
}
}  // namespace

bool derivable(const RuleSet& rs, const Hf& conclusion, int depth) {
  HfSet in_progress;
  return derivable_rec(rs, conclusion, depth, in_progress);
}

RuleSet explicit_rules(std::vector<Rule> rules, std::string label) {
  RuleSet rs;
  rs.label = std::move(label);
  auto shared = std::make_shared<std::vector<Rule>>(std::move(rules));
  rs.candidates = [shared](const HfSet& have) {
    std::vector<Hf> out;
    for (auto& r : *shared) {
      bool ok = true;
      for (auto& p : r.premises)
        if (!have.count(p)) {
          ok = false;
          break;
        }
      if (ok) out.push_back(r.conclusion);
    }
    return out;
  };
  rs.premises_of = [shared](const Hf& conclusion) -> std::optional<std::vector<Hf>> {
    for (auto& r : *shared)
      if (hf_eq(r.conclusion, conclusion)) return r.premises;
    return std::nullopt;
  };
  return rs;
}

}  // namespace cck
