#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "cck/hf.hpp"
#include "cck/ruleset.hpp"

using namespace cck;

namespace {

// 0 is an axiom; each n < top yields n+1.
std::vector<Rule> counting_rules(unsigned top) {
  std::vector<Rule> rules;
  rules.push_back(Rule{{}, vnat(0)});
  for (unsigned n = 0; n < top; ++n) rules.push_back(Rule{{vnat(n)}, vnat(n + 1)});
  return rules;
}

// Random rules over the numerals 0..9: a few axioms plus implications with
// up to two premises.
std::vector<Rule> random_rules(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(0, 9);
  std::uniform_int_distribution<int> n_axioms(0, 2);
  std::uniform_int_distribution<int> n_rules(1, 8);
  std::uniform_int_distribution<int> n_prem(1, 2);
  std::vector<Rule> rules;
  for (int i = n_axioms(rng); i > 0; --i) rules.push_back(Rule{{}, vnat(num(rng))});
  for (int i = n_rules(rng); i > 0; --i) {
    std::vector<Hf> prems;
    for (int j = n_prem(rng); j > 0; --j) prems.push_back(vnat(num(rng)));
    rules.push_back(Rule{prems, vnat(num(rng))});
  }
  return rules;
}

HfSet to_set(const std::vector<Hf>& xs) {
  HfSet s;
  for (auto& x : xs) s.insert(x);
  return s;
}

// Independent closure: a queue-driven saturation, structured differently
// from the round-based iteration under test.
HfSet closure_oracle(const std::vector<Rule>& rules) {
  HfSet closed;
  bool changed = true;
  std::vector<const Rule*> pending;
  for (auto& r : rules) pending.push_back(&r);
  while (changed) {
    changed = false;
    std::vector<const Rule*> still;
    for (const Rule* r : pending) {
      bool ok = true;
      for (auto& p : r->premises) ok = ok && closed.count(p) > 0;
      if (ok) {
        if (closed.insert(r->conclusion).second) changed = true;
      } else {
        still.push_back(r);
      }
    }
    pending = std::move(still);
  }
  return closed;
}

}  // namespace

TEST_CASE("apply_operator fires exactly the satisfied rules") {
  auto rules = counting_rules(3);
  HfSet none;
  HfSet out = apply_operator(rules, none);
  CHECK(out.size() == 1);
  CHECK(out.count(vnat(0)) == 1);

  HfSet have = to_set({vnat(0), vnat(1)});
  out = apply_operator(rules, have);
  CHECK(out.size() == 3);  // 0 again, 1, 2
  CHECK(out.count(vnat(2)) == 1);
  CHECK(out.count(vnat(3)) == 0);
}

TEST_CASE("apply_operator is monotone") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> num(0, 9);
  for (int round = 0; round < 200; ++round) {
    auto rules = random_rules(rng);
    HfSet x;
    for (int i = 0; i < 4; ++i) x.insert(vnat(num(rng)));
    HfSet y = x;
    for (int i = 0; i < 3; ++i) y.insert(vnat(num(rng)));
    HfSet fx = apply_operator(rules, x);
    HfSet fy = apply_operator(rules, y);
    for (auto& v : fx) CHECK(fy.count(v) == 1);
  }
}

TEST_CASE("explicit iteration reaches the least fixed point") {
  auto rules = counting_rules(5);
  LfpResult r = lfp_explicit(rules, 50);
  CHECK(r.complete);
  CHECK(r.elements.size() == 6);
  for (unsigned n = 0; n <= 5; ++n) CHECK(r.set.count(vnat(n)) == 1);
  // Insertion order follows derivation depth.
  CHECK(hf_eq(r.elements.front(), vnat(0)));
  CHECK(hf_eq(r.elements.back(), vnat(5)));

  // Truncated at depth 3: only the first three stages, known incomplete.
  LfpResult t = lfp_explicit(rules, 3);
  CHECK(!t.complete);
  CHECK(t.elements.size() == 3);
  CHECK(t.set.count(vnat(2)) == 1);
  CHECK(t.set.count(vnat(3)) == 0);
}

TEST_CASE("the explicit fixed point is the least closed set") {
  std::mt19937 rng(17);
  for (int round = 0; round < 200; ++round) {
    auto rules = random_rules(rng);
    LfpResult r = lfp_explicit(rules, 64);
    CHECK(r.complete);
    // Closed under the operator.
    HfSet step = apply_operator(rules, r.set);
    for (auto& v : step) CHECK(r.set.count(v) == 1);
    // Equal to an independently computed closure.
    HfSet oracle = closure_oracle(rules);
    CHECK(oracle.size() == r.set.size());
    for (auto& v : oracle) CHECK(r.set.count(v) == 1);
    // Deterministic, including insertion order.
    LfpResult again = lfp_explicit(rules, 64);
    REQUIRE(again.elements.size() == r.elements.size());
    for (std::size_t i = 0; i < r.elements.size(); ++i)
      CHECK(hf_eq(again.elements[i], r.elements[i]));
  }
}

TEST_CASE("intensional iteration agrees with the explicit one") {
  auto rules = counting_rules(6);
  RuleSet rs = explicit_rules(rules, "count");
  LfpResult a = lfp(rs, 50, 1000);
  LfpResult b = lfp_explicit(rules, 50);
  CHECK(a.complete);
  CHECK(a.set.size() == b.set.size());
  for (auto& v : b.set) CHECK(a.set.count(v) == 1);
}

TEST_CASE("a non-exhaustive rule set never reports completeness") {
  RuleSet rs = explicit_rules(counting_rules(2), "partial");
  rs.exhaustive = false;
  LfpResult r = lfp(rs, 50, 1000);
  CHECK(!r.complete);
  CHECK(r.set.size() == 3);
}

TEST_CASE("the accumulated-size cap trips") {
  RuleSet rs = explicit_rules(counting_rules(100), "big");
  CHECK_THROWS_AS(lfp(rs, 200, 10), BoundExceeded);
  // Generous cap: no throw.
  LfpResult r = lfp(rs, 200, 1000);
  CHECK(r.complete);
  CHECK(r.set.size() == 101);
}

TEST_CASE("top-down derivability") {
  RuleSet rs = explicit_rules(counting_rules(10), "count");
  CHECK(derivable(rs, vnat(0), 1));
  CHECK(derivable(rs, vnat(3), 4));
  CHECK(!derivable(rs, vnat(3), 3));  // needs one level per stage
  CHECK(!derivable(rs, vnat(11), 50));
  CHECK(!derivable(rs, kpair(vnat(0), vnat(0)), 50));

  // A cycle is not a derivation: a |- a alone proves nothing.
  RuleSet cyc = explicit_rules({Rule{{vnat(4)}, vnat(4)}}, "cycle");
  CHECK(!derivable(cyc, vnat(4), 50));

  // Agreement with the bottom-up set on random systems.
  std::mt19937 rng(23);
  for (int round = 0; round < 100; ++round) {
    auto rules = random_rules(rng);
    RuleSet sys = explicit_rules(rules, "rand");
    LfpResult r = lfp(sys, 64, 10000);
    for (unsigned n = 0; n <= 9; ++n) {
      bool up = r.set.count(vnat(n)) == 1;
      bool down = derivable(sys, vnat(n), 64);
      // premises_of keeps only the first rule per conclusion, so top-down
      // may miss alternatives; it must never claim more than bottom-up.
      if (down) CHECK(up);
      if (!up) CHECK(!down);
    }
  }
}
