// Hereditarily finite sets: the value domain of the set-theoretic evaluator.
//
// Every value is a canonical node: children sorted by a total order and
// deduplicated, with hash and rank precomputed.  Pairs are Kuratowski pairs
// {{a},{a,b}}, numerals are von Neumann naturals, tuples are right-nested
// pairs terminated by the empty set, and function application reads the
// graph of a function: app(u, x) = { b | (x, b) in u }.

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace cck {

class HfNode;
using Hf = std::shared_ptr<const HfNode>;

class HfNode {
 public:
  explicit HfNode(std::vector<Hf> elems);
  const std::vector<Hf>& elems() const { return elems_; }
  std::size_t hash() const { return hash_; }
  int rank() const { return rank_; }
  std::size_t size() const { return elems_.size(); }

 private:
  std::vector<Hf> elems_;  // sorted by hf_cmp, unique
  std::size_t hash_ = 0;
  int rank_ = 0;
};

// Canonicalizing constructor: sorts and deduplicates.
Hf hf_set(std::vector<Hf> elems);
const Hf& hf_empty();

int hf_cmp(const Hf& a, const Hf& b);  // total order: rank, then size, then lex
bool hf_eq(const Hf& a, const Hf& b);
bool hf_mem(const Hf& x, const Hf& set);
Hf hf_union(const Hf& a, const Hf& b);
Hf hf_insert(const Hf& set, const Hf& x);

struct HfHash {
  std::size_t operator()(const Hf& v) const { return v->hash(); }
};
struct HfEqual {
  bool operator()(const Hf& a, const Hf& b) const { return hf_eq(a, b); }
};
using HfSet = std::unordered_set<Hf, HfHash, HfEqual>;

Hf kpair(const Hf& a, const Hf& b);
std::optional<std::pair<Hf, Hf>> kunpair(const Hf& v);

Hf vnat(unsigned n);
std::optional<unsigned> vnat_decode(const Hf& v);

Hf tuple(const std::vector<Hf>& parts);  // <> = 0, <a, rest> = (a, <rest>)
std::optional<std::vector<Hf>> tuple_decode(const Hf& v);

// Graph application and graph construction for set-coded functions.
Hf aczel_app(const Hf& fn, const Hf& arg);
Hf aczel_lam(const std::vector<std::pair<Hf, Hf>>& graph);

// Rendering: numerals as digits, tuples as <...>, other sets in braces.
std::string hf_str(const Hf& v);

}  // namespace cck
