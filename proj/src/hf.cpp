#include "cck/hf.hpp"

#include <algorithm>
#include <unordered_map>

namespace cck {

HfNode::HfNode(std::vector<Hf> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end(),
            [](const Hf& a, const Hf& b) { return hf_cmp(a, b) < 0; });
  elems_.erase(std::unique(elems_.begin(), elems_.end(),
                           [](const Hf& a, const Hf& b) { return hf_cmp(a, b) == 0; }),
               elems_.end());
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (auto& e : elems_) {
    h ^= e->hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    rank_ = std::max(rank_, e->rank() + 1);
  }
  hash_ = h ^ elems_.size();
}

// Values are interned: every node is built through here, bottom-up, so equal
// children of a candidate are already pointer-equal and the bucket scan is a
// shallow comparison.  Keeps equality and ordering of large shared structures
// (von Neumann numerals, deep tuples) linear instead of exponential.
Hf hf_set(std::vector<Hf> elems) {
  auto node = std::make_shared<const HfNode>(std::move(elems));
  static std::unordered_multimap<std::size_t, std::weak_ptr<const HfNode>> pool;
  auto [lo, hi] = pool.equal_range(node->hash());
  for (auto it = lo; it != hi;) {
    if (Hf held = it->second.lock()) {
      if (held->rank() == node->rank() && held->size() == node->size() &&
          std::equal(held->elems().begin(), held->elems().end(), node->elems().begin(),
                     [](const Hf& a, const Hf& b) { return a.get() == b.get(); }))
        return held;
      ++it;
    } else {
      it = pool.erase(it);
    }
  }
  pool.emplace(node->hash(), node);
  return node;
}

const Hf& hf_empty() {
  static const Hf e = hf_set({});
  return e;
}

int hf_cmp(const Hf& a, const Hf& b) {
  if (a.get() == b.get()) return 0;
  if (a->rank() != b->rank()) return a->rank() < b->rank() ? -1 : 1;
  if (a->size() != b->size()) return a->size() < b->size() ? -1 : 1;
  for (std::size_t i = 0; i < a->size(); ++i) {
    int c = hf_cmp(a->elems()[i], b->elems()[i]);
    if (c != 0) return c;
  }
  return 0;
}

bool hf_eq(const Hf& a, const Hf& b) { return hf_cmp(a, b) == 0; }

bool hf_mem(const Hf& x, const Hf& set) {
  for (auto& e : set->elems())
    if (hf_eq(e, x)) return true;
  return false;
}

Hf hf_union(const Hf& a, const Hf& b) {
  std::vector<Hf> out = a->elems();
  out.insert(out.end(), b->elems().begin(), b->elems().end());
  return hf_set(std::move(out));
}

Hf hf_insert(const Hf& set, const Hf& x) {
  std::vector<Hf> out = set->elems();
  out.push_back(x);
  return hf_set(std::move(out));
}

Hf kpair(const Hf& a, const Hf& b) {
  return hf_set({hf_set({a}), hf_set({a, b})});
}

std::optional<std::pair<Hf, Hf>> kunpair(const Hf& v) {
  if (v->size() == 1) {
    const Hf& inner = v->elems()[0];
    if (inner->size() != 1) return std::nullopt;
    return std::make_pair(inner->elems()[0], inner->elems()[0]);
  }
  if (v->size() == 2) {
    // Canonical order puts the singleton {a} before the doubleton {a,b}.
    const Hf& s = v->elems()[0];
    const Hf& d = v->elems()[1];
    if (s->size() != 1 || d->size() != 2) return std::nullopt;
    const Hf& a = s->elems()[0];
    if (hf_eq(d->elems()[0], a)) return std::make_pair(a, d->elems()[1]);
    if (hf_eq(d->elems()[1], a)) return std::make_pair(a, d->elems()[0]);
    return std::nullopt;
  }
  return std::nullopt;
}

Hf vnat(unsigned n) {
  Hf cur = hf_empty();
  for (unsigned i = 0; i < n; ++i) cur = hf_insert(cur, cur);
  return cur;
}

std::optional<unsigned> vnat_decode(const Hf& v) {
  unsigned n = static_cast<unsigned>(v->size());
  if (!hf_eq(v, vnat(n))) return std::nullopt;
  return n;
}

Hf tuple(const std::vector<Hf>& parts) {
  Hf cur = hf_empty();
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) cur = kpair(*it, cur);
  return cur;
}

std::optional<std::vector<Hf>> tuple_decode(const Hf& v) {
  std::vector<Hf> out;
  Hf cur = v;
  while (cur->size() != 0) {
    auto p = kunpair(cur);
    if (!p) return std::nullopt;
    out.push_back(p->first);
    cur = p->second;
  }
  return out;
}

Hf aczel_app(const Hf& fn, const Hf& arg) {
  std::vector<Hf> out;
  for (auto& e : fn->elems()) {
    auto p = kunpair(e);
    if (p && hf_eq(p->first, arg)) out.push_back(p->second);
  }
  return hf_set(std::move(out));
}

Hf aczel_lam(const std::vector<std::pair<Hf, Hf>>& graph) {
  std::vector<Hf> out;
  for (auto& [x, y] : graph)
    for (auto& b : y->elems()) out.push_back(kpair(x, b));
  return hf_set(std::move(out));
}

std::string hf_str(const Hf& v) {
  if (auto n = vnat_decode(v)) return std::to_string(*n);
  if (auto t = tuple_decode(v); t && !t->empty()) {
    std::string s = "⟨";
    for (std::size_t i = 0; i < t->size(); ++i) {
      if (i) s += ",";
      s += hf_str((*t)[i]);
    }
    return s + "⟩";
  }
  std::string s = "{";
  for (std::size_t i = 0; i < v->size(); ++i) {
    if (i) s += ",";
    s += hf_str(v->elems()[i]);
  }
  return s + "}";
}

}  // namespace cck
