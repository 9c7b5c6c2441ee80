#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "cck/hf.hpp"

using namespace cck;

namespace {

// Small deterministic pool of pairwise distinct sets.
std::vector<Hf> pool() {
  std::vector<Hf> out;
  for (int i = 0; i < 6; ++i) out.push_back(vnat(i));
  out.push_back(kpair(vnat(1), vnat(0)));
  out.push_back(hf_set({vnat(2)}));
  return out;
}

Hf random_of(std::mt19937& rng, const std::vector<Hf>& from) {
  std::uniform_int_distribution<std::size_t> d(0, from.size() - 1);
  return from[d(rng)];
}

}  // namespace

TEST_CASE("hf_set canonicalizes duplicates and order") {
  Hf a = vnat(1);
  Hf b = vnat(2);
  CHECK(hf_eq(hf_set({a, b, a}), hf_set({b, a})));
  CHECK(hf_set({a, b})->elems().size() == 2);
  CHECK(hf_eq(hf_set({}), hf_empty()));
  CHECK(hf_set({a, a})->elems().size() == 1);
}

TEST_CASE("membership, union, insert") {
  Hf s = hf_set({vnat(0), vnat(2)});
  CHECK(hf_mem(vnat(0), s));
  CHECK(!hf_mem(vnat(1), s));
  CHECK(hf_eq(hf_insert(s, vnat(1)), hf_set({vnat(0), vnat(1), vnat(2)})));
  CHECK(hf_eq(hf_union(hf_set({vnat(0)}), hf_set({vnat(1)})), hf_set({vnat(0), vnat(1)})));
  CHECK(hf_eq(hf_union(s, s), s));
}

TEST_CASE("hf_cmp is a strict total order") {
  std::vector<Hf> xs = pool();
  for (auto& a : xs)
    for (auto& b : xs) {
      int ab = hf_cmp(a, b);
      int ba = hf_cmp(b, a);
      CHECK(((ab == 0) == hf_eq(a, b)));
      CHECK(((ab < 0) == (ba > 0)));
      for (auto& c : xs)
        if (ab < 0 && hf_cmp(b, c) < 0) CHECK(hf_cmp(a, c) < 0);
    }
}

TEST_CASE("ranks grow through nesting") {
  CHECK(hf_empty()->rank() == 0);
  for (int n = 0; n < 6; ++n) CHECK(vnat(n)->rank() == n);
  CHECK(hf_set({hf_set({vnat(0)})})->rank() == 2);
}

TEST_CASE("kuratowski pairs") {
  Hf a = vnat(1);
  Hf b = vnat(3);
  // {{a}, {a,b}}, built by hand.
  CHECK(hf_eq(kpair(a, b), hf_set({hf_set({a}), hf_set({a, b})})));
  // Degenerate pair collapses to {{a}}.
  CHECK(hf_eq(kpair(a, a), hf_set({hf_set({a})})));

  std::mt19937 rng(7);
  std::vector<Hf> xs = pool();
  for (int i = 0; i < 50; ++i) {
    Hf x = random_of(rng, xs);
    Hf y = random_of(rng, xs);
    auto p = kunpair(kpair(x, y));
    REQUIRE(p.has_value());
    CHECK(hf_eq(p->first, x));
    CHECK(hf_eq(p->second, y));
  }
  CHECK(!kunpair(vnat(3)).has_value());
  CHECK(!kunpair(hf_empty()).has_value());
}

TEST_CASE("von Neumann numerals") {
  CHECK(hf_eq(vnat(0), hf_empty()));
  CHECK(hf_eq(vnat(1), hf_set({hf_empty()})));
  CHECK(hf_eq(vnat(3), hf_set({vnat(0), vnat(1), vnat(2)})));
  for (unsigned n = 0; n <= 10; ++n) {
    auto d = vnat_decode(vnat(n));
    REQUIRE(d.has_value());
    CHECK(*d == n);
    CHECK(vnat(n)->elems().size() == n);
  }
  CHECK(!vnat_decode(hf_set({vnat(1)})).has_value());
  CHECK(!vnat_decode(kpair(vnat(0), vnat(1))).has_value());
}

TEST_CASE("tuples nest to the right and decode back") {
  CHECK(hf_eq(tuple({}), vnat(0)));
  Hf a = vnat(2);
  Hf b = vnat(4);
  CHECK(hf_eq(tuple({a}), kpair(a, tuple({}))));
  CHECK(hf_eq(tuple({a, b}), kpair(a, kpair(b, vnat(0)))));

  std::mt19937 rng(11);
  std::vector<Hf> xs = pool();
  for (int i = 0; i < 40; ++i) {
    std::uniform_int_distribution<int> len(0, 4);
    std::vector<Hf> v;
    for (int k = len(rng); k > 0; --k) v.push_back(random_of(rng, xs));
    auto d = tuple_decode(tuple(v));
    REQUIRE(d.has_value());
    REQUIRE(d->size() == v.size());
    for (std::size_t j = 0; j < v.size(); ++j) CHECK(hf_eq((*d)[j], v[j]));
  }
}

TEST_CASE("printing: numerals as digits, tuples as brackets") {
  CHECK(hf_str(vnat(0)) == "0");
  CHECK(hf_str(vnat(7)) == "7");
  // The unary-number encoding of 2: tag 2 twice around the tag-1 base case.
  Hf two = tuple({vnat(2), tuple({vnat(2), tuple({vnat(1)})})});
  CHECK(hf_str(two) == "⟨2,⟨2,⟨1⟩⟩⟩");
  // {1} happens to read back as a pair, so it prints in brackets; {2} cannot.
  CHECK(hf_str(hf_set({vnat(2)})) == "{2}");
}

TEST_CASE("application of a graph recovers the tabulated values") {
  std::mt19937 rng(2026);
  std::vector<Hf> values = pool();
  for (int round = 0; round < 300; ++round) {
    // Random domain of up to 4 distinct points, random value at each.
    std::uniform_int_distribution<int> dlen(0, 4);
    int n = dlen(rng);
    std::vector<Hf> dom;
    for (int i = 0; i < 8 && static_cast<int>(dom.size()) < n; ++i) {
      Hf x = random_of(rng, values);
      bool dup = false;
      for (auto& d : dom) dup = dup || hf_eq(d, x);
      if (!dup) dom.push_back(x);
    }
    std::vector<std::pair<Hf, Hf>> graph;
    for (auto& x : dom) graph.emplace_back(x, random_of(rng, values));
    Hf fn = aczel_lam(graph);
    for (auto& [x, y] : graph) CHECK(hf_eq(aczel_app(fn, x), y));
    // Off the tabulated domain the application is empty.
    Hf off = vnat(9);
    CHECK(hf_eq(aczel_app(fn, off), hf_empty()));
  }
}

TEST_CASE("graphs of subsingleton-valued families are subsingletons") {
  // For every domain A with at most 3 points and every assignment of either
  // 0 or 1 = {0} to each point, the set of tabulated choice functions is
  // included in 1, and equals 1 exactly when every point gets 1.
  std::vector<Hf> points = {vnat(1), vnat(2), hf_set({vnat(1)})};
  Hf one = hf_set({hf_empty()});
  for (int n = 0; n <= 3; ++n) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<Hf> fam;  // fam[i] is 0 or 1
      bool all_inhabited = true;
      for (int i = 0; i < n; ++i) {
        bool inhabited = (mask >> i) & 1;
        fam.push_back(inhabited ? one : hf_empty());
        all_inhabited = all_inhabited && inhabited;
      }
      // Enumerate every choice function and tabulate it.
      std::vector<Hf> graphs;
      if (all_inhabited) {
        std::vector<std::pair<Hf, Hf>> rows;
        for (int i = 0; i < n; ++i) rows.emplace_back(points[i], hf_empty());
        // The only member of 1 is 0, which contributes no pairs at all.
        graphs.push_back(aczel_lam(rows));
      }
      Hf product = hf_set(graphs);

      for (auto& g : product->elems()) CHECK(hf_mem(g, one));
      CHECK(hf_eq(product, one) == all_inhabited);
      if (!all_inhabited) CHECK(hf_eq(product, hf_empty()));
    }
  }
}
