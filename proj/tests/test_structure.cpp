#include <set>

#include "doctest.h"
#include "heyting/structure.hpp"

using namespace heyting;

namespace {

AlgebraPtr make(const FinitePoset& p) { return std::make_shared<FiniteHA>(upsets(p)); }
AlgebraPtr two() { return make(FinitePoset::chain(1)); }
AlgebraPtr chain3() { return make(FinitePoset::chain(2)); }
AlgebraPtr bool4() { return make(FinitePoset::antichain(2)); }

}  // namespace

TEST_CASE("strong order basics") {
  AlgebraPtr c3 = chain3();
  for (int a = 0; a < c3->size(); ++a) CHECK(strong_order(*c3, c3->top(), a));
  CHECK(strong_order(*c3, 1, c3->bot()));   // m >> 0
  CHECK(!strong_order(*c3, 1, 1));          // m -> m = 1 != m
}

TEST_CASE("the strong order is strict on A minus top") {
  for (int n = 1; n <= 5; ++n)
    for (const FinitePoset& p : enumerate_posets(n)) {
      FiniteHA a = upsets(p);
      for (int x = 0; x < a.size(); ++x) {
        if (x == a.top()) continue;
        CHECK(!strong_order(a, x, x));
        for (int y = 0; y < a.size(); ++y) {
          if (y == a.top()) continue;
          if (strong_order(a, x, y)) CHECK(a.leq(y, x));
          for (int z = 0; z < a.size(); ++z) {
            if (z == a.top()) continue;
            if (strong_order(a, x, y) && strong_order(a, y, z))
              CHECK(strong_order(a, x, z));
          }
        }
      }
    }
}

TEST_CASE("density: pinned counterexample and corpus sweep") {
  auto c2 = check_density(*two());
  REQUIRE(c2.has_value());
  CHECK(c2->first == two()->bot());
  CHECK(c2->second == two()->top());

  FiniteHA trivial = upsets(FinitePoset::antichain(0));
  CHECK(!check_density(trivial).has_value());

  for (int n = 1; n <= 5; ++n)
    for (const FinitePoset& p : enumerate_posets(n))
      CHECK(check_density(upsets(p)).has_value());
}

TEST_CASE("splitting: pinned counterexample and corpus sweep") {
  auto c2 = check_splitting(*two());
  REQUIRE(c2.has_value());
  CHECK((*c2)[0] == two()->bot());
  CHECK((*c2)[1] == two()->top());
  CHECK((*c2)[2] == two()->top());

  FiniteHA trivial = upsets(FinitePoset::antichain(0));
  CHECK(!check_splitting(trivial).has_value());

  CHECK(check_splitting(*bool4()).has_value());
  for (int n = 1; n <= 4; ++n)
    for (const FinitePoset& p : enumerate_posets(n))
      CHECK(check_splitting(upsets(p)).has_value());
}

TEST_CASE("dual co-dimension") {
  AlgebraPtr c3 = chain3();
  CHECK(dual_codim(*c3, c3->bot()) == 0);
  CHECK(dual_codim(*c3, 1) == 1);
  CHECK(!dual_codim(*c3, c3->top()).has_value());  // infinite
  CHECK(dual_codim(*two(), two()->bot()) == 0);
}

TEST_CASE("d-filters") {
  AlgebraPtr c3 = chain3();
  Filter f0 = d_filter(c3, 0);
  CHECK(f0.member == std::vector<bool>{false, true, true});
  Filter f1 = d_filter(c3, 1);
  CHECK(f1.member == std::vector<bool>{false, false, true});
  Filter t0 = d_filter(two(), 0);
  CHECK(t0.member == std::vector<bool>{false, true});
}

TEST_CASE("d-filters are filters, antitone, eventually trivial") {
  for (int n = 1; n <= 4; ++n)
    for (const FinitePoset& p : enumerate_posets(n)) {
      AlgebraPtr a = make(p);
      int dim = dimension(*a);
      for (int d = 0; d <= dim + 1; ++d) {
        Filter f = d_filter(a, d);
        CHECK(f.is_filter());
        if (d > 0) {
          Filter prev = d_filter(a, d - 1);
          for (int e = 0; e < a->size(); ++e)
            if (f.member[e]) CHECK(prev.member[e]);
        }
      }
      Filter top_only = d_filter(a, dim);
      for (int e = 0; e < a->size(); ++e)
        CHECK(top_only.member[e] == (e == a->top()));
    }
}

TEST_CASE("dimension") {
  CHECK(dimension(*two()) == 0);
  CHECK(dimension(*chain3()) == 1);
  CHECK(dimension(*bool4()) == 0);
  FiniteHA trivial = upsets(FinitePoset::antichain(0));
  CHECK_THROWS_AS(dimension(trivial), DomainError);
}

TEST_CASE("CD1: dimension <= d iff (d+1)A = {1}") {
  for (int n = 1; n <= 5; ++n)
    for (const FinitePoset& p : enumerate_posets(n)) {
      AlgebraPtr a = make(p);
      int dim = dimension(*a);
      for (int d = 0; d <= dim + 1; ++d) {
        Filter f = d_filter(a, d);
        bool top_only = true;
        for (int e = 0; e < a->size(); ++e)
          if (f.member[e] && e != a->top()) top_only = false;
        CHECK(top_only == (dim <= d));
      }
    }
}

TEST_CASE("co-dimension is antitone under subalgebra inclusion") {
  for (int n = 2; n <= 4; ++n)
    for (const FinitePoset& p : enumerate_posets(n)) {
      AlgebraPtr a = make(p);
      for (int g = 0; g < a->size(); ++g) {
        SubalgebraResult sub = generated_subalgebra(a, {g});
        CHECK(dimension(*sub.algebra) <= dimension(*a));
        for (int e = 0; e < sub.algebra->size(); ++e) {
          auto inner = dual_codim(*sub.algebra, e);
          auto outer = dual_codim(*a, sub.inclusion.map[e]);
          if (!inner.has_value()) {
            CHECK(!outer.has_value());
          } else if (outer.has_value()) {
            CHECK(*inner <= *outer);
          }
        }
      }
    }
}

TEST_CASE("lemma A.2 shaped checks") {
  AlgebraPtr c3 = chain3();
  std::vector<LemmaA2Pair> identical{{c3, {1}, c3, {1}}, {c3, {0}, c3, {0}}};
  CHECK(check_lemma_a2(identical, 1));

  // (m) vs (0): not even 1-similar, so vacuously unviolated at n = 3
  std::vector<LemmaA2Pair> apart{{c3, {1}, c3, {0}}};
  CHECK(check_lemma_a2(apart, 1));

  // small corpus sweep: all 1-tuples from algebras of dimension <= 1
  std::vector<AlgebraPtr> corpus;
  for (int n = 1; n <= 3; ++n)
    for (const FinitePoset& p : enumerate_posets(n)) {
      AlgebraPtr a = make(p);
      if (dimension(*a) <= 1) corpus.push_back(a);
    }
  std::vector<LemmaA2Pair> pairs;
  for (const auto& a : corpus)
    for (const auto& b : corpus)
      for (int x = 0; x < a->size(); ++x)
        for (int y = 0; y < b->size(); ++y) pairs.push_back({a, {x}, b, {y}});
  CHECK(check_lemma_a2(pairs, 1));
}

TEST_CASE("lemma A.2 rejects out-of-dimension preconditions") {
  AlgebraPtr c4 = make(FinitePoset::chain(3));  // dimension 2
  std::vector<LemmaA2Pair> pairs{{c4, {1}, c4, {1}}};
  CHECK_THROWS_AS(check_lemma_a2(pairs, 0), DomainError);
}

TEST_CASE("level zero is the two-element algebra") {
  H0Level base = build_h0_level(0);
  CHECK(base.level == 0);
  CHECK(base.algebra->size() == 2);
  CHECK(base.log.empty());
}

TEST_CASE("level one folds in the three-chain and the diamond") {
  H0Level one = build_h0_level(1);
  CHECK(one.complete_within_budget);
  REQUIRE(one.log.size() == 2);
  CHECK(one.previous_inclusion.preserves_structure());
  CHECK(one.previous_inclusion.injective());
  CHECK(one.previous_inclusion.source->size() == 2);

  // the level certifies a copy of each folded extension over its subalgebra
  REQUIRE(one.certified.size() == 2);
  std::multiset<int> folded_sizes;
  for (const auto& [bij, in_level] : one.certified) {
    folded_sizes.insert(bij.algebra->size());
    CHECK(in_level.embedding.preserves_structure());
    CHECK(in_level.embedding.injective());
    auto emb = embed_over(bij.embedding, in_level.embedding);
    REQUIRE(emb.has_value());
    CHECK(emb->preserves_structure());
    CHECK(emb->injective());
  }
  CHECK(folded_sizes == std::multiset<int>{3, 4});
}

TEST_CASE("levels nest") {
  H0Level zero = build_h0_level(0);
  H0Level one = build_h0_level(1);
  CHECK(one.previous_inclusion.source->isomorphic_to(*zero.algebra));
  CHECK(one.algebra->size() >= zero.algebra->size());
}

TEST_CASE("subalgebra enumeration") {
  auto subs = all_subalgebras(bool4());
  // {0,1}, the whole algebra, and nothing else (each atom generates all)
  CHECK(subs.size() == 2);
  auto subs3 = all_subalgebras(chain3());
  CHECK(subs3.size() == 2);
}
