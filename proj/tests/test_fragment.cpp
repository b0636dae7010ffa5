#include <set>

#include "doctest.h"
#include "heyting/fragment.hpp"
#include "type_census.hpp"

using namespace heyting;

namespace {

AlgebraPtr make(const FinitePoset& p) { return std::make_shared<FiniteHA>(upsets(p)); }
AlgebraPtr two() { return make(FinitePoset::chain(1)); }
AlgebraPtr chain3() { return make(FinitePoset::chain(2)); }
AlgebraPtr bool4() { return make(FinitePoset::antichain(2)); }

std::set<std::string> rep_strings(const Fragment& f) {
  std::set<std::string> out;
  for (const auto& r : f.reps) out.insert(print(r, Arity{f.l, 0}));
  return out;
}

}  // namespace

TEST_CASE("fragment(1,0): the three lattice classes") {
  Fragment f = build_fragment(1, 0);
  CHECK(f.size() == 3);
  CHECK(rep_strings(f) == std::set<std::string>{"0", "p1", "1"});
}

TEST_CASE("fragment(1,1): the five degree-one classes and their order") {
  Fragment f = build_fragment(1, 1);
  REQUIRE(f.size() == 5);
  Prover& pr = Prover::global();
  Arity a{1, 0};
  int bot = -1, p = -1, np = -1, pnp = -1, top = -1;
  for (int i = 0; i < f.size(); ++i) {
    if (pr.equivalent(f.reps[i], parse("0", a))) bot = i;
    if (pr.equivalent(f.reps[i], parse("p1", a))) p = i;
    if (pr.equivalent(f.reps[i], parse("~p1", a))) np = i;
    if (pr.equivalent(f.reps[i], parse("p1 | ~p1", a))) pnp = i;
    if (pr.equivalent(f.reps[i], parse("1", a))) top = i;
  }
  REQUIRE((bot >= 0 && p >= 0 && np >= 0 && pnp >= 0 && top >= 0));
  CHECK(f.leq(bot, p));
  CHECK(f.leq(p, pnp));
  CHECK(f.leq(np, pnp));
  CHECK(f.leq(pnp, top));
  CHECK(!f.leq(p, np));
  CHECK(!f.leq(np, p));
  CHECK(!f.leq(top, pnp));
  // every rep keeps the degree of its layer
  for (int i = 0; i < f.size(); ++i) CHECK(f.reps[i]->degree() <= f.layer[i]);
}

TEST_CASE("fragment(0,d) collapses to the constants") {
  CHECK(build_fragment(0, 0).size() == 2);
  CHECK(build_fragment(0, 3).size() == 2);
}

TEST_CASE("fragment(2,0) is the free bounded distributive lattice on two") {
  CHECK(build_fragment(2, 0).size() == 6);
}

TEST_CASE("fragment sizes and the degree-one two-variable fragment") {
  // pinned after first derivation; cross-checked against the type census
  Fragment f21 = build_fragment(2, 1);
  std::size_t ji = f21.join_irreducible_classes().size();
  CHECK(ji == census::type_count(2, 1));
  CHECK(ji == 13);
}

TEST_CASE("fragment growth embeds order-preservingly (l=1, d<=2)") {
  Fragment prev = build_fragment(1, 0);
  Prover& pr = Prover::global();
  for (int d = 1; d <= 2; ++d) {
    Fragment next = build_fragment(1, d);
    CHECK(next.size() > prev.size());
    // each previous class appears exactly once, and order is preserved
    std::vector<int> where(prev.size(), -1);
    for (int i = 0; i < prev.size(); ++i) {
      for (int j = 0; j < next.size(); ++j)
        if (pr.equivalent(prev.reps[i], next.reps[j])) {
          CHECK(where[i] == -1);
          where[i] = j;
        }
      REQUIRE(where[i] >= 0);
    }
    for (int i = 0; i < prev.size(); ++i)
      for (int j = 0; j < prev.size(); ++j)
        CHECK(prev.leq(i, j) == next.leq(where[i], where[j]));
    prev = next;
  }
}

TEST_CASE("ball counts match the independent type census") {
  CHECK(balls(build_fragment(1, 0)).size() == census::type_count(1, 0));
  CHECK(balls(build_fragment(1, 1)).size() == census::type_count(1, 1));
  CHECK(balls(build_fragment(1, 2)).size() == census::type_count(1, 2));
  CHECK(balls(build_fragment(2, 0)).size() == census::type_count(2, 0));
  CHECK(census::type_count(1, 0) == 2);
  CHECK(census::type_count(1, 1) == 3);
  CHECK(census::type_count(1, 2) == 4);
  CHECK(census::type_count(2, 0) == 4);
}

TEST_CASE("balls(1,0) and balls(1,1), exactly") {
  Prover& pr = Prover::global();
  Arity a{1, 0};

  auto b0 = balls(build_fragment(1, 0));
  REQUIRE(b0.size() == 2);
  for (const Ball& b : b0) {
    CHECK(b.radius_exponent == 0);
    CHECK(!pr.entails(b.phi, b.psi));
  }
  bool saw_p = false, saw_top = false;
  for (const Ball& b : b0) {
    if (pr.equivalent(b.phi, parse("p1", a))) {
      saw_p = true;
      CHECK(pr.equivalent(b.psi, parse("0", a)));
    }
    if (pr.equivalent(b.phi, parse("1", a))) {
      saw_top = true;
      CHECK(pr.equivalent(b.psi, parse("p1", a)));
    }
  }
  CHECK(saw_p);
  CHECK(saw_top);

  auto b1 = balls(build_fragment(1, 1));
  REQUIRE(b1.size() == 3);
  int matched = 0;
  for (const Ball& b : b1) {
    if (pr.equivalent(b.phi, parse("p1", a))) {
      CHECK(pr.equivalent(b.psi, parse("~p1", a)));
      ++matched;
    } else if (pr.equivalent(b.phi, parse("~p1", a))) {
      CHECK(pr.equivalent(b.psi, parse("p1", a)));
      ++matched;
    } else {
      CHECK(pr.equivalent(b.phi, parse("1", a)));
      CHECK(pr.equivalent(b.psi, parse("p1 | ~p1", a)));
      ++matched;
    }
  }
  CHECK(matched == 3);
}

TEST_CASE("balls are pairwise disjoint and never empty") {
  Prover& pr = Prover::global();
  for (int l = 1; l <= 2; ++l)
    for (int d = 0; d <= (l == 1 ? 2 : 1); ++d) {
      auto bs = balls(build_fragment(l, d));
      for (const Ball& b : bs) {
        CHECK(b.phi->degree() <= d);
        CHECK(b.psi->degree() <= d);
        CHECK(!pr.entails(b.phi, b.psi));
      }
      for (std::size_t i = 0; i < bs.size(); ++i)
        for (std::size_t j = i + 1; j < bs.size(); ++j)
          CHECK(pr.entails(Formula::conj(bs[i].phi, bs[j].phi),
                           Formula::disj(bs[i].psi, bs[j].psi)));
    }
}

TEST_CASE("algebra-level covering: one ball per prime filter type") {
  for (int l = 1; l <= 2; ++l) {
    Fragment frag = build_fragment(l, 1);
    auto bs = balls(frag);
    for (int n = 1; n <= 3; ++n)
      for (const FinitePoset& p : enumerate_posets(n)) {
        FiniteHA a = upsets(p);
        std::vector<int> tuple(static_cast<std::size_t>(l), 0);
        while (true) {
          // for each dual point x of the subalgebra generated by the tuple,
          // exactly one ball contains its type
          auto ap = std::make_shared<FiniteHA>(a);
          SubalgebraResult sub = generated_subalgebra(ap, tuple);
          std::vector<int> sub_tuple(tuple.size());
          for (std::size_t i = 0; i < tuple.size(); ++i)
            for (int e = 0; e < sub.algebra->size(); ++e)
              if (sub.inclusion.map[e] == tuple[i]) sub_tuple[i] = e;
          for (int x = 0; x < sub.algebra->dual().size(); ++x) {
            int hits = 0;
            for (const Ball& b : bs) {
              Mask phi_m = 0, psi_m = 0;
              std::vector<Mask> val;
              for (int e : sub_tuple) val.push_back(sub.algebra->elem_mask(e));
              phi_m = eval_mask(*b.phi, sub.algebra->dual(), val);
              psi_m = eval_mask(*b.psi, sub.algebra->dual(), val);
              if ((phi_m & bit(x)) && !(psi_m & bit(x))) ++hits;
            }
            CHECK(hits == 1);
          }
          std::size_t i = 0;
          for (; i < tuple.size(); ++i) {
            if (++tuple[i] < a.size()) break;
            tuple[i] = 0;
          }
          if (i == tuple.size()) break;
        }
      }
  }
}

TEST_CASE("theories of tuples") {
  Fragment f0 = build_fragment(1, 0);
  Fragment f1 = build_fragment(1, 1);
  Arity a{1, 0};
  Prover& pr = Prover::global();

  auto names = [&](const Fragment& f, const TheoryN& t) {
    std::set<std::string> out;
    for (int i : t.members) out.insert(print(f.reps[i], a));
    return out;
  };

  AlgebraPtr c3 = chain3();
  CHECK(names(f0, theory_n(f0, *two(), {two()->top()})) ==
        std::set<std::string>{"p1", "1"});
  TheoryN mid1 = theory_n(f1, *c3, {1});
  CHECK(names(f1, mid1) == std::set<std::string>{"1"});

  TheoryN zero1 = theory_n(f1, *two(), {two()->bot()});
  std::set<std::string> expect;
  for (int i : zero1.members) {
    bool is_np = pr.equivalent(f1.reps[i], parse("~p1", a));
    bool is_pnp = pr.equivalent(f1.reps[i], parse("p1 | ~p1", a));
    bool is_top = pr.equivalent(f1.reps[i], parse("1", a));
    CHECK((is_np || is_pnp || is_top));
  }
  CHECK(zero1.members.size() == 3);

  // theories are filters: upward closed and meet closed
  for (int i : mid1.members)
    for (int j = 0; j < f1.size(); ++j)
      if (f1.leq(i, j))
        CHECK(std::count(mid1.members.begin(), mid1.members.end(), j) == 1);
}

TEST_CASE("n-similarity: the pinned three-chain example") {
  Fragment f0 = build_fragment(1, 0);
  Fragment f1 = build_fragment(1, 1);
  AlgebraPtr c3 = chain3();
  int mid = 1;
  CHECK(similar_n(f0, *c3, {mid}, *c3, {c3->bot()}));
  CHECK(!similar_n(f1, *c3, {mid}, *c3, {c3->bot()}));
  CHECK(similar_n(f1, *c3, {mid}, *c3, {mid}));
}

TEST_CASE("similarity is an equivalence and levels refine") {
  std::vector<AlgebraPtr> corpus{two(), chain3(), bool4()};
  std::vector<Fragment> frags{build_fragment(1, 0), build_fragment(1, 1),
                              build_fragment(1, 2)};
  struct Item {
    AlgebraPtr a;
    int e;
  };
  std::vector<Item> items;
  for (const auto& a : corpus)
    for (int e = 0; e < a->size(); ++e) items.push_back({a, e});

  for (std::size_t lvl = 0; lvl < frags.size(); ++lvl) {
    for (const Item& x : items) CHECK(similar_n(frags[lvl], *x.a, {x.e}, *x.a, {x.e}));
    for (const Item& x : items)
      for (const Item& y : items) {
        bool xy = similar_n(frags[lvl], *x.a, {x.e}, *y.a, {y.e});
        CHECK(xy == similar_n(frags[lvl], *y.a, {y.e}, *x.a, {x.e}));
        if (lvl > 0 && similar_n(frags[lvl], *x.a, {x.e}, *y.a, {y.e}))
          CHECK(similar_n(frags[lvl - 1], *x.a, {x.e}, *y.a, {y.e}));
      }
  }
}

TEST_CASE("Y_n: membership by kernel meeting") {
  Fragment f1 = build_fragment(1, 1);
  auto bs = balls(f1);
  Prover& pr = Prover::global();
  Arity a{1, 0};

  auto y_top = y_n(bs, *two(), {two()->top()});
  REQUIRE(y_top.size() == 1);
  CHECK(pr.equivalent(bs[y_top[0]].phi, parse("p1", a)));
  CHECK(pr.equivalent(bs[y_top[0]].psi, parse("~p1", a)));

  // (m) in the 3-chain realizes the p-true and mixed types but never the
  // p-refuting one: ~m -> m = 0 -> m = 1, so that ball misses the kernel
  auto y_mid = y_n(bs, *chain3(), {1});
  REQUIRE(y_mid.size() == 2);
  for (int i : y_mid) CHECK(!pr.equivalent(bs[i].phi, parse("~p1", a)));
  CHECK(realized_types(*chain3(), {1}, 1).size() == 2);
}

TEST_CASE("Y_n equality vs similarity: true directions plus the boundary case") {
  std::vector<AlgebraPtr> corpus{two(), chain3(), bool4()};
  struct Item {
    AlgebraPtr a;
    int e;
  };
  std::vector<Item> items;
  for (const auto& a : corpus)
    for (int e = 0; e < a->size(); ++e) items.push_back({a, e});

  for (int n = 0; n <= 1; ++n) {
    Fragment fn = build_fragment(1, n);
    Fragment fn1 = build_fragment(1, n + 1);
    auto bs = balls(fn);
    for (const Item& x : items)
      for (const Item& y : items) {
        bool yeq = y_n(bs, *x.a, {x.e}) == y_n(bs, *y.a, {y.e});
        bool sim_same = similar_n(fn, *x.a, {x.e}, *y.a, {y.e});
        bool sim_next = similar_n(fn1, *x.a, {x.e}, *y.a, {y.e});
        if (yeq) CHECK(sim_same);        // Y_n equality forces Th_n equality
        if (sim_next) CHECK(yeq);        // Th_{n+1} equality forces Y_n equality
      }
  }

  // the known boundary failure of the literal same-level converse:
  // Th_0-equal tuples with different Y_0 (middle vs bottom of the 3-chain)
  Fragment f0 = build_fragment(1, 0);
  auto b0 = balls(f0);
  AlgebraPtr c3 = chain3();
  CHECK(similar_n(f0, *c3, {1}, *c3, {c3->bot()}));
  CHECK(y_n(b0, *c3, {1}) != y_n(b0, *c3, {c3->bot()}));
}

TEST_CASE("EQUIV template evaluates ball agreement") {
  Fragment f1 = build_fragment(1, 1);
  auto pairs = equiv_sentence(f1);
  CHECK(pairs.size() == 3);

  AlgebraPtr c3 = chain3();
  auto agree = [&](const std::vector<int>& t1, const std::vector<int>& t2) {
    for (const auto& [phi, psi] : pairs) {
      bool left = eval(*Formula::imp(phi, psi), *c3, t1) == c3->top();
      bool right = eval(*Formula::imp(phi, psi), *c3, t2) == c3->top();
      if (left != right) return false;
    }
    return true;
  };
  CHECK(!agree({1}, {c3->bot()}));
  CHECK(agree({1}, {1}) == similar_n(f1, *c3, {1}, *c3, {1}));
}

TEST_CASE("equiv_sentence at l=0") {
  Fragment f = build_fragment(0, 0);
  auto pairs = equiv_sentence(f);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].first->kind == Kind::Top);
  CHECK(pairs[0].second->kind == Kind::Bot);
}

TEST_CASE("h-index, pinned small cases") {
  CHECK(h_index(*two(), 1, 0, 3) == 0);
  CHECK(h_index(*chain3(), 0, 1, 3) == 0);
  // derived once, then pinned: the 3-chain needs level 1 at degree 1
  auto h = h_index(*chain3(), 1, 1, 3);
  REQUIRE(h.has_value());
  CHECK(*h == 1);
}

TEST_CASE("emit-fc smoke") {
  std::string tiny = emit_fc(0, 0, 0);
  CHECK(tiny.find("FC[l=0, d=0, n=0]") == 0);
  CHECK(tiny.find("EQUIV") != std::string::npos);

  std::string one = emit_fc(1, 0, 0);
  // mentions the two radius-1 balls and one block per (t, subset) system
  CHECK(one.find("(p1) <= (0)") != std::string::npos);
  CHECK(one.find("(1) <= (p1)") != std::string::npos);
  CHECK(one.find("[384]") != std::string::npos);
  CHECK(one.find("[385]") == std::string::npos);
}

TEST_CASE("semantic and rep routes agree on two-variable tuples") {
  Fragment f20 = build_fragment(2, 0);
  Fragment f21 = build_fragment(2, 1);
  std::vector<AlgebraPtr> corpus{two(), chain3(), bool4()};
  for (const auto& a : corpus)
    for (const auto& b : corpus)
      for (int x1 = 0; x1 < a->size(); ++x1)
        for (int x2 = 0; x2 < a->size(); ++x2)
          for (int y1 = 0; y1 < b->size(); ++y1)
            for (int y2 = 0; y2 < b->size(); ++y2) {
              // similar_n itself raises InternalInconsistency on any mismatch
              similar_n(f20, *a, {x1, x2}, *b, {y1, y2});
              similar_n(f21, *a, {x1, x2}, *b, {y1, y2});
            }
}

TEST_CASE("ball order coincides with the semantic dominance order") {
  for (int l = 1; l <= 2; ++l) {
    Fragment frag = build_fragment(l, 1);
    auto bs = balls(frag);
    // locate each ball's type by evaluating on a realization found among
    // corpus points
    std::vector<int> ball_type(bs.size(), -1);
    for (int n = 1; n <= 4; ++n)
      for (const FinitePoset& p : enumerate_posets(n)) {
        std::vector<Mask> ups = p.all_upsets();
        std::vector<std::size_t> pick(static_cast<std::size_t>(l), 0);
        while (true) {
          std::vector<Mask> val(pick.size());
          for (std::size_t v = 0; v < pick.size(); ++v) val[v] = ups[pick[v]];
          std::vector<int> types = point_types(p, val, 1);
          for (std::size_t bi = 0; bi < bs.size(); ++bi) {
            Mask phi_m = eval_mask(*bs[bi].phi, p, val);
            Mask psi_m = eval_mask(*bs[bi].psi, p, val);
            for (int x = 0; x < p.size(); ++x)
              if ((phi_m & bit(x)) && !(psi_m & bit(x))) {
                if (ball_type[bi] == -1) ball_type[bi] = types[x];
                CHECK(ball_type[bi] == types[x]);
              }
          }
          std::size_t i = 0;
          for (; i < pick.size(); ++i) {
            if (++pick[i] < ups.size()) break;
            pick[i] = 0;
          }
          if (i == pick.size()) break;
        }
      }
    for (std::size_t bi = 0; bi < bs.size(); ++bi) REQUIRE(ball_type[bi] >= 0);
    // phi_B <= phi_B' in the fragment iff type_B' dominates... the ball
    // order mirrors Th-inclusion of the underlying types
    TypeInterner& ti = TypeInterner::global();
    for (std::size_t i = 0; i < bs.size(); ++i)
      for (std::size_t j = 0; j < bs.size(); ++j)
        CHECK(frag.leq(bs[i].phi_class, bs[j].phi_class) ==
              ti.dominates(ball_type[j], ball_type[i]));
  }
}
