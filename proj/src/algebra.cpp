#include "heyting/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace heyting {

Mask ha_imp_mask(Mask a, Mask b, const FinitePoset& p) {
  Mask r = 0;
  for (int x = 0; x < p.size(); ++x)
    if (subset(p.up_mask(x) & a, b)) r |= bit(x);
  return r;
}

FiniteHA FiniteHA::upsets_of(const FinitePoset& p) {
  FiniteHA a;
  a.dual_ = p;
  a.elems_ = p.all_upsets();
  return a;
}

FiniteHA upsets(const FinitePoset& p) { return FiniteHA::upsets_of(p); }

int FiniteHA::index_of(Mask m) const {
  auto cmp = [](Mask a, Mask b) {
    int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
  };
  auto it = std::lower_bound(elems_.begin(), elems_.end(), m, cmp);
  if (it == elems_.end() || *it != m) throw DomainError("mask is not an element");
  return static_cast<int>(it - elems_.begin());
}

int FiniteHA::imp(int a, int b) const {
  return index_of(ha_imp_mask(elems_[a], elems_[b], dual_));
}

std::vector<int> FiniteHA::join_irreducibles() const {
  std::vector<int> out;
  for (int x = 0; x < dual_.size(); ++x) out.push_back(index_of(dual_.up_mask(x)));
  std::sort(out.begin(), out.end());
  return out;
}

int FiniteHA::ji_point(int elem) const {
  Mask m = elems_[elem];
  for (int x = 0; x < dual_.size(); ++x)
    if (dual_.up_mask(x) == m) return x;
  return -1;
}

int FiniteHA::point_element(int x) const { return index_of(dual_.up_mask(x)); }

FiniteHA FiniteHA::from_closed_family(const FinitePoset& ambient,
                                      const std::vector<Mask>& family,
                                      std::vector<Mask>* ji_out) {
  (void)ambient;
  // join-irreducible members: not the join of the strictly smaller members
  std::vector<Mask> ji;
  for (Mask x : family) {
    Mask below = 0;
    for (Mask y : family)
      if (y != x && subset(y, x)) below |= y;
    if (below != x) ji.push_back(x);
  }
  // dual poset: join-irreducibles under reverse inclusion
  int k = static_cast<int>(ji.size());
  std::sort(ji.begin(), ji.end(), [](Mask a, Mask b) {
    int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa > pb : a < b;
  });
  std::vector<Mask> up(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (subset(ji[j], ji[i])) up[i] |= bit(j);
  FiniteHA out = upsets_of(FinitePoset::from_up_masks(up));
  if (out.size() != static_cast<int>(family.size()))
    throw DomainError("family is not closed under the lattice operations");
  if (ji_out) *ji_out = std::move(ji);
  return out;
}

FinitePoset join_irreducibles_poset(const FiniteHA& a) {
  // recomputed from the lattice structure rather than read off the dual, so
  // the round-trip theorems are genuine checks
  std::vector<Mask> ji;
  for (int e = 0; e < a.size(); ++e) {
    Mask below = 0;
    for (int f = 0; f < a.size(); ++f)
      if (f != e && a.leq(f, e)) below |= a.elem_mask(f);
    if (below != a.elem_mask(e)) ji.push_back(a.elem_mask(e));
  }
  std::sort(ji.begin(), ji.end(), [](Mask x, Mask y) {
    int px = popcount(x), py = popcount(y);
    return px != py ? px > py : x < y;
  });
  int k = static_cast<int>(ji.size());
  std::vector<Mask> up(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (subset(ji[j], ji[i])) up[i] |= bit(j);
  return FinitePoset::from_up_masks(up);
}

HAMorphism HAMorphism::identity(AlgebraPtr a) {
  HAMorphism h{a, a, {}};
  h.map.resize(a->size());
  for (int i = 0; i < a->size(); ++i) h.map[i] = i;
  return h;
}

bool HAMorphism::preserves_structure() const {
  const FiniteHA& s = *source;
  const FiniteHA& t = *target;
  if (static_cast<int>(map.size()) != s.size()) return false;
  if (map[s.bot()] != t.bot() || map[s.top()] != t.top()) return false;
  for (int a = 0; a < s.size(); ++a)
    for (int b = 0; b < s.size(); ++b) {
      if (map[s.meet(a, b)] != t.meet(map[a], map[b])) return false;
      if (map[s.join(a, b)] != t.join(map[a], map[b])) return false;
      if (map[s.imp(a, b)] != t.imp(map[a], map[b])) return false;
    }
  return true;
}

bool HAMorphism::injective() const {
  std::set<int> image(map.begin(), map.end());
  return image.size() == map.size();
}

HAMorphism compose(const HAMorphism& f, const HAMorphism& g) {
  HAMorphism h{f.source, g.target, {}};
  h.map.resize(f.map.size());
  for (std::size_t i = 0; i < f.map.size(); ++i) h.map[i] = g.map[f.map[i]];
  return h;
}

bool Filter::is_filter() const {
  const FiniteHA& a = *algebra;
  if (!member[a.top()]) return false;
  for (int x = 0; x < a.size(); ++x) {
    if (!member[x]) continue;
    for (int y = 0; y < a.size(); ++y) {
      if (a.leq(x, y) && !member[y]) return false;
      if (member[y] && !member[a.meet(x, y)]) return false;
    }
  }
  return true;
}

bool Filter::is_prime() const {
  const FiniteHA& a = *algebra;
  if (!is_filter()) return false;
  if (member[a.bot()]) return false;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y)
      if (member[a.join(x, y)] && !member[x] && !member[y]) return false;
  return true;
}

int Filter::principal_generator() const {
  const FiniteHA& a = *algebra;
  int g = a.top();
  for (int x = 0; x < a.size(); ++x)
    if (member[x]) g = a.meet(g, x);
  return g;
}

Filter Filter::principal(AlgebraPtr a, int generator) {
  Filter f{a, std::vector<bool>(a->size(), false)};
  for (int x = 0; x < a->size(); ++x)
    if (a->leq(generator, x)) f.member[x] = true;
  return f;
}

std::vector<Filter> prime_filters(AlgebraPtr a) {
  std::vector<Filter> out;
  for (int j : a->join_irreducibles()) out.push_back(Filter::principal(a, j));
  return out;
}

Filter filter_kernel(const HAMorphism& f) {
  Filter k{f.source, std::vector<bool>(f.source->size(), false)};
  for (int x = 0; x < f.source->size(); ++x)
    if (f.map[x] == f.target->top()) k.member[x] = true;
  return k;
}

std::vector<int> dual_point_map(const HAMorphism& h) {
  const FiniteHA& a = *h.source;
  const FiniteHA& b = *h.target;
  std::vector<int> out(b.dual().size(), -1);
  for (int x = 0; x < b.dual().size(); ++x) {
    // h^(x) generates the prime filter {e in A : x in h(e)}
    Mask meet = a.elem_mask(a.top());
    for (int e = 0; e < a.size(); ++e)
      if (b.elem_mask(h.map[e]) & bit(x)) meet &= a.elem_mask(e);
    int y = -1;
    for (int p = 0; p < a.dual().size(); ++p)
      if (a.dual().up_mask(p) == meet) y = p;
    if (y < 0) throw DomainError("preimage filter is not prime; morphism invalid");
    out[x] = y;
  }
  return out;
}

SubalgebraResult generated_subalgebra(AlgebraPtr a, const std::vector<int>& gens) {
  std::set<Mask> family{a->elem_mask(a->bot()), a->elem_mask(a->top())};
  for (int g : gens) family.insert(a->elem_mask(g));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mask> cur(family.begin(), family.end());
    for (Mask x : cur)
      for (Mask y : cur) {
        Mask cands[3] = {x & y, x | y, ha_imp_mask(x, y, a->dual())};
        for (Mask c : cands)
          if (family.insert(c).second) grew = true;
      }
  }
  std::vector<Mask> fam(family.begin(), family.end());
  std::vector<Mask> ji_masks;
  auto sub = std::make_shared<FiniteHA>(FiniteHA::from_closed_family(a->dual(), fam, &ji_masks));

  // a sub-element is the join of the join-irreducible family members at its
  // dual points; translate back through that join
  HAMorphism incl{sub, a, std::vector<int>(sub->size(), -1)};
  for (int e = 0; e < sub->size(); ++e) {
    Mask pts = sub->elem_mask(e);  // set of sub-dual points = JI indices
    Mask parent = 0;
    for (std::size_t j = 0; j < ji_masks.size(); ++j)
      if (pts & bit(static_cast<int>(j))) parent |= ji_masks[j];
    incl.map[e] = a->index_of(parent);
  }
  return {sub, std::move(incl)};
}

QuotientResult quotient_by_filter(AlgebraPtr a, const Filter& i) {
  if (!i.is_filter()) throw DomainError("quotient requires a filter");
  int c = i.principal_generator();
  Mask keep = a->elem_mask(c);
  // dual of A/I: induced subposet on the points of the generator's up-set
  std::vector<int> pts;
  for (int x = 0; x < a->dual().size(); ++x)
    if (keep & bit(x)) pts.push_back(x);
  std::vector<Mask> up(pts.size(), 0);
  for (std::size_t s = 0; s < pts.size(); ++s)
    for (std::size_t t = 0; t < pts.size(); ++t)
      if (a->dual().leq(pts[s], pts[t])) up[s] |= bit(static_cast<int>(t));
  auto q = std::make_shared<FiniteHA>(FiniteHA::upsets_of(FinitePoset::from_up_masks(up)));
  HAMorphism proj{a, q, std::vector<int>(a->size(), -1)};
  for (int e = 0; e < a->size(); ++e) {
    Mask restricted = 0;
    for (std::size_t s = 0; s < pts.size(); ++s)
      if (a->elem_mask(e) & bit(pts[s])) restricted |= bit(static_cast<int>(s));
    proj.map[e] = q->index_of(restricted);
  }
  return {q, std::move(proj)};
}

std::optional<HAMorphism> factor_through(const HAMorphism& f, const Filter& i,
                                         const QuotientResult& q) {
  Filter k = filter_kernel(f);
  for (int e = 0; e < f.source->size(); ++e)
    if (i.contains(e) && !k.contains(e)) return std::nullopt;
  HAMorphism g{q.algebra, f.target, std::vector<int>(q.algebra->size(), -1)};
  for (int e = 0; e < f.source->size(); ++e) {
    int qe = q.projection.map[e];
    if (g.map[qe] >= 0 && g.map[qe] != f.map[e])
      throw InternalInconsistency("factorisation is not well defined");
    g.map[qe] = f.map[e];
  }
  return g;
}

AmalgamResult amalgamate(const HAMorphism& into_left, const HAMorphism& into_right) {
  if (!into_left.injective() || !into_right.injective())
    throw DomainError("amalgamation requires injective embeddings");
  const FiniteHA& b = *into_left.target;
  const FiniteHA& c = *into_right.target;
  std::vector<int> f = dual_point_map(into_left);   // dual(B) -> dual(A)
  std::vector<int> g = dual_point_map(into_right);  // dual(C) -> dual(A)

  std::vector<std::pair<int, int>> pts;
  for (int x = 0; x < b.dual().size(); ++x)
    for (int y = 0; y < c.dual().size(); ++y)
      if (f[x] == g[y]) pts.emplace_back(x, y);
  if (pts.size() > 20) throw CapExceeded("amalgam dual exceeds 20 points");
  std::vector<Mask> up(pts.size(), 0);
  for (std::size_t s = 0; s < pts.size(); ++s)
    for (std::size_t t = 0; t < pts.size(); ++t)
      if (b.dual().leq(pts[s].first, pts[t].first) &&
          c.dual().leq(pts[s].second, pts[t].second))
        up[s] |= bit(static_cast<int>(t));
  auto d = std::make_shared<FiniteHA>(FiniteHA::upsets_of(FinitePoset::from_up_masks(up)));

  auto pullback = [&](const FiniteHA& src, bool left) {
    HAMorphism h{nullptr, d, std::vector<int>(src.size(), -1)};
    for (int e = 0; e < src.size(); ++e) {
      Mask m = 0;
      for (std::size_t s = 0; s < pts.size(); ++s) {
        int p = left ? pts[s].first : pts[s].second;
        if (src.elem_mask(e) & bit(p)) m |= bit(static_cast<int>(s));
      }
      h.map[e] = d->index_of(m);
    }
    return h;
  };
  HAMorphism from_b = pullback(b, true);
  from_b.source = into_left.target;
  HAMorphism from_c = pullback(c, false);
  from_c.source = into_right.target;
  return {d, std::move(from_b), std::move(from_c)};
}

namespace {

// Surjective p-morphisms dual(H) -> dual(B) commuting with the anchors into
// dual(A) yield embeddings B -> H over A.
std::optional<std::vector<int>> commuting_surjection(const FinitePoset& dual_h,
                                                     const FinitePoset& dual_b,
                                                     const std::vector<int>& anchor_h,
                                                     const std::vector<int>& anchor_b) {
  int n = dual_h.size();
  std::vector<int> map(n, -1);
  auto rec = [&](auto&& self, int x) -> bool {
    if (x == n) {
      return pmorphism_surjective(dual_b, map) && check_pmorphism(dual_h, dual_b, map);
    }
    for (int y = 0; y < dual_b.size(); ++y) {
      if (anchor_b[y] != anchor_h[x]) continue;
      bool ok = true;
      for (int p = 0; p < x && ok; ++p) {
        if (dual_h.leq(p, x) && !dual_b.leq(map[p], y)) ok = false;
        if (dual_h.leq(x, p) && !dual_b.leq(y, map[p])) ok = false;
      }
      if (!ok) continue;
      map[x] = y;
      if (self(self, x + 1)) return true;
      map[x] = -1;
    }
    return false;
  };
  if (rec(rec, 0)) return map;
  return std::nullopt;
}

HAMorphism embedding_from_dual_surjection(AlgebraPtr b, AlgebraPtr h,
                                          const std::vector<int>& sigma) {
  HAMorphism e{b, h, std::vector<int>(b->size(), -1)};
  for (int el = 0; el < b->size(); ++el) {
    Mask m = 0;
    for (int x = 0; x < h->dual().size(); ++x)
      if (b->elem_mask(el) & bit(sigma[x])) m |= bit(x);
    e.map[el] = h->index_of(m);
  }
  return e;
}

}  // namespace

std::optional<HAMorphism> embed_over(const HAMorphism& a_into_b,
                                     const HAMorphism& a_into_h) {
  AlgebraPtr b = a_into_b.target, h = a_into_h.target;
  std::vector<int> anchor_b = dual_point_map(a_into_b);
  std::vector<int> anchor_h = dual_point_map(a_into_h);
  auto sigma = commuting_surjection(h->dual(), b->dual(), anchor_h, anchor_b);
  if (!sigma) return std::nullopt;
  return embedding_from_dual_surjection(b, h, *sigma);
}

bool isomorphic_over(const HAMorphism& a_into_b, const HAMorphism& a_into_b2) {
  AlgebraPtr b = a_into_b.target, b2 = a_into_b2.target;
  if (b->size() != b2->size()) return false;
  std::vector<int> anchor_b = dual_point_map(a_into_b);
  std::vector<int> anchor_b2 = dual_point_map(a_into_b2);
  if (b->dual().size() != b2->dual().size()) return false;
  auto sigma = commuting_surjection(b2->dual(), b->dual(), anchor_b2, anchor_b);
  return sigma.has_value();
}

std::vector<Extension> minimal_extensions(AlgebraPtr a, int extra_points_cap) {
  std::vector<Extension> out;
  int base = a->dual().size();
  for (int extra = 0; extra <= extra_points_cap; ++extra) {
    int n = base + extra;
    if (n == 0) continue;
    for (const FinitePoset& q : enumerate_posets(n)) {
      for (const auto& sigma : surjective_pmorphisms(q, a->dual())) {
        auto b = std::make_shared<FiniteHA>(FiniteHA::upsets_of(q));
        HAMorphism emb = embedding_from_dual_surjection(a, b, sigma);
        if (static_cast<int>(b->size()) == a->size()) continue;  // not proper

        // minimal iff every outside element generates all of B over A
        std::set<int> image(emb.map.begin(), emb.map.end());
        bool minimal = true;
        for (int e = 0; e < b->size() && minimal; ++e) {
          if (image.count(e)) continue;
          std::vector<int> gens(emb.map.begin(), emb.map.end());
          gens.push_back(e);
          if (generated_subalgebra(b, gens).algebra->size() != b->size()) minimal = false;
        }
        if (!minimal) continue;

        bool duplicate = false;
        for (const Extension& seen : out)
          if (isomorphic_over(seen.embedding, emb)) {
            duplicate = true;
            break;
          }
        if (!duplicate) out.push_back({b, std::move(emb)});
      }
    }
  }
  return out;
}

}  // namespace heyting
