#include "heyting/structure.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "heyting/fragment.hpp"

namespace heyting {

bool strong_order(const FiniteHA& a, int b, int x) {
  return a.imp(b, x) == x && a.leq(x, b);
}

std::optional<std::pair<int, int>> check_density(const FiniteHA& a) {
  for (int x = 0; x < a.size(); ++x) {
    if (x == a.top()) continue;
    for (int c = 0; c < a.size(); ++c) {
      if (!strong_order(a, c, x)) continue;
      bool found = false;
      for (int b = 0; b < a.size() && !found; ++b) {
        if (b == a.top()) continue;
        if (strong_order(a, c, b) && strong_order(a, b, x)) found = true;
      }
      if (!found) return std::make_pair(x, c);
    }
  }
  return std::nullopt;
}

std::optional<std::array<int, 3>> check_splitting(const FiniteHA& a) {
  for (int x = 0; x < a.size(); ++x) {
    if (x == a.top()) continue;
    for (int b1 = 0; b1 < a.size(); ++b1)
      for (int b2 = 0; b2 < a.size(); ++b2) {
        if (!strong_order(a, a.meet(b1, b2), x)) continue;
        bool found = false;
        for (int a1 = 0; a1 < a.size() && !found; ++a1) {
          if (a1 == a.top()) continue;
          for (int a2 = 0; a2 < a.size() && !found; ++a2) {
            if (a2 == a.top()) continue;
            if (a.imp(a2, x) == a1 && a.leq(a1, b1) && a.imp(a1, x) == a2 &&
                a.leq(a2, b2) && a.join(a1, a2) == a.join(b1, b2))
              found = true;
          }
        }
        if (!found) return std::array<int, 3>{x, b1, b2};
      }
  }
  return std::nullopt;
}

namespace {

// longest >>-descending path from x within A \ {1}, in links
int descent_length(const FiniteHA& a, int x, std::vector<int>& memo) {
  if (memo[x] >= 0) return memo[x];
  int best = 0;
  for (int y = 0; y < a.size(); ++y) {
    if (y == a.top() || y == x) continue;
    if (strong_order(a, x, y)) best = std::max(best, 1 + descent_length(a, y, memo));
  }
  return memo[x] = best;
}

}  // namespace

std::optional<int> dual_codim(const FiniteHA& a, int elem) {
  if (elem == a.top()) return std::nullopt;  // infinite
  std::vector<int> memo(a.size(), -1);
  int best = -1;
  for (int x = 0; x < a.size(); ++x) {
    if (x == a.top() || !a.leq(x, elem)) continue;
    best = std::max(best, descent_length(a, x, memo));
  }
  if (best < 0) throw DomainError("no chain below element");
  return best;
}

Filter d_filter(AlgebraPtr a, int d) {
  Filter f{a, std::vector<bool>(a->size(), false)};
  for (int e = 0; e < a->size(); ++e) {
    auto c = dual_codim(*a, e);
    f.member[e] = !c.has_value() || *c > d;
  }
  if (!f.is_filter()) throw InternalInconsistency("dA is not a filter");
  return f;
}

int dimension(const FiniteHA& a) {
  if (a.trivial()) throw DomainError("the trivial algebra has no dimension");
  return a.dual().height();
}

namespace {

// Does a_i -> a'_i extend to an isomorphism of the generated subalgebras?
// Grown as paired closures; any mapping conflict kills it.
bool tuples_generate_isomorphic(const FiniteHA& a, const std::vector<int>& t1,
                                const FiniteHA& b, const std::vector<int>& t2) {
  if (t1.size() != t2.size()) return false;
  std::map<int, int> fwd, bwd;
  std::vector<std::pair<int, int>> worklist;
  auto add = [&](int x, int y) -> bool {
    auto f = fwd.find(x);
    if (f != fwd.end()) return f->second == y;
    auto g = bwd.find(y);
    if (g != bwd.end()) return false;
    fwd[x] = y;
    bwd[y] = x;
    worklist.emplace_back(x, y);
    return true;
  };
  if (!add(a.bot(), b.bot()) || !add(a.top(), b.top())) return false;
  for (std::size_t i = 0; i < t1.size(); ++i)
    if (!add(t1[i], t2[i])) return false;
  for (std::size_t i = 0; i < worklist.size(); ++i) {
    auto [x, y] = worklist[i];
    std::size_t upto = worklist.size();
    for (std::size_t j = 0; j < upto; ++j) {
      auto [u, v] = worklist[j];
      if (!add(a.meet(x, u), b.meet(y, v))) return false;
      if (!add(a.join(x, u), b.join(y, v))) return false;
      if (!add(a.imp(x, u), b.imp(y, v))) return false;
      if (!add(a.imp(u, x), b.imp(v, y))) return false;
    }
  }
  return true;
}

}  // namespace

bool check_lemma_a2(const std::vector<LemmaA2Pair>& pairs, int d) {
  int n = 2 * d + 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const LemmaA2Pair& p = pairs[i];
    SubalgebraResult gen = generated_subalgebra(p.first, p.first_tuple);
    if (!gen.algebra->trivial() && dimension(*gen.algebra) > d) {
      std::ostringstream msg;
      msg << "pair " << i << ": generated subalgebra has dimension > " << d;
      throw DomainError(msg.str());
    }
    if (!similar_n_semantic(n, *p.first, p.first_tuple, *p.second, p.second_tuple))
      continue;  // hypothesis not met; vacuously fine
    if (!tuples_generate_isomorphic(*p.first, p.first_tuple, *p.second, p.second_tuple))
      return false;
  }
  return true;
}

std::vector<SubalgebraResult> all_subalgebras(AlgebraPtr a) {
  if (a->size() > 16) throw CapExceeded("subalgebra enumeration capped at 16 elements");
  std::set<std::vector<Mask>> seen;
  std::vector<SubalgebraResult> out;
  for (std::uint32_t sel = 0; sel < (1u << a->size()); ++sel) {
    std::vector<int> gens;
    for (int e = 0; e < a->size(); ++e)
      if (sel & (1u << e)) gens.push_back(e);
    SubalgebraResult r = generated_subalgebra(a, gens);
    std::vector<Mask> key;
    for (int e = 0; e < r.algebra->size(); ++e)
      key.push_back(a->elem_mask(r.inclusion.map[e]));
    std::sort(key.begin(), key.end());
    if (seen.insert(std::move(key)).second) out.push_back(std::move(r));
  }
  return out;
}

H0Level build_h0_level(int n, const H0Budget& budget) {
  if (n == 0) {
    H0Level base;
    base.level = 0;
    base.algebra = std::make_shared<FiniteHA>(upsets(FinitePoset::chain(1)));
    base.previous_inclusion = HAMorphism::identity(base.algebra);
    return base;
  }
  H0Level prev = build_h0_level(n - 1, budget);
  AlgebraPtr start = prev.algebra;

  H0Level out;
  out.level = n;

  AlgebraPtr current = start;
  HAMorphism chain = HAMorphism::identity(start);  // start -> current
  struct Fold {
    AlgebraPtr a_i;
    HAMorphism into_start;  // A_i -> start
    Extension b_ij;
  };
  std::vector<Fold> folds;

  std::vector<SubalgebraResult> subs = all_subalgebras(start);
  int steps = 0;
  for (std::size_t i = 0; i < subs.size() && out.complete_within_budget; ++i) {
    if (subs[i].algebra->dual().size() > n) continue;
    std::vector<Extension> exts =
        minimal_extensions(subs[i].algebra, budget.minimal_extension_cap);
    for (std::size_t j = 0; j < exts.size(); ++j) {
      if (++steps > budget.max_steps) {
        out.complete_within_budget = false;
        break;
      }
      HAMorphism a_to_current = compose(subs[i].inclusion, chain);
      AmalgamResult am = amalgamate(a_to_current, exts[j].embedding);
      if (am.amalgam->dual().size() > budget.max_dual_points) {
        out.complete_within_budget = false;
        break;
      }
      std::vector<int> gens;
      for (int e : am.from_left.map) gens.push_back(e);
      for (int e : am.from_right.map) gens.push_back(e);
      SubalgebraResult next = generated_subalgebra(am.amalgam, gens);

      // reverse lookup into the generated subalgebra
      std::vector<int> back(am.amalgam->size(), -1);
      for (int e = 0; e < next.algebra->size(); ++e) back[next.inclusion.map[e]] = e;
      HAMorphism current_to_next{current, next.algebra,
                                 std::vector<int>(current->size(), -1)};
      for (int e = 0; e < current->size(); ++e)
        current_to_next.map[e] = back[am.from_left.map[e]];

      chain = compose(chain, current_to_next);
      current = next.algebra;

      H0LogEntry entry;
      entry.case_tag = (j + 1 < exts.size()) ? 1 : (i + 1 < subs.size() ? 2 : 3);
      {
        std::ostringstream s;
        s << "A_" << (i + 1) << " (" << subs[i].algebra->size() << " elements, "
          << subs[i].algebra->dual().size() << " dual points)";
        entry.subalgebra = s.str();
      }
      {
        std::ostringstream s;
        s << "B_" << (i + 1) << "," << (j + 1) << " (" << exts[j].algebra->size()
          << " elements, " << exts[j].algebra->dual().size() << " dual points)";
        entry.extension = s.str();
      }
      entry.amalgam_dual_points = am.amalgam->dual().size();
      out.log.push_back(std::move(entry));
      folds.push_back({subs[i].algebra, subs[i].inclusion, exts[j]});
    }
  }

  out.algebra = current;
  out.previous_inclusion = chain;
  for (Fold& f : folds) {
    Extension in_level{current, compose(f.into_start, chain)};
    out.certified.emplace_back(f.b_ij, std::move(in_level));
  }
  return out;
}

}  // namespace heyting
