#include "heyting/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace heyting {

void FinitePoset::finish() {
  int n = size();
  down_.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    if (!(up_[i] & bit(i))) throw DomainError("poset relation not reflexive");
    for (int j = 0; j < n; ++j)
      if (leq(i, j)) down_[j] |= bit(i);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && leq(i, j) && leq(j, i)) throw DomainError("poset relation not antisymmetric");
      if (leq(i, j) && !subset(up_[j], up_[i])) throw DomainError("poset relation not transitive");
    }
}

FinitePoset FinitePoset::from_pairs(int n, const std::vector<std::pair<int, int>>& leq_pairs) {
  if (n < 0 || n > 64) throw DomainError("poset size out of range");
  FinitePoset p;
  p.up_.assign(n, 0);
  for (int i = 0; i < n; ++i) p.up_[i] = bit(i);
  for (auto [i, j] : leq_pairs) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw DomainError("poset pair out of range");
    p.up_[i] |= bit(j);
  }
  p.finish();
  return p;
}

FinitePoset FinitePoset::from_up_masks(std::vector<Mask> up) {
  FinitePoset p;
  p.up_ = std::move(up);
  p.finish();
  return p;
}

FinitePoset FinitePoset::chain(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
  return from_pairs(n, pairs);
}

FinitePoset FinitePoset::antichain(int n) { return from_pairs(n, {}); }

bool FinitePoset::is_upset(Mask s) const {
  for (int i = 0; i < size(); ++i)
    if ((s & bit(i)) && !subset(up_[i], s)) return false;
  return true;
}

Mask FinitePoset::up_closure(Mask s) const {
  Mask r = 0;
  for (int i = 0; i < size(); ++i)
    if (s & bit(i)) r |= up_[i];
  return r;
}

Mask FinitePoset::down_closure(Mask s) const {
  Mask r = 0;
  for (int i = 0; i < size(); ++i)
    if (s & bit(i)) r |= down_[i];
  return r;
}

std::vector<Mask> FinitePoset::all_upsets() const {
  if (size() > 20) throw CapExceeded("up-set materialization capped at 20 poset points");
  std::vector<Mask> out;
  Mask full = full_mask();
  for (Mask s = 0;; ++s) {
    if (is_upset(s)) out.push_back(s);
    if (s == full) break;
  }
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
    int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

Mask FinitePoset::covers(int i) const {
  Mask strict = up_[i] & ~bit(i);
  Mask cov = 0;
  for (int j = 0; j < size(); ++j) {
    if (!(strict & bit(j))) continue;
    bool is_cover = true;
    for (int k = 0; k < size() && is_cover; ++k)
      if (k != j && (strict & bit(k)) && leq(k, j)) is_cover = false;
    if (is_cover) cov |= bit(j);
  }
  return cov;
}

Mask FinitePoset::minimal_points() const {
  Mask m = 0;
  for (int i = 0; i < size(); ++i)
    if (down_[i] == bit(i)) m |= bit(i);
  return m;
}

int FinitePoset::height() const {
  int n = size();
  if (n == 0) return -1;
  std::vector<int> h(n, -1);
  // longest chain upward from i, in links
  auto rec = [&](auto&& self, int i) -> int {
    if (h[i] >= 0) return h[i];
    int best = 0;
    Mask strict = up_[i] & ~bit(i);
    for (int j = 0; j < n; ++j)
      if (strict & bit(j)) best = std::max(best, 1 + self(self, j));
    return h[i] = best;
  };
  int best = 0;
  for (int i = 0; i < n; ++i) best = std::max(best, rec(rec, i));
  return best;
}

namespace {

std::string relation_key(const FinitePoset& p, const std::vector<int>& perm) {
  int n = p.size();
  std::string key(static_cast<std::size_t>(n) * n, '0');
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.leq(perm[i], perm[j])) key[static_cast<std::size_t>(i) * n + j] = '1';
  return key;
}

// Invariant profile used to cut the permutation search: points may only map
// to points with the same (|down|, |up|) signature.
std::vector<std::pair<int, int>> profile(const FinitePoset& p) {
  std::vector<std::pair<int, int>> sig(p.size());
  for (int i = 0; i < p.size(); ++i)
    sig[i] = {popcount(p.down_mask(i)), popcount(p.up_mask(i))};
  return sig;
}

}  // namespace

std::string FinitePoset::canonical_key() const {
  int n = size();
  if (n == 0) return "";
  auto sig = profile(*this);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
  std::string best;
  // permute within equal-signature blocks only
  do {
    bool ok = true;
    for (int i = 0; i + 1 < n && ok; ++i)
      if (sig[order[i]] > sig[order[i + 1]]) ok = false;
    if (ok) {
      std::string key = relation_key(*this, order);
      if (best.empty() || key < best) best = key;
    }
  } while (std::next_permutation(order.begin(), order.end(), [&](int a, int b) {
    if (sig[a] != sig[b]) return sig[a] < sig[b];
    return a < b;
  }));
  return best;
}

bool FinitePoset::isomorphic_to(const FinitePoset& other) const {
  if (size() != other.size()) return false;
  return canonical_key() == other.canonical_key();
}

bool check_pmorphism(const FinitePoset& source, const FinitePoset& target,
                     const std::vector<int>& map) {
  int n = source.size();
  if (static_cast<int>(map.size()) != n) return false;
  for (int x = 0; x < n; ++x)
    if (map[x] < 0 || map[x] >= target.size()) return false;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (source.leq(x, y) && !target.leq(map[x], map[y])) return false;
  for (int x = 0; x < n; ++x)
    for (int yp = 0; yp < target.size(); ++yp) {
      if (!target.leq(map[x], yp)) continue;
      bool witness = false;
      Mask above = source.up_mask(x);
      for (int xp = 0; xp < n && !witness; ++xp)
        if ((above & bit(xp)) && map[xp] == yp) witness = true;
      if (!witness) return false;
    }
  return true;
}

bool pmorphism_surjective(const FinitePoset& target, const std::vector<int>& map) {
  Mask hit = 0;
  for (int v : map) hit |= bit(v);
  return hit == target.full_mask();
}

std::vector<FinitePoset> enumerate_posets(int n) {
  if (n < 0) throw DomainError("negative poset size");
  if (n == 0) return {FinitePoset::antichain(0)};
  if (n > 8) throw CapExceeded("poset enumeration capped at 8 points");
  std::vector<FinitePoset> prev = enumerate_posets(n - 1);
  std::map<std::string, FinitePoset> classes;
  for (const FinitePoset& p : prev) {
    int m = p.size();
    // add point m with a chosen strict down-set D and strict up-set U
    std::vector<Mask> downs, ups;
    Mask full = p.full_mask();
    for (Mask s = 0;; ++s) {
      if (p.is_upset(s)) ups.push_back(s);
      if (p.down_closure(s) == s) downs.push_back(s);
      if (s == full) break;
    }
    for (Mask d : downs)
      for (Mask u : ups) {
        if (d & u) continue;
        // everything below the new point must lie below everything above it
        bool ok = true;
        for (int i = 0; i < m && ok; ++i)
          if (d & bit(i))
            for (int j = 0; j < m && ok; ++j)
              if ((u & bit(j)) && !p.leq(i, j)) ok = false;
        if (!ok) continue;
        std::vector<Mask> up_masks(m + 1);
        for (int i = 0; i < m; ++i) {
          up_masks[i] = p.up_mask(i);
          if (d & bit(i)) up_masks[i] |= bit(m);
        }
        up_masks[m] = u | bit(m);
        FinitePoset q = FinitePoset::from_up_masks(up_masks);
        classes.emplace(q.canonical_key(), q);
      }
  }
  std::vector<FinitePoset> out;
  out.reserve(classes.size());
  for (auto& [k, v] : classes) out.push_back(std::move(v));
  return out;
}

namespace {

void pmorphism_search(const FinitePoset& source, const FinitePoset& target,
                      std::vector<int>& map, std::size_t next,
                      std::vector<std::vector<int>>& out) {
  if (next == map.size()) {
    if (pmorphism_surjective(target, map) && check_pmorphism(source, target, map))
      out.push_back(map);
    return;
  }
  int x = static_cast<int>(next);
  for (int y = 0; y < target.size(); ++y) {
    bool ok = true;
    for (int p = 0; p < x && ok; ++p) {
      if (source.leq(p, x) && !target.leq(map[p], y)) ok = false;
      if (source.leq(x, p) && !target.leq(y, map[p])) ok = false;
    }
    if (!ok) continue;
    map[x] = y;
    pmorphism_search(source, target, map, next + 1, out);
  }
  map[x] = -1;
}

}  // namespace

std::vector<std::vector<int>> surjective_pmorphisms(const FinitePoset& source,
                                                    const FinitePoset& target) {
  std::vector<std::vector<int>> out;
  if (target.size() == 0) {
    if (source.size() == 0) out.push_back({});
    return out;
  }
  if (source.size() == 0) return out;
  std::vector<int> map(source.size(), -1);
  pmorphism_search(source, target, map, 0, out);
  return out;
}

std::vector<std::vector<int>> poset_isomorphisms(const FinitePoset& source,
                                                 const FinitePoset& target) {
  std::vector<std::vector<int>> out;
  if (source.size() != target.size()) return out;
  int n = source.size();
  if (n == 0) return {{}};
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, int x) -> void {
    if (x == n) {
      out.push_back(map);
      return;
    }
    for (int y = 0; y < n; ++y) {
      if (used[y]) continue;
      bool ok = true;
      for (int p = 0; p < x && ok; ++p) {
        if (source.leq(p, x) != target.leq(map[p], y)) ok = false;
        if (source.leq(x, p) != target.leq(y, map[p])) ok = false;
      }
      if (!ok) continue;
      used[y] = true;
      map[x] = y;
      self(self, x + 1);
      used[y] = false;
      map[x] = -1;
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace heyting
