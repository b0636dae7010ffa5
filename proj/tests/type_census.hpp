// Test-only oracle: enumerates the abstract degree-d point types over l
// variables by the inductive realizability recursion, with no reference to
// the fragment or prover machinery it cross-checks.
//
// A 0-type is a variable subset S. A (k+1)-type is a pair (r, U) with U a
// set of k-types, r in U, such that
//   - the (k)-projection of r matches: vars(r) = vars and the k-1 types
//     above r are exactly the projections of U's members, and
//   - every u in U other than r is supported by some already-valid (u, V)
//     with V strictly contained in U (strictly-above points realize fewer
//     types).
#ifndef HEYTING_TESTS_TYPE_CENSUS_HPP
#define HEYTING_TESTS_TYPE_CENSUS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace census {

struct Type {
  std::uint32_t vars = 0;
  int proj = -1;                  // index into previous level (-1 at level 0)
  std::vector<int> above;         // sorted indices into previous level
};

struct Level {
  std::vector<Type> types;
};

inline std::vector<Level> census_levels(int l, int depth) {
  std::vector<Level> levels;
  Level zero;
  for (std::uint32_t s = 0; s < (1u << l); ++s) zero.types.push_back({s, -1, {}});
  levels.push_back(zero);

  for (int k = 1; k <= depth; ++k) {
    const Level& prev = levels.back();
    int pn = static_cast<int>(prev.types.size());

    // candidate pairs (r, U), U as a bitmask over prev types, in |U| order so
    // support witnesses are available when needed
    struct Cand {
      int r;
      std::uint64_t u;
    };
    std::vector<Cand> accepted;
    std::set<std::pair<int, std::uint64_t>> accepted_keys;

    std::vector<std::uint64_t> masks;
    for (std::uint64_t u = 1; u < (1ull << pn); ++u) masks.push_back(u);
    std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
      int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
      return pa != pb ? pa < pb : a < b;
    });

    for (std::uint64_t u : masks) {
      for (int r = 0; r < pn; ++r) {
        if (!(u & (1ull << r))) continue;
        const Type& rt = prev.types[r];
        // projection consistency: the (k-1)-data of the root must be exactly
        // the projections of U
        std::set<int> proj_set;
        bool vars_ok = true;
        for (int i = 0; i < pn; ++i)
          if (u & (1ull << i)) {
            proj_set.insert(k == 1 ? i : prev.types[i].proj);
            if ((rt.vars & ~prev.types[i].vars) != 0) vars_ok = false;
          }
        if (!vars_ok) continue;
        if (k == 1) {
          // a 0-type has no recorded "above" data; only the vars condition
          // and r's own membership apply
        } else {
          std::vector<int> ps(proj_set.begin(), proj_set.end());
          if (ps != rt.above) continue;
        }
        // support: every u' != r needs an accepted (u', V) with V strictly
        // inside U
        bool supported = true;
        for (int i = 0; i < pn && supported; ++i) {
          if (!(u & (1ull << i)) || i == r) continue;
          bool found = false;
          for (const Cand& c : accepted) {
            if (c.r != i) continue;
            if ((c.u & ~u) == 0 && c.u != u) {
              found = true;
              break;
            }
          }
          if (!found) supported = false;
        }
        if (!supported) continue;
        if (accepted_keys.insert({r, u}).second) accepted.push_back({r, u});
      }
    }

    Level next;
    for (const Cand& c : accepted) {
      Type t;
      t.vars = prev.types[c.r].vars;
      t.proj = c.r;
      for (int i = 0; i < pn; ++i)
        if (c.u & (1ull << i)) t.above.push_back(i);
      next.types.push_back(std::move(t));
    }
    levels.push_back(std::move(next));
  }
  return levels;
}

// number of ~_d classes of the free algebra's dual space on l variables
inline std::size_t type_count(int l, int d) {
  return census_levels(l, d).back().types.size();
}

}  // namespace census

#endif
