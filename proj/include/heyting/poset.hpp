#ifndef HEYTING_POSET_HPP
#define HEYTING_POSET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "heyting/errors.hpp"

namespace heyting {

// Point sets are bitmasks; posets are capped at 64 points (desk scale).
using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline Mask bit(int i) { return Mask{1} << i; }

// Finite poset on points 0..n-1. up[i] is the principal up-set of i
// (including i itself). The empty poset (n = 0) is allowed; it is the dual
// of the one-element Heyting algebra.
class FinitePoset {
 public:
  FinitePoset() = default;
  // `leq_pairs` lists pairs (i, j) with i <= j; reflexive pairs optional.
  // Transitivity is NOT inferred: the closure is validated, not computed.
  static FinitePoset from_pairs(int n, const std::vector<std::pair<int, int>>& leq_pairs);
  static FinitePoset from_up_masks(std::vector<Mask> up);

  static FinitePoset chain(int n);
  static FinitePoset antichain(int n);

  int size() const { return static_cast<int>(up_.size()); }
  bool leq(int i, int j) const { return (up_[i] >> j) & 1; }
  Mask up_mask(int i) const { return up_[i]; }
  Mask down_mask(int i) const { return down_[i]; }
  Mask full_mask() const { return size() == 64 ? ~Mask{0} : (Mask{1} << size()) - 1; }

  bool is_upset(Mask s) const;
  Mask up_closure(Mask s) const;
  Mask down_closure(Mask s) const;

  // All up-sets, sorted by (popcount, value). Throws CapExceeded when the
  // subset scan would be unreasonable.
  std::vector<Mask> all_upsets() const;

  // Covers of i: minimal elements strictly above i.
  Mask covers(int i) const;
  Mask minimal_points() const;

  // Longest strict chain, counted in links (empty poset: -1, antichain: 0).
  int height() const;

  // Lexicographically smallest relation-matrix encoding over all point
  // permutations. Exhaustive with invariant pruning; fine for n <= 8.
  std::string canonical_key() const;
  bool isomorphic_to(const FinitePoset& other) const;

  bool operator==(const FinitePoset& o) const { return up_ == o.up_; }

 private:
  std::vector<Mask> up_, down_;
  void finish();
};

// Monotone map check plus the back condition:
// map(x) <= y' implies some x' >= x with map(x') = y'.
bool check_pmorphism(const FinitePoset& source, const FinitePoset& target,
                     const std::vector<int>& map);
bool pmorphism_surjective(const FinitePoset& target, const std::vector<int>& map);

// All posets with exactly n points, one per isomorphism class, in a
// deterministic order. Grown by point extension from the (n-1)-point list.
std::vector<FinitePoset> enumerate_posets(int n);

// All surjective p-morphisms from source onto target, lexicographic order.
std::vector<std::vector<int>> surjective_pmorphisms(const FinitePoset& source,
                                                    const FinitePoset& target);

// All poset isomorphisms source -> target (as point maps).
std::vector<std::vector<int>> poset_isomorphisms(const FinitePoset& source,
                                                 const FinitePoset& target);

}  // namespace heyting

#endif
