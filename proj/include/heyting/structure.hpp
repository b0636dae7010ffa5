#ifndef HEYTING_STRUCTURE_HPP
#define HEYTING_STRUCTURE_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "heyting/algebra.hpp"

namespace heyting {

// b >> a iff b -> a = a and b >= a. A strict order on A \ {1}; 1 >> a holds
// for every a, including a = 1.
bool strong_order(const FiniteHA& a, int b, int x);

// All (a, c) with c >> a != 1 admitting no b != 1 with c >> b >> a; empty
// result means the Density axiom holds. Returns the first counterexample.
std::optional<std::pair<int, int>> check_density(const FiniteHA& a);

// Splitting axiom: for b1 & b2 >> x != 1 there must be a1, a2 != 1 with
// a2 -> x = a1 <= b1, a1 -> x = a2 <= b2, a1 | a2 = b1 | b2. Returns a
// violating (x, b1, b2) if any.
std::optional<std::array<int, 3>> check_splitting(const FiniteHA& a);

// Longest chain a >= x_d >> ... >> x_0 inside A \ {1}; nullopt encodes the
// infinite co-dimension of the top element.
std::optional<int> dual_codim(const FiniteHA& a, int elem);

// dA: the elements of dual co-dimension > d. Always a filter.
Filter d_filter(AlgebraPtr a, int d);

// Height of the prime filter spectrum; rejects the trivial algebra.
int dimension(const FiniteHA& a);

struct LemmaA2Pair {
  AlgebraPtr first;
  std::vector<int> first_tuple;
  AlgebraPtr second;
  std::vector<int> second_tuple;
};

// With n = 2d+1: every pair whose tuples are n-similar must have generated
// subalgebras isomorphic over the tuple map. Returns true iff no violation;
// each pair's first algebra must generate within dimension <= d.
bool check_lemma_a2(const std::vector<LemmaA2Pair>& pairs, int d);

struct H0Budget {
  int minimal_extension_cap = 1;  // extra dual points per minimal extension
  int max_dual_points = 12;       // amalgam growth bound
  int max_steps = 64;             // (A_i, B_ij) folds per level
};

struct H0LogEntry {
  int case_tag = 0;  // 1, 2, 3 following the three-way induction step
  std::string subalgebra;
  std::string extension;
  int amalgam_dual_points = 0;
};

struct H0Level {
  int level = 0;
  AlgebraPtr algebra;
  HAMorphism previous_inclusion;  // level n-1 -> level n (identity at 0)
  std::vector<H0LogEntry> log;
  bool complete_within_budget = true;
  // subalgebra/extension pairs folded in, for replayable certification
  std::vector<std::pair<Extension, Extension>> certified;
};

// Level 0 is the two-element algebra. The step into level n folds, for every
// subalgebra A_i of the previous level with at most n join-irreducibles,
// representatives of its minimal proper finite extensions (within the
// budget's cap) into the chain by amalgamation, keeping the generated
// subalgebra each time.
H0Level build_h0_level(int n, const H0Budget& budget = {});

// All subalgebras of a (as embeddings), deduplicated by element set.
std::vector<SubalgebraResult> all_subalgebras(AlgebraPtr a);

}  // namespace heyting

#endif
