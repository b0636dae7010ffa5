#ifndef HEYTING_FRAGMENT_HPP
#define HEYTING_FRAGMENT_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "heyting/prover.hpp"

namespace heyting {

struct FragmentCaps {
  int max_reps = 5000;
  std::size_t max_prover_queries = 20'000'000;
};

// Canonical representatives of all intuitionistic equivalence classes of
// degree <= d formulas in l variables, with their entailment order. Built by
// closing under one implication layer at a time and deduplicating with the
// prover; class representatives are the smallest discovered equivalent by
// (node count, printed form) whose degree does not exceed the class's layer.
class Fragment {
 public:
  int l = 0, d = 0;
  std::vector<FormulaRef> reps;
  std::vector<int> layer;                // creation layer = minimal degree
  std::vector<std::vector<bool>> leq_;   // entailment among reps

  int size() const { return static_cast<int>(reps.size()); }
  bool leq(int i, int j) const { return leq_[i][j]; }
  int bot() const { return bot_; }
  int top() const { return top_; }
  int meet(int i, int j) const;
  int join(int i, int j) const;
  std::vector<int> join_irreducible_classes() const;

  int bot_ = -1, top_ = -1;
};

Fragment build_fragment(int l, int d, const FragmentCaps& caps = {},
                        Prover& prover = Prover::global());

// A ~_d class of the Esakia space of the free algebra on l variables,
// presented as [[phi]] \ [[psi]] with both formulas of degree <= d.
// Constructed balls are never empty: phi does not entail psi.
struct Ball {
  FormulaRef phi, psi;
  int radius_exponent = 0;
  int phi_class = -1, psi_class = -1;
};

// One ball per prime filter of the fragment lattice: phi the join-irreducible
// generator, psi the matching meet-irreducible (largest element not above
// phi). Pairwise disjoint; cover every realizable type.
std::vector<Ball> balls(const Fragment& frag);

struct TheoryN {
  int n = 0;
  std::vector<int> members;  // fragment class indices evaluating to 1
};

TheoryN theory_n(const Fragment& frag, const FiniteHA& a, const std::vector<int>& tuple);

bool ball_meets_kernel(const Ball& b, const FiniteHA& a, const std::vector<int>& tuple);

// Y_n as a set of ball indices: the radius-2^-n balls meeting the kernel of
// the evaluation morphism (a ~_n-saturated set is a union of balls).
std::vector<int> y_n(const std::vector<Ball>& bs, const FiniteHA& a,
                     const std::vector<int>& tuple);

// ---- semantic route: bounded-bisimulation types on dual posets ----
//
// tau_0(x) = variable pattern; tau_{k+1}(x) = (pattern, {tau_k(y) : y >= x}).
// Interned globally so ids compare across models.
class TypeInterner {
 public:
  struct Entry {
    Mask vars;
    std::vector<int> children;  // sorted (k-1)-type ids
  };
  int intern(Mask vars, std::vector<int> children);
  const Entry& get(int id) const { return entries_[id]; }
  // Th(a) subseteq Th(b) at the entries' level
  bool dominates(int a, int b) const;
  static TypeInterner& global();

 private:
  std::vector<Entry> entries_;
  std::map<std::pair<Mask, std::vector<int>>, int> ids_;
  mutable std::mutex mutex_;
};

// tau_level of every point of the model.
std::vector<int> point_types(const FinitePoset& frame, const std::vector<Mask>& valuation,
                             int level);
// deduplicated sorted type ids realized by the tuple's evaluation model
std::vector<int> realized_types(const FiniteHA& a, const std::vector<int>& tuple,
                                int level);
// Th_level(first) subseteq Th_level(second), decided entirely on the duals
bool theory_leq_semantic(const std::vector<int>& realized_first,
                         const std::vector<int>& realized_second);

// Canonical key for Th_level equality: the dominance-minimal realized types
// (the join of their ball formulas generates the theory filter).
std::vector<int> theory_signature(const FiniteHA& a, const std::vector<int>& tuple,
                                  int level);

// n-similarity = Th_n equality. Computed both from fragment representatives
// and from realized types; disagreement raises InternalInconsistency.
bool similar_n(const Fragment& frag, const FiniteHA& a, const std::vector<int>& tuple,
               const FiniteHA& a2, const std::vector<int>& tuple2);
// the semantic route alone, for levels whose fragment is out of cap reach
bool similar_n_semantic(int n, const FiniteHA& a, const std::vector<int>& tuple,
                        const FiniteHA& a2, const std::vector<int>& tuple2);

// The quantifier-free template deciding ball agreement: the (phi, psi) pairs
// whose biconditional conjunction evaluates criterion (3).
std::vector<std::pair<FormulaRef, FormulaRef>> equiv_sentence(const Fragment& frag);

// Smallest n <= n_max such that n-similar l-tuples of A admit exactly the
// same solvable degree-<= d single-q systems, searching solutions inside A.
std::optional<int> h_index(const FiniteHA& a, int l, int d, int n_max,
                           const FragmentCaps& caps = {},
                           Prover& prover = Prover::global());

// Human-readable forall-exists sentence bounding the (l,d)-index by n.
std::string emit_fc(int l, int d, int n, const FragmentCaps& caps = {},
                    Prover& prover = Prover::global());

}  // namespace heyting

#endif
