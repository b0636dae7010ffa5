#ifndef HEYTING_SOLVE_HPP
#define HEYTING_SOLVE_HPP

#include <optional>
#include <vector>

#include "heyting/fragment.hpp"

namespace heyting {

// t(p,q) = 1 together with s_k(p,q) != 1 for each k. The degree is the
// maximum of the member degrees.
struct System {
  FormulaRef t;
  std::vector<FormulaRef> s;
  Arity arity;  // l p-variables, m q-variables

  int degree() const;
};

bool eval_system(const System& sys, const FiniteHA& a, const std::vector<int>& p_tuple,
                 const std::vector<int>& q_tuple);

// Exhaustive search over A^m. Exact: absence means no solution in A.
std::optional<std::vector<int>> solve_in(const FiniteHA& a, const System& sys,
                                         const std::vector<int>& p_tuple);

struct ExtensionWitness {
  AlgebraPtr extension;
  HAMorphism embedding;       // A -> extension
  std::vector<int> solution;  // q-tuple in the extension
};

// Bounded FEP search: candidate duals up to dual_size_cap points over the
// subalgebra generated by the parameters, then re-anchored to all of A by
// amalgamation. Absence within the cap proves nothing.
std::optional<ExtensionWitness> solve_in_extension(AlgebraPtr a,
                                                   const std::vector<int>& p_tuple,
                                                   const System& sys, int dual_size_cap);

// One-sided bounded check that the kernel of the evaluation morphism
// contains every degree-<= cap consequence of t in the p-fragment.
bool kernel_projection_check(const FormulaRef& t, const FiniteHA& a,
                             const std::vector<int>& p_tuple, int l, int degree_cap,
                             const FragmentCaps& caps = {},
                             Prover& prover = Prover::global());

struct DiscriminantReport {
  int radius_exponent = 0;
  FormulaRef delta;
  std::vector<FormulaRef> nablas;
  std::vector<int> delta_balls;               // indices into balls(l, r)
  std::vector<std::vector<int>> nabla_balls;  // per constraint
};

// Delta: meet of phi_B -> psi_B over the balls killed by t (t & phi_B <=
// psi_B in the free algebra on (p, q)). Empty meet is 1.
DiscriminantReport discriminant(const FormulaRef& t, int l, int radius_exponent,
                                const FragmentCaps& caps = {},
                                Prover& prover = Prover::global());

// Nabla for one constraint: meet over the balls where t & phi_B is NOT below
// s | psi_B.
FormulaRef codiscriminant(const FormulaRef& t, const FormulaRef& s, int l,
                          int radius_exponent, const FragmentCaps& caps = {},
                          Prover& prover = Prover::global());

// Full report for a single-q system.
DiscriminantReport discriminant_report(const System& sys, int radius_exponent,
                                       const FragmentCaps& caps = {},
                                       Prover& prover = Prover::global());

// Theorem-style verdict at the given radius: Delta(a) = 1 and every
// Nabla(a) != 1. Only meaningful once the radius has stabilized.
bool decide_by_discriminant(const System& sys, const FiniteHA& a,
                            const std::vector<int>& p_tuple, int radius_exponent,
                            const FragmentCaps& caps = {},
                            Prover& prover = Prover::global());

struct RadiusCase {
  AlgebraPtr algebra;
  std::vector<int> p_tuple;
};

// Smallest r <= r_max whose verdicts agree with r+1 on every case and match
// every definitive cross-check (positive witnesses found by the bounded
// extension search at witness_cap).
std::optional<int> stable_radius(const System& sys, const std::vector<RadiusCase>& cases,
                                 int r_max, int witness_cap = 4,
                                 const FragmentCaps& caps = {},
                                 Prover& prover = Prover::global());

}  // namespace heyting

#endif
