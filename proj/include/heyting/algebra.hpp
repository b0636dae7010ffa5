#ifndef HEYTING_ALGEBRA_HPP
#define HEYTING_ALGEBRA_HPP

#include <memory>
#include <optional>
#include <vector>

#include "heyting/poset.hpp"

namespace heyting {

class FiniteHA;
using AlgebraPtr = std::shared_ptr<const FiniteHA>;

// Finite Heyting algebra presented by its dual poset: elements ARE the
// up-sets, sorted by (popcount, value). Index 0 is bottom, the last index is
// top. Keeping the dual as the single source of truth makes -> an O(n^2)
// mask computation and every duality question a poset question.
class FiniteHA {
 public:
  static FiniteHA upsets_of(const FinitePoset& p);
  // Presents an arbitrary finite family of masks that is closed under the
  // Heyting operations of `ambient` as an algebra in its own right, via its
  // join-irreducibles. `family` must be deduplicated. When `ji_out` is given
  // it receives the join-irreducible member masks in dual point order.
  static FiniteHA from_closed_family(const FinitePoset& ambient,
                                     const std::vector<Mask>& family,
                                     std::vector<Mask>* ji_out = nullptr);

  const FinitePoset& dual() const { return dual_; }
  int size() const { return static_cast<int>(elems_.size()); }
  bool trivial() const { return size() == 1; }

  Mask elem_mask(int i) const { return elems_[i]; }
  int index_of(Mask m) const;

  int bot() const { return 0; }
  int top() const { return size() - 1; }
  int meet(int a, int b) const { return index_of(elems_[a] & elems_[b]); }
  int join(int a, int b) const { return index_of(elems_[a] | elems_[b]); }
  int imp(int a, int b) const;
  int neg(int a) const { return imp(a, bot()); }
  bool leq(int a, int b) const { return subset(elems_[a], elems_[b]); }

  // Join-irreducible elements in element order; each is a principal up-set
  // of the dual, so they are in bijection with dual points.
  std::vector<int> join_irreducibles() const;
  // ji_point[i]: the dual point whose principal up-set is element i (or -1).
  int ji_point(int elem) const;
  // element index of the principal up-set of dual point x
  int point_element(int x) const;

  bool isomorphic_to(const FiniteHA& other) const {
    return dual_.isomorphic_to(other.dual_);
  }

  // Distinguished generator tuple (element indices), when the algebra
  // carries one.
  std::vector<int> generators;

 private:
  FinitePoset dual_;
  std::vector<Mask> elems_;
};

// The dual computation of ->: {x : up(x) & a subseteq b}.
Mask ha_imp_mask(Mask a, Mask b, const FinitePoset& p);

FiniteHA upsets(const FinitePoset& p);
FinitePoset join_irreducibles_poset(const FiniteHA& a);

struct HAMorphism {
  AlgebraPtr source, target;
  std::vector<int> map;  // element index -> element index

  bool preserves_structure() const;
  bool injective() const;
  int operator()(int e) const { return map[e]; }
  static HAMorphism identity(AlgebraPtr a);
};

HAMorphism compose(const HAMorphism& f, const HAMorphism& g);  // g after f

struct PMorphism {
  FinitePoset source, target;
  std::vector<int> map;
};

struct Filter {
  AlgebraPtr algebra;
  std::vector<bool> member;

  bool contains(int e) const { return member[e]; }
  bool is_filter() const;
  bool is_prime() const;
  // meet of all members (a filter in a finite algebra is principal)
  int principal_generator() const;
  static Filter principal(AlgebraPtr a, int generator);
};

std::vector<Filter> prime_filters(AlgebraPtr a);
Filter filter_kernel(const HAMorphism& f);

// Restriction of prime filters along an injective morphism h : A -> B,
// as a point map dual(B) -> dual(A).
std::vector<int> dual_point_map(const HAMorphism& h);

struct SubalgebraResult {
  AlgebraPtr algebra;
  HAMorphism inclusion;  // algebra -> parent
};
SubalgebraResult generated_subalgebra(AlgebraPtr a, const std::vector<int>& gens);

struct QuotientResult {
  AlgebraPtr algebra;
  HAMorphism projection;  // parent -> quotient
};
QuotientResult quotient_by_filter(AlgebraPtr a, const Filter& i);

// Fact-of-life for morphism factorisation: if fker(f) contains i, the unique
// g with f = g . projection; otherwise nullopt.
std::optional<HAMorphism> factor_through(const HAMorphism& f, const Filter& i,
                                         const QuotientResult& q);

struct AmalgamResult {
  AlgebraPtr amalgam;
  HAMorphism from_left;   // B -> D
  HAMorphism from_right;  // C -> D
};
// Pushout-style amalgam over the common subalgebra: D is the up-set algebra
// of the fiber product of the dual surjections. Inputs must be injective.
AmalgamResult amalgamate(const HAMorphism& into_left, const HAMorphism& into_right);

struct Extension {
  AlgebraPtr algebra;
  HAMorphism embedding;  // A -> algebra
};

// Proper extensions B of A whose dual has at most |dual(A)| + extra_points_cap
// points and which admit no intermediate subalgebra, deduplicated up to
// isomorphism over A. Complete only within the cap.
std::vector<Extension> minimal_extensions(AlgebraPtr a, int extra_points_cap);

// An embedding B -> H restricting to the identity on A, if one exists.
// Found by backtracking over dual point images.
std::optional<HAMorphism> embed_over(const HAMorphism& a_into_b,
                                     const HAMorphism& a_into_h);

// Isomorphism B -> B' commuting with the given embeddings of A, if any.
bool isomorphic_over(const HAMorphism& a_into_b, const HAMorphism& a_into_b2);

}  // namespace heyting

#endif
