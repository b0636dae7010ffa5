#ifndef HEYTING_FORMULA_HPP
#define HEYTING_FORMULA_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "heyting/errors.hpp"

namespace heyting {

// Variable layout: p-variables take indices 0..l-1, q-variables l..l+m-1.
struct Arity {
  int l = 0;  // p-variables
  int m = 0;  // q-variables
  int total() const { return l + m; }
};

enum class Kind : std::uint8_t { Var, Bot, Top, And, Or, Imp };

class Formula;
using FormulaRef = std::shared_ptr<const Formula>;

// Immutable formula tree. `~x` is surface sugar for `x -> 0`; negation is
// not a node kind, so deg(~p) = 1 falls out of the definition.
class Formula : public std::enable_shared_from_this<Formula> {
 public:
  Kind kind;
  int var = -1;        // Kind::Var only
  FormulaRef lhs, rhs;  // binary nodes only

  static FormulaRef bot();
  static FormulaRef top();
  static FormulaRef variable(int index);
  static FormulaRef conj(FormulaRef a, FormulaRef b);
  static FormulaRef disj(FormulaRef a, FormulaRef b);
  static FormulaRef imp(FormulaRef a, FormulaRef b);
  static FormulaRef neg(FormulaRef a) { return imp(std::move(a), bot()); }

  int degree() const;
  int size() const;  // node count
  int max_var() const;

  bool structurally_equal(const Formula& other) const;

 private:
  Formula(Kind k, int v, FormulaRef a, FormulaRef b)
      : kind(k), var(v), lhs(std::move(a)), rhs(std::move(b)) {}
  friend FormulaRef make_node(Kind, int, FormulaRef, FormulaRef);
  mutable int degree_cache_ = -1;
  mutable int size_cache_ = -1;
};

// Grammar (ASCII, whitespace insignificant):
//   formula := imp
//   imp     := or ("->" imp)?            right associative
//   or      := and ("|" and)*
//   and     := atom ("&" atom)*
//   atom    := "0" | "1" | ident | "~" atom | "(" formula ")"
// Identifiers: p1..pl, and q (when m = 1) or q1..qm.
FormulaRef parse(const std::string& text, Arity arity);

// Canonical text; parse(print(f)) is structurally f.
std::string print(const Formula& f, Arity arity = {16, 16});
std::string print(const FormulaRef& f, Arity arity = {16, 16});

// Simultaneous substitution. `subst` must bind every variable occurring in f.
FormulaRef substitute(const FormulaRef& f,
                      const std::map<int, FormulaRef>& subst);

// Syntactic normalization used by the enumerator: flatten and sort
// associative-commutative chains, drop neutral elements and duplicates,
// collapse on absorbing elements. Never consults the prover.
FormulaRef normalize(const FormulaRef& f);

// All normalized formulas with degree <= d and node count <= size_cap,
// deduplicated on printed form, in a deterministic order.
std::vector<FormulaRef> enumerate_syntactic(Arity arity, int d, int size_cap);

}  // namespace heyting

#endif
