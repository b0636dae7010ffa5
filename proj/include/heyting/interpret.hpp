#ifndef HEYTING_INTERPRET_HPP
#define HEYTING_INTERPRET_HPP

#include <vector>

#include "heyting/algebra.hpp"
#include "heyting/formula.hpp"

namespace heyting {

// Kripke model over a finite frame; valuation[v] is the truth set of
// variable v and must be an up-set (persistence).
struct KripkeModel {
  FinitePoset frame;
  std::vector<Mask> valuation;

  bool wellformed() const {
    for (Mask m : valuation)
      if (!frame.is_upset(m)) return false;
    return true;
  }
};

// Truth set of f in the up-set algebra of `frame`; valuation indexed by
// variable. The same computation evaluates f in upsets(frame).
Mask eval_mask(const Formula& f, const FinitePoset& frame,
               const std::vector<Mask>& valuation);

// Value of f in A at the assignment (element indices).
int eval(const Formula& f, const FiniteHA& a, const std::vector<int>& assignment);

}  // namespace heyting

#endif
