#include "heyting/interpret.hpp"

namespace heyting {

Mask eval_mask(const Formula& f, const FinitePoset& frame,
               const std::vector<Mask>& valuation) {
  switch (f.kind) {
    case Kind::Bot:
      return 0;
    case Kind::Top:
      return frame.full_mask();
    case Kind::Var:
      if (f.var >= static_cast<int>(valuation.size()))
        throw ArityError("unbound variable in evaluation");
      return valuation[f.var];
    case Kind::And:
      return eval_mask(*f.lhs, frame, valuation) & eval_mask(*f.rhs, frame, valuation);
    case Kind::Or:
      return eval_mask(*f.lhs, frame, valuation) | eval_mask(*f.rhs, frame, valuation);
    case Kind::Imp:
      return ha_imp_mask(eval_mask(*f.lhs, frame, valuation),
                         eval_mask(*f.rhs, frame, valuation), frame);
  }
  throw DomainError("unreachable");
}

int eval(const Formula& f, const FiniteHA& a, const std::vector<int>& assignment) {
  std::vector<Mask> valuation;
  valuation.reserve(assignment.size());
  for (int e : assignment) valuation.push_back(a.elem_mask(e));
  return a.index_of(eval_mask(f, a.dual(), valuation));
}

}  // namespace heyting
