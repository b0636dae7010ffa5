#ifndef HEYTING_PROVER_HPP
#define HEYTING_PROVER_HPP

#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "heyting/interpret.hpp"

namespace heyting {

struct Verdict {
  bool valid = false;
  std::optional<KripkeModel> countermodel;
  int refuted_at = -1;  // designated point of the countermodel
};

// Decision procedure for IPC validity, i.e. for order and equality in free
// Heyting algebras. The engine is the contraction-free sequent calculus
// (Dyckhoff's G4ip): terminating without loop checks. Queries are memoized
// on interned sequents; the cache never changes answers.
//
// "Invalid" is only ever reported together with a countermodel that has been
// re-checked by direct evaluation. If no model is found within the resource
// caps, a CapExceeded is thrown instead.
class Prover {
 public:
  bool valid(const FormulaRef& f);
  bool entails(const FormulaRef& t, const FormulaRef& s);
  bool equivalent(const FormulaRef& t, const FormulaRef& s);

  Verdict is_valid(const FormulaRef& f, int vars);

  // Brute force over all frames with <= max_points points (up to iso) and
  // all persistent valuations of `vars` variables. Absence within the bound
  // proves nothing.
  std::optional<Verdict> countermodel_search(const FormulaRef& f, int vars,
                                             int max_points);

  std::size_t query_count() const { return queries_; }

  static Prover& global();

 private:
  struct Node {
    Kind kind;
    int var;
    int lhs, rhs;
    bool operator==(const Node& o) const {
      return kind == o.kind && var == o.var && lhs == o.lhs && rhs == o.rhs;
    }
  };
  struct NodeHash {
    std::size_t operator()(const Node& n) const {
      std::size_t h = static_cast<std::size_t>(n.kind);
      h = h * 1000003u + static_cast<std::size_t>(n.var + 1);
      h = h * 1000003u + static_cast<std::size_t>(n.lhs + 1);
      h = h * 1000003u + static_cast<std::size_t>(n.rhs + 1);
      return h;
    }
  };

  int intern(const FormulaRef& f);
  int intern_node(Kind k, int var, int lhs, int rhs);
  bool decide(std::vector<int> gamma, int goal);

  std::vector<Node> nodes_;
  std::unordered_map<Node, int, NodeHash> node_ids_;
  std::unordered_map<std::string, bool> memo_;
  std::mutex mutex_;
  std::size_t queries_ = 0;

  // fallback model construction over prime saturated subformula sets
  std::optional<Verdict> canonical_countermodel(const FormulaRef& f, int vars);
};

// Quotient by the coarsest partition refinement on (variable pattern,
// successor classes). Preserves the theory of every point.
KripkeModel bisimulation_collapse(const KripkeModel& m, int& tracked_point);

}  // namespace heyting

#endif
