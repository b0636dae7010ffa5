#include "heyting/solve.hpp"

#include <algorithm>
#include <map>

namespace heyting {

int System::degree() const {
  int d = t->degree();
  for (const auto& sk : s) d = std::max(d, sk->degree());
  return d;
}

bool eval_system(const System& sys, const FiniteHA& a, const std::vector<int>& p_tuple,
                 const std::vector<int>& q_tuple) {
  if (static_cast<int>(p_tuple.size()) != sys.arity.l ||
      static_cast<int>(q_tuple.size()) != sys.arity.m)
    throw ArityError("system arity mismatch");
  std::vector<int> assignment = p_tuple;
  assignment.insert(assignment.end(), q_tuple.begin(), q_tuple.end());
  if (eval(*sys.t, a, assignment) != a.top()) return false;
  for (const auto& sk : sys.s)
    if (eval(*sk, a, assignment) == a.top()) return false;
  return true;
}

std::optional<std::vector<int>> solve_in(const FiniteHA& a, const System& sys,
                                         const std::vector<int>& p_tuple) {
  std::vector<int> q(static_cast<std::size_t>(sys.arity.m), 0);
  if (sys.arity.m == 0) return eval_system(sys, a, p_tuple, q)
                                   ? std::optional<std::vector<int>>(q)
                                   : std::nullopt;
  while (true) {
    if (eval_system(sys, a, p_tuple, q)) return q;
    std::size_t i = 0;
    for (; i < q.size(); ++i) {
      if (++q[i] < a.size()) break;
      q[i] = 0;
    }
    if (i == q.size()) return std::nullopt;
  }
}

std::optional<ExtensionWitness> solve_in_extension(AlgebraPtr a,
                                                   const std::vector<int>& p_tuple,
                                                   const System& sys, int dual_size_cap) {
  if (static_cast<int>(p_tuple.size()) != sys.arity.l)
    throw ArityError("system arity mismatch");
  // a solution inside A short-circuits to the identity extension
  if (auto inside = solve_in(*a, sys, p_tuple)) {
    ExtensionWitness w;
    w.extension = a;
    w.embedding = HAMorphism::identity(a);
    w.solution = *inside;
    return w;
  }
  SubalgebraResult core = generated_subalgebra(a, p_tuple);
  // parameters as elements of the generated subalgebra
  std::vector<int> core_tuple(p_tuple.size());
  for (std::size_t i = 0; i < p_tuple.size(); ++i) {
    int found = -1;
    for (int e = 0; e < core.algebra->size(); ++e)
      if (core.inclusion.map[e] == p_tuple[i]) found = e;
    core_tuple[i] = found;
  }

  for (int n = core.algebra->dual().size(); n <= dual_size_cap; ++n) {
    for (const FinitePoset& q_poset : enumerate_posets(n)) {
      for (const auto& sigma : surjective_pmorphisms(q_poset, core.algebra->dual())) {
        auto ext = std::make_shared<FiniteHA>(FiniteHA::upsets_of(q_poset));
        HAMorphism emb{core.algebra, ext, std::vector<int>(core.algebra->size(), -1)};
        for (int e = 0; e < core.algebra->size(); ++e) {
          Mask m = 0;
          for (int x = 0; x < q_poset.size(); ++x)
            if (core.algebra->elem_mask(e) & bit(sigma[x])) m |= bit(x);
          emb.map[e] = ext->index_of(m);
        }
        std::vector<int> mapped(core_tuple.size());
        for (std::size_t i = 0; i < core_tuple.size(); ++i)
          mapped[i] = emb.map[core_tuple[i]];
        auto sol = solve_in(*ext, sys, mapped);
        if (!sol) continue;

        // re-anchor the witness over all of A by amalgamating with the
        // inclusion of the generated subalgebra
        AmalgamResult am = amalgamate(core.inclusion, emb);
        ExtensionWitness w;
        w.extension = am.amalgam;
        w.embedding = am.from_left;  // A -> D
        w.solution.resize(sol->size());
        for (std::size_t i = 0; i < sol->size(); ++i)
          w.solution[i] = am.from_right.map[(*sol)[i]];
        std::vector<int> anchored(p_tuple.size());
        for (std::size_t i = 0; i < p_tuple.size(); ++i)
          anchored[i] = w.embedding.map[p_tuple[i]];
        if (!eval_system(sys, *w.extension, anchored, w.solution))
          throw InternalInconsistency("amalgamated witness no longer solves the system");
        return w;
      }
    }
  }
  return std::nullopt;
}

bool kernel_projection_check(const FormulaRef& t, const FiniteHA& a,
                             const std::vector<int>& p_tuple, int l, int degree_cap,
                             const FragmentCaps& caps, Prover& prover) {
  Fragment frag = build_fragment(l, degree_cap, caps, prover);
  for (int i = 0; i < frag.size(); ++i) {
    if (!prover.entails(t, frag.reps[i])) continue;
    if (eval(*frag.reps[i], a, p_tuple) != a.top()) return false;
  }
  return true;
}

DiscriminantReport discriminant(const FormulaRef& t, int l, int radius_exponent,
                                const FragmentCaps& caps, Prover& prover) {
  Fragment frag = build_fragment(l, radius_exponent, caps, prover);
  std::vector<Ball> bs = balls(frag);
  DiscriminantReport rep;
  rep.radius_exponent = radius_exponent;
  FormulaRef delta = Formula::top();
  bool first = true;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (!prover.entails(Formula::conj(t, bs[i].phi), bs[i].psi)) continue;
    rep.delta_balls.push_back(static_cast<int>(i));
    FormulaRef leg = Formula::imp(bs[i].phi, bs[i].psi);
    delta = first ? leg : Formula::conj(delta, leg);
    first = false;
  }
  rep.delta = delta;
  return rep;
}

FormulaRef codiscriminant(const FormulaRef& t, const FormulaRef& s, int l,
                          int radius_exponent, const FragmentCaps& caps, Prover& prover) {
  Fragment frag = build_fragment(l, radius_exponent, caps, prover);
  std::vector<Ball> bs = balls(frag);
  FormulaRef nabla = Formula::top();
  bool first = true;
  for (const Ball& b : bs) {
    if (prover.entails(Formula::conj(t, b.phi), Formula::disj(s, b.psi))) continue;
    FormulaRef leg = Formula::imp(b.phi, b.psi);
    nabla = first ? leg : Formula::conj(nabla, leg);
    first = false;
  }
  return nabla;
}

DiscriminantReport discriminant_report(const System& sys, int radius_exponent,
                                       const FragmentCaps& caps, Prover& prover) {
  if (sys.arity.m != 1)
    throw DomainError("the discriminant route handles a single existential variable");
  int l = sys.arity.l;
  Fragment frag = build_fragment(l, radius_exponent, caps, prover);
  std::vector<Ball> bs = balls(frag);

  DiscriminantReport rep;
  rep.radius_exponent = radius_exponent;
  {
    FormulaRef delta = Formula::top();
    bool first = true;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      if (!prover.entails(Formula::conj(sys.t, bs[i].phi), bs[i].psi)) continue;
      rep.delta_balls.push_back(static_cast<int>(i));
      FormulaRef leg = Formula::imp(bs[i].phi, bs[i].psi);
      delta = first ? leg : Formula::conj(delta, leg);
      first = false;
    }
    rep.delta = delta;
  }
  for (const auto& sk : sys.s) {
    FormulaRef nabla = Formula::top();
    std::vector<int> used;
    bool first = true;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      if (prover.entails(Formula::conj(sys.t, bs[i].phi), Formula::disj(sk, bs[i].psi)))
        continue;
      used.push_back(static_cast<int>(i));
      FormulaRef leg = Formula::imp(bs[i].phi, bs[i].psi);
      nabla = first ? leg : Formula::conj(nabla, leg);
      first = false;
    }
    rep.nablas.push_back(nabla);
    rep.nabla_balls.push_back(std::move(used));
  }
  return rep;
}

bool decide_by_discriminant(const System& sys, const FiniteHA& a,
                            const std::vector<int>& p_tuple, int radius_exponent,
                            const FragmentCaps& caps, Prover& prover) {
  DiscriminantReport rep = discriminant_report(sys, radius_exponent, caps, prover);
  if (eval(*rep.delta, a, p_tuple) != a.top()) return false;
  for (const auto& nabla : rep.nablas)
    if (eval(*nabla, a, p_tuple) == a.top()) return false;
  return true;
}

std::optional<int> stable_radius(const System& sys, const std::vector<RadiusCase>& cases,
                                 int r_max, int witness_cap, const FragmentCaps& caps,
                                 Prover& prover) {
  // definitive positives from the bounded extension search
  std::vector<bool> has_witness(cases.size(), false);
  for (std::size_t i = 0; i < cases.size(); ++i)
    has_witness[i] =
        solve_in_extension(cases[i].algebra, cases[i].p_tuple, sys, witness_cap)
            .has_value();

  std::vector<std::vector<bool>> verdicts;
  for (int r = 0; r <= r_max + 1; ++r) {
    DiscriminantReport rep = discriminant_report(sys, r, caps, prover);
    std::vector<bool> v(cases.size());
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const FiniteHA& a = *cases[i].algebra;
      bool yes = eval(*rep.delta, a, cases[i].p_tuple) == a.top();
      for (const auto& nabla : rep.nablas)
        if (yes && eval(*nabla, a, cases[i].p_tuple) == a.top()) yes = false;
      v[i] = yes;
    }
    verdicts.push_back(std::move(v));
  }
  for (int r = 0; r <= r_max; ++r) {
    if (verdicts[r] != verdicts[r + 1]) continue;
    bool consistent = true;
    for (std::size_t i = 0; i < cases.size() && consistent; ++i)
      if (has_witness[i] && !verdicts[r][i]) consistent = false;
    if (consistent) return r;
  }
  return std::nullopt;
}

}  // namespace heyting
