#include "heyting/fragment.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace heyting {

int Fragment::meet(int i, int j) const {
  int best = -1;
  for (int k = 0; k < size(); ++k)
    if (leq_[k][i] && leq_[k][j] && (best < 0 || leq_[best][k])) best = k;
  return best;
}

int Fragment::join(int i, int j) const {
  int best = -1;
  for (int k = 0; k < size(); ++k)
    if (leq_[i][k] && leq_[j][k] && (best < 0 || leq_[k][best])) best = k;
  return best;
}

std::vector<int> Fragment::join_irreducible_classes() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (i == bot_) continue;
    int acc = bot_;
    for (int j = 0; j < size(); ++j)
      if (j != i && leq_[j][i]) acc = join(acc, j);
    if (acc != i) out.push_back(i);
  }
  return out;
}

namespace {

struct PanelEntry {
  FinitePoset poset;
  std::vector<std::vector<Mask>> valuations;
};

// Small-model panel: cheap semantic fingerprints that bucket candidates
// before any prover call, and refute most non-entailments outright.
std::vector<PanelEntry> make_panel(int l) {
  std::vector<PanelEntry> panel;
  for (int n = 1; n <= 3; ++n)
    for (const FinitePoset& p : enumerate_posets(n)) {
      PanelEntry e{p, {}};
      std::vector<Mask> ups = p.all_upsets();
      std::vector<std::size_t> pick(static_cast<std::size_t>(l), 0);
      while (true) {
        std::vector<Mask> val(pick.size());
        for (std::size_t v = 0; v < pick.size(); ++v) val[v] = ups[pick[v]];
        e.valuations.push_back(val);
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
          if (++pick[i] < ups.size()) break;
          pick[i] = 0;
        }
        if (i == pick.size()) break;
      }
      panel.push_back(std::move(e));
    }
  return panel;
}

struct Builder {
  Prover& prover;
  FragmentCaps caps;
  int l;
  std::size_t base_queries;
  std::vector<PanelEntry> panel;

  std::vector<FormulaRef> reps;
  std::vector<int> layer;
  std::vector<std::vector<Mask>> panel_vals;
  std::map<std::uint64_t, std::vector<int>> buckets;
  std::map<std::string, int> by_print;

  std::vector<Mask> evaluate_panel(const FormulaRef& f) const {
    std::vector<Mask> vals;
    for (const PanelEntry& e : panel)
      for (const auto& v : e.valuations) vals.push_back(eval_mask(*f, e.poset, v));
    return vals;
  }

  static std::uint64_t hash_vals(const std::vector<Mask>& vals) {
    std::uint64_t h = 1469598103934665603ull;
    for (Mask m : vals) {
      h ^= m;
      h *= 1099511628211ull;
    }
    return h;
  }

  void check_budget() const {
    if (prover.query_count() - base_queries > caps.max_prover_queries)
      throw CapExceeded("fragment construction exceeded the prover query cap");
  }

  bool better_rep(const FormulaRef& cand, const FormulaRef& cur) const {
    if (cand->size() != cur->size()) return cand->size() < cur->size();
    return print(cand) < print(cur);
  }

  // Returns the class index of f, creating it at `at_layer` if new.
  int submit(FormulaRef f, int at_layer) {
    f = normalize(f);
    std::string key = print(f);
    auto hit = by_print.find(key);
    if (hit != by_print.end()) return hit->second;
    check_budget();
    std::vector<Mask> vals = evaluate_panel(f);
    std::uint64_t fp = hash_vals(vals);
    for (int id : buckets[fp]) {
      if (panel_vals[id] != vals) continue;
      if (prover.equivalent(f, reps[id])) {
        if (f->degree() <= layer[id] &&
            (reps[id]->degree() > layer[id] || better_rep(f, reps[id])))
          reps[id] = f;
        by_print[key] = id;
        return id;
      }
    }
    if (static_cast<int>(reps.size()) >= caps.max_reps)
      throw CapExceeded("fragment construction exceeded the representative cap");
    int id = static_cast<int>(reps.size());
    reps.push_back(f);
    layer.push_back(at_layer);
    panel_vals.push_back(std::move(vals));
    buckets[fp].push_back(id);
    by_print[key] = id;
    return id;
  }

  void lattice_close(int at_layer) {
    std::size_t done = 0;
    while (done < reps.size()) {
      std::size_t upto = reps.size();
      for (std::size_t i = 0; i < upto; ++i)
        for (std::size_t j = std::max(done, i); j < upto; ++j) {
          submit(Formula::conj(reps[i], reps[j]), at_layer);
          submit(Formula::disj(reps[i], reps[j]), at_layer);
        }
      done = upto;
    }
  }
};

}  // namespace

Fragment build_fragment(int l, int d, const FragmentCaps& caps, Prover& prover) {
  Builder b{prover, caps, l, prover.query_count(), make_panel(l), {}, {}, {}, {}, {}};
  b.submit(Formula::bot(), 0);
  b.submit(Formula::top(), 0);
  for (int v = 0; v < l; ++v) b.submit(Formula::variable(v), 0);
  b.lattice_close(0);
  for (int k = 1; k <= d; ++k) {
    std::size_t upto = b.reps.size();
    for (std::size_t i = 0; i < upto; ++i)
      for (std::size_t j = 0; j < upto; ++j)
        b.submit(Formula::imp(b.reps[i], b.reps[j]), k);
    b.lattice_close(k);
  }

  Fragment frag;
  frag.l = l;
  frag.d = d;
  frag.reps = b.reps;
  frag.layer = b.layer;
  int n = frag.size();
  frag.leq_.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        frag.leq_[i][j] = true;
        continue;
      }
      bool maybe = true;
      for (std::size_t k = 0; k < b.panel_vals[i].size() && maybe; ++k)
        if (!subset(b.panel_vals[i][k], b.panel_vals[j][k])) maybe = false;
      if (!maybe) continue;
      b.check_budget();
      frag.leq_[i][j] = prover.entails(frag.reps[i], frag.reps[j]);
    }
  for (int i = 0; i < n; ++i) {
    if (frag.reps[i]->kind == Kind::Bot) frag.bot_ = i;
    if (frag.reps[i]->kind == Kind::Top) frag.top_ = i;
  }
  if (frag.bot_ < 0 || frag.top_ < 0)
    throw InternalInconsistency("fragment lost its bounds");
  return frag;
}

std::vector<Ball> balls(const Fragment& frag) {
  std::vector<Ball> out;
  for (int i : frag.join_irreducible_classes()) {
    int acc = frag.bot();
    for (int k = 0; k < frag.size(); ++k)
      if (!frag.leq(i, k)) acc = frag.join(acc, k);
    if (frag.leq(i, acc))
      throw InternalInconsistency("constructed an empty ball");
    out.push_back({frag.reps[i], frag.reps[acc], frag.d, i, acc});
  }
  return out;
}

TheoryN theory_n(const Fragment& frag, const FiniteHA& a, const std::vector<int>& tuple) {
  TheoryN t;
  t.n = frag.d;
  for (int i = 0; i < frag.size(); ++i)
    if (eval(*frag.reps[i], a, tuple) == a.top()) t.members.push_back(i);
  return t;
}

bool ball_meets_kernel(const Ball& b, const FiniteHA& a, const std::vector<int>& tuple) {
  return eval(*Formula::imp(b.phi, b.psi), a, tuple) != a.top();
}

std::vector<int> y_n(const std::vector<Ball>& bs, const FiniteHA& a,
                     const std::vector<int>& tuple) {
  std::vector<int> out;
  for (std::size_t i = 0; i < bs.size(); ++i)
    if (ball_meets_kernel(bs[i], a, tuple)) out.push_back(static_cast<int>(i));
  return out;
}

int TypeInterner::intern(Mask vars, std::vector<int> children) {
  std::sort(children.begin(), children.end());
  children.erase(std::unique(children.begin(), children.end()), children.end());
  std::lock_guard<std::mutex> lock(mutex_);
  auto key = std::make_pair(vars, children);
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  int id = static_cast<int>(entries_.size());
  entries_.push_back({vars, std::move(children)});
  ids_.emplace(std::move(key), id);
  return id;
}

bool TypeInterner::dominates(int a, int b) const {
  const Entry& ea = entries_[a];
  const Entry& eb = entries_[b];
  if (!subset(ea.vars, eb.vars)) return false;
  return std::includes(ea.children.begin(), ea.children.end(), eb.children.begin(),
                       eb.children.end());
}

TypeInterner& TypeInterner::global() {
  static TypeInterner t;
  return t;
}

std::vector<int> point_types(const FinitePoset& frame, const std::vector<Mask>& valuation,
                             int level) {
  TypeInterner& interner = TypeInterner::global();
  int n = frame.size();
  std::vector<Mask> pattern(static_cast<std::size_t>(n), 0);
  for (int x = 0; x < n; ++x)
    for (std::size_t v = 0; v < valuation.size(); ++v)
      if (valuation[v] & bit(x)) pattern[x] |= bit(static_cast<int>(v));
  std::vector<int> cur(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) cur[x] = interner.intern(pattern[x], {});
  for (int k = 1; k <= level; ++k) {
    std::vector<int> next(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
      std::vector<int> above;
      for (int y = 0; y < n; ++y)
        if (frame.leq(x, y)) above.push_back(cur[y]);
      next[x] = interner.intern(pattern[x], std::move(above));
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<int> realized_types(const FiniteHA& a, const std::vector<int>& tuple,
                                int level) {
  std::vector<Mask> valuation;
  valuation.reserve(tuple.size());
  for (int e : tuple) valuation.push_back(a.elem_mask(e));
  std::vector<int> types = point_types(a.dual(), valuation, level);
  std::sort(types.begin(), types.end());
  types.erase(std::unique(types.begin(), types.end()), types.end());
  return types;
}

bool theory_leq_semantic(const std::vector<int>& realized_first,
                         const std::vector<int>& realized_second) {
  TypeInterner& interner = TypeInterner::global();
  for (int t2 : realized_second) {
    bool covered = false;
    for (int t1 : realized_first)
      if (interner.dominates(t1, t2)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

bool similar_n_semantic(int n, const FiniteHA& a, const std::vector<int>& tuple,
                        const FiniteHA& a2, const std::vector<int>& tuple2) {
  std::vector<int> r1 = realized_types(a, tuple, n);
  std::vector<int> r2 = realized_types(a2, tuple2, n);
  return theory_leq_semantic(r1, r2) && theory_leq_semantic(r2, r1);
}

bool similar_n(const Fragment& frag, const FiniteHA& a, const std::vector<int>& tuple,
               const FiniteHA& a2, const std::vector<int>& tuple2) {
  TheoryN t1 = theory_n(frag, a, tuple);
  TheoryN t2 = theory_n(frag, a2, tuple2);
  bool by_reps = t1.members == t2.members;
  bool by_types = similar_n_semantic(frag.d, a, tuple, a2, tuple2);
  if (by_reps != by_types)
    throw InternalInconsistency("similarity routes disagree: reps vs realized types");
  return by_reps;
}

std::vector<std::pair<FormulaRef, FormulaRef>> equiv_sentence(const Fragment& frag) {
  std::vector<std::pair<FormulaRef, FormulaRef>> out;
  for (const Ball& b : balls(frag)) out.emplace_back(b.phi, b.psi);
  return out;
}

std::vector<int> theory_signature(const FiniteHA& a, const std::vector<int>& tuple,
                                  int level) {
  TypeInterner& interner = TypeInterner::global();
  std::vector<int> r = realized_types(a, tuple, level);
  std::vector<int> minimal;
  for (int t : r) {
    bool dominated = false;
    for (int s : r)
      if (s != t && interner.dominates(s, t)) {
        dominated = true;
        break;
      }
    if (!dominated) minimal.push_back(t);
  }
  return minimal;
}

namespace {

using SetOfSets = std::set<std::vector<int>>;

// Minimal violation sets: for each witness b of t(a, b) = 1, the set of
// s-classes that evaluate to 1 at b. Solvability of (t, s...) depends only
// on the subset-minimal antichain.
SetOfSets violation_antichain(const Fragment& sys, int t_class, const FiniteHA& a,
                              const std::vector<int>& tuple) {
  std::vector<std::vector<int>> sets;
  for (int b = 0; b < a.size(); ++b) {
    std::vector<int> assignment = tuple;
    assignment.push_back(b);
    if (eval(*sys.reps[t_class], a, assignment) != a.top()) continue;
    std::vector<int> viol;
    for (int s = 0; s < sys.size(); ++s)
      if (eval(*sys.reps[s], a, assignment) == a.top()) viol.push_back(s);
    sets.push_back(std::move(viol));
  }
  SetOfSets minimal;
  for (const auto& v : sets) {
    bool dominated = false;
    for (const auto& w : sets)
      if (w != v && std::includes(v.begin(), v.end(), w.begin(), w.end())) {
        dominated = true;
        break;
      }
    if (!dominated) minimal.insert(v);
  }
  return minimal;
}

}  // namespace

std::optional<int> h_index(const FiniteHA& a, int l, int d, int n_max,
                           const FragmentCaps& caps, Prover& prover) {
  if (l == 0) return 0;
  Fragment sys = build_fragment(l + 1, d, caps, prover);

  std::vector<std::vector<int>> tuples;
  {
    std::vector<int> pick(static_cast<std::size_t>(l), 0);
    while (true) {
      tuples.push_back(pick);
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < a.size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
  }
  std::vector<std::vector<SetOfSets>> profiles;
  profiles.reserve(tuples.size());
  for (const auto& t : tuples) {
    std::vector<SetOfSets> profile;
    profile.reserve(static_cast<std::size_t>(sys.size()));
    for (int tc = 0; tc < sys.size(); ++tc)
      profile.push_back(violation_antichain(sys, tc, a, t));
    profiles.push_back(std::move(profile));
  }
  for (int n = 0; n <= n_max; ++n) {
    std::map<std::vector<int>, std::size_t> groups;
    bool uniform = true;
    for (std::size_t i = 0; i < tuples.size() && uniform; ++i) {
      std::vector<int> sig = theory_signature(a, tuples[i], n);
      auto [it, fresh] = groups.emplace(std::move(sig), i);
      if (!fresh && profiles[it->second] != profiles[i]) uniform = false;
    }
    if (uniform) return n;
  }
  return std::nullopt;
}

namespace {

std::string print_primed(const FormulaRef& f, Arity arity) {
  // primed copies p1'..pl' and q' for the second tuple block
  std::string base = print(f, arity);
  std::string out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    out += base[i];
    if (base[i] == 'p' || base[i] == 'q') {
      std::size_t j = i + 1;
      while (j < base.size() && std::isdigit(static_cast<unsigned char>(base[j]))) {
        out += base[j];
        ++j;
      }
      out += '\'';
      i = j - 1;
    }
  }
  return out;
}

}  // namespace

std::string emit_fc(int l, int d, int n, const FragmentCaps& caps, Prover& prover) {
  Fragment ball_frag = build_fragment(l, n, caps, prover);
  std::vector<Ball> bs = balls(ball_frag);
  Fragment sys = build_fragment(l + 1, d, caps, prover);
  if (sys.size() > 12)
    throw CapExceeded("emit-fc system alphabet too large to serialize");

  Arity pa{l, 0};
  Arity pq{l, 1};
  std::ostringstream out;
  out << "FC[l=" << l << ", d=" << d << ", n=" << n << "] :=\n";
  out << "  with EQUIV(p,p') :=\n";
  for (const Ball& b : bs)
    out << "    [ (" << print(b.phi, pa) << ") <= (" << print(b.psi, pa) << ") <-> ("
        << print_primed(b.phi, pa) << ") <= (" << print_primed(b.psi, pa) << ") ]\n";
  out << "  conjunction over all degree-<=" << d << " systems S(p,q) = [t, s_1..s_k]:\n";

  int block = 0;
  for (int t = 0; t < sys.size(); ++t) {
    for (std::uint32_t sel = 0; sel < (1u << sys.size()); ++sel) {
      ++block;
      out << "  [" << block << "] forall p,p': ( EQUIV(p,p')";
      out << " and exists q': (" << print_primed(sys.reps[t], pq) << ") = 1";
      for (int s = 0; s < sys.size(); ++s)
        if (sel & (1u << s))
          out << " and (" << print_primed(sys.reps[s], pq) << ") != 1";
      out << " ) implies exists q: (" << print(sys.reps[t], pq) << ") = 1";
      for (int s = 0; s < sys.size(); ++s)
        if (sel & (1u << s)) out << " and (" << print(sys.reps[s], pq) << ") != 1";
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace heyting
