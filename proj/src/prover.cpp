#include "heyting/prover.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace heyting {

namespace {
constexpr int kBotId = 0;
constexpr int kTopId = 1;
}  // namespace

Prover& Prover::global() {
  static Prover p;
  return p;
}

int Prover::intern_node(Kind k, int var, int lhs, int rhs) {
  if (nodes_.empty()) {
    nodes_.push_back({Kind::Bot, -1, -1, -1});
    nodes_.push_back({Kind::Top, -1, -1, -1});
    node_ids_[nodes_[0]] = kBotId;
    node_ids_[nodes_[1]] = kTopId;
  }
  Node n{k, var, lhs, rhs};
  auto it = node_ids_.find(n);
  if (it != node_ids_.end()) return it->second;
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back(n);
  node_ids_[n] = id;
  return id;
}

int Prover::intern(const FormulaRef& f) {
  switch (f->kind) {
    case Kind::Bot:
      return intern_node(Kind::Bot, -1, -1, -1);
    case Kind::Top:
      return intern_node(Kind::Top, -1, -1, -1);
    case Kind::Var:
      return intern_node(Kind::Var, f->var, -1, -1);
    default: {
      int l = intern(f->lhs);
      int r = intern(f->rhs);
      return intern_node(f->kind, -1, l, r);
    }
  }
}

namespace {

void insert_sorted(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

bool contains(const std::vector<int>& v, int x) {
  return std::binary_search(v.begin(), v.end(), x);
}

void erase_at(std::vector<int>& v, std::size_t i) { v.erase(v.begin() + i); }

std::string sequent_key(const std::vector<int>& gamma, int goal) {
  std::string key;
  key.reserve(gamma.size() * sizeof(int) + sizeof(int));
  for (int g : gamma) key.append(reinterpret_cast<const char*>(&g), sizeof(int));
  key.push_back('|');
  key.append(reinterpret_cast<const char*>(&goal), sizeof(int));
  return key;
}

}  // namespace

// G4ip. Antecedents are kept as a sorted id set; the left rules for
// implication dispatch on the shape of the antecedent's own antecedent,
// which is what makes the calculus contraction-free.
bool Prover::decide(std::vector<int> gamma, int goal) {
  ++queries_;
  // saturation: invertible, non-branching steps
  bool changed = true;
  while (changed) {
    changed = false;
    if (goal == kTopId) return true;
    if (contains(gamma, kBotId)) return true;
    if (contains(gamma, goal)) return true;
    if (nodes_[goal].kind == Kind::Imp) {
      insert_sorted(gamma, nodes_[goal].lhs);
      goal = nodes_[goal].rhs;
      changed = true;
      continue;
    }
    for (std::size_t i = 0; i < gamma.size(); ++i) {
      const Node n = nodes_[gamma[i]];
      if (n.kind == Kind::Top) {
        erase_at(gamma, i);
        changed = true;
        break;
      }
      if (n.kind == Kind::And) {
        erase_at(gamma, i);
        insert_sorted(gamma, n.lhs);
        insert_sorted(gamma, n.rhs);
        changed = true;
        break;
      }
      if (n.kind != Kind::Imp) continue;
      const Node l = nodes_[n.lhs];
      if (l.kind == Kind::Bot) {
        erase_at(gamma, i);
        changed = true;
        break;
      }
      if (l.kind == Kind::Top) {
        erase_at(gamma, i);
        insert_sorted(gamma, n.rhs);
        changed = true;
        break;
      }
      if (l.kind == Kind::And) {
        int curried = intern_node(Kind::Imp, -1, l.rhs, n.rhs);
        curried = intern_node(Kind::Imp, -1, l.lhs, curried);
        erase_at(gamma, i);
        insert_sorted(gamma, curried);
        changed = true;
        break;
      }
      if (l.kind == Kind::Or) {
        int a = intern_node(Kind::Imp, -1, l.lhs, n.rhs);
        int b = intern_node(Kind::Imp, -1, l.rhs, n.rhs);
        erase_at(gamma, i);
        insert_sorted(gamma, a);
        insert_sorted(gamma, b);
        changed = true;
        break;
      }
      if (l.kind == Kind::Var && contains(gamma, n.lhs)) {
        erase_at(gamma, i);
        insert_sorted(gamma, n.rhs);
        changed = true;
        break;
      }
    }
  }

  std::string key = sequent_key(gamma, goal);
  auto memo = memo_.find(key);
  if (memo != memo_.end()) return memo->second;
  // guard against re-entrancy on the same sequent along a branch; G4ip
  // terminates regardless, this only spares duplicated work
  bool result = false;

  const Node g = nodes_[goal];
  if (g.kind == Kind::And) {
    result = decide(gamma, g.lhs) && decide(gamma, g.rhs);
    memo_[key] = result;
    return result;
  }
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (nodes_[gamma[i]].kind != Kind::Or) continue;
    const Node n = nodes_[gamma[i]];
    std::vector<int> left = gamma, right = gamma;
    erase_at(left, i);
    erase_at(right, i);
    insert_sorted(left, n.lhs);
    insert_sorted(right, n.rhs);
    result = decide(std::move(left), goal) && decide(std::move(right), goal);
    memo_[key] = result;
    return result;
  }

  // choice points
  if (g.kind == Kind::Or) {
    if (decide(gamma, g.lhs) || decide(gamma, g.rhs)) {
      memo_[key] = true;
      return true;
    }
  }
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const Node n = nodes_[gamma[i]];
    if (n.kind != Kind::Imp) continue;
    const Node l = nodes_[n.lhs];
    if (l.kind != Kind::Imp) continue;
    // antecedent (c -> d) -> e
    std::vector<int> first = gamma, second = gamma;
    erase_at(first, i);
    erase_at(second, i);
    insert_sorted(first, intern_node(Kind::Imp, -1, l.rhs, n.rhs));
    insert_sorted(second, n.rhs);
    if (decide(std::move(first), n.lhs) && decide(std::move(second), goal)) {
      memo_[key] = true;
      return true;
    }
  }
  memo_[key] = false;
  return false;
}

bool Prover::valid(const FormulaRef& f) {
  std::lock_guard<std::mutex> lock(mutex_);
  return decide({}, intern(f));
}

bool Prover::entails(const FormulaRef& t, const FormulaRef& s) {
  std::lock_guard<std::mutex> lock(mutex_);
  return decide({intern(t)}, intern(s));
}

bool Prover::equivalent(const FormulaRef& t, const FormulaRef& s) {
  std::lock_guard<std::mutex> lock(mutex_);
  int ti = intern(t), si = intern(s);
  return decide({ti}, si) && decide({si}, ti);
}

std::optional<Verdict> Prover::countermodel_search(const FormulaRef& f, int vars,
                                                   int max_points) {
  for (int n = 1; n <= max_points; ++n) {
    for (const FinitePoset& p : enumerate_posets(n)) {
      std::vector<Mask> upsets = p.all_upsets();
      std::vector<std::size_t> pick(static_cast<std::size_t>(std::max(vars, 0)), 0);
      while (true) {
        std::vector<Mask> valuation(pick.size());
        for (std::size_t v = 0; v < pick.size(); ++v) valuation[v] = upsets[pick[v]];
        Mask truth = eval_mask(*f, p, valuation);
        if (truth != p.full_mask()) {
          Verdict v;
          v.valid = false;
          v.countermodel = KripkeModel{p, valuation};
          for (int x = 0; x < p.size(); ++x)
            if (!(truth & bit(x))) {
              v.refuted_at = x;
              break;
            }
          return v;
        }
        // odometer over valuations
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
          if (++pick[i] < upsets.size()) break;
          pick[i] = 0;
        }
        if (i == pick.size()) break;
        if (pick.empty()) break;
      }
    }
  }
  return std::nullopt;
}

std::optional<Verdict> Prover::canonical_countermodel(const FormulaRef& f, int vars) {
  std::unique_lock<std::mutex> lock(mutex_);
  int root = intern(f);
  // subformula closure
  std::vector<int> sub;
  {
    std::set<int> seen;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      if (!seen.insert(id).second) continue;
      const Node& n = nodes_[id];
      if (n.lhs >= 0) {
        stack.push_back(n.lhs);
        stack.push_back(n.rhs);
      }
    }
    sub.assign(seen.begin(), seen.end());
  }
  if (sub.size() > 14) return std::nullopt;
  const int bot = intern_node(Kind::Bot, -1, -1, -1);

  // worlds: consistent, deductively closed, prime subsets of the closure
  std::set<std::uint32_t> worlds;
  std::uint32_t all = (1u << sub.size()) - 1;
  for (std::uint32_t s = 0; s <= all; ++s) {
    std::vector<int> gamma;
    for (std::size_t i = 0; i < sub.size(); ++i)
      if (s & (1u << i)) gamma.push_back(sub[i]);
    std::sort(gamma.begin(), gamma.end());
    if (decide(gamma, bot)) continue;
    std::uint32_t closure = 0;
    for (std::size_t i = 0; i < sub.size(); ++i)
      if (decide(gamma, sub[i])) closure |= 1u << i;
    bool prime = true;
    for (std::size_t i = 0; i < sub.size() && prime; ++i) {
      if (!(closure & (1u << i))) continue;
      const Node& n = nodes_[sub[i]];
      if (n.kind != Kind::Or) continue;
      auto idx = [&](int id) {
        return std::lower_bound(sub.begin(), sub.end(), id) - sub.begin();
      };
      if (!(closure & (1u << idx(n.lhs))) && !(closure & (1u << idx(n.rhs)))) prime = false;
    }
    if (prime) worlds.insert(closure);
  }
  lock.unlock();

  std::vector<std::uint32_t> ws(worlds.begin(), worlds.end());
  if (ws.size() > 64) return std::nullopt;
  auto root_idx = std::lower_bound(sub.begin(), sub.end(), root) - sub.begin();

  int n = static_cast<int>(ws.size());
  std::vector<Mask> up(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((ws[i] & ~ws[j]) == 0) up[i] |= bit(j);
  FinitePoset frame = FinitePoset::from_up_masks(up);
  std::vector<Mask> valuation(static_cast<std::size_t>(vars), 0);
  {
    std::lock_guard<std::mutex> relock(mutex_);
    for (int v = 0; v < vars; ++v) {
      int vid = intern_node(Kind::Var, v, -1, -1);
      auto it = std::lower_bound(sub.begin(), sub.end(), vid);
      if (it == sub.end() || *it != vid) continue;
      std::size_t vi = static_cast<std::size_t>(it - sub.begin());
      for (int w = 0; w < n; ++w)
        if (ws[w] & (1u << vi)) valuation[static_cast<std::size_t>(v)] |= bit(w);
    }
  }
  for (int w = 0; w < n; ++w) {
    if (ws[w] & (1u << root_idx)) continue;
    // restrict to the points above the refuting world
    Mask keep = frame.up_mask(w);
    std::vector<int> pts;
    for (int x = 0; x < n; ++x)
      if (keep & bit(x)) pts.push_back(x);
    std::vector<Mask> rup(pts.size(), 0);
    for (std::size_t s = 0; s < pts.size(); ++s)
      for (std::size_t t = 0; t < pts.size(); ++t)
        if (frame.leq(pts[s], pts[t])) rup[s] |= bit(static_cast<int>(t));
    KripkeModel m{FinitePoset::from_up_masks(rup), {}};
    m.valuation.resize(static_cast<std::size_t>(vars), 0);
    int at = -1;
    for (std::size_t s = 0; s < pts.size(); ++s) {
      if (pts[s] == w) at = static_cast<int>(s);
      for (int v = 0; v < vars; ++v)
        if (valuation[static_cast<std::size_t>(v)] & bit(pts[s]))
          m.valuation[static_cast<std::size_t>(v)] |= bit(static_cast<int>(s));
    }
    KripkeModel small = bisimulation_collapse(m, at);
    if (!(eval_mask(*f, small.frame, small.valuation) & bit(at))) {
      Verdict v;
      v.valid = false;
      v.countermodel = std::move(small);
      v.refuted_at = at;
      return v;
    }
  }
  return std::nullopt;
}

Verdict Prover::is_valid(const FormulaRef& f, int vars) {
  if (valid(f)) {
    Verdict v;
    v.valid = true;
    return v;
  }
  if (auto v = countermodel_search(f, vars, 4)) {
    // re-check by evaluation before reporting
    if (!(eval_mask(*f, v->countermodel->frame, v->countermodel->valuation) &
          bit(v->refuted_at)))
      return *v;
  }
  if (auto v = canonical_countermodel(f, vars)) return *v;
  throw CapExceeded("formula is invalid but no countermodel was found within caps");
}

KripkeModel bisimulation_collapse(const KripkeModel& m, int& tracked_point) {
  int n = m.frame.size();
  std::vector<int> cls(n, 0);
  // initial split on variable patterns
  {
    std::map<std::vector<bool>, int> ids;
    for (int x = 0; x < n; ++x) {
      std::vector<bool> pat;
      for (Mask v : m.valuation) pat.push_back(v & bit(x));
      auto [it, fresh] = ids.emplace(pat, static_cast<int>(ids.size()));
      cls[x] = it->second;
    }
  }
  while (true) {
    std::map<std::pair<int, std::set<int>>, int> ids;
    std::vector<int> next(n);
    for (int x = 0; x < n; ++x) {
      std::set<int> succ;
      for (int y = 0; y < n; ++y)
        if (m.frame.leq(x, y)) succ.insert(cls[y]);
      auto [it, fresh] = ids.emplace(std::make_pair(cls[x], std::move(succ)),
                                     static_cast<int>(ids.size()));
      next[x] = it->second;
    }
    if (next == cls) break;
    cls = next;
  }
  int k = 1 + *std::max_element(cls.begin(), cls.end());
  std::vector<Mask> up(static_cast<std::size_t>(k), 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (m.frame.leq(x, y)) up[cls[x]] |= bit(cls[y]);
  KripkeModel out;
  try {
    out.frame = FinitePoset::from_up_masks(up);
  } catch (const DomainError&) {
    return m;  // collapse did not yield a poset; keep the original
  }
  out.valuation.assign(m.valuation.size(), 0);
  for (std::size_t v = 0; v < m.valuation.size(); ++v)
    for (int x = 0; x < n; ++x)
      if (m.valuation[v] & bit(x)) out.valuation[v] |= bit(cls[x]);
  tracked_point = cls[tracked_point];
  return out;
}

}  // namespace heyting
