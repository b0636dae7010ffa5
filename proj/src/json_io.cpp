#include "heyting/json_io.hpp"

#include <sstream>

namespace heyting {

using nlohmann::json;

json poset_to_json(const FinitePoset& p) {
  json pairs = json::array();
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j)
      if (i != j && p.leq(i, j)) pairs.push_back({i, j});
  return json{{"elements", p.size()}, {"leq", pairs}};
}

FinitePoset poset_from_json(const json& j) {
  if (!j.contains("elements")) throw ParseError("poset JSON needs \"elements\"", 0);
  int n = j.at("elements").get<int>();
  std::vector<std::pair<int, int>> pairs;
  if (j.contains("leq"))
    for (const auto& e : j.at("leq"))
      pairs.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return FinitePoset::from_pairs(n, pairs);
}

json algebra_to_json(const FiniteHA& a) {
  json out{{"poset", poset_to_json(a.dual())}};
  if (!a.generators.empty()) {
    json gens = json::array();
    for (int g : a.generators) {
      json pts = json::array();
      for (int x = 0; x < a.dual().size(); ++x)
        if (a.elem_mask(g) & bit(x)) pts.push_back(x);
      gens.push_back(pts);
    }
    out["generators"] = gens;
  }
  return out;
}

FiniteHA algebra_from_json(const json& j) {
  if (!j.contains("poset")) throw ParseError("algebra JSON needs \"poset\"", 0);
  FinitePoset p = poset_from_json(j.at("poset"));
  FiniteHA a = upsets(p);
  if (j.contains("generators")) {
    for (const auto& g : j.at("generators")) {
      Mask m = 0;
      for (const auto& x : g) m |= bit(x.get<int>());
      if (!p.is_upset(m)) throw DomainError("generator is not an up-set");
      a.generators.push_back(a.index_of(m));
    }
  }
  return a;
}

json system_to_json(const System& s) {
  json sk = json::array();
  for (const auto& f : s.s) sk.push_back(print(f, s.arity));
  return json{{"t", print(s.t, s.arity)},
              {"s", sk},
              {"vars", s.arity.l},
              {"qvars", s.arity.m}};
}

System system_from_json(const json& j) {
  System s;
  s.arity.l = j.at("vars").get<int>();
  s.arity.m = j.at("qvars").get<int>();
  s.t = parse(j.at("t").get<std::string>(), s.arity);
  if (j.contains("s"))
    for (const auto& e : j.at("s")) s.s.push_back(parse(e.get<std::string>(), s.arity));
  return s;
}

json model_to_json(const KripkeModel& m, int refuted_at, Arity arity) {
  json valuation = json::object();
  for (std::size_t v = 0; v < m.valuation.size(); ++v) {
    json pts = json::array();
    for (int x = 0; x < m.frame.size(); ++x)
      if (m.valuation[v] & bit(x)) pts.push_back(x);
    std::string name = static_cast<int>(v) < arity.l
                           ? "p" + std::to_string(v + 1)
                           : (arity.m == 1 ? "q"
                                           : "q" + std::to_string(v - arity.l + 1));
    valuation[name] = pts;
  }
  json out{{"poset", poset_to_json(m.frame)}, {"valuation", valuation}};
  if (refuted_at >= 0) out["refuted_at"] = refuted_at;
  return out;
}

json verdict_to_json(const Verdict& v, Arity arity) {
  json out{{"valid", v.valid}};
  if (v.countermodel) out["countermodel"] = model_to_json(*v.countermodel, v.refuted_at, arity);
  return out;
}

json fragment_to_json(const Fragment& f) {
  Arity arity{f.l, 0};
  json reps = json::array();
  for (const auto& r : f.reps) reps.push_back(print(r, arity));
  json leq = json::array();
  for (int i = 0; i < f.size(); ++i)
    for (int j = 0; j < f.size(); ++j)
      if (i != j && f.leq(i, j)) leq.push_back({i, j});
  return json{{"vars", f.l}, {"degree", f.d}, {"reps", reps}, {"leq", leq}};
}

json balls_to_json(const Fragment& f, const std::vector<Ball>& bs) {
  Arity arity{f.l, 0};
  json out = json::array();
  for (const Ball& b : bs)
    out.push_back(json{{"phi", print(b.phi, arity)},
                       {"psi", print(b.psi, arity)},
                       {"d", b.radius_exponent}});
  return out;
}

json discriminant_to_json(const DiscriminantReport& r, Arity arity) {
  json nablas = json::array();
  for (const auto& n : r.nablas) nablas.push_back(print(n, arity));
  json nabla_balls = json::array();
  for (const auto& v : r.nabla_balls) nabla_balls.push_back(v);
  return json{{"radius", r.radius_exponent},
              {"delta", print(r.delta, arity)},
              {"nablas", nablas},
              {"delta_balls", r.delta_balls},
              {"nabla_balls", nabla_balls}};
}

json morphism_to_json(const HAMorphism& h) { return json{{"map", h.map}}; }

std::vector<int> morphism_map_from_json(const json& j) {
  return j.at("map").get<std::vector<int>>();
}

json h0_level_to_json(const H0Level& level) {
  json log = json::array();
  for (const auto& e : level.log)
    log.push_back(json{{"case", e.case_tag},
                       {"subalgebra", e.subalgebra},
                       {"extension", e.extension},
                       {"amalgam_dual_points", e.amalgam_dual_points}});
  return json{{"level", level.level},
              {"algebra", algebra_to_json(*level.algebra)},
              {"log", log},
              {"complete_within_budget", level.complete_within_budget}};
}

std::string poset_to_dot(const FinitePoset& p) {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n";
  for (int i = 0; i < p.size(); ++i) out << "  n" << i << " [label=\"" << i << "\"];\n";
  for (int i = 0; i < p.size(); ++i) {
    Mask cov = p.covers(i);
    for (int j = 0; j < p.size(); ++j)
      if (cov & bit(j)) out << "  n" << i << " -> n" << j << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace heyting
