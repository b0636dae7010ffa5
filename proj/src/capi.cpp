#include "heyting.h"

#include <cstring>
#include <string>

#include "heyting/json_io.hpp"

using namespace heyting;
using nlohmann::json;

struct heyting_algebra {
  FiniteHA value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
heyting_status guarded(Fn&& fn) {
  try {
    fn();
    return HEYTING_OK;
  } catch (const ParseError& e) {
    g_last_error = e.what();
    return HEYTING_ERR_PARSE;
  } catch (const ArityError& e) {
    g_last_error = e.what();
    return HEYTING_ERR_ARITY;
  } catch (const CapExceeded& e) {
    g_last_error = e.what();
    return HEYTING_ERR_CAP;
  } catch (const DomainError& e) {
    g_last_error = e.what();
    return HEYTING_ERR_DOMAIN;
  } catch (const InternalInconsistency& e) {
    g_last_error = e.what();
    return HEYTING_ERR_INTERNAL;
  } catch (const json::exception& e) {
    g_last_error = e.what();
    return HEYTING_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HEYTING_ERR_INTERNAL;
  }
}

std::vector<int> tuple_from_json_text(const char* text, const FiniteHA& a) {
  json j = json::parse(text);
  std::vector<int> tuple = j.get<std::vector<int>>();
  for (int e : tuple)
    if (e < 0 || e >= a.size()) throw DomainError("tuple element index out of range");
  return tuple;
}

FragmentCaps caps_of(int max_reps) {
  FragmentCaps caps;
  if (max_reps > 0) caps.max_reps = max_reps;
  return caps;
}

HAMorphism morphism_from(const heyting_algebra* src, const heyting_algebra* dst,
                         const char* map_json) {
  auto s = std::make_shared<FiniteHA>(src->value);
  auto t = std::make_shared<FiniteHA>(dst->value);
  HAMorphism h{s, t, {}};
  if (map_json && *map_json) {
    h.map = morphism_map_from_json(json::parse(map_json));
  } else if (src->value.size() == 2) {
    h.map = {t->bot(), t->top()};
  } else {
    throw DomainError("an explicit embedding map is required unless the base is 2-element");
  }
  if (static_cast<int>(h.map.size()) != s->size() || !h.preserves_structure() ||
      !h.injective())
    throw DomainError("map is not an injective morphism");
  return h;
}

}  // namespace

extern "C" {

const char* heyting_last_error(void) { return g_last_error.c_str(); }

void heyting_free_string(char* s) { delete[] s; }

heyting_status heyting_algebra_from_json(const char* text, heyting_algebra** out) {
  return guarded([&] {
    *out = new heyting_algebra{algebra_from_json(json::parse(text))};
  });
}

heyting_status heyting_algebra_upsets_of_poset(const char* poset_json,
                                               heyting_algebra** out) {
  return guarded([&] {
    *out = new heyting_algebra{upsets(poset_from_json(json::parse(poset_json)))};
  });
}

void heyting_algebra_free(heyting_algebra* a) { delete a; }

heyting_status heyting_algebra_to_json(const heyting_algebra* a, char** out) {
  return guarded([&] { *out = dup_string(algebra_to_json(a->value).dump()); });
}

heyting_status heyting_algebra_to_dot(const heyting_algebra* a, char** out) {
  return guarded([&] { *out = dup_string(poset_to_dot(a->value.dual())); });
}

heyting_status heyting_algebra_size(const heyting_algebra* a, int* out) {
  return guarded([&] { *out = a->value.size(); });
}

heyting_status heyting_prove(const char* formula, int vars, int qvars, char** out) {
  return guarded([&] {
    Arity arity{vars, qvars};
    FormulaRef f = parse(formula, arity);
    Verdict v = Prover::global().is_valid(f, arity.total());
    *out = dup_string(verdict_to_json(v, arity).dump());
  });
}

heyting_status heyting_countermodel(const char* formula, int vars, int max_points,
                                    char** out) {
  return guarded([&] {
    Arity arity{vars, 0};
    FormulaRef f = parse(formula, arity);
    auto v = Prover::global().countermodel_search(f, vars, max_points);
    json j;
    if (v)
      j = json{{"found", true},
               {"countermodel", model_to_json(*v->countermodel, v->refuted_at, arity)}};
    else
      j = json{{"found", false}};
    *out = dup_string(j.dump());
  });
}

heyting_status heyting_fragment(int vars, int degree, int max_reps, char** out) {
  return guarded([&] {
    Fragment f = build_fragment(vars, degree, caps_of(max_reps));
    *out = dup_string(fragment_to_json(f).dump());
  });
}

heyting_status heyting_balls(int vars, int degree, int max_reps, char** out) {
  return guarded([&] {
    Fragment f = build_fragment(vars, degree, caps_of(max_reps));
    *out = dup_string(balls_to_json(f, balls(f)).dump());
  });
}

heyting_status heyting_theory(const heyting_algebra* a, const char* tuple, int n,
                              int max_reps, char** out) {
  return guarded([&] {
    std::vector<int> tup = tuple_from_json_text(tuple, a->value);
    Fragment f = build_fragment(static_cast<int>(tup.size()), n, caps_of(max_reps));
    TheoryN t = theory_n(f, a->value, tup);
    Arity arity{f.l, 0};
    json members = json::array();
    for (int i : t.members) members.push_back(print(f.reps[i], arity));
    *out = dup_string(json{{"n", n}, {"members", members}}.dump());
  });
}

heyting_status heyting_similar(const heyting_algebra* a, const char* tuple,
                               const heyting_algebra* a2, const char* tuple2, int n,
                               int max_reps, int* out) {
  return guarded([&] {
    std::vector<int> t1 = tuple_from_json_text(tuple, a->value);
    std::vector<int> t2 = tuple_from_json_text(tuple2, a2->value);
    if (t1.size() != t2.size()) throw ArityError("tuples differ in length");
    Fragment f = build_fragment(static_cast<int>(t1.size()), n, caps_of(max_reps));
    *out = similar_n(f, a->value, t1, a2->value, t2) ? 1 : 0;
  });
}

heyting_status heyting_equiv_sentence(int vars, int n, int max_reps, char** out) {
  return guarded([&] {
    Fragment f = build_fragment(vars, n, caps_of(max_reps));
    Arity arity{vars, 0};
    json pairs = json::array();
    for (const auto& [phi, psi] : equiv_sentence(f))
      pairs.push_back(json{{"phi", print(phi, arity)}, {"psi", print(psi, arity)}});
    *out = dup_string(pairs.dump());
  });
}

heyting_status heyting_yn(const heyting_algebra* a, const char* tuple, int n,
                          int max_reps, char** out) {
  return guarded([&] {
    std::vector<int> tup = tuple_from_json_text(tuple, a->value);
    Fragment f = build_fragment(static_cast<int>(tup.size()), n, caps_of(max_reps));
    std::vector<Ball> bs = balls(f);
    std::vector<int> ys = y_n(bs, a->value, tup);
    Arity arity{f.l, 0};
    json out_balls = json::array();
    for (int i : ys)
      out_balls.push_back(json{{"phi", print(bs[i].phi, arity)},
                               {"psi", print(bs[i].psi, arity)},
                               {"d", bs[i].radius_exponent}});
    *out = dup_string(out_balls.dump());
  });
}

heyting_status heyting_h_index(const heyting_algebra* a, int vars, int degree,
                               int n_max, int max_reps, char** out) {
  return guarded([&] {
    auto h = h_index(a->value, vars, degree, n_max, caps_of(max_reps));
    json j = h ? json{{"h", *h}} : json{{"h", nullptr}, {"n_max", n_max}};
    *out = dup_string(j.dump());
  });
}

heyting_status heyting_emit_fc(int vars, int degree, int n, int max_reps, char** out) {
  return guarded([&] {
    *out = dup_string(emit_fc(vars, degree, n, caps_of(max_reps)));
  });
}

heyting_status heyting_solve_in(const heyting_algebra* a, const char* system_json,
                                const char* tuple, char** out) {
  return guarded([&] {
    System sys = system_from_json(json::parse(system_json));
    std::vector<int> tup = tuple_from_json_text(tuple, a->value);
    auto sol = solve_in(a->value, sys, tup);
    json j = sol ? json{{"solvable", true}, {"solution", *sol}}
                 : json{{"solvable", false}};
    *out = dup_string(j.dump());
  });
}

heyting_status heyting_solve_in_extension(const heyting_algebra* a,
                                          const char* system_json, const char* tuple,
                                          int dual_size_cap, char** out) {
  return guarded([&] {
    System sys = system_from_json(json::parse(system_json));
    auto alg = std::make_shared<FiniteHA>(a->value);
    std::vector<int> tup = tuple_from_json_text(tuple, a->value);
    auto w = solve_in_extension(alg, tup, sys, dual_size_cap);
    json j;
    if (w)
      j = json{{"solvable", true},
               {"extension", algebra_to_json(*w->extension)},
               {"embedding", morphism_to_json(w->embedding)},
               {"solution", w->solution}};
    else
      j = json{{"solvable", false}, {"cap", dual_size_cap}};
    *out = dup_string(j.dump());
  });
}

heyting_status heyting_discriminant(const char* system_json, int radius, int max_reps,
                                    char** out) {
  return guarded([&] {
    System sys = system_from_json(json::parse(system_json));
    DiscriminantReport rep = discriminant_report(sys, radius, caps_of(max_reps));
    *out = dup_string(discriminant_to_json(rep, Arity{sys.arity.l, 0}).dump());
  });
}

heyting_status heyting_decide(const heyting_algebra* a, const char* system_json,
                              const char* tuple, int radius, int max_reps, char** out) {
  return guarded([&] {
    System sys = system_from_json(json::parse(system_json));
    std::vector<int> tup = tuple_from_json_text(tuple, a->value);
    bool yes = decide_by_discriminant(sys, a->value, tup, radius, caps_of(max_reps));
    *out = dup_string(json{{"solvable_in_extension", yes}, {"radius", radius}}.dump());
  });
}

heyting_status heyting_stable_radius(const char* system_json, const char* cases_json,
                                     int r_max, int witness_cap, int max_reps,
                                     char** out) {
  return guarded([&] {
    System sys = system_from_json(json::parse(system_json));
    std::vector<RadiusCase> cases;
    for (const auto& c : json::parse(cases_json)) {
      RadiusCase rc;
      rc.algebra = std::make_shared<FiniteHA>(algebra_from_json(c.at("algebra")));
      rc.p_tuple = c.at("tuple").get<std::vector<int>>();
      cases.push_back(std::move(rc));
    }
    auto r = stable_radius(sys, cases, r_max, witness_cap, caps_of(max_reps));
    json j = r ? json{{"radius", *r}} : json{{"radius", nullptr}, {"r_max", r_max}};
    *out = dup_string(j.dump());
  });
}

heyting_status heyting_kernel_projection_check(const char* t_formula, int vars,
                                               const heyting_algebra* a,
                                               const char* tuple, int degree_cap,
                                               int max_reps, int* out) {
  return guarded([&] {
    Arity arity{vars, 1};
    FormulaRef t = parse(t_formula, arity);
    std::vector<int> tup = tuple_from_json_text(tuple, a->value);
    *out = kernel_projection_check(t, a->value, tup, vars, degree_cap,
                                   caps_of(max_reps))
               ? 1
               : 0;
  });
}

heyting_status heyting_density(const heyting_algebra* a, char** out) {
  return guarded([&] {
    auto c = check_density(a->value);
    json j = c ? json{{"holds", false}, {"counterexample", {c->first, c->second}}}
               : json{{"holds", true}};
    *out = dup_string(j.dump());
  });
}

heyting_status heyting_splitting(const heyting_algebra* a, char** out) {
  return guarded([&] {
    auto c = check_splitting(a->value);
    json j = c ? json{{"holds", false}, {"counterexample", {(*c)[0], (*c)[1], (*c)[2]}}}
               : json{{"holds", true}};
    *out = dup_string(j.dump());
  });
}

heyting_status heyting_codim(const heyting_algebra* a, char** out) {
  return guarded([&] {
    json per = json::array();
    for (int e = 0; e < a->value.size(); ++e) {
      auto c = dual_codim(a->value, e);
      per.push_back(c ? json(*c) : json("inf"));
    }
    json j{{"codim", per}};
    if (!a->value.trivial()) j["dimension"] = dimension(a->value);
    *out = dup_string(j.dump());
  });
}

heyting_status heyting_dimension(const heyting_algebra* a, int* out) {
  return guarded([&] { *out = dimension(a->value); });
}

heyting_status heyting_dfilter(const heyting_algebra* a, int d, char** out) {
  return guarded([&] {
    auto alg = std::make_shared<FiniteHA>(a->value);
    Filter f = d_filter(alg, d);
    json members = json::array();
    for (int e = 0; e < alg->size(); ++e)
      if (f.member[e]) members.push_back(e);
    *out = dup_string(json{{"d", d}, {"members", members}}.dump());
  });
}

heyting_status heyting_lemma_a2(const char* pairs_json, int d, int* out) {
  return guarded([&] {
    std::vector<LemmaA2Pair> pairs;
    for (const auto& p : json::parse(pairs_json)) {
      LemmaA2Pair q;
      q.first = std::make_shared<FiniteHA>(algebra_from_json(p.at("first")));
      q.first_tuple = p.at("first_tuple").get<std::vector<int>>();
      q.second = std::make_shared<FiniteHA>(algebra_from_json(p.at("second")));
      q.second_tuple = p.at("second_tuple").get<std::vector<int>>();
      pairs.push_back(std::move(q));
    }
    *out = check_lemma_a2(pairs, d) ? 1 : 0;
  });
}

heyting_status heyting_amalgamate(const heyting_algebra* base,
                                  const heyting_algebra* left, const char* left_map,
                                  const heyting_algebra* right, const char* right_map,
                                  char** out) {
  return guarded([&] {
    HAMorphism into_left = morphism_from(base, left, left_map);
    HAMorphism into_right = morphism_from(base, right, right_map);
    AmalgamResult am = amalgamate(into_left, into_right);
    json j{{"amalgam", algebra_to_json(*am.amalgam)},
           {"from_left", morphism_to_json(am.from_left)},
           {"from_right", morphism_to_json(am.from_right)}};
    *out = dup_string(j.dump());
  });
}

heyting_status heyting_minimal_extensions(const heyting_algebra* a, int extra_cap,
                                          char** out) {
  return guarded([&] {
    auto alg = std::make_shared<FiniteHA>(a->value);
    json exts = json::array();
    for (const Extension& e : minimal_extensions(alg, extra_cap))
      exts.push_back(json{{"algebra", algebra_to_json(*e.algebra)},
                          {"embedding", morphism_to_json(e.embedding)}});
    *out = dup_string(json{{"within_cap", extra_cap}, {"extensions", exts}}.dump());
  });
}

heyting_status heyting_embed_over(const heyting_algebra* base,
                                  const heyting_algebra* b, const char* b_map,
                                  const heyting_algebra* h, const char* h_map,
                                  char** out) {
  return guarded([&] {
    HAMorphism into_b = morphism_from(base, b, b_map);
    HAMorphism into_h = morphism_from(base, h, h_map);
    auto e = embed_over(into_b, into_h);
    json j = e ? json{{"embeds", true}, {"embedding", morphism_to_json(*e)}}
               : json{{"embeds", false}};
    *out = dup_string(j.dump());
  });
}

heyting_status heyting_build_h0(int level, int ext_cap, int max_dual_points,
                                int max_steps, char** out) {
  return guarded([&] {
    H0Budget budget;
    if (ext_cap > 0) budget.minimal_extension_cap = ext_cap;
    if (max_dual_points > 0) budget.max_dual_points = max_dual_points;
    if (max_steps > 0) budget.max_steps = max_steps;
    H0Level l = build_h0_level(level, budget);
    *out = dup_string(h0_level_to_json(l).dump());
  });
}

}  // extern "C"
