// hwb: command line front end for the Heyting workbench shared library.
// All algebra work goes through the C API in heyting.h; this file only
// parses arguments, loads files, and renders results.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "heyting.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct AlgebraHandle {
  heyting_algebra* ptr = nullptr;
  ~AlgebraHandle() { heyting_algebra_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { heyting_free_string(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

[[noreturn]] void die(heyting_status status) {
  std::cerr << "error: " << heyting_last_error() << " (status " << status << ")\n";
  std::exit(2);
}

void check(heyting_status status) {
  if (status != HEYTING_OK) die(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    std::exit(2);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void load_algebra(const std::string& path, AlgebraHandle& out) {
  check(heyting_algebra_from_json(slurp(path).c_str(), &out.ptr));
}

// Infer (vars, qvars) from the identifiers appearing in a formula string.
void infer_arity(const std::string& text, int& vars, int& qvars) {
  int l = 0, m = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'p' && text[i] != 'q') continue;
    std::size_t j = i + 1;
    std::string digits;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
      digits += text[j++];
    if (text[i] == 'p' && !digits.empty())
      l = std::max(l, std::stoi(digits));
    else if (text[i] == 'q')
      m = std::max(m, digits.empty() ? 1 : std::stoi(digits));
    i = j - 1;
  }
  if (vars < 0) vars = l;
  if (qvars < 0) qvars = m;
}

std::string verdict_system_line(const json& j, int cap) {
  if (j.at("solvable").get<bool>()) {
    json witness{{"extension", j.value("extension", json())},
                 {"solution", j.at("solution")}};
    if (j.contains("embedding")) witness["embedding"] = j.at("embedding");
    return "SOLVABLE witness=" + witness.dump();
  }
  return "UNSOLVED-WITHIN-CAP cap=" + std::to_string(cap);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heyting workbench: finite duality, IPC prover, fragments, "
               "solvability and structure checkers"};
  app.require_subcommand(1);

  bool as_json = false;
  int jobs = 1;
  unsigned seed = 0;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--jobs", jobs, "worker pool size (searches are deterministic)");
  app.add_option("--seed", seed, "seed for randomized searches (none are randomized)");

  // ---- prove ----
  std::string formula;
  int vars = -1, qvars = -1, max_points = 5, degree = 0, nlevel = 0, radius = 0;
  int max_reps = 0, cap = 0, dcap = 0, nmax = 3, extra_cap = 1;
  auto* prove = app.add_subcommand("prove", "decide IPC validity");
  prove->add_option("formula", formula)->required();
  prove->add_option("--vars", vars);
  prove->add_option("--qvars", qvars);

  auto* counter = app.add_subcommand("countermodel", "brute-force countermodel search");
  counter->add_option("formula", formula)->required();
  counter->add_option("--vars", vars);
  counter->add_option("--max-points", max_points);

  auto* fragment = app.add_subcommand("fragment", "degree-bounded fragment");
  fragment->add_option("--vars", vars)->required();
  fragment->add_option("--degree", degree)->required();
  fragment->add_option("--max-reps", max_reps);

  auto* balls_cmd = app.add_subcommand("balls", "balls of one radius");
  balls_cmd->add_option("--vars", vars)->required();
  balls_cmd->add_option("--degree", degree)->required();
  balls_cmd->add_option("--max-reps", max_reps);

  std::string algebra_path, algebra2_path, tuple_text, tuple2_text, system_path;
  auto* theory = app.add_subcommand("theory", "Th_n of a tuple");
  theory->add_option("--algebra", algebra_path)->required();
  theory->add_option("--tuple", tuple_text)->required();
  theory->add_option("--n", nlevel)->required();
  theory->add_option("--max-reps", max_reps);

  auto* similar = app.add_subcommand("similar", "n-similarity of two tuples");
  similar->add_option("--algebra", algebra_path)->required();
  similar->add_option("--tuple", tuple_text)->required();
  similar->add_option("--algebra2", algebra2_path)->required();
  similar->add_option("--tuple2", tuple2_text)->required();
  similar->add_option("--n", nlevel)->required();
  similar->add_option("--max-reps", max_reps);

  auto* equiv = app.add_subcommand("equiv", "EQUIV template ball pairs");
  equiv->add_option("--vars", vars)->required();
  equiv->add_option("--n", nlevel)->required();
  equiv->add_option("--max-reps", max_reps);

  auto* yn = app.add_subcommand("yn", "balls meeting the evaluation kernel");
  yn->add_option("--algebra", algebra_path)->required();
  yn->add_option("--tuple", tuple_text)->required();
  yn->add_option("--n", nlevel)->required();
  yn->add_option("--max-reps", max_reps);

  auto* hindex = app.add_subcommand("hindex", "(l,d)-index of a finite algebra");
  hindex->add_option("--algebra", algebra_path)->required();
  hindex->add_option("--vars", vars)->required();
  hindex->add_option("--degree", degree)->required();
  hindex->add_option("--n-max", nmax);
  hindex->add_option("--max-reps", max_reps);

  auto* emitfc = app.add_subcommand("emit-fc", "forall-exists index-bound sentence");
  emitfc->add_option("--vars", vars)->required();
  emitfc->add_option("--degree", degree)->required();
  emitfc->add_option("--n", nlevel)->required();
  emitfc->add_option("--max-reps", max_reps);

  auto* solve = app.add_subcommand("solve", "solve a system over a tuple");
  solve->add_option("--algebra", algebra_path)->required();
  solve->add_option("--system", system_path)->required();
  solve->add_option("--tuple", tuple_text);
  solve->add_option("--cap", cap, "search extensions up to this dual size");

  auto* solve_ext = app.add_subcommand("solve-ext", "bounded extension search");
  solve_ext->add_option("--algebra", algebra_path)->required();
  solve_ext->add_option("--system", system_path)->required();
  solve_ext->add_option("--tuple", tuple_text);
  solve_ext->add_option("--cap", dcap)->required();

  auto* disc = app.add_subcommand("discriminant", "discriminant / co-discriminants");
  disc->add_option("--system", system_path)->required();
  disc->add_option("--radius", radius)->required();
  disc->add_option("--max-reps", max_reps);

  auto* decide = app.add_subcommand("decide", "discriminant verdict at a radius");
  decide->add_option("--algebra", algebra_path)->required();
  decide->add_option("--system", system_path)->required();
  decide->add_option("--tuple", tuple_text);
  decide->add_option("--radius", radius)->required();
  decide->add_option("--max-reps", max_reps);

  std::string cases_path;
  int rmax = 3, witness_cap = 4;
  auto* stable = app.add_subcommand("stable-radius", "empirical radius stabilization");
  stable->add_option("--system", system_path)->required();
  stable->add_option("--cases", cases_path)->required();
  stable->add_option("--r-max", rmax);
  stable->add_option("--witness-cap", witness_cap);
  stable->add_option("--max-reps", max_reps);

  auto* density = app.add_subcommand("density", "Density axiom check");
  density->add_option("--algebra", algebra_path)->required();
  auto* splitting = app.add_subcommand("splitting", "Splitting axiom check");
  splitting->add_option("--algebra", algebra_path)->required();

  auto* codim = app.add_subcommand("codim", "dual co-dimension table");
  codim->add_option("--algebra", algebra_path)->required();
  auto* dim = app.add_subcommand("dimension", "height of the prime spectrum");
  dim->add_option("--algebra", algebra_path)->required();
  int dlevel = 0;
  auto* dfilter = app.add_subcommand("dfilter", "elements of co-dimension > d");
  dfilter->add_option("--algebra", algebra_path)->required();
  dfilter->add_option("--d", dlevel)->required();

  std::string pairs_path;
  auto* lemma = app.add_subcommand("lemma-a2", "similarity vs generated isomorphism");
  lemma->add_option("--pairs", pairs_path)->required();
  lemma->add_option("--d", dlevel)->required();

  std::string base_path, left_path, right_path, left_map, right_map;
  auto* amalg = app.add_subcommand("amalgamate", "amalgamate two extensions");
  amalg->add_option("--base", base_path)->required();
  amalg->add_option("--left", left_path)->required();
  amalg->add_option("--right", right_path)->required();
  amalg->add_option("--left-map", left_map, "embedding map JSON (inline)");
  amalg->add_option("--right-map", right_map);

  auto* minext = app.add_subcommand("minext", "minimal proper extensions within cap");
  minext->add_option("--algebra", algebra_path)->required();
  minext->add_option("--cap", extra_cap);

  auto* embed = app.add_subcommand("embed-over", "embedding over a common subalgebra");
  embed->add_option("--base", base_path)->required();
  embed->add_option("--b", left_path)->required();
  embed->add_option("--h", right_path)->required();
  embed->add_option("--b-map", left_map);
  embed->add_option("--h-map", right_map);

  int level = 1, max_dual = 0, max_steps = 0;
  auto* h0 = app.add_subcommand("build-h0", "leveled prime-model construction");
  h0->add_option("--level", level)->required();
  h0->add_option("--ext-cap", extra_cap);
  h0->add_option("--max-dual-points", max_dual);
  h0->add_option("--max-steps", max_steps);

  auto* dot = app.add_subcommand("export-dot", "Hasse diagram of the dual poset");
  dot->add_option("--algebra", algebra_path)->required();

  CLI11_PARSE(app, argc, argv);
  (void)jobs;
  (void)seed;

  if (*prove) {
    infer_arity(formula, vars, qvars);
    OwnedString out;
    check(heyting_prove(formula.c_str(), vars, qvars, &out.ptr));
    json j = json::parse(out.str());
    if (j.at("valid").get<bool>()) {
      std::cout << "VALID\n";
      return 0;
    }
    std::cout << "INVALID\n" << j.at("countermodel").dump() << "\n";
    return 1;
  }
  if (*counter) {
    infer_arity(formula, vars, qvars);
    OwnedString out;
    check(heyting_countermodel(formula.c_str(), vars, max_points, &out.ptr));
    json j = json::parse(out.str());
    if (j.at("found").get<bool>()) {
      std::cout << "FOUND\n" << j.at("countermodel").dump() << "\n";
      return 0;
    }
    std::cout << "NONE-WITHIN-BOUND points=" << max_points << "\n";
    return 1;
  }
  if (*fragment) {
    OwnedString out;
    check(heyting_fragment(vars, degree, max_reps, &out.ptr));
    json j = json::parse(out.str());
    if (as_json) {
      std::cout << j.dump() << "\n";
    } else {
      std::cout << j.at("reps").size() << " classes of degree <= " << degree << " in "
                << vars << " variable(s)\n";
      for (const auto& r : j.at("reps")) std::cout << "  " << r.get<std::string>() << "\n";
    }
    return 0;
  }
  if (*balls_cmd) {
    OwnedString out;
    check(heyting_balls(vars, degree, max_reps, &out.ptr));
    json j = json::parse(out.str());
    if (as_json) {
      std::cout << j.dump() << "\n";
    } else {
      std::cout << j.size() << " balls of radius 2^-" << degree << "\n";
      for (const auto& b : j)
        std::cout << "  phi=" << b.at("phi").get<std::string>()
                  << "  psi=" << b.at("psi").get<std::string>() << "  d="
                  << b.at("d").get<int>() << "\n";
    }
    return 0;
  }
  if (*theory) {
    AlgebraHandle a;
    load_algebra(algebra_path, a);
    OwnedString out;
    check(heyting_theory(a.ptr, tuple_text.c_str(), nlevel, max_reps, &out.ptr));
    json j = json::parse(out.str());
    if (as_json) {
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "Th_" << nlevel << " members:\n";
      for (const auto& m : j.at("members")) std::cout << "  " << m.get<std::string>() << "\n";
    }
    return 0;
  }
  if (*similar) {
    AlgebraHandle a, b;
    load_algebra(algebra_path, a);
    load_algebra(algebra2_path, b);
    int yes = 0;
    check(heyting_similar(a.ptr, tuple_text.c_str(), b.ptr, tuple2_text.c_str(), nlevel,
                          max_reps, &yes));
    std::cout << (yes ? "SIMILAR" : "NOT-SIMILAR") << " n=" << nlevel << "\n";
    return yes ? 0 : 1;
  }
  if (*equiv) {
    OwnedString out;
    check(heyting_equiv_sentence(vars, nlevel, max_reps, &out.ptr));
    std::cout << json::parse(out.str()).dump() << "\n";
    return 0;
  }
  if (*yn) {
    AlgebraHandle a;
    load_algebra(algebra_path, a);
    OwnedString out;
    check(heyting_yn(a.ptr, tuple_text.c_str(), nlevel, max_reps, &out.ptr));
    std::cout << json::parse(out.str()).dump() << "\n";
    return 0;
  }
  if (*hindex) {
    AlgebraHandle a;
    load_algebra(algebra_path, a);
    OwnedString out;
    check(heyting_h_index(a.ptr, vars, degree, nmax, max_reps, &out.ptr));
    json j = json::parse(out.str());
    if (j.at("h").is_null()) {
      std::cout << "NO-INDEX-WITHIN n_max=" << nmax << "\n";
      return 1;
    }
    std::cout << "h=" << j.at("h").get<int>() << "\n";
    return 0;
  }
  if (*emitfc) {
    OwnedString out;
    check(heyting_emit_fc(vars, degree, nlevel, max_reps, &out.ptr));
    std::cout << out.str();
    return 0;
  }
  if (*solve) {
    AlgebraHandle a;
    load_algebra(algebra_path, a);
    if (tuple_text.empty()) tuple_text = "[]";
    OwnedString out;
    if (cap > 0) {
      check(heyting_solve_in_extension(a.ptr, slurp(system_path).c_str(),
                                       tuple_text.c_str(), cap, &out.ptr));
      json j = json::parse(out.str());
      std::cout << verdict_system_line(j, cap) << "\n";
      return j.at("solvable").get<bool>() ? 0 : 1;
    }
    check(heyting_solve_in(a.ptr, slurp(system_path).c_str(), tuple_text.c_str(),
                           &out.ptr));
    json j = json::parse(out.str());
    if (j.at("solvable").get<bool>()) {
      std::cout << "SOLVABLE witness=" << j.at("solution").dump() << "\n";
      return 0;
    }
    std::cout << "NO-SOLUTION-IN-ALGEBRA\n";
    return 1;
  }
  if (*solve_ext) {
    AlgebraHandle a;
    load_algebra(algebra_path, a);
    if (tuple_text.empty()) tuple_text = "[]";
    OwnedString out;
    check(heyting_solve_in_extension(a.ptr, slurp(system_path).c_str(),
                                     tuple_text.c_str(), dcap, &out.ptr));
    json j = json::parse(out.str());
    std::cout << verdict_system_line(j, dcap) << "\n";
    return j.at("solvable").get<bool>() ? 0 : 1;
  }
  if (*disc) {
    OwnedString out;
    check(heyting_discriminant(slurp(system_path).c_str(), radius, max_reps, &out.ptr));
    std::cout << json::parse(out.str()).dump() << "\n";
    return 0;
  }
  if (*decide) {
    AlgebraHandle a;
    load_algebra(algebra_path, a);
    if (tuple_text.empty()) tuple_text = "[]";
    OwnedString out;
    check(heyting_decide(a.ptr, slurp(system_path).c_str(), tuple_text.c_str(), radius,
                         max_reps, &out.ptr));
    json j = json::parse(out.str());
    if (j.at("solvable_in_extension").get<bool>()) {
      std::cout << "SOLVABLE-IN-EXTENSION radius=" << radius << "\n";
      return 0;
    }
    std::cout << "UNSOLVABLE radius=" << radius << "\n";
    return 1;
  }
  if (*stable) {
    OwnedString out;
    check(heyting_stable_radius(slurp(system_path).c_str(), slurp(cases_path).c_str(),
                                rmax, witness_cap, max_reps, &out.ptr));
    json j = json::parse(out.str());
    if (j.at("radius").is_null()) {
      std::cout << "NO-STABLE-RADIUS r_max=" << rmax << "\n";
      return 1;
    }
    std::cout << "STABLE radius=" << j.at("radius").get<int>() << "\n";
    return 0;
  }
  if (*density || *splitting) {
    AlgebraHandle a;
    load_algebra(algebra_path, a);
    OwnedString out;
    check(*density ? heyting_density(a.ptr, &out.ptr)
                   : heyting_splitting(a.ptr, &out.ptr));
    json j = json::parse(out.str());
    if (j.at("holds").get<bool>())
      std::cout << "HOLDS\n";
    else
      std::cout << "COUNTEREXAMPLE " << j.at("counterexample").dump() << "\n";
    return 0;
  }
  if (*codim) {
    AlgebraHandle a;
    load_algebra(algebra_path, a);
    OwnedString out;
    check(heyting_codim(a.ptr, &out.ptr));
    std::cout << json::parse(out.str()).dump() << "\n";
    return 0;
  }
  if (*dim) {
    AlgebraHandle a;
    load_algebra(algebra_path, a);
    int d = 0;
    check(heyting_dimension(a.ptr, &d));
    std::cout << d << "\n";
    return 0;
  }
  if (*dfilter) {
    AlgebraHandle a;
    load_algebra(algebra_path, a);
    OwnedString out;
    check(heyting_dfilter(a.ptr, dlevel, &out.ptr));
    std::cout << json::parse(out.str()).dump() << "\n";
    return 0;
  }
  if (*lemma) {
    int ok = 0;
    check(heyting_lemma_a2(slurp(pairs_path).c_str(), dlevel, &ok));
    std::cout << (ok ? "NO-VIOLATION" : "VIOLATION") << "\n";
    return ok ? 0 : 1;
  }
  if (*amalg) {
    AlgebraHandle base, left, right;
    load_algebra(base_path, base);
    load_algebra(left_path, left);
    load_algebra(right_path, right);
    OwnedString out;
    check(heyting_amalgamate(base.ptr, left.ptr, left_map.c_str(), right.ptr,
                             right_map.c_str(), &out.ptr));
    std::cout << json::parse(out.str()).dump() << "\n";
    return 0;
  }
  if (*minext) {
    AlgebraHandle a;
    load_algebra(algebra_path, a);
    OwnedString out;
    check(heyting_minimal_extensions(a.ptr, extra_cap, &out.ptr));
    json j = json::parse(out.str());
    if (as_json) {
      std::cout << j.dump() << "\n";
    } else {
      std::cout << j.at("extensions").size() << " minimal extensions within cap "
                << extra_cap << "\n";
      for (const auto& e : j.at("extensions"))
        std::cout << "  dual points: "
                  << e.at("algebra").at("poset").at("elements").get<int>() << "\n";
    }
    return 0;
  }
  if (*embed) {
    AlgebraHandle base, b, h;
    load_algebra(base_path, base);
    load_algebra(left_path, b);
    load_algebra(right_path, h);
    OwnedString out;
    check(heyting_embed_over(base.ptr, b.ptr, left_map.c_str(), h.ptr,
                             right_map.c_str(), &out.ptr));
    json j = json::parse(out.str());
    if (j.at("embeds").get<bool>()) {
      std::cout << "EMBEDS " << j.at("embedding").dump() << "\n";
      return 0;
    }
    std::cout << "NO-EMBEDDING\n";
    return 1;
  }
  if (*h0) {
    OwnedString out;
    check(heyting_build_h0(level, extra_cap, max_dual, max_steps, &out.ptr));
    std::cout << json::parse(out.str()).dump() << "\n";
    return 0;
  }
  if (*dot) {
    AlgebraHandle a;
    load_algebra(algebra_path, a);
    OwnedString out;
    check(heyting_algebra_to_dot(a.ptr, &out.ptr));
    std::cout << out.str();
    return 0;
  }
  return 2;
}
