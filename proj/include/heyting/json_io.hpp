#ifndef HEYTING_JSON_IO_HPP
#define HEYTING_JSON_IO_HPP

#include <string>

#include "heyting/prover.hpp"
#include "heyting/solve.hpp"
#include "heyting/structure.hpp"
#include "json.hpp"

namespace heyting {

// Poset: {"elements": n, "leq": [[i,j], ...]}; reflexive pairs optional,
// transitive closure validated. Algebra adds optional generators as point
// lists: {"poset": ..., "generators": [[points], ...]}.
nlohmann::json poset_to_json(const FinitePoset& p);
FinitePoset poset_from_json(const nlohmann::json& j);

nlohmann::json algebra_to_json(const FiniteHA& a);
FiniteHA algebra_from_json(const nlohmann::json& j);

nlohmann::json system_to_json(const System& s);
System system_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const KripkeModel& m, int refuted_at, Arity arity);
nlohmann::json verdict_to_json(const Verdict& v, Arity arity);

nlohmann::json fragment_to_json(const Fragment& f);
nlohmann::json balls_to_json(const Fragment& f, const std::vector<Ball>& bs);
nlohmann::json discriminant_to_json(const DiscriminantReport& r, Arity arity);

nlohmann::json morphism_to_json(const HAMorphism& h);
std::vector<int> morphism_map_from_json(const nlohmann::json& j);

nlohmann::json h0_level_to_json(const H0Level& level);

// Hasse diagram (cover relation only).
std::string poset_to_dot(const FinitePoset& p);

}  // namespace heyting

#endif
