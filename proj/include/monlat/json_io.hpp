#ifndef MONLAT_JSON_IO_HPP
#define MONLAT_JSON_IO_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "monlat/builders.hpp"
#include "monlat/congruence.hpp"
#include "monlat/lattice.hpp"
#include "monlat/monoid.hpp"
#include "monlat/zgroups.hpp"

namespace monlat {

using nlohmann::json;

// { "size": n, "identity": i, "table": [[...],...], "labels": [...] }
inline json monoid_to_json(FiniteMonoid const& m) {
  json j;
  j["size"] = m.size();
  j["identity"] = m.identity();
  j["table"] = m.table_rows();
  if (!m.labels().empty()) j["labels"] = m.labels();
  return j;
}

inline FiniteMonoid monoid_from_json(json const& j) {
  if (!j.is_object() || !j.contains("size") || !j.contains("identity") || !j.contains("table"))
    raise("MalformedTable", "monoid JSON needs size, identity and table fields");
  auto table = j.at("table").get<std::vector<std::vector<int>>>();
  if (int(table.size()) != j.at("size").get<int>())
    raise("MalformedTable", "size field does not match the table");
  auto m = FiniteMonoid::from_table(table, j.at("identity").get<int>());
  if (j.contains("labels")) m.set_labels(j.at("labels").get<std::vector<std::string>>());
  return m;
}

inline json element_set_to_json(ElementSet const& s) { return json(s.members()); }

inline ElementSet element_set_from_json(json const& j) {
  return ElementSet::from_unsorted(j.get<std::vector<int>>());
}

inline json pair_set_to_json(PairSet const& pairs) {
  json j = json::array();
  for (auto [x, y] : pairs) j.push_back({x, y});
  return j;
}

inline json congruence_to_json(Congruence const& r) { return json(r.class_vector()); }

inline Congruence congruence_from_json(json const& j) {
  return Congruence::from_class_vector(j.get<std::vector<int>>());
}

template <typename Node, typename NodeToJson>
json lattice_to_json(Lattice<Node> const& lat, NodeToJson&& node_to_json) {
  json nodes = json::array();
  for (auto const& node : lat.nodes()) nodes.push_back(node_to_json(node));
  json edges = json::array();
  for (auto [lo, hi] : lat.cover_edges()) edges.push_back({lo, hi});
  return json{{"nodes", std::move(nodes)}, {"cover_edges", std::move(edges)}};
}

inline json subgroup_to_json(IntSubgroup const& h) {
  json rows = json::array();
  for (auto const& row : h.basis) {
    json r = json::array();
    for (auto const& x : row) r.push_back((long long)x);
    rows.push_back(std::move(r));
  }
  return json{{"dim", h.dim}, {"hnf", std::move(rows)}};
}

inline json blowup_report_to_json(BlowupReport const& rep) {
  json fibers = json::array();
  for (auto const& f : rep.fibers)
    fibers.push_back(json{{"submonoid", f.submonoid.members()},
                          {"congruences", f.fiber_size},
                          {"unital_on_quotient", f.unital_on_quotient},
                          {"roundtrips_ok", f.roundtrips_ok},
                          {"rs_maps_to_identity", f.rs_maps_to_identity}});
  return json{{"total_congruences", rep.total_congruences},
              {"fiber_sum", rep.fiber_sum},
              {"fibers_match_norsub", rep.fibers_match_norsub},
              {"fibers", std::move(fibers)},
              {"pass", rep.pass}};
}

inline json bicyclic_report_to_json(BicyclicReport const& rep) {
  return json{{"bound", rep.bound},
              {"identity_ok", rep.identity_ok},
              {"associativity_ok", rep.associativity_ok},
              {"stability_formula_ok", rep.stability_formula_ok},
              {"conjugates_in_diagonal_ok", rep.conjugates_in_diagonal_ok},
              {"ladder_identity_ok", rep.ladder_identity_ok},
              {"commutative_on_range", rep.commutative_on_range},
              {"counterexample", rep.counterexample},
              {"pass", rep.pass()}};
}

inline json nplus_report_to_json(NplusCongruenceReport const& rep) {
  return json{{"m", rep.m},
              {"n", rep.n},
              {"bound", rep.bound},
              {"equivalence_ok", rep.equivalence_ok},
              {"compatible_ok", rep.compatible_ok},
              {"unital_expected", rep.unital_expected},
              {"unital_ok", rep.unital_ok},
              {"cyclic_kernel_ok", rep.cyclic_kernel_ok},
              {"cyclic_lattice_ok", rep.cyclic_lattice_ok},
              {"pass", rep.pass()}};
}

inline json subgroup_modularity_report_to_json(SubgroupModularityReport const& rep) {
  return json{{"dim", rep.dim},
              {"trials", rep.trials},
              {"passes", rep.passes},
              {"seed", rep.seed},
              {"pass", rep.pass()}};
}

}  // namespace monlat

#endif  // MONLAT_JSON_IO_HPP
