#include <catch2/catch_amalgamated.hpp>

#include <monlat/monlat.hpp>

using namespace monlat;

TEST_CASE("monoid JSON round-trip") {
  for (auto const& m : {nmax_truncated(4), cyclic_monoid(2, 3),
                        full_transformation_monoid(3).monoid}) {
    json j = monoid_to_json(m);
    REQUIRE(j.at("size") == m.size());
    FiniteMonoid back = monoid_from_json(j);
    REQUIRE(back.size() == m.size());
    REQUIRE(back.identity() == m.identity());
    for (int x = 0; x < m.size(); ++x)
      for (int y = 0; y < m.size(); ++y) REQUIRE(back.product(x, y) == m.product(x, y));
    REQUIRE(back.labels() == m.labels());
    // serialization is deterministic
    REQUIRE(monoid_to_json(back).dump(2) == j.dump(2));
  }
}

TEST_CASE("malformed monoid JSON is rejected") {
  REQUIRE_THROWS_AS(monoid_from_json(json::parse("{}")), Error);
  REQUIRE_THROWS_AS(
      monoid_from_json(json::parse(R"({"size":2,"identity":0,"table":[[0,1]]})")), Error);
  REQUIRE_THROWS_AS(
      monoid_from_json(json::parse(R"({"size":2,"identity":0,"table":[[0,1],[1,7]]})")), Error);
  // non-associative table rejected through the same validation path
  REQUIRE_THROWS_AS(monoid_from_json(json::parse(
                        R"({"size":3,"identity":0,"table":[[0,1,2],[1,2,2],[2,1,1]]})")),
                    Error);
}

TEST_CASE("set, pair and congruence serialization") {
  ElementSet s({1, 3, 5});
  REQUIRE(element_set_to_json(s).dump() == "[1,3,5]");
  REQUIRE(element_set_from_json(json::parse("[5,1,3,3]")) == s);

  PairSet pairs{{0, 1}, {2, 3}};
  REQUIRE(pair_set_to_json(pairs).dump() == "[[0,1],[2,3]]");

  auto t2 = full_transformation_monoid(2);
  Congruence r = rees_congruence(t2.monoid, rank_ideal(t2, 1));
  json j = congruence_to_json(r);
  REQUIRE(congruence_from_json(j) == r);
  REQUIRE(int(j.size()) == t2.monoid.size());
}

TEST_CASE("lattice dump carries nodes and cover edges") {
  auto t3 = full_transformation_monoid(3);
  auto lat = build_lattice(enumerate_normal_submonoids(t3.monoid),
                           [](ElementSet const& a, ElementSet const& b) {
                             return a.subset_of(b);
                           });
  json j = lattice_to_json(lat, [](ElementSet const& s) { return element_set_to_json(s); });
  REQUIRE(j.at("nodes").size() == 4);
  REQUIRE(j.at("cover_edges").size() == 3);
  // edges reference valid node indices and point upward
  for (auto const& e : j.at("cover_edges")) {
    int lo = e[0], hi = e[1];
    REQUIRE(lat.leq(lo, hi));
    REQUIRE_FALSE(lat.leq(hi, lo));
  }
}

TEST_CASE("subgroup JSON") {
  auto h = hnf(2, {{BigInt(2), BigInt(0)}, {BigInt(0), BigInt(3)}});
  json j = subgroup_to_json(h);
  REQUIRE(j.at("dim") == 2);
  REQUIRE(j.at("hnf").dump() == "[[2,0],[0,3]]");
}

TEST_CASE("report serializers expose pass flags") {
  auto t2 = full_transformation_monoid(2);
  json blowup = blowup_report_to_json(verify_blowup(t2.monoid));
  REQUIRE(blowup.at("pass") == true);
  REQUIRE(blowup.at("total_congruences") == 4);

  json bic = bicyclic_report_to_json(bicyclic_bounded_check(2));
  REQUIRE(bic.at("pass") == true);

  json nplus = nplus_report_to_json(nplus_congruence_check(1, 2, 10));
  REQUIRE(nplus.at("pass") == true);

  json mod = subgroup_modularity_report_to_json(modularity_subgroups(2, 10, 3));
  REQUIRE(mod.at("passes") == 10);
}
