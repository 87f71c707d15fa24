#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include <monlat/builders.hpp>
#include <monlat/normality.hpp>

using namespace monlat;

namespace {

ElementSet whole(FiniteMonoid const& m) {
  std::vector<int> all(m.size());
  std::iota(all.begin(), all.end(), 0);
  return ElementSet(std::move(all));
}

}  // namespace

TEST_CASE("stability sets") {
  auto z4 = cyclic_monoid(0, 4);
  // X_{1} = solutions of x*y = identity
  PairSet x1 = stability_set(z4, ElementSet({0}));
  REQUIRE(x1 == PairSet{{0, 0}, {1, 3}, {2, 2}, {3, 1}});

  auto t3 = full_transformation_monoid(3);
  ElementSet s3 = distinguished_subsets(t3).symmetric;
  PairSet xu = stability_set(t3.monoid, units(t3.monoid));
  REQUIRE(xu.size() == 36);
  for (auto [x, y] : xu) {
    REQUIRE(s3.contains(x));
    REQUIRE(s3.contains(y));
  }

  REQUIRE(stability_set(t3.monoid, whole(t3.monoid)).size() == 27 * 27);
  REQUIRE_THROWS_AS(stability_set(t3.monoid, ElementSet{}), Error);
}

TEST_CASE("stability sets are monotone in the subset") {
  auto n4 = nmax_truncated(4);
  for (int a = 0; a < 5; ++a) {
    for (int b = a; b < 5; ++b) {
      PairSet xa = stability_set(n4, ElementSet::from_unsorted({0, a}));
      PairSet xb = stability_set(n4, ElementSet::from_unsorted({0, a, b}));
      REQUIRE(std::includes(xb.begin(), xb.end(), xa.begin(), xa.end()));
    }
  }
}

TEST_CASE("left stability sets") {
  auto n5 = nmax_truncated(5);
  REQUIRE(left_stability_set(n5, ElementSet({0, 3})) == ElementSet({0, 1, 2, 3}));
  REQUIRE(left_stability_set(n5, whole(n5)) == whole(n5));

  auto z4 = cyclic_monoid(0, 4);
  REQUIRE(left_stability_set(z4, ElementSet({0, 2})) == ElementSet({0, 2}));

  auto t2 = full_transformation_monoid(2);
  REQUIRE_THROWS_AS(left_stability_set(t2.monoid, ElementSet({0})), Error);
}

TEST_CASE("invariance") {
  auto n5 = nmax_truncated(5);
  REQUIRE(is_invariant(n5, ElementSet({0})));
  REQUIRE_FALSE(is_invariant(n5, ElementSet({0, 3})));
  REQUIRE(is_invariant(n5, ElementSet({0, 1, 2, 3})));

  auto t3 = full_transformation_monoid(3);
  int c1 = t3.encode(Transformation{3, {0, 0, 0}});
  REQUIRE_FALSE(is_invariant(t3.monoid, ElementSet::from_unsorted({t3.monoid.identity(), c1})));

  int rot = t3.encode(Transformation{3, {1, 2, 0}});
  REQUIRE_THROWS_AS(is_invariant(t3.monoid, ElementSet::from_unsorted({t3.monoid.identity(), rot})),
                    Error);
}

TEST_CASE("normal submonoid predicate") {
  auto t4 = full_transformation_monoid(4);
  REQUIRE(is_normal_submonoid(t4.monoid, ElementSet({t4.monoid.identity()})));
  REQUIRE(is_normal_submonoid(t4.monoid, *distinguished_subsets(t4).klein_four));

  auto t3 = full_transformation_monoid(3);
  int swap01 = t3.encode(Transformation{3, {1, 0, 2}});
  ElementSet s = ElementSet::from_unsorted({t3.monoid.identity(), swap01});
  REQUIRE(is_groupal(t3.monoid, s));
  REQUIRE_FALSE(is_normal_submonoid(t3.monoid, s));
}

TEST_CASE("normal closure") {
  auto n7 = nmax_truncated(7);
  REQUIRE(normal_closure(n7, ElementSet{}) == ElementSet({0}));
  REQUIRE(normal_closure(n7, ElementSet({3})) == ElementSet({0, 1, 2, 3}));

  auto t3 = full_transformation_monoid(3);
  int c1 = t3.encode(Transformation{3, {0, 0, 0}});
  REQUIRE(normal_closure(t3.monoid, ElementSet({c1})) == whole(t3.monoid));

  // permutation closures stay inside the symmetric group
  auto d3 = distinguished_subsets(t3);
  int rot = t3.encode(Transformation{3, {1, 2, 0}});
  int swap01 = t3.encode(Transformation{3, {1, 0, 2}});
  REQUIRE(normal_closure(t3.monoid, ElementSet({rot})) == d3.alternating);
  REQUIRE(normal_closure(t3.monoid, ElementSet({swap01})) == d3.symmetric);
}

TEST_CASE("normal closure is a closure operator") {
  auto m = nmax_truncated(4);
  std::vector<ElementSet> subsets = {ElementSet{}, ElementSet({1}), ElementSet({3}),
                                     ElementSet({1, 3}), ElementSet({2, 4})};
  for (auto const& a : subsets) {
    ElementSet ca = normal_closure(m, a);
    REQUIRE(a.subset_of(ca));
    REQUIRE(normal_closure(m, ca) == ca);
    REQUIRE(is_normal_submonoid(m, ca));
    for (auto const& b : subsets) {
      ElementSet cb = normal_closure(m, b);
      if (a.subset_of(b)) REQUIRE(ca.subset_of(cb));
      REQUIRE(normal_closure(m, a.union_with(b)) ==
              normal_closure(m, ca.union_with(cb)));
    }
  }
}

TEST_CASE("enumerating normal submonoids") {
  auto trivial = nmax_truncated(0);
  REQUIRE(enumerate_normal_submonoids(trivial) == std::vector<ElementSet>{ElementSet({0})});

  auto t3 = full_transformation_monoid(3);
  auto d3 = distinguished_subsets(t3);
  auto family = enumerate_normal_submonoids(t3.monoid);
  std::vector<ElementSet> expected = {ElementSet({t3.monoid.identity()}), d3.alternating,
                                      d3.symmetric, whole(t3.monoid)};
  std::sort(expected.begin(), expected.end());
  REQUIRE(family == expected);

  auto n4 = nmax_truncated(4);
  auto chain = enumerate_normal_submonoids(n4);
  REQUIRE(chain.size() == 5);
  for (std::size_t i = 0; i < chain.size(); ++i)
    REQUIRE(chain[i] == ElementSet::from_unsorted([&] {
              std::vector<int> v(i + 1);
              std::iota(v.begin(), v.end(), 0);
              return v;
            }()));

  REQUIRE_THROWS_AS(enumerate_normal_submonoids(t3.monoid, 10), Error);
}

TEST_CASE("normal monoids") {
  REQUIRE(is_normal_monoid(cyclic_monoid(0, 6)));
  REQUIRE(is_normal_monoid(nmax_truncated(4)));
  auto t4 = full_transformation_monoid(4);
  REQUIRE(is_normal_monoid(t4.monoid));
}

TEST_CASE("normal subgroups of the unit group") {
  auto t4 = full_transformation_monoid(4);
  auto normals = normal_subgroups_of_units(t4.monoid);
  auto d4 = distinguished_subsets(t4);
  REQUIRE(normals.size() == 4);
  REQUIRE(std::find(normals.begin(), normals.end(), *d4.klein_four) != normals.end());
  REQUIRE(std::find(normals.begin(), normals.end(), d4.alternating) != normals.end());
  REQUIRE(std::find(normals.begin(), normals.end(), d4.symmetric) != normals.end());

  REQUIRE_THROWS_AS(normal_subgroups_of_units(cyclic_monoid(0, 30)), Error);
}

TEST_CASE("normally simple monoids") {
  auto t3 = full_transformation_monoid(3);
  REQUIRE(is_normally_simple(t3.monoid));
  REQUIRE_FALSE(is_normally_simple(nmax_truncated(3)));
  // a simple group: its normal submonoids are exactly the normal subgroups
  REQUIRE(is_normally_simple(cyclic_monoid(0, 5)));
}

TEST_CASE("a six-element monoid with a pentagon NorSub lattice") {
  // Closure of {[3,2,3],[3,1,1]} inside T_3. Its normal submonoid family is
  // the pentagon N_5, so NorSub lattices are not modular in general. All
  // five nodes were verified against the stability-set definition by hand.
  auto closed = monoid_from_transformations(
      3, {Transformation{3, {2, 1, 2}}, Transformation{3, {2, 0, 0}}});
  auto const& m = closed.monoid;
  REQUIRE(m.size() == 6);

  int e1 = -1, e2 = -1, e5 = -1;
  for (int i = 0; i < 6; ++i) {
    auto const& im = closed.elements[i].images;
    if (im == std::vector<int>{2, 1, 2}) e1 = i;
    if (im == std::vector<int>{2, 0, 0}) e2 = i;
    if (im == std::vector<int>{0, 2, 2}) e5 = i;
  }
  REQUIRE(e1 >= 0);
  REQUIRE(e2 >= 0);
  REQUIRE(e5 >= 0);

  std::vector<ElementSet> expected = {
      ElementSet({0}), ElementSet::from_unsorted({0, e1}), ElementSet::from_unsorted({0, e5}),
      ElementSet::from_unsorted({0, e2, e5}),
      ElementSet({0, 1, 2, 3, 4, 5})};
  std::sort(expected.begin(), expected.end());
  REQUIRE(enumerate_normal_submonoids(m) == expected);

  // pentagon: side {1,e1} against the chain {1,e5} < {1,e2,e5}
  ElementSet side = ElementSet::from_unsorted({0, e1});
  ElementSet low = ElementSet::from_unsorted({0, e5});
  ElementSet high = ElementSet::from_unsorted({0, e2, e5});
  REQUIRE(normal_closure(m, side.union_with(low)).size() == 6);
  REQUIRE(side.intersect_with(high) == ElementSet({0}));
}
