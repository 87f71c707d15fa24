#ifndef MONLAT_NORMALITY_HPP
#define MONLAT_NORMALITY_HPP

#include <algorithm>
#include <atomic>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "monlat/monoid.hpp"

namespace monlat {

// Canonically ordered set of element pairs; houses stability sets.
using PairSet = std::vector<std::pair<int, int>>;

namespace detail {

// Row g of the stability set of A as a bitmask over h:
// rows[g].test(h)  <=>  exists a in A with g*a*h in A.
//
// Computed wordwise: mask_b[h] = (b*h in A) is shared across every g whose
// translate g*A contains b, so the scan costs O(n^2 + n*|A|) word operations
// instead of the naive O(n^2 * |A|).
inline std::vector<Bitset> stability_rows(FiniteMonoid const& m, std::vector<int> const& a_members,
                                          Bitset const& a_bits) {
  int n = m.size();
  std::vector<Bitset> mask_b(n);
  std::vector<bool> have_mask(n, false);
  std::vector<Bitset> rows(n, Bitset(n));
  for (int g = 0; g < n; ++g) {
    for (int a : a_members) {
      int b = m.product(g, a);
      if (!have_mask[b]) {
        Bitset mb(n);
        int const* row_b = m.row(b);
        for (int h = 0; h < n; ++h)
          if (a_bits.test(row_b[h])) mb.set(h);
        mask_b[b] = std::move(mb);
        have_mask[b] = true;
      }
      rows[g] |= mask_b[b];
    }
  }
  return rows;
}

}  // namespace detail

// X_A = {(x,y) : (x A y) meets A}. Exact; A must be nonempty.
inline PairSet stability_set(FiniteMonoid const& m, ElementSet const& a) {
  if (a.empty()) raise("EmptySubset", "stability set of the empty subset is undefined");
  auto rows = detail::stability_rows(m, a.members(), a.to_bitset(m.size()));
  PairSet out;
  for (int x = 0; x < m.size(); ++x)
    rows[x].for_each([&](int y) { out.emplace_back(x, y); });
  return out;
}

// LX_A = {z : (z+A) meets A}; commutative monoids only.
inline ElementSet left_stability_set(FiniteMonoid const& m, ElementSet const& a) {
  if (!m.commutative()) raise("NotCommutative", "one-sided stability needs a commutative monoid");
  if (a.empty()) raise("EmptySubset", "stability set of the empty subset is undefined");
  Bitset bits = a.to_bitset(m.size());
  std::vector<int> out;
  for (int z = 0; z < m.size(); ++z) {
    for (int x : a) {
      if (bits.test(m.product(z, x))) {
        out.push_back(z);
        break;
      }
    }
  }
  return ElementSet(std::move(out));
}

// Invariance of a submonoid S: x S y inside S for every (x,y) in X_S.
inline bool is_invariant(FiniteMonoid const& m, ElementSet const& s) {
  if (!is_submonoid(m, s)) raise("NotSubmonoid", "invariance is defined for submonoids");
  int n = m.size();
  Bitset s_bits = s.to_bitset(n);
  auto x_rows = detail::stability_rows(m, s.members(), s_bits);
  // mask_b[b].test(h) <=> b*h in S, shared across rows as in stability_rows
  std::vector<Bitset> mask_b(n);
  std::vector<bool> have_mask(n, false);
  auto mask_of = [&](int b) -> Bitset const& {
    if (!have_mask[b]) {
      Bitset mb(n);
      int const* row_b = m.row(b);
      for (int h = 0; h < n; ++h)
        if (s_bits.test(row_b[h])) mb.set(h);
      mask_b[b] = std::move(mb);
      have_mask[b] = true;
    }
    return mask_b[b];
  };
  for (int g = 0; g < n; ++g) {
    if (!x_rows[g].any()) continue;
    // ok.test(h) <=> g*S*h is contained in S
    Bitset ok;
    bool first = true;
    for (int a : s) {
      Bitset const& mb = mask_of(m.product(g, a));
      if (first) {
        ok = mb;
        first = false;
      } else {
        ok &= mb;
      }
      if (!ok.any()) break;
    }
    if (x_rows[g].intersects_complement(ok)) return false;
  }
  return true;
}

// Normal submonoid: groupal and invariant.
inline bool is_normal_submonoid(FiniteMonoid const& m, ElementSet const& s) {
  return is_groupal(m, s) && is_invariant(m, s);
}

// Least normal submonoid containing A, by the iteration
//   A_0 = groupal closure of A,
//   A_k = groupal closure of the union of all x A_{k-1} y over X_{A_{k-1}},
// which stabilizes on a finite monoid since the chain is nondecreasing.
//
// The conjugate union is accumulated with a saturation cut: once it covers
// the whole monoid the remaining scan cannot change the step, so the loop
// exits early. This matters at T_5 scale where most singleton closures blow
// up to the full monoid.
inline ElementSet normal_closure(FiniteMonoid const& m, ElementSet const& a) {
  int n = m.size();
  Bitset cur = detail::groupal_closure_bits(m, a.to_bitset(n));
  for (int iter = 0; iter <= n + 1; ++iter) {
    if (cur.count() == n) return ElementSet::from_bitset(cur);
    std::vector<int> members = cur.to_sorted_vector();

    // mask_b[b].test(h) <=> b*h in cur, built lazily and shared across rows
    std::vector<Bitset> mask_b(n);
    std::vector<bool> have_mask(n, false);
    auto mask_of = [&](int b) -> Bitset const& {
      if (!have_mask[b]) {
        Bitset mb(n);
        int const* row_b = m.row(b);
        for (int h = 0; h < n; ++h)
          if (cur.test(row_b[h])) mb.set(h);
        mask_b[b] = std::move(mb);
        have_mask[b] = true;
      }
      return mask_b[b];
    };

    Bitset next(n);
    bool saturated = false;
    std::vector<int> translate(members.size());
    for (int g = 0; g < n && !saturated; ++g) {
      // row g of the stability set of cur
      Bitset x_row(n);
      for (std::size_t i = 0; i < members.size(); ++i) {
        translate[i] = m.product(g, members[i]);
        x_row |= mask_of(translate[i]);
      }
      if (!x_row.any()) continue;
      for (int b : translate) {
        int const* row_b = m.row(b);
        x_row.for_each([&](int h) { next.set(row_b[h]); });
        if (next.count() == n) {
          saturated = true;
          break;
        }
      }
    }
    Bitset closed = detail::groupal_closure_bits(m, std::move(next));
    if (closed == cur) return ElementSet::from_bitset(cur);
    cur = std::move(closed);
  }
  raise("Internal", "normal closure failed to stabilize within |M| iterations");
}

namespace detail {

struct ElementSetOrder {
  bool operator()(ElementSet const& a, ElementSet const& b) const { return a < b; }
};

template <typename F>
void parallel_for(int count, F&& f, unsigned threads) {
  if (threads <= 1 || count < 8) {
    for (int i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        f(i);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

// NorSub(M): atoms are the normal closures of singletons, then the family is
// closed under binary joins ncl(S u S'). Every normal submonoid is the join
// of the singleton closures of its members, so the fixpoint is exact.
inline std::vector<ElementSet> enumerate_normal_submonoids(
    FiniteMonoid const& m, int bound = defaults::norsub_enum_bound,
    unsigned threads = std::thread::hardware_concurrency()) {
  if (m.size() > bound)
    raise("BoundExceeded", "normal submonoid enumeration limited to size " +
                               std::to_string(bound) + " (monoid has " +
                               std::to_string(m.size()) + ")");
  int n = m.size();
  std::vector<ElementSet> atom_of(n);
  detail::parallel_for(
      n, [&](int x) { atom_of[x] = normal_closure(m, ElementSet({x})); }, threads);

  std::set<ElementSet, detail::ElementSetOrder> family;
  family.insert(ElementSet({m.identity()}));
  for (auto& a : atom_of) family.insert(std::move(a));

  // join closure; process larger nodes first so the top arrives early
  std::vector<ElementSet> work(family.begin(), family.end());
  std::sort(work.begin(), work.end(),
            [](ElementSet const& a, ElementSet const& b) { return b < a; });
  while (!work.empty()) {
    ElementSet s = std::move(work.back());
    work.pop_back();
    std::vector<ElementSet> snapshot(family.begin(), family.end());
    for (auto const& t : snapshot) {
      if (s.subset_of(t) || t.subset_of(s)) continue;
      ElementSet join = normal_closure(m, s.union_with(t));
      if (family.insert(join).second) work.push_back(std::move(join));
    }
  }
  return {family.begin(), family.end()};
}

// M is normal when U(M) is a normal submonoid.
inline bool is_normal_monoid(FiniteMonoid const& m) {
  return is_normal_submonoid(m, units(m));
}

namespace detail {

// All subgroups of the unit group, by closing each known subgroup with one
// extra unit until nothing new appears.
inline std::vector<ElementSet> enumerate_unit_subgroups(FiniteMonoid const& m,
                                                        int unit_bound) {
  ElementSet u = units(m);
  if (u.size() > unit_bound)
    raise("BoundExceeded",
          "unit group of order " + std::to_string(u.size()) + " exceeds subgroup bound");
  std::set<ElementSet, ElementSetOrder> groups;
  std::vector<ElementSet> work;
  ElementSet trivial({m.identity()});
  groups.insert(trivial);
  work.push_back(trivial);
  while (!work.empty()) {
    ElementSet h = std::move(work.back());
    work.pop_back();
    for (int g : u) {
      if (h.contains(g)) continue;
      ElementSet bigger = groupal_closure(m, h.union_with(ElementSet({g})));
      if (groups.insert(bigger).second) work.push_back(std::move(bigger));
    }
  }
  return {groups.begin(), groups.end()};
}

}  // namespace detail

// Subgroups of U(M) closed under conjugation by every unit.
inline std::vector<ElementSet> normal_subgroups_of_units(
    FiniteMonoid const& m, int unit_bound = defaults::unit_group_bound) {
  ElementSet u = units(m);
  std::vector<ElementSet> out;
  for (auto const& h : detail::enumerate_unit_subgroups(m, unit_bound)) {
    bool normal = true;
    for (int g : u) {
      int gi = m.inverse(g);
      for (int x : h) {
        if (!h.contains(m.product(m.product(g, x), gi))) {
          normal = false;
          break;
        }
      }
      if (!normal) break;
    }
    if (normal) out.push_back(h);
  }
  return out;
}

// Normally simple: the only normal submonoids are M itself and the normal
// subgroups of U(M).
inline bool is_normally_simple(FiniteMonoid const& m,
                               int enum_bound = defaults::norsub_enum_bound,
                               int unit_bound = defaults::unit_group_bound,
                               unsigned threads = std::thread::hardware_concurrency()) {
  if (!is_normal_monoid(m)) raise("NotNormalMonoid", "U(M) is not a normal submonoid");
  auto norsub = enumerate_normal_submonoids(m, enum_bound, threads);
  std::set<ElementSet, detail::ElementSetOrder> expected;
  for (auto& h : normal_subgroups_of_units(m, unit_bound)) expected.insert(std::move(h));
  std::vector<int> all(m.size());
  for (int i = 0; i < m.size(); ++i) all[i] = i;
  expected.insert(ElementSet(std::move(all)));
  return std::set<ElementSet, detail::ElementSetOrder>(norsub.begin(), norsub.end()) == expected;
}

}  // namespace monlat

#endif  // MONLAT_NORMALITY_HPP
