#ifndef MONLAT_BUILDERS_HPP
#define MONLAT_BUILDERS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monlat/monoid.hpp"

namespace monlat {

// Self-map of {0,..,arity-1}; images[i] = f(i). Composition is function
// application, (f*g)(i) = f(g(i)), and every composite in this codebase is
// read with that one convention.
struct Transformation {
  int arity = 0;
  std::vector<int> images;

  static Transformation identity_map(int n) {
    Transformation t{n, std::vector<int>(n)};
    for (int i = 0; i < n; ++i) t.images[i] = i;
    return t;
  }

  static Transformation compose(Transformation const& f, Transformation const& g) {
    Transformation t{f.arity, std::vector<int>(f.arity)};
    for (int i = 0; i < f.arity; ++i) t.images[i] = f.images[g.images[i]];
    return t;
  }

  int rank() const {
    std::vector<bool> seen(arity, false);
    int r = 0;
    for (int v : images)
      if (!seen[v]) {
        seen[v] = true;
        ++r;
      }
    return r;
  }

  bool is_permutation() const { return rank() == arity; }

  // parity of a permutation: true when even
  bool is_even() const {
    std::vector<bool> seen(arity, false);
    int transpositions = 0;
    for (int i = 0; i < arity; ++i) {
      if (seen[i]) continue;
      int len = 0, j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = images[j];
        ++len;
      }
      transpositions += len - 1;
    }
    return transpositions % 2 == 0;
  }

  // 1-based image tuple, e.g. the constant-to-1 map on 3 points is [1,1,1]
  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < arity; ++i) {
      if (i) s += ",";
      s += std::to_string(images[i] + 1);
    }
    return s + "]";
  }

  bool operator==(Transformation const& other) const {
    return arity == other.arity && images == other.images;
  }
  bool operator<(Transformation const& other) const { return images < other.images; }
};

// Base-n positional codec between indices 0..n^n-1 and image tuples.
inline long long encode_transformation(Transformation const& t) {
  long long idx = 0, p = 1;
  for (int i = 0; i < t.arity; ++i) {
    idx += t.images[i] * p;
    p *= t.arity;
  }
  return idx;
}

inline Transformation decode_transformation(int n, long long idx) {
  Transformation t{n, std::vector<int>(n)};
  for (int i = 0; i < n; ++i) {
    t.images[i] = int(idx % n);
    idx /= n;
  }
  return t;
}

// T_n together with its index<->Transformation codec.
struct FullTransformationMonoid {
  int n = 0;
  FiniteMonoid monoid;

  int encode(Transformation const& t) const { return int(encode_transformation(t)); }
  Transformation decode(int idx) const { return decode_transformation(n, idx); }
};

inline FullTransformationMonoid full_transformation_monoid(
    int n, int size_bound = defaults::size_bound) {
  if (n < 1) raise("BoundExceeded", "n must be positive");
  long long count = 1;
  for (int i = 0; i < n; ++i) {
    count *= n;
    if (count > size_bound)
      raise("BoundExceeded", "T_" + std::to_string(n) + " has n^n > " +
                                 std::to_string(size_bound) + " elements");
  }
  int sz = int(count);
  std::vector<Transformation> elems(sz);
  for (int i = 0; i < sz; ++i) elems[i] = decode_transformation(n, i);

  std::vector<std::vector<int>> table(sz, std::vector<int>(sz));
  for (int f = 0; f < sz; ++f)
    for (int g = 0; g < sz; ++g)
      table[f][g] = int(encode_transformation(Transformation::compose(elems[f], elems[g])));

  int id = int(encode_transformation(Transformation::identity_map(n)));
  auto m = FiniteMonoid::from_table(table, id);
  std::vector<std::string> labels(sz);
  for (int i = 0; i < sz; ++i) labels[i] = elems[i].to_string();
  m.set_labels(std::move(labels));
  return FullTransformationMonoid{n, std::move(m)};
}

struct DistinguishedSubsets {
  ElementSet symmetric;
  ElementSet alternating;
  std::optional<ElementSet> klein_four;  // n = 4 only
};

// K_4 = {id,(12)(34),(13)(24),(14)(23)} as T_4 indices.
inline ElementSet klein_four_subset(FullTransformationMonoid const& tn) {
  if (tn.n != 4) raise("KleinFourUndefined", "the Klein four-group lives in T_4 only");
  std::vector<int> members;
  for (auto const& images : std::vector<std::vector<int>>{
           {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}})
    members.push_back(tn.encode(Transformation{4, images}));
  return ElementSet::from_unsorted(std::move(members));
}

inline DistinguishedSubsets distinguished_subsets(FullTransformationMonoid const& tn) {
  std::vector<int> sym, alt;
  for (int i = 0; i < tn.monoid.size(); ++i) {
    Transformation t = tn.decode(i);
    if (!t.is_permutation()) continue;
    sym.push_back(i);
    if (t.is_even()) alt.push_back(i);
  }
  DistinguishedSubsets out{ElementSet::from_unsorted(std::move(sym)),
                           ElementSet::from_unsorted(std::move(alt)), std::nullopt};
  if (tn.n == 4) out.klein_four = klein_four_subset(tn);
  return out;
}

// I_k: transformations of rank <= k.
inline ElementSet rank_ideal(FullTransformationMonoid const& tn, int k) {
  if (k < 1 || k > tn.n) raise("RankOutOfRange", "rank threshold must be in 1..n");
  std::vector<int> members;
  for (int i = 0; i < tn.monoid.size(); ++i)
    if (tn.decode(i).rank() <= k) members.push_back(i);
  return ElementSet::from_unsorted(std::move(members));
}

// <a | a^(m+r) = a^m>: elements a^0..a^(m+r-1). m = 0 gives the cyclic
// group Z_r.
inline FiniteMonoid cyclic_monoid(int index_m, int period_r,
                                  int size_bound = defaults::size_bound) {
  if (index_m < 0 || period_r < 1) raise("BoundExceeded", "need m >= 0 and r >= 1");
  long long sz = (long long)index_m + period_r;
  if (sz > size_bound)
    raise("BoundExceeded", "cyclic monoid would have " + std::to_string(sz) + " elements");
  int n = int(sz);
  auto reduce = [&](long long e) {
    if (e < n) return int(e);
    return int(index_m + (e - index_m) % period_r);
  };
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[i][j] = reduce((long long)i + j);
  auto m = FiniteMonoid::from_table(table, 0, Validation::full);
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i == 0 ? "1" : (i == 1 ? "a" : "a^" + std::to_string(i));
  m.set_labels(std::move(labels));
  return m;
}

// {0..N} under max; identity 0, commutative, every element idempotent.
inline FiniteMonoid nmax_truncated(int n_top) {
  if (n_top < 0) raise("BoundExceeded", "N must be nonnegative");
  int n = n_top + 1;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[i][j] = std::max(i, j);
  auto m = FiniteMonoid::from_table(table, 0, Validation::full);
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
  m.set_labels(std::move(labels));
  return m;
}

// Closure of a transformation set under composition, as a FiniteMonoid with
// its element list. Convenient for building small permutation groups.
struct TransformationMonoid {
  FiniteMonoid monoid;
  std::vector<Transformation> elements;
};

inline TransformationMonoid monoid_from_transformations(
    int arity, std::vector<Transformation> const& generators,
    int size_bound = defaults::size_bound) {
  std::map<std::vector<int>, int> index_of;
  std::vector<Transformation> elems;
  auto add = [&](Transformation const& t) {
    auto [it, inserted] = index_of.emplace(t.images, int(elems.size()));
    if (inserted) elems.push_back(t);
    return it->second;
  };
  add(Transformation::identity_map(arity));
  for (auto const& g : generators) {
    if (g.arity != arity) raise("MalformedTable", "generator arity mismatch");
    add(g);
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      add(Transformation::compose(elems[i], elems[j]));
      add(Transformation::compose(elems[j], elems[i]));
      if (int(elems.size()) > size_bound)
        raise("SizeOverflow", "transformation closure exceeds bound");
    }
  }
  int n = int(elems.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[i][j] = index_of.at(Transformation::compose(elems[i], elems[j]).images);
  auto m = FiniteMonoid::from_table(table, 0, Validation::full);
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = elems[i].to_string();
  m.set_labels(std::move(labels));
  return TransformationMonoid{std::move(m), std::move(elems)};
}

// Bounded verification of the bicyclic product
// (m,n)(p,q) = (m+max(n,p)-n, q+max(n,p)-p) and of the diagonal's
// stability-set formula. The monoid itself is never materialized: it is
// infinite and no coordinate truncation is closed under this product.
struct BicyclicReport {
  int bound = 0;
  bool identity_ok = false;
  bool associativity_ok = false;
  bool stability_formula_ok = false;
  bool conjugates_in_diagonal_ok = false;
  bool ladder_identity_ok = false;  // (n,0)(0,n) = (n,n)
  bool commutative_on_range = false;
  std::vector<long long> counterexample;  // flattened witness, empty if none
  bool pass() const {
    return identity_ok && associativity_ok && stability_formula_ok &&
           conjugates_in_diagonal_ok && ladder_identity_ok;
  }
};

inline BicyclicReport bicyclic_bounded_check(int bound) {
  if (bound < 1) raise("BadParameters", "bound must be >= 1");
  using P = std::pair<long long, long long>;
  auto mul = [](P a, P b) {
    long long t = std::max(a.second, b.first);
    return P{a.first + t - a.second, b.second + t - b.first};
  };
  BicyclicReport rep;
  rep.bound = bound;

  std::vector<P> range;
  for (long long m = 0; m <= bound; ++m)
    for (long long n = 0; n <= bound; ++n) range.push_back({m, n});

  rep.identity_ok = true;
  for (auto x : range) {
    if (mul({0, 0}, x) != x || mul(x, {0, 0}) != x) {
      rep.identity_ok = false;
      rep.counterexample = {x.first, x.second};
      break;
    }
  }

  rep.associativity_ok = true;
  for (auto x : range) {
    for (auto y : range) {
      for (auto z : range) {
        if (mul(mul(x, y), z) != mul(x, mul(y, z))) {
          rep.associativity_ok = false;
          rep.counterexample = {x.first, x.second, y.first, y.second, z.first, z.second};
          break;
        }
      }
      if (!rep.associativity_ok) break;
    }
    if (!rep.associativity_ok) break;
  }

  // ((k,l),(r,s)) is in the diagonal's stability set iff s = r+k-l; membership
  // of (k,l)(d,d)(r,s) in the diagonal must not depend on d.
  rep.stability_formula_ok = true;
  rep.conjugates_in_diagonal_ok = true;
  for (auto x : range) {
    for (auto y : range) {
      bool formula = (y.second == y.first + x.first - x.second);
      bool any_hit = false, all_hit = true;
      for (long long d = 0; d <= 2 * bound + 2; ++d) {
        P c = mul(mul(x, {d, d}), y);
        bool in_diag = c.first == c.second;
        any_hit = any_hit || in_diag;
        all_hit = all_hit && in_diag;
      }
      if (any_hit != formula) {
        rep.stability_formula_ok = false;
        rep.counterexample = {x.first, x.second, y.first, y.second};
      }
      if (any_hit && !all_hit) {
        rep.conjugates_in_diagonal_ok = false;
        rep.counterexample = {x.first, x.second, y.first, y.second};
      }
    }
  }

  rep.ladder_identity_ok = true;
  for (long long n = 0; n <= bound; ++n)
    if (mul({n, 0}, {0, n}) != P{n, n}) rep.ladder_identity_ok = false;

  // Recorded, not asserted: the formula is not commutative on the range.
  rep.commutative_on_range = true;
  for (auto x : range) {
    for (auto y : range) {
      if (mul(x, y) != mul(y, x)) {
        rep.commutative_on_range = false;
        break;
      }
    }
    if (!rep.commutative_on_range) break;
  }
  return rep;
}

}  // namespace monlat

#endif  // MONLAT_BUILDERS_HPP
