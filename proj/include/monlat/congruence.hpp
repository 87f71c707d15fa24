#ifndef MONLAT_CONGRUENCE_HPP
#define MONLAT_CONGRUENCE_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "monlat/builders.hpp"
#include "monlat/monoid.hpp"
#include "monlat/normality.hpp"

namespace monlat {

// Compatible partition of a finite monoid, stored as a class index per
// element. Classes are numbered in order of their least representative, so
// equal congruences have equal class vectors.
class Congruence {
 public:
  Congruence() = default;

  static Congruence from_class_vector(std::vector<int> raw) {
    Congruence r;
    int n = int(raw.size());
    std::vector<int> renumber(n, -1);
    r.class_of_.resize(n);
    int next = 0;
    for (int x = 0; x < n; ++x) {
      int c = raw[x];
      if (c < 0 || c >= n) raise("Internal", "class index out of range");
      if (renumber[c] < 0) renumber[c] = next++;
      r.class_of_[x] = renumber[c];
    }
    r.num_classes_ = next;
    return r;
  }

  static Congruence identity(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return from_class_vector(std::move(v));
  }

  static Congruence uniform(int n) { return from_class_vector(std::vector<int>(n, 0)); }

  int size() const { return int(class_of_.size()); }
  int num_classes() const { return num_classes_; }
  int class_of(int x) const { return class_of_[x]; }
  std::vector<int> const& class_vector() const { return class_of_; }

  bool related(int x, int y) const { return class_of_[x] == class_of_[y]; }

  std::vector<std::vector<int>> classes() const {
    std::vector<std::vector<int>> out(num_classes_);
    for (int x = 0; x < size(); ++x) out[class_of_[x]].push_back(x);
    return out;
  }

  // R refines S when every R-class sits inside an S-class (R contained in S
  // as a relation).
  bool refines(Congruence const& coarser) const {
    std::vector<int> image(num_classes_, -1);
    for (int x = 0; x < size(); ++x) {
      int c = class_of_[x];
      if (image[c] < 0)
        image[c] = coarser.class_of_[x];
      else if (image[c] != coarser.class_of_[x])
        return false;
    }
    return true;
  }

  bool operator==(Congruence const& other) const { return class_of_ == other.class_of_; }
  bool operator!=(Congruence const& other) const { return class_of_ != other.class_of_; }
  bool operator<(Congruence const& other) const {
    if (num_classes_ != other.num_classes_) return num_classes_ > other.num_classes_;
    return class_of_ < other.class_of_;
  }

 private:
  std::vector<int> class_of_;
  int num_classes_ = 0;
};

namespace detail {

struct UnionFind {
  std::vector<int> parent, size;

  explicit UnionFind(int n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  // returns false when already merged
  bool merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    return true;
  }

  std::vector<int> to_class_vector() {
    std::vector<int> v(parent.size());
    for (std::size_t x = 0; x < parent.size(); ++x) v[x] = find(int(x));
    return v;
  }
};

struct VectorHash {
  std::size_t operator()(std::vector<int> const& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= std::size_t(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace detail

inline bool is_compatible(FiniteMonoid const& m, Congruence const& r) {
  if (r.size() != m.size()) return false;
  // comparing every member against its class representative suffices by
  // transitivity
  std::vector<int> rep(r.num_classes(), -1);
  for (int x = 0; x < m.size(); ++x) {
    int c = r.class_of(x);
    if (rep[c] < 0) {
      rep[c] = x;
      continue;
    }
    int a = rep[c];
    for (int z = 0; z < m.size(); ++z) {
      if (r.class_of(m.product(z, a)) != r.class_of(m.product(z, x))) return false;
      if (r.class_of(m.product(a, z)) != r.class_of(m.product(x, z))) return false;
    }
  }
  return true;
}

// Least congruence containing the given pairs: union-find with a worklist
// that, for every merged pair, enqueues all left and right translates.
inline Congruence congruence_closure(FiniteMonoid const& m, PairSet const& pairs) {
  int n = m.size();
  detail::UnionFind uf(n);
  std::deque<std::pair<int, int>> work;
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) raise("Internal", "pair index out of range");
    work.emplace_back(a, b);
  }
  while (!work.empty()) {
    auto [a, b] = work.front();
    work.pop_front();
    if (!uf.merge(a, b)) continue;
    int const* row_a = m.row(a);
    int const* row_b = m.row(b);
    for (int z = 0; z < n; ++z) {
      work.emplace_back(m.product(z, a), m.product(z, b));
      work.emplace_back(row_a[z], row_b[z]);
    }
  }
  return Congruence::from_class_vector(uf.to_class_vector());
}

// R_A: least congruence relating the identity to every member of A.
inline Congruence induced_congruence(FiniteMonoid const& m, ElementSet const& a) {
  PairSet pairs;
  for (int x : a) pairs.emplace_back(m.identity(), x);
  return congruence_closure(m, pairs);
}

inline Congruence join_congruences(FiniteMonoid const& m, Congruence const& r1,
                                   Congruence const& r2) {
  PairSet pairs;
  for (auto const& r : {r1, r2}) {
    std::vector<int> rep(r.num_classes(), -1);
    for (int x = 0; x < m.size(); ++x) {
      int c = r.class_of(x);
      if (rep[c] < 0)
        rep[c] = x;
      else
        pairs.emplace_back(rep[c], x);
    }
  }
  return congruence_closure(m, pairs);
}

inline Congruence meet_congruences(Congruence const& r1, Congruence const& r2) {
  // intersection of equivalences is a congruence when both are
  std::vector<int> v(r1.size());
  for (int x = 0; x < r1.size(); ++x) v[x] = r1.class_of(x) * r2.size() + r2.class_of(x);
  std::vector<int> compact(v);
  std::sort(compact.begin(), compact.end());
  compact.erase(std::unique(compact.begin(), compact.end()), compact.end());
  for (int& x : v)
    x = int(std::lower_bound(compact.begin(), compact.end(), x) - compact.begin());
  return Congruence::from_class_vector(std::move(v));
}

// Independent oracle for R_A membership: breadth-first search over the
// symmetric one-step elementary A-deformation relation
// v = v1*v2  ~~>  w = v1*a*v2.
inline bool deformation_reachable(FiniteMonoid const& m, ElementSet const& a, int x, int y) {
  if (x == y) return true;
  int n = m.size();
  std::vector<Bitset> adj(n, Bitset(n));
  for (int v1 = 0; v1 < n; ++v1) {
    for (int v2 = 0; v2 < n; ++v2) {
      int v = m.product(v1, v2);
      for (int el : a) {
        int w = m.product(m.product(v1, el), v2);
        adj[v].set(w);
        adj[w].set(v);
      }
    }
  }
  Bitset seen(n);
  seen.set(x);
  std::deque<int> queue{x};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == y) return true;
    adj[v].for_each([&](int w) {
      if (!seen.test(w)) {
        seen.set(w);
        queue.push_back(w);
      }
    });
  }
  return seen.test(y);
}

// [1]_R, always a normal submonoid.
inline ElementSet identity_class(FiniteMonoid const& m, Congruence const& r) {
  std::vector<int> out;
  int c = r.class_of(m.identity());
  for (int x = 0; x < m.size(); ++x)
    if (r.class_of(x) == c) out.push_back(x);
  return ElementSet(std::move(out));
}

// Unital: [1]_R = {1}; equivalently no unit is related to anything but
// itself. Both characterizations are evaluated and must agree. (Restricting
// R to U(M) x U(M) would be weaker: the uniform congruence on a non-group
// monoid with trivial unit group restricts to equality without being
// unital.)
inline bool is_unital(FiniteMonoid const& m, Congruence const& r) {
  bool by_class = identity_class(m, r).size() == 1;
  bool by_units = true;
  std::vector<int> class_size(r.num_classes(), 0);
  for (int x = 0; x < m.size(); ++x) ++class_size[r.class_of(x)];
  for (int u = 0; u < m.size() && by_units; ++u)
    if (m.is_unit(u) && class_size[r.class_of(u)] != 1) by_units = false;
  if (by_class != by_units)
    raise("Internal", "unitality characterizations disagree");
  return by_class;
}

// Rees congruence of an ideal: the ideal is one class, everything else is a
// singleton.
inline Congruence rees_congruence(FiniteMonoid const& m, ElementSet const& ideal) {
  if (!is_ideal(m, ideal)) raise("NotIdeal", "Rees congruence needs an ideal");
  std::vector<int> v(m.size());
  int ideal_class = *ideal.begin();
  for (int x = 0; x < m.size(); ++x) v[x] = ideal.contains(x) ? ideal_class : x;
  return Congruence::from_class_vector(std::move(v));
}

struct QuotientResult {
  FiniteMonoid monoid;
  MonoidMorphism projection;
};

// M/R with the projection morphism. Well-definedness is implied by
// compatibility but re-validated below; a failure would be an internal bug.
inline QuotientResult quotient(FiniteMonoid const& m, Congruence const& r) {
  if (!is_compatible(m, r)) raise("Internal", "quotient of an incompatible partition");
  int c = r.num_classes();
  std::vector<int> rep(c, -1);
  for (int x = 0; x < m.size(); ++x)
    if (rep[r.class_of(x)] < 0) rep[r.class_of(x)] = x;
  std::vector<std::vector<int>> table(c, std::vector<int>(c));
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j) table[i][j] = r.class_of(m.product(rep[i], rep[j]));
  for (int x = 0; x < m.size(); ++x)
    for (int y = 0; y < m.size(); ++y)
      if (r.class_of(m.product(x, y)) != table[r.class_of(x)][r.class_of(y)])
        raise("Internal", "quotient table is not well defined");
  auto q = FiniteMonoid::from_table(table, r.class_of(m.identity()), Validation::full);
  std::vector<std::string> labels(c);
  for (int i = 0; i < c; ++i) labels[i] = "[" + m.label(rep[i]) + "]";
  q.set_labels(std::move(labels));
  return QuotientResult{std::move(q), MonoidMorphism{r.class_vector()}};
}

// Exact Cong(M): all principal congruences, deduplicated, then closed under
// pairwise joins.
inline std::vector<Congruence> enumerate_congruences(FiniteMonoid const& m,
                                                     int bound = defaults::cong_enum_bound) {
  if (m.size() > bound)
    raise("BoundExceeded", "congruence enumeration limited to size " + std::to_string(bound) +
                               " (monoid has " + std::to_string(m.size()) + ")");
  int n = m.size();
  std::unordered_set<std::vector<int>, detail::VectorHash> seen;
  std::vector<Congruence> family;
  auto insert = [&](Congruence r) {
    if (seen.insert(r.class_vector()).second) {
      family.push_back(std::move(r));
      return true;
    }
    return false;
  };
  insert(Congruence::identity(n));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) insert(congruence_closure(m, {{a, b}}));

  // pairwise join closure, coarsest congruences last
  std::sort(family.begin(), family.end());
  std::size_t frontier_begin = 0;
  while (frontier_begin < family.size()) {
    std::size_t frontier_end = family.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i)
      for (std::size_t j = 0; j < frontier_end; ++j) {
        if (family[i].refines(family[j]) || family[j].refines(family[i])) continue;
        insert(join_congruences(m, family[i], family[j]));
      }
    frontier_begin = frontier_end;
  }
  std::sort(family.begin(), family.end());
  return family;
}

enum class CongruenceKind { normal, exceptional };

struct Classification {
  CongruenceKind kind;
  ElementSet anchor;  // [1]_R
};

// Normal when R is recovered from its identity class, exceptional otherwise.
inline Classification classify_congruence(FiniteMonoid const& m, Congruence const& r) {
  ElementSet anchor = identity_class(m, r);
  CongruenceKind kind = induced_congruence(m, anchor) == r ? CongruenceKind::normal
                                                           : CongruenceKind::exceptional;
  return Classification{kind, std::move(anchor)};
}

// The meet-semilattice isomorphism Cong_S(M) ~ Cong_1(M/S): push_down is
// t_S (R maps to its image on the classes of R_S), lift is the inverse t*_S
// (pull back along the projection).
class UnitalTransfer {
 public:
  UnitalTransfer(FiniteMonoid const& m, ElementSet const& s)
      : monoid_(&m), submonoid_(s), rs_(induced_congruence(m, s)) {
    if (identity_class(m, rs_) != s)
      raise("FiberMismatch",
            "subset is not a normal submonoid: [1] of its induced congruence differs");
    auto q = quotient(m, rs_);
    quotient_ = std::move(q.monoid);
    projection_ = std::move(q.projection.map);
  }

  FiniteMonoid const& quotient_monoid() const { return quotient_; }
  Congruence const& induced() const { return rs_; }
  std::vector<int> const& projection() const { return projection_; }

  Congruence push_down(Congruence const& r) const {
    if (identity_class(*monoid_, r) != submonoid_)
      raise("FiberMismatch", "congruence identity class differs from the fiber submonoid");
    std::vector<int> v(quotient_.size(), -1);
    for (int x = 0; x < monoid_->size(); ++x) {
      int q = projection_[x];
      if (v[q] < 0)
        v[q] = r.class_of(x);
      else if (v[q] != r.class_of(x))
        raise("Internal", "push-down is not constant on fibers");
    }
    return Congruence::from_class_vector(std::move(v));
  }

  Congruence lift(Congruence const& t) const {
    if (t.size() != quotient_.size())
      raise("FiberMismatch", "congruence lives on the wrong monoid");
    if (!is_unital(quotient_, t)) raise("NotUnital", "lift needs a unital congruence");
    std::vector<int> v(monoid_->size());
    for (int x = 0; x < monoid_->size(); ++x) v[x] = t.class_of(projection_[x]);
    return Congruence::from_class_vector(std::move(v));
  }

 private:
  FiniteMonoid const* monoid_;
  ElementSet submonoid_;
  Congruence rs_;
  FiniteMonoid quotient_;
  std::vector<int> projection_;
};

struct BlowupFiber {
  ElementSet submonoid;
  int fiber_size = 0;          // |Cong_S(M)|
  int unital_on_quotient = 0;  // |Cong_1(M/S)|
  bool roundtrips_ok = false;
  bool rs_maps_to_identity = false;
};

struct BlowupReport {
  int total_congruences = 0;
  int fiber_sum = 0;
  bool fibers_match_norsub = true;
  std::vector<BlowupFiber> fibers;
  bool pass = false;
};

// Checks the blow-up bijection Cong(M) <-> union over S of Cong_1(M/S):
// cardinalities, per-fiber roundtrips, and R_S landing on the identity
// congruence of M/S.
inline BlowupReport verify_blowup(FiniteMonoid const& m,
                                  int cong_bound = defaults::cong_enum_bound,
                                  int norsub_bound = defaults::norsub_enum_bound,
                                  unsigned threads = 1) {
  auto congs = enumerate_congruences(m, cong_bound);
  auto norsub = enumerate_normal_submonoids(m, norsub_bound, threads);

  BlowupReport rep;
  rep.total_congruences = int(congs.size());

  std::set<ElementSet, detail::ElementSetOrder> norsub_set(norsub.begin(), norsub.end());
  std::set<ElementSet, detail::ElementSetOrder> anchors;
  for (auto const& r : congs) anchors.insert(identity_class(m, r));
  rep.fibers_match_norsub = anchors == norsub_set;

  bool all_ok = true;
  for (auto const& s : norsub) {
    BlowupFiber fiber;
    fiber.submonoid = s;
    UnitalTransfer transfer(m, s);

    std::vector<Congruence> fiber_congs;
    for (auto const& r : congs)
      if (identity_class(m, r) == s) fiber_congs.push_back(r);
    fiber.fiber_size = int(fiber_congs.size());

    auto quotient_congs = enumerate_congruences(transfer.quotient_monoid(), cong_bound);
    std::vector<Congruence> unital_congs;
    for (auto const& t : quotient_congs)
      if (is_unital(transfer.quotient_monoid(), t)) unital_congs.push_back(t);
    fiber.unital_on_quotient = int(unital_congs.size());

    fiber.roundtrips_ok = true;
    std::set<std::vector<int>> images;
    for (auto const& r : fiber_congs) {
      Congruence t = transfer.push_down(r);
      images.insert(t.class_vector());
      if (!is_unital(transfer.quotient_monoid(), t) || transfer.lift(t) != r)
        fiber.roundtrips_ok = false;
    }
    for (auto const& t : unital_congs) {
      Congruence r = transfer.lift(t);
      if (identity_class(m, r) != s || transfer.push_down(r) != t) fiber.roundtrips_ok = false;
      if (!images.count(t.class_vector())) fiber.roundtrips_ok = false;
    }
    fiber.rs_maps_to_identity =
        transfer.push_down(transfer.induced()) == Congruence::identity(transfer.quotient_monoid().size());

    rep.fiber_sum += fiber.unital_on_quotient;
    all_ok = all_ok && fiber.roundtrips_ok && fiber.rs_maps_to_identity &&
             fiber.fiber_size == fiber.unital_on_quotient;
    rep.fibers.push_back(std::move(fiber));
  }
  rep.pass = all_ok && rep.fibers_match_norsub && rep.fiber_sum == rep.total_congruences;
  return rep;
}

// Congruentially simple: every normal quotient other than M itself carries
// only the trivial unital congruence.
inline bool is_congruentially_simple(FiniteMonoid const& m,
                                     int cong_bound = defaults::cong_enum_bound,
                                     int norsub_bound = defaults::norsub_enum_bound,
                                     unsigned threads = 1) {
  auto norsub = enumerate_normal_submonoids(m, norsub_bound, threads);
  for (auto const& s : norsub) {
    if (s.size() == 1) continue;
    UnitalTransfer transfer(m, s);
    auto quotient_congs = enumerate_congruences(transfer.quotient_monoid(), cong_bound);
    int unital = 0;
    for (auto const& t : quotient_congs)
      if (is_unital(transfer.quotient_monoid(), t)) ++unital;
    if (unital != 1) return false;
  }
  return true;
}

namespace detail {

inline void all_permutations(int k, std::vector<Transformation>& out) {
  std::vector<int> images(k);
  std::iota(images.begin(), images.end(), 0);
  do {
    out.push_back(Transformation{k, images});
  } while (std::next_permutation(images.begin(), images.end()));
}

}  // namespace detail

// Malcev's congruence R_{k,N} on T_n: identity above rank k, the ideal
// I_{k-1} collapsed, and rank-k maps u,v related when they share an image
// {i_1 < ... < i_k} and v = tau*u for some tau in N, with N <= S_k acting on
// the image through the order isomorphism j -> i_j.
inline Congruence malcev_congruence(FullTransformationMonoid const& tn, int k,
                                    ElementSet const& n_indices) {
  int n = tn.n;
  if (k < 1 || k > n) raise("RankOutOfRange", "need 1 <= k <= n");

  long long tk_size = 1;
  for (int i = 0; i < k; ++i) tk_size *= k;
  std::vector<Transformation> group;
  for (int idx : n_indices) {
    if (idx < 0 || idx >= tk_size)
      raise("NotNormalSubgroup", "index is not a valid T_k element");
    Transformation t = decode_transformation(k, idx);
    if (!t.is_permutation()) raise("NotNormalSubgroup", "subset contains a non-permutation");
    group.push_back(t);
  }
  // subgroup of S_k, closed under conjugation by all of S_k
  auto contains = [&](Transformation const& t) {
    return std::find(group.begin(), group.end(), t) != group.end();
  };
  if (!contains(Transformation::identity_map(k)))
    raise("NotNormalSubgroup", "missing the identity permutation");
  for (auto const& f : group)
    for (auto const& g : group)
      if (!contains(Transformation::compose(f, g)))
        raise("NotNormalSubgroup", "subset is not closed under composition");
  std::vector<Transformation> sk;
  detail::all_permutations(k, sk);
  for (auto const& sigma : sk) {
    Transformation sigma_inv{k, std::vector<int>(k)};
    for (int i = 0; i < k; ++i) sigma_inv.images[sigma.images[i]] = i;
    for (auto const& tau : group)
      if (!contains(Transformation::compose(sigma, Transformation::compose(tau, sigma_inv))))
        raise("NotNormalSubgroup", "subset is not closed under S_k conjugation");
  }

  detail::UnionFind uf(tn.monoid.size());
  int low_rank_anchor = -1;
  for (int idx = 0; idx < tn.monoid.size(); ++idx) {
    Transformation u = tn.decode(idx);
    int rank = u.rank();
    if (rank < k) {
      if (low_rank_anchor < 0)
        low_rank_anchor = idx;
      else
        uf.merge(low_rank_anchor, idx);
      continue;
    }
    if (rank > k) continue;
    // image in increasing order
    std::vector<int> image;
    {
      std::vector<bool> seen(n, false);
      for (int v : u.images) seen[v] = true;
      for (int i = 0; i < n; ++i)
        if (seen[i]) image.push_back(i);
    }
    for (auto const& tau : group) {
      Transformation v{n, std::vector<int>(n)};
      std::vector<int> emb(n);
      std::iota(emb.begin(), emb.end(), 0);
      for (int j = 0; j < k; ++j) emb[image[j]] = image[tau.images[j]];
      for (int i = 0; i < n; ++i) v.images[i] = emb[u.images[i]];
      uf.merge(idx, tn.encode(v));
    }
  }
  Congruence r = Congruence::from_class_vector(uf.to_class_vector());
  if (!is_compatible(tn.monoid, r)) raise("Internal", "Malcev relation is not a congruence");
  return r;
}

// For commutative M and a subsemigroup A, (x,y) in R_A iff x+a = y+a' for
// some a,a' in A. Cross-checked in tests against induced_congruence.
inline bool commutative_pair_oracle(FiniteMonoid const& m, ElementSet const& a, int x, int y) {
  if (!m.commutative()) raise("NotCommutative", "oracle needs a commutative monoid");
  if (a.empty()) raise("NotSubsemigroup", "A must be a nonempty subsemigroup");
  for (int p : a)
    for (int q : a)
      if (!a.contains(m.product(p, q))) raise("NotSubsemigroup", "A is not closed under products");
  for (int p : a)
    for (int q : a)
      if (m.product(x, p) == m.product(y, q)) return true;
  return false;
}

}  // namespace monlat

#endif  // MONLAT_CONGRUENCE_HPP
