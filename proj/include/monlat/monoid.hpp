#ifndef MONLAT_MONOID_HPP
#define MONLAT_MONOID_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monlat/core.hpp"

namespace monlat {

// Canonical subset of a finite monoid: sorted, duplicate-free element indices.
// Structural equality is set equality, which keeps lattice deduplication exact.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::vector<int> sorted_members) : members_(std::move(sorted_members)) {}

  static ElementSet from_unsorted(std::vector<int> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return ElementSet(std::move(members));
  }

  static ElementSet from_bitset(Bitset const& b) { return ElementSet(b.to_sorted_vector()); }

  std::vector<int> const& members() const { return members_; }
  int size() const { return int(members_.size()); }
  bool empty() const { return members_.empty(); }

  bool contains(int x) const {
    return std::binary_search(members_.begin(), members_.end(), x);
  }

  bool subset_of(ElementSet const& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                         members_.end());
  }

  ElementSet union_with(ElementSet const& other) const {
    std::vector<int> out;
    std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                   other.members_.end(), std::back_inserter(out));
    return ElementSet(std::move(out));
  }

  ElementSet intersect_with(ElementSet const& other) const {
    std::vector<int> out;
    std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                          other.members_.end(), std::back_inserter(out));
    return ElementSet(std::move(out));
  }

  Bitset to_bitset(int universe_size) const {
    Bitset b(universe_size);
    for (int x : members_) b.set(x);
    return b;
  }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool operator==(ElementSet const& other) const { return members_ == other.members_; }
  bool operator!=(ElementSet const& other) const { return members_ != other.members_; }
  bool operator<(ElementSet const& other) const {
    if (members_.size() != other.members_.size()) return members_.size() < other.members_.size();
    return members_ < other.members_;
  }

 private:
  std::vector<int> members_;
};

enum class Validation {
  full,  // exhaustive O(n^3) associativity scan
  spot,  // identity law in full, associativity by seeded sampling
  automatic,  // full when size <= bound, spot otherwise
};

// Finite monoid given by its Cayley table. Elements are dense indices
// 0..size-1, immutable after construction.
class FiniteMonoid {
 public:
  static FiniteMonoid from_table(std::vector<std::vector<int>> const& table, int identity,
                                 Validation mode = Validation::automatic,
                                 int full_validation_bound = defaults::full_validation_bound) {
    int n = int(table.size());
    if (n == 0) raise("MalformedTable", "empty table");
    if (identity < 0 || identity >= n) raise("MalformedTable", "identity index out of range");
    FiniteMonoid m;
    m.size_ = n;
    m.identity_ = identity;
    m.table_.resize(std::size_t(n) * n);
    for (int x = 0; x < n; ++x) {
      if (int(table[x].size()) != n) raise("MalformedTable", "table is not square");
      for (int y = 0; y < n; ++y) {
        int v = table[x][y];
        if (v < 0 || v >= n) raise("MalformedTable", "table entry out of range");
        m.table_[std::size_t(x) * n + y] = v;
      }
    }
    m.validate(mode, full_validation_bound);
    m.compute_inverses();
    return m;
  }

  int size() const { return size_; }
  int identity() const { return identity_; }
  bool fully_validated() const { return fully_validated_; }

  int product(int x, int y) const { return table_[std::size_t(x) * size_ + y]; }
  int const* row(int x) const { return table_.data() + std::size_t(x) * size_; }

  // Inverse element index, or -1 when x is not a unit.
  int inverse(int x) const { return inverse_[x]; }
  bool is_unit(int x) const { return inverse_[x] >= 0; }

  bool commutative() const {
    for (int x = 0; x < size_; ++x)
      for (int y = x + 1; y < size_; ++y)
        if (product(x, y) != product(y, x)) return false;
    return true;
  }

  std::vector<std::string> const& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && int(labels.size()) != size_)
      raise("MalformedTable", "label count does not match monoid size");
    labels_ = std::move(labels);
  }
  std::string label(int x) const {
    if (x >= 0 && x < int(labels_.size())) return labels_[x];
    return std::to_string(x);
  }

  std::vector<std::vector<int>> table_rows() const {
    std::vector<std::vector<int>> rows(size_);
    for (int x = 0; x < size_; ++x) rows[x].assign(row(x), row(x) + size_);
    return rows;
  }

 private:
  void validate(Validation mode, int full_bound) {
    int n = size_;
    for (int x = 0; x < n; ++x) {
      if (product(identity_, x) != x || product(x, identity_) != x)
        raise("IdentityViolation", "identity law fails at element " + std::to_string(x), {x});
    }
    bool full = mode == Validation::full ||
                (mode == Validation::automatic && n <= full_bound);
    if (full) {
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          int xy = product(x, y);
          int const* row_xy = row(xy);
          int const* row_x = row(x);
          int const* row_y = row(y);
          for (int z = 0; z < n; ++z) {
            if (row_xy[z] != row_x[row_y[z]])
              raise("NotAssociative",
                    "associativity fails at (" + std::to_string(x) + "," + std::to_string(y) +
                        "," + std::to_string(z) + ")",
                    {x, y, z});
          }
        }
      }
      fully_validated_ = true;
    } else {
      // Deterministic spot check; the monoid is recorded as unvalidated.
      std::mt19937_64 rng(0x6d6f6e6f6964ull);
      for (int t = 0; t < 100000; ++t) {
        int x = int(rand_below(rng, std::uint64_t(n)));
        int y = int(rand_below(rng, std::uint64_t(n)));
        int z = int(rand_below(rng, std::uint64_t(n)));
        if (product(product(x, y), z) != product(x, product(y, z)))
          raise("NotAssociative", "associativity fails (spot check)", {x, y, z});
      }
      fully_validated_ = false;
    }
  }

  void compute_inverses() {
    inverse_.assign(size_, -1);
    for (int x = 0; x < size_; ++x) {
      if (inverse_[x] >= 0) continue;
      for (int y = 0; y < size_; ++y) {
        if (product(x, y) == identity_ && product(y, x) == identity_) {
          inverse_[x] = y;
          inverse_[y] = x;
          break;
        }
      }
    }
  }

  int size_ = 0;
  int identity_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
  bool fully_validated_ = false;
};

// Map of element indices; source/target are supplied by the call site.
struct MonoidMorphism {
  std::vector<int> map;
};

inline bool is_valid_morphism(FiniteMonoid const& source, FiniteMonoid const& target,
                              MonoidMorphism const& phi) {
  if (int(phi.map.size()) != source.size()) return false;
  for (int v : phi.map)
    if (v < 0 || v >= target.size()) return false;
  if (phi.map[source.identity()] != target.identity()) return false;
  for (int x = 0; x < source.size(); ++x)
    for (int y = 0; y < source.size(); ++y)
      if (phi.map[source.product(x, y)] != target.product(phi.map[x], phi.map[y])) return false;
  return true;
}

// U(M): elements with a two-sided inverse.
inline ElementSet units(FiniteMonoid const& m) {
  std::vector<int> out;
  for (int x = 0; x < m.size(); ++x)
    if (m.is_unit(x)) out.push_back(x);
  return ElementSet(std::move(out));
}

namespace detail {

// Closure of seed under products, as a bitset. The identity is always added.
inline Bitset submonoid_closure_bits(FiniteMonoid const& m, Bitset seed) {
  seed.set(m.identity());
  std::vector<int> members = seed.to_sorted_vector();
  std::vector<int> work = members;
  while (!work.empty()) {
    int w = work.back();
    work.pop_back();
    // products w*s and s*w for every current member s
    std::size_t count = members.size();
    for (std::size_t i = 0; i < count; ++i) {
      int s = members[i];
      for (int p : {m.product(w, s), m.product(s, w)}) {
        if (!seed.test(p)) {
          seed.set(p);
          members.push_back(p);
          work.push_back(p);
        }
      }
    }
  }
  return seed;
}

// Closure under products and inverses of invertible members.
inline Bitset groupal_closure_bits(FiniteMonoid const& m, Bitset seed) {
  Bitset cur = submonoid_closure_bits(m, std::move(seed));
  for (;;) {
    Bitset withinv = cur;
    bool grew = false;
    cur.for_each([&](int x) {
      int ix = m.inverse(x);
      if (ix >= 0 && !withinv.test(ix)) {
        withinv.set(ix);
        grew = true;
      }
    });
    if (!grew) return cur;
    cur = submonoid_closure_bits(m, std::move(withinv));
  }
}

}  // namespace detail

// Least submonoid containing T (empty T gives {identity}).
inline ElementSet submonoid_generated(FiniteMonoid const& m, ElementSet const& t) {
  return ElementSet::from_bitset(detail::submonoid_closure_bits(m, t.to_bitset(m.size())));
}

// Least groupal submonoid containing T: closed under products and under
// inverses of its invertible members.
inline ElementSet groupal_closure(FiniteMonoid const& m, ElementSet const& t) {
  return ElementSet::from_bitset(detail::groupal_closure_bits(m, t.to_bitset(m.size())));
}

inline bool is_submonoid(FiniteMonoid const& m, ElementSet const& s) {
  if (!s.contains(m.identity())) return false;
  for (int x : s)
    for (int y : s)
      if (!s.contains(m.product(x, y))) return false;
  return true;
}

inline bool is_groupal(FiniteMonoid const& m, ElementSet const& s) {
  if (!is_submonoid(m, s)) return false;
  for (int x : s) {
    int ix = m.inverse(x);
    if (ix >= 0 && !s.contains(ix)) return false;
  }
  return true;
}

// Two-sided ideal test: I nonempty and x a y in I for all a in I, x,y in M.
inline bool is_ideal(FiniteMonoid const& m, ElementSet const& ideal) {
  if (ideal.empty()) return false;
  Bitset bits = ideal.to_bitset(m.size());
  for (int a : ideal) {
    for (int x = 0; x < m.size(); ++x) {
      int xa = m.product(x, a);
      int const* row_xa = m.row(xa);
      for (int y = 0; y < m.size(); ++y)
        if (!bits.test(row_xa[y])) return false;
    }
  }
  return true;
}

inline FiniteMonoid direct_product(FiniteMonoid const& a, FiniteMonoid const& b,
                                   int size_bound = defaults::size_bound) {
  long long n = (long long)a.size() * b.size();
  if (n > size_bound)
    raise("SizeOverflow", "direct product has " + std::to_string(n) + " elements (bound " +
                              std::to_string(size_bound) + ")");
  int bn = b.size();
  auto idx = [bn](int x, int y) { return x * bn + y; };
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                      std::vector<int>(static_cast<std::size_t>(n)));
  for (int x1 = 0; x1 < a.size(); ++x1)
    for (int y1 = 0; y1 < bn; ++y1)
      for (int x2 = 0; x2 < a.size(); ++x2)
        for (int y2 = 0; y2 < bn; ++y2)
          table[idx(x1, y1)][idx(x2, y2)] = idx(a.product(x1, x2), b.product(y1, y2));
  auto m = FiniteMonoid::from_table(table, idx(a.identity(), b.identity()), Validation::full);
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < bn; ++y) labels[idx(x, y)] = "(" + a.label(x) + "," + b.label(y) + ")";
  m.set_labels(std::move(labels));
  return m;
}

namespace detail {

inline bool order_profile(FiniteMonoid const& m, int x, int cap, int& out) {
  // smallest k >= 1 with x^k inside the earlier powers (index+period signature
  // would be finer; the scalar is enough for pruning)
  int cur = x;
  for (int k = 1; k <= cap; ++k) {
    if (cur == m.identity()) {
      out = k;
      return true;
    }
    cur = m.product(cur, x);
  }
  out = cap + 1;
  return false;
}

struct IsoEnv {
  FiniteMonoid const* a;
  FiniteMonoid const* b;
  std::vector<int> map;      // a-index -> b-index or -1
  std::vector<bool> used;    // b-index taken
  std::vector<int> sig_a, sig_b;
};

inline bool iso_backtrack(IsoEnv& env, int x) {
  int n = env.a->size();
  if (x == n) return true;
  if (env.map[x] != -1) return iso_backtrack(env, x + 1);
  for (int y = 0; y < n; ++y) {
    if (env.used[y] || env.sig_a[x] != env.sig_b[y]) continue;
    env.map[x] = y;
    env.used[y] = true;
    bool ok = true;
    // check all products against the partial map
    for (int u = 0; u < n && ok; ++u) {
      if (env.map[u] == -1) continue;
      for (int v = 0; v < n && ok; ++v) {
        if (env.map[v] == -1) continue;
        int p = env.a->product(u, v);
        if (env.map[p] != -1 && env.map[p] != env.b->product(env.map[u], env.map[v])) ok = false;
      }
    }
    if (ok && iso_backtrack(env, x + 1)) return true;
    env.map[x] = -1;
    env.used[y] = false;
  }
  return false;
}

}  // namespace detail

// Brute-force isomorphism search with invariant pruning; only intended for
// the small quotient identifications.
inline std::optional<MonoidMorphism> find_isomorphism(FiniteMonoid const& a,
                                                      FiniteMonoid const& b,
                                                      int bound = defaults::iso_bound) {
  if (a.size() > bound || b.size() > bound)
    raise("BoundExceeded", "isomorphism search limited to size " + std::to_string(bound));
  if (a.size() != b.size()) return std::nullopt;
  int n = a.size();

  auto signature = [n](FiniteMonoid const& m, int x) {
    int is_id = (x == m.identity());
    int is_unit = m.is_unit(x) ? 1 : 0;
    int idem = (m.product(x, x) == x) ? 1 : 0;
    int ord = 0;
    detail::order_profile(m, x, n, ord);
    return ((is_id * 2 + is_unit) * 2 + idem) * (n + 2) + ord;
  };
  std::vector<int> sig_a(n), sig_b(n);
  for (int x = 0; x < n; ++x) sig_a[x] = signature(a, x);
  for (int x = 0; x < n; ++x) sig_b[x] = signature(b, x);
  {
    auto sa = sig_a, sb = sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }

  detail::IsoEnv env{&a, &b, std::vector<int>(n, -1), std::vector<bool>(n, false),
                     std::move(sig_a), std::move(sig_b)};
  env.map[a.identity()] = b.identity();
  env.used[b.identity()] = true;
  if (!detail::iso_backtrack(env, 0)) return std::nullopt;
  MonoidMorphism phi{env.map};
  return phi;
}

}  // namespace monlat

#endif  // MONLAT_MONOID_HPP
