#ifndef MONLAT_ZGROUPS_HPP
#define MONLAT_ZGROUPS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "monlat/builders.hpp"
#include "monlat/congruence.hpp"
#include "monlat/core.hpp"

namespace monlat {

// HNF intermediates can blow up even in tiny dimensions, so everything here
// runs on arbitrary-precision integers.
using BigInt = boost::multiprecision::cpp_int;
using IntVector = std::vector<BigInt>;
using IntMatrix = std::vector<IntVector>;

namespace detail {

// Row Hermite normal form: positive pivots in staircase position, entries
// above each pivot reduced into [0, pivot). When `transform` is given, the
// full (possibly zero) row set is kept and transform accumulates the
// unimodular row operations, so that transform * input = result.
inline IntMatrix hnf_rows(IntMatrix rows, int dim, IntMatrix* transform = nullptr) {
  int r = int(rows.size());
  for (auto const& row : rows)
    if (int(row.size()) != dim) raise("DimensionMismatch", "row length differs from dimension");
  if (transform) {
    transform->assign(r, IntVector(r, 0));
    for (int i = 0; i < r; ++i) (*transform)[i][i] = 1;
  }
  auto row_op = [&](int target, int source, BigInt const& factor) {
    for (int c = 0; c < dim; ++c) rows[target][c] -= factor * rows[source][c];
    if (transform)
      for (int c = 0; c < r; ++c) (*transform)[target][c] -= factor * (*transform)[source][c];
  };
  auto swap_rows = [&](int a, int b) {
    std::swap(rows[a], rows[b]);
    if (transform) std::swap((*transform)[a], (*transform)[b]);
  };
  auto negate_row = [&](int i) {
    for (auto& v : rows[i]) v = -v;
    if (transform)
      for (auto& v : (*transform)[i]) v = -v;
  };

  int pivot_row = 0;
  for (int col = 0; col < dim && pivot_row < r; ++col) {
    // euclidean elimination within the column
    for (;;) {
      int best = -1;
      for (int i = pivot_row; i < r; ++i)
        if (rows[i][col] != 0 &&
            (best < 0 || abs(rows[i][col]) < abs(rows[best][col])))
          best = i;
      if (best < 0) break;
      swap_rows(pivot_row, best);
      bool clean = true;
      for (int i = pivot_row + 1; i < r; ++i) {
        if (rows[i][col] == 0) continue;
        BigInt q = rows[i][col] / rows[pivot_row][col];
        row_op(i, pivot_row, q);
        if (rows[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[pivot_row][col] == 0) continue;
    if (rows[pivot_row][col] < 0) negate_row(pivot_row);
    // reduce entries above the pivot into [0, pivot)
    for (int i = 0; i < pivot_row; ++i) {
      BigInt q = rows[i][col] / rows[pivot_row][col];
      if (rows[i][col] - q * rows[pivot_row][col] < 0) q -= 1;
      if (q != 0) row_op(i, pivot_row, q);
    }
    ++pivot_row;
  }
  if (!transform) rows.resize(pivot_row);
  return rows;
}

}  // namespace detail

// Subgroup of Z^k held by its canonical HNF basis; equal subgroups have
// identical matrices.
struct IntSubgroup {
  int dim = 0;
  IntMatrix basis;  // rank many rows, HNF

  int rank() const { return int(basis.size()); }

  bool operator==(IntSubgroup const& other) const {
    return dim == other.dim && basis == other.basis;
  }
  bool operator!=(IntSubgroup const& other) const { return !(*this == other); }
};

inline IntSubgroup hnf(int dim, IntMatrix rows) {
  if (dim < 1) raise("DimensionMismatch", "dimension must be positive");
  IntMatrix reduced = detail::hnf_rows(std::move(rows), dim);
  return IntSubgroup{dim, std::move(reduced)};
}

inline bool membership(IntSubgroup const& h, IntVector v) {
  if (int(v.size()) != h.dim) raise("DimensionMismatch", "vector length differs from dimension");
  for (auto const& row : h.basis) {
    int col = 0;
    while (col < h.dim && row[col] == 0) ++col;
    if (col == h.dim) continue;
    if (v[col] % row[col] != 0) continue;  // cannot cancel with this pivot
    BigInt q = v[col] / row[col];
    for (int c = 0; c < h.dim; ++c) v[c] -= q * row[c];
  }
  for (auto const& x : v)
    if (x != 0) return false;
  return true;
}

struct JoinMeet {
  IntSubgroup join;
  IntSubgroup meet;
};

// Join is the HNF of the stacked bases; meet comes from the kernel rows of
// the stacking transform: if u * [B1; B2] = 0 then the B1-part of u lands in
// the intersection, and those rows generate it.
inline JoinMeet join_meet(IntSubgroup const& h1, IntSubgroup const& h2) {
  if (h1.dim != h2.dim) raise("DimensionMismatch", "subgroups live in different dimensions");
  int dim = h1.dim;
  IntMatrix stacked = h1.basis;
  stacked.insert(stacked.end(), h2.basis.begin(), h2.basis.end());

  IntMatrix transform;
  IntMatrix reduced = detail::hnf_rows(stacked, dim, &transform);

  IntMatrix join_rows;
  IntMatrix meet_rows;
  int r1 = h1.rank();
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    bool zero = std::all_of(reduced[i].begin(), reduced[i].end(),
                            [](BigInt const& x) { return x == 0; });
    if (!zero) {
      join_rows.push_back(reduced[i]);
      continue;
    }
    IntVector v(dim, 0);
    for (int j = 0; j < r1; ++j)
      for (int c = 0; c < dim; ++c) v[c] += transform[i][j] * h1.basis[j][c];
    meet_rows.push_back(std::move(v));
  }
  return JoinMeet{hnf(dim, std::move(join_rows)), hnf(dim, std::move(meet_rows))};
}

// Grothendieck-group side of the normal closure in the free commutative
// monoid N^k: the closure of nonnegative generators is N^k intersected with
// the subgroup they generate in Z^k, so the subgroup plus its membership
// predicate is the faithful finite artifact. For k = 1 this is <gcd>.
inline IntSubgroup ncl_free_commutative(int dim, IntMatrix const& generators) {
  for (auto const& g : generators)
    for (auto const& x : g)
      if (x < 0) raise("NegativeGenerator", "generators must be nonnegative");
  return hnf(dim, generators);
}

struct NplusCongruenceReport {
  int m = 0, n = 0, bound = 0;
  bool equivalence_ok = false;
  bool compatible_ok = false;
  bool unital_expected = false;  // m > 0
  bool unital_ok = false;
  bool cyclic_kernel_ok = false;  // relation = kernel of the projection onto the cyclic monoid
  bool cyclic_lattice_ok = false; // |Cong(C(m,n))| = (m+1) * #divisors(n)
  bool pass() const {
    return equivalence_ok && compatible_ok && unital_ok && cyclic_kernel_ok && cyclic_lattice_ok;
  }
};

// Bounded verification that R_{m,n} (equality together with i == j mod n on
// {i,j >= m}) is an additive congruence on N, unital exactly when m > 0, and
// that it is the kernel of the projection onto the cyclic monoid C(m,n).
inline NplusCongruenceReport nplus_congruence_check(int m, int n, int bound) {
  if (m < 0 || n < 1 || bound < m + 2 * n)
    raise("BadParameters", "need m >= 0, n >= 1 and bound >= m + 2n");
  NplusCongruenceReport rep;
  rep.m = m;
  rep.n = n;
  rep.bound = bound;

  auto rel = [&](int i, int j) {
    return i == j || (i >= m && j >= m && (i - j) % n == 0);
  };

  rep.equivalence_ok = true;
  for (int i = 0; i <= bound && rep.equivalence_ok; ++i) {
    if (!rel(i, i)) rep.equivalence_ok = false;
    for (int j = 0; j <= bound && rep.equivalence_ok; ++j) {
      if (rel(i, j) != rel(j, i)) rep.equivalence_ok = false;
      if (!rel(i, j)) continue;
      for (int l = 0; l <= bound; ++l)
        if (rel(j, l) && !rel(i, l)) {
          rep.equivalence_ok = false;
          break;
        }
    }
  }

  rep.compatible_ok = true;
  for (int i = 0; i <= bound && rep.compatible_ok; ++i)
    for (int j = 0; j <= bound && rep.compatible_ok; ++j) {
      if (!rel(i, j)) continue;
      for (int z = 0; i + z <= bound && j + z <= bound; ++z)
        if (!rel(i + z, j + z)) {
          rep.compatible_ok = false;
          break;
        }
    }

  rep.unital_expected = m > 0;
  bool zero_class_trivial = true;
  for (int j = 1; j <= bound; ++j)
    if (rel(0, j)) zero_class_trivial = false;
  rep.unital_ok = zero_class_trivial == rep.unital_expected;

  FiniteMonoid cyclic = cyclic_monoid(m, n);
  auto project = [&](int i) { return i < m + n ? i : m + (i - m) % n; };
  rep.cyclic_kernel_ok = true;
  for (int i = 0; i <= bound && rep.cyclic_kernel_ok; ++i)
    for (int j = 0; j <= bound; ++j)
      if (rel(i, j) != (project(i) == project(j))) {
        rep.cyclic_kernel_ok = false;
        break;
      }

  // congruences of C(m,n) correspond to the R_{m',n'} above R_{m,n}:
  // m' <= m and n' | n
  int divisors = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) ++divisors;
  auto congs = enumerate_congruences(cyclic, std::max(defaults::cong_enum_bound, m + n));
  rep.cyclic_lattice_ok = int(congs.size()) == (m + 1) * divisors;
  return rep;
}

struct SubgroupModularityReport {
  int dim = 0;
  int trials = 0;
  int passes = 0;
  std::uint64_t seed = 0;
  bool pass() const { return passes == trials; }
};

// Random modular-law trials on Sub(Z^k) with H1 <= H3 by construction. A
// failure would falsify the HNF implementation, not the lattice theory, so
// it is raised as a hard error.
inline SubgroupModularityReport modularity_subgroups(int dim, int trials, std::uint64_t seed) {
  if (dim < 1) raise("DimensionMismatch", "dimension must be positive");
  SubgroupModularityReport rep;
  rep.dim = dim;
  rep.trials = trials;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  auto random_subgroup = [&]() {
    int r = int(rand_below(rng, std::uint64_t(dim) + 2));
    IntMatrix rows(r, IntVector(dim));
    for (auto& row : rows)
      for (auto& x : row) x = BigInt(long(rand_below(rng, 19)) - 9);
    return hnf(dim, std::move(rows));
  };
  for (int t = 0; t < trials; ++t) {
    IntSubgroup h1 = random_subgroup();
    IntSubgroup h2 = random_subgroup();
    IntSubgroup h3 = join_meet(h1, random_subgroup()).join;  // h1 <= h3
    IntSubgroup lhs = join_meet(h1, join_meet(h2, h3).meet).join;
    IntSubgroup rhs = join_meet(join_meet(h1, h2).join, h3).meet;
    if (lhs != rhs)
      raise("Internal", "modular law violated in Sub(Z^k) at trial " + std::to_string(t));
    ++rep.passes;
  }
  return rep;
}

}  // namespace monlat

#endif  // MONLAT_ZGROUPS_HPP
