#ifndef MONLAT_LATTICE_HPP
#define MONLAT_LATTICE_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "monlat/core.hpp"

namespace monlat {

// Finite lattice over opaque node payloads. The order matrix and the
// join/meet tables are computed once at construction; nodes are expected to
// be closed under joins and meets, and any missing lub/glb is an error
// rather than a silent completion.
template <typename Node>
class Lattice {
 public:
  template <typename Leq>
  static Lattice build(std::vector<Node> nodes, Leq&& leq_predicate) {
    int n = int(nodes.size());
    if (n == 0) raise("NotALattice", "a lattice needs at least one node");
    Lattice lat;
    lat.nodes_ = std::move(nodes);
    lat.leq_.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) lat.leq_[i][j] = leq_predicate(lat.nodes_[i], lat.nodes_[j]);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && lat.leq_[i][j] && lat.leq_[j][i])
          raise("DuplicateNodes", "nodes " + std::to_string(i) + " and " + std::to_string(j) +
                                      " are order-equivalent");
    lat.join_.assign(n, std::vector<int>(n, -1));
    lat.meet_.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        lat.join_[i][j] = lat.bound_index(i, j, /*upper=*/true);
        lat.meet_[i][j] = lat.bound_index(i, j, /*upper=*/false);
      }
    }
    return lat;
  }

  int size() const { return int(nodes_.size()); }
  Node const& node(int i) const { return nodes_[i]; }
  std::vector<Node> const& nodes() const { return nodes_; }

  bool leq(int i, int j) const { return leq_[i][j]; }
  int join(int i, int j) const { return join_[i][j]; }
  int meet(int i, int j) const { return meet_[i][j]; }

  int bottom() const {
    for (int i = 0; i < size(); ++i) {
      bool below_all = true;
      for (int j = 0; j < size(); ++j) below_all = below_all && leq_[i][j];
      if (below_all) return i;
    }
    raise("NotALattice", "no bottom node");
  }

  int top() const {
    for (int i = 0; i < size(); ++i) {
      bool above_all = true;
      for (int j = 0; j < size(); ++j) above_all = above_all && leq_[j][i];
      if (above_all) return i;
    }
    raise("NotALattice", "no top node");
  }

  // Covering relation of the Hasse diagram, in node-index order.
  std::vector<std::pair<int, int>> cover_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i) {
      for (int j = 0; j < size(); ++j) {
        if (i == j || !leq_[i][j]) continue;
        bool covering = true;
        for (int k = 0; k < size() && covering; ++k)
          if (k != i && k != j && leq_[i][k] && leq_[k][j]) covering = false;
        if (covering) out.emplace_back(i, j);
      }
    }
    return out;
  }

 private:
  int bound_index(int i, int j, bool upper) const {
    int n = size();
    std::vector<int> candidates;
    for (int k = 0; k < n; ++k) {
      bool ok = upper ? (leq_[i][k] && leq_[j][k]) : (leq_[k][i] && leq_[k][j]);
      if (ok) candidates.push_back(k);
    }
    for (int c : candidates) {
      bool extremal = true;
      for (int k : candidates) {
        bool rel = upper ? leq_[c][k] : leq_[k][c];
        if (!rel) {
          extremal = false;
          break;
        }
      }
      if (extremal) return c;
    }
    raise("NotALattice", std::string("pair has no ") + (upper ? "join" : "meet") +
                             " within the node family",
          {i, j});
  }

  std::vector<Node> nodes_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<int>> join_;
  std::vector<std::vector<int>> meet_;
};

template <typename Node, typename Leq>
Lattice<Node> build_lattice(std::vector<Node> nodes, Leq&& leq_predicate) {
  return Lattice<Node>::build(std::move(nodes), std::forward<Leq>(leq_predicate));
}

struct ModularityResult {
  bool modular = true;
  // lexicographically least violating (s1, s2, s3) with s1 <= s3
  std::optional<std::array<int, 3>> witness;
};

// Modular law over all triples with s1 <= s3:
// s1 v (s2 ^ s3) = (s1 v s2) ^ s3.
template <typename Node>
ModularityResult is_modular(Lattice<Node> const& lat) {
  int n = lat.size();
  for (int s1 = 0; s1 < n; ++s1)
    for (int s2 = 0; s2 < n; ++s2)
      for (int s3 = 0; s3 < n; ++s3) {
        if (!lat.leq(s1, s3)) continue;
        if (lat.join(s1, lat.meet(s2, s3)) != lat.meet(lat.join(s1, s2), s3))
          return {false, std::array<int, 3>{s1, s2, s3}};
      }
  return {true, std::nullopt};
}

template <typename Node>
bool is_chain(Lattice<Node> const& lat) {
  for (int i = 0; i < lat.size(); ++i)
    for (int j = 0; j < lat.size(); ++j)
      if (!lat.leq(i, j) && !lat.leq(j, i)) return false;
  return true;
}

namespace detail {
inline std::string dot_escape(std::string const& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}
}  // namespace detail

// Hasse diagram in DOT syntax, edges pointing from lower to upper node.
template <typename Node, typename Labeler>
std::string to_dot(Lattice<Node> const& lat, Labeler&& labeler) {
  std::string out = "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  for (int i = 0; i < lat.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" +
           detail::dot_escape(labeler(lat.node(i))) + "\"];\n";
  for (auto [lo, hi] : lat.cover_edges())
    out += "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace monlat

#endif  // MONLAT_LATTICE_HPP
