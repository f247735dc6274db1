#pragma once
// Independent mutation-based machinery: exchange matrices from
// triangulations, seed mutation with exact Laurent division, breadth-first
// enumeration of the finite mutation class, and expansion of cluster
// variables and cluster monomials.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "pgon/laurent.hpp"
#include "pgon/tpath.hpp"
#include "pgon/triangulation.hpp"

namespace pgon {

struct ExchangeMatrix {
  int n = 0;
  std::vector<std::vector<int>> b;

  static ExchangeMatrix zero(int n) { return {n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0))}; }

  bool is_skew_symmetric() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (b[i][j] != -b[j][i]) return false;
    return true;
  }
  bool operator==(const ExchangeMatrix& o) const { return n == o.n && b == o.b; }

  ExchangeMatrix permuted(const std::vector<int>& to_new) const {
    ExchangeMatrix out = zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.b[to_new[i]][to_new[j]] = b[i][j];
    return out;
  }
};

/// Standard matrix mutation in direction k.
inline ExchangeMatrix mutate(const ExchangeMatrix& m, int k) {
  ExchangeMatrix out = ExchangeMatrix::zero(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      if (i == k || j == k) {
        out.b[i][j] = -m.b[i][j];
      } else {
        int s = m.b[i][k] > 0 ? 1 : (m.b[i][k] < 0 ? -1 : 0);
        int prod = m.b[i][k] * m.b[k][j];
        out.b[i][j] = m.b[i][j] + (prod > 0 ? s * prod : 0);
      }
    }
  return out;
}

/// Exchange matrix of a tagged triangulation.  Each ordinary triangle that
/// is not self-folded contributes +1 to b[tau][sigma] when sigma follows tau
/// clockwise along its sides; loop incidences are rerouted to the notched
/// radius so a self-folded pair shares its peripheral couplings.
inline ExchangeMatrix b_matrix(const TaggedTriangulation& t) {
  const Surface& s = t.surface();
  if (t.shape() == TaggedTriangulation::Shape::AllNotched) {
    TaggedTriangulation companion = t.notched_companion();
    ExchangeMatrix m = b_matrix(companion);
    // Positions line up: notching all radii maps arc k of the companion to
    // arc k' of t; build the index map.
    std::vector<int> to_new(s.n);
    for (int k = 0; k < s.n; ++k) {
      TaggedArc a = notch_at_puncture(s, companion.arcs()[k]);
      to_new[k] = t.index_of(a);
    }
    return m.permuted(to_new);
  }
  IdealTriangulation ideal = ideal_from_tagged(t);
  // A loop stands for its two parallel tagged radii: both copies receive
  // the loop's couplings, which is what makes their rows agree.
  auto images = [&](const OrdinaryArc& a) {
    std::vector<int> out;
    if (a.kind == OrdKind::Loop) {
      out.push_back(t.index_of(TaggedArc::radius_plain(s, a.i)));
      out.push_back(t.index_of(TaggedArc::radius_notched(s, a.i)));
    } else {
      out.push_back(t.index_of(iota(s, a)));
    }
    return out;
  };
  ExchangeMatrix m = ExchangeMatrix::zero(s.n);
  for (auto& tri : ideal.triangles()) {
    if (tri.self_folded) continue;
    for (int x = 0; x < 3; ++x) {
      const auto& a = tri.sides[x];
      const auto& b = tri.sides[(x + 1) % 3];  // follows a clockwise
      if (a.is_boundary || b.is_boundary) continue;
      for (int ia : images(a.arc))
        for (int ib : images(b.arc)) {
          m.b[ia][ib] += 1;
          m.b[ib][ia] -= 1;
        }
    }
  }
  if (!m.is_skew_symmetric()) throw std::logic_error("b_matrix: not skew-symmetric");
  return m;
}

/// A seed: tagged triangulation naming the cluster, its exchange matrix,
/// and the expansion of each cluster variable in a fixed initial cluster.
struct Seed {
  TaggedTriangulation cluster;
  ExchangeMatrix b;
  std::vector<LaurentPoly> expansions;  // aligned with cluster.arcs()

  const LaurentPoly& expansion_of(const TaggedArc& a) const {
    int k = cluster.index_of(a);
    if (k < 0) throw std::invalid_argument("seed: arc not in this cluster");
    return expansions[k];
  }
};

inline Seed initial_seed(const TaggedTriangulation& t) {
  Seed s{t, b_matrix(t), {}};
  VarTableRef table = tagged_table(t);
  for (int k = 0; k < (int)t.arcs().size(); ++k)
    s.expansions.push_back(LaurentPoly::variable(table, k));
  return s;
}

/// Mutate a seed in direction k.  The new variable is computed by the
/// exchange relation on the stored expansions; the division must be exact.
inline Seed mutate(const Seed& seed, int k) {
  const Surface& s = seed.cluster.surface();
  VarTableRef table = seed.expansions.at(0).table();
  LaurentPoly pos = LaurentPoly::constant(table, 1);
  LaurentPoly neg = LaurentPoly::constant(table, 1);
  for (int i = 0; i < s.n; ++i) {
    int e = seed.b.b[i][k];
    if (e > 0) pos = pos * seed.expansions[i].pow(e);
    if (e < 0) neg = neg * seed.expansions[i].pow(-e);
  }
  LaurentPoly fresh = divide_exact(pos + neg, seed.expansions[k]);

  TaggedTriangulation flipped = flip(seed.cluster, k);
  // Index map old->new: untouched arcs keep their expansions, the slot of
  // the flipped-in arc gets the fresh variable.
  ExchangeMatrix mut = mutate(seed.b, k);
  std::vector<int> to_new(s.n, -1);
  int new_pos = -1;
  for (int x = 0; x < s.n; ++x) {
    int idx = flipped.index_of(seed.cluster.arcs()[x]);
    to_new[x] = idx;  // -1 only for x == k
    if (x == k) {
      for (int y = 0; y < s.n; ++y)
        if (!seed.cluster.contains(flipped.arcs()[y])) new_pos = y;
      to_new[x] = new_pos;
    }
  }
  Seed out{flipped, mut.permuted(to_new), std::vector<LaurentPoly>(s.n)};
  for (int x = 0; x < s.n; ++x) out.expansions[to_new[x]] = x == k ? fresh : seed.expansions[x];
  return out;
}

/// Breadth-first closure of a seed under mutation.  Each exchange relation
/// is computed once per undirected edge of the exchange graph; revisited
/// neighbors are verified against their stored exchange matrix.
struct SeedEnumeration {
  std::vector<Seed> seeds;                       // deterministic order
  std::map<std::vector<ArcId>, int> index;       // fingerprint -> position
  std::vector<std::pair<int, int>> edges;        // exchange graph, u < v
  long long mutations_performed = 0;
};

inline SeedEnumeration enumerate_seeds(const TaggedTriangulation& t_init, int max_n = 8) {
  const Surface& s = t_init.surface();
  if (s.n > max_n) throw std::invalid_argument("enumerate_seeds: n above bound");
  SeedEnumeration en;
  std::map<std::vector<ArcId>, Seed> store;
  Seed start = initial_seed(t_init);
  store.emplace(start.cluster.fingerprint(), start);
  std::vector<std::vector<ArcId>> frontier{start.cluster.fingerprint()};
  std::set<std::pair<std::vector<ArcId>, std::vector<ArcId>>> seen_edges;
  while (!frontier.empty()) {
    std::vector<std::vector<ArcId>> next;
    for (auto& fp : frontier) {
      Seed cur = store.at(fp);
      for (int k = 0; k < s.n; ++k) {
        // Cheap neighbor fingerprint via the flip, to decide whether the
        // full mutation is new work.
        TaggedTriangulation fl = flip(cur.cluster, k);
        auto nfp = fl.fingerprint();
        auto ekey = fp < nfp ? std::make_pair(fp, nfp) : std::make_pair(nfp, fp);
        if (!seen_edges.insert(ekey).second) continue;
        Seed neigh = mutate(cur, k);
        ++en.mutations_performed;
        if (!(neigh.cluster == fl)) throw std::logic_error("mutation/flip cluster mismatch");
        auto it = store.find(nfp);
        if (it == store.end()) {
          store.emplace(nfp, neigh);
          next.push_back(nfp);
        } else {
          if (!(it->second.b == neigh.b))
            throw std::logic_error("exchange matrix disagreement on revisit");
          if (it->second.expansions != neigh.expansions)
            throw std::logic_error("expansion disagreement on revisit");
        }
      }
    }
    frontier = std::move(next);
  }
  for (auto& [fp, seed] : store) {
    en.index.emplace(fp, (int)en.seeds.size());
    en.seeds.push_back(seed);
  }
  for (auto& [a, b] : seen_edges) en.edges.emplace_back(en.index.at(a), en.index.at(b));
  return en;
}

/// Expansion of x(gamma) in the cluster of t_init, found by mutation alone.
inline LaurentPoly expand_by_mutation(const TaggedTriangulation& t_init, const TaggedArc& gamma,
                                      int max_n = 8) {
  const Surface& s = t_init.surface();
  Seed start = initial_seed(t_init);
  if (start.cluster.contains(gamma)) return start.expansion_of(gamma);
  if (s.n > max_n) throw std::invalid_argument("expand_by_mutation: n above bound");
  std::map<std::vector<ArcId>, Seed> store;
  store.emplace(start.cluster.fingerprint(), start);
  std::vector<std::vector<ArcId>> frontier{start.cluster.fingerprint()};
  while (!frontier.empty()) {
    std::vector<std::vector<ArcId>> next;
    for (auto& fp : frontier) {
      Seed cur = store.at(fp);
      for (int k = 0; k < s.n; ++k) {
        Seed neigh = mutate(cur, k);
        auto nfp = neigh.cluster.fingerprint();
        if (store.count(nfp)) continue;
        if (neigh.cluster.contains(gamma)) return neigh.expansion_of(gamma);
        store.emplace(nfp, neigh);
        next.push_back(nfp);
      }
    }
    frontier = std::move(next);
  }
  throw std::logic_error("expand_by_mutation: arc never appeared in the mutation class");
}

/// All n^2 variable expansions in the cluster of t_init, via one breadth
/// first sweep.  Keys are tagged arc ids.
inline std::map<ArcId, LaurentPoly> all_variable_expansions(const SeedEnumeration& en,
                                                            const Surface& s) {
  std::map<ArcId, LaurentPoly> out;
  for (auto& seed : en.seeds)
    for (int k = 0; k < (int)seed.cluster.arcs().size(); ++k)
      out.emplace(tagged_id(s, seed.cluster.arcs()[k]), seed.expansions[k]);
  return out;
}

/// A cluster monomial: multiset of pairwise compatible tagged arcs.
struct ClusterMonomial {
  std::vector<std::pair<TaggedArc, int>> factors;  // arc, multiplicity >= 1

  int total_degree() const {
    int d = 0;
    for (auto& [a, m] : factors) d += m;
    return d;
  }
};

/// Expansion of a cluster monomial in the cluster of t: the product of the
/// factor expansions.
inline LaurentPoly cluster_monomial_expand(const TaggedTriangulation& t,
                                           const MultiTaggedCollection& sigma) {
  VarTableRef table = tagged_table(t);
  LaurentPoly out = LaurentPoly::constant(table, 1);
  for (auto& a : sigma.arcs) out = out * expand_tagged(t, a);
  return out;
}

}  // namespace pgon
