#pragma once
// Snake graph of an arc through an ideal triangulation: one square tile per
// crossing, consecutive tiles glued along the third side of the triangle
// they share, diagonals carrying the crossed arcs.  Perfect matchings of
// the diagonal-free graph index the expansion terms; their weights equal
// the path numerators under the matching-to-path bijection.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "pgon/laurent.hpp"
#include "pgon/tpath.hpp"
#include "pgon/triangulation.hpp"

namespace pgon {

struct SnakeEdge {
  int id = -1;
  int u = -1, v = -1;     // graph vertex ids
  int poly_edge = -1;     // the lifted-polygon edge this copies
  bool diagonal = false;
  int tile = -1;          // owning tile (smallest index it belongs to)
};

struct SnakeTile {
  int diag_edge = -1;             // SnakeEdge id of the diagonal
  int corners[4] = {-1, -1, -1, -1};  // graph vertices: lower apex, diag ends, upper apex
  int sign = +1;                  // alternating orientation of the unfolded copies
};

struct SnakeGraph {
  const LiftedPolygon* poly = nullptr;
  std::shared_ptr<const LiftedPolygon> owned_poly;  // set by the convenience builder
  int d = 0;
  int n_vertices = 0;
  std::vector<SnakeEdge> edges;
  std::vector<SnakeTile> tiles;
  // For k in [0, d]: the graph edges that are copies of the sides of lifted
  // triangle k (two at the ends, three in the middle).
  std::vector<std::vector<int>> triangle_side_edges;
  // Between consecutive tiles: 'E' when the next tile sits to the right,
  // 'N' when it sits on top (zig-zag shape; presentation only).
  std::vector<char> glue_dirs;

  const PolyEdge& poly_edge_of(int snake_edge) const {
    return poly->edges[edges[snake_edge].poly_edge];
  }
};

/// A perfect matching of the diagonal-free snake graph, as a sorted list of
/// SnakeEdge ids.
struct PerfectMatching {
  std::vector<int> edge_ids;
};

inline SnakeGraph build_snake(const LiftedPolygon& poly) {
  if (poly.d < 1) throw std::invalid_argument("build_snake: need at least one crossing");
  SnakeGraph g;
  g.poly = &poly;
  g.d = poly.d;

  auto face_vertices = [&](int k) {
    std::vector<int> vs;
    for (int eid : poly.faces[k].edge_ids) {
      for (int v : {poly.edges[eid].v1, poly.edges[eid].v2})
        if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    }
    if (vs.size() != 3) throw std::logic_error("lifted face is not a triangle");
    return vs;
  };
  auto apex_rel = [&](int k, int diag_eid) {
    const PolyEdge& diag = poly.edges[diag_eid];
    for (int v : face_vertices(k))
      if (v != diag.v1 && v != diag.v2) return v;
    throw std::logic_error("face does not touch its diagonal");
  };
  // The side of face k that is neither of the given polygon edges.
  auto third_side = [&](int k, int e1, int e2) {
    for (int eid : poly.faces[k].edge_ids)
      if (eid != e1 && eid != e2) return eid;
    throw std::logic_error("no third side");
  };

  int next_vertex = 0;
  std::vector<std::map<int, int>> tile_vertex(poly.d);  // polygon vid -> graph vid, per tile

  auto add_edge = [&](int tile, int poly_eid, int gu, int gv, bool diagonal) {
    SnakeEdge e;
    e.id = (int)g.edges.size();
    e.u = gu;
    e.v = gv;
    e.poly_edge = poly_eid;
    e.diagonal = diagonal;
    e.tile = tile;
    g.edges.push_back(e);
    return e.id;
  };

  g.triangle_side_edges.assign(poly.d + 1, {});
  int prev_shared_edge = -1;  // SnakeEdge id shared with the previous tile

  for (int t = 0; t < poly.d; ++t) {
    int diag_pe = poly.internal_edges[t];
    const PolyEdge& diag = poly.edges[diag_pe];
    int apex_low = apex_rel(t, diag_pe);
    int apex_high = apex_rel(t + 1, diag_pe);

    auto& vmap = tile_vertex[t];
    if (t > 0) {
      // Inherit the two vertices of the shared side from the previous tile.
      const SnakeEdge& shared = g.edges[prev_shared_edge];
      const PolyEdge& spe = poly.edges[shared.poly_edge];
      vmap[spe.v1] = shared.u;
      vmap[spe.v2] = shared.v;
    }
    for (int v : {apex_low, diag.v1, diag.v2, apex_high})
      if (!vmap.count(v)) vmap[v] = next_vertex++;

    SnakeTile tile;
    tile.sign = t % 2 == 0 ? +1 : -1;
    tile.corners[0] = vmap[apex_low];
    tile.corners[1] = vmap[diag.v1];
    tile.corners[2] = vmap[diag.v2];
    tile.corners[3] = vmap[apex_high];
    tile.diag_edge = add_edge(t, diag_pe, vmap[diag.v1], vmap[diag.v2], true);

    // Lower triangle (face t): its two non-diagonal sides.
    for (int eid : poly.faces[t].edge_ids) {
      if (eid == diag_pe) continue;
      const PolyEdge& pe = poly.edges[eid];
      bool is_entry = t > 0 && eid == g.edges[prev_shared_edge].poly_edge;
      if (!is_entry)
        g.triangle_side_edges[t].push_back(add_edge(t, eid, vmap.at(pe.v1), vmap.at(pe.v2), false));
    }
    // Upper triangle (face t+1): its two non-diagonal sides; the third side
    // of face t+1 becomes the edge shared with the next tile.
    int next_shared = -1;
    for (int eid : poly.faces[t + 1].edge_ids) {
      if (eid == diag_pe) continue;
      const PolyEdge& pe = poly.edges[eid];
      int se = add_edge(t, eid, vmap.at(pe.v1), vmap.at(pe.v2), false);
      g.triangle_side_edges[t + 1].push_back(se);
      if (t + 1 <= poly.d - 1) {
        int third = third_side(t + 1, diag_pe, poly.internal_edges[t + 1]);
        if (eid == third) next_shared = se;
      }
    }
    if (t + 1 <= poly.d - 1) {
      if (next_shared < 0) throw std::logic_error("snake: missing shared side");
      prev_shared_edge = next_shared;
    }
    g.tiles.push_back(tile);
  }
  g.n_vertices = next_vertex;

  // Zig-zag shape: the strip turns between tiles t and t+1 exactly when the
  // pivots of consecutive diagonal pairs coincide.
  g.glue_dirs.assign(std::max(0, poly.d - 1), 'E');
  char cur = 'E';
  for (int t = 0; t + 1 < poly.d; ++t) {
    g.glue_dirs[t] = cur;
    if (t + 2 < poly.d) {
      const PolyEdge& a = poly.edges[poly.internal_edges[t]];
      const PolyEdge& b = poly.edges[poly.internal_edges[t + 1]];
      const PolyEdge& c = poly.edges[poly.internal_edges[t + 2]];
      int pa = (a.v1 == b.v1 || a.v1 == b.v2) ? a.v1 : a.v2;  // pivot of (t, t+1)
      int pb = (b.v1 == c.v1 || b.v1 == c.v2) ? b.v1 : b.v2;  // pivot of (t+1, t+2)
      if (pa == pb) cur = cur == 'E' ? 'N' : 'E';
    }
  }
  return g;
}

inline SnakeGraph build_snake(const IdealTriangulation& t, const OrdinaryArc& gamma) {
  auto poly = std::make_shared<LiftedPolygon>(lifted_polygon(t, gamma));
  SnakeGraph g = build_snake(*poly);
  g.owned_poly = poly;
  g.poly = g.owned_poly.get();
  return g;
}

/// All perfect matchings of the diagonal-free graph, deterministically
/// ordered (lexicographic in edge ids).
inline std::vector<PerfectMatching> enumerate_matchings(const SnakeGraph& g) {
  std::vector<std::vector<int>> incident(g.n_vertices);
  for (auto& e : g.edges)
    if (!e.diagonal) {
      incident[e.u].push_back(e.id);
      incident[e.v].push_back(e.id);
    }
  std::vector<PerfectMatching> out;
  std::vector<char> covered(g.n_vertices, 0);
  std::vector<int> chosen;
  std::function<void(int)> dfs = [&](int v) {
    while (v < g.n_vertices && covered[v]) ++v;
    if (v == g.n_vertices) {
      PerfectMatching m{chosen};
      std::sort(m.edge_ids.begin(), m.edge_ids.end());
      out.push_back(std::move(m));
      return;
    }
    for (int eid : incident[v]) {
      const SnakeEdge& e = g.edges[eid];
      int w = e.u == v ? e.v : e.u;
      if (covered[w]) continue;
      covered[v] = covered[w] = 1;
      chosen.push_back(eid);
      dfs(v + 1);
      chosen.pop_back();
      covered[v] = covered[w] = 0;
    }
  };
  dfs(0);
  std::sort(out.begin(), out.end(), [](const PerfectMatching& a, const PerfectMatching& b) {
    return a.edge_ids < b.edge_ids;
  });
  return out;
}

/// Matching count by a transfer product over the tiles: the state tracks
/// which endpoints of the side shared with the next tile are already
/// covered.  Used as an independent cross-check on the enumeration.
inline long long transfer_matching_count(const SnakeGraph& g) {
  const LiftedPolygon& poly = *g.poly;
  // Edges owned by stage t: all non-diagonal edges with tile == t.
  // State: coverage of the two endpoints of the shared side (entry of the
  // next stage), encoded 0..3.
  std::map<int, long long> state;  // over (covA<<1)|covB of the next entry edge
  int entry_edge = -1;             // SnakeEdge id of the current entry side
  state[-1] = 1;                   // sentinel before tile 0
  for (int t = 0; t < g.d; ++t) {
    std::vector<int> owned;
    for (auto& e : g.edges)
      if (!e.diagonal && e.tile == t) owned.push_back(e.id);
    // Find the edge shared with the next tile.
    int next_entry = -1;
    if (t + 1 < g.d) {
      auto third = [&](int k, int e1, int e2) {
        for (int eid : poly.faces[k].edge_ids)
          if (eid != e1 && eid != e2) return eid;
        return -1;
      };
      int shared_pe = third(t + 1, poly.internal_edges[t], poly.internal_edges[t + 1]);
      for (int eid : owned)
        if (g.edges[eid].poly_edge == shared_pe) next_entry = eid;
      if (next_entry < 0) throw std::logic_error("transfer: shared edge not found");
    }
    // The four corners of tile t.
    const SnakeTile& tile = g.tiles[t];
    std::vector<int> corners(tile.corners, tile.corners + 4);
    std::map<int, long long> next_state;
    for (auto& [st, ways] : state) {
      // Decode entry coverage.
      std::map<int, int> cov;  // vertex -> covered?
      for (int c : corners) cov[c] = 0;
      if (entry_edge >= 0) {
        const SnakeEdge& en = g.edges[entry_edge];
        cov[en.u] = (st >> 1) & 1;
        cov[en.v] = st & 1;
      }
      int m = (int)owned.size();
      for (int mask = 0; mask < (1 << m); ++mask) {
        std::map<int, int> c2 = cov;
        bool ok = true;
        for (int x = 0; x < m && ok; ++x) {
          if (!(mask >> x & 1)) continue;
          const SnakeEdge& e = g.edges[owned[x]];
          if (c2[e.u] || c2[e.v]) ok = false;
          c2[e.u] = c2[e.v] = 1;
        }
        if (!ok) continue;
        // Corners not on the next entry edge must be covered now.
        int keep_u = -1, keep_v = -1;
        if (next_entry >= 0) {
          keep_u = g.edges[next_entry].u;
          keep_v = g.edges[next_entry].v;
        }
        for (int c : corners)
          if (c != keep_u && c != keep_v && !c2[c]) ok = false;
        if (!ok) continue;
        int code = next_entry >= 0 ? ((c2[keep_u] << 1) | c2[keep_v]) : -1;
        next_state[code] += ways;
      }
    }
    state = std::move(next_state);
    entry_edge = next_entry;
  }
  long long total = 0;
  for (auto& [st, ways] : state) total += ways;
  return total;
}

/// Weight of a matching: product of the base labels of its edges (boundary
/// edges count as 1, decorated radius lifts as the radius).
inline Monomial matching_weight(const SnakeGraph& g, const PerfectMatching& m, const Surface& s,
                                const VarTableRef& ord_table) {
  Monomial out{Exponents(ord_table->size(), 0), 1};
  for (int eid : m.edge_ids) {
    const PolyEdge& pe = g.poly_edge_of(eid);
    if (pe.is_boundary_label) continue;
    int idx = ord_table->index_of(ordinary_id(s, pe.arc));
    if (idx < 0) throw std::logic_error("matching edge outside the triangulation");
    out.exps[idx] += 1;
  }
  return out;
}

/// Crossing monomial: product of the crossed arcs with multiplicity.
inline Monomial crossing_monomial(const CrossingSequence& cs, const VarTableRef& ord_table) {
  Monomial out{Exponents(ord_table->size(), 0), 1};
  for (auto& c : cs.crossed) {
    int idx = ord_table->index_of(ordinary_id(cs.t->surface(), c.side.arc));
    if (idx < 0) throw std::logic_error("crossed arc outside the triangulation");
    out.exps[idx] += 1;
  }
  return out;
}

/// Matching-to-path bijection: the matched edges become the odd steps, the
/// diagonals the even steps.
inline LiftedPath matching_to_path(const SnakeGraph& g, const PerfectMatching& m) {
  const LiftedPolygon& poly = *g.poly;
  LiftedPath path{&poly, {}};
  std::vector<char> in_matching(g.edges.size(), 0);
  for (int eid : m.edge_ids) in_matching[eid] = 1;
  for (int k = 0; k <= g.d; ++k) {
    int found = -1;
    for (int eid : g.triangle_side_edges[k])
      if (in_matching[eid]) {
        if (found >= 0) throw std::logic_error("matching meets a triangle twice");
        found = eid;
      }
    if (found < 0) throw std::logic_error("matching misses a triangle");
    path.edge_ids.push_back(g.edges[found].poly_edge);
    if (k < g.d) path.edge_ids.push_back(poly.internal_edges[k]);
  }
  return path;
}

/// Inverse of matching_to_path.
inline PerfectMatching path_to_matching(const SnakeGraph& g, const LiftedPath& path) {
  PerfectMatching m;
  for (int k = 0; k <= g.d; ++k) {
    int poly_eid = path.edge_ids[2 * k];
    int found = -1;
    for (int eid : g.triangle_side_edges[k])
      if (g.edges[eid].poly_edge == poly_eid) found = eid;
    if (found < 0) throw std::logic_error("path step has no edge copy in its triangle");
    m.edge_ids.push_back(found);
  }
  std::sort(m.edge_ids.begin(), m.edge_ids.end());
  return m;
}

/// Perfect-matching expansion: sum of matching weights over the crossing
/// monomial, rewritten over the tagged arcs.
inline LaurentPoly expand_via_matchings(const IdealTriangulation& t, const OrdinaryArc& gamma) {
  const Surface& s = t.surface();
  if (t.contains(gamma))
    throw std::invalid_argument("expand_via_matchings: arc already in the triangulation");
  VarTableRef ord = ordinary_table(t);
  LiftedPolygon poly = lifted_polygon(t, gamma);
  SnakeGraph g = build_snake(poly);
  Monomial cross = crossing_monomial(poly.seq, ord);
  Exponents inv_cross = cross.exps;
  for (auto& x : inv_cross) x = -x;
  LaurentPoly sum = LaurentPoly::zero(ord);
  for (auto& m : enumerate_matchings(g)) {
    Monomial w = matching_weight(g, m, s, ord);
    Exponents e(w.exps.size());
    for (size_t k = 0; k < e.size(); ++k) e[k] = w.exps[k] + inv_cross[k];
    sum.add_term(e, w.coeff);
  }
  return ordinary_to_tagged(sum, t);
}

/// Matching-route twin of expand_tagged: same dispatch over the tag shapes,
/// but every primitive expansion runs through the snake graph.
inline LaurentPoly expand_tagged_via_matchings(const TaggedTriangulation& t,
                                               const TaggedArc& gamma) {
  const Surface& s = t.surface();
  VarTableRef table = tagged_table(t);
  if (t.contains(gamma))
    return LaurentPoly::variable(table, table->index_of(tagged_id(s, gamma)));
  if (t.shape() == TaggedTriangulation::Shape::AllNotched) {
    TaggedTriangulation companion = t.notched_companion();
    LaurentPoly p = expand_tagged_via_matchings(companion, notch_at_puncture(s, gamma));
    return rename_keys(p, [&](ArcId id) {
      return tagged_id(s, notch_at_puncture(s, tagged_from_id(s, id)));
    });
  }
  IdealTriangulation ideal = ideal_from_tagged(t);
  switch (gamma.kind) {
    case TagKind::Peripheral: return expand_via_matchings(ideal, iota_inverse(s, gamma));
    case TagKind::RadiusPlain:
      return expand_via_matchings(ideal, OrdinaryArc::radius(s, gamma.i));
    case TagKind::RadiusNotched: {
      LaurentPoly num = expand_via_matchings(ideal, OrdinaryArc::loop(s, gamma.i));
      TaggedArc plain = TaggedArc::radius_plain(s, gamma.i);
      if (t.contains(plain)) {
        Exponents e(table->size(), 0);
        e[table->index_of(tagged_id(s, plain))] = -1;
        return num.shifted(e);
      }
      return divide_exact(num, expand_via_matchings(ideal, OrdinaryArc::radius(s, gamma.i)));
    }
  }
  throw std::logic_error("expand_tagged_via_matchings: bad kind");
}

}  // namespace pgon
