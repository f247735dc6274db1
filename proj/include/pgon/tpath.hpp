#pragma once
// Complete path enumeration on the lifted polygon, projection back to the
// surface with cycle classification, and the Laurent expansion of a cluster
// variable as a sum of path monomials.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgon/laurent.hpp"
#include "pgon/surface.hpp"
#include "pgon/triangulation.hpp"

namespace pgon {

enum class CycleClass : uint8_t {
  NotACycle,
  Backtrack,
  NonBacktrackCCW,
  NonBacktrackCW,
  QuasiBacktrack,
};

inline const char* to_string(CycleClass c) {
  switch (c) {
    case CycleClass::NotACycle: return "none";
    case CycleClass::Backtrack: return "backtrack";
    case CycleClass::NonBacktrackCCW: return "non-backtrack-ccw";
    case CycleClass::NonBacktrackCW: return "non-backtrack-cw";
    case CycleClass::QuasiBacktrack: return "quasi-backtrack";
  }
  return "?";
}

/// A path on the lifted polygon: 2d+1 edges, even positions forced to the
/// internal edges in order.
struct LiftedPath {
  const LiftedPolygon* poly = nullptr;
  std::vector<int> edge_ids;
};

struct Step {
  bool is_boundary = false;
  OrdinaryArc arc{};
  BoundaryEdge edge{};
  int lifted_edge = -1;

  std::string label() const { return is_boundary ? to_string(edge) : to_string(arc); }
};

/// A complete path on the base triangulation: the projected labels plus the
/// classification of every consecutive same-label pair.
struct TPath {
  const LiftedPolygon* poly = nullptr;
  std::vector<Step> steps;                // size 2d+1
  std::vector<CycleClass> pair_classes;   // size 2d; entry j classifies (j, j+1)

  int d() const { return ((int)steps.size() - 1) / 2; }
};

/// All complete paths on the polygon, in deterministic order.  The walk is
/// forced: step 2k+1 picks a side of triangle k incident to the current
/// vertex, even steps traverse the internal edges in order, and the path
/// must run from the lift of the starting point to the lift of the endpoint.
inline std::vector<LiftedPath> enumerate_lifted_paths(const LiftedPolygon& poly) {
  std::vector<LiftedPath> out;
  std::vector<int> current;
  current.reserve(2 * poly.d + 1);

  std::function<void(int, int)> dfs = [&](int k, int at) {
    for (int eid : poly.faces[k].edge_ids) {
      const PolyEdge& e = poly.edges[eid];
      int next = e.v1 == at ? e.v2 : (e.v2 == at ? e.v1 : -1);
      if (next < 0) continue;
      current.push_back(eid);
      if (k == poly.d) {
        if (next == poly.t_vertex) out.push_back(LiftedPath{&poly, current});
      } else {
        const PolyEdge& diag = poly.edges[poly.internal_edges[k]];
        int after = diag.v1 == next ? diag.v2 : (diag.v2 == next ? diag.v1 : -1);
        if (after >= 0) {
          current.push_back(diag.id);
          dfs(k + 1, after);
          current.pop_back();
        }
      }
      current.pop_back();
    }
  };
  dfs(0, poly.s_vertex);
  return out;
}

/// Vertex sequence of a path on the polygon.  The walk is forced: every
/// edge is traversed away from the current vertex.
inline std::vector<int> walk_vertices(const LiftedPolygon& poly, const std::vector<int>& edges) {
  std::vector<int> vs;
  vs.reserve(edges.size() + 1);
  vs.push_back(poly.s_vertex);
  for (int eid : edges) {
    const PolyEdge& e = poly.edges[eid];
    int at = vs.back();
    int next = e.v1 == at ? e.v2 : (e.v2 == at ? e.v1 : -1);
    if (next < 0) throw std::logic_error("walk_vertices: disconnected step");
    vs.push_back(next);
  }
  return vs;
}

/// Project a lifted path to the surface.  Decorated radius labels lose their
/// marks.  A same-label pair across two distinct lifts is a non-backtrack
/// (possible only on the radius of a self-folded triangle).  A same-edge
/// pair is a backtrack when it pivots at a lift of the puncture and a
/// quasi-backtrack when a radius pivots at its marked point.
inline TPath project_path(const LiftedPath& lp) {
  const LiftedPolygon& poly = *lp.poly;
  TPath p;
  p.poly = lp.poly;
  for (int eid : lp.edge_ids) {
    const PolyEdge& e = poly.edges[eid];
    p.steps.push_back(Step{e.is_boundary_label, e.arc, e.edge, eid});
  }
  std::vector<int> vs = walk_vertices(poly, lp.edge_ids);
  p.pair_classes.assign(p.steps.size() - 1, CycleClass::NotACycle);
  auto self_folded = poly.t->self_folded_vertex();
  for (size_t j = 0; j + 1 < p.steps.size(); ++j) {
    const Step& a = p.steps[j];
    const Step& b = p.steps[j + 1];
    if (a.is_boundary || b.is_boundary || !(a.arc == b.arc)) continue;
    if (a.lifted_edge == b.lifted_edge) {
      bool pivot_at_puncture = poly.vertex_is_apex[vs[j + 1]];
      bool is_radius = a.arc.kind == OrdKind::Radius;
      p.pair_classes[j] = (is_radius && !pivot_at_puncture) ? CycleClass::QuasiBacktrack
                                                            : CycleClass::Backtrack;
      continue;
    }
    if (a.arc.kind != OrdKind::Radius || !self_folded || *self_folded != a.arc.i)
      throw std::logic_error("projected path repeats an arc across distinct lifts unexpectedly");
    // The even-indexed member of the pair is the crossed radius; the
    // direction of the crossing orients the cycle.
    size_t even_pos = (j + 1) % 2 == 0 ? j : j + 1;  // 0-based: odd index = even step
    int k = (int)(even_pos + 1) / 2;                 // 1-based crossing number
    bool up = poly.seq.crossed.at(k - 1).heading_up_x;
    p.pair_classes[j] = up ? CycleClass::NonBacktrackCCW : CycleClass::NonBacktrackCW;
  }
  return p;
}

/// Classification of the pair (steps[j], steps[j+1]), 0-based.
inline CycleClass classify_pair(const TPath& p, int j) {
  if (j < 0 || j + 1 >= (int)p.steps.size()) throw std::invalid_argument("classify_pair: index");
  return p.pair_classes[j];
}

inline std::vector<TPath> enumerate_tpaths(const LiftedPolygon& poly) {
  std::vector<TPath> out;
  for (auto& lp : enumerate_lifted_paths(poly)) out.push_back(project_path(lp));
  return out;
}

inline std::vector<TPath> enumerate_tpaths(const IdealTriangulation& t, const OrdinaryArc& gamma,
                                           bool reversed = false) {
  LiftedPolygon poly = lifted_polygon(t, gamma, reversed);
  std::vector<TPath> out;
  for (auto& lp : enumerate_lifted_paths(poly)) {
    TPath p = project_path(lp);
    p.poly = nullptr;  // the polygon dies with this call
    out.push_back(std::move(p));
  }
  return out;
}

/// Path text form: labels joined by commas, '*' marking the members of a
/// non-backtrack pair and '~' the members of a quasi-backtrack pair.
inline std::string to_string(const TPath& p,
                             const std::function<std::string(const Step&)>& name = {}) {
  std::vector<std::string> marks(p.steps.size());
  for (size_t j = 0; j + 1 < p.steps.size(); ++j) {
    CycleClass c = p.pair_classes[j];
    if (c == CycleClass::NonBacktrackCCW || c == CycleClass::NonBacktrackCW)
      marks[j] = marks[j + 1] = "*";
    else if (c == CycleClass::QuasiBacktrack && marks[j].empty() && marks[j + 1].empty())
      marks[j] = marks[j + 1] = "~";
  }
  std::string out = "(";
  for (size_t j = 0; j < p.steps.size(); ++j) {
    if (j) out += ",";
    out += name ? name(p.steps[j]) : p.steps[j].label();
    out += marks[j];
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Monomials and expansions
// ---------------------------------------------------------------------------

/// Variable table over the ordinary arcs of an ideal triangulation.
inline VarTableRef ordinary_table(const IdealTriangulation& t) {
  std::vector<ArcId> keys;
  for (auto& a : t.arcs()) keys.push_back(ordinary_id(t.surface(), a));
  std::sort(keys.begin(), keys.end());
  return VarTable::of(std::move(keys));
}

/// Variable table over the tagged arcs of a tagged triangulation.
inline VarTableRef tagged_table(const TaggedTriangulation& t) {
  std::vector<ArcId> keys;
  for (auto& a : t.arcs()) keys.push_back(tagged_id(t.surface(), a));
  return VarTable::of(std::move(keys));
}

/// x(path): odd steps contribute +1, even steps -1; boundary edges are 1.
inline Monomial path_monomial(const TPath& p, const Surface& s, const VarTableRef& ord_table) {
  Monomial m{Exponents(ord_table->size(), 0), 1};
  for (size_t j = 0; j < p.steps.size(); ++j) {
    if (p.steps[j].is_boundary) continue;
    int idx = ord_table->index_of(ordinary_id(s, p.steps[j].arc));
    if (idx < 0) throw std::logic_error("path step outside the triangulation");
    m.exps[idx] += (j % 2 == 0) ? +1 : -1;  // 0-based even position = odd step
  }
  return m;
}

/// Product of the odd-step variables only (the numerator of x(path)).
inline Monomial path_numerator(const TPath& p, const Surface& s, const VarTableRef& ord_table) {
  Monomial m{Exponents(ord_table->size(), 0), 1};
  for (size_t j = 0; j < p.steps.size(); j += 2) {
    if (p.steps[j].is_boundary) continue;
    int idx = ord_table->index_of(ordinary_id(s, p.steps[j].arc));
    if (idx < 0) throw std::logic_error("path step outside the triangulation");
    m.exps[idx] += 1;
  }
  return m;
}

/// Rewrite a polynomial over the ordinary arcs of t as one over the tagged
/// arcs of iota(t): the loop variable becomes the product of the plain and
/// notched radius variables.
inline LaurentPoly ordinary_to_tagged(const LaurentPoly& p, const IdealTriangulation& t) {
  const Surface& s = t.surface();
  VarTableRef target = tagged_table(tagged_from_ideal(t));
  return substitute(
      p,
      [&](int k) {
        ArcId id = p.table()->keys[k];
        OrdinaryArc a = ordinary_from_id(s, id);
        if (a.kind == OrdKind::Loop) {
          Exponents e(target->size(), 0);
          e[target->index_of(tagged_id(s, TaggedArc::radius_plain(s, a.i)))] = 1;
          e[target->index_of(tagged_id(s, TaggedArc::radius_notched(s, a.i)))] = 1;
          return LaurentPoly::monomial(target, e, 1);
        }
        return LaurentPoly::variable(target, target->index_of(tagged_id(s, iota(s, a))));
      },
      target);
}

/// Expansion of an ordinary arc: sum of path monomials over the crossing
/// denominator, with the loop variable eliminated.  The result is a Laurent
/// polynomial in the tagged arcs of iota(t).
inline LaurentPoly expand_ordinary(const IdealTriangulation& t, const OrdinaryArc& gamma,
                                   bool reversed = false) {
  const Surface& s = t.surface();
  if (t.contains(gamma))
    throw std::invalid_argument("expand_ordinary: arc already belongs to the triangulation");
  VarTableRef ord = ordinary_table(t);
  LiftedPolygon poly = lifted_polygon(t, gamma, reversed);
  LaurentPoly sum = LaurentPoly::zero(ord);
  for (auto& lp : enumerate_lifted_paths(poly)) {
    Monomial m = path_monomial(project_path(lp), s, ord);
    sum.add_term(m.exps, m.coeff);
  }
  return ordinary_to_tagged(sum, t);
}

/// Expansion of any tagged arc in the cluster of any tagged triangulation.
inline LaurentPoly expand_tagged(const TaggedTriangulation& t, const TaggedArc& gamma) {
  const Surface& s = t.surface();
  VarTableRef table = tagged_table(t);
  if (t.contains(gamma))
    return LaurentPoly::variable(table, table->index_of(tagged_id(s, gamma)));

  if (t.shape() == TaggedTriangulation::Shape::AllNotched) {
    // Work in the all-plain companion and swap the tags back afterwards.
    TaggedTriangulation companion = t.notched_companion();
    LaurentPoly p = expand_tagged(companion, notch_at_puncture(s, gamma));
    return rename_keys(p, [&](ArcId id) {
      return tagged_id(s, notch_at_puncture(s, tagged_from_id(s, id)));
    });
  }

  IdealTriangulation ideal = ideal_from_tagged(t);
  switch (gamma.kind) {
    case TagKind::Peripheral:
      return expand_ordinary(ideal, iota_inverse(s, gamma));
    case TagKind::RadiusPlain:
      return expand_ordinary(ideal, OrdinaryArc::radius(s, gamma.i));
    case TagKind::RadiusNotched: {
      // x(notched radius) = x(loop) / x(plain radius).
      LaurentPoly num = expand_ordinary(ideal, OrdinaryArc::loop(s, gamma.i));
      TaggedArc plain = TaggedArc::radius_plain(s, gamma.i);
      if (t.contains(plain)) {
        Exponents e(table->size(), 0);
        e[table->index_of(tagged_id(s, plain))] = -1;
        return num.shifted(e);
      }
      LaurentPoly den = expand_ordinary(ideal, OrdinaryArc::radius(s, gamma.i));
      return divide_exact(num, den);
    }
  }
  throw std::logic_error("expand_tagged: bad kind");
}

}  // namespace pgon
