#pragma once
// Ideal and tagged triangulations of the once-punctured polygon, their
// triangle structure, flips, the ordered crossing sequence of an arc, and
// the triangulated (d+3)-gon obtained by unfolding the triangles an arc
// crosses.  All geometry happens in the universal-cover strip: a face of
// the lifted triangulation is bounded by chords and rays, and the puncture
// sits at the top end of the strip.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgon/surface.hpp"

namespace pgon {

// A side of a lifted face: the lift plus what it projects to.
struct FaceSide {
  Lift lift;
  bool is_boundary = false;
  OrdinaryArc arc{};     // when !is_boundary
  BoundaryEdge edge{};   // when is_boundary

  std::string label() const { return is_boundary ? to_string(edge) : to_string(arc); }
  bool operator==(const FaceSide& o) const { return lift == o.lift; }
  bool operator<(const FaceSide& o) const { return lift < o.lift; }
};

// A lifted triangle in the strip.  `sides_ccw` walks the face boundary
// counterclockwise in strip coordinates; reading it backwards gives the
// clockwise order used on the surface.
struct StripFace {
  std::vector<FaceSide> sides_ccw;  // size 3
  bool has_apex = false;            // true when one vertex is the puncture end
  // Bottom vertices in strip coordinates (2 when has_apex, else 3).
  std::vector<long long> bottoms;

  bool operator==(const StripFace& o) const {
    if (sides_ccw.size() != o.sides_ccw.size()) return false;
    std::vector<Lift> a, b;
    for (auto& s : sides_ccw) a.push_back(s.lift);
    for (auto& s : o.sides_ccw) b.push_back(s.lift);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }
  bool self_folded_base() const {
    // Projects to a self-folded triangle: one loop chord and two lifts of
    // the same radius.
    int rays = 0;
    for (auto& s : sides_ccw) rays += s.lift.is_ray;
    if (rays != 2) return false;
    for (auto& s : sides_ccw)
      if (!s.lift.is_ray && !s.is_boundary && s.arc.kind == OrdKind::Loop) return true;
    return false;
  }
};

/// Ideal triangle of the base surface, sides listed in clockwise order.
struct IdealTriangle {
  struct Side {
    bool is_boundary = false;
    OrdinaryArc arc{};
    BoundaryEdge edge{};
    std::string label() const { return is_boundary ? to_string(edge) : to_string(arc); }
  };
  std::vector<Side> sides;  // size 3, clockwise
  bool self_folded = false;
};

// ---------------------------------------------------------------------------
// Ideal triangulations
// ---------------------------------------------------------------------------

class IdealTriangulation {
 public:
  IdealTriangulation(Surface s, std::vector<OrdinaryArc> arcs) : surf_(s), arcs_(std::move(arcs)) {
    validate();
  }

  const Surface& surface() const { return surf_; }
  const std::vector<OrdinaryArc>& arcs() const { return arcs_; }

  bool contains(const OrdinaryArc& a) const {
    for (auto& t : arcs_)
      if (t == a) return true;
    return false;
  }

  /// Ray positions (radius basepoints) within one period, sorted.
  std::vector<int> ray_positions() const {
    std::vector<int> out;
    for (auto& a : arcs_)
      if (a.kind == OrdKind::Radius) out.push_back(a.i);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has_self_folded() const { return ray_positions().size() == 1; }

  /// The loop/radius pair of the self-folded triangle, if present.
  std::optional<int> self_folded_vertex() const {
    auto rays = ray_positions();
    if (rays.size() == 1) return rays[0];
    return std::nullopt;
  }

  // --- strip-face queries --------------------------------------------------

  /// Longest chord lift (arc or boundary edge) with left endpoint x and
  /// right endpoint <= cap, excluding the chord [x, cap] itself when
  /// `exclude_full` is set.  Boundary edges give span 1 as a fallback.
  FaceSide longest_chord_at(long long x, long long cap, bool exclude_full) const {
    FaceSide best;
    long long best_r = 0;
    bool found = false;
    for (auto& a : arcs_) {
      if (a.kind == OrdKind::Radius) continue;
      Lift c = canonical_lift(surf_, a);
      long long span = c.b - c.a;
      long long left = x - ((x - c.a) % surf_.n + surf_.n) % surf_.n;
      if (left != x) continue;  // no lift of this arc starts at x
      long long r = x + span;
      if (r > cap) continue;
      if (exclude_full && r == cap) continue;
      if (!found || r > best_r) {
        found = true;
        best_r = r;
        best.lift = Lift::chord(x, r);
        best.is_boundary = false;
        best.arc = a;
      }
    }
    if (!found) {
      best.lift = Lift::chord(x, x + 1);
      best.is_boundary = true;
      best.edge = BoundaryEdge{surf_.norm(int(x % surf_.n))};
      if (x + 1 > cap) throw std::logic_error("strip: cannot tile below a unit chord");
    }
    return best;
  }

  /// The face directly below a chord lift: the chord plus the maximal lifts
  /// tiling its span.  In a triangulation there are exactly two of those.
  StripFace face_below(const FaceSide& ceiling) const {
    if (ceiling.lift.is_ray) throw std::logic_error("face_below: ray has no below face");
    long long a = ceiling.lift.a, b = ceiling.lift.b;
    std::vector<FaceSide> kids;
    long long x = a;
    while (x < b) {
      FaceSide kid = longest_chord_at(x, b, /*exclude_full=*/x == a);
      kids.push_back(kid);
      x = kid.lift.b;
    }
    if (kids.size() != 2)
      throw std::invalid_argument("not an ideal triangulation: region below " + ceiling.label() +
                                  " is not a triangle");
    StripFace f;
    f.sides_ccw = {kids[0], kids[1], ceiling};
    f.has_apex = false;
    f.bottoms = {a, kids[0].lift.b, b};
    return f;
  }

  /// Side describing the lift of an arc/boundary edge placed at a given
  /// left endpoint.
  FaceSide side_for_chord(const OrdinaryArc& a, long long left) const {
    Lift c = canonical_lift(surf_, a);
    return {Lift::chord(left, left + (c.b - c.a)), false, a, {}};
  }
  FaceSide side_for_ray(long long x) const {
    FaceSide s;
    s.lift = Lift::ray(x);
    s.is_boundary = false;
    s.arc = OrdinaryArc::radius(surf_, surf_.norm(int(x % surf_.n)));
    return s;
  }

  /// Smallest chord lift strictly covering [a,b]; empty if none.
  std::optional<FaceSide> covering_chord(long long a, long long b) const {
    std::optional<FaceSide> best;
    long long best_span = -1;
    for (auto& arc : arcs_) {
      if (arc.kind == OrdKind::Radius) continue;
      Lift c = canonical_lift(surf_, arc);
      long long span = c.b - c.a;
      if (span < b - a) continue;
      // lifts with left endpoint <= a and right endpoint >= b
      // Largest lift of this arc with left endpoint <= a; smaller shifts
      // only shrink the right end, so one candidate per arc suffices.
      long long l = a - ((a - c.a) % surf_.n + surf_.n) % surf_.n;
      if (l + span < b) continue;
      if (l == a && l + span == b) continue;
      if (best_span < 0 || span < best_span) {
        best_span = span;
        best = FaceSide{Lift::chord(l, l + span), false, arc, {}};
      }
    }
    return best;
  }

  /// Next ray position strictly greater than x (there is always one:
  /// every ideal triangulation has a radius).
  long long next_ray_after(long long x) const {
    auto rays = ray_positions();
    long long best = 0;
    bool found = false;
    for (int r : rays) {
      long long cand = r + ((x - r) / surf_.n) * (long long)surf_.n;
      while (cand <= x) cand += surf_.n;
      if (!found || cand < best) {
        best = cand;
        found = true;
      }
    }
    if (!found) throw std::logic_error("triangulation without a radius");
    return best;
  }

  /// Top face between two consecutive rays; the skyline must be a single
  /// chord lift spanning exactly that gap.
  StripFace top_face_right_of_ray(long long rx) const {
    long long q = next_ray_after(rx);
    StripFace f;
    FaceSide sky = longest_chord_at(rx, q, /*exclude_full=*/false);
    if (sky.lift.b != q)
      throw std::invalid_argument("not an ideal triangulation: skyline between rays is broken");
    f.sides_ccw = {sky, side_for_ray(q), side_for_ray(rx)};
    f.has_apex = true;
    f.bottoms = {rx, q};
    return f;
  }

  /// The face above a chord lift: either the face of the smallest covering
  /// chord, or a top face bounded by rays at its endpoints.
  StripFace face_above(const FaceSide& c) const {
    auto parent = covering_chord(c.lift.a, c.lift.b);
    if (parent) return face_below(*parent);
    return top_face_right_of_ray(c.lift.a);
  }

  /// Both faces incident to a lift.
  std::pair<StripFace, StripFace> faces_of(const FaceSide& side) const {
    if (side.lift.is_ray) {
      long long x = side.lift.a;
      StripFace right = top_face_right_of_ray(x);
      StripFace left = top_face_right_of_ray(prev_impl(x));
      return {left, right};
    }
    return {face_below(side), face_above(side)};
  }

  /// All n ideal triangles, projected to the base surface.
  std::vector<IdealTriangle> triangles() const {
    std::vector<IdealTriangle> out;
    for (auto& a : arcs_) {
      if (a.kind == OrdKind::Radius) continue;
      out.push_back(project(face_below(FaceSide{canonical_lift(surf_, a), false, a, {}})));
    }
    for (int r : ray_positions()) out.push_back(project(top_face_right_of_ray(r)));
    return out;
  }

  static IdealTriangle project(const StripFace& f) {
    IdealTriangle t;
    t.self_folded = f.self_folded_base();
    // clockwise on the surface = reverse of the strip-ccw cycle
    for (auto it = f.sides_ccw.rbegin(); it != f.sides_ccw.rend(); ++it)
      t.sides.push_back(IdealTriangle::Side{it->is_boundary, it->arc, it->edge});
    return t;
  }

 private:
  long long prev_impl(long long x) const {
    auto rays = ray_positions();
    long long best = 0;
    bool found = false;
    for (int r : rays) {
      long long cand = r + ((x - r) / surf_.n + 2) * (long long)surf_.n;
      while (cand >= x) cand -= surf_.n;
      if (!found || cand > best) {
        best = cand;
        found = true;
      }
    }
    if (!found) throw std::logic_error("triangulation without a radius");
    return best;
  }

  void validate() {
    if ((int)arcs_.size() != surf_.n)
      throw std::invalid_argument("ideal triangulation needs exactly n arcs");
    for (size_t x = 0; x < arcs_.size(); ++x)
      for (size_t y = x + 1; y < arcs_.size(); ++y) {
        if (arcs_[x] == arcs_[y]) throw std::invalid_argument("duplicate arc in triangulation");
        if (crossing_number(surf_, arcs_[x], arcs_[y]) != 0)
          throw std::invalid_argument("triangulation arcs cross: " + to_string(arcs_[x]) + " x " +
                                      to_string(arcs_[y]));
      }
    auto rays = ray_positions();
    if (rays.empty())
      throw std::invalid_argument("not an ideal triangulation: no radius present");
    int loops = 0;
    for (auto& a : arcs_)
      if (a.kind == OrdKind::Loop) ++loops;
    if (rays.size() == 1) {
      if (loops != 1 || !contains(OrdinaryArc::loop(surf_, rays[0])))
        throw std::invalid_argument("single radius must come with its enclosing loop");
    } else if (loops != 0) {
      throw std::invalid_argument("a loop is incompatible with a second radius");
    }
    // Face structure: every chord region is a triangle, every ray gap has a
    // one-chord skyline.  triangles() throws otherwise.
    if ((int)triangles().size() != surf_.n)
      throw std::invalid_argument("ideal triangulation face count mismatch");
  }

  Surface surf_;
  std::vector<OrdinaryArc> arcs_;
};

// ---------------------------------------------------------------------------
// Tagged triangulations
// ---------------------------------------------------------------------------

class TaggedTriangulation {
 public:
  TaggedTriangulation(Surface s, std::vector<TaggedArc> arcs) : surf_(s), arcs_(std::move(arcs)) {
    std::sort(arcs_.begin(), arcs_.end(), [&](const TaggedArc& a, const TaggedArc& b) {
      return tagged_id(surf_, a) < tagged_id(surf_, b);
    });
    validate();
  }

  const Surface& surface() const { return surf_; }
  const std::vector<TaggedArc>& arcs() const { return arcs_; }

  bool contains(const TaggedArc& a) const {
    for (auto& t : arcs_)
      if (t == a) return true;
    return false;
  }
  int index_of(const TaggedArc& a) const {
    for (size_t k = 0; k < arcs_.size(); ++k)
      if (arcs_[k] == a) return int(k);
    return -1;
  }

  enum class Shape { AllPlain, ParallelPair, AllNotched };

  Shape shape() const {
    int plain = 0, notched = 0;
    for (auto& a : arcs_) {
      plain += a.kind == TagKind::RadiusPlain;
      notched += a.kind == TagKind::RadiusNotched;
    }
    if (plain > 0 && notched > 0) return Shape::ParallelPair;
    return plain > 0 ? Shape::AllPlain : Shape::AllNotched;
  }

  /// Sorted arc-id fingerprint; two triangulations are equal iff these match.
  std::vector<ArcId> fingerprint() const {
    std::vector<ArcId> f;
    for (auto& a : arcs_) f.push_back(tagged_id(surf_, a));
    return f;
  }

  TaggedTriangulation notched_companion() const {
    std::vector<TaggedArc> out;
    for (auto& a : arcs_) out.push_back(notch_at_puncture(surf_, a));
    return TaggedTriangulation(surf_, std::move(out));
  }

  bool operator==(const TaggedTriangulation& o) const { return fingerprint() == o.fingerprint(); }

 private:
  void validate() {
    if ((int)arcs_.size() != surf_.n)
      throw std::invalid_argument("tagged triangulation needs exactly n arcs");
    for (size_t x = 0; x < arcs_.size(); ++x)
      for (size_t y = x + 1; y < arcs_.size(); ++y) {
        if (arcs_[x] == arcs_[y])
          throw std::invalid_argument("duplicate arc in tagged triangulation");
        if (!are_compatible(surf_, arcs_[x], arcs_[y]))
          throw std::invalid_argument("incompatible tagged arcs: " + to_string(arcs_[x]) + ", " +
                                      to_string(arcs_[y]));
      }
    // Radii must form one of: >=2 plain, >=2 notched, or a parallel pair.
    int plain = 0, notched = 0;
    for (auto& a : arcs_) {
      plain += a.kind == TagKind::RadiusPlain;
      notched += a.kind == TagKind::RadiusNotched;
    }
    if (plain + notched == 0)
      throw std::invalid_argument("tagged triangulation must contain a radius");
    if (plain + notched == 1)
      throw std::invalid_argument("tagged triangulation with a lone radius is not maximal");
  }

  Surface surf_;
  std::vector<TaggedArc> arcs_;
};

/// iota applied arc-wise; defined for every ideal triangulation.
inline TaggedTriangulation tagged_from_ideal(const IdealTriangulation& t) {
  std::vector<TaggedArc> out;
  for (auto& a : t.arcs()) out.push_back(iota(t.surface(), a));
  return TaggedTriangulation(t.surface(), std::move(out));
}

/// Inverse of tagged_from_ideal.  Only the all-plain and parallel-pair
/// shapes correspond to ideal triangulations; all-notched input is rejected.
inline IdealTriangulation ideal_from_tagged(const TaggedTriangulation& t) {
  if (t.shape() == TaggedTriangulation::Shape::AllNotched)
    throw std::invalid_argument("all-notched tagged triangulation has no ideal representative");
  const Surface& s = t.surface();
  std::vector<OrdinaryArc> out;
  for (auto& a : t.arcs()) out.push_back(iota_inverse(s, a));
  return IdealTriangulation(s, std::move(out));
}

// ---------------------------------------------------------------------------
// Flips
// ---------------------------------------------------------------------------

/// Replace arc k of t by the unique other tagged arc completing the rest to
/// a tagged triangulation.
inline TaggedTriangulation flip(const TaggedTriangulation& t, int k) {
  const Surface& s = t.surface();
  if (k < 0 || k >= (int)t.arcs().size()) throw std::invalid_argument("flip: bad arc index");
  std::vector<TaggedArc> rest;
  for (int x = 0; x < (int)t.arcs().size(); ++x)
    if (x != k) rest.push_back(t.arcs()[x]);
  std::optional<TaggedArc> replacement;
  int completions = 0;
  for (ArcId id = 0; id < s.n * s.n; ++id) {
    TaggedArc cand = tagged_from_id(s, id);
    bool ok = true;
    for (auto& r : rest)
      if (cand == r || !are_compatible(s, cand, r)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    ++completions;
    if (!(cand == t.arcs()[k])) replacement = cand;
  }
  if (completions != 2 || !replacement)
    throw std::logic_error("flip: completion of " + to_string(t.arcs()[k]) + " is not unique");
  rest.push_back(*replacement);
  return TaggedTriangulation(s, std::move(rest));
}

/// The arc that flipping position k brings in (without building the result).
inline TaggedArc flip_replacement(const TaggedTriangulation& t, int k) {
  TaggedTriangulation f = flip(t, k);
  for (auto& a : f.arcs())
    if (!t.contains(a)) return a;
  throw std::logic_error("flip_replacement: flip returned the same triangulation");
}

/// All tagged triangulations reachable from the all-plain wheel by flips,
/// in deterministic (fingerprint) order.
inline std::vector<TaggedTriangulation> enumerate_tagged_triangulations(const Surface& s,
                                                                        int max_n = 8) {
  if (s.n > max_n) throw std::invalid_argument("enumerate_tagged_triangulations: n above bound");
  std::vector<TaggedArc> wheel;
  for (int i = 0; i < s.n; ++i) wheel.push_back(TaggedArc::radius_plain(s, i));
  TaggedTriangulation start(s, std::move(wheel));
  std::map<std::vector<ArcId>, TaggedTriangulation> seen;
  std::vector<TaggedTriangulation> frontier{start};
  seen.emplace(start.fingerprint(), start);
  while (!frontier.empty()) {
    std::vector<TaggedTriangulation> next;
    for (auto& t : frontier)
      for (int k = 0; k < s.n; ++k) {
        TaggedTriangulation f = flip(t, k);
        if (seen.emplace(f.fingerprint(), f).second) next.push_back(f);
      }
    frontier = std::move(next);
  }
  std::vector<TaggedTriangulation> out;
  for (auto& [fp, t] : seen) out.push_back(t);
  return out;
}

inline bool is_compatible_with(const Surface& s, const MultiTaggedCollection& sigma,
                               const TaggedTriangulation& t) {
  (void)s;
  for (auto& a : sigma.arcs)
    if (!t.contains(a)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Crossing sequences
// ---------------------------------------------------------------------------

/// Exact fraction, used to order crossing points along an arc.
struct Frac {
  long long num = 0, den = 1;
  bool operator<(const Frac& o) const {
    return (__int128)num * o.den < (__int128)o.num * den;
  }
};

struct Crossing {
  FaceSide side;      // the crossed lift
  Frac pos;           // order key along gamma (x-coordinate or height)
  bool heading_up_x;  // gamma moves in +x direction over this lift (chords only meaningful)
};

/// The ordered data of one arc through an ideal triangulation.
struct CrossingSequence {
  const IdealTriangulation* t = nullptr;
  OrdinaryArc gamma{};
  bool reversed = false;
  Lift gamma_lift{};                // canonical lift, traversed a->b (or b->a if reversed)
  std::vector<Crossing> crossed;    // tau_{i1} .. tau_{id}
  std::vector<StripFace> faces;     // triangles 0..d along gamma
  // Third-edge labels: ends[0] = role gamma_0, ends[1] = role gamma_{-1},
  // ends[2] = role gamma_d, ends[3] = role gamma_{d+1}; thirds[k] for
  // 0 < k < d.
  std::vector<FaceSide> thirds;     // size d+1 hmm: index k in [0, d]; ends overwrite 0 and d
  FaceSide end_sides[4];

  int d() const { return (int)crossed.size(); }
};

namespace detail {

inline Frac chord_chord_x(const Lift& g, const Lift& c) {
  // Intersection abscissa of the two semicircles over [g.a,g.b] and
  // [c.a,c.b]; centers and radii are half-integers, so 4x is an integer.
  long long c1 = g.a + g.b, r1 = g.b - g.a;  // doubled center / doubled radius
  long long c2 = c.a + c.b, r2 = c.b - c.a;
  // x = (c1^2 - c2^2 - r1^2 + r2^2) / (4 (c1 - c2)) in doubled units
  long long num = c1 * c1 - c2 * c2 - r1 * r1 + r2 * r2;
  long long den = 2 * (c1 - c2);
  if (den == 0) throw std::logic_error("crossing chords cannot be concentric");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Frac{num, den};
}

inline Frac ray_height_key(const Lift& g, const Lift& c) {
  // Height^2 (times 4) of the chord c over the vertical line x = g.a.
  long long r2 = c.b - c.a;
  long long off = 2 * g.a - (c.a + c.b);
  return Frac{r2 * r2 - off * off, 1};
}

}  // namespace detail

/// Ordered crossing sequence of gamma through t.  gamma is traversed from
/// its first-named endpoint (P(i,j): i -> j; L(i): clockwise from i;
/// R(i): boundary -> puncture); set `reversed` for the opposite direction.
inline CrossingSequence crossing_sequence(const IdealTriangulation& t, const OrdinaryArc& gamma,
                                          bool reversed = false) {
  const Surface& s = t.surface();
  if (t.contains(gamma))
    throw std::invalid_argument("crossing_sequence: arc lies in the triangulation");
  CrossingSequence cs;
  cs.t = &t;
  cs.gamma = gamma;
  cs.reversed = reversed;
  cs.gamma_lift = canonical_lift(s, gamma);

  for (auto& a : t.arcs()) {
    Lift base = canonical_lift(s, a);
    for (int m = -2; m <= 2; ++m) {
      Lift l = base.shifted((long long)m * s.n);
      if (!lifts_cross(cs.gamma_lift, l)) continue;
      Crossing c;
      c.side = FaceSide{l, false, a, {}};
      if (cs.gamma_lift.is_ray)
        c.pos = detail::ray_height_key(cs.gamma_lift, l);
      else if (l.is_ray)
        c.pos = Frac{2 * l.a, 1};  // doubled abscissa, same units as chord_chord_x
      else
        c.pos = detail::chord_chord_x(cs.gamma_lift, l);
      c.heading_up_x = !reversed;
      cs.crossed.push_back(c);
    }
  }
  if (cs.crossed.empty())
    throw std::logic_error("crossing_sequence: compatible arc not in the triangulation");
  std::sort(cs.crossed.begin(), cs.crossed.end(),
            [&](const Crossing& a, const Crossing& b) { return a.pos < b.pos; });
  if (reversed) std::reverse(cs.crossed.begin(), cs.crossed.end());

  // Walk the faces.  The first face is the one incident to the first crossed
  // lift on the starting side of gamma.
  auto face_has_bottom = [](const StripFace& f, long long x) {
    for (long long b : f.bottoms)
      if (b == x) return true;
    return false;
  };
  auto start_face = [&]() -> StripFace {
    const FaceSide& first = cs.crossed.front().side;
    auto [f1, f2] = t.faces_of(first);
    if (cs.gamma_lift.is_ray) {
      if (!reversed) {
        // starts at the boundary vertex
        long long sx = cs.gamma_lift.a;
        if (face_has_bottom(f1, sx) && !f1.has_apex) return f1;
        if (face_has_bottom(f2, sx) && !f2.has_apex) return f2;
        // The start corner can also sit in an apex face when the first
        // crossing is a skyline chord.
        if (face_has_bottom(f1, sx)) return f1;
        if (face_has_bottom(f2, sx)) return f2;
      } else {
        // starts at the puncture: the apex face over gamma's line
        long long x = cs.gamma_lift.a;
        if (f1.has_apex && f1.bottoms.front() < x && x < f1.bottoms.back()) return f1;
        if (f2.has_apex && f2.bottoms.front() < x && x < f2.bottoms.back()) return f2;
      }
    } else {
      long long sx = reversed ? cs.gamma_lift.b : cs.gamma_lift.a;
      if (face_has_bottom(f1, sx)) return f1;
      if (face_has_bottom(f2, sx)) return f2;
    }
    throw std::logic_error("crossing_sequence: cannot locate the starting triangle");
  };

  cs.faces.push_back(start_face());
  for (int k = 0; k < cs.d(); ++k) {
    auto [f1, f2] = t.faces_of(cs.crossed[k].side);
    cs.faces.push_back(f1 == cs.faces.back() ? f2 : f1);
  }

  // End-vertex sanity.
  {
    const StripFace& last = cs.faces.back();
    if (cs.gamma_lift.is_ray && !reversed) {
      if (!last.has_apex) throw std::logic_error("radius must end in an apex face");
    } else {
      long long tx = cs.gamma_lift.is_ray ? cs.gamma_lift.a
                                          : (reversed ? cs.gamma_lift.a : cs.gamma_lift.b);
      if (!face_has_bottom(last, tx))
        throw std::logic_error("crossing walk does not reach the endpoint of the arc");
    }
  }

  // Third sides.  For 0 < k < d the third side of face k is the one that is
  // neither crossed lift k nor k+1.  At the ends the two free sides get
  // their roles from the clockwise order around the face.
  cs.thirds.resize(std::max(0, cs.d() + 1));
  for (int k = 1; k <= cs.d() - 1; ++k) {
    const StripFace& f = cs.faces[k];
    for (auto& side : f.sides_ccw)
      if (!(side == cs.crossed[k - 1].side) && !(side == cs.crossed[k].side)) cs.thirds[k] = side;
  }
  auto assign_ends = [&](const StripFace& f, const FaceSide& crossed_side, FaceSide& first,
                         FaceSide& second) {
    // clockwise cycle = reversed ccw cycle; the side after the crossed lift
    // (clockwise) plays the near role, the next one the far role.
    int pos = -1;
    for (int x = 0; x < 3; ++x)
      if (f.sides_ccw[x] == crossed_side) pos = x;
    if (pos < 0) throw std::logic_error("end face does not contain its crossed lift");
    first = f.sides_ccw[(pos + 2) % 3];   // one step clockwise
    second = f.sides_ccw[(pos + 1) % 3];  // two steps clockwise
  };
  assign_ends(cs.faces.front(), cs.crossed.front().side, cs.end_sides[0], cs.end_sides[1]);
  assign_ends(cs.faces.back(), cs.crossed.back().side, cs.end_sides[2], cs.end_sides[3]);
  return cs;
}

// ---------------------------------------------------------------------------
// The lifted (d+3)-gon
// ---------------------------------------------------------------------------

enum class Decoration : uint8_t { None, Dot, DDot, Check };

struct PolyEdge {
  int id = -1;
  int v1 = -1, v2 = -1;  // polygon vertex ids
  bool internal = false;
  bool is_boundary_label = false;  // projects to a boundary edge
  OrdinaryArc arc{};               // base arc when !is_boundary_label
  BoundaryEdge edge{};
  Decoration dec = Decoration::None;
  Lift lift{};  // the strip lift this edge came from

  std::string base_label() const { return is_boundary_label ? to_string(edge) : to_string(arc); }
  std::string label() const {
    std::string b = base_label();
    switch (dec) {
      case Decoration::None: return b;
      case Decoration::Dot: return b + "'";
      case Decoration::DDot: return b + "''";
      case Decoration::Check: return b + "^";
    }
    return b;
  }
};

struct PolyFace {
  int edge_ids[3] = {-1, -1, -1};  // in strip-ccw order
};

/// Triangulated (d+3)-gon: the triangles crossed by gamma, unfolded so that
/// every face has three distinct edges.  Vertices are abstract ids;
/// `internal_edges[k]` is the lift of the (k+1)-th crossed arc.
struct LiftedPolygon {
  const IdealTriangulation* t = nullptr;
  CrossingSequence seq;
  int d = 0;
  int n_vertices = 0;
  std::vector<char> vertex_is_apex;  // marks lifts of the puncture
  std::vector<PolyEdge> edges;
  std::vector<PolyFace> faces;        // size d+1
  std::vector<int> internal_edges;    // size d, edge ids
  std::vector<int> boundary_roles;    // edge id per role index 0..d+2:
                                      // role r corresponds to gamma_{r-1}
  int s_vertex = -1, t_vertex = -1;

  const PolyEdge& role_edge(int role_plus_one) const {
    return edges[boundary_roles[role_plus_one]];
  }
};

inline LiftedPolygon lifted_polygon(const CrossingSequence& cs) {
  LiftedPolygon poly;
  poly.t = cs.t;
  poly.seq = cs;
  poly.d = cs.d();

  struct VKey {
    bool apex;
    long long x;
    bool operator<(const VKey& o) const {
      if (apex != o.apex) return apex < o.apex;
      return x < o.x;
    }
  };

  int next_vertex = 0;
  auto fresh_vertex = [&]() { return next_vertex++; };

  // Per-face local maps from strip vertex to polygon vertex id.  The shared
  // edge carries ids from one face to the next; apexes merge when the shared
  // edge is a ray.
  auto side_vkeys = [&](const StripFace&, const FaceSide& side) -> std::pair<VKey, VKey> {
    if (side.lift.is_ray) return {VKey{false, side.lift.a}, VKey{true, 0}};
    return {VKey{false, side.lift.a}, VKey{false, side.lift.b}};
  };

  int edge_counter = 0;
  auto add_edge = [&](const FaceSide& side, int v1, int v2, bool internal) -> int {
    PolyEdge e;
    e.id = edge_counter++;
    e.v1 = v1;
    e.v2 = v2;
    e.internal = internal;
    e.is_boundary_label = side.is_boundary;
    e.arc = side.arc;
    e.edge = side.edge;
    e.lift = side.lift;
    poly.edges.push_back(e);
    return e.id;
  };

  auto vkey_str = [](const VKey& k) {
    return (k.apex ? std::string("A") : std::string("B")) + std::to_string(k.x);
  };

  std::vector<int> face_edge_ids;  // edge ids of previous face
  std::map<std::string, int> prev_shared;  // vkey -> polygon vertex, valid across shared side

  for (int k = 0; k <= cs.d(); ++k) {
    const StripFace& f = cs.faces[k];
    std::map<std::string, int> local;
    if (k > 0) local = prev_shared;
    // Assign vertices for this face.
    for (auto& side : f.sides_ccw) {
      auto [ka, kb] = side_vkeys(f, side);
      for (auto& key : {ka, kb})
        if (!local.count(vkey_str(key))) {
          local[vkey_str(key)] = fresh_vertex();
          poly.vertex_is_apex.push_back(key.apex);
        }
    }
    PolyFace pf;
    int slot = 0;
    for (auto& side : f.sides_ccw) {
      auto [ka, kb] = side_vkeys(f, side);
      int v1 = local[vkey_str(ka)], v2 = local[vkey_str(kb)];
      bool is_internal_prev = k > 0 && side == cs.crossed[k - 1].side;
      bool is_internal_next = k < cs.d() && side == cs.crossed[k].side;
      int eid;
      if (is_internal_prev) {
        eid = poly.internal_edges[k - 1];  // already created with the same vertices
      } else {
        eid = add_edge(side, v1, v2, is_internal_next);
        if (is_internal_next) poly.internal_edges.push_back(eid);
      }
      pf.edge_ids[slot++] = eid;
    }
    poly.faces.push_back(pf);
    // Prepare the shared map for the next face: only the next crossed side's
    // vertices carry over.
    prev_shared.clear();
    if (k < cs.d()) {
      auto [ka, kb] = side_vkeys(f, cs.crossed[k].side);
      prev_shared[vkey_str(ka)] = local[vkey_str(ka)];
      prev_shared[vkey_str(kb)] = local[vkey_str(kb)];
    }
    // Record s/t vertices.
    auto vertex_not_on = [&](const FaceSide& side) -> int {
      auto [ka, kb] = side_vkeys(f, side);
      std::set<std::string> on{vkey_str(ka), vkey_str(kb)};
      for (auto& other : f.sides_ccw) {
        auto [oa, ob] = side_vkeys(f, other);
        for (auto& key : {oa, ob})
          if (!on.count(vkey_str(key))) return local[vkey_str(key)];
      }
      throw std::logic_error("degenerate face");
    };
    if (k == 0) poly.s_vertex = vertex_not_on(cs.crossed.front().side);
    if (k == cs.d()) poly.t_vertex = vertex_not_on(cs.crossed.back().side);
  }
  poly.n_vertices = next_vertex;

  // Boundary roles.  Role index r in [0, d+2] stands for gamma_{r-1}:
  // role 0 = gamma_{-1}, role 1 = gamma_0, ..., role d+2 = gamma_{d+1}.
  poly.boundary_roles.assign(cs.d() + 3, -1);
  auto find_face_edge = [&](int k, const FaceSide& side) -> int {
    for (int eid : poly.faces[k].edge_ids)
      if (poly.edges[eid].lift == side.lift) return eid;
    throw std::logic_error("face side not found in polygon");
  };
  poly.boundary_roles[0] = find_face_edge(0, cs.end_sides[1]);
  poly.boundary_roles[1] = find_face_edge(0, cs.end_sides[0]);
  for (int k = 1; k <= cs.d() - 1; ++k)
    poly.boundary_roles[k + 1] = find_face_edge(k, cs.thirds[k]);
  poly.boundary_roles[cs.d() + 1] = find_face_edge(cs.d(), cs.end_sides[2]);
  poly.boundary_roles[cs.d() + 2] = find_face_edge(cs.d(), cs.end_sides[3]);

  // Decorations on radius lifts of self-folded triangles.
  for (int k = 0; k <= cs.d(); ++k) {
    if (!cs.faces[k].self_folded_base()) continue;
    if (k == 0 || k == cs.d()) {
      // the far end side gets the check mark
      int far = k == 0 ? poly.boundary_roles[0] : poly.boundary_roles[cs.d() + 2];
      poly.edges[far].dec = Decoration::Check;
    } else {
      bool entered_via_loop = !cs.crossed[k - 1].side.lift.is_ray;
      int third = poly.boundary_roles[k + 1];
      poly.edges[third].dec = entered_via_loop ? Decoration::Dot : Decoration::DDot;
    }
  }
  return poly;
}

inline LiftedPolygon lifted_polygon(const IdealTriangulation& t, const OrdinaryArc& gamma,
                                    bool reversed = false) {
  return lifted_polygon(crossing_sequence(t, gamma, reversed));
}

// ---------------------------------------------------------------------------
// Triangulation grammar
// ---------------------------------------------------------------------------

/// Parse "P(0,2), R(1), ..." (optionally wrapped in T{...} / To{...}).
inline std::vector<ArcTerm> parse_arc_list(const Surface& s, std::string_view text) {
  detail::ArcLexer lx{text};
  lx.skip_ws();
  bool wrapped = false;
  {
    size_t save = lx.pos;
    if (!lx.done() && (lx.peek() == 'T' || lx.peek() == 't')) {
      ++lx.pos;
      if (!lx.done() && (lx.peek() == 'o' || lx.peek() == 'O')) ++lx.pos;
      if (!lx.done() && lx.peek() == '{') {
        ++lx.pos;
        wrapped = true;
      } else {
        lx.pos = save;
      }
    }
  }
  std::vector<ArcTerm> out;
  while (true) {
    out.push_back(parse_arc_term(s, lx));
    if (lx.done()) break;
    char c = lx.peek();
    if (c == ',') {
      ++lx.pos;
      continue;
    }
    if (wrapped && c == '}') {
      ++lx.pos;
      break;
    }
    lx.fail("expected ',' between arcs");
  }
  if (!lx.done()) lx.fail("trailing input");
  return out;
}

inline TaggedTriangulation parse_tagged_triangulation(const Surface& s, std::string_view text) {
  std::vector<TaggedArc> arcs;
  for (auto& t : parse_arc_list(s, text)) {
    if (t.kind == ArcTerm::Kind::Boundary)
      throw std::invalid_argument("boundary edge cannot be part of a triangulation");
    arcs.push_back(t.tag);
  }
  return TaggedTriangulation(s, std::move(arcs));
}

inline std::string to_string(const TaggedTriangulation& t) {
  std::string out;
  for (size_t k = 0; k < t.arcs().size(); ++k) {
    if (k) out += ",";
    out += to_string(t.arcs()[k]);
  }
  return out;
}

}  // namespace pgon
