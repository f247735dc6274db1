#pragma once
// Combinatorial model of a once-punctured polygon with n boundary marked
// points (labeled 0..n-1 clockwise) and one interior puncture.  Arcs are
// encoded canonically; crossing numbers are computed exactly in the
// universal-cover strip, where an arc lifts to integer chords or vertical
// rays and the deck transformation is translation by n.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pgon {

struct Surface {
  int n;

  explicit Surface(int n_) : n(n_) {
    if (n < 4) throw std::invalid_argument("surface: need n >= 4 boundary vertices");
  }

  int norm(int v) const { return ((v % n) + n) % n; }

  /// Clockwise step count from vertex i to vertex j.
  int cw_dist(int i, int j) const { return norm(j - i); }

  bool operator==(const Surface& o) const { return n == o.n; }
};

enum class OrdKind : uint8_t { Peripheral, Loop, Radius };
enum class TagKind : uint8_t { Peripheral, RadiusPlain, RadiusNotched };

/// Ordinary arc: a plain curve between marked points, up to isotopy.
/// Peripheral(i,j) runs from i to j with the puncture-free disk on the
/// clockwise side from i to j (this makes the name unique); Loop(i) cuts
/// out a once-punctured monogon at vertex i; Radius(i) joins i to the
/// puncture.
struct OrdinaryArc {
  OrdKind kind = OrdKind::Radius;
  int i = 0;
  int j = 0;  // used by Peripheral only

  static OrdinaryArc peripheral(const Surface& s, int i, int j) {
    OrdinaryArc a;
    a.kind = OrdKind::Peripheral;
    a.i = s.norm(i);
    a.j = s.norm(j);
    int d = s.cw_dist(a.i, a.j);
    if (d < 2) throw std::invalid_argument("peripheral arc P(" + std::to_string(i) + "," +
                                           std::to_string(j) + ") is boundary-homotopic");
    return a;
  }
  static OrdinaryArc loop(const Surface& s, int i) { return {OrdKind::Loop, s.norm(i), 0}; }
  static OrdinaryArc radius(const Surface& s, int i) { return {OrdKind::Radius, s.norm(i), 0}; }

  bool operator==(const OrdinaryArc& o) const {
    return kind == o.kind && i == o.i && (kind != OrdKind::Peripheral || j == o.j);
  }
  bool operator!=(const OrdinaryArc& o) const { return !(*this == o); }
};

/// Tagged arc: peripheral, or a radius tagged plain/notched at the puncture.
/// An ell-loop is never a tagged arc.
struct TaggedArc {
  TagKind kind = TagKind::RadiusPlain;
  int i = 0;
  int j = 0;

  static TaggedArc peripheral(const Surface& s, int i, int j) {
    OrdinaryArc a = OrdinaryArc::peripheral(s, i, j);
    return {TagKind::Peripheral, a.i, a.j};
  }
  static TaggedArc radius_plain(const Surface& s, int i) {
    return {TagKind::RadiusPlain, s.norm(i), 0};
  }
  static TaggedArc radius_notched(const Surface& s, int i) {
    return {TagKind::RadiusNotched, s.norm(i), 0};
  }

  bool is_radius() const { return kind != TagKind::Peripheral; }

  bool operator==(const TaggedArc& o) const {
    return kind == o.kind && i == o.i && (kind != TagKind::Peripheral || j == o.j);
  }
  bool operator!=(const TaggedArc& o) const { return !(*this == o); }
};

struct BoundaryEdge {
  int i = 0;  // edge from vertex i to i+1 (clockwise)
  bool operator==(const BoundaryEdge& o) const { return i == o.i; }
};

// ---------------------------------------------------------------------------
// Dense ids.  Tagged arcs and ordinary arcs share one id scheme:
//   [0, n)       RadiusPlain(i)   <->  Radius(i)
//   [n, 2n)      RadiusNotched(i) <->  Loop(i)
//   [2n, n^2)    Peripheral(i, i+d), d in [2, n-1], id = 2n + i*(n-2) + (d-2)
// ---------------------------------------------------------------------------

using ArcId = int;

inline ArcId tagged_id(const Surface& s, const TaggedArc& a) {
  switch (a.kind) {
    case TagKind::RadiusPlain: return a.i;
    case TagKind::RadiusNotched: return s.n + a.i;
    case TagKind::Peripheral: return 2 * s.n + a.i * (s.n - 2) + (s.cw_dist(a.i, a.j) - 2);
  }
  throw std::logic_error("tagged_id: bad kind");
}

inline ArcId ordinary_id(const Surface& s, const OrdinaryArc& a) {
  switch (a.kind) {
    case OrdKind::Radius: return a.i;
    case OrdKind::Loop: return s.n + a.i;
    case OrdKind::Peripheral: return 2 * s.n + a.i * (s.n - 2) + (s.cw_dist(a.i, a.j) - 2);
  }
  throw std::logic_error("ordinary_id: bad kind");
}

inline TaggedArc tagged_from_id(const Surface& s, ArcId id) {
  if (id < 0 || id >= s.n * s.n) throw std::invalid_argument("tagged_from_id: out of range");
  if (id < s.n) return TaggedArc::radius_plain(s, id);
  if (id < 2 * s.n) return TaggedArc::radius_notched(s, id - s.n);
  int r = id - 2 * s.n;
  int i = r / (s.n - 2), d = r % (s.n - 2) + 2;
  return TaggedArc::peripheral(s, i, i + d);
}

inline OrdinaryArc ordinary_from_id(const Surface& s, ArcId id) {
  if (id < 0 || id >= s.n * s.n) throw std::invalid_argument("ordinary_from_id: out of range");
  if (id < s.n) return OrdinaryArc::radius(s, id);
  if (id < 2 * s.n) return OrdinaryArc::loop(s, id - s.n);
  int r = id - 2 * s.n;
  int i = r / (s.n - 2), d = r % (s.n - 2) + 2;
  return OrdinaryArc::peripheral(s, i, i + d);
}

// ---------------------------------------------------------------------------
// The representation map iota and the notching involution.
// ---------------------------------------------------------------------------

/// iota: ordinary arcs -> tagged arcs.  The ell-loop at i maps to the radius
/// at i notched at the puncture; everything else is tagged plain.
inline TaggedArc iota(const Surface& s, const OrdinaryArc& a) {
  switch (a.kind) {
    case OrdKind::Peripheral: return TaggedArc::peripheral(s, a.i, a.j);
    case OrdKind::Radius: return TaggedArc::radius_plain(s, a.i);
    case OrdKind::Loop: return TaggedArc::radius_notched(s, a.i);
  }
  throw std::logic_error("iota: bad kind");
}

inline OrdinaryArc iota_inverse(const Surface& s, const TaggedArc& a) {
  switch (a.kind) {
    case TagKind::Peripheral: return OrdinaryArc::peripheral(s, a.i, a.j);
    case TagKind::RadiusPlain: return OrdinaryArc::radius(s, a.i);
    case TagKind::RadiusNotched: return OrdinaryArc::loop(s, a.i);
  }
  throw std::logic_error("iota_inverse: bad kind");
}

/// Swap the tag at the puncture.  Involution; fixes peripherals.
inline TaggedArc notch_at_puncture(const Surface& s, const TaggedArc& a) {
  switch (a.kind) {
    case TagKind::Peripheral: return a;
    case TagKind::RadiusPlain: return TaggedArc::radius_notched(s, a.i);
    case TagKind::RadiusNotched: return TaggedArc::radius_plain(s, a.i);
  }
  throw std::logic_error("notch: bad kind");
}

/// All n^2 tagged arcs in id order.
inline std::vector<TaggedArc> enumerate_tagged_arcs(const Surface& s) {
  std::vector<TaggedArc> out;
  out.reserve(s.n * s.n);
  for (ArcId id = 0; id < s.n * s.n; ++id) out.push_back(tagged_from_id(s, id));
  return out;
}

// ---------------------------------------------------------------------------
// Universal-cover lifts and crossing numbers.
//
// A chord [a,b] stands for the taut lift running over the integer interval
// (a semicircle in pictures); a ray at a runs from a up to the puncture end
// of the strip.  Two chords cross iff their endpoints strictly interleave,
// a ray crosses a chord iff it sits strictly inside its span, and two rays
// never cross.
// ---------------------------------------------------------------------------

struct Lift {
  bool is_ray = false;
  long long a = 0;
  long long b = 0;  // chords only

  static Lift chord(long long a, long long b) { return {false, a, b}; }
  static Lift ray(long long a) { return {true, a, 0}; }

  Lift shifted(long long by) const { return is_ray ? ray(a + by) : chord(a + by, b + by); }

  bool operator==(const Lift& o) const {
    return is_ray == o.is_ray && a == o.a && (is_ray || b == o.b);
  }
  bool operator<(const Lift& o) const {
    if (is_ray != o.is_ray) return is_ray < o.is_ray;
    if (a != o.a) return a < o.a;
    return is_ray ? false : b < o.b;
  }
};

/// Canonical lift of an ordinary arc (shift 0); all other lifts differ by
/// multiples of n.
inline Lift canonical_lift(const Surface& s, const OrdinaryArc& a) {
  switch (a.kind) {
    case OrdKind::Peripheral: return Lift::chord(a.i, a.i + s.cw_dist(a.i, a.j));
    case OrdKind::Loop: return Lift::chord(a.i, a.i + s.n);
    case OrdKind::Radius: return Lift::ray(a.i);
  }
  throw std::logic_error("canonical_lift: bad kind");
}

inline bool lifts_cross(const Lift& x, const Lift& y) {
  if (x.is_ray && y.is_ray) return false;
  if (x.is_ray) return y.a < x.a && x.a < y.b;
  if (y.is_ray) return x.a < y.a && y.a < x.b;
  return (x.a < y.a && y.a < x.b && x.b < y.b) || (y.a < x.a && x.a < y.b && y.b < x.b);
}

/// Number of lifts of b that cross one fixed lift of a.
inline int crossing_number(const Surface& s, const OrdinaryArc& a, const OrdinaryArc& b) {
  Lift la = canonical_lift(s, a);
  Lift lb = canonical_lift(s, b);
  int count = 0;
  for (int m = -2; m <= 2; ++m)
    if (lifts_cross(la, lb.shifted((long long)m * s.n))) ++count;
  return count;
}

/// Crossing number of tagged arcs.  Notched radii cross like their
/// ell-loops against anything with a genuine geometric intersection; the
/// one pair the geometry does not decide -- two radii tagged differently
/// at the puncture with distinct endpoints -- is set to 1 (they are
/// exchange-related), and radii tagged alike never cross.
inline int crossing_number(const Surface& s, const TaggedArc& a, const TaggedArc& b) {
  if (a.is_radius() && b.is_radius()) {
    if (a.i == b.i) return 0;
    return a.kind == b.kind ? 0 : 1;
  }
  return crossing_number(s, iota_inverse(s, a), iota_inverse(s, b));
}

inline int crossing_number(const Surface& s, const OrdinaryArc& a, const TaggedArc& b) {
  if (b.is_radius()) return crossing_number(s, a, OrdinaryArc::radius(s, b.i));
  return crossing_number(s, a, iota_inverse(s, b));
}
inline int crossing_number(const Surface& s, const TaggedArc& a, const OrdinaryArc& b) {
  return crossing_number(s, b, a);
}

/// Compatibility of tagged arcs: the five admissible pair shapes.  Radii
/// keep their underlying radius curve here no matter the tag.
inline bool are_compatible(const Surface& s, const TaggedArc& a, const TaggedArc& b) {
  if (a == b) return true;
  if (a.is_radius() && b.is_radius()) {
    if (a.i == b.i) return true;  // parallel pair, tags differ
    return a.kind == b.kind;      // distinct endpoints: same tag at the puncture
  }
  if (!a.is_radius() && !b.is_radius())
    return crossing_number(s, iota_inverse(s, a), iota_inverse(s, b)) == 0;
  const TaggedArc& p = a.is_radius() ? b : a;
  const TaggedArc& r = a.is_radius() ? a : b;
  return crossing_number(s, iota_inverse(s, p), OrdinaryArc::radius(s, r.i)) == 0;
}

inline bool are_compatible(const Surface& s, const OrdinaryArc& a, const OrdinaryArc& b) {
  return a == b || crossing_number(s, a, b) == 0;
}

/// A multiset of pairwise compatible tagged arcs.
struct MultiTaggedCollection {
  std::vector<TaggedArc> arcs;  // with multiplicity

  static MultiTaggedCollection of(const Surface& s, std::vector<TaggedArc> arcs) {
    for (size_t x = 0; x < arcs.size(); ++x)
      for (size_t y = x + 1; y < arcs.size(); ++y)
        if (!are_compatible(s, arcs[x], arcs[y]))
          throw std::invalid_argument("multi-tagged collection: incompatible pair");
    return {std::move(arcs)};
  }
};

// ---------------------------------------------------------------------------
// Textual grammar: P(i,j), R(i), RN(i), L(i), B(i).  Whitespace-insensitive;
// vertex numbers are taken mod n.
// ---------------------------------------------------------------------------

namespace detail {

struct ArcLexer {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                 text[pos] == '\r'))
      ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("arc syntax error at position " + std::to_string(pos) + ": " +
                                what);
  }
  char peek() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    return text[pos];
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  int integer() {
    skip_ws();
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
    if (pos >= text.size() || text[pos] < '0' || text[pos] > '9') fail("expected a vertex number");
    long v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      v = v * 10 + (text[pos++] - '0');
      if (v > 1000000) fail("vertex number too large");
    }
    return int(neg ? -v : v);
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && ((text[pos] >= 'A' && text[pos] <= 'Z') ||
                                 (text[pos] >= 'a' && text[pos] <= 'z')))
      ++pos;
    if (pos == start) fail("expected an arc kind (P, R, RN, L, B)");
    return std::string(text.substr(start, pos - start));
  }
};

}  // namespace detail

/// One term of the arc grammar; boundary edges are allowed where noted.
struct ArcTerm {
  enum class Kind { Ordinary, Tagged, Boundary } kind;
  OrdinaryArc ord{};
  TaggedArc tag{};
  BoundaryEdge edge{};
};

inline ArcTerm parse_arc_term(const Surface& s, detail::ArcLexer& lx) {
  std::string k = lx.ident();
  lx.expect('(');
  int i = lx.integer();
  ArcTerm t{ArcTerm::Kind::Tagged, {}, {}, {}};
  if (k == "P" || k == "p") {
    lx.expect(',');
    int j = lx.integer();
    lx.expect(')');
    t.kind = ArcTerm::Kind::Ordinary;
    t.ord = OrdinaryArc::peripheral(s, i, j);
    t.tag = TaggedArc::peripheral(s, i, j);
    return t;
  }
  lx.expect(')');
  if (k == "R" || k == "r") {
    t.kind = ArcTerm::Kind::Ordinary;
    t.ord = OrdinaryArc::radius(s, i);
    t.tag = TaggedArc::radius_plain(s, i);
  } else if (k == "RN" || k == "rn") {
    t.kind = ArcTerm::Kind::Tagged;
    t.ord = OrdinaryArc::loop(s, i);
    t.tag = TaggedArc::radius_notched(s, i);
  } else if (k == "L" || k == "l") {
    t.kind = ArcTerm::Kind::Ordinary;
    t.ord = OrdinaryArc::loop(s, i);
    t.tag = TaggedArc::radius_notched(s, i);
  } else if (k == "B" || k == "b") {
    t.kind = ArcTerm::Kind::Boundary;
    t.edge = BoundaryEdge{s.norm(i)};
  } else {
    lx.fail("unknown arc kind '" + k + "'");
  }
  return t;
}

inline TaggedArc parse_tagged_arc(const Surface& s, std::string_view text) {
  detail::ArcLexer lx{text};
  ArcTerm t = parse_arc_term(s, lx);
  if (!lx.done()) lx.fail("trailing input");
  if (t.kind == ArcTerm::Kind::Boundary)
    throw std::invalid_argument("boundary edge is not a tagged arc");
  return t.tag;
}

inline OrdinaryArc parse_ordinary_arc(const Surface& s, std::string_view text) {
  detail::ArcLexer lx{text};
  ArcTerm t = parse_arc_term(s, lx);
  if (!lx.done()) lx.fail("trailing input");
  if (t.kind == ArcTerm::Kind::Boundary)
    throw std::invalid_argument("boundary edge is not an ordinary arc");
  return t.ord;
}

inline std::string to_string(const OrdinaryArc& a) {
  switch (a.kind) {
    case OrdKind::Peripheral:
      return "P(" + std::to_string(a.i) + "," + std::to_string(a.j) + ")";
    case OrdKind::Loop: return "L(" + std::to_string(a.i) + ")";
    case OrdKind::Radius: return "R(" + std::to_string(a.i) + ")";
  }
  return "?";
}

inline std::string to_string(const TaggedArc& a) {
  switch (a.kind) {
    case TagKind::Peripheral:
      return "P(" + std::to_string(a.i) + "," + std::to_string(a.j) + ")";
    case TagKind::RadiusPlain: return "R(" + std::to_string(a.i) + ")";
    case TagKind::RadiusNotched: return "RN(" + std::to_string(a.i) + ")";
  }
  return "?";
}

inline std::string to_string(const BoundaryEdge& e) { return "B(" + std::to_string(e.i) + ")"; }

}  // namespace pgon
