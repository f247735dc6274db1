#pragma once
// Named example configurations used across the test suites.  Each fixture
// pins a triangulation, an arc, and a relabeling onto the short names the
// bundled golden data uses (1, 2, l, r, b1..b4, t).

#include <map>
#include <string>
#include <vector>

#include "pgon/surface.hpp"
#include "pgon/tpath.hpp"
#include "pgon/triangulation.hpp"

namespace pgon::fixtures {

struct Fixture {
  int n;
  std::string triangulation;          // arc grammar
  std::string gamma;                  // arc grammar
  std::map<std::string, std::string> names;  // arc/boundary text -> short label
};

inline const Fixture& fig3() {
  static Fixture f{4,
                   "P(3,1),P(3,2),R(2),R(3)",
                   "P(0,3)",
                   {{"P(3,1)", "1"},
                    {"P(3,2)", "2"},
                    {"R(2)", "3"},
                    {"R(3)", "4"},
                    {"B(0)", "b1"},
                    {"B(1)", "b2"},
                    {"B(2)", "b3"},
                    {"B(3)", "b4"}}};
  return f;
}

/// Triangulation with all three triangle shapes; also the configuration
/// whose arc crossing it five times drives the nine-path example.
inline const Fixture& fig9a() {
  static Fixture f{4,
                   "P(0,2),P(0,3),L(3),R(3)",
                   "P(1,0)",
                   {{"P(0,2)", "1"},
                    {"P(0,3)", "2"},
                    {"L(3)", "l"},
                    {"R(3)", "r"},
                    {"RN(3)", "rn"},
                    {"B(0)", "b4"},
                    {"B(1)", "b1"},
                    {"B(2)", "b2"},
                    {"B(3)", "b3"}}};
  return f;
}

inline const Fixture& fig2() { return fig9a(); }

/// Loop around the puncture crossing the full wheel.
inline const Fixture& fig10() {
  static Fixture f{4,
                   "R(0),R(1),R(2),R(3)",
                   "L(0)",
                   {{"R(0)", "t"},
                    {"R(1)", "1"},
                    {"R(2)", "2"},
                    {"R(3)", "3"},
                    {"B(0)", "b1"},
                    {"B(1)", "b2"},
                    {"B(2)", "b3"},
                    {"B(3)", "b4"}}};
  return f;
}

/// Three radii and one peripheral arc; the arc crosses two radii and the
/// peripheral once each.
inline const Fixture& fig11() {
  static Fixture f{4,
                   "R(1),R(2),R(3),P(3,1)",
                   "P(1,0)",
                   {{"R(1)", "0"},
                    {"R(2)", "1"},
                    {"R(3)", "2"},
                    {"P(3,1)", "3"},
                    {"B(1)", "b1"},
                    {"B(2)", "b2"},
                    {"B(3)", "b3"},
                    {"B(0)", "b4"}}};
  return f;
}

inline IdealTriangulation ideal_of(const Fixture& f) {
  Surface s(f.n);
  std::vector<OrdinaryArc> arcs;
  for (auto& term : parse_arc_list(s, f.triangulation)) arcs.push_back(term.ord);
  return IdealTriangulation(s, std::move(arcs));
}

inline OrdinaryArc gamma_of(const Fixture& f) {
  Surface s(f.n);
  return parse_ordinary_arc(s, f.gamma);
}

/// Path as a comma-separated list of fixture short names (no cycle marks).
inline std::string short_labels(const Fixture& f, const TPath& p) {
  std::string out;
  for (size_t j = 0; j < p.steps.size(); ++j) {
    if (j) out += ",";
    auto it = f.names.find(p.steps[j].label());
    out += it != f.names.end() ? it->second : p.steps[j].label();
  }
  return out;
}

}  // namespace pgon::fixtures
