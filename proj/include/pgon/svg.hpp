#pragma once
// Static SVG depiction of a triangulated once-punctured polygon: boundary
// circle, marked points, puncture, arcs as labeled curves, and optionally a
// highlighted arc with the arcs it crosses.  Output is deterministic byte
// for byte.

#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pgon/surface.hpp"
#include "pgon/triangulation.hpp"

namespace pgon {

namespace svgdetail {

struct Pt {
  double x, y;
};

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v + 0.0);  // normalize -0
  return buf;
}

struct Canvas {
  double cx = 160, cy = 160, radius = 140;
  int n;

  explicit Canvas(int n_) : n(n_) {}

  Pt vertex(double k) const {
    // vertex 0 on top, clockwise numbering
    double ang = M_PI / 2 - 2 * M_PI * k / n;
    return {cx + radius * std::cos(ang), cy - radius * std::sin(ang)};
  }
  Pt center() const { return {cx, cy}; }
  Pt toward_center(const Pt& p, double f) const {
    return {p.x + (cx - p.x) * f, p.y + (cy - p.y) * f};
  }
};

inline std::string path_through(const Pt& a, const Pt& mid, const Pt& b) {
  // quadratic through `mid` at the halfway parameter
  Pt c{2 * mid.x - (a.x + b.x) / 2, 2 * mid.y - (a.y + b.y) / 2};
  return "M " + num(a.x) + " " + num(a.y) + " Q " + num(c.x) + " " + num(c.y) + " " + num(b.x) +
         " " + num(b.y);
}

}  // namespace svgdetail

struct RenderOptions {
  std::optional<OrdinaryArc> gamma;
  std::set<ArcId> highlight;  // ordinary ids of crossed arcs
};

inline std::string render_svg(const Surface& s, const std::vector<TaggedArc>& arcs,
                              const RenderOptions& opt = {}) {
  using namespace svgdetail;
  Canvas c(s.n);
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"320\" height=\"320\" "
         "viewBox=\"0 0 320 320\">\n";
  out += "<circle cx=\"" + num(c.cx) + "\" cy=\"" + num(c.cy) + "\" r=\"" + num(c.radius) +
         "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1.5\"/>\n";

  auto arc_path = [&](const OrdinaryArc& a) -> std::string {
    switch (a.kind) {
      case OrdKind::Radius: {
        Pt p = c.vertex(a.i);
        return "M " + num(p.x) + " " + num(p.y) + " L " + num(c.cx) + " " + num(c.cy);
      }
      case OrdKind::Peripheral: {
        int d = s.cw_dist(a.i, a.j);
        Pt p = c.vertex(a.i), q = c.vertex(a.j);
        Pt mid = c.toward_center(c.vertex(a.i + d / 2.0), 0.25 + 0.55 * d / s.n);
        return path_through(p, mid, q);
      }
      case OrdKind::Loop: {
        Pt p = c.vertex(a.i);
        Pt left = c.toward_center(c.vertex(a.i - 0.45 * s.n / 4.0), 0.55);
        Pt far = c.toward_center(c.vertex(a.i + s.n / 2.0), 0.72);
        Pt right = c.toward_center(c.vertex(a.i + 0.45 * s.n / 4.0), 0.55);
        return "M " + num(p.x) + " " + num(p.y) + " Q " + num(left.x) + " " + num(left.y) + " " +
               num(far.x) + " " + num(far.y) + " Q " + num(right.x) + " " + num(right.y) + " " +
               num(p.x) + " " + num(p.y);
      }
    }
    return "";
  };

  for (auto& tagged : arcs) {
    OrdinaryArc a = iota_inverse(s, tagged);
    bool hl = opt.highlight.count(ordinary_id(s, a)) > 0;
    std::string color = hl ? "#c22" : "#26c";
    out += "<path d=\"" + arc_path(a) + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"" + (hl ? std::string("2.5") : std::string("1.5")) + "\"/>\n";
    if (tagged.kind == TagKind::RadiusNotched) {
      // bow-tie mark near the puncture end
      Pt p = c.vertex(tagged.i);
      Pt m = c.toward_center(p, 0.85);
      out += "<path d=\"M " + num(m.x - 5) + " " + num(m.y - 4) + " L " + num(m.x + 5) + " " +
             num(m.y + 4) + " L " + num(m.x + 5) + " " + num(m.y - 4) + " L " + num(m.x - 5) +
             " " + num(m.y + 4) + " Z\" fill=\"#26c\"/>\n";
    }
    Pt label = tagged.kind == TagKind::Peripheral
                   ? c.toward_center(c.vertex(tagged.i + s.cw_dist(tagged.i, tagged.j) / 2.0),
                                     0.18 + 0.5 * s.cw_dist(tagged.i, tagged.j) / s.n)
                   : c.toward_center(c.vertex(tagged.i), 0.45);
    out += "<text x=\"" + num(label.x) + "\" y=\"" + num(label.y) +
           "\" font-size=\"10\" fill=\"#333\">" + to_string(tagged) + "</text>\n";
  }

  if (opt.gamma) {
    out += "<path d=\"" + arc_path(*opt.gamma) +
           "\" fill=\"none\" stroke=\"#181\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>\n";
  }

  for (int k = 0; k < s.n; ++k) {
    Pt p = c.vertex(k);
    out += "<circle cx=\"" + num(p.x) + "\" cy=\"" + num(p.y) + "\" r=\"3.5\" fill=\"#000\"/>\n";
    Pt lp = c.toward_center(p, -0.08);
    out += "<text x=\"" + num(lp.x - 4) + "\" y=\"" + num(lp.y + 4) +
           "\" font-size=\"11\" fill=\"#000\">" + std::to_string(k) + "</text>\n";
  }
  out += "<circle cx=\"" + num(c.cx) + "\" cy=\"" + num(c.cy) +
         "\" r=\"3\" fill=\"#fff\" stroke=\"#000\" stroke-width=\"1.5\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace pgon
