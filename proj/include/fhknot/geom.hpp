#pragma once

// Polygonal curves in 3-space: exact Gauss linking integrals, the
// half-writhe of a long knot, xy-projection diagrams and a few builders.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fhknot/codes.hpp"
#include "fhknot/error.hpp"

namespace fhknot {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend Vec3 operator*(Vec3 a, double s) { return s * a; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) { return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x}; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

/// Vertices in traversal order.  A closed curve repeats its first vertex at
/// the end.
struct Polyline3 {
  std::vector<Vec3> vertices;

  bool closed() const { return vertices.size() > 2 && vertices.front() == vertices.back(); }
  std::size_t segment_count() const { return vertices.size() < 2 ? 0 : vertices.size() - 1; }
};

inline Polyline3 transformed(const Polyline3& p, auto&& map) {
  Polyline3 out;
  out.vertices.reserve(p.vertices.size());
  for (const auto& v : p.vertices) out.vertices.push_back(map(v));
  return out;
}

// ---------------------------------------------------------------------------
// Text format: one `x y z` per line, blank line between components.

inline std::vector<Polyline3> read_polylines(std::istream& in) {
  std::vector<Polyline3> out(1);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) {
      if (!out.back().vertices.empty()) out.emplace_back();
      continue;
    }
    std::istringstream fields(raw);
    Vec3 v;
    std::string extra;
    if (!(fields >> v.x >> v.y >> v.z) || (fields >> extra)) {
      throw Error(Errc::malformed_input, "line " + std::to_string(line) + ": expected `x y z`");
    }
    out.back().vertices.push_back(v);
  }
  if (out.back().vertices.empty()) out.pop_back();
  return out;
}

inline void write_polyline(std::ostream& out, const Polyline3& p) {
  const auto old = out.precision(17);
  for (const auto& v : p.vertices) out << v.x << ' ' << v.y << ' ' << v.z << '\n';
  out.precision(old);
}

// ---------------------------------------------------------------------------
// Checks

namespace detail {

inline double segment_distance(Vec3 p1, Vec3 p2, Vec3 q1, Vec3 q2) {
  const Vec3 d1 = p2 - p1, d2 = q2 - q1, r = p1 - q1;
  const double a = dot(d1, d1), e = dot(d2, d2), f = dot(d2, r);
  const double c = dot(d1, r), b = dot(d1, d2);
  const double denom = a * e - b * b;
  double s = denom > 1e-300 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
  double t = (b * s + f) / e;
  if (t < 0.0) {
    t = 0.0;
    s = std::clamp(-c / a, 0.0, 1.0);
  } else if (t > 1.0) {
    t = 1.0;
    s = std::clamp((b - c) / a, 0.0, 1.0);
  }
  return norm((p1 + s * d1) - (q1 + t * d2));
}

inline void require_segments(const Polyline3& p) {
  if (p.vertices.size() < 2) throw Error(Errc::degenerate_segment, "polyline needs at least two vertices");
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    if (norm(p.vertices[i + 1] - p.vertices[i]) == 0.0) {
      throw Error(Errc::degenerate_segment, "segment " + std::to_string(i) + " has zero length");
    }
  }
}

inline bool adjacent(const Polyline3& p, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  if (j == i + 1) return true;
  return p.closed() && i == 0 && j + 1 == p.segment_count();
}

inline constexpr double kTouch = 1e-12;

}  // namespace detail

/// Throws IntersectingInputs if two non-adjacent segments meet.
inline void require_embedded(const Polyline3& p) {
  detail::require_segments(p);
  const auto n = p.segment_count();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (detail::adjacent(p, i, j)) continue;
      if (detail::segment_distance(p.vertices[i], p.vertices[i + 1], p.vertices[j], p.vertices[j + 1]) <
          detail::kTouch) {
        throw Error(Errc::intersecting_inputs,
                    "segments " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
    }
  }
}

/// Long-knot boundary condition: starts at x < -1 and ends at x > 1 on the
/// x-axis, with both end segments on the axis and pointing outward.
inline void require_long_knot(const Polyline3& p) {
  require_embedded(p);
  const auto& v = p.vertices;
  auto on_axis = [](Vec3 a) { return a.y == 0.0 && a.z == 0.0; };
  if (v.size() < 4 || !on_axis(v[0]) || !on_axis(v[1]) || !on_axis(v[v.size() - 2]) || !on_axis(v.back())) {
    throw Error(Errc::malformed_input, "long knot must begin and end with x-axis segments");
  }
  if (!(v[0].x < -1.0 && v[0].x < v[1].x && v.back().x > 1.0 && v.back().x > v[v.size() - 2].x)) {
    throw Error(Errc::malformed_input, "long-knot tails must point outward beyond |x| = 1");
  }
}

// ---------------------------------------------------------------------------
// Gauss integrals

/// Signed solid angle swept by the direction from segment a0a1 to segment
/// b0b1, i.e. the exact segment-pair contribution to 4pi times the Gauss
/// linking integral.  Zero for coplanar pairs.
inline double segment_solid_angle(Vec3 a0, Vec3 a1, Vec3 b0, Vec3 b1) {
  const Vec3 r13 = b0 - a0, r14 = b1 - a0, r23 = b0 - a1, r24 = b1 - a1;
  const double orient = dot(cross(b1 - b0, a1 - a0), r13);
  if (orient == 0.0) return 0.0;
  std::array<Vec3, 4> n{cross(r13, r14), cross(r14, r24), cross(r24, r23), cross(r23, r13)};
  for (auto& v : n) {
    const double len = norm(v);
    if (len == 0.0) return 0.0;
    v = (1.0 / len) * v;
  }
  double omega = 0.0;
  for (std::size_t k = 0; k < 4; ++k) omega += std::asin(std::clamp(dot(n[k], n[(k + 1) % 4]), -1.0, 1.0));
  return orient > 0 ? omega : -omega;
}

/// (1/4pi) times the double sum of segment solid angles.
inline double gauss_linking(const Polyline3& p, const Polyline3& q) {
  detail::require_segments(p);
  detail::require_segments(q);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    for (std::size_t j = 0; j + 1 < q.vertices.size(); ++j) {
      const Vec3 a0 = p.vertices[i], a1 = p.vertices[i + 1], b0 = q.vertices[j], b1 = q.vertices[j + 1];
      if (detail::segment_distance(a0, a1, b0, b1) < detail::kTouch) {
        throw Error(Errc::intersecting_inputs,
                    "segment " + std::to_string(i) + " meets segment " + std::to_string(j) + " of the other curve");
      }
      total += segment_solid_angle(a0, a1, b0, b1);
    }
  }
  return total / (4.0 * std::numbers::pi);
}

/// Gauss integral over ordered pairs x1 < x2 on one curve; half the writhe.
inline double self_linking_half(const Polyline3& p) {
  detail::require_segments(p);
  const auto n = p.segment_count();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (detail::adjacent(p, i, j)) continue;
      total += segment_solid_angle(p.vertices[i], p.vertices[i + 1], p.vertices[j], p.vertices[j + 1]);
    }
  }
  return total / (4.0 * std::numbers::pi);
}

// ---------------------------------------------------------------------------
// Projection to the xy-plane

struct ProjectedCrossing {
  double over_param = 0.0;   // segment index + fraction along the over curve
  double under_param = 0.0;  // same on the under curve
  Sign sign = +1;
};

namespace detail {

/// xy-intersection of two segments (interior only); returns false if none.
inline bool xy_intersection(Vec3 a0, Vec3 a1, Vec3 b0, Vec3 b1, double& s, double& t) {
  const double dx1 = a1.x - a0.x, dy1 = a1.y - a0.y, dx2 = b1.x - b0.x, dy2 = b1.y - b0.y;
  const double den = dx1 * dy2 - dy1 * dx2;
  if (std::abs(den) < 1e-300) return false;
  const double rx = b0.x - a0.x, ry = b0.y - a0.y;
  s = (rx * dy2 - ry * dx2) / den;
  t = (rx * dy1 - ry * dx1) / den;
  return s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0;
}

inline void collect_crossings(const Polyline3& p, const Polyline3& q, bool same, std::vector<ProjectedCrossing>& out) {
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    for (std::size_t j = same ? i + 2 : 0; j + 1 < q.vertices.size(); ++j) {
      if (same && adjacent(p, i, j)) continue;
      const Vec3 a0 = p.vertices[i], a1 = p.vertices[i + 1], b0 = q.vertices[j], b1 = q.vertices[j + 1];
      double s = 0, t = 0;
      if (!xy_intersection(a0, a1, b0, b1, s, t)) continue;
      const double za = a0.z + s * (a1.z - a0.z), zb = b0.z + t * (b1.z - b0.z);
      if (za == zb) throw Error(Errc::intersecting_inputs, "curves meet above a projected crossing");
      const Vec3 da = a1 - a0, db = b1 - b0;
      ProjectedCrossing c;
      const bool a_over = za > zb;
      c.over_param = a_over ? static_cast<double>(i) + s : static_cast<double>(j) + t;
      c.under_param = a_over ? static_cast<double>(j) + t : static_cast<double>(i) + s;
      const double zc = a_over ? cross(da, db).z : cross(db, da).z;
      c.sign = zc > 0 ? +1 : -1;
      out.push_back(c);
    }
  }
}

}  // namespace detail

/// Crossings of the xy-projection between two curves (p passing over or under q).
inline std::vector<ProjectedCrossing> projected_crossings(const Polyline3& p, const Polyline3& q) {
  std::vector<ProjectedCrossing> out;
  detail::collect_crossings(p, q, false, out);
  return out;
}

/// Signed Gauss code of the xy-projection of a long polyline.
inline SignedGaussCode diagram_from_polyline(const Polyline3& p) {
  detail::require_segments(p);
  std::vector<ProjectedCrossing> cs;
  detail::collect_crossings(p, p, true, cs);
  struct Visit {
    double param;
    Passage passage;
  };
  std::vector<Visit> visits;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const int label = static_cast<int>(k) + 1;
    visits.push_back({cs[k].over_param, {Strand::over, label, cs[k].sign}});
    visits.push_back({cs[k].under_param, {Strand::under, label, cs[k].sign}});
  }
  std::sort(visits.begin(), visits.end(), [](const Visit& a, const Visit& b) { return a.param < b.param; });
  std::vector<Passage> passages;
  for (const auto& v : visits) passages.push_back(v.passage);
  return SignedGaussCode(std::move(passages));
}

// ---------------------------------------------------------------------------
// Builders

struct BraidPolylineOptions {
  double inner_radius = 1.0;
  double spacing = 0.5;
  double bump_height = 0.02;  // |z| at a crossing
  int samples_per_sector = 24;
  double tail = 10.0;   // x-extent of the axis tails
  double gap = 0.3;     // distance between the axis and the closure's outer strand
  double opening = 0.08;  // angular half-width of the cut at the bottom
};

/// Long knot from the closure of a braid on `strands` strands.  Generator
/// k > 0 is sigma_k (a positive crossing), k < 0 its inverse.  The closure
/// is cut open on the outermost strand at the bottom and joined to the
/// x-axis tails; the result is almost planar with blackboard writhe equal
/// to the exponent sum.
inline Polyline3 braid_closure_polyline(int strands, const std::vector<int>& word,
                                        const BraidPolylineOptions& opt = {}) {
  if (strands < 1 || word.empty()) throw Error(Errc::malformed_input, "braid needs strands and a nonempty word");
  for (int g : word) {
    if (g == 0 || std::abs(g) >= strands) throw Error(Errc::malformed_input, "braid generator out of range");
  }
  const double pi = std::numbers::pi;
  const auto sectors = static_cast<int>(word.size());
  const double r_out = opt.inner_radius + (strands - 1) * opt.spacing;
  const Vec3 center{0.0, r_out + opt.gap, 0.0};
  auto radius = [&](int pos) { return opt.inner_radius + (strands - 1 - pos) * opt.spacing; };
  // Position 0 is outermost.  Angles run clockwise from the bottom.
  const double span = 2.0 * pi - 2.0 * opt.opening;
  const double sector = span / sectors;
  auto at = [&](double angle, double r, double z) {
    const double phi = -pi / 2 - opt.opening - angle;  // clockwise from just left of the bottom
    return Vec3{center.x + r * std::cos(phi), center.y + r * std::sin(phi), z};
  };

  Polyline3 out;
  int pos = 0;
  int laps = 0;
  do {
    for (int s = 0; s < sectors; ++s) {
      const int g = word[static_cast<std::size_t>(s)];
      const int lo = std::abs(g) - 1;  // swaps positions lo and lo + 1
      const bool moving = (pos == lo || pos == lo + 1);
      const int dest = !moving ? pos : (pos == lo ? lo + 1 : lo);
      // The strand moving inward passes over for sigma_k.
      const bool over = moving && ((dest > pos) == (g > 0));
      for (int k = 0; k < opt.samples_per_sector; ++k) {
        // Offset samples keep the crossings off the vertices.
        const double t = (k + 0.5) / opt.samples_per_sector;
        const double blend = 0.5 - 0.5 * std::cos(pi * t);
        const double r = radius(pos) + (radius(dest) - radius(pos)) * blend;
        const double z = moving ? (over ? 1.0 : -1.0) * opt.bump_height * std::pow(std::sin(pi * t), 2) : 0.0;
        out.vertices.push_back(at((s + t) * sector, r, z));
      }
      pos = dest;
    }
    ++laps;
  } while (pos != 0 && laps <= strands);
  if (pos != 0) throw Error(Errc::malformed_input, "braid closure has more than one component");
  out.vertices.push_back(at(span, radius(0), 0.0));

  const Vec3 start = out.vertices.front();
  const Vec3 end = out.vertices.back();
  Polyline3 knot;
  knot.vertices = {{-opt.tail, 0.0, 0.0}, {start.x, 0.0, 0.0}};
  knot.vertices.insert(knot.vertices.end(), out.vertices.begin(), out.vertices.end());
  knot.vertices.push_back({end.x, 0.0, 0.0});
  knot.vertices.push_back({opt.tail, 0.0, 0.0});
  return knot;
}

/// Two linked round loops whose projection has two positive crossings.
inline std::pair<Polyline3, Polyline3> hopf_clasp(int samples = 96, double height = 0.05) {
  const double pi = std::numbers::pi;
  const double r = 0.8;
  Polyline3 a, b;
  for (int k = 0; k <= samples; ++k) {
    const double phi = 2.0 * pi * (k % samples) / samples;
    // Loop a rises over loop b at the upper crossing and dips under it at the lower one.
    a.vertices.push_back({r * std::cos(phi), r * std::sin(phi), height * std::sin(phi)});
    b.vertices.push_back({1.0 + r * std::cos(phi), r * std::sin(phi), 0.0});
  }
  return {a, b};
}

/// Reflection through the xy-plane.
inline Polyline3 mirrored(const Polyline3& p) {
  return transformed(p, [](Vec3 v) { return Vec3{v.x, v.y, -v.z}; });
}

}  // namespace fhknot
