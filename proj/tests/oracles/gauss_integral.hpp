#pragma once

// Gauss linking integrand (r1 - r2) . (d1 x d2) / |r1 - r2|^3 integrated by
// a tensor Gauss rule over each segment pair.

#include <cmath>
#include <numbers>

#include "fhknot/geom.hpp"
#include "fhknot/quadrature.hpp"

namespace oracle {

inline double segment_pair_gauss(fhknot::Vec3 a0, fhknot::Vec3 a1, fhknot::Vec3 b0, fhknot::Vec3 b1,
                                 std::size_t panels = 16) {
  using fhknot::Vec3;
  const Vec3 da = a1 - a0, db = b1 - b0;
  const Vec3 c = fhknot::cross(da, db);
  return fhknot::quad::integrate_2d(
      [&](double s, double t) {
        const Vec3 r = (a0 + s * da) - (b0 + t * db);
        const double len = fhknot::norm(r);
        return fhknot::dot(r, c) / (len * len * len);
      },
      {0.0, 1.0}, {0.0, 1.0}, panels);
}

inline double linking_by_quadrature(const fhknot::Polyline3& p, const fhknot::Polyline3& q, std::size_t panels = 4) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    for (std::size_t j = 0; j + 1 < q.vertices.size(); ++j) {
      total += segment_pair_gauss(p.vertices[i], p.vertices[i + 1], q.vertices[j], q.vertices[j + 1], panels);
    }
  }
  return total / (4.0 * std::numbers::pi);
}

}  // namespace oracle
