#pragma once

// Composite Gauss-Legendre rules on boxes.  The 1D nodes come from Boost;
// panel subdivision and the refinement loop live here.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "fhknot/error.hpp"

namespace fhknot::quad {

inline constexpr unsigned kOrder = 10;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Nodes and weights of the order-kOrder rule on [-1, 1].
struct Rule {
  std::array<double, kOrder> x{};
  std::array<double, kOrder> w{};
};

inline const Rule& rule() {
  static const Rule r = [] {
    using G = boost::math::quadrature::gauss<double, kOrder>;
    Rule out;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    // Boost stores the non-negative half; kOrder is even, so no zero node.
    std::size_t k = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      out.x[k] = -a[i];
      out.w[k++] = wt[i];
      out.x[k] = a[i];
      out.w[k++] = wt[i];
    }
    return out;
  }();
  return r;
}

/// Composite rule with `panels` equal panels on [lo, hi].
template <class F>
double integrate_1d(F&& f, Interval iv, std::size_t panels) {
  const auto& r = rule();
  const double h = (iv.hi - iv.lo) / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = iv.lo + (static_cast<double>(p) + 0.5) * h;
    for (unsigned i = 0; i < kOrder; ++i) sum += r.w[i] * f(mid + 0.5 * h * r.x[i]);
  }
  return sum * 0.5 * h;
}

template <class F>
double integrate_2d(F&& f, Interval ix, Interval iy, std::size_t panels) {
  return integrate_1d([&](double x) { return integrate_1d([&](double y) { return f(x, y); }, iy, panels); }, ix,
                      panels);
}

struct Options {
  double tol = 1e-6;
  int max_level = 9;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;  // |last - previous|
  int level = 0;       // 2^level panels per axis
};

/// Doubles the panel count per axis until two successive estimates agree.
template <class F>
Estimate adaptive_2d(F&& f, Interval ix, Interval iy, const Options& opt = {}) {
  double prev = integrate_2d(f, ix, iy, 1);
  for (int level = 1; level <= opt.max_level; ++level) {
    double cur = integrate_2d(f, ix, iy, std::size_t{1} << level);
    const double err = std::abs(cur - prev);
    if (err < opt.tol) return {cur, err, level};
    prev = cur;
  }
  throw Error(Errc::quadrature_not_converged,
              "no agreement to " + std::to_string(opt.tol) + " after " + std::to_string(opt.max_level) + " levels");
}

}  // namespace fhknot::quad
