#pragma once

// Pole-concentrated volume forms on the sphere, the planar half-integrals
// of their pullbacks, and the four local configuration models whose
// integrals assemble into the third finite difference of v.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <string_view>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fhknot/error.hpp"
#include "fhknot/fh.hpp"
#include "fhknot/geom.hpp"
#include "fhknot/quadrature.hpp"

namespace fhknot {

/// Even, compactly supported profile with its derivative.
struct Bump {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double radius = 1.0;  // support is [-radius, radius]

  double operator()(double x) const { return value(x); }

  /// exp(-1/(1-x^2)) on |x| < 1.
  static Bump standard() { return scaled(1.0, 1.0); }

  /// amplitude * exp(-1/(1-(x/width)^2)) on |x| < width.
  static Bump scaled(double amplitude, double width) {
    auto f = [amplitude, width](double x) {
      const double s = x / width;
      return std::abs(s) >= 1.0 ? 0.0 : amplitude * std::exp(-1.0 / (1.0 - s * s));
    };
    auto df = [f, width](double x) {
      const double s = x / width;
      if (std::abs(s) >= 1.0) return 0.0;
      const double d = 1.0 - s * s;
      return f(x) * (-2.0 * s / (d * d)) / width;
    };
    return {f, df, width};
  }

  double peak() const {
    double m = 0.0;
    for (int k = 0; k <= 2000; ++k) m = std::max(m, value(radius * k / 2000.0));
    return m;
  }
};

/// Unit 2-form rho(n) dA on the sphere supported in two polar caps of
/// half-angle `cap`.  rho depends only on the angle to the nearest pole and
/// is even under the antipode, so i*vol = -vol and each cap carries 1/2.
class PoleVolumeForm {
 public:
  explicit PoleVolumeForm(double cap_half_angle = 0.2) : cap_(cap_half_angle) {
    if (!(cap_ > 0.0 && cap_ < std::numbers::pi / 2)) {
      throw Error(Errc::malformed_input, "cap half-angle must lie in (0, pi/2)");
    }
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double cap_mass =
        GK::integrate([this](double th) { return profile(th) * 2.0 * std::numbers::pi * std::sin(th); }, 0.0, cap_,
                      15, 1e-14);
    scale_ = 0.5 / cap_mass;
  }

  double cap_half_angle() const noexcept { return cap_; }

  /// Density against the oriented area form at unit vector n.
  double density(Vec3 n) const {
    const double polar = std::acos(std::min(1.0, std::abs(n.z) / norm(n)));
    return scale_ * profile(polar);
  }

  /// Total integral over a sphere, by quadrature in the polar angle.
  double total_mass() const {
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    return GK::integrate(
        [this](double th) { return density({std::sin(th), 0.0, std::cos(th)}) * 2.0 * std::numbers::pi * std::sin(th); },
        0.0, std::numbers::pi, 15, 1e-14);
  }

 private:
  double profile(double polar) const {
    const double s = polar / cap_;
    return s >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - s * s));
  }

  double cap_;
  double scale_ = 1.0;
};

// ---------------------------------------------------------------------------
// Half-integrals.  psi_s(x, x') is the direction from (x,0,0) to
// (0, -x', h_s(x')) with h_1 = b and h_2 = 2 b(./2).

enum class PsiKind { one = 1, two = 2 };

namespace detail {

inline double psi_height(PsiKind k, const Bump& b, double xp) { return k == PsiKind::one ? b(xp) : 2.0 * b(xp / 2); }

inline double psi_height_derivative(PsiKind k, const Bump& b, double xp) {
  return k == PsiKind::one ? b.derivative(xp) : b.derivative(xp / 2);
}

/// Half-width of a square containing the support of psi^*vol.
inline double psi_support(PsiKind k, const Bump& b, const PoleVolumeForm& vol) {
  const double peak = k == PsiKind::one ? b.peak() : 2.0 * b.peak();
  return std::tan(vol.cap_half_angle()) * peak * 1.0001;
}

}  // namespace detail

/// Pullback density of vol under psi at (x, x').
inline double psi_pullback(PsiKind k, const Bump& b, const PoleVolumeForm& vol, double x, double xp) {
  const double h = detail::psi_height(k, b, xp);
  if (h <= 0.0) return 0.0;
  const Vec3 w{-x, -xp, h};
  const double r = norm(w);
  // w . (d_x w  x  d_x' w) with d_x w = (-1,0,0), d_x' w = (0,-1,h').
  const double jac = h - xp * detail::psi_height_derivative(k, b, xp);
  return vol.density(w) * jac / (r * r * r);
}

inline quad::Estimate half_integral_estimate(PsiKind k, const Bump& b, const PoleVolumeForm& vol,
                                             const quad::Options& opt = {}) {
  const double s = detail::psi_support(k, b, vol);
  return quad::adaptive_2d([&](double x, double xp) { return psi_pullback(k, b, vol, x, xp); }, {-s, s}, {-s, s},
                           opt);
}

inline double half_integral(PsiKind k, const Bump& b = Bump::standard(), const PoleVolumeForm& vol = PoleVolumeForm(),
                            const quad::Options& opt = {}) {
  return half_integral_estimate(k, b, vol, opt).value;
}

struct HalfIntegrals {
  double psi1 = 0.0;
  double psi2 = 0.0;

  double operator[](PsiKind k) const { return k == PsiKind::one ? psi1 : psi2; }
};

inline HalfIntegrals compute_half_integrals(const Bump& b, const PoleVolumeForm& vol, const quad::Options& opt = {}) {
  return {half_integral(PsiKind::one, b, vol, opt), half_integral(PsiKind::two, b, vol, opt)};
}

// ---------------------------------------------------------------------------
// Local models.  Parameters p = (theta, x1, ..., x5) place five points
// y1..y5; three of the pairwise directions are fed to vol x vol x vol.

enum class LocalKind { one_a, one_b, two_a, two_b };

constexpr std::string_view to_string(LocalKind k) noexcept {
  switch (k) {
    case LocalKind::one_a: return "1a";
    case LocalKind::one_b: return "1b";
    case LocalKind::two_a: return "2a";
    case LocalKind::two_b: return "2b";
  }
  return "?";
}

/// Number of times the configuration is met along one FH cycle.
constexpr int multiplicity(LocalKind k) noexcept {
  switch (k) {
    case LocalKind::one_a: return 1;
    case LocalKind::one_b: return 2;
    case LocalKind::two_a: return 2;
    case LocalKind::two_b: return 6;
  }
  return 0;
}

/// Value of eps1 eps2 eps3 times the local integral.
constexpr double expected_signed_value(LocalKind k) noexcept {
  switch (k) {
    case LocalKind::one_a: return 0.125;
    case LocalKind::one_b: return -0.25;
    case LocalKind::two_a: return -0.25;
    case LocalKind::two_b: return 0.75;
  }
  return 0.0;
}

inline constexpr std::array<LocalKind, 4> kAllLocalKinds{LocalKind::one_a, LocalKind::one_b, LocalKind::two_a,
                                                         LocalKind::two_b};

struct LocalModelSpec {
  LocalKind kind = LocalKind::one_a;
  std::array<Sign, 3> signs{+1, +1, +1};
  Bump bump = Bump::standard();

  int sign_product() const { return signs[0] * signs[1] * signs[2]; }
};

using Params = std::array<double, 6>;

struct Direction {
  int head = 0;  // index into y, 0-based
  int tail = 0;
};

/// Five points and the three directions for a spec.
struct LocalModel {
  std::function<std::array<Vec3, 5>(const Params&)> points;
  std::array<Direction, 3> directions{};

  Vec3 direction(const Params& p, std::size_t k) const {
    const auto y = points(p);
    return y[static_cast<std::size_t>(directions[k].head)] - y[static_cast<std::size_t>(directions[k].tail)];
  }
};

inline LocalModel build_local_model(const LocalModelSpec& spec) {
  const Bump b = spec.bump;
  const double e1 = spec.signs[0], e2 = spec.signs[1], e3 = spec.signs[2];
  auto arc1 = [b](double t) { return b(t); };
  auto arc2 = [b](double t) { return 2.0 * b(t / 2); };
  LocalModel m;
  switch (spec.kind) {
    case LocalKind::one_a:
      m.points = [=](const Params& p) {
        const double th = p[0], x1 = p[1], x2 = p[2], x3 = p[3], x4 = p[4], x5 = p[5];
        return std::array<Vec3, 5>{Vec3{x1, 0, 0}, Vec3{0, -e2 * x2, arc1(e2 * x2)}, Vec3{x3, 0, 0},
                                   Vec3{th, -e1 * x4, arc2(e1 * x4)}, Vec3{0, -e3 * x5, arc1(x5)}};
      };
      m.directions = {Direction{1, 0}, Direction{4, 2}, Direction{3, 0}};
      break;
    case LocalKind::one_b:
      m.points = [=](const Params& p) {
        const double th = p[0], x1 = p[1], x2 = p[2], x3 = p[3], x4 = p[4], x5 = p[5];
        return std::array<Vec3, 5>{Vec3{x1, 0, 0}, Vec3{th, -e2 * x2, arc2(e2 * x2)}, Vec3{x3, 0, 0},
                                   Vec3{0, -e1 * x4, arc1(x4)}, Vec3{0, -e3 * x5, arc1(x5)}};
      };
      m.directions = {Direction{3, 0}, Direction{4, 2}, Direction{1, 0}};
      break;
    case LocalKind::two_a:
      m.points = [=](const Params& p) {
        const double th = p[0], x1 = p[1], x2 = p[2], x3 = p[3], x4 = p[4], x5 = p[5];
        return std::array<Vec3, 5>{Vec3{x1, 0, 0}, Vec3{x2, 0, 0}, Vec3{0, -e2 * x3, arc1(e2 * x3)},
                                   Vec3{th, -e1 * x4, arc2(e1 * x4)}, Vec3{0, -e3 * x5, arc1(e3 * x5)}};
      };
      m.directions = {Direction{2, 0}, Direction{4, 1}, Direction{3, 0}};
      break;
    case LocalKind::two_b:
      m.points = [=](const Params& p) {
        const double th = p[0], x1 = p[1], x2 = p[2], x3 = p[3], x4 = p[4], x5 = p[5];
        return std::array<Vec3, 5>{Vec3{x1, 0, 0}, Vec3{x2, 0, 0}, Vec3{th, -e1 * x3, arc2(e1 * x3)},
                                   Vec3{0, -e2 * x4, arc1(e2 * x4)}, Vec3{0, -e3 * x5, arc1(e3 * x5)}};
      };
      m.directions = {Direction{3, 0}, Direction{4, 1}, Direction{2, 0}};
      break;
  }
  return m;
}

/// The linear map Phi: R^6 -> (R^2)^3 read off the horizontal components
/// (-d_x, -d_y) of each direction, and the psi template each direction
/// factors through.
struct LocalModelAnalysis {
  std::array<std::array<double, 6>, 6> phi{};  // rows: (x_1, x'_1, x_2, x'_2, x_3, x'_3)
  double det = 0.0;
  std::array<PsiKind, 3> psi{};
};

namespace detail {

inline double determinant6(std::array<std::array<double, 6>, 6> a) {
  double det = 1.0;
  for (std::size_t c = 0; c < 6; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < 6; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (a[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < 6; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < 6; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

inline std::array<std::array<double, 6>, 6> invert6(std::array<std::array<double, 6>, 6> a) {
  std::array<std::array<double, 6>, 6> inv{};
  for (std::size_t i = 0; i < 6; ++i) inv[i][i] = 1.0;
  for (std::size_t c = 0; c < 6; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < 6; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (a[piv][c] == 0.0) throw Error(Errc::invalid_diagram, "local model map is singular");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    const double d = a[c][c];
    for (std::size_t k = 0; k < 6; ++k) {
      a[c][k] /= d;
      inv[c][k] /= d;
    }
    for (std::size_t r = 0; r < 6; ++r) {
      if (r == c) continue;
      const double f = a[r][c];
      for (std::size_t k = 0; k < 6; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

}  // namespace detail

/// Derives Phi and the psi templates from the coordinates of `spec`, and
/// checks that the direction map factors as (psi x psi x psi) o Phi.
inline LocalModelAnalysis analyze_local_model(const LocalModelSpec& spec) {
  const auto model = build_local_model(spec);
  LocalModelAnalysis out;
  const Params zero{};
  for (std::size_t k = 0; k < 3; ++k) {
    const Vec3 d0 = model.direction(zero, k);
    for (std::size_t j = 0; j < 6; ++j) {
      Params e{};
      e[j] = 1.0;
      const Vec3 d = model.direction(e, k);
      out.phi[2 * k][j] = -(d.x - d0.x);
      out.phi[2 * k + 1][j] = -(d.y - d0.y);
    }
  }
  out.det = detail::determinant6(out.phi);

  // Sample points inside the support: horizontal parts must be linear and
  // the height must match one psi template.
  const std::array<Params, 4> samples{Params{0.013, -0.021, 0.034, 0.6, -0.27, 0.045},
                                      Params{-0.3, 0.11, -0.52, 0.08, 0.19, -0.7},
                                      Params{0.25, 0.4, 0.1, -0.2, -0.05, 0.3},
                                      Params{-0.07, -0.6, 0.7, 0.33, 0.41, -0.12}};
  for (std::size_t k = 0; k < 3; ++k) {
    bool fits1 = true, fits2 = true;
    for (const auto& p : samples) {
      const Vec3 d = model.direction(p, k);
      double u = 0.0, v = 0.0;
      for (std::size_t j = 0; j < 6; ++j) {
        u += out.phi[2 * k][j] * p[j];
        v += out.phi[2 * k + 1][j] * p[j];
      }
      if (std::abs(-d.x - u) > 1e-12 || std::abs(-d.y - v) > 1e-12) {
        throw Error(Errc::invalid_diagram, "direction " + std::to_string(k + 1) + " is not linear in the plane");
      }
      fits1 = fits1 && std::abs(d.z - detail::psi_height(PsiKind::one, spec.bump, v)) < 1e-12;
      fits2 = fits2 && std::abs(d.z - detail::psi_height(PsiKind::two, spec.bump, v)) < 1e-12;
    }
    if (fits1 == fits2) {
      throw Error(Errc::invalid_diagram,
                  "direction " + std::to_string(k + 1) + " does not factor through a single psi template");
    }
    out.psi[k] = fits1 ? PsiKind::one : PsiKind::two;
  }
  return out;
}

/// multiplicity * sign(det Phi) * product of the three half-integrals.
inline double local_model_integral(const LocalModelSpec& spec, const HalfIntegrals& h) {
  const auto a = analyze_local_model(spec);
  const double sgn = a.det > 0 ? 1.0 : -1.0;
  return multiplicity(spec.kind) * sgn * h[a.psi[0]] * h[a.psi[1]] * h[a.psi[2]];
}

inline double local_model_integral(const LocalModelSpec& spec, const PoleVolumeForm& vol = PoleVolumeForm(),
                                   const quad::Options& opt = {}) {
  return local_model_integral(spec, compute_half_integrals(spec.bump, vol, opt));
}

/// Second route: integrates the pullback of vol x vol x vol under the
/// direction map itself, with its 6x6 Jacobian taken by finite differences
/// in gnomonic pole charts.  Phi only chooses the integration box.
inline double local_model_integral_direct(const LocalModelSpec& spec, const PoleVolumeForm& vol = PoleVolumeForm(),
                                          std::size_t panels = 1) {
  const auto model = build_local_model(spec);
  const auto a = analyze_local_model(spec);
  const auto inv = detail::invert6(a.phi);
  std::array<double, 3> half{};
  for (std::size_t k = 0; k < 3; ++k) half[k] = detail::psi_support(a.psi[k], spec.bump, vol);

  auto chart = [&](const Params& p, std::array<double, 6>& uv, std::array<double, 3>& weight) {
    for (std::size_t k = 0; k < 3; ++k) {
      const Vec3 d = model.direction(p, k);
      const double u = d.x / d.z, v = d.y / d.z;
      uv[2 * k] = u;
      uv[2 * k + 1] = v;
      // The south chart reverses the orientation of the sphere.
      const double orient = d.z > 0 ? 1.0 : -1.0;
      weight[k] = orient * vol.density(d) * std::pow(1.0 + u * u + v * v, -1.5);
    }
  };

  const auto& r = quad::rule();
  const std::size_t per_axis = panels * quad::kOrder;
  std::array<std::vector<double>, 6> nodes, weights;
  for (std::size_t ax = 0; ax < 6; ++ax) {
    const double s = half[ax / 2];
    const double h = 2.0 * s / static_cast<double>(panels);
    for (std::size_t pnl = 0; pnl < panels; ++pnl) {
      const double mid = -s + (static_cast<double>(pnl) + 0.5) * h;
      for (unsigned i = 0; i < quad::kOrder; ++i) {
        nodes[ax].push_back(mid + 0.5 * h * r.x[i]);
        weights[ax].push_back(0.5 * h * r.w[i]);
      }
    }
  }

  const double step = 1e-7;
  double total = 0.0;
  std::array<std::size_t, 6> idx{};
  for (idx[0] = 0; idx[0] < per_axis; ++idx[0]) {
    for (idx[1] = 0; idx[1] < per_axis; ++idx[1]) {
      for (idx[2] = 0; idx[2] < per_axis; ++idx[2]) {
        for (idx[3] = 0; idx[3] < per_axis; ++idx[3]) {
          for (idx[4] = 0; idx[4] < per_axis; ++idx[4]) {
            for (idx[5] = 0; idx[5] < per_axis; ++idx[5]) {
              std::array<double, 6> z{};
              double w = 1.0;
              for (std::size_t ax = 0; ax < 6; ++ax) {
                z[ax] = nodes[ax][idx[ax]];
                w *= weights[ax][idx[ax]];
              }
              Params p{};
              for (std::size_t i = 0; i < 6; ++i) {
                for (std::size_t j = 0; j < 6; ++j) p[i] += inv[i][j] * z[j];
              }
              std::array<double, 6> uv{};
              std::array<double, 3> dens{};
              chart(p, uv, dens);
              const double rho = dens[0] * dens[1] * dens[2];
              if (rho == 0.0) continue;
              std::array<std::array<double, 6>, 6> jac{};
              for (std::size_t j = 0; j < 6; ++j) {
                Params lo = p, hi = p;
                lo[j] -= step;
                hi[j] += step;
                std::array<double, 6> ulo{}, uhi{};
                std::array<double, 3> dummy{};
                chart(lo, ulo, dummy);
                chart(hi, uhi, dummy);
                for (std::size_t i = 0; i < 6; ++i) jac[i][j] = (uhi[i] - ulo[i]) / (2.0 * step);
              }
              // dp = |det Phi^{-1}| dz; |det Phi| = 1 for every kind.
              total += w * rho * detail::determinant6(jac) / std::abs(a.det);
            }
          }
        }
      }
    }
  }
  return multiplicity(spec.kind) * total;
}

/// Cocycle weights of the two graphs whose integrals survive.
inline constexpr double kWeightX1 = -2.0;
inline constexpr double kWeightX2 = 1.0;

inline std::array<std::array<Sign, 3>, 8> all_sign_triples() {
  std::array<std::array<Sign, 3>, 8> out{};
  for (std::size_t m = 0; m < 8; ++m) {
    for (std::size_t i = 0; i < 3; ++i) out[m][i] = (m >> i) & 1u ? -1 : +1;
  }
  return out;
}

/// Sum over the eight sign triples of eps1 eps2 eps3 times the integral.
inline double signed_sign_sum(LocalKind kind, const Bump& b, const HalfIntegrals& h) {
  double sum = 0.0;
  for (const auto& s : all_sign_triples()) {
    LocalModelSpec spec{kind, s, b};
    sum += spec.sign_product() * local_model_integral(spec, h);
  }
  return sum;
}

/// D^3 v by cycle type, assembled from the local models.
inline std::map<CycleType, double> d3v_from_local_models(const Bump& b = Bump::standard(),
                                                         const PoleVolumeForm& vol = PoleVolumeForm(),
                                                         const quad::Options& opt = {}) {
  const auto h = compute_half_integrals(b, vol, opt);
  std::map<CycleType, double> out;
  out[CycleType::type_i] = kWeightX1 * signed_sign_sum(LocalKind::one_a, b, h);
  out[CycleType::type_ii] =
      kWeightX1 * signed_sign_sum(LocalKind::one_b, b, h) + kWeightX2 * signed_sign_sum(LocalKind::two_a, b, h);
  out[CycleType::type_iii] = kWeightX2 * signed_sign_sum(LocalKind::two_b, b, h);
  out[CycleType::other] = 0.0;
  return out;
}

}  // namespace fhknot
