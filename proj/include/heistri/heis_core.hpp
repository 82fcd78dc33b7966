#ifndef HEISTRI__HEIS_CORE_HPP_
#define HEISTRI__HEIS_CORE_HPP_

/**
 * @file heis_core.hpp
 * @brief Heisenberg group H^n in exponential coordinates.
 *
 * Memory layout
 * =============
 * Point:   x1 ... xn  y1 ... yn  t      (2n+1 reals, w_1 ... w_{2n+1})
 * Algebra: X1 ... Xn  Y1 ... Yn  T      (same ordering)
 *
 * Group law
 * =========
 *
 *   (x,y,t) * (x',y',t') = (x+x', y+y', t+t' + 1/2 sum_j (x_j y'_j - y_j x'_j))
 *
 * exp and log act as the identity on coordinate tuples, so every piece of
 * group structure lives in mul(). For fixed q the left translation p -> q*p
 * is an affine map of R^{2n+1}.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heistri {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Point of H^n in exponential coordinates.
class HPoint
{
public:
  HPoint() = default;

  explicit HPoint(int n) : n_(n), w_(static_cast<std::size_t>(2 * n + 1), 0.0)
  {
    if (n < 1) { throw Error("group index must be positive"); }
  }

  HPoint(int n, std::vector<double> w) : n_(n), w_(std::move(w))
  {
    if (n < 1) { throw Error("group index must be positive"); }
    if (w_.size() != static_cast<std::size_t>(2 * n + 1)) {
      throw Error("point needs 2n+1 = " + std::to_string(2 * n + 1) + " coordinates, got "
                  + std::to_string(w_.size()));
    }
    for (double v : w_) {
      if (!std::isfinite(v)) { throw Error("point coordinates must be finite"); }
    }
  }

  static HPoint identity(int n) { return HPoint(n); }

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] std::size_t dim() const noexcept { return w_.size(); }
  [[nodiscard]] const std::vector<double> & w() const noexcept { return w_; }

  /// 0-based coordinate access over w_1..w_{2n+1}.
  [[nodiscard]] double operator[](std::size_t i) const { return w_[i]; }

  [[nodiscard]] double x(int j) const { return w_[static_cast<std::size_t>(j)]; }
  [[nodiscard]] double y(int j) const { return w_[static_cast<std::size_t>(n_ + j)]; }
  [[nodiscard]] double t() const { return w_.back(); }

  [[nodiscard]] double max_abs() const noexcept
  {
    double m = 0.0;
    for (double v : w_) { m = std::max(m, std::abs(v)); }
    return m;
  }

  friend bool operator==(const HPoint &, const HPoint &) = default;

private:
  int n_{0};
  std::vector<double> w_;
};

/// Element of the Lie algebra, coefficients over X_1..X_n, Y_1..Y_n, T.
struct LieVector
{
  int n{0};
  std::vector<double> coeffs;

  static LieVector zero(int n) { return {n, std::vector<double>(static_cast<std::size_t>(2 * n + 1), 0.0)}; }

  friend bool operator==(const LieVector &, const LieVector &) = default;
};

/// Tangent vector written in the coordinate basis d/dw_1 .. d/dw_{2n+1}.
struct TangentVector
{
  int n{0};
  std::vector<double> coords;
};

/// f(w) = constant + lin . w
struct AffineScalarField
{
  int n{0};
  double constant{0.0};
  std::vector<double> lin;

  static AffineScalarField zero(int n)
  {
    return {n, 0.0, std::vector<double>(static_cast<std::size_t>(2 * n + 1), 0.0)};
  }

  /// c - w_axis, axis 0-based
  static AffineScalarField level(int n, std::size_t axis, double c)
  {
    auto f = zero(n);
    f.constant = c;
    f.lin.at(axis) = -1.0;
    return f;
  }

  [[nodiscard]] double operator()(const HPoint & p) const
  {
    if (p.n() != n) { throw Error("group index mismatch"); }
    double v = constant;
    for (std::size_t i = 0; i < lin.size(); ++i) { v += lin[i] * p[i]; }
    return v;
  }

  friend bool operator==(const AffineScalarField &, const AffineScalarField &) = default;
};

namespace detail {

inline void require_same_n(int a, int b)
{
  if (a != b) { throw Error("group index mismatch"); }
}

/// w~_i of the frame W_i = d/dw_i - 1/2 w~_i d/dt, i 0-based in [0, 2n).
inline double w_tilde(const std::vector<double> & w, int n, int i)
{
  return i < n ? w[static_cast<std::size_t>(n + i)] : -w[static_cast<std::size_t>(i - n)];
}

}  // namespace detail

inline HPoint mul(const HPoint & p, const HPoint & q)
{
  detail::require_same_n(p.n(), q.n());
  const int n = p.n();
  std::vector<double> w(p.dim());
  double area = 0.0;
  for (int j = 0; j < n; ++j) { area += p.x(j) * q.y(j) - p.y(j) * q.x(j); }
  for (std::size_t i = 0; i + 1 < w.size(); ++i) { w[i] = p[i] + q[i]; }
  w.back() = p.t() + q.t() + 0.5 * area;
  return {n, std::move(w)};
}

inline HPoint inv(const HPoint & p)
{
  std::vector<double> w(p.dim());
  for (std::size_t i = 0; i < w.size(); ++i) { w[i] = p[i] == 0.0 ? 0.0 : -p[i]; }
  return {p.n(), std::move(w)};
}

/// Anisotropic dilation (x, y, t) -> (r x, r y, r^2 t).
inline HPoint dilate(double r, const HPoint & p)
{
  if (!(r > 0.0) || !std::isfinite(r)) { throw Error("dilation factor must be positive"); }
  std::vector<double> w = p.w();
  for (std::size_t i = 0; i + 1 < w.size(); ++i) { w[i] *= r; }
  w.back() *= r * r;
  return {p.n(), std::move(w)};
}

/// Left translation tau_q(p) = q * p.
inline HPoint translate(const HPoint & q, const HPoint & p) { return mul(q, p); }

inline double koranyi_norm(const HPoint & p)
{
  double h2 = 0.0;
  for (std::size_t i = 0; i + 1 < p.dim(); ++i) { h2 += p[i] * p[i]; }
  return std::pow(h2 * h2 + 16.0 * p.t() * p.t(), 0.25);
}

inline double koranyi_dist(const HPoint & p, const HPoint & q)
{
  detail::require_same_n(p.n(), q.n());
  return koranyi_norm(mul(inv(q), p));
}

inline HPoint exp_map(const LieVector & v) { return {v.n, v.coeffs}; }

inline LieVector log_map(const HPoint & p) { return {p.n(), p.w()}; }

/**
 * Coordinate expressions of X_1..X_n, Y_1..Y_n at p.
 *
 * X_j = d/dx_j - 1/2 y_j d/dt,  Y_j = d/dy_j + 1/2 x_j d/dt.
 */
inline std::vector<TangentVector> horizontal_frame(const HPoint & p)
{
  const int n = p.n();
  std::vector<TangentVector> frame;
  frame.reserve(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < 2 * n; ++i) {
    TangentVector v{n, std::vector<double>(p.dim(), 0.0)};
    v.coords[static_cast<std::size_t>(i)] = 1.0;
    v.coords.back() = -0.5 * detail::w_tilde(p.w(), n, i);
    frame.push_back(std::move(v));
  }
  return frame;
}

/// Horizontal gradient of an affine field: W_i f = lin_i - 1/2 w~_i lin_t. T-coefficient is zero.
inline LieVector grad_h_affine(const AffineScalarField & f, const HPoint & p)
{
  detail::require_same_n(f.n, p.n());
  const int n = p.n();
  auto g = LieVector::zero(n);
  const double lt = f.lin.back();
  for (int i = 0; i < 2 * n; ++i) {
    g.coeffs[static_cast<std::size_t>(i)] =
      f.lin[static_cast<std::size_t>(i)] - 0.5 * detail::w_tilde(p.w(), n, i) * lt;
  }
  return g;
}

/**
 * Vector field whose coordinate components are affine in w. The left-invariant
 * frame is of this form, which makes brackets on affine test functions exact.
 */
struct AffineVectorField
{
  int n{0};
  std::vector<AffineScalarField> components;

  /// W_i for i in [0, 2n), T for i == 2n.
  static AffineVectorField frame(int n, int i)
  {
    const auto d = static_cast<std::size_t>(2 * n + 1);
    AffineVectorField v{n, std::vector<AffineScalarField>(d, AffineScalarField::zero(n))};
    if (i == 2 * n) {
      v.components.back().constant = 1.0;
      return v;
    }
    v.components[static_cast<std::size_t>(i)].constant = 1.0;
    // -1/2 w~_i
    if (i < n) {
      v.components.back().lin[static_cast<std::size_t>(n + i)] = -0.5;
    } else {
      v.components.back().lin[static_cast<std::size_t>(i - n)] = 0.5;
    }
    return v;
  }

  /// Directional derivative V f, exact for affine f.
  [[nodiscard]] AffineScalarField apply(const AffineScalarField & f) const
  {
    detail::require_same_n(n, f.n);
    auto out = AffineScalarField::zero(n);
    for (std::size_t i = 0; i < components.size(); ++i) {
      out.constant += components[i].constant * f.lin[i];
      for (std::size_t m = 0; m < out.lin.size(); ++m) { out.lin[m] += components[i].lin[m] * f.lin[i]; }
    }
    return out;
  }
};

/// [U, V] f = U(V f) - V(U f), exact on affine f.
inline AffineScalarField bracket_apply(
  const AffineVectorField & u, const AffineVectorField & v, const AffineScalarField & f)
{
  auto a = u.apply(v.apply(f));
  const auto b = v.apply(u.apply(f));
  a.constant -= b.constant;
  for (std::size_t m = 0; m < a.lin.size(); ++m) { a.lin[m] -= b.lin[m]; }
  return a;
}

/**
 * True iff delta_r(p) = q for some r > 0, compared with relative tolerance
 * tol * max(|p|_inf, |q|_inf).
 */
inline bool on_same_orbit(const HPoint & p, const HPoint & q, double tol)
{
  detail::require_same_n(p.n(), q.n());
  const double scale = std::max(p.max_abs(), q.max_abs());
  if (scale == 0.0) { return true; }
  const double bound = tol * scale;

  double r = 0.0;
  std::size_t best = 0;
  double best_abs = 0.0;
  for (std::size_t i = 0; i + 1 < p.dim(); ++i) {
    if (std::abs(p[i]) > best_abs) {
      best_abs = std::abs(p[i]);
      best = i;
    }
  }
  if (best_abs > 0.0) {
    r = q[best] / p[best];
  } else if (p.t() != 0.0) {
    const double ratio = q.t() / p.t();
    if (ratio <= 0.0) { return false; }
    r = std::sqrt(ratio);
  } else {
    return false;  // p is the origin, q is not
  }
  if (!(r > 0.0) || !std::isfinite(r)) { return false; }

  const HPoint d = dilate(r, p);
  for (std::size_t i = 0; i < d.dim(); ++i) {
    if (std::abs(d[i] - q[i]) > bound) { return false; }
  }
  return true;
}

}  // namespace heistri

#endif  // HEISTRI__HEIS_CORE_HPP_
