#ifndef HEISTRI__GRID_REGULARITY_HPP_
#define HEISTRI__GRID_REGULARITY_HPP_

/**
 * @file grid_regularity.hpp
 * @brief Lattice cubes Q_{eps p, eps}, their faces and subfaces, and
 * H-regularity classification of those faces.
 *
 * A face fixes one coordinate w_j to eps p_j (LOW) or eps + eps p_j (HIGH) and
 * is the zero set of the affine function c - w_j. A subface fixes two. The
 * classifier computes the horizontal gradient (face) or the wedge of the two
 * horizontal gradients (subface) as affine functions of w, solves for the
 * set where they vanish, and intersects that set with the (sub)face box.
 *
 * Axes are 0-based in code; JSON and reason strings use 1-based names (F_1, E_3).
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heis_core.hpp"

namespace heistri {

enum class Side { Low, High };

struct Cube
{
  int n{1};
  std::vector<std::int64_t> base;
  double eps{1.0};

  Cube() = default;

  Cube(int n_, std::vector<std::int64_t> base_, double eps_) : n(n_), base(std::move(base_)), eps(eps_)
  {
    if (n < 1) { throw Error("group index must be positive"); }
    if (base.size() != static_cast<std::size_t>(2 * n + 1)) { throw Error("cube base needs 2n+1 integers"); }
    if (!(eps > 0.0) || !std::isfinite(eps)) { throw Error("eps must be positive"); }
  }

  [[nodiscard]] std::size_t dim() const { return base.size(); }
  [[nodiscard]] double lo(std::size_t i) const { return eps * static_cast<double>(base[i]); }
  [[nodiscard]] double hi(std::size_t i) const { return eps * static_cast<double>(base[i] + 1); }

  [[nodiscard]] bool contains(const HPoint & p, double tol = 0.0) const
  {
    for (std::size_t i = 0; i < dim(); ++i) {
      if (p[i] < lo(i) - tol || p[i] > hi(i) + tol) { return false; }
    }
    return true;
  }

  [[nodiscard]] bool interior_contains(const HPoint & p, double tol = 0.0) const
  {
    for (std::size_t i = 0; i < dim(); ++i) {
      if (p[i] <= lo(i) + tol || p[i] >= hi(i) - tol) { return false; }
    }
    return true;
  }

  friend bool operator==(const Cube &, const Cube &) = default;
};

struct Face
{
  Cube cube;
  std::size_t axis{0};
  Side side{Side::Low};

  [[nodiscard]] double level() const { return side == Side::Low ? cube.lo(axis) : cube.hi(axis); }

  /// f_j = eps p_j - w_j or g_j = eps + eps p_j - w_j
  [[nodiscard]] AffineScalarField defining_function() const
  {
    return AffineScalarField::level(cube.n, axis, level());
  }

  [[nodiscard]] std::string name() const
  {
    return std::string(side == Side::Low ? "F_" : "E_") + std::to_string(axis + 1);
  }
};

struct Subface
{
  Cube cube;
  std::pair<std::size_t, std::size_t> axes{0, 1};
  std::pair<Side, Side> sides{Side::Low, Side::Low};

  [[nodiscard]] Face first() const { return {cube, axes.first, sides.first}; }
  [[nodiscard]] Face second() const { return {cube, axes.second, sides.second}; }

  /// F_{k,F_j} style name: second axis first, as in the face-of-face notation.
  [[nodiscard]] std::string name() const
  {
    return second().name() + "," + first().name();
  }
};

enum class Classification { FullSurface, InteriorOnly };

inline const char * to_string(Classification c)
{
  return c == Classification::FullSurface ? "FULL_SURFACE" : "INTERIOR_ONLY";
}

struct RegularityReport
{
  Classification classification{Classification::FullSurface};
  int codimension{1};
  std::string reason;
  std::vector<HPoint> witnesses;
};

/// Sparse bivector over W_a ^ W_b, a < b, with coefficients affine in w.
using Bivector = std::map<std::pair<int, int>, AffineScalarField>;

// -------------------------------------------------------------------------
// grid
// -------------------------------------------------------------------------

/// Cubes with base in the integer box [lo, hi), last coordinate varying fastest.
inline std::vector<Cube> grid_cover(
  int n, double eps, const std::vector<std::int64_t> & lo, const std::vector<std::int64_t> & hi)
{
  const auto d = static_cast<std::size_t>(2 * n + 1);
  if (n < 1) { throw Error("group index must be positive"); }
  if (lo.size() != d || hi.size() != d) { throw Error("box corners need 2n+1 integers"); }
  for (std::size_t i = 0; i < d; ++i) {
    if (lo[i] > hi[i]) { throw Error("box requires lo <= hi componentwise"); }
  }
  std::vector<Cube> cubes;
  for (std::size_t i = 0; i < d; ++i) {
    if (lo[i] == hi[i]) { return cubes; }
  }
  std::vector<std::int64_t> cur = lo;
  while (true) {
    cubes.emplace_back(n, cur, eps);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (++cur[i] < hi[i]) { break; }
      cur[i] = lo[i];
      if (i == 0) { return cubes; }
    }
  }
}

/// F_1, E_1, F_2, E_2, ..., 2(2n+1) faces.
inline std::vector<Face> faces(const Cube & c)
{
  std::vector<Face> out;
  out.reserve(2 * c.dim());
  for (std::size_t j = 0; j < c.dim(); ++j) {
    out.push_back({c, j, Side::Low});
    out.push_back({c, j, Side::High});
  }
  return out;
}

/// The 4n subfaces making up the boundary of a face.
inline std::vector<Subface> subfaces(const Face & f)
{
  std::vector<Subface> out;
  for (std::size_t k = 0; k < f.cube.dim(); ++k) {
    if (k == f.axis) { continue; }
    out.push_back({f.cube, {f.axis, k}, {f.side, Side::Low}});
    out.push_back({f.cube, {f.axis, k}, {f.side, Side::High}});
  }
  return out;
}

// -------------------------------------------------------------------------
// regularity
// -------------------------------------------------------------------------

namespace detail {

/// Components W_i f, i in [0, 2n), as affine functions of w.
inline std::vector<AffineScalarField> horizontal_gradient_field(const AffineScalarField & f)
{
  const int n = f.n;
  const double lt = f.lin.back();
  std::vector<AffineScalarField> g;
  for (int i = 0; i < 2 * n; ++i) {
    auto c = AffineScalarField::zero(n);
    c.constant = f.lin[static_cast<std::size_t>(i)];
    if (i < n) {
      c.lin[static_cast<std::size_t>(n + i)] = -0.5 * lt;
    } else {
      c.lin[static_cast<std::size_t>(i - n)] = 0.5 * lt;
    }
    g.push_back(std::move(c));
  }
  return g;
}

inline bool is_constant(const AffineScalarField & f)
{
  return std::all_of(f.lin.begin(), f.lin.end(), [](double v) { return v == 0.0; });
}

inline AffineScalarField scaled(const AffineScalarField & f, double s)
{
  auto out = f;
  out.constant *= s;
  for (auto & v : out.lin) { v *= s; }
  return out;
}

inline AffineScalarField sum(const AffineScalarField & a, const AffineScalarField & b)
{
  auto out = a;
  out.constant += b.constant;
  for (std::size_t i = 0; i < out.lin.size(); ++i) { out.lin[i] += b.lin[i]; }
  return out;
}

/// Product of two affine fields, at least one of which must be constant.
inline AffineScalarField product(const AffineScalarField & a, const AffineScalarField & b)
{
  if (is_constant(a)) {
    auto out = scaled(b, a.constant);
    return out;
  }
  if (is_constant(b)) { return scaled(a, b.constant); }
  throw Error("wedge coefficient is not affine");
}

/// Axis-aligned box with some coordinates pinned.
struct Box
{
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Zero set of a family of single-variable affine functions: pinned coordinate values, or nullopt if empty.
inline std::optional<std::map<std::size_t, double>> solve_zero_set(const std::vector<AffineScalarField> & fs)
{
  std::map<std::size_t, double> pinned;
  for (const auto & f : fs) {
    std::optional<std::size_t> var;
    for (std::size_t i = 0; i < f.lin.size(); ++i) {
      if (f.lin[i] == 0.0) { continue; }
      if (var) { throw Error("multi-variable coefficient in vanishing-set solve"); }
      var = i;
    }
    if (!var) {
      if (f.constant != 0.0) { return std::nullopt; }
      continue;
    }
    const double v = -f.constant / f.lin[*var];
    auto [it, inserted] = pinned.emplace(*var, v);
    if (!inserted && it->second != v) { return std::nullopt; }
  }
  return pinned;
}

inline std::vector<HPoint> box_corners_of_pinned(int n, const Box & box, const std::map<std::size_t, double> & pinned)
{
  std::vector<std::vector<double>> pts{{}};
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    std::vector<double> choices;
    if (auto it = pinned.find(i); it != pinned.end()) {
      choices = {it->second};
    } else if (box.lo[i] == box.hi[i]) {
      choices = {box.lo[i]};
    } else {
      choices = {box.lo[i], box.hi[i]};
    }
    std::vector<std::vector<double>> next;
    for (const auto & p : pts) {
      for (double c : choices) {
        auto q = p;
        q.push_back(c == 0.0 ? 0.0 : c);
        next.push_back(std::move(q));
      }
    }
    pts = std::move(next);
  }
  std::vector<HPoint> out;
  for (auto & p : pts) { out.emplace_back(n, std::move(p)); }
  return out;
}

/**
 * Classify a level set given the functions that must all vanish for
 * regularity to fail, restricted to the box of the (sub)face.
 */
inline RegularityReport classify(
  int n, int codim, const Box & box, const std::vector<AffineScalarField> & degeneracy,
  std::string full_reason, std::string interior_reason)
{
  RegularityReport rep;
  rep.codimension = codim;
  const auto pinned = solve_zero_set(degeneracy);
  bool meets = pinned.has_value();
  bool meets_interior = meets;
  if (meets) {
    for (const auto & [i, v] : *pinned) {
      if (v < box.lo[i] || v > box.hi[i]) {
        meets = false;
        break;
      }
      if (box.lo[i] != box.hi[i] && !(v > box.lo[i] && v < box.hi[i])) { meets_interior = false; }
    }
  }
  if (!meets) {
    rep.classification = Classification::FullSurface;
    rep.reason = std::move(full_reason);
    return rep;
  }
  if (meets_interior) { throw Error("degenerate set meets the relative interior; not a lattice cube?"); }
  rep.classification = Classification::InteriorOnly;
  rep.reason = std::move(interior_reason);
  rep.witnesses = box_corners_of_pinned(n, box, *pinned);
  return rep;
}

inline Box face_box(const Cube & c, std::initializer_list<std::pair<std::size_t, double>> fixed)
{
  Box b;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    b.lo.push_back(c.lo(i));
    b.hi.push_back(c.hi(i));
  }
  for (const auto & [axis, v] : fixed) {
    b.lo[axis] = v;
    b.hi[axis] = v;
  }
  return b;
}

}  // namespace detail

/// grad_H a ^ grad_H b, both gradients as affine fields of w.
inline Bivector wedge_horizontal_gradients(const AffineScalarField & a, const AffineScalarField & b)
{
  const auto ga = detail::horizontal_gradient_field(a);
  const auto gb = detail::horizontal_gradient_field(b);
  Bivector out;
  for (std::size_t l = 0; l < ga.size(); ++l) {
    for (std::size_t m = l + 1; m < ga.size(); ++m) {
      auto c = detail::sum(detail::product(ga[l], gb[m]), detail::scaled(detail::product(ga[m], gb[l]), -1.0));
      if (detail::is_constant(c) && c.constant == 0.0) { continue; }
      out.emplace(std::make_pair(static_cast<int>(l), static_cast<int>(m)), std::move(c));
    }
  }
  return out;
}

inline RegularityReport face_regularity(const Face & f)
{
  const auto g = detail::horizontal_gradient_field(f.defining_function());
  const auto box = detail::face_box(f.cube, {{f.axis, f.level()}});
  const std::string j = std::to_string(f.axis + 1);
  const bool vertical = f.axis + 1 == f.cube.dim();
  std::string full = vertical ? "horizontal gradient 1/2 w~ vanishes only on the t-axis, which misses the face"
                              : "W_" + j + " f_" + j + " = -1 everywhere";
  return detail::classify(
    f.cube.n, 1, box, g, std::move(full),
    "horizontal gradient vanishes where the t-axis meets the face boundary");
}

inline RegularityReport subface_regularity(const Subface & s)
{
  if (s.cube.n == 1) { throw Error("no 2-codimensional statement for n=1"); }
  if (s.axes.first == s.axes.second) { throw Error("subface axes must differ"); }
  const Face a = s.first();
  const Face b = s.second();
  const auto w = wedge_horizontal_gradients(a.defining_function(), b.defining_function());
  std::vector<AffineScalarField> coeffs;
  for (const auto & [key, c] : w) { coeffs.push_back(c); }
  if (coeffs.empty()) { coeffs.push_back(AffineScalarField::zero(s.cube.n)); }  // identically zero wedge
  const auto box = detail::face_box(s.cube, {{a.axis, a.level()}, {b.axis, b.level()}});
  const auto top = s.cube.dim() - 1;
  const bool vertical = a.axis == top || b.axis == top;
  std::string full = vertical ? "wedge of horizontal gradients does not vanish on the subface"
                              : "wedge W_" + std::to_string(a.axis + 1) + " ^ W_" + std::to_string(b.axis + 1)
                                  + " is constant and nonzero";
  return detail::classify(
    s.cube.n, 2, box, coeffs, std::move(full),
    "wedge of horizontal gradients vanishes on the subface boundary");
}

}  // namespace heistri

#endif  // HEISTRI__GRID_REGULARITY_HPP_
