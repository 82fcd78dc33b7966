#ifndef HEISTRI__HORIZONTAL_BUILDER_HPP_
#define HEISTRI__HORIZONTAL_BUILDER_HPP_

/**
 * @file horizontal_builder.hpp
 * @brief Horizontal piecewise-linear paths and the hybrid simplex builder.
 *
 * A segment a -> b is horizontal iff
 *
 *   t_b - t_a = 1/2 sum_j (x_{a,j} (y_{b,j} - y_{a,j}) - y_{a,j} (x_{b,j} - x_{a,j}))
 *
 * which is the horizontality ODE integrated along the segment.
 *
 * Hybrid simplexes: 0- and 1-dimensional faces are points and horizontal
 * paths; every higher face is built by coning its own faces to the
 * exponential center of gravity of its vertices and gluing the cones over the
 * barycentric subdivision of the domain. Horizontal layers stop at dimension
 * one for every n.
 */

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "heis_core.hpp"
#include "simplex_chain.hpp"

namespace heistri {

struct HSegmentCheck
{
  HPoint a;
  HPoint b;
  double residual{0.0};
  bool horizontal{true};
};

inline double horizontal_residual(const HPoint & a, const HPoint & b)
{
  detail::require_same_n(a.n(), b.n());
  double area = 0.0;
  for (int j = 0; j < a.n(); ++j) {
    area += a.x(j) * (b.y(j) - a.y(j)) - a.y(j) * (b.x(j) - a.x(j));
  }
  return (b.t() - a.t()) - 0.5 * area;
}

/// Horizontal iff |residual| <= tol * (1 + max coordinate magnitude).
inline HSegmentCheck segment_is_horizontal(const HPoint & a, const HPoint & b, double tol = 1e-12)
{
  const double r = horizontal_residual(a, b);
  const double scale = 1.0 + std::max(a.max_abs(), b.max_abs());
  return {a, b, r, std::abs(r) <= tol * scale};
}

namespace detail {

inline PLMap path_through(Builder tag, const HPoint & p, const HPoint & q, const std::vector<HPoint> & pts)
{
  PLMap m{1, p.n(), {}, SimplexDescriptor(tag, p.n(), {p, q}), false};
  const std::size_t segs = pts.size() - 1;
  for (std::size_t c = 0; c < segs; ++c) {
    const double a = static_cast<double>(c) / static_cast<double>(segs);
    const double b = static_cast<double>(c + 1) / static_cast<double>(segs);
    m.cells.emplace_back(std::vector<std::vector<double>>{{1.0 - a, a}, {1.0 - b, b}}, std::vector<HPoint>{pts[c], pts[c + 1]});
  }
  return m;
}

}  // namespace detail

/**
 * Horizontal PL path from p to q: in the frame translated so that p is the
 * origin, a ray to (dx, dy, 0) followed by a square loop in the (x_1, y_1)
 * plane with side sqrt|dt| enclosing signed area dt. Domain cells split
 * Delta^1 uniformly.
 */
inline PLMap horizontal_path(const HPoint & p, const HPoint & q, Builder tag = Builder::HorizontalPath)
{
  detail::require_same_n(p.n(), q.n());
  const int n = p.n();
  const HPoint w = mul(inv(p), q);

  // defects at the rounding level of the group law count as zero; the endpoint snap absorbs them
  const double scale = 1.0 + std::max(p.max_abs(), q.max_abs());
  const double eps = 16.0 * std::numeric_limits<double>::epsilon();
  std::vector<HPoint> local{HPoint::identity(n)};
  bool planar_move = false;
  for (std::size_t i = 0; i + 1 < w.dim(); ++i) { planar_move = planar_move || std::abs(w[i]) > eps * scale; }
  if (planar_move) {
    auto v = w.w();
    v.back() = 0.0;
    local.emplace_back(n, std::move(v));
  }
  if (std::abs(w.t()) > eps * scale * scale) {
    const double side = std::sqrt(std::abs(w.t()));
    const auto xi = std::size_t{0};
    const auto yi = static_cast<std::size_t>(n);
    // counter-clockwise for positive area
    const std::size_t first = w.t() > 0.0 ? xi : yi;
    const std::size_t second = w.t() > 0.0 ? yi : xi;
    const std::pair<std::size_t, double> moves[4] = {{first, side}, {second, side}, {first, -side}, {second, -side}};
    for (const auto & [axis, delta] : moves) {
      const HPoint & a = local.back();
      auto v = a.w();
      v[axis] += delta;
      const HPoint b_flat(n, v);
      v.back() = a.t() + 0.5 * [&] {
        double area = 0.0;
        for (int j = 0; j < n; ++j) { area += a.x(j) * (b_flat.y(j) - a.y(j)) - a.y(j) * (b_flat.x(j) - a.x(j)); }
        return area;
      }();
      local.emplace_back(n, std::move(v));
    }
  }
  if (local.size() == 1) { local.push_back(local.front()); }

  std::vector<HPoint> pts;
  pts.reserve(local.size());
  for (const auto & l : local) { pts.push_back(translate(p, l)); }
  pts.front() = p;
  pts.back() = q;
  return detail::path_through(tag, p, q, pts);
}

/// exp(1/m sum log p_i): the coordinate average.
inline HPoint exp_center_of_gravity(const std::vector<HPoint> & points)
{
  if (points.empty()) { throw Error("center of gravity of an empty set"); }
  detail::require_common_n(points);
  auto acc = LieVector::zero(points.front().n());
  for (const auto & p : points) {
    const LieVector l = log_map(p);
    for (std::size_t i = 0; i < acc.coeffs.size(); ++i) { acc.coeffs[i] += l.coeffs[i]; }
  }
  for (auto & c : acc.coeffs) { c /= static_cast<double>(points.size()); }
  return exp_map(acc);
}

namespace detail {

/// Apply the affine domain map e_m -> images[m] to every cell domain point.
inline std::vector<std::vector<double>> map_domain(
  const std::vector<std::vector<double>> & dom, const std::vector<std::vector<double>> & vertex_images)
{
  std::vector<std::vector<double>> out;
  out.reserve(dom.size());
  const std::size_t d = vertex_images.front().size();
  for (const auto & s : dom) {
    std::vector<double> r(d, 0.0);
    for (std::size_t m = 0; m < s.size(); ++m) {
      if (s[m] == 0.0) { continue; }
      for (std::size_t c = 0; c < d; ++c) { r[c] += s[m] * vertex_images[m][c]; }
    }
    out.push_back(std::move(r));
  }
  return out;
}

class HybridBuilder
{
public:
  explicit HybridBuilder(const std::vector<HPoint> & vertices) : vertices_(vertices) {}

  PLMap build(std::uint64_t mask)
  {
    if (auto it = memo_.find(mask); it != memo_.end()) { return it->second; }
    std::vector<HPoint> vs;
    std::vector<std::uint64_t> bits;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        vs.push_back(vertices_[i]);
        bits.push_back(std::uint64_t{1} << i);
      }
    }
    const int k = static_cast<int>(vs.size()) - 1;
    PLMap result;
    if (k == 0) {
      result = point_map(Builder::Hybrid, vs.front());
    } else if (k == 1) {
      result = horizontal_path(vs[0], vs[1], Builder::Hybrid);
    } else {
      const HPoint apex = exp_center_of_gravity(vs);
      result = PLMap{k, vs.front().n(), {}, SimplexDescriptor(Builder::Hybrid, vs.front().n(), vs), false};
      const std::vector<double> bary = Barycentric::center(k).s;
      for (int i = 0; i <= k; ++i) {
        const PLMap face = build(mask & ~bits[static_cast<std::size_t>(i)]);
        const PLMap cone = cone_to_apex(face, apex);
        // Delta^k -> i-th region of the barycentric subdivision: e_m -> F^i(e_m), e_k -> barycenter
        std::vector<std::vector<double>> corner_images;
        const FaceMap fi = face_map(k, i);
        for (int m = 0; m < k; ++m) { corner_images.push_back(fi(Barycentric::vertex(k - 1, m).s)); }
        corner_images.push_back(bary);
        for (const auto & cell : cone.cells) {
          result.cells.emplace_back(map_domain(cell.domain(), corner_images), cell.images());
        }
      }
    }
    memo_.emplace(mask, result);
    return result;
  }

private:
  std::vector<HPoint> vertices_;
  std::map<std::uint64_t, PLMap> memo_;
};

}  // namespace detail

/// sigma^h_{p_0..p_k}, defined for 0 <= k <= 2n+1.
inline PLMap hybrid_simplex(const std::vector<HPoint> & vertices, int n)
{
  detail::require_common_n(vertices);
  detail::require_same_n(vertices.front().n(), n);
  const int k = static_cast<int>(vertices.size()) - 1;
  if (k > 2 * n + 1) { throw Error("dimension exceeds 2n+1"); }
  detail::HybridBuilder b(vertices);
  return b.build((std::uint64_t{1} << vertices.size()) - 1);
}

/// Rebuild the map a descriptor names.
inline PLMap build_simplex(const SimplexDescriptor & d)
{
  switch (d.builder) {
    case Builder::Affine: return affine_simplex(d.vertices);
    case Builder::Straight: return straight_simplex(d.vertices);
    case Builder::HorizontalPath:
      if (d.k() == 0) { return point_map(Builder::HorizontalPath, d.vertices.front()); }
      if (d.k() != 1) { throw Error("horizontal_path descriptors have one or two vertices"); }
      return horizontal_path(d.vertices[0], d.vertices[1]);
    case Builder::Hybrid: return hybrid_simplex(d.vertices, d.n);
  }
  throw Error("unknown builder");
}

}  // namespace heistri

#endif  // HEISTRI__HORIZONTAL_BUILDER_HPP_
