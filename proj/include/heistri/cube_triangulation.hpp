#ifndef HEISTRI__CUBE_TRIANGULATION_HPP_
#define HEISTRI__CUBE_TRIANGULATION_HPP_

/**
 * @file cube_triangulation.hpp
 * @brief Freudenthal triangulation of combinatorial cubes and lattice regions.
 *
 * An increasing map is a maximal chain 0...0 < ... < 1...1 in {0,1}^k; it is
 * determined by the order in which coordinates are switched on, so the k!
 * maps are listed in lexicographic order of that permutation. Each map gives
 * the simplex on the corners it visits, signed by det[s(i) - s(0)].
 */

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <future>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "grid_regularity.hpp"
#include "heis_core.hpp"
#include "horizontal_builder.hpp"
#include "simplex_chain.hpp"

namespace heistri {

using BitString = std::vector<int>;

struct IncreasingMap
{
  int k{0};
  std::vector<BitString> seq;

  friend bool operator==(const IncreasingMap &, const IncreasingMap &) = default;
};

/// All maximal chains of {0,1}^k; k == 0 gives the single trivial map.
inline std::vector<IncreasingMap> increasing_maps(int k)
{
  if (k < 0) { throw Error("cube dimension must be nonnegative"); }
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::vector<IncreasingMap> out;
  do {
    IncreasingMap m{k, {BitString(static_cast<std::size_t>(k), 0)}};
    for (int axis : order) {
      BitString next = m.seq.back();
      next[static_cast<std::size_t>(axis)] = 1;
      m.seq.push_back(std::move(next));
    }
    out.push_back(std::move(m));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

/// Exact integer determinant (Bareiss).
inline std::int64_t integer_determinant(std::vector<std::vector<std::int64_t>> a)
{
  const std::size_t m = a.size();
  if (m == 0) { return 1; }
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (std::size_t p = 0; p + 1 < m; ++p) {
    if (a[p][p] == 0) {
      std::size_t r = p + 1;
      while (r < m && a[r][p] == 0) { ++r; }
      if (r == m) { return 0; }
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    for (std::size_t i = p + 1; i < m; ++i) {
      for (std::size_t j = p + 1; j < m; ++j) { a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev; }
    }
    prev = a[p][p];
  }
  return sign * a[m - 1][m - 1];
}

/// sign det of the rows s(i) - s(0), i = 1..k.
inline int orientation_sign(const IncreasingMap & s)
{
  std::vector<std::vector<std::int64_t>> rows;
  for (int i = 1; i <= s.k; ++i) {
    std::vector<std::int64_t> r;
    for (int c = 0; c < s.k; ++c) {
      r.push_back(s.seq[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]
                  - s.seq[0][static_cast<std::size_t>(c)]);
    }
    rows.push_back(std::move(r));
  }
  const auto det = integer_determinant(std::move(rows));
  if (det == 0) { throw Error("increasing map is not a maximal chain"); }
  return det > 0 ? 1 : -1;
}

/// Corner of a combinatorial k-cube for every bit string in {0,1}^k.
struct CornerAssignment
{
  int k{0};
  int n{1};
  std::map<BitString, HPoint> corners;

  [[nodiscard]] const HPoint & at(const BitString & b) const
  {
    auto it = corners.find(b);
    if (it == corners.end()) { throw Error("corner assignment is incomplete"); }
    return it->second;
  }
};

/**
 * Corners eps * (base + sum_i b_i e_{axes[i]}) of a k-dimensional lattice face
 * spanned by the listed (0-based) coordinate axes. Integer sums are formed
 * before scaling so neighbouring cubes produce bit-identical shared corners.
 */
inline CornerAssignment lattice_corners(
  int n, double eps, const std::vector<std::int64_t> & base, const std::vector<std::size_t> & axes)
{
  const auto d = static_cast<std::size_t>(2 * n + 1);
  if (base.size() != d) { throw Error("lattice base needs 2n+1 integers"); }
  CornerAssignment ca{static_cast<int>(axes.size()), n, {}};
  const std::size_t count = std::size_t{1} << axes.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    BitString b(axes.size());
    std::vector<std::int64_t> lattice = base;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      b[i] = static_cast<int>((mask >> i) & 1U);
      lattice.at(axes[i]) += b[i];
    }
    std::vector<double> w(d);
    for (std::size_t c = 0; c < d; ++c) { w[c] = eps * static_cast<double>(lattice[c]); }
    ca.corners.emplace(std::move(b), HPoint(n, std::move(w)));
  }
  return ca;
}

inline CornerAssignment grid_corners(const Cube & c)
{
  std::vector<std::size_t> axes(c.dim());
  std::iota(axes.begin(), axes.end(), std::size_t{0});
  return lattice_corners(c.n, c.eps, c.base, axes);
}

struct TriangulationChain
{
  Chain chain;
  std::string provenance;
  Builder builder{Builder::Straight};
};

inline SimplexDescriptor simplex_for(const IncreasingMap & s, const CornerAssignment & corners, Builder builder)
{
  std::vector<HPoint> vs;
  for (const auto & b : s.seq) { vs.push_back(corners.at(b)); }
  return {builder, corners.n, std::move(vs)};
}

/// tau = sum_s (-1)^s sigma_s over all increasing maps.
inline TriangulationChain triangulate_cube(const CornerAssignment & corners, Builder builder)
{
  if (builder == Builder::HorizontalPath) { throw Error("cube triangulation needs affine, straight or hybrid"); }
  if (corners.corners.size() != (std::size_t{1} << corners.k)) { throw Error("corner assignment is incomplete"); }
  if (builder == Builder::Hybrid && corners.k > 2 * corners.n + 1) { throw Error("dimension exceeds 2n+1"); }
  TriangulationChain t{Chain(corners.k, corners.n), "cube k=" + std::to_string(corners.k), builder};
  for (const auto & s : increasing_maps(corners.k)) {
    t.chain.add_term(simplex_for(s, corners, builder), orientation_sign(s));
  }
  return t;
}

inline Chain boundary_of_triangulation(const TriangulationChain & t) { return boundary(t.chain); }

/// Reads HEISTRI_THREADS; defaults to 1.
inline unsigned thread_cap_from_env()
{
  if (const char * v = std::getenv("HEISTRI_THREADS")) {
    const long parsed = std::strtol(v, nullptr, 10);
    if (parsed >= 1) { return static_cast<unsigned>(parsed); }
  }
  return 1;
}

/// Sum of the cube triangulations over grid_cover(n, eps, lo, hi).
inline TriangulationChain triangulate_region(
  int n, double eps, const std::vector<std::int64_t> & lo, const std::vector<std::int64_t> & hi,
  Builder builder, unsigned threads = 1)
{
  const auto cubes = grid_cover(n, eps, lo, hi);
  const int k = 2 * n + 1;
  TriangulationChain out{Chain(k, n), "region of " + std::to_string(cubes.size()) + " cubes", builder};
  if (builder == Builder::HorizontalPath) { throw Error("region triangulation needs affine, straight or hybrid"); }

  auto work = [&](std::size_t from, std::size_t to) {
    Chain part(k, n);
    for (std::size_t c = from; c < to; ++c) {
      part = chain_add(part, triangulate_cube(grid_corners(cubes[c]), builder).chain);
    }
    return part;
  };

  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, cubes.size()))));
  if (threads == 1) {
    out.chain = work(0, cubes.size());
    return out;
  }
  std::vector<std::future<Chain>> parts;
  const std::size_t per = (cubes.size() + threads - 1) / threads;
  for (std::size_t from = 0; from < cubes.size(); from += per) {
    parts.push_back(std::async(std::launch::async, work, from, std::min(cubes.size(), from + per)));
  }
  for (auto & f : parts) { out.chain = chain_add(out.chain, f.get()); }
  return out;
}

}  // namespace heistri

#endif  // HEISTRI__CUBE_TRIANGULATION_HPP_
