#ifndef HEISTRI__SIMPLEX_CHAIN_HPP_
#define HEISTRI__SIMPLEX_CHAIN_HPP_

/**
 * @file simplex_chain.hpp
 * @brief Standard simplexes, face maps, piecewise-affine singular simplexes,
 * the straight cone construction and integer chains.
 *
 * Domain points live in barycentric coordinates on Delta^k in R^{k+1}. A PLMap
 * is a list of cells; each cell is an affinely independent (k+1)-tuple of
 * domain points together with their images, and the map is the barycentric
 * interpolation inside each cell. Since exp, log and every left translation
 * are affine in exponential coordinates, composing a PLMap with them maps
 * cell images vertex by vertex and stays exact up to rounding.
 *
 * Chains never hold geometry: a term is a SimplexDescriptor (builder tag plus
 * ordered vertex list), which is enough to rebuild the map and to cancel
 * identical faces exactly.
 */

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "heis_core.hpp"

namespace heistri {

inline constexpr double kBarycentricTol = 1e-12;

enum class Builder { Affine, Straight, HorizontalPath, Hybrid };

inline const char * to_string(Builder b)
{
  switch (b) {
    case Builder::Affine: return "affine";
    case Builder::Straight: return "straight";
    case Builder::HorizontalPath: return "horizontal_path";
    case Builder::Hybrid: return "hybrid";
  }
  return "?";
}

inline Builder builder_from_string(const std::string & s)
{
  if (s == "affine") { return Builder::Affine; }
  if (s == "straight") { return Builder::Straight; }
  if (s == "horizontal_path") { return Builder::HorizontalPath; }
  if (s == "hybrid") { return Builder::Hybrid; }
  throw Error("unknown builder '" + s + "'");
}

/// Point of Delta^k, s_0 .. s_k.
struct Barycentric
{
  std::vector<double> s;

  Barycentric() = default;
  explicit Barycentric(std::vector<double> s_) : s(std::move(s_)) {}

  [[nodiscard]] int k() const { return static_cast<int>(s.size()) - 1; }

  [[nodiscard]] bool valid(double tol = kBarycentricTol) const
  {
    if (s.empty()) { return false; }
    double sum = 0.0;
    for (double v : s) {
      if (!std::isfinite(v) || v < -tol) { return false; }
      sum += v;
    }
    return std::abs(sum - 1.0) <= tol;
  }

  static Barycentric vertex(int k, int i)
  {
    std::vector<double> s(static_cast<std::size_t>(k + 1), 0.0);
    s.at(static_cast<std::size_t>(i)) = 1.0;
    return Barycentric(std::move(s));
  }

  static Barycentric center(int k)
  {
    return Barycentric(std::vector<double>(static_cast<std::size_t>(k + 1), 1.0 / (k + 1)));
  }
};

// -------------------------------------------------------------------------
// descriptors
// -------------------------------------------------------------------------

struct SimplexDescriptor
{
  Builder builder{Builder::Affine};
  int n{1};
  std::vector<HPoint> vertices;

  SimplexDescriptor() = default;

  SimplexDescriptor(Builder b, int n_, std::vector<HPoint> vs) : builder(b), n(n_), vertices(std::move(vs))
  {
    if (vertices.empty()) { throw Error("a simplex needs at least one vertex"); }
    for (auto & v : vertices) {
      if (v.n() != n) { throw Error("group index mismatch"); }
      // -0.0 -> +0.0 so that == coincides with bitwise equality
      std::vector<double> w = v.w();
      bool changed = false;
      for (auto & c : w) {
        if (c == 0.0 && std::signbit(c)) {
          c = 0.0;
          changed = true;
        }
      }
      if (changed) { v = HPoint(n, std::move(w)); }
    }
  }

  [[nodiscard]] int k() const { return static_cast<int>(vertices.size()) - 1; }

  /// Descriptor of the face opposite vertex i.
  [[nodiscard]] SimplexDescriptor face(int i) const
  {
    if (k() < 1 || i < 0 || i > k()) { throw Error("face index out of range"); }
    auto vs = vertices;
    vs.erase(vs.begin() + i);
    return {builder, n, std::move(vs)};
  }

  friend bool operator==(const SimplexDescriptor &, const SimplexDescriptor &) = default;

  friend std::strong_ordering operator<=>(const SimplexDescriptor & a, const SimplexDescriptor & b)
  {
    if (auto c = a.builder <=> b.builder; c != 0) { return c; }
    if (auto c = a.n <=> b.n; c != 0) { return c; }
    if (auto c = a.vertices.size() <=> b.vertices.size(); c != 0) { return c; }
    for (std::size_t v = 0; v < a.vertices.size(); ++v) {
      const auto & x = a.vertices[v].w();
      const auto & y = b.vertices[v].w();
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < y[i]) { return std::strong_ordering::less; }
        if (x[i] > y[i]) { return std::strong_ordering::greater; }
      }
    }
    return std::strong_ordering::equal;
  }
};

// -------------------------------------------------------------------------
// piecewise linear maps
// -------------------------------------------------------------------------

class PLCell
{
public:
  PLCell(std::vector<std::vector<double>> domain, std::vector<HPoint> images)
  : domain_(std::move(domain)), images_(std::move(images))
  {
    const std::size_t m = domain_.size();
    if (m == 0 || images_.size() != m) { throw Error("cell needs k+1 domain points and k+1 images"); }
    Eigen::MatrixXd d(m, m);
    for (std::size_t c = 0; c < m; ++c) {
      if (domain_[c].size() != m) { throw Error("cell domain point has wrong dimension"); }
      for (std::size_t r = 0; r < m; ++r) { d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = domain_[c][r]; }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(d);
    if (!lu.isInvertible()) { throw Error("cell domain is affinely dependent"); }
    inverse_ = lu.inverse();
    lo_.assign(m, std::numeric_limits<double>::infinity());
    hi_.assign(m, -std::numeric_limits<double>::infinity());
    for (const auto & p : domain_) {
      for (std::size_t r = 0; r < m; ++r) {
        lo_[r] = std::min(lo_[r], p[r]);
        hi_[r] = std::max(hi_[r], p[r]);
      }
    }
  }

  [[nodiscard]] int k() const { return static_cast<int>(domain_.size()) - 1; }
  [[nodiscard]] const std::vector<std::vector<double>> & domain() const { return domain_; }
  [[nodiscard]] const std::vector<HPoint> & images() const { return images_; }

  /// Barycentric coordinates of s relative to this cell's domain vertices.
  [[nodiscard]] std::vector<double> local_coords(const std::vector<double> & s) const
  {
    const auto m = static_cast<Eigen::Index>(s.size());
    Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(s.data(), m);
    Eigen::VectorXd lam = inverse_ * rhs;
    return {lam.data(), lam.data() + m};
  }

  [[nodiscard]] bool bbox_contains(const std::vector<double> & s, double tol) const
  {
    for (std::size_t r = 0; r < s.size(); ++r) {
      if (s[r] < lo_[r] - tol || s[r] > hi_[r] + tol) { return false; }
    }
    return true;
  }

  /// Affine interpolation of the images with local weights lam.
  [[nodiscard]] HPoint interpolate(const std::vector<double> & lam) const
  {
    const int n = images_.front().n();
    std::vector<double> w(images_.front().dim(), 0.0);
    for (std::size_t a = 0; a < lam.size(); ++a) {
      if (lam[a] == 0.0) { continue; }
      for (std::size_t i = 0; i < w.size(); ++i) { w[i] += lam[a] * images_[a][i]; }
    }
    return {n, std::move(w)};
  }

  /// Gram determinant of the edge vectors d_a - d_0 in the barycentric chart.
  [[nodiscard]] double gram_determinant() const
  {
    const auto m = domain_.size();
    if (m == 1) { return 1.0; }
    Eigen::MatrixXd e(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m - 1));
    for (std::size_t a = 1; a < m; ++a) {
      for (std::size_t r = 0; r < m; ++r) {
        e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(a - 1)) = domain_[a][r] - domain_[0][r];
      }
    }
    return (e.transpose() * e).determinant();
  }

private:
  std::vector<std::vector<double>> domain_;
  std::vector<HPoint> images_;
  Eigen::MatrixXd inverse_;
  std::vector<double> lo_;
  std::vector<double> hi_;
};

struct PLMap
{
  int k{0};
  int n{1};
  std::vector<PLCell> cells;
  SimplexDescriptor descriptor;
  /// Vertex images affinely dependent (only tracked for single-cell builders).
  bool degenerate{false};
};

inline std::vector<Barycentric> standard_simplex(int k)
{
  if (k < 0) { throw Error("simplex dimension must be nonnegative"); }
  std::vector<Barycentric> out;
  for (int i = 0; i <= k; ++i) { out.push_back(Barycentric::vertex(k, i)); }
  return out;
}

/// F^i : Delta^{k-1} -> Delta^k, inserts a zero at position i.
struct FaceMap
{
  int k{1};
  int i{0};

  [[nodiscard]] std::vector<double> operator()(const std::vector<double> & s) const
  {
    if (s.size() != static_cast<std::size_t>(k)) { throw Error("face map input has wrong dimension"); }
    std::vector<double> out(s);
    out.insert(out.begin() + i, 0.0);
    return out;
  }

  [[nodiscard]] Barycentric operator()(const Barycentric & s) const { return Barycentric((*this)(s.s)); }
};

inline FaceMap face_map(int k, int i)
{
  if (k < 1 || i < 0 || i > k) { throw Error("face index out of range"); }
  return {k, i};
}

namespace detail {

inline bool affinely_dependent(const std::vector<HPoint> & vs)
{
  if (vs.size() <= 1) { return false; }
  const auto d = static_cast<Eigen::Index>(vs.front().dim());
  const auto m = static_cast<Eigen::Index>(vs.size() - 1);
  if (m > d) { return true; }
  Eigen::MatrixXd e(d, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index i = 0; i < d; ++i) {
      e(i, a) = vs[static_cast<std::size_t>(a + 1)][static_cast<std::size_t>(i)] - vs[0][static_cast<std::size_t>(i)];
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(e);
  lu.setThreshold(1e-12);
  return lu.rank() < m;
}

inline void require_common_n(const std::vector<HPoint> & vs)
{
  if (vs.empty()) { throw Error("a simplex needs at least one vertex"); }
  for (const auto & v : vs) { require_same_n(v.n(), vs.front().n()); }
}

}  // namespace detail

/// Single-cell map interpolating the vertex coordinates.
inline PLMap affine_simplex(const std::vector<HPoint> & vertices)
{
  detail::require_common_n(vertices);
  const int k = static_cast<int>(vertices.size()) - 1;
  std::vector<std::vector<double>> dom;
  for (int i = 0; i <= k; ++i) { dom.push_back(Barycentric::vertex(k, i).s); }
  PLMap m{k, vertices.front().n(), {}, SimplexDescriptor(Builder::Affine, vertices.front().n(), vertices), false};
  m.cells.emplace_back(std::move(dom), m.descriptor.vertices);
  m.degenerate = detail::affinely_dependent(vertices);
  return m;
}

/**
 * One step of the straight construction: given base on Delta^{j-1} and an apex,
 * pull the base into the algebra by log o tau_{apex^-1}, cone it simplicially to
 * 0 with the new domain vertex e_j, and push forward by tau_apex o exp.
 * The descriptor is base's builder with the apex appended.
 */
inline PLMap cone_to_apex(const PLMap & base, const HPoint & apex)
{
  detail::require_same_n(base.n, apex.n());
  const int j = base.k + 1;
  auto vs = base.descriptor.vertices;
  vs.push_back(apex);
  PLMap out{j, base.n, {}, SimplexDescriptor(base.descriptor.builder, base.n, std::move(vs)), false};
  out.cells.reserve(base.cells.size());
  const std::vector<double> tip = Barycentric::vertex(j, j).s;
  for (const auto & cell : base.cells) {
    std::vector<std::vector<double>> dom;
    std::vector<HPoint> img;
    for (std::size_t a = 0; a < cell.domain().size(); ++a) {
      auto d = cell.domain()[a];
      d.push_back(0.0);
      dom.push_back(std::move(d));
      // tau_apex exp(1 * log(tau_apex^-1 gamma)) = gamma
      img.push_back(cell.images()[a]);
    }
    dom.push_back(tip);
    img.push_back(apex);
    out.cells.emplace_back(std::move(dom), std::move(img));
  }
  return out;
}

/// Constant map Delta^0 -> {p}.
inline PLMap point_map(Builder b, const HPoint & p)
{
  PLMap m{0, p.n(), {}, SimplexDescriptor(b, p.n(), {p}), false};
  m.cells.emplace_back(std::vector<std::vector<double>>{{1.0}}, m.descriptor.vertices);
  return m;
}

/// sigma_{p_0..p_k} by iterated coning, each new vertex the apex of the next step.
inline PLMap straight_simplex(const std::vector<HPoint> & vertices)
{
  detail::require_common_n(vertices);
  PLMap m = point_map(Builder::Straight, vertices.front());
  for (std::size_t j = 1; j < vertices.size(); ++j) { m = cone_to_apex(m, vertices[j]); }
  m.degenerate = detail::affinely_dependent(vertices);
  return m;
}

/**
 * Evaluate at s. The first cell (lowest index) containing s within tolerance
 * wins; if rounding leaves s just outside every cell, the least-violated cell
 * is used.
 */
inline HPoint eval(const PLMap & m, const Barycentric & s)
{
  if (s.k() != m.k) { throw Error("barycentric point has wrong dimension"); }
  if (!s.valid()) { throw Error("point lies outside the standard simplex"); }
  const PLCell * best = nullptr;
  std::vector<double> best_lam;
  double best_min = -std::numeric_limits<double>::infinity();
  for (const auto & cell : m.cells) {
    if (!cell.bbox_contains(s.s, 1e-9)) { continue; }
    for (std::size_t a = 0; a < cell.domain().size(); ++a) {
      if (cell.domain()[a] == s.s) { return cell.images()[a]; }
    }
    auto lam = cell.local_coords(s.s);
    const double mn = *std::min_element(lam.begin(), lam.end());
    if (mn >= -kBarycentricTol) { return cell.interpolate(lam); }
    if (mn > best_min) {
      best_min = mn;
      best = &cell;
      best_lam = std::move(lam);
    }
  }
  if (best != nullptr && best_min >= -1e-9) { return best->interpolate(best_lam); }
  throw Error("point not covered by any cell");
}

/// sigma o F^i as a map on Delta^{k-1}; descriptor drops vertex i.
inline PLMap restrict_face(const PLMap & m, int i)
{
  if (m.k < 1) { throw Error("cannot restrict a 0-simplex"); }
  if (i < 0 || i > m.k) { throw Error("face index out of range"); }
  PLMap out{m.k - 1, m.n, {}, m.descriptor.face(i), false};
  const auto col = static_cast<std::size_t>(i);
  for (const auto & cell : m.cells) {
    std::vector<std::vector<double>> dom;
    std::vector<HPoint> img;
    for (std::size_t a = 0; a < cell.domain().size(); ++a) {
      const auto & d = cell.domain()[a];
      if (std::abs(d[col]) > kBarycentricTol) { continue; }
      auto reduced = d;
      reduced.erase(reduced.begin() + i);
      dom.push_back(std::move(reduced));
      img.push_back(cell.images()[a]);
    }
    if (dom.size() == static_cast<std::size_t>(m.k)) { out.cells.emplace_back(std::move(dom), std::move(img)); }
  }
  if (out.cells.empty()) { throw Error("no cell has a facet on the requested face"); }
  return out;
}

/// Restriction to the sub-simplex spanned by the listed vertex indices (ascending).
inline PLMap restrict_to_vertices(const PLMap & m, const std::vector<int> & keep)
{
  PLMap out = m;
  for (int i = m.k; i >= 0; --i) {
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) { out = restrict_face(out, i); }
  }
  return out;
}

// -------------------------------------------------------------------------
// chains
// -------------------------------------------------------------------------

/// Element of S_k(H^n). k == -1 is the sentinel degree of the boundary of 0-chains.
struct Chain
{
  int k{0};
  int n{1};
  std::map<SimplexDescriptor, std::int64_t> terms;

  Chain() = default;
  Chain(int k_, int n_) : k(k_), n(n_) {}

  [[nodiscard]] bool empty() const { return terms.empty(); }
  [[nodiscard]] std::size_t size() const { return terms.size(); }

  [[nodiscard]] std::int64_t coeff(const SimplexDescriptor & d) const
  {
    auto it = terms.find(d);
    return it == terms.end() ? 0 : it->second;
  }

  void add_term(const SimplexDescriptor & d, std::int64_t c)
  {
    if (d.k() != k || d.n != n) { throw Error("chain degree or group index mismatch"); }
    if (c == 0) { return; }
    auto [it, inserted] = terms.emplace(d, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) { terms.erase(it); }
    }
  }

  friend bool operator==(const Chain &, const Chain &) = default;
};

inline Chain chain_add(const Chain & a, const Chain & b)
{
  if (a.k != b.k || a.n != b.n) { throw Error("chain degree or group index mismatch"); }
  Chain out = a;
  for (const auto & [d, c] : b.terms) { out.add_term(d, c); }
  return out;
}

inline Chain chain_scale(const Chain & c, std::int64_t z)
{
  Chain out(c.k, c.n);
  if (z == 0) { return out; }
  for (const auto & [d, v] : c.terms) { out.terms.emplace(d, v * z); }
  return out;
}

inline Chain single_term_chain(const SimplexDescriptor & d, std::int64_t c = 1)
{
  Chain out(d.k(), d.n);
  out.add_term(d, c);
  return out;
}

inline Chain boundary(const Chain & c)
{
  if (c.k < 0) { throw Error("boundary of the degree -1 chain"); }
  Chain out(c.k - 1, c.n);
  if (c.k == 0) { return out; }
  for (const auto & [d, v] : c.terms) {
    for (int i = 0; i <= c.k; ++i) { out.add_term(d.face(i), (i % 2 == 0) ? v : -v); }
  }
  return out;
}

}  // namespace heistri

#endif  // HEISTRI__SIMPLEX_CHAIN_HPP_
