#ifndef HEISTRI__MESH_EXPORT_HPP_
#define HEISTRI__MESH_EXPORT_HPP_

/**
 * @file mesh_export.hpp
 * @brief OBJ / legacy VTK / JSON output of chains.
 *
 * Each PL cell is refined by the edgewise (Kuhn) subdivision with
 * samples_per_edge parts per edge, giving samples^k sub-simplexes per cell,
 * and each sub-simplex vertex is mapped through the cell's affine map.
 * Vertices are deduplicated on exact coordinates and numbered in order of
 * first use.
 */

#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "horizontal_builder.hpp"
#include "json_io.hpp"
#include "simplex_chain.hpp"

namespace heistri {

enum class MeshFormat { Obj, Vtk, Json };

inline MeshFormat mesh_format_from_string(const std::string & s)
{
  if (s == "obj") { return MeshFormat::Obj; }
  if (s == "vtk") { return MeshFormat::Vtk; }
  if (s == "json") { return MeshFormat::Json; }
  throw Error("unknown export format '" + s + "'");
}

/**
 * Edgewise subdivision of Delta^k into m^k simplexes, returned as local
 * barycentric weights of their vertices. Lattice points are ordered vectors
 * m >= u_1 >= ... >= u_k >= 0; Kuhn simplexes of the unit grid that stay in
 * that region tile it.
 */
inline std::vector<std::vector<std::vector<double>>> edgewise_subdivision(int k, int m)
{
  if (k < 0 || m < 1) { throw Error("subdivision needs k >= 0 and at least one sample per edge"); }
  const auto K = static_cast<std::size_t>(k);
  auto to_bary = [&](const std::vector<int> & u) {
    std::vector<double> s(K + 1);
    const double M = m;
    s[0] = (M - (K > 0 ? u[0] : 0)) / M;
    for (std::size_t i = 1; i < K; ++i) { s[i] = (u[i - 1] - u[i]) / M; }
    if (K > 0) { s[K] = u[K - 1] / M; }
    return s;
  };
  auto ordered = [&](const std::vector<int> & u) {
    for (std::size_t i = 0; i < K; ++i) {
      if (u[i] < 0 || u[i] > m) { return false; }
      if (i > 0 && u[i] > u[i - 1]) { return false; }
    }
    return true;
  };

  std::vector<std::vector<std::vector<double>>> out;
  if (k == 0) {
    out.push_back({{1.0}});
    return out;
  }
  std::vector<int> perm(K);
  std::vector<int> c(K, 0);
  while (true) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<std::vector<int>> verts{c};
      for (int axis : perm) {
        auto next = verts.back();
        ++next[static_cast<std::size_t>(axis)];
        verts.push_back(std::move(next));
      }
      bool inside = true;
      for (const auto & v : verts) { inside = inside && ordered(v); }
      if (inside) {
        std::vector<std::vector<double>> simplex;
        for (const auto & v : verts) { simplex.push_back(to_bary(v)); }
        out.push_back(std::move(simplex));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::size_t i = K;
    bool done = true;
    while (i > 0) {
      --i;
      if (++c[i] < m) {
        done = false;
        break;
      }
      c[i] = 0;
    }
    if (done) { break; }
  }
  return out;
}

namespace detail {

struct MeshBuffer
{
  std::map<std::vector<double>, std::size_t> index;
  std::vector<std::vector<double>> points;
  std::vector<std::vector<std::size_t>> simplexes;

  std::size_t add(const HPoint & p)
  {
    auto [it, inserted] = index.emplace(p.w(), points.size());
    if (inserted) { points.push_back(p.w()); }
    return it->second;
  }
};

inline MeshBuffer sample_chain(const Chain & c, int samples, const std::map<SimplexDescriptor, PLMap> * maps)
{
  MeshBuffer buf;
  const auto sub = edgewise_subdivision(c.k, samples);
  for (const auto & [d, coeff] : c.terms) {
    PLMap m;
    if (maps != nullptr && maps->count(d) != 0) {
      m = maps->at(d);
    } else {
      m = build_simplex(d);
    }
    for (const auto & cell : m.cells) {
      for (const auto & simplex : sub) {
        std::vector<std::size_t> ids;
        for (const auto & lam : simplex) { ids.push_back(buf.add(cell.interpolate(lam))); }
        buf.simplexes.push_back(std::move(ids));
      }
    }
  }
  return buf;
}

}  // namespace detail

inline std::string export_mesh(
  const Chain & c, MeshFormat format, int samples_per_edge = 1,
  const std::map<SimplexDescriptor, PLMap> * maps = nullptr)
{
  if (samples_per_edge < 1) { throw Error("samples per edge must be at least 1"); }
  if (format == MeshFormat::Json) { return to_json(c, maps).dump(2) + "\n"; }
  if (c.n != 1) {
    throw Error(format == MeshFormat::Obj ? "OBJ export requires 3 ambient dimensions"
                                          : "VTK export requires 3 ambient dimensions");
  }
  if (c.k != 2 && c.k != 3) { throw Error("mesh export needs a chain of triangles (k=2) or tetrahedra (k=3)"); }

  const auto buf = detail::sample_chain(c, samples_per_edge, maps);
  std::ostringstream os;
  os.precision(17);
  if (format == MeshFormat::Obj) {
    os << "# heistri chain k=" << c.k << " n=" << c.n << "\n";
    for (const auto & p : buf.points) { os << "v " << p[0] << ' ' << p[1] << ' ' << p[2] << "\n"; }
    for (const auto & s : buf.simplexes) {
      if (s.size() == 3) {
        os << "f " << s[0] + 1 << ' ' << s[1] + 1 << ' ' << s[2] + 1 << "\n";
      } else {
        static constexpr int kTetFaces[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
        for (const auto & f : kTetFaces) { os << "f " << s[f[0]] + 1 << ' ' << s[f[1]] + 1 << ' ' << s[f[2]] + 1 << "\n"; }
      }
    }
    return os.str();
  }

  const int per_cell = c.k + 1;
  os << "# vtk DataFile Version 3.0\n"
     << "heistri chain k=" << c.k << " n=" << c.n << "\n"
     << "ASCII\nDATASET UNSTRUCTURED_GRID\n"
     << "POINTS " << buf.points.size() << " double\n";
  for (const auto & p : buf.points) { os << p[0] << ' ' << p[1] << ' ' << p[2] << "\n"; }
  os << "CELLS " << buf.simplexes.size() << ' ' << buf.simplexes.size() * static_cast<std::size_t>(per_cell + 1) << "\n";
  for (const auto & s : buf.simplexes) {
    os << per_cell;
    for (auto id : s) { os << ' ' << id; }
    os << "\n";
  }
  os << "CELL_TYPES " << buf.simplexes.size() << "\n";
  for (std::size_t i = 0; i < buf.simplexes.size(); ++i) { os << (c.k == 2 ? 5 : 10) << "\n"; }
  return os.str();
}

}  // namespace heistri

#endif  // HEISTRI__MESH_EXPORT_HPP_
