#ifndef HEISTRI__INVARIANTS_HPP_
#define HEISTRI__INVARIANTS_HPP_

// Invariant suite run over a chain file: boundary of boundary, vertex
// agreement, cell continuity, agreement of explicit cells with the rebuilt
// map, horizontality of the 1-skeleton, and dilation/translation equivariance.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "heis_core.hpp"
#include "horizontal_builder.hpp"
#include "json_io.hpp"
#include "simplex_chain.hpp"

namespace heistri {

struct CheckResult
{
  std::string name;
  bool passed{true};
  double residual{0.0};
  std::string detail;
};

struct CheckOptions
{
  double tol{1e-12};
  double equivariance_tol{1e-9};
  /// Without a seed the equivariance probe uses a fixed dilation and translation.
  std::optional<unsigned> seed;
};

inline double max_abs_diff(const HPoint & a, const HPoint & b)
{
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) { m = std::max(m, std::abs(a[i] - b[i])); }
  return m;
}

/// Largest scaled deviation of images at shared domain vertices of adjacent cells.
inline double cell_continuity_residual(const PLMap & m)
{
  double worst = 0.0;
  for (std::size_t a = 0; a < m.cells.size(); ++a) {
    for (std::size_t b = a + 1; b < m.cells.size(); ++b) {
      const auto & ca = m.cells[a];
      const auto & cb = m.cells[b];
      for (std::size_t u = 0; u < ca.domain().size(); ++u) {
        for (std::size_t v = 0; v < cb.domain().size(); ++v) {
          bool same = true;
          for (std::size_t r = 0; r < ca.domain()[u].size() && same; ++r) {
            same = std::abs(ca.domain()[u][r] - cb.domain()[v][r]) <= kBarycentricTol;
          }
          if (!same) { continue; }
          const auto & p = ca.images()[u];
          const auto & q = cb.images()[v];
          worst = std::max(worst, max_abs_diff(p, q) / (1.0 + std::max(p.max_abs(), q.max_abs())));
        }
      }
    }
  }
  return worst;
}

/// Largest scaled horizontality residual over every cell of every edge sigma_{p_a p_b}.
inline double skeleton_horizontality_residual(const PLMap & m)
{
  double worst = 0.0;
  for (int a = 0; a <= m.k; ++a) {
    for (int b = a + 1; b <= m.k; ++b) {
      const PLMap edge = restrict_to_vertices(m, {a, b});
      for (const auto & cell : edge.cells) {
        const auto & p = cell.images()[0];
        const auto & q = cell.images()[1];
        const double r = std::abs(horizontal_residual(p, q)) / (1.0 + std::max(p.max_abs(), q.max_abs()));
        worst = std::max(worst, r);
      }
    }
  }
  return worst;
}

namespace detail {

inline std::vector<Barycentric> probe_points(int k, std::mt19937_64 * rng)
{
  std::vector<Barycentric> pts = standard_simplex(k);
  pts.push_back(Barycentric::center(k));
  if (rng != nullptr) {
    std::exponential_distribution<double> e(1.0);
    for (int i = 0; i < 8; ++i) {
      std::vector<double> s(static_cast<std::size_t>(k + 1));
      double sum = 0.0;
      for (auto & v : s) {
        v = e(*rng);
        sum += v;
      }
      for (auto & v : s) { v /= sum; }
      pts.emplace_back(std::move(s));
    }
  } else {
    for (int i = 0; i <= k && k > 0; ++i) {
      std::vector<double> s(static_cast<std::size_t>(k + 1), 0.5 / k);
      s[static_cast<std::size_t>(i)] = 0.5;
      pts.emplace_back(std::move(s));
    }
  }
  return pts;
}

inline double relative_error(const HPoint & got, const HPoint & want)
{
  return max_abs_diff(got, want) / std::max(1.0, want.max_abs());
}

}  // namespace detail

inline std::vector<CheckResult> run_checks(const ChainFile & f, const CheckOptions & opt = {})
{
  std::vector<CheckResult> out;
  const Chain & c = f.chain;

  {
    CheckResult r{"boundary_squared_zero", true, 0.0, ""};
    if (c.k >= 1) {
      const Chain bb = boundary(boundary(c));
      r.residual = static_cast<double>(bb.size());
      r.passed = bb.empty();
      r.detail = std::to_string(bb.size()) + " surviving terms in boundary(boundary(c))";
    } else {
      r.detail = "degree below 2, trivially zero";
    }
    out.push_back(std::move(r));
  }

  std::vector<std::pair<SimplexDescriptor, PLMap>> maps;
  for (const auto & [d, coeff] : c.terms) { maps.emplace_back(d, f.map_for(d)); }

  {
    CheckResult r{"vertex_agreement", true, 0.0, ""};
    for (const auto & [d, m] : maps) {
      for (int l = 0; l <= d.k(); ++l) {
        const HPoint & want = d.vertices[static_cast<std::size_t>(l)];
        const double e = max_abs_diff(eval(m, Barycentric::vertex(d.k(), l)), want) / (1.0 + want.max_abs());
        r.residual = std::max(r.residual, e);
      }
    }
    r.passed = r.residual <= opt.tol;
    out.push_back(std::move(r));
  }

  {
    CheckResult r{"cell_continuity", true, 0.0, ""};
    for (const auto & [d, m] : maps) { r.residual = std::max(r.residual, cell_continuity_residual(m)); }
    r.passed = r.residual <= opt.tol;
    out.push_back(std::move(r));
  }

  {
    CheckResult r{"explicit_cells_match_builder", true, 0.0, ""};
    std::size_t checked = 0;
    for (const auto & [d, m] : maps) {
      if (f.maps.count(d) == 0) { continue; }
      ++checked;
      const PLMap rebuilt = build_simplex(d);
      for (const auto & cell : m.cells) {
        for (std::size_t a = 0; a < cell.domain().size(); ++a) {
          const HPoint want = eval(rebuilt, Barycentric(cell.domain()[a]));
          const HPoint & got = cell.images()[a];
          r.residual = std::max(r.residual, max_abs_diff(got, want) / (1.0 + want.max_abs()));
        }
      }
    }
    r.passed = r.residual <= opt.tol;
    r.detail = std::to_string(checked) + " explicit maps";
    out.push_back(std::move(r));
  }

  {
    CheckResult r{"horizontality", true, 0.0, ""};
    std::size_t checked = 0;
    for (const auto & [d, m] : maps) {
      if (d.builder != Builder::Hybrid && d.builder != Builder::HorizontalPath) { continue; }
      ++checked;
      r.residual = std::max(r.residual, skeleton_horizontality_residual(m));
    }
    r.passed = r.residual <= opt.tol;
    r.detail = std::to_string(checked) + " simplexes with horizontal 1-skeleton";
    out.push_back(std::move(r));
  }

  {
    CheckResult r{"equivariance", true, 0.0, ""};
    std::mt19937_64 rng(opt.seed.value_or(0));
    std::mt19937_64 * rp = opt.seed ? &rng : nullptr;
    double dil = 2.0;
    std::vector<double> gw(static_cast<std::size_t>(2 * c.n + 1));
    for (std::size_t i = 0; i < gw.size(); ++i) { gw[i] = 0.5 - 0.25 * static_cast<double>(i); }
    if (rp != nullptr) {
      std::uniform_real_distribution<double> ur(0.1, 10.0);
      std::uniform_real_distribution<double> ug(-5.0, 5.0);
      dil = ur(rng);
      for (auto & v : gw) { v = ug(rng); }
    }
    const HPoint g(c.n, gw);
    for (const auto & [d, m] : maps) {
      std::vector<HPoint> dv;
      std::vector<HPoint> tv;
      for (const auto & v : d.vertices) {
        dv.push_back(dilate(dil, v));
        tv.push_back(translate(g, v));
      }
      const PLMap md = build_simplex({d.builder, d.n, dv});
      const PLMap mt = build_simplex({d.builder, d.n, tv});
      for (const auto & s : detail::probe_points(d.k(), rp)) {
        const HPoint base = eval(m, s);
        r.residual = std::max(r.residual, detail::relative_error(eval(md, s), dilate(dil, base)));
        r.residual = std::max(r.residual, detail::relative_error(eval(mt, s), translate(g, base)));
      }
    }
    r.passed = r.residual <= opt.equivariance_tol;
    r.detail = "r=" + std::to_string(dil);
    out.push_back(std::move(r));
  }
  return out;
}

inline bool all_passed(const std::vector<CheckResult> & rs)
{
  return std::all_of(rs.begin(), rs.end(), [](const CheckResult & r) { return r.passed; });
}

}  // namespace heistri

#endif  // HEISTRI__INVARIANTS_HPP_
