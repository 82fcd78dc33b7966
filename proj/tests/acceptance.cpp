// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include "test_support.hpp"

namespace {

using namespace heistri;
using test::Rng;
using test::max_diff;
using test::random_barycentric;
using test::random_points;

constexpr double kExact = 1e-12;
constexpr double kEquivariance = 1e-9;
constexpr double kSurface = 1e-9;

struct Outcome
{
  bool ok{true};
  std::string detail;
};

struct Probe
{
  bool ok{true};
  std::ostringstream why;

  void require(bool cond, const std::string & what)
  {
    if (!cond && ok) {
      ok = false;
      why << what;
    }
  }
};

BitString bits(const std::string & s)
{
  BitString b;
  for (char c : s) { b.push_back(c - '0'); }
  return b;
}

std::vector<BitString> seq(std::initializer_list<const char *> l)
{
  std::vector<BitString> out;
  for (const char * s : l) { out.push_back(bits(s)); }
  return out;
}

SimplexDescriptor desc(const CornerAssignment & ca, const std::vector<BitString> & s, Builder b)
{
  return simplex_for(IncreasingMap{ca.k, s}, ca, b);
}

double segment_scale(const HPoint & a, const HPoint & b) { return 1.0 + std::max(a.max_abs(), b.max_abs()); }

/// Worst scaled residual over the cells of every edge of the 1-skeleton.
double skeleton_residual(const PLMap & m)
{
  double worst = 0.0;
  for (int a = 0; a <= m.k; ++a) {
    for (int b = a + 1; b <= m.k; ++b) {
      for (const auto & c : restrict_to_vertices(m, {a, b}).cells) {
        worst = std::max(worst, std::abs(test::oracle_segment_residual(c.images()[0], c.images()[1]))
                                  / segment_scale(c.images()[0], c.images()[1]));
      }
    }
  }
  return worst;
}

Outcome square()
{
  Probe p;
  const auto maps = increasing_maps(2);
  p.require(maps.size() == 2, "increasing_maps(2) size");
  p.require(maps.size() == 2 && maps[0].seq == seq({"00", "10", "11"}) && maps[1].seq == seq({"00", "01", "11"}),
            "maps differ from 00<10<11 and 00<01<11");
  p.require(maps.size() == 2 && orientation_sign(maps[0]) == 1 && orientation_sign(maps[1]) == -1, "signs");
  const auto ca = lattice_corners(1, 1.0, {0, 0, 0}, {0, 1});
  for (auto b : {Builder::Affine, Builder::Straight, Builder::Hybrid}) {
    const Chain d = boundary(triangulate_cube(ca, b).chain);
    p.require(d.size() == 4, std::string("boundary term count for ") + to_string(b));
    for (const auto & [s, c] : d.terms) { p.require(c == 1 || c == -1, "boundary coefficient not +-1"); }
  }
  return {p.ok, p.ok ? "2 maps, signs +1/-1, 4 boundary terms" : p.why.str()};
}

Outcome cube()
{
  Probe p;
  const std::vector<std::pair<std::vector<BitString>, int>> tables{
    {seq({"000", "100", "110", "111"}), 1},  {seq({"000", "100", "101", "111"}), -1},
    {seq({"000", "010", "011", "111"}), 1},  {seq({"000", "010", "110", "111"}), -1},
    {seq({"000", "001", "101", "111"}), 1},  {seq({"000", "001", "011", "111"}), -1},
  };
  const auto maps = increasing_maps(3);
  p.require(maps.size() == 6, "increasing_maps(3) size");
  for (const auto & [s, sign] : tables) {
    bool found = false;
    for (const auto & m : maps) {
      if (m.seq == s) {
        found = true;
        p.require(orientation_sign(m) == sign, "sign mismatch");
      }
    }
    p.require(found, "table map missing");
  }
  const auto ca = grid_corners(Cube(1, {0, 0, 0}, 1.0));
  for (auto b : {Builder::Affine, Builder::Straight, Builder::Hybrid}) {
    std::vector<SimplexDescriptor> s;
    for (const auto & [t, sign] : tables) { s.push_back(desc(ca, t, b)); }
    p.require(s[0].face(2) == s[1].face(2), "s1F2 = s2F2");
    p.require(s[0].face(1) == s[3].face(1), "s1F1 = s4F1");
    p.require(s[1].face(1) == s[4].face(1), "s2F1 = s5F1");
    p.require(s[2].face(2) == s[3].face(2), "s3F2 = s4F2");
    p.require(s[2].face(1) == s[5].face(1), "s3F1 = s6F1");
    p.require(s[4].face(2) == s[5].face(2), "s5F2 = s6F2");
    const TriangulationChain t = triangulate_cube(ca, b);
    for (std::size_t i = 0; i < s.size(); ++i) { p.require(t.chain.coeff(s[i]) == tables[i].second, "chain coefficient"); }
    p.require(boundary(t.chain).size() == 12, std::string("boundary term count for ") + to_string(b));
  }
  return {p.ok, p.ok ? "6 maps match tables, 6 cancellations, 12 boundary terms" : p.why.str()};
}

Outcome factorial()
{
  Probe p;
  std::size_t f = 1;
  for (int k = 1; k <= 7; ++k) {
    f *= static_cast<std::size_t>(k);
    const auto maps = increasing_maps(k);
    p.require(maps.size() == f, "count for k=" + std::to_string(k));
    p.require(std::set<std::vector<BitString>>([&] {
                std::set<std::vector<BitString>> u;
                for (const auto & m : maps) { u.insert(m.seq); }
                return u;
              }()).size() == f,
              "duplicate maps for k=" + std::to_string(k));
  }
  return {p.ok, p.ok ? "k! maps for k=1..7" : p.why.str()};
}

Outcome chain_complex()
{
  Probe p;
  Rng rng(1001);
  for (int i = 0; i < 100; ++i) {
    const Chain c = single_term_chain(SimplexDescriptor(Builder::Straight, 1, random_points(1, 4, rng)));
    p.require(boundary(boundary(c)).empty(), "random straight 3-simplex");
  }
  for (auto b : {Builder::Affine, Builder::Straight, Builder::Hybrid}) {
    p.require(boundary(boundary(triangulate_cube(lattice_corners(1, 1.0, {0, 0, 0}, {0, 1}), b).chain)).empty(),
              "square chain");
    p.require(boundary(boundary(triangulate_cube(grid_corners(Cube(1, {0, 0, 0}, 1.0)), b).chain)).empty(),
              "cube chain");
  }
  return {p.ok, p.ok ? "dd = 0 on 100 straight simplexes and all square/cube chains" : p.why.str()};
}

Outcome equivariance()
{
  Rng rng(1002);
  std::uniform_real_distribution<double> ur(0.1, 10.0);
  double worst = 0.0;
  for (int n = 1; n <= 2; ++n) {
    for (int i = 0; i < 50; ++i) {
      const int k = 1 + i % (2 * n + 1);
      const auto vs = random_points(n, static_cast<std::size_t>(k + 1), rng);
      const double r = ur(rng);
      const HPoint g = test::random_point(n, rng, -5.0, 5.0);
      std::vector<HPoint> dv;
      std::vector<HPoint> tv;
      for (const auto & v : vs) {
        dv.push_back(dilate(r, v));
        tv.push_back(mul(g, v));
      }
      for (auto b : {Builder::Straight, Builder::Hybrid}) {
        const PLMap m = build_simplex({b, n, vs});
        const PLMap md = build_simplex({b, n, dv});
        const PLMap mt = build_simplex({b, n, tv});
        for (int j = 0; j < 20; ++j) {
          const auto s = random_barycentric(k, rng);
          const HPoint base = eval(m, s);
          worst = std::max(worst, test::rel_diff(eval(md, s), dilate(r, base)));
          worst = std::max(worst, test::rel_diff(eval(mt, s), mul(g, base)));
        }
      }
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max relative error %.3e (tol %.0e)", worst, kEquivariance);
  return {worst <= kEquivariance, buf};
}

Outcome horizontality()
{
  Rng rng(1003);
  double worst_end = 0.0;
  double worst_seg = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 200; ++i) {
      const auto ps = random_points(n, 2, rng);
      const PLMap m = horizontal_path(ps[0], ps[1]);
      worst_end = std::max(worst_end, max_diff(eval(m, Barycentric::vertex(1, 0)), ps[0]));
      worst_end = std::max(worst_end, max_diff(eval(m, Barycentric::vertex(1, 1)), ps[1]));
      for (const auto & c : m.cells) {
        const auto & a = c.images()[0];
        const auto & b = c.images()[1];
        worst_seg = std::max(worst_seg, std::abs(test::oracle_segment_residual(a, b)) / segment_scale(a, b));
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "endpoint error %.3e, scaled segment residual %.3e (tol %.0e)", worst_end, worst_seg,
                kExact);
  return {worst_end <= kExact && worst_seg <= kExact, buf};
}

Outcome straight_vs_affine()
{
  Rng rng(1004);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 3;
    const int k = 1 + i % (2 * n + 1);
    const auto vs = random_points(n, static_cast<std::size_t>(k + 1), rng);
    const PLMap m = straight_simplex(vs);
    for (int j = 0; j < 100; ++j) {
      const auto s = random_barycentric(k, rng);
      worst = std::max(worst, max_diff(eval(m, s), test::affine_interp(vs, s.s)));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max error %.3e (tol %.0e)", worst, kExact);
  return {worst <= kExact, buf};
}

Outcome face_restriction()
{
  Rng rng(1005);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 2;
    const int k = 1 + i % (2 * n + 1);
    const auto vs = random_points(n, static_cast<std::size_t>(k + 1), rng);
    const PLMap m = straight_simplex(vs);
    for (int f = 0; f <= k; ++f) {
      auto reduced = vs;
      reduced.erase(reduced.begin() + f);
      const PLMap face = restrict_face(m, f);
      const PLMap direct = straight_simplex(reduced);
      for (int j = 0; j < 20; ++j) {
        const auto s = random_barycentric(k - 1, rng);
        worst = std::max(worst, max_diff(eval(face, s), eval(direct, s)));
      }
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max error %.3e (tol %.0e)", worst, kExact);
  return {worst <= kExact, buf};
}

/// Does the wedge of horizontal gradients vanish somewhere on a lattice sampling of the subface?
bool sampled_wedge_zero(const Subface & s)
{
  const Cube & c = s.cube;
  const Face a = s.first();
  const Face b = s.second();
  const int steps = 4;
  const std::size_t d = c.dim();
  std::vector<int> idx(d, 0);
  while (true) {
    std::vector<double> w(d);
    for (std::size_t i = 0; i < d; ++i) { w[i] = c.lo(i) + (c.hi(i) - c.lo(i)) * idx[i] / steps; }
    w[a.axis] = a.level();
    w[b.axis] = b.level();
    const HPoint p(c.n, w);
    const auto ga = grad_h_affine(a.defining_function(), p).coeffs;
    const auto gb = grad_h_affine(b.defining_function(), p).coeffs;
    bool zero = true;
    for (std::size_t l = 0; l < ga.size() && zero; ++l) {
      for (std::size_t m = l + 1; m < ga.size() && zero; ++m) { zero = ga[l] * gb[m] - ga[m] * gb[l] == 0.0; }
    }
    if (zero) { return true; }
    std::size_t i = 0;
    while (i < d && ++idx[i] > steps) { idx[i++] = 0; }
    if (i == d) { return false; }
  }
}

Outcome grid_regularity()
{
  Probe p;
  for (const auto & f : faces(Cube(1, {0, 0, 0}, 1.0))) {
    const bool t_face = f.axis == 2;
    p.require(face_regularity(f).classification == (t_face ? Classification::InteriorOnly : Classification::FullSurface),
              "origin cube " + f.name());
  }
  for (const auto & f : faces(Cube(1, {1, 1, 0}, 1.0))) {
    p.require(face_regularity(f).classification == Classification::FullSurface, "cube (1,1,0) " + f.name());
  }
  try {
    subface_regularity(subfaces(faces(Cube(1, {0, 0, 0}, 1.0)).front()).front());
    p.require(false, "n=1 subface did not throw");
  } catch (const Error & e) {
    p.require(std::string(e.what()) == "no 2-codimensional statement for n=1", "n=1 error message");
  }
  int subface_count = 0;
  int interior_only = 0;
  for (std::int64_t mask = 0; mask < 32; ++mask) {
    std::vector<std::int64_t> base(5);
    for (std::size_t i = 0; i < 5; ++i) { base[i] = ((mask >> i) & 1) != 0 ? -1 : 0; }
    const Cube c(2, base, 1.0);
    for (const auto & f : faces(c)) {
      for (const auto & s : subfaces(f)) {
        const auto r = subface_regularity(s);
        ++subface_count;
        const bool io = r.classification == Classification::InteriorOnly;
        interior_only += io ? 1 : 0;
        p.require(io == sampled_wedge_zero(s), "subface " + s.name());
        if (s.axes.first < 4 && s.axes.second < 4) { p.require(!io, "horizontal subface " + s.name()); }
      }
    }
  }
  for (const auto & f : faces(Cube(2, {1, 1, 1, 1, 0}, 1.0))) {
    for (const auto & s : subfaces(f)) {
      p.require(subface_regularity(s).classification == Classification::FullSurface, "off-axis subface " + s.name());
    }
  }
  std::ostringstream os;
  os << "faces exact, " << subface_count << " n=2 subfaces match sampling (" << interior_only << " interior-only)";
  return {p.ok, p.ok ? os.str() : p.why.str()};
}

std::set<int> regions(const PLMap & m)
{
  std::set<int> out;
  for (const auto & c : m.cells) {
    std::vector<double> centre(c.domain().front().size(), 0.0);
    for (const auto & d : c.domain()) {
      for (std::size_t a = 0; a < centre.size(); ++a) { centre[a] += d[a] / static_cast<double>(c.domain().size()); }
    }
    out.insert(static_cast<int>(std::min_element(centre.begin(), centre.end()) - centre.begin()));
  }
  return out;
}

Outcome hybrid()
{
  Probe p;
  Rng rng(1006);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_skeleton = 0.0;
  double worst_face = 0.0;
  double worst_cone = 0.0;
  for (int k = 2; k <= 3; ++k) {
    for (int i = 0; i < 20; ++i) {
      const auto vs = random_points(1, static_cast<std::size_t>(k + 1), rng);
      const PLMap m = hybrid_simplex(vs, 1);
      p.require(regions(m).size() == static_cast<std::size_t>(k + 1), "sub-simplex count for k=" + std::to_string(k));
      worst_skeleton = std::max(worst_skeleton, skeleton_residual(m));
      for (int f = 0; f <= k; ++f) {
        auto reduced = vs;
        reduced.erase(reduced.begin() + f);
        const PLMap direct = hybrid_simplex(reduced, 1);
        for (int j = 0; j < 20; ++j) {
          const auto s = random_barycentric(k - 1, rng);
          worst_face = std::max(worst_face, max_diff(eval(m, face_map(k, f)(s)), eval(direct, s)));
        }
      }
      const HPoint q = exp_center_of_gravity(vs);
      const auto centre = Barycentric::center(k).s;
      for (int j = 0; j < 20; ++j) {
        auto s = random_barycentric(k, rng).s;
        s[static_cast<std::size_t>(j % (k + 1))] = 0.0;
        double sum = 0.0;
        for (double v : s) { sum += v; }
        for (auto & v : s) { v /= sum; }
        const HPoint edge = eval(m, Barycentric(s));
        const double l = u(rng);
        std::vector<double> ray(s.size());
        for (std::size_t a = 0; a < s.size(); ++a) { ray[a] = l * s[a] + (1 - l) * centre[a]; }
        std::vector<double> w = log_map(mul(inv(q), edge)).coeffs;
        for (auto & c : w) { c *= l; }
        worst_cone = std::max(worst_cone, max_diff(eval(m, Barycentric(ray)), mul(q, exp_map({1, w}))));
      }
    }
  }
  p.require(worst_skeleton <= kExact, "skeleton residual");
  p.require(worst_face <= kExact, "shared faces");
  p.require(worst_cone <= kExact, "cone relation");
  char buf[160];
  std::snprintf(buf, sizeof buf, "3/4 sub-simplexes; skeleton %.3e, faces %.3e, cone %.3e (tol %.0e)", worst_skeleton,
                worst_face, worst_cone, kExact);
  return {p.ok, p.ok ? buf : p.why.str() + "; " + buf};
}

Outcome region()
{
  Probe p;
  Rng rng(1007);
  const TriangulationChain t = triangulate_region(1, 1.0, {0, 0, 0}, {2, 2, 2}, Builder::Straight);
  p.require(t.chain.size() == 48, "region chain term count");
  const Chain d = boundary(t.chain);
  p.require(d.size() == 48, "boundary term count " + std::to_string(d.size()));
  p.require(boundary(d).empty(), "dd != 0");
  double worst = 0.0;
  for (const auto & [s, c] : d.terms) {
    const PLMap m = build_simplex(s);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < 3; ++a) {
      for (double level : {0.0, 2.0}) {
        double dev = 0.0;
        for (int j = 0; j < 20; ++j) { dev = std::max(dev, std::abs(eval(m, random_barycentric(2, rng))[a] - level)); }
        for (const auto & v : s.vertices) { dev = std::max(dev, std::abs(v[a] - level)); }
        best = std::min(best, dev);
      }
    }
    worst = std::max(worst, best);
  }
  p.require(worst <= kSurface, "boundary term off the block surface");
  char buf[128];
  std::snprintf(buf, sizeof buf, "48 boundary terms, max distance to surface %.3e (tol %.0e)", worst, kSurface);
  return {p.ok, p.ok ? buf : p.why.str()};
}

}  // namespace

int main()
{
  struct Criterion
  {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
    {1, "square triangulation", 1.0, square},
    {2, "cube triangulation", 1.0, cube},
    {3, "increasing map counts", 5.0, factorial},
    {4, "chain complex", 0.0, chain_complex},
    {5, "equivariance", 30.0, equivariance},
    {6, "horizontality", 10.0, horizontality},
    {7, "straight vs affine", 10.0, straight_vs_affine},
    {8, "face restriction", 0.0, face_restriction},
    {9, "grid regularity", 0.0, grid_regularity},
    {10, "hybrid builder", 0.0, hybrid},
    {11, "region triangulation", 30.0, region},
  };
  int failures = 0;
  for (const auto & c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception & e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = o.ok;
    char timing[64];
    if (c.limit_s > 0.0) {
      std::snprintf(timing, sizeof timing, "%.3fs, limit %.0fs", secs, c.limit_s);
      ok = ok && secs < c.limit_s;
    } else {
      std::snprintf(timing, sizeof timing, "%.3fs", secs);
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << ": " << o.detail << " [" << timing
              << "]\n";
    failures += ok ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
