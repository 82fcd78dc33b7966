#ifndef HEISTRI__TOOLS__HEISTRI_CLI_HPP_
#define HEISTRI__TOOLS__HEISTRI_CLI_HPP_

// Command-line front end. Exit codes: 0 success, 1 invariant failure,
// 2 usage or validation error. Data goes to stdout (or --out), diagnostics to stderr.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "heistri/heistri.hpp"

namespace heistri::cli {

inline constexpr int kOk = 0;
inline constexpr int kInvariantFailure = 1;
inline constexpr int kUsage = 2;

inline std::vector<std::string> split_csv(const std::string & s)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) { out.push_back(item); }
  if (!s.empty() && s.back() == ',') { out.emplace_back(); }
  return out;
}

inline std::vector<double> parse_reals(const std::string & s)
{
  std::vector<double> out;
  for (const auto & tok : split_csv(s)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception &) {
      throw Error("not a decimal number: '" + tok + "'");
    }
    if (used != tok.size() || !std::isfinite(v)) { throw Error("not a decimal number: '" + tok + "'"); }
    out.push_back(v);
  }
  return out;
}

inline std::vector<std::int64_t> parse_integers(const std::string & s)
{
  std::vector<std::int64_t> out;
  for (const auto & tok : split_csv(s)) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception &) {
      throw Error("not an integer: '" + tok + "'");
    }
    if (used != tok.size()) { throw Error("not an integer: '" + tok + "'"); }
    out.push_back(v);
  }
  return out;
}

inline HPoint parse_point(int n, const std::string & s) { return {n, parse_reals(s)}; }

inline json read_json_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) { throw Error("cannot open '" + path + "'"); }
  try {
    return json::parse(in);
  } catch (const json::exception & e) {
    throw Error("malformed JSON in '" + path + "': " + e.what());
  }
}

inline void emit(const std::string & text, const std::string & out_path, std::ostream & out)
{
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) { throw Error("cannot write '" + out_path + "'"); }
  f << text;
}

struct CliConfig
{
  int n{1};
  double eps{1.0};
  std::string cube;
  std::vector<std::string> box;
  std::string axes;
  std::string builder{"straight"};
  std::string out_path;
  std::string format{"json"};
  int samples{1};
  double tol{1e-12};
  std::optional<unsigned> seed;
  bool with_cells{false};
  bool subfaces{false};
  bool json_report{false};
  std::string input;
  std::string from;
  std::string to;
  std::vector<std::string> vertices;
  std::vector<std::string> evals;
};

inline int cmd_triangulate(const CliConfig & cfg, std::ostream & out)
{
  const Builder b = builder_from_string(cfg.builder);
  const bool has_cube = !cfg.cube.empty();
  const bool has_box = !cfg.box.empty();
  if (has_cube == has_box) { throw Error("triangulate needs exactly one of --cube or --box"); }
  TriangulationChain t;
  if (has_cube) {
    const auto base = parse_integers(cfg.cube);
    const Cube cube(cfg.n, base, cfg.eps);
    std::vector<std::size_t> axes;
    if (cfg.axes.empty()) {
      for (std::size_t i = 0; i < cube.dim(); ++i) { axes.push_back(i); }
    } else {
      for (auto a : parse_integers(cfg.axes)) {
        if (a < 1 || a > static_cast<std::int64_t>(cube.dim())) { throw Error("--axes entries must lie in 1..2n+1"); }
        axes.push_back(static_cast<std::size_t>(a - 1));
      }
    }
    t = triangulate_cube(lattice_corners(cfg.n, cfg.eps, base, axes), b);
  } else {
    if (!cfg.axes.empty()) { throw Error("--axes only applies to --cube"); }
    if (cfg.box.size() != 2) { throw Error("--box needs two corners"); }
    t = triangulate_region(cfg.n, cfg.eps, parse_integers(cfg.box[0]), parse_integers(cfg.box[1]), b, thread_cap_from_env());
  }
  std::map<SimplexDescriptor, PLMap> maps;
  if (cfg.with_cells) {
    for (const auto & [d, c] : t.chain.terms) { maps.emplace(d, build_simplex(d)); }
  }
  emit(to_json(t.chain, cfg.with_cells ? &maps : nullptr).dump(2) + "\n", cfg.out_path, out);
  return kOk;
}

inline int cmd_boundary(const CliConfig & cfg, std::ostream & out)
{
  const Chain c = chain_from_json(read_json_file(cfg.input));
  if (c.k < 1) { throw Error("boundary needs a chain of degree at least 1"); }
  emit(to_json(boundary(c)).dump(2) + "\n", cfg.out_path, out);
  return kOk;
}

inline int cmd_check(const CliConfig & cfg, std::ostream & out)
{
  const ChainFile f = chain_file_from_json(read_json_file(cfg.input));
  CheckOptions opt;
  opt.tol = cfg.tol;
  opt.seed = cfg.seed;
  const auto results = run_checks(f, opt);
  std::ostringstream os;
  if (cfg.json_report) {
    json arr = json::array();
    for (const auto & r : results) {
      arr.push_back({{"check", r.name}, {"passed", r.passed}, {"residual", r.residual}, {"detail", r.detail}});
    }
    os << json{{"passed", all_passed(results)}, {"checks", arr}}.dump(2) << "\n";
  } else {
    os.precision(3);
    for (const auto & r : results) {
      os << (r.passed ? "PASS " : "FAIL ") << r.name << " residual=" << std::scientific << r.residual;
      if (!r.detail.empty()) { os << " (" << r.detail << ")"; }
      os << "\n";
    }
  }
  emit(os.str(), cfg.out_path, out);
  return all_passed(results) ? kOk : kInvariantFailure;
}

inline int cmd_regularity(const CliConfig & cfg, std::ostream & out)
{
  if (cfg.cube.empty()) { throw Error("regularity needs --cube"); }
  const Cube cube(cfg.n, parse_integers(cfg.cube), cfg.eps);
  json arr = json::array();
  for (const auto & f : faces(cube)) {
    arr.push_back(to_json(f, face_regularity(f)));
    if (cfg.subfaces) {
      for (const auto & s : subfaces(f)) { arr.push_back(to_json(s, subface_regularity(s))); }
    }
  }
  emit(arr.dump(2) + "\n", cfg.out_path, out);
  return kOk;
}

inline int cmd_hpath(const CliConfig & cfg, std::ostream & out)
{
  if (cfg.from.empty() || cfg.to.empty()) { throw Error("hpath needs --from and --to"); }
  const PLMap m = horizontal_path(parse_point(cfg.n, cfg.from), parse_point(cfg.n, cfg.to));
  ChainFile f;
  f.chain = single_term_chain(m.descriptor);
  f.maps.emplace(m.descriptor, m);
  emit(to_json(f).dump(2) + "\n", cfg.out_path, out);
  return kOk;
}

inline int cmd_export(const CliConfig & cfg, std::ostream & out)
{
  const ChainFile f = chain_file_from_json(read_json_file(cfg.input));
  emit(export_mesh(f.chain, mesh_format_from_string(cfg.format), cfg.samples, &f.maps), cfg.out_path, out);
  return kOk;
}

inline int cmd_simplex(const CliConfig & cfg, std::ostream & out)
{
  if (cfg.vertices.empty()) { throw Error("simplex needs at least one --vertex"); }
  std::vector<HPoint> vs;
  for (const auto & v : cfg.vertices) { vs.push_back(parse_point(cfg.n, v)); }
  const PLMap m = build_simplex(SimplexDescriptor(builder_from_string(cfg.builder), cfg.n, vs));
  if (!cfg.evals.empty()) {
    json arr = json::array();
    for (const auto & e : cfg.evals) {
      const Barycentric s(parse_reals(e));
      arr.push_back({{"s", s.s}, {"point", to_json(eval(m, s))}});
    }
    emit(arr.dump(2) + "\n", cfg.out_path, out);
    return kOk;
  }
  ChainFile f;
  f.chain = single_term_chain(m.descriptor);
  f.maps.emplace(m.descriptor, m);
  emit(to_json(f).dump(2) + "\n", cfg.out_path, out);
  return kOk;
}

/// Runs the CLI on argv-style arguments (without the program name).
inline int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"heistri: Heisenberg group triangulations"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto add_common = [&](CLI::App * sub) {
    sub->add_option("--n", cfg.n, "group index n of H^n")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
  };

  auto * tri = app.add_subcommand("triangulate", "triangulate a lattice cube or a box of cubes");
  add_common(tri);
  tri->add_option("--eps", cfg.eps, "cube side length");
  tri->add_option("--cube", cfg.cube, "integer base of one cube, comma separated");
  tri->add_option("--box", cfg.box, "integer corners lo hi of a box of cubes")->expected(2);
  tri->add_option("--axes", cfg.axes, "1-based axes spanning a lower-dimensional lattice face (with --cube)");
  tri->add_option("--builder", cfg.builder, "affine | straight | hybrid");
  tri->add_flag("--with-cells", cfg.with_cells, "embed the PL cells of every term");

  auto * bnd = app.add_subcommand("boundary", "boundary of a chain file");
  bnd->add_option("chain", cfg.input, "chain JSON")->required();
  bnd->add_option("--out", cfg.out_path, "output file (default stdout)");

  auto * chk = app.add_subcommand("check", "run the invariant suite on a chain file");
  chk->add_option("chain", cfg.input, "chain JSON")->required();
  chk->add_option("--tol", cfg.tol, "tolerance for exactness checks");
  chk->add_option("--seed", cfg.seed, "seed for randomized equivariance probes");
  chk->add_flag("--json", cfg.json_report, "JSON report");
  chk->add_option("--out", cfg.out_path, "output file (default stdout)");

  auto * reg = app.add_subcommand("regularity", "classify the faces of a lattice cube");
  add_common(reg);
  reg->add_option("--eps", cfg.eps, "cube side length");
  reg->add_option("--cube", cfg.cube, "integer base of the cube")->required();
  reg->add_flag("--subfaces", cfg.subfaces, "also classify subfaces (n > 1)");

  auto * hp = app.add_subcommand("hpath", "horizontal PL path between two points");
  add_common(hp);
  hp->add_option("--from", cfg.from, "start point, comma separated")->required();
  hp->add_option("--to", cfg.to, "end point, comma separated")->required();

  auto * ex = app.add_subcommand("export", "export a chain as OBJ, VTK or JSON");
  ex->add_option("chain", cfg.input, "chain JSON")->required();
  ex->add_option("--format", cfg.format, "obj | vtk | json");
  ex->add_option("--samples", cfg.samples, "samples per edge")->check(CLI::PositiveNumber);
  ex->add_option("--out", cfg.out_path, "output file (default stdout)");

  auto * sx = app.add_subcommand("simplex", "build one simplex and optionally evaluate it");
  add_common(sx);
  sx->add_option("--builder", cfg.builder, "affine | straight | horizontal_path | hybrid");
  sx->add_option("--vertex", cfg.vertices, "vertex, comma separated (repeat k+1 times)");
  sx->add_option("--eval", cfg.evals, "barycentric point to evaluate (repeatable)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (tri->parsed()) { return cmd_triangulate(cfg, out); }
    if (bnd->parsed()) { return cmd_boundary(cfg, out); }
    if (chk->parsed()) { return cmd_check(cfg, out); }
    if (reg->parsed()) { return cmd_regularity(cfg, out); }
    if (hp->parsed()) { return cmd_hpath(cfg, out); }
    if (ex->parsed()) { return cmd_export(cfg, out); }
    if (sx->parsed()) { return cmd_simplex(cfg, out); }
  } catch (const std::exception & e) {
    err << "heistri: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace heistri::cli

#endif  // HEISTRI__TOOLS__HEISTRI_CLI_HPP_
