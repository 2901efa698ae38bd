// orbihear command-line front end.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbihear/csc.hpp"
#include "orbihear/error.hpp"
#include "orbihear/football.hpp"
#include "orbihear/generators.hpp"
#include "orbihear/heat.hpp"
#include "orbihear/inversion.hpp"
#include "orbihear/io.hpp"
#include "orbihear/lattice.hpp"
#include "orbihear/minkowski.hpp"
#include "orbihear/polytope.hpp"

using namespace orbihear;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

IntVector parse_direction(const std::string& text) {
  IntVector out;
  for (const auto& part : split(text, ',')) {
    try {
      out.push_back(std::stoll(part));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad direction component '" + part + "'");
    }
  }
  return out;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    try {
      out.push_back(std::stod(part));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad number '" + part + "'");
    }
  }
  return out;
}

std::string join(const std::vector<int>& ids, char sep = ' ') {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(ids[i]);
  }
  return s;
}

std::string join(const IntVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v[i]);
  }
  return s;
}

void emit(const nlohmann::json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    io::write_json(out, j);
  }
}

bool parallel(const IntVector& a, const IntVector& b) {
  return unsigned_direction(primitive(a)) == unsigned_direction(primitive(b));
}

// Unsigned facet normals plus `count` probe directions parallel to none of them.
std::vector<IntVector> probe_directions(const LabeledPolytope& p, int count) {
  std::vector<IntVector> dirs;
  for (const auto& h : p.halfspaces()) dirs.push_back(unsigned_direction(h.normal));
  const std::vector<IntVector> candidates =
      p.dim() == 2 ? std::vector<IntVector>{{1, 3}, {3, -1}, {2, 5}, {5, -2}, {4, 7}, {7, -4}}
                   : std::vector<IntVector>{{1, 3, 7}, {5, -2, 3}, {2, 7, -5}, {7, 1, 4}, {3, -5, 8}, {8, 3, -1}};
  int added = 0;
  for (const auto& c : candidates) {
    if (added == count) break;
    if (static_cast<int>(c.size()) != p.dim()) continue;
    bool clash = false;
    for (const auto& h : p.halfspaces()) clash = clash || parallel(h.normal, c);
    if (clash) continue;
    dirs.push_back(c);
    ++added;
  }
  return dirs;
}

int run_validate(const std::string& path) {
  const auto p = io::polytope_from_json(io::read_json(path));
  const auto report = validate_rational_simple(p);
  if (report.pass) {
    std::cout << "rational simple: pass\n";
    std::cout << "parallel facets: " << (has_parallel_facets(p) ? "yes" : "no") << '\n';
    const auto sub = has_subpolytopes(facet_fingerprint(p));
    std::cout << "subpolytope: " << (sub ? "{" + join(*sub, ',') + "}" : "none") << '\n';
    return 0;
  }
  std::cout << "rational simple: fail\n";
  for (const auto& v : report.violations) std::cout << "  clause " << v.clause << ": " << v.detail << '\n';
  return 1;
}

std::vector<int> codims_for(const LabeledPolytope& p, std::optional<int> codim) {
  std::vector<int> out;
  if (codim) {
    out.push_back(*codim);
  } else {
    for (int q = 1; q <= p.dim(); ++q) out.push_back(q);
  }
  return out;
}

int run_faces(const std::string& path, std::optional<int> codim) {
  const auto p = io::polytope_from_json(io::read_json(path));
  std::cout << "codim,tight_set,volume,vertices\n";
  for (int q : codims_for(p, codim)) {
    for (const auto& f : faces(p, q)) {
      std::string verts;
      for (std::size_t i = 0; i < f.vertices.size(); ++i) {
        if (i) verts += ' ';
        verts += "(";
        for (std::size_t k = 0; k < f.vertices[i].size(); ++k) {
          if (k) verts += ' ';
          verts += format_rational(f.vertices[i][k]);
        }
        verts += ")";
      }
      std::cout << f.codim << ",{" << join(f.tight_set) << "}," << num(face_volume(p, f)) << "," << verts << '\n';
    }
  }
  return 0;
}

int run_isotropy(const std::string& path, std::optional<int> codim) {
  const auto p = io::polytope_from_json(io::read_json(path));
  std::cout << "codim,tight_set,invariant_factors,order\n";
  for (int q : codims_for(p, codim)) {
    for (const auto& f : faces(p, q)) {
      const auto g = isotropy_group(p, f);
      std::string factors;
      for (std::size_t i = 0; i < g.invariant_factors.size(); ++i) {
        if (i) factors += ' ';
        factors += g.invariant_factors[i].str();
      }
      std::cout << f.codim << ",{" << join(f.tight_set) << "}," << factors << "," << g.order().str() << '\n';
    }
  }
  return 0;
}

struct ForwardArgs {
  std::string input;
  std::vector<std::string> directions;
  std::string r_values;
  std::string mode = "inclusive";
  std::string out;
  std::string samples;
  int omega_max = kDefaultOmegaMax;
};

int run_forward(const ForwardArgs& a) {
  const auto p = io::polytope_from_json(io::read_json(a.input));
  const SumMode mode = parse_sum_mode(a.mode);
  std::vector<IntVector> dirs;
  for (const auto& d : a.directions) dirs.push_back(parse_direction(d));
  if (dirs.empty()) dirs = probe_directions(p, 2);
  const std::vector<double> grid = a.r_values.empty() ? default_r_grid(16, a.omega_max) : parse_reals(a.r_values);

  if (!a.samples.empty()) {
    io::write_json(a.samples, io::samples_to_json(synthesize_spectral_samples(p, dirs, grid, mode), p.dim(), mode));
  }
  std::ostringstream csv;
  csv << "direction,r,t_exponent,coefficient,source_face,model\n";
  for (const auto& d : dirs) {
    const ExpansionPlan plan(p, d);
    for (double r : grid) {
      for (const auto& term : plan.evaluate(r, mode).terms) {
        csv << join(d) << ',' << num(r) << ',' << term.t_exponent << ',' << num(term.coefficient) << ",{"
            << join(term.source) << "}," << (term.model ? 1 : 0) << '\n';
      }
    }
  }
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream(a.out) << csv.str();
  }
  return 0;
}

int run_invert(const std::string& input, int omega_max, const std::string& mode_text, double tol,
               const std::string& prefix) {
  const auto j = io::read_json(input);
  const auto samples = io::samples_from_json(j);
  const int dim = j.at("dim").get<int>();
  ReconstructionOptions opts;
  opts.omega_max = omega_max;
  opts.mode = parse_sum_mode(j.contains("mode") && mode_text.empty() ? j.at("mode").get<std::string>()
                                                                     : (mode_text.empty() ? "inclusive" : mode_text));
  opts.tol = tol;
  const auto [plus, minus] = reconstruct_pipeline(samples, dim, opts);
  io::write_json(prefix + "_plus.json", io::polytope_to_json(plus));
  io::write_json(prefix + "_minus.json", io::polytope_to_json(minus));
  std::cout << "facets: " << plus.size() << '\n';
  std::cout << "wrote " << prefix << "_plus.json and " << prefix << "_minus.json\n";
  return 0;
}

int run_minkowski(const std::string& input, double tol, const std::string& out) {
  const auto j = io::read_json(input);
  const MinkowskiInput in = io::minkowski_from_json(j);
  MinkowskiOptions opts;
  opts.tol = tol;
  const auto sol = reconstruct_nd(in, opts);

  // Integer input normals give a labeled polytope; otherwise report real offsets.
  bool integral = true;
  std::vector<IntVector> int_normals;
  for (const auto& u : j.at("normals")) {
    IntVector v;
    for (const auto& x : u) {
      if (!x.is_number_integer()) integral = false;
      v.push_back(x.is_number_integer() ? x.get<std::int64_t>() : 0);
    }
    int_normals.push_back(std::move(v));
  }
  nlohmann::json result;
  if (integral) {
    std::vector<LabeledHalfspace> hs;
    for (std::size_t i = 0; i < int_normals.size(); ++i) {
      const IntVector prim = primitive(int_normals[i]);
      const double length = to_double(prim).norm();
      hs.push_back(LabeledHalfspace{prim, approximate_rational(sol.offsets[i] * length), 1});
    }
    result = io::polytope_to_json(LabeledPolytope(in.dim(), std::move(hs)));
  } else {
    nlohmann::json normals = nlohmann::json::array();
    for (const auto& u : in.normals) normals.push_back(std::vector<double>(u.data(), u.data() + u.size()));
    result = {{"dim", in.dim()}, {"normals", normals}, {"offsets", sol.offsets}};
  }
  result["iterations"] = sol.iterations;
  result["max_relative_error"] = sol.max_relative_error;
  emit(result, out);
  return 0;
}

struct FootballArgs {
  int p = 1;
  double alpha = 0.0;
  std::optional<double> tmin;
  std::optional<double> tmax;
  int points = 16;
  std::string mode = "inclusive";
};

int run_football(const FootballArgs& a) {
  const SumMode mode = parse_sum_mode(a.mode);
  auto [lo, hi] = suggested_t_window(a.p, a.alpha);
  if (a.tmin && !a.tmax) hi = std::max(hi, 10.0 * *a.tmin);
  if (a.tmax && !a.tmin) lo = std::min(lo, *a.tmax / 20.0);
  if (a.tmin) lo = *a.tmin;
  if (a.tmax) hi = *a.tmax;
  const auto prediction = asymptotic_prediction(a.p, a.alpha, mode);
  const auto samples = football_trace_samples(a.p, a.alpha, lo, hi, a.points);
  std::cout << "t,exact_trace,prediction\n";
  for (const auto& [t, trace] : samples) {
    const double predicted = prediction.constant + (prediction.leading ? *prediction.leading / t : 0.0);
    std::cout << num(t) << ',' << num(trace) << ',' << num(predicted) << '\n';
  }
  const auto fit = extrapolate_constant_term(samples);
  std::cout << "# c_minus1=" << num(fit.c_minus1) << " c0=" << num(fit.c0) << " c1=" << num(fit.c1)
            << " predicted_c0=" << num(prediction.constant) << " condition=" << num(fit.condition_number) << '\n';
  return 0;
}

int run_csc(const std::string& input, double tol) {
  const auto d = io::integrals_from_json(io::read_json(input));
  const auto r = is_csc(d, tol);
  std::cout << "csc: " << (r.is_csc ? "true" : "false") << '\n';
  std::cout << "s_bar: " << num(r.s_bar) << '\n';
  std::cout << "int_s_sq: " << num(r.int_s_sq) << '\n';
  std::cout << "int_rho_sq: " << num(r.rho_sq) << '\n';
  std::cout << "int_R_sq: " << num(r.R_sq) << '\n';
  std::cout << "calabi: " << num(r.calabi) << (r.calabi_negative ? " (negative: inconsistent inputs)" : "") << '\n';
  return 0;
}

struct RoundtripArgs {
  std::uint64_t seed = 7;
  int n = 2;
  int facets = 5;
  int max_label = 5;
  int omega_max = kDefaultOmegaMax;
  std::string mode = "inclusive";
  std::string out;
};

int run_roundtrip(const RoundtripArgs& a) {
  std::mt19937_64 rng(a.seed);
  const auto p = random_generic_polytope(a.n, a.facets, a.facets, std::min(a.max_label, a.omega_max), rng);
  const SumMode mode = parse_sum_mode(a.mode);
  const auto grid = default_r_grid(16, a.omega_max);
  const auto samples = synthesize_spectral_samples(p, probe_directions(p, 2), grid, mode);
  ReconstructionOptions opts;
  opts.omega_max = a.omega_max;
  opts.mode = mode;
  const auto [plus, minus] = reconstruct_pipeline(samples, a.n, opts);
  const double d_plus = vertex_hausdorff(plus, p);
  const double d_minus = vertex_hausdorff(minus, p);
  const bool use_plus = d_plus <= d_minus;
  const bool labels = equal_up_to_translation(use_plus ? plus : minus, p, 1e-6);
  const double distance = std::min(d_plus, d_minus);
  if (!a.out.empty()) io::write_json(a.out, io::polytope_to_json(p));
  std::cout << "facets: " << p.size() << '\n';
  std::cout << "hausdorff: " << num(distance) << '\n';
  std::cout << "labels: " << (labels ? "match" : "mismatch") << '\n';
  const bool pass = distance < 1e-6 && labels;
  std::cout << "roundtrip: " << (pass ? "pass" : "fail") << '\n';
  return pass ? 0 : 1;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonConvergence:
    case ErrorCode::EmptyIntermediate:
    case ErrorCode::PerturbationFailed:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant heat invariants and spectral reconstruction of labeled polytopes"};
  app.require_subcommand(1);

  std::string input;
  std::optional<int> codim;
  std::string out;
  double tol = 1e-10;
  int omega_max = kDefaultOmegaMax;
  std::string mode;

  auto* validate = app.add_subcommand("validate", "check that a polytope file is rational simple");
  validate->add_option("polytope", input, "polytope JSON")->required()->check(CLI::ExistingFile);

  auto* faces_cmd = app.add_subcommand("faces", "list faces with volumes");
  faces_cmd->add_option("polytope", input, "polytope JSON")->required()->check(CLI::ExistingFile);
  faces_cmd->add_option("--codim", codim, "only this codimension");

  auto* isotropy = app.add_subcommand("isotropy", "isotropy group of every face");
  isotropy->add_option("polytope", input, "polytope JSON")->required()->check(CLI::ExistingFile);
  isotropy->add_option("--codim", codim, "only this codimension");

  ForwardArgs fa;
  auto* forward = app.add_subcommand("forward", "leading heat-trace terms along directions");
  forward->add_option("polytope", fa.input, "polytope JSON")->required()->check(CLI::ExistingFile);
  forward->add_option("--direction", fa.directions, "integer direction, e.g. 1,0 (repeatable)");
  forward->add_option("--r", fa.r_values, "comma-separated r values (default: 16-point grid)");
  forward->add_option("--mode", fa.mode, "inclusive or exclusive");
  forward->add_option("--omega-max", fa.omega_max, "largest label avoided by the default grid");
  forward->add_option("--out", fa.out, "CSV output file (default stdout)");
  forward->add_option("--samples", fa.samples, "also write spectral samples JSON for `invert`");

  std::string prefix = "reconstructed";
  auto* invert = app.add_subcommand("invert", "reconstruct a labeled polytope from spectral samples");
  invert->add_option("samples", input, "samples JSON")->required()->check(CLI::ExistingFile);
  invert->add_option("--omega-max", omega_max, "largest label tried");
  invert->add_option("--mode", mode, "inclusive or exclusive (default: file's mode)");
  invert->add_option("--tol", tol, "Minkowski volume tolerance")->check(CLI::PositiveNumber);
  invert->add_option("--out", prefix, "output prefix; writes <prefix>_plus.json and <prefix>_minus.json");

  auto* minkowski = app.add_subcommand("minkowski", "polytope from facet normals and volumes");
  minkowski->add_option("input", input, "normals/volumes JSON")->required()->check(CLI::ExistingFile);
  minkowski->add_option("--tol", tol, "relative volume tolerance")->check(CLI::PositiveNumber);
  minkowski->add_option("--out", out, "output file (default stdout)");

  FootballArgs fb;
  auto* football = app.add_subcommand("football", "exact (p,p)-football traces against the prediction");
  football->add_option("--p", fb.p, "orbifold order")->check(CLI::PositiveNumber);
  football->add_option("--alpha", fb.alpha, "rotation angle (0 for the identity)");
  football->add_option("--tmin", fb.tmin, "smallest t")->check(CLI::PositiveNumber);
  football->add_option("--tmax", fb.tmax, "largest t")->check(CLI::PositiveNumber);
  football->add_option("--points", fb.points, "number of t samples");
  football->add_option("--mode", fb.mode, "inclusive or exclusive prediction");

  double csc_tol = 1e-9;
  auto* csc = app.add_subcommand("csc", "constant scalar curvature test from curvature integrals");
  csc->add_option("integrals", input, "curvature integrals JSON")->required()->check(CLI::ExistingFile);
  csc->add_option("--tol", csc_tol, "relative tolerance")->check(CLI::NonNegativeNumber);

  RoundtripArgs rt;
  auto* roundtrip = app.add_subcommand("roundtrip", "random polytope -> samples -> reconstruction");
  roundtrip->add_option("--seed", rt.seed, "random seed");
  roundtrip->add_option("--n", rt.n, "dimension (2 or 3)");
  roundtrip->add_option("--facets", rt.facets, "facet count");
  roundtrip->add_option("--labels", rt.max_label, "largest label");
  roundtrip->add_option("--omega-max", rt.omega_max, "largest label tried by the fit");
  roundtrip->add_option("--mode", rt.mode, "inclusive or exclusive");
  roundtrip->add_option("--out", rt.out, "write the generated polytope here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*validate) return run_validate(input);
    if (*faces_cmd) return run_faces(input, codim);
    if (*isotropy) return run_isotropy(input, codim);
    if (*forward) return run_forward(fa);
    if (*invert) return run_invert(input, omega_max, mode, tol, prefix);
    if (*minkowski) return run_minkowski(input, tol, out);
    if (*football) return run_football(fb);
    if (*csc) return run_csc(input, csc_tol);
    if (*roundtrip) return run_roundtrip(rt);
  } catch (const Error& e) {
    std::string message = e.what();
    const std::string prefix = std::string(to_string(e.code())) + ": ";
    if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
    std::cerr << "error[" << to_string(e.code()) << "]: " << message << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error[InvalidInput]: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
