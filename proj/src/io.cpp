#include "orbihear/io.hpp"

#include <fstream>
#include <sstream>

#include "orbihear/error.hpp"
#include "orbihear/lattice.hpp"

namespace orbihear::io {

namespace {

using nlohmann::json;

Rational rational_from(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_number_float()) {
    try {
      return parse_rational(v.dump());
    } catch (const Error&) {
      return exact_rational(v.get<double>());
    }
  }
  throw Error(ErrorCode::ParseError, "expected a rational number, got " + v.dump());
}

template <typename Fn>
auto guarded(const char* what, Fn fn) {
  try {
    return fn();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

Eigen::VectorXd vector_from(const json& v) {
  const auto values = v.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

json polytope_to_json(const LabeledPolytope& p) {
  json facets = json::array();
  for (const auto& h : p.halfspaces()) {
    facets.push_back({{"normal", h.normal}, {"offset", format_rational(h.offset)}, {"label", h.label}});
  }
  return {{"dim", p.dim()}, {"facets", facets}};
}

LabeledPolytope polytope_from_json(const json& j) {
  return guarded("polytope", [&] {
    const int dim = j.at("dim").get<int>();
    std::vector<LabeledHalfspace> hs;
    for (const auto& f : j.at("facets")) {
      LabeledHalfspace h;
      h.normal = f.at("normal").get<IntVector>();
      if (static_cast<int>(h.normal.size()) != dim) throw Error(ErrorCode::ParseError, "normal length differs from dim");
      if (gcd_of(h.normal) != 1) throw Error(ErrorCode::ParseError, "normal " + f.at("normal").dump() + " is not primitive");
      h.offset = rational_from(f.at("offset"));
      h.label = f.contains("label") ? f.at("label").get<int>() : 1;
      hs.push_back(std::move(h));
    }
    return LabeledPolytope(dim, std::move(hs));
  });
}

json samples_to_json(const SpectralSamples& s, int dim, SumMode mode) {
  json entries = json::array();
  for (const auto& e : s.entries) {
    entries.push_back({{"direction", e.direction},
                       {"r_values", e.r_values},
                       {"coefficients", e.coefficients},
                       {"leading_t_exponent", e.leading_t_exponent}});
  }
  return {{"dim", dim}, {"mode", to_string(mode)}, {"entries", entries}};
}

SpectralSamples samples_from_json(const json& j) {
  return guarded("samples", [&] {
    SpectralSamples s;
    for (const auto& e : j.at("entries")) {
      SampleEntry entry;
      entry.direction = e.at("direction").get<IntVector>();
      entry.r_values = e.at("r_values").get<std::vector<double>>();
      entry.coefficients = e.at("coefficients").get<std::vector<double>>();
      entry.leading_t_exponent = e.at("leading_t_exponent").get<int>();
      if (entry.r_values.size() != entry.coefficients.size()) {
        throw Error(ErrorCode::ParseError, "r_values and coefficients differ in length");
      }
      s.entries.push_back(std::move(entry));
    }
    return s;
  });
}

MinkowskiInput minkowski_from_json(const json& j) {
  return guarded("minkowski input", [&] {
    MinkowskiInput in;
    for (const auto& u : j.at("normals")) {
      Eigen::VectorXd v = vector_from(u);
      if (v.norm() == 0.0) throw Error(ErrorCode::ZeroVector, "zero normal");
      in.normals.push_back(v.normalized());
    }
    in.volumes = j.at("volumes").get<std::vector<double>>();
    return in;
  });
}

CurvatureIntegrals integrals_from_json(const json& j) {
  return guarded("curvature integrals", [&] {
    CurvatureIntegrals d;
    d.n = j.at("n").get<int>();
    d.vol = j.at("vol").get<double>();
    d.int_c1sq = j.value("int_c1sq", 0.0);
    d.int_c2 = j.value("int_c2", 0.0);
    d.c1_omega = j.value("c1_omega", 0.0);
    if (j.contains("b2_total") && !j.at("b2_total").is_null()) d.b2_total = j.at("b2_total").get<double>();
    if (j.contains("int_s_sq") && !j.at("int_s_sq").is_null()) d.int_s_sq = j.at("int_s_sq").get<double>();
    return d;
  });
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
  return guarded("json", [&] { return json::parse(in); });
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace orbihear::io
