#include "entropylab/io.hpp"

#include <charconv>
#include <cmath>

#include "entropylab/error.hpp"
#include "entropylab/meter.hpp"
#include "entropylab/solvers.hpp"
#include "entropylab/waves.hpp"

namespace entropylab {

using nlohmann::json;

json fun_to_json(const ConvexFun& fun) {
  if (fun.is_exact()) {
    json pieces = json::array();
    for (const auto& p : fun.pieces()) pieces.push_back({p.a, p.c, p.d});
    json out{{"kind", "quadratic_pieces"}, {"breakpoints", fun.breakpoints()}, {"pieces", pieces}};
    if (!fun.name().empty() && fun.name() != "quadratic_pieces") out["name"] = fun.name();
    return out;
  }
  json out{{"kind", "named"}, {"name", fun.name()}};
  const auto& d = fun.descriptor();
  if (fun.name() == "power") out["alpha"] = d.exponent;
  if (fun.name() == "sublinear" && d.correction) out["tilde"] = *d.correction;
  return out;
}

namespace {

double number_field(const json& spec, const char* key) {
  if (!spec.contains(key) || !spec[key].is_number()) {
    throw Error(ErrorCode::InvalidArgument, std::string("function spec: '") + key + "' must be a number");
  }
  return spec[key].get<double>();
}

}  // namespace

ConvexFun fun_from_json(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string()) {
    throw Error(ErrorCode::InvalidArgument, "function spec: 'kind' must be a string");
  }
  const auto kind = spec["kind"].get<std::string>();
  if (kind == "quadratic_pieces") {
    if (!spec.contains("pieces") || !spec["pieces"].is_array()) {
      throw Error(ErrorCode::InvalidArgument, "function spec: 'pieces' must be an array");
    }
    std::vector<double> breakpoints;
    if (spec.contains("breakpoints")) {
      if (!spec["breakpoints"].is_array()) {
        throw Error(ErrorCode::InvalidArgument, "function spec: 'breakpoints' must be an array");
      }
      for (const auto& b : spec["breakpoints"]) {
        if (!b.is_number()) throw Error(ErrorCode::InvalidArgument, "function spec: breakpoints must be numbers");
        breakpoints.push_back(b.get<double>());
      }
    }
    std::vector<QuadPiece> pieces;
    std::size_t index = 0;
    for (const auto& p : spec["pieces"]) {
      if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() || !p[2].is_number()) {
        throw Error(ErrorCode::InvalidArgument,
                    "function spec: piece " + std::to_string(index) + " must be [a, c, d]");
      }
      pieces.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
      ++index;
    }
    return ConvexFun::quadratic_pieces(std::move(breakpoints), std::move(pieces));
  }
  if (kind != "named") throw Error(ErrorCode::InvalidArgument, "function spec: unknown kind '" + kind + "'");
  if (!spec.contains("name") || !spec["name"].is_string()) {
    throw Error(ErrorCode::InvalidArgument, "function spec: 'name' must be a string");
  }
  const auto name = spec["name"].get<std::string>();
  if (name == "burgers") return ConvexFun::burgers();
  if (name == "abs") return ConvexFun::absolute();
  if (name == "flat") return ConvexFun::flat();
  if (name == "exp") return ConvexFun::exponential();
  if (name == "log_entropy") return ConvexFun::log_entropy();
  if (name == "quadratic") return ConvexFun::quadratic(number_field(spec, "curvature"));
  if (name == "power") return ConvexFun::power(number_field(spec, "alpha"));
  if (name == "sublinear") return ConvexFun::sublinear(number_field(spec, "tilde"));
  throw Error(ErrorCode::InvalidArgument, "function spec: unknown name '" + name + "'");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json fan_to_json(const WaveFan& fan) {
  json waves = json::array();
  for (const auto& w : fan.waves) {
    json j{{"type", std::string(to_string(w.type))}, {"states", {w.state_left, w.state_right}}};
    if (w.is_jump()) {
      j["speed"] = w.speed_lo;
    } else {
      j["range"] = {w.speed_lo, w.speed_hi};
    }
    waves.push_back(std::move(j));
  }
  return json{{"left", fan.left}, {"right", fan.right}, {"x0", fan.x0}, {"waves", waves},
              {"admissible", fan.admissible}};
}

std::string solution_csv(const GridSolution& sol) {
  std::string out = sol.has_w() ? "t,x,u,w\n" : "t,x,u\n";
  for (std::size_t n = 0; n < sol.t.size(); ++n) {
    const std::string t = format_number(sol.t[n]);
    for (std::size_t i = 0; i < sol.nx; ++i) {
      out += t;
      out += ',';
      out += format_number(sol.x_center(i));
      out += ',';
      out += format_number(sol.u[n][i]);
      if (sol.has_w()) {
        out += ',';
        out += format_number(0.5 * (sol.w[n][i] + sol.w[n][i + 1]));
      }
      out += '\n';
    }
  }
  return out;
}

std::string diagnostics_csv(const std::vector<BallDiagnostic>& balls) {
  std::string out = "t_bar,x_bar,r,mu_over_r\n";
  for (const auto& b : balls) {
    for (std::size_t k = 0; k < b.radii.size(); ++k) {
      out += format_number(b.t_bar) + ',' + format_number(b.x_bar) + ',' + format_number(b.radii[k]) +
             ',' + format_number(b.values[k]) + '\n';
    }
  }
  return out;
}

}  // namespace entropylab
