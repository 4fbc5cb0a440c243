#pragma once

// File formats: JSON curve files ("samples" | "classified"), CSV exports for
// samples / portraits / meshes, OBJ meshes with an R^4 sidecar. Numbers are
// serialized with 17 significant digits so doubles round-trip bit-exactly.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sympcurve/classify.hpp"
#include "sympcurve/curve.hpp"
#include "sympcurve/portrait.hpp"
#include "sympcurve/torus.hpp"

namespace sympcurve {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::pair<int, int> line_col_of(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_col_of(text, e.byte > 0 ? e.byte - 1 : 0);
    throw parse_error(e.what(), line, col);
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw io_error("write to '" + path + "' failed");
}

}  // namespace detail

struct loaded_curve {
  curve c;
  std::optional<class_case> classified;
};

inline loaded_curve curve_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw parse_error("curve file must be an object with a \"kind\" field", 1, 1);
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "samples") {
    for (auto& [key, _] : j.items())
      if (key != "kind" && key != "t0" && key != "h" && key != "points")
        throw parse_error("unknown key '" + key + "' in samples curve", 1, 1);
    double t0 = j.at("t0").get<double>();
    double h = j.at("h").get<double>();
    std::vector<vec4> pts;
    for (const auto& row : j.at("points")) {
      if (!row.is_array() || row.size() != 4)
        throw parse_error("each point must be [x1, x2, x3, x4]", 1, 1);
      pts.push_back({row[0].get<double>(), row[1].get<double>(),
                     row[2].get<double>(), row[3].get<double>()});
    }
    return {curve::from_samples(t0, h, std::move(pts)), std::nullopt};
  }
  if (kind == "classified") {
    for (auto& [key, _] : j.items())
      if (key != "kind" && key != "case" && key != "mu" && key != "nu")
        throw parse_error("unknown key '" + key + "' in classified curve", 1, 1);
    class_case c;
    c.tag = parse_case_tag(j.at("case").get<std::string>());
    c.mu = j.value("mu", 0.0);
    c.nu = j.value("nu", 0.0);
    return {generate(c), c};
  }
  throw parse_error("unknown curve kind '" + kind + "'", 1, 1);
}

inline loaded_curve load_curve(const std::string& path) {
  return curve_from_json(detail::parse_json_text(detail::read_file(path)));
}

inline nlohmann::json curve_to_json(const curve& c) {
  const auto& s = c.samples();
  nlohmann::json j;
  j["kind"] = "samples";
  j["t0"] = s.t0;
  j["h"] = s.h;
  auto& pts = j["points"] = nlohmann::json::array();
  for (const auto& p : s.points) pts.push_back({p[0], p[1], p[2], p[3]});
  return j;
}

// CSV writers ---------------------------------------------------------------

inline std::string samples_csv(const std::vector<double>& t,
                               const std::vector<vec4>& x,
                               const std::string& param_name = "t") {
  std::string out = param_name + ",x1,x2,x3,x4\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += fmt17(t[i]);
    for (double v : x[i]) out += "," + fmt17(v);
    out += "\n";
  }
  return out;
}

inline std::string portrait_csv(const phase_portrait& p) {
  std::string out = "t,a_x,a_y,b_x,b_y\n";
  for (int i = 0; i < p.size(); ++i) {
    out += fmt17(p.t(i)) + "," + fmt17(p.a[std::size_t(i)][0]) + "," +
           fmt17(p.a[std::size_t(i)][1]) + "," + fmt17(p.b[std::size_t(i)][0]) +
           "," + fmt17(p.b[std::size_t(i)][1]) + "\n";
  }
  return out;
}

inline std::string mesh_csv(const torus_mesh& m) {
  std::string out = "s,theta,x1,x2,x3,x4,residual\n";
  for (int i = 0; i < m.ns; ++i)
    for (int j = 0; j < m.ntheta; ++j) {
      std::size_t idx = std::size_t(i) * std::size_t(m.ntheta) + std::size_t(j);
      out += fmt17(m.s[std::size_t(i)]) + "," + fmt17(m.theta[std::size_t(j)]);
      for (double v : m.vertices[idx]) out += "," + fmt17(v);
      out += "," + fmt17(m.residual[idx]) + "\n";
    }
  return out;
}

// OBJ export ----------------------------------------------------------------

enum class mesh_projection { drop_x1, drop_x2, drop_x3, drop_x4, portrait };

inline mesh_projection parse_projection(const std::string& s) {
  if (s == "drop-x1") return mesh_projection::drop_x1;
  if (s == "drop-x2") return mesh_projection::drop_x2;
  if (s == "drop-x3") return mesh_projection::drop_x3;
  if (s == "drop-x4") return mesh_projection::drop_x4;
  if (s == "portrait") return mesh_projection::portrait;
  throw invalid_parameters("unknown projection '" + s + "'");
}

inline std::array<double, 3> project_vertex(const vec4& v, mesh_projection p) {
  switch (p) {
    case mesh_projection::drop_x1: return {v[1], v[2], v[3]};
    case mesh_projection::drop_x2: return {v[0], v[2], v[3]};
    case mesh_projection::drop_x3: return {v[0], v[1], v[3]};
    case mesh_projection::drop_x4: return {v[0], v[1], v[2]};
    case mesh_projection::portrait: return {v[0], v[2], v[3]};  // (a_x, a_y, b_y)
  }
  return {v[0], v[1], v[2]};
}

// 1-based vertex indices, quads wound consistently, periodic wrap in both
// directions.
inline std::string mesh_obj(const torus_mesh& m, mesh_projection proj) {
  std::string out = "# Lagrangian torus, k3=" + fmt17(m.k3) + " k4=" + fmt17(m.k4) +
                    " h=" + fmt17(m.h) + "\n";
  for (const auto& v : m.vertices) {
    auto p = project_vertex(v, proj);
    out += "v " + fmt17(p[0]) + " " + fmt17(p[1]) + " " + fmt17(p[2]) + "\n";
  }
  auto id = [&](int i, int j) {
    return 1 + (i % m.ns) * m.ntheta + (j % m.ntheta);
  };
  for (int i = 0; i < m.ns; ++i)
    for (int j = 0; j < m.ntheta; ++j)
      out += "f " + std::to_string(id(i, j)) + " " + std::to_string(id(i + 1, j)) +
             " " + std::to_string(id(i + 1, j + 1)) + " " +
             std::to_string(id(i, j + 1)) + "\n";
  return out;
}

inline void export_mesh_obj(const torus_mesh& m, const std::string& path,
                            mesh_projection proj) {
  detail::write_file(path, mesh_obj(m, proj));
  // full-fidelity R^4 sidecar next to the OBJ
  detail::write_file(path + ".csv", mesh_csv(m));
}

inline void export_mesh_csv(const torus_mesh& m, const std::string& path) {
  detail::write_file(path, mesh_csv(m));
}

}  // namespace sympcurve
